//! Certificates for planar fat-point linear systems.
//!
//! Three connected toolkits:
//!
//! * **Speciality provers**: [`speciality::prove_h1_regular`] decides
//!   non-speciality and h¹-regularity of L(d; m₁,…,m_s) at general points by
//!   running a chain of combinatorial reductions on the staircase
//!   (1,2,…,d+1), emitting a [`reduction::ReductionCertificate`] that can be
//!   replayed and re-checked line by line.
//!   [`speciality::closed_form_criterion`] decides the same by one exact
//!   inequality on the virtual dimension and yields the regularity bound
//!   [`speciality::reg_upper_bound`].
//! * **Containment criteria**: [`containment::prove_containment`] decides
//!   I^(2r) ⊆ M^r·I^r for all r ≥ 1 at once, routing through the
//!   special-case results (all-ones, one fat point, almost homogeneous,
//!   uniformly fat) before an exhaustive exact search for a witness degree.
//!   Every verdict carries the integer comparisons it rests on.
//! * **Interpolation oracle**: [`oracle::dim_system`] measures dimensions
//!   of the same systems by exact rank computations over a prime field at
//!   random point configurations, certifying non-speciality and emptiness
//!   by semicontinuity. [`search`] cross-checks the provers against the
//!   oracle and exhaustively verifies the finite case grids.
//!
//! Everything on a decision path is exact integer arithmetic; bounds of the
//! form A/√k are compared by squaring ([`arith::QuadraticBound`]).
//!
//! ## Runnable examples
//!
//! ```text
//! cargo run --example reduction_trace        # single reductions and a full chain
//! cargo run --example prove_system           # chain prover with certificates
//! cargo run --example criterion_bound        # closed-form criterion + regularity bound
//! cargo run --example containment_routes     # containment dispatcher on assorted families
//! cargo run --example exceptional_sequences  # families the degree search cannot handle
//! cargo run --example oracle_dimension       # finite-field dimension measurements
//! cargo run --example alpha_scan             # initial-degree scans of symbolic powers
//! cargo run --example truncated_containment  # degree-by-degree containment evidence
//! cargo run --example finite_grids           # the proofs' finite case grids
//! cargo run --example crosscheck             # prover vs oracle soundness audit
//! ```
//!
//! The same functionality is scriptable through the `fatpoints` binary; see
//! the README.

pub mod arith;
pub mod cli;
pub mod containment;
pub mod oracle;
pub mod reduction;
pub mod search;
pub mod seq;
pub mod speciality;

pub use arith::{binomial, cmp_int_vs_quadratic, edim, vdim, QuadraticBound};
pub use containment::{
    degree_criterion, prove_containment, AlphaBranch, ContainmentRoute, ContainmentVerdict,
};
pub use reduction::{
    classify_failure, reduce_chain, reduce_once, ChainOutcome, ReduceOutcome,
    ReductionCertificate, ReductionFailure, ReductionStep,
};
pub use seq::{IntSequence, MultiplicitySequence};
pub use speciality::{
    closed_form_criterion, prove_h1_regular, reg_upper_bound, staircase, OrderStrategy,
    SpecialityVerdict,
};
