//! Soundness audit: every non-speciality proof over a small grid is
//! confirmed by a full-rank oracle certificate.

use fatpoints::oracle::{DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS};
use fatpoints::search::{crosscheck_reduction_vs_oracle, CrosscheckLimits};

fn main() {
    let limits = CrosscheckLimits { d_max: 10, s_max: 6, m_max: 4 };
    let report =
        crosscheck_reduction_vs_oracle(limits, DEFAULT_PRIME, DEFAULT_TRIALS, DEFAULT_SEED)
            .unwrap();
    println!(
        "grid: d <= {}, s <= {}, multiplicities <= {}",
        limits.d_max, limits.s_max, limits.m_max
    );
    println!(
        "{} instances, {} chain proofs, {} criterion proofs, {} oracle confirmations",
        report.instances, report.chain_proofs, report.criterion_proofs, report.oracle_checks
    );
    if report.passed {
        println!("no violations: every proof was confirmed by the oracle");
    } else {
        for v in &report.violations {
            println!("VIOLATION: {v}");
        }
    }
}
