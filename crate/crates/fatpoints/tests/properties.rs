//! Cross-module property tests: definitional identities checked against
//! independent implementations, consistency between the two speciality
//! provers, exactness of the witness window, and oracle contracts.

use fatpoints::arith::{cmp_int_vs_quadratic, min_d_quadratic, vdim, QuadraticBound};
use fatpoints::containment::{
    conditions_at, min_witness_degree, prove_containment, witness_window,
};
use fatpoints::oracle::{dim_system, DimCertificate, DEFAULT_PRIME};
use fatpoints::reduction::reduce_once;
use fatpoints::seq::{IntSequence, MultiplicitySequence};
use fatpoints::speciality::{
    closed_form_criterion, criterion_order, prove_h1_regular_with_order, Proof,
};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

// Pascal-triangle binomials, independent of the multiplicative formula used
// by the library.
fn pascal(n: usize, k: usize) -> BigUint {
    let mut row: Vec<BigUint> = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![BigUint::from(1u32)];
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(BigUint::from(1u32));
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

fn mult_vec() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=6, 1..=12)
}

proptest! {
    #[test]
    fn vdim_matches_pascal_route(n in 1u32..=4, t in 0u64..=15, mults in mult_vec()) {
        let ms = MultiplicitySequence::new(mults).unwrap();
        let lhs = vdim(n, t, &ms) + 1;
        let total = BigInt::from(pascal((n as u64 + t) as usize, n as usize));
        let conditions: BigInt = ms
            .mults()
            .iter()
            .map(|&m| BigInt::from(pascal((n as u64 + m - 1) as usize, n as usize)))
            .sum();
        prop_assert_eq!(lhs, total - conditions);
    }

    #[test]
    fn quadratic_cmp_matches_float(v in -(1i64 << 20)..(1i64 << 20), a in 0u64..(1 << 20), k in 1u64..(1 << 10)) {
        let bound = QuadraticBound::new(BigUint::from(a), k).unwrap();
        let exact = cmp_int_vs_quadratic(&BigInt::from(v), &bound);
        // both squared sides stay below 2^53, so the float comparison is
        // itself exact here
        let float = if v < 0 {
            std::cmp::Ordering::Less
        } else {
            let lhs = (v as f64) * (v as f64) * (k as f64);
            let rhs = (a as f64) * (a as f64);
            lhs.partial_cmp(&rhs).unwrap()
        };
        prop_assert_eq!(exact, float);
    }

    #[test]
    fn domination_reflexive_transitive(
        a in prop::collection::vec(0u64..6, 0..8),
        b in prop::collection::vec(0u64..6, 0..8),
        c in prop::collection::vec(0u64..6, 0..8),
    ) {
        let (a, b, c) = (IntSequence::from(a), IntSequence::from(b), IntSequence::from(c));
        prop_assert!(a.dominated_by(&a));
        if a.dominated_by(&b) && b.dominated_by(&c) {
            prop_assert!(a.dominated_by(&c));
        }
    }

    #[test]
    fn reduction_is_deterministic(entries in prop::collection::vec(1u64..=9, 1..=10), m in 1u64..=9) {
        let s = IntSequence::from(entries);
        prop_assert_eq!(reduce_once(&s, m), reduce_once(&s, m));
    }

    // whenever the closed-form criterion proves h1-regularity, the chain
    // prover run in the criterion's order proves it too
    #[test]
    fn criterion_implies_chain(d in 0u64..=20, mults in prop::collection::vec(1u64..=6, 4..=12)) {
        let ms = MultiplicitySequence::new(mults).unwrap();
        let crit = closed_form_criterion(d, &ms).unwrap();
        if crit.h1_regular == Proof::Proven {
            let order = criterion_order(&ms).unwrap();
            let chain = prove_h1_regular_with_order(d, &order);
            prop_assert_eq!(chain.h1_regular, Proof::Proven,
                "criterion proves L({}; {}) but the chain does not", d, ms);
            let cert = chain.certificate.unwrap();
            prop_assert_eq!(BigInt::from(cert.final_size), crit.criterion_lhs.unwrap());
        }
    }

    // existence guarantee for the degree window: R² − 3R ≥ D forces a witness
    #[test]
    fn degree_window_guarantee(d_target in 0u64..=100_000, a in 0u64..=2_000, k in 1u64..=200) {
        let bound = QuadraticBound::new(BigUint::from(a), k).unwrap();
        let target = BigUint::from(d_target);
        if bound.square_minus_triple_at_least(&target) {
            let found = min_witness_degree(&target, &bound);
            prop_assert!(found.is_some());
            let d = found.unwrap();
            prop_assert!(BigUint::from(d) * BigUint::from(d + 3) >= target);
            prop_assert!(
                cmp_int_vs_quadratic(&BigInt::from(d + 2), &bound) != std::cmp::Ordering::Greater
            );
        }
        // and the returned degree is always minimal for its condition
        let d = min_d_quadratic(&target);
        if d > BigUint::from(0u32) {
            let prev = &d - 1u32;
            prop_assert!(&prev * (&prev + 3u32) < target);
        }
    }

    // the witness window is exactly the feasible set: double-scan the
    // conditions degree by degree on small instances
    #[test]
    fn window_matches_double_scan(mults in prop::collection::vec(1u64..=5, 9..=12)) {
        let ms = MultiplicitySequence::new(mults).unwrap();
        let (d_lo, d_hi) = witness_window(&ms).unwrap();
        let cap = 80u64;
        let brute: Vec<u64> = (0..=cap)
            .filter(|&d| conditions_at(&ms, d).unwrap().all_ok)
            .collect();
        let window: Vec<u64> = match d_hi {
            Some(hi) => (d_lo..=hi.min(cap)).collect(),
            None => Vec::new(),
        };
        prop_assert_eq!(brute, window, "window mismatch for {}", ms);
    }

    // construction normalizes ordering, so every verdict is permutation-invariant
    #[test]
    fn verdicts_ignore_input_order(mults in prop::collection::vec(1u64..=9, 9..=14), seed in 0u64..1000) {
        let sorted = MultiplicitySequence::new(mults.clone()).unwrap();
        let mut shuffled = mults;
        let n = shuffled.len();
        for i in 0..n {
            let j = (fatpoints::oracle::rng::mix(seed, i as u64) % n as u64) as usize;
            shuffled.swap(i, j);
        }
        let reordered = MultiplicitySequence::new(shuffled).unwrap();
        prop_assert_eq!(&sorted, &reordered);
        prop_assert_eq!(prove_containment(&sorted), prove_containment(&reordered));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // oracle contracts on small instances: the observed dimension never
    // undercuts the expected one, and certificates are stable under more
    // trials
    #[test]
    fn oracle_dimension_contracts(d in 0u64..=8, mults in prop::collection::vec(1u64..=3, 1..=5), seed in 0u64..100) {
        let ms = MultiplicitySequence::new(mults).unwrap();
        let one = dim_system(d, &ms, DEFAULT_PRIME, 1, seed).unwrap();
        let three = dim_system(d, &ms, DEFAULT_PRIME, 3, seed).unwrap();
        prop_assert!(i64::from(one.dim_observed >= one.edim) == 1);
        prop_assert!(three.dim_observed <= one.dim_observed); // max rank grows
        if one.certificate != DimCertificate::None {
            prop_assert_eq!(one.certificate, three.certificate);
            prop_assert_eq!(one.dim_observed, three.dim_observed);
        }
    }
}
