//! Heavyweight exhaustive checks, ignored by default. Run with
//! `cargo test --test exhaustive -- --ignored`.

use fatpoints::containment::prove_containment;
use fatpoints::oracle::rng;
use fatpoints::seq::MultiplicitySequence;
use fatpoints::speciality::{
    closed_form_criterion, criterion_order, prove_h1_regular_with_order, Proof,
};

fn sorted_tuples(s: usize, m_max: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..s {
        let mut next = Vec::new();
        for t in &out {
            let cap = t.last().copied().unwrap_or(m_max);
            for v in 1..=cap {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

// Every closed-form proof must be reproducible by the chain prover run in
// the criterion's own order, over the whole small-parameter cube.
#[test]
#[ignore]
fn criterion_implies_chain_exhaustive() {
    let mut proofs = 0u64;
    for s in 4..=8usize {
        for tuple in sorted_tuples(s, 4) {
            let ms = MultiplicitySequence::new(tuple).unwrap();
            for d in 0..=16u64 {
                let crit = closed_form_criterion(d, &ms).unwrap();
                if crit.h1_regular == Proof::Proven {
                    proofs += 1;
                    let order = criterion_order(&ms).unwrap();
                    let chain = prove_h1_regular_with_order(d, &order);
                    assert_eq!(
                        chain.h1_regular,
                        Proof::Proven,
                        "criterion proves L({d}; {ms}) but the chain does not"
                    );
                }
            }
        }
    }
    println!("criterion/chain agreement on {proofs} proofs");
    assert!(proofs > 1000);
}

// The dispatcher must prove every almost-homogeneous and uniformly-fat
// input at scale, not just the 1000-case acceptance sample.
#[test]
#[ignore]
fn dispatcher_coverage_large() {
    let mut stream = rng::Stream::new(0xC0FFEE);
    for i in 0..100_000u64 {
        let v: Vec<u64> = if i % 2 == 0 {
            let n = stream.range(9, 60);
            let m = stream.range(2, 30);
            let m0 = stream.range(1, 30);
            let mut v = vec![m; (n - 1) as usize];
            v.push(m0);
            v
        } else {
            let n = stream.range(9, 60);
            let m1 = stream.range(2, 30);
            let lo = m1.div_ceil(2);
            let mut v = vec![m1];
            for _ in 1..n {
                v.push(stream.range(lo, m1));
            }
            v
        };
        let ms = MultiplicitySequence::new(v).unwrap();
        let verdict = prove_containment(&ms);
        assert!(
            verdict.proven,
            "dispatcher left ({}) unknown via {:?}: {:?}",
            ms.to_compressed(),
            verdict.route,
            verdict.subfacts
        );
    }
}
