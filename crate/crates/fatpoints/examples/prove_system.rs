//! Proving h¹-regularity of plane systems by reduction chains.

use fatpoints::seq::MultiplicitySequence;
use fatpoints::speciality::{prove_h1_regular, OrderStrategy};

fn demo(d: u64, mults: &str, strategy: OrderStrategy) {
    let ms = MultiplicitySequence::parse(mults).unwrap();
    let v = prove_h1_regular(d, &ms, strategy);
    println!(
        "L({d}; {ms}): non-special {:?}, effective {:?}, h1-regular {:?}",
        v.nonspecial, v.effective, v.h1_regular
    );
    if let Some(cert) = &v.certificate {
        println!(
            "  chain of {} reductions, final size {} = vdim + 1",
            cert.steps.len(),
            cert.final_size
        );
    }
    if let Some(fail) = &v.chain_failure {
        println!(
            "  chain stopped at step {} ({:?}); nothing is claimed",
            fail.step_index, fail.failure.reason
        );
    }
}

fn main() {
    // the worked ten-point example: provable by the chain
    demo(9, "4,4,4,3,3,3,3", OrderStrategy::AsGiven);

    // five double points in degree 4 carry an unexpected curve (the doubled
    // conic); the prover stays silent rather than guessing
    demo(4, "2^5", OrderStrategy::Backtrack(30));

    // five simple points in degree 2: the unique conic
    demo(2, "1^5", OrderStrategy::Descending);

    // an empty system detected through final size zero
    demo(1, "1,1,1", OrderStrategy::Descending);
}
