//! Measuring dimensions of plane systems by exact ranks over F_p.

use fatpoints::oracle::{dim_system, DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS};
use fatpoints::seq::MultiplicitySequence;

fn main() {
    let cases = [
        (2u64, "1^5"),  // the conic through five points
        (4, "2^5"),     // the doubled conic: dim 0 although vdim = -1
        (1, "2"),       // no line is double at a point
        (9, "4,4,4,3,3,3,3"),
        (12, "4^8"),
        (5, "3,3,3"),
    ];
    for (d, text) in cases {
        let ms = MultiplicitySequence::parse(text).unwrap();
        let r = dim_system(d, &ms, DEFAULT_PRIME, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
        println!(
            "L({d}; {text}): dim {} (edim {}), certificate {:?}; rank {}/{} on a {}x{} matrix",
            r.dim_observed, r.edim, r.certificate, r.max_rank,
            r.rows.min(r.cols), r.rows, r.cols
        );
    }
    println!("\nfull expected rank at one sampled configuration already certifies");
    println!("the generic statement; a rank deficit is only evidence.");
}
