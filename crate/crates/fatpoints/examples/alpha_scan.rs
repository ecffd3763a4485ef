//! Initial degrees of symbolic powers, measured by the oracle.

use fatpoints::oracle::{alpha_scan, DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS};
use fatpoints::seq::MultiplicitySequence;

fn main() {
    let cases = [
        ("1^5", 1u64), // conic through five points: alpha = 2
        ("1^5", 2),    // doubled: alpha = 4 (the double conic)
        ("5", 1),      // single fat point: alpha = multiplicity
        ("2,1^8", 1),
        ("2,1^8", 2),
        ("1^9", 3),
    ];
    for (text, scale) in cases {
        let ms = MultiplicitySequence::parse(text).unwrap();
        let r = alpha_scan(&ms, scale, DEFAULT_PRIME, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
        println!(
            "alpha of the {scale}-fold power of ({text}): >= {} observed {}{}",
            r.alpha_lb,
            r.alpha_observed,
            if r.certified_exact { ", exact" } else { "" }
        );
    }
}
