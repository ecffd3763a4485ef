//! Degree-by-degree evidence for I^(2r) ⊆ M^r·I^r at a sampled
//! configuration, compared with what the symbolic criteria prove.

use fatpoints::containment::prove_containment;
use fatpoints::oracle::{truncated_containment_check, DEFAULT_PRIME, DEFAULT_SEED};
use fatpoints::seq::MultiplicitySequence;

fn main() {
    for (text, r, t_max) in [("1^4", 1u64, 6u64), ("2,1^8", 1, 8), ("1^9", 2, 10)] {
        let ms = MultiplicitySequence::parse(text).unwrap();
        let report =
            truncated_containment_check(&ms, r, DEFAULT_PRIME, t_max, DEFAULT_SEED).unwrap();
        println!("({text}), r = {r}: graded pieces up to degree {t_max}");
        for row in &report.per_degree {
            if row.dim_symbolic > 0 {
                println!(
                    "  t = {:>2}: dim (I^(2r))_t = {:>3}, dim (M^r I^r)_t = {:>3}, contained: {}",
                    row.t, row.dim_symbolic, row.dim_product, row.contained
                );
            }
        }
        println!(
            "  all degrees contained: {} (evidence at this configuration)",
            report.all_contained
        );
        if ms.s() >= 9 || ms.largest() == 1 {
            let v = prove_containment(&ms);
            println!("  symbolic verdict for all r: {} via {:?}", v.proven, v.route);
        }
        println!();
    }
}
