//! The containment dispatcher on assorted multiplicity families.

use fatpoints::containment::prove_containment;
use fatpoints::seq::MultiplicitySequence;

fn main() {
    let families = [
        "1^9",                  // simple points
        "1^25",                 // many simple points
        "5,1^8",                // one fat point, simple tail
        "2^9",                  // homogeneous
        "7^12",                 // fatter homogeneous
        "3^8,2",                // almost homogeneous
        "1,9^10",               // distinguished small point (sorted on input)
        "4,4,3,3,3,2,2,2,2",    // uniformly fat, not almost homogeneous
        "30,29,28,27,16,15,15,15,15,15", // uniformly fat, spread out
        "6,5,1^7",              // neither: direct search decides
        "8^9,1^103",            // the criteria stay silent here
    ];
    for text in families {
        let ms = MultiplicitySequence::parse(text).unwrap();
        let v = prove_containment(&ms);
        print!(
            "({:<22}) -> {:<9} via {:?}",
            ms.to_compressed(),
            if v.proven { "proven" } else { "unknown" },
            v.route
        );
        if let Some(d) = v.witness_d {
            print!(", witness degree {d} ({:?})", v.branches);
        }
        println!();
    }
}
