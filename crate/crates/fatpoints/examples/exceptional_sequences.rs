//! Families the degree search cannot handle: few very fat points over a
//! long simple tail. For each, the exact comparisons that fail at the
//! boundary degree.

use fatpoints::containment::degree_criterion;
use fatpoints::seq::MultiplicitySequence;

fn main() {
    let known = [
        "8^9,1^103",
        "9^11,1^80",
        "20^12,2^90",
        "30^11,3^130",
        "60^11,5^224",
        "130^12,12^101",
    ];
    for text in known {
        let ms = MultiplicitySequence::parse(text).unwrap();
        let v = degree_criterion(&ms).unwrap();
        assert!(!v.proven);
        let c = v.conditions.unwrap();
        println!("({text}), s = {}:", ms.s());
        println!(
            "  least feasible degree d = {}: d(d+3) = {} >= {}, d >= m1+m2 = {}",
            c.d, c.reg_lhs, c.reg_rhs, c.degree_floor
        );
        println!(
            "  but d+2 = {} exceeds every branch: {} | m1+m2+m3+m4 = {} | 2m1 = {}",
            c.d + 2,
            c.nagata_bound,
            c.cremona_rhs,
            c.big_point_rhs
        );
    }
    println!("\nnote how close the margins are: one unit of degree each time.");
}
