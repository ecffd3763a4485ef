//! The finite case grids the containment proofs reduce to, verified
//! exhaustively in exact arithmetic.

use fatpoints::search::{grid_uniformly_fat, verify_finite_cases};

fn main() {
    for g in verify_finite_cases() {
        println!(
            "{:<28} {:>6} cells  {}",
            g.name,
            g.cells,
            if g.passed { "all pass" } else { "FAILURES" }
        );
        for f in g.failures.iter().take(5) {
            println!("  {f}");
        }
    }
    // the uniformly-fat inequality over whole multiplicity sequences
    let g = grid_uniformly_fat();
    println!(
        "{:<28} {:>6} cells  {}",
        g.name,
        g.cells,
        if g.passed { "all pass" } else { "FAILURES" }
    );
}
