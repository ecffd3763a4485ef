//! Single reductions and a full chain, traced step by step.

use fatpoints::reduction::{reduce_chain, reduce_once, ChainOutcome, ReduceOutcome};
use fatpoints::seq::IntSequence;

fn show_single(entries: &[u64], m: u64) {
    let seq = IntSequence::from(entries.to_vec());
    match reduce_once(&seq, m).unwrap() {
        ReduceOutcome::Reduced(step) => println!(
            "m={m}  ({seq})  reducers {:?}  ->  ({})",
            step.reducer_values(),
            step.output
        ),
        ReduceOutcome::Failed(f) => println!(
            "m={m}  ({seq})  stop: {:?}, witness {:?}",
            f.reason, f.witness
        ),
    }
}

fn main() {
    println!("single reductions:");
    show_single(&[5, 5, 5], 3);
    show_single(&[5, 5, 3, 1], 4);
    show_single(&[4, 1, 3], 3);
    show_single(&[4, 2, 2], 3); // not 3-reducible: the tail is too flat
    show_single(&[2, 3, 4, 5, 2], 4);

    println!("\nchain on the staircase (1,...,10) with parameters 4,4,4,3,3,3,3:");
    let initial = IntSequence::from_iter(1..=10);
    match reduce_chain(&initial, &[4, 4, 4, 3, 3, 3, 3]).unwrap() {
        ChainOutcome::Complete(cert) => {
            println!("  start  ({})", cert.initial);
            for step in &cert.steps {
                println!("  m={}    ({})", step.m, step.output);
            }
            println!("  final  ({}), size {}", cert.final_seq, cert.final_size);
            cert.validate().expect("certificate replays cleanly");
            println!("  certificate validated: every step re-checked");
        }
        ChainOutcome::Failed(f) => println!("  failed at step {}", f.step_index),
    }
}
