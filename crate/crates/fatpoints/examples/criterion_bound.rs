//! The closed-form criterion and the regularity bound it yields.

use fatpoints::seq::MultiplicitySequence;
use fatpoints::speciality::{
    closed_form_criterion, criterion_order, prove_h1_regular_with_order, reg_upper_bound, Proof,
};

fn main() {
    // the criterion proves the five-point system ...
    let five = MultiplicitySequence::parse("4,4,4,3,3").unwrap();
    let v = closed_form_criterion(9, &five).unwrap();
    println!(
        "L(9; {five}): h1-regular {:?}  (L = {} >= threshold {})",
        v.h1_regular,
        v.criterion_lhs.as_ref().unwrap(),
        v.criterion_rhs.as_ref().unwrap()
    );

    // ... but not the seven-point one, where the chain prover still succeeds:
    // the criterion trades strength for a closed form
    let seven = MultiplicitySequence::parse("4,4,4,3,3,3,3").unwrap();
    let v = closed_form_criterion(9, &seven).unwrap();
    let chain = prove_h1_regular_with_order(9, seven.mults());
    println!(
        "L(9; {seven}): criterion {:?} (L = {}), chain prover {:?}",
        v.h1_regular,
        v.criterion_lhs.as_ref().unwrap(),
        chain.h1_regular
    );

    // whenever the criterion succeeds, so does the chain run in the
    // criterion's order (fourth-largest multiplicity last)
    let order = criterion_order(&five).unwrap();
    let chain = prove_h1_regular_with_order(9, &order);
    assert_eq!(chain.h1_regular, Proof::Proven);
    println!("chain in the criterion's order {order:?} confirms the five-point proof");

    // minimal degree bound on the Castelnuovo-Mumford regularity
    for mults in ["4,4,4,3,3", "1,1,1,1", "50,50,1,1"] {
        let ms = MultiplicitySequence::parse(mults).unwrap();
        println!("reg bound for ({ms}): <= {}", reg_upper_bound(&ms).unwrap());
    }
}
