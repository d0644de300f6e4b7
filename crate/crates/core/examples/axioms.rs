//! Enumerates the axiom catalogs and checks each instance in its theory.

use numqe::qe::axiom_instances;
use numqe::{decide_sentence, Theory};

fn main() -> numqe::Result<()> {
    for theory in Theory::ALL {
        let axioms = axiom_instances(theory, 20, 2);
        let mut holding = 0;
        for ax in &axioms {
            if decide_sentence(&ax.formula, theory)?.verdict {
                holding += 1;
            } else {
                println!("  fails: {ax}");
            }
        }
        println!("{:<12} {holding}/{} instances hold", theory.name(), axioms.len());
    }
    for ax in axiom_instances(Theory::ZAdd, 2, 1) {
        println!("{ax}");
    }
    Ok(())
}
