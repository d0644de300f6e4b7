//! Reports on the substructures that satisfy all but one axiom family.

use numqe::semantics::{check_counterexample, CounterexampleKind, CounterexampleSpec};

fn main() {
    for kind in CounterexampleKind::ALL {
        let report = check_counterexample(&CounterexampleSpec::with_default(kind), 7);
        println!("{report}\n");
    }
}
