//! Cross-checks the eliminators against the brute-force model oracle.

use numqe::cli::oracle_check;
use numqe::qe::QeOptions;
use numqe::semantics::brute_exists_witness;
use numqe::{parse, Theory};

fn main() -> numqe::Result<()> {
    let conj = [parse("R[2](2 * x)", Theory::QPosMul)?, parse("R[3](4 * x)", Theory::QPosMul)?];
    println!("witness: {:?}", brute_exists_witness("x", &conj, Theory::QPosMul)?);

    for theory in Theory::ALL {
        let stats = oracle_check(theory, 42, 500, &QeOptions::default());
        println!(
            "{:<12} agree {}/{} (satisfiable {}), disagreements {}, errors {}",
            theory.name(),
            stats.agree,
            stats.samples,
            stats.satisfiable,
            stats.disagree.len(),
            stats.errors.len()
        );
    }
    Ok(())
}
