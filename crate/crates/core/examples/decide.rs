//! Decides a few sentences in every theory where they are well formed.

use numqe::{decide_sentence, parse, Theory};

fn main() -> numqe::Result<()> {
    let sentences = [
        "forall x. exists y. y ^ 2 = x",
        "exists x. x != 1 & x ^ 2 = 1",
        "forall x. exists y. x = y ^ 3",
        "forall x. x ^ 4 = 1 -> x = 1",
    ];
    for s in sentences {
        println!("{s}");
        for theory in Theory::ALL.into_iter().filter(|t| t.is_multiplicative()) {
            let f = parse(s, theory)?;
            let d = decide_sentence(&f, theory)?;
            println!("  {:<12} {}", theory.name(), if d.verdict { "TRUE" } else { "FALSE" });
        }
    }
    let z = parse("forall x. exists y. x = 2.y | x = 2.y + 1", Theory::ZAdd)?;
    println!("z-add parity split: {}", decide_sentence(&z, Theory::ZAdd)?.verdict);
    Ok(())
}
