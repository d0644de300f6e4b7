//! Quantifier elimination with free parameters, with the replayable trace.

use numqe::{eliminate_quantifiers, parse, QeOptions, Theory};

fn main() -> numqe::Result<()> {
    let cases = [
        ("exists x. x * x = y", Theory::RMul),
        ("exists x. x ^ 2 = t & x ^ 3 = s", Theory::CMul),
        ("exists x. 2.x = t & x =[3] s", Theory::ZAdd),
        ("exists x. R[2](u * x) & R[3](v * x)", Theory::QPosMul),
        ("exists x. x * t = 0 & x != 0", Theory::RNonnegMul),
    ];
    for (s, theory) in cases {
        let (qf, _) = eliminate_quantifiers(&parse(s, theory)?, theory, &QeOptions::default())?;
        println!("[{theory}] {s}\n    <-> {qf}");
    }

    let f = parse("forall x. exists y. y * y = x", Theory::RMul)?;
    let opts = QeOptions { trace: true, ..QeOptions::default() };
    let (_, trace) = eliminate_quantifiers(&f, Theory::RMul, &opts)?;
    println!("\n{trace}");
    assert_eq!(&trace.replay()?, trace.result());
    Ok(())
}
