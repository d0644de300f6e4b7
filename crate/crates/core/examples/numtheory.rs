//! Exact number theory underneath the engines: factorization, CRT and
//! root systems over the positive rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use numqe::numtheory::{crt_solve, crt_with_inequations, factor_rational, CongruenceSystem};
use numqe::qe::{solve_root_system, solve_root_system_with_negations};
use numqe::semantics::QPlusElem;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() -> numqe::Result<()> {
    let (sign, ev) = factor_rational(&q(175, 84))?;
    println!("175/84 = {}{ev}", if sign < 0 { "-" } else { "" });

    let sys = CongruenceSystem::from_pairs([(4, 3), (6, 5), (9, 2)])?;
    println!("crt {:?}", crt_solve(&sys).map(|s| (s.x0, s.modulus)));
    let forbidden = [BigInt::from(11), BigInt::from(47)];
    println!("avoiding 11 and 47: {:?}", crt_with_inequations(&sys, &forbidden));

    let two = QPlusElem::from_rational(&q(2, 1))?;
    let four = QPlusElem::from_rational(&q(4, 1))?;
    if let Some(sol) = solve_root_system(&[(2, two.clone()), (3, four)])? {
        println!("R2(2a) & R3(4a): a = {} modulo {}-th powers", sol.base.to_rational(), sol.modulus);
    }
    let one = QPlusElem::one();
    let (sat, witness) = solve_root_system_with_negations(&[(2, one)], &[(2, two)])?;
    println!("R2(a) & ~R2(2a): {sat}, witness {:?}", witness.map(|w| w.to_rational().to_string()));
    Ok(())
}
