//! Acceptance criteria 1 to 9; prints one PASS or FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use numqe::cli::oracle_check;
use numqe::gen::{random_formula, FormulaShape};
use numqe::numtheory::{crt_solve, factor_rational, lcm_u64, CongruenceSystem, ExponentVector};
use numqe::qe::{axiom_instances, eliminate_exists, solve_root_system};
use numqe::semantics::{
    brute_exists, check_counterexample, eval_ground, nth_root, CounterexampleKind, CounterexampleSpec, Elem,
    QPlusElem, Verdict,
};
use numqe::{decide_sentence, eliminate_quantifiers, parse, Error, Formula, QeOptions, Theory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn axiom_self_test() -> Outcome {
    let mut total = 0;
    for theory in Theory::ALL {
        for ax in axiom_instances(theory, 20, 2) {
            total += 1;
            match decide_sentence(&ax.formula, theory) {
                Ok(d) if d.verdict => {}
                Ok(_) => return Err(format!("{theory}: {ax} decided FALSE")),
                Err(e) => return Err(format!("{theory}: {ax}: {e}")),
            }
        }
    }
    Ok(format!("{total} axiom instances TRUE across 7 theories"))
}

fn oracle_agreement() -> Outcome {
    let mut summary = Vec::new();
    for theory in [Theory::QPosMul, Theory::ZAdd, Theory::CMul, Theory::RMul, Theory::RPosMul] {
        let s = oracle_check(theory, 2024, 1000, &QeOptions::default());
        if let Some(d) = s.disagree.first().or(s.errors.first()) {
            return Err(format!("{theory}: {d}"));
        }
        summary.push(format!("{theory} {}/{}", s.agree, s.samples));
    }
    Ok(summary.join(", "))
}

fn crt_reproduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut solvable = 0;
    for _ in 0..600 {
        let k = rng.gen_range(1..=4);
        let pairs: Vec<(u64, u64)> = (0..k)
            .map(|_| {
                let m = rng.gen_range(1..=30u64);
                (m, rng.gen_range(0..m))
            })
            .collect();
        let m = lcm_u64(pairs.iter().map(|p| p.0));
        let brute: Vec<u64> = (0..m).filter(|x| pairs.iter().all(|(mi, r)| x % mi == *r)).collect();
        let sys = CongruenceSystem::from_pairs(pairs.iter().copied()).map_err(|e| e.to_string())?;
        match crt_solve(&sys) {
            Some(sol) if brute == [sol.x0.clone().try_into().unwrap_or(u64::MAX)] && sol.modulus == BigInt::from(m) => {
                solvable += 1
            }
            None if brute.is_empty() => {}
            other => return Err(format!("{pairs:?}: crt {other:?}, exhaustive {brute:?}")),
        }
    }
    Ok(format!("600 systems match exhaustive search ({solvable} solvable)"))
}

fn root_system_witness() -> Outcome {
    let primes = [2u64, 3, 5];
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let elem = |es: &[i64]| QPlusElem {
        ev: ExponentVector::from_pairs(primes.iter().zip(es).map(|(&p, &e)| (p, BigInt::from(e)))).unwrap(),
    };
    let (mut compatible, mut tried, mut solutions) = (0, 0, 0);
    while compatible < 200 {
        tried += 1;
        let k = rng.gen_range(1..=3);
        let system: Vec<(u64, QPlusElem)> = (0..k)
            .map(|_| {
                let es: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
                (rng.gen_range(2..=6u64), elem(&es))
            })
            .collect();
        let Some(sol) = solve_root_system(&system).map_err(|e| e.to_string())? else { continue };
        compatible += 1;
        if !system.iter().all(|(n, u)| u.mul(&sol.base).is_nth_power(*n)) {
            return Err(format!("base {:?} fails {system:?}", sol.base));
        }
        let n = sol.modulus as i64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let x = elem(&[a, b, c]);
                    if system.iter().all(|(m, u)| u.mul(&x).is_nth_power(*m)) {
                        solutions += 1;
                        if !x.mul(&sol.base.inv()).is_nth_power(sol.modulus) {
                            return Err(format!("solution {x:?} not in base * {n}-th powers"));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("200 compatible systems of {tried} drawn; {solutions} enumerated solutions all in a * n-th powers"))
}

fn separating_sentences() -> Outcome {
    let roots = "forall x. exists y. y ^ 2 = x";
    let involution = "exists x. x != 1 & x ^ 2 = 1";
    let decide = |s: &str, t: Theory| -> Result<bool, String> {
        let f = parse(s, t).map_err(|e| e.to_string())?;
        decide_sentence(&f, t).map(|d| d.verdict).map_err(|e| e.to_string())
    };
    for (t, want, probe) in [
        (Theory::CMul, true, "-1"),
        (Theory::RPosMul, true, "2"),
        (Theory::RNonnegMul, true, "2"),
        (Theory::RMul, false, "-1"),
        (Theory::QPosMul, false, "2"),
    ] {
        if decide(roots, t)? != want {
            return Err(format!("{roots} in {t}"));
        }
        let e = Elem::from_numeral(&probe.parse::<BigRational>().unwrap(), t).map_err(|e| e.to_string())?;
        if nth_root(&e, 2, t).is_ok() != want {
            return Err(format!("square root of {probe} in the {t} model disagrees"));
        }
    }
    for (t, want) in [(Theory::CMul, true), (Theory::RMul, true), (Theory::RPosMul, false), (Theory::QPosMul, false)] {
        let conj = [parse("x != 1", t).unwrap(), parse("x ^ 2 = 1", t).unwrap()];
        let oracle = brute_exists("x", &conj, t).map_err(|e| e.to_string())?;
        if decide(involution, t)? != want || oracle != want {
            return Err(format!("{involution} in {t}"));
        }
    }
    let body = parse("x != 0 & x ^ 3 = 2", Theory::CMul).unwrap();
    let qf = eliminate_exists("x", &body, Theory::CMul, &QeOptions::default()).map_err(|e| e.to_string())?;
    let conj = [parse("x != 0", Theory::CMul).unwrap(), parse("x ^ 3 = 2", Theory::CMul).unwrap()];
    if qf != Formula::True || !brute_exists("x", &conj, Theory::CMul).map_err(|e| e.to_string())? {
        return Err(format!("exists x. x != 0 & x^3 = 2 eliminated to {qf}"));
    }
    Ok("square roots, involutions and the t != 0 terminal case all as expected".into())
}

fn counterexample_reproduction() -> Outcome {
    let start = Instant::now();
    let mut required = vec![
        ("Q_OVER_M", "A7[127]", Verdict::Fails, "1/127"),
        ("Z_OVER_P", "A7o[3]", Verdict::Holds, "bezout"),
        ("Z_OVER_P", "A7o[7]", Verdict::Fails, "1/7"),
        ("QPOS_OMEGA_P", "M7o[127]", Verdict::Fails, "w[127] ^ 127 = 1 and w[127] != 1"),
        ("C_OVER_M", "M8[127]", Verdict::Fails, ""),
        ("RPOS_OVER_M", "M8[127]", Verdict::Fails, ""),
        ("R_OVER_M", "M12[127]", Verdict::Fails, ""),
    ];
    for kind in CounterexampleKind::ALL {
        let spec = CounterexampleSpec::with_default(kind);
        let prime = if kind == CounterexampleKind::ZOverP { 7 } else { 127 };
        if spec.modulus().is_some_and(|m| m != 120) || spec.failing_prime() != prime {
            return Err(format!("unexpected parameters {spec}"));
        }
        let report = check_counterexample(&spec, 1);
        if !report.reproduced() {
            return Err(format!("mismatch:\n{report}"));
        }
        required.retain(|(k, check, verdict, text)| {
            !(*k == kind.name()
                && report
                    .findings
                    .iter()
                    .any(|f| f.check.starts_with(check) && f.observed == *verdict && f.witness.contains(text)))
        });
    }
    if let Some(missing) = required.first() {
        return Err(format!("missing finding {missing:?}"));
    }
    Ok(format!("6 reports reproduced in {:.2?}", start.elapsed()))
}

fn factorization() -> Outcome {
    let (sign, ev) = factor_rational(&BigRational::new(175.into(), 84.into())).map_err(|e| e.to_string())?;
    let want = ExponentVector::from_pairs([(2, BigInt::from(-2)), (3, BigInt::from(-1)), (5, BigInt::from(2))]).unwrap();
    if sign == 1 && ev == want {
        Ok(format!("175/84 = {ev}"))
    } else {
        Err(format!("got sign {sign}, {ev}"))
    }
}

fn syntactic_qe() -> Outcome {
    let mut caps = 0;
    for theory in Theory::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let f = random_formula(theory, &FormulaShape::default(), &mut rng);
            match eliminate_quantifiers(&f, theory, &QeOptions::default()) {
                Ok((qf, _)) if qf.is_quantifier_free() => {
                    if f.is_sentence() && eval_ground(&qf, theory).is_err() {
                        return Err(format!("{theory}: residue of {f} does not evaluate"));
                    }
                }
                Ok((qf, _)) => return Err(format!("{theory}: {f} left {qf}")),
                Err(Error::ResourceCap(_)) => caps += 1,
                Err(e) => return Err(format!("{theory}: {f}: {e}")),
            }
        }
    }
    Ok(format!("7000 formulas quantifier-free ({caps} declared resource caps)"))
}

fn round_trip() -> Outcome {
    for theory in Theory::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let f = random_formula(theory, &FormulaShape::default(), &mut rng);
            let text = f.to_string();
            match parse(&text, theory) {
                Ok(g) if g == f && g.to_string() == text => {}
                Ok(g) => return Err(format!("{theory}: {text} reparsed as {g}")),
                Err(e) => return Err(format!("{theory}: {text}: {e}")),
            }
        }
    }
    Ok("7000 formulas print and reparse identically".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("axiom self-test", axiom_self_test),
        ("oracle agreement", oracle_agreement),
        ("CRT reproduction", crt_reproduction),
        ("root system witness", root_system_witness),
        ("separating sentences", separating_sentences),
        ("counterexample reproduction", counterexample_reproduction),
        ("factorization", factorization),
        ("syntactic QE guarantee", syntactic_qe),
        ("parser round-trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
