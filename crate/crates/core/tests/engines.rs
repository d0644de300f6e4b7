use num_bigint::BigInt;
use num_rational::BigRational;
use numqe::formula::{isolate_variable, Iso, IsoConj};
use numqe::qe::{
    axiom_instances, eliminate_exists, eliminate_exists_additive_divisible, eliminate_exists_complex,
    eliminate_exists_int_add, eliminate_exists_qplus, eliminate_exists_real, eliminate_exists_real_nonneg,
    eliminate_exists_real_positive, simplify, solve_root_system, solve_root_system_with_negations,
};
use numqe::semantics::{brute_exists, eval_ground, eval_qf, Assignment, Elem, QPlusElem};
use numqe::gen::{random_constant, random_formula, random_ground_conjunction, ConjShape, FormulaShape};
use numqe::{decide_sentence, eliminate_quantifiers, parse, Formula, QeOptions, Term, Theory};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str, th: Theory) -> Formula {
    parse(s, th).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn qe(s: &str, th: Theory) -> Formula {
    eliminate_quantifiers(&p(s, th), th, &QeOptions::default()).unwrap().0
}

fn decide(s: &str, th: Theory) -> bool {
    decide_sentence(&p(s, th), th).unwrap().verdict
}

fn qplus(n: i64, d: i64) -> QPlusElem {
    QPlusElem::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d))).unwrap()
}

/// Checks `a ↔ b` at every assignment of `vars` drawn from `values`.
fn equivalent_on(a: &Formula, b: &Formula, vars: &[&str], values: &[&str], th: Theory) {
    let elems: Vec<Elem> = values
        .iter()
        .map(|v| {
            let t = numqe::formula::parse_term(v, th).unwrap();
            numqe::semantics::eval_term(&t, &Assignment::new(), th).unwrap()
        })
        .collect();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let mut asg = Assignment::new();
        for (v, &i) in vars.iter().zip(&idx) {
            asg.insert(v.to_string(), elems[i].clone());
        }
        assert_eq!(eval_qf(a, &asg, th).unwrap(), eval_qf(b, &asg, th).unwrap(), "{a} vs {b} at {asg:?}");
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn canonical(body: &str, th: Theory) -> IsoConj {
    let f = p(body, th);
    let lits = match f {
        Formula::And(xs) => xs,
        other => vec![other],
    };
    let iso = Iso::and(lits.iter().map(|l| isolate_variable(l, "x", th).unwrap()).collect());
    let mut conjs = iso.dnf(&mut numqe::formula::Budget::new(1 << 20)).unwrap();
    assert_eq!(conjs.len(), 1, "{body} should isolate to one clause");
    conjs.pop().unwrap()
}

#[test]
fn complex_examples() {
    let th = Theory::CMul;
    assert_eq!(qe("exists x. x^3 = t", th), Formula::True);
    assert_eq!(qe("exists x. x != 0 & x^3 = t", th).to_string(), "t != 0");
    let got = qe("exists x. x^2 = t & x^3 = s", th);
    let want = p("t = 0 & s = 0 | t != 0 & s^2 = t^3", th);
    equivalent_on(&got, &want, &["t", "s"], &["0", "1", "-1", "2", "4", "8", "w[3]", "-8"], th);
    assert_eq!(eliminate_exists_complex("x", &canonical("x^3 = t", th)).unwrap(), Formula::True);
}

#[test]
fn additive_divisible_examples() {
    let th = Theory::DivAdd;
    let got = qe("exists x. 2.x = t & 3.x = s", th);
    equivalent_on(&got, &p("3.t = 2.s", th), &["t", "s"], &["0", "1", "2", "3", "-3", "1/2"], th);
    assert_eq!(qe("exists x. x != s & x != r", th), Formula::True);
    assert_eq!(qe("exists x. x = t", th), Formula::True);
    assert_eq!(eliminate_exists_additive_divisible("x", &canonical("x != s", th)).unwrap(), Formula::True);
}

#[test]
fn real_positive_examples() {
    let th = Theory::RPosMul;
    let got = qe("exists x. x^2 = t & x^3 = s", th);
    equivalent_on(&got, &p("s^2 = t^3", th), &["t", "s"], &["1", "2", "4", "8", "1/4", "3"], th);
    assert_eq!(qe("exists x. x^2 = t", th), Formula::True);
    assert_eq!(qe("exists x. x != t", th), Formula::True);
    assert_eq!(eliminate_exists_real_positive("x", &canonical("x^2 = t", th)).unwrap(), Formula::True);
}

#[test]
fn real_examples() {
    let th = Theory::RMul;
    assert_eq!(qe("exists x. x*x = y", th).to_string(), "y = 0 | P(y)");
    assert_eq!(qe("exists x. x*x*x = y", th), Formula::True);
    let got = qe("exists x. P(x) & x*x = y", th);
    equivalent_on(&got, &p("P(y)", th), &["y"], &["0", "1", "-1", "2", "-2", "1/3"], th);
    let direct = eliminate_exists_real("x", &canonical("x^3 = y", th)).unwrap();
    assert_eq!(simplify(&direct, th), Formula::True);
}

#[test]
fn real_nonneg_examples() {
    let th = Theory::RNonnegMul;
    assert_eq!(qe("exists x. x^2 = t", th), Formula::True);
    assert_eq!(qe("exists x. x != 0 & x^2 = t", th).to_string(), "t != 0");
    let got = qe("exists x. x*t = 0 & x != 0", th);
    equivalent_on(&got, &p("t = 0", th), &["t"], &["0", "1", "2", "1/2"], th);
    let direct = eliminate_exists_real_nonneg("x", &canonical("x^2 = t", th)).unwrap();
    assert_eq!(simplify(&direct, th), Formula::True);
}

#[test]
fn integer_examples() {
    let th = Theory::ZAdd;
    assert_eq!(qe("exists x. 2.x = t", th).to_string(), "t =[2] 0");
    assert_eq!(qe("exists x. x =[2] 1 & x =[4] 0", th), Formula::False);
    assert_eq!(qe("exists x. x != t & x != s", th), Formula::True);
    let got = qe("exists x. 3.x = t & x =[2] s", th);
    equivalent_on(&got, &p("t =[3] 0 & t =[2] s", th), &["t", "s"], &["0", "1", "2", "3", "6", "-5"], th);
    let direct = eliminate_exists_int_add("x", &canonical("2.x = t", th)).unwrap();
    assert_eq!(simplify(&direct, th).to_string(), "t =[2] 0");
}

#[test]
fn qplus_examples() {
    let th = Theory::QPosMul;
    assert_eq!(qe("exists x. R[2](2*x) & R[3](4*x)", th), Formula::True);
    assert_eq!(qe("exists x. R[2](2*x) & R[2](3*x)", th), Formula::False);
    assert_eq!(qe("exists x. x != t", th), Formula::True);
    assert_eq!(qe("exists x. x != 1 & x*x = 1", th), Formula::False);
    let got = qe("exists x. R[2](u*x) & R[2](v*x)", th);
    equivalent_on(&got, &p("R[2](u * inv(v))", th), &["u", "v"], &["1", "2", "3", "4", "6", "1/2", "8"], th);
    let direct = eliminate_exists_qplus("x", &canonical("R[2](2*x) & R[2](3*x)", th)).unwrap();
    assert_eq!(simplify(&direct, th), Formula::False);
}

#[test]
fn root_system_examples() {
    let sol = solve_root_system(&[(2, qplus(2, 1)), (3, qplus(4, 1))]).unwrap().unwrap();
    assert_eq!(sol.modulus, 6);
    assert_eq!(sol.base, qplus(2, 1));
    assert!(qplus(2, 1).mul(&sol.base).is_nth_power(2));
    assert!(qplus(4, 1).mul(&sol.base).is_nth_power(3));

    assert!(solve_root_system(&[(2, qplus(2, 1)), (2, qplus(3, 1))]).unwrap().is_none());
    let one = solve_root_system(&[(5, qplus(1, 1))]).unwrap().unwrap();
    assert!(one.base.is_nth_power(5));

    let (sat, w) = solve_root_system_with_negations(&[(2, qplus(1, 1))], &[(2, qplus(2, 1))]).unwrap();
    assert!(sat);
    assert_eq!(w, Some(qplus(9, 1)));
    let (sat, w) = solve_root_system_with_negations(&[(2, qplus(1, 1))], &[(2, qplus(1, 1))]).unwrap();
    assert!(!sat && w.is_none());
    let (sat, w) = solve_root_system_with_negations(&[(2, qplus(1, 1))], &[(3, qplus(2, 1))]).unwrap();
    assert!(sat);
    let w = w.unwrap();
    assert!(w.is_nth_power(2) && !qplus(2, 1).mul(&w).is_nth_power(3));
}

#[test]
fn separating_sentences() {
    let roots = "forall x. exists y. y^2 = x";
    let involution = "exists x. x != 1 & x^2 = 1";
    for (th, want) in [
        (Theory::CMul, true),
        (Theory::RPosMul, true),
        (Theory::RNonnegMul, true),
        (Theory::RMul, false),
        (Theory::QPosMul, false),
    ] {
        assert_eq!(decide(roots, th), want, "{th}");
    }
    for (th, want) in [(Theory::CMul, true), (Theory::RMul, true), (Theory::RPosMul, false), (Theory::QPosMul, false)] {
        assert_eq!(decide(involution, th), want, "{th}");
        let conj = [p("x != 1", th), p("x^2 = 1", th)];
        assert_eq!(brute_exists("x", &conj, th).unwrap(), want, "{th}");
    }
    let f = p("exists x. x != 0 & x^3 = 2", Theory::CMul);
    assert_eq!(eliminate_exists("x", &p("x != 0 & x^3 = 2", Theory::CMul), Theory::CMul, &QeOptions::default()).unwrap(), Formula::True);
    assert!(decide_sentence(&f, Theory::CMul).unwrap().verdict);
}

#[test]
fn axioms_hold_in_their_theory() {
    for th in Theory::ALL {
        for ax in axiom_instances(th, 6, 2) {
            assert!(ax.formula.is_sentence(), "{ax}");
            assert!(decide_sentence(&ax.formula, th).unwrap().verdict, "{th}: {ax}");
        }
    }
}

#[test]
fn axiom_catalog_contents() {
    let names: Vec<String> = axiom_instances(Theory::CMul, 3, 1).iter().map(|a| a.name()).collect();
    for n in ["M1", "M2", "M3", "M4", "M5", "M6,2", "M6,3", "M7,2", "M7,3", "M8,2", "M8,3"] {
        assert!(names.iter().any(|x| x == n), "missing {n} in {names:?}");
    }
    let z = axiom_instances(Theory::ZAdd, 2, 1);
    let a7 = z.iter().find(|a| a.name() == "A7°,2").unwrap();
    assert!(a7.formula.to_string().contains("2 . y + 1"));
    let q2 = axiom_instances(Theory::QPosMul, 2, 2);
    assert!(q2.iter().filter(|a| a.schema == "M16").all(|a| a.moduli.iter().all(|m| a.index.unwrap() % m != 0)));
    let q3 = axiom_instances(Theory::QPosMul, 3, 1);
    assert!(q3.iter().any(|a| a.name() == "M16,2[3]"));
}

#[test]
fn axioms_fail_where_the_structure_differs() {
    let pick = |th, name: &str| axiom_instances(th, 4, 1).into_iter().find(|a| a.name() == name).unwrap().formula;
    assert!(!decide_sentence(&pick(Theory::CMul, "M8,2"), Theory::RMul).unwrap().verdict);
    assert!(!decide_sentence(&pick(Theory::RPosMul, "M8,2"), Theory::QPosMul).unwrap().verdict);
    assert!(!decide_sentence(&pick(Theory::RPosMul, "M7°,2"), Theory::CMul).unwrap().verdict);
    let divisible = pick(Theory::DivAdd, "A7,2");
    assert!(!decide_sentence(&divisible, Theory::ZAdd).unwrap().verdict);
    let m16_divides = p("forall v1. exists x. forall z. x^2 * v1 != z^2", Theory::QPosMul);
    assert!(!decide_sentence(&m16_divides, Theory::QPosMul).unwrap().verdict);
}

#[test]
fn traces_replay() {
    let opts = QeOptions { trace: true, ..QeOptions::default() };
    for (s, th) in [
        ("forall x. exists y. y * y = x", Theory::RMul),
        ("exists x. x^2 = t & x^3 = s", Theory::CMul),
        ("forall y. exists x. 2.x = y | 2.x = y + 1", Theory::ZAdd),
        ("exists x. R[2](u*x) & R[3](v*x) & x != t", Theory::QPosMul),
    ] {
        let (qf, trace) = eliminate_quantifiers(&p(s, th), th, &opts).unwrap();
        assert!(!trace.steps.is_empty(), "{s}");
        assert_eq!(trace.start, p(s, th));
        assert_eq!(trace.replay().unwrap(), qf);
        assert_eq!(trace.result(), &qf);
    }
}

#[test]
fn decide_matches_eliminate() {
    for (s, th) in [
        ("forall x. exists y. y^3 = x", Theory::RMul),
        ("exists x. forall y. x * y = y", Theory::CMul),
        ("forall x. x =[2] 0 | x =[2] 1", Theory::ZAdd),
        ("forall x. exists y. x = 2.y", Theory::ZAdd),
    ] {
        let d = decide_sentence(&p(s, th), th).unwrap();
        assert_eq!(eval_ground(&qe(s, th), th).unwrap(), d.verdict, "{s}");
    }
}

#[test]
fn rejects_open_bodies_and_bad_signatures() {
    let th = Theory::CMul;
    assert!(eliminate_exists("x", &p("exists y. x = y", th), th, &QeOptions::default()).is_err());
    assert!(decide_sentence(&p("exists x. x = y", th), th).is_err());
}

#[test]
fn resource_cap_is_reported() {
    let th = Theory::ZAdd;
    let opts = QeOptions { dnf_cap: 4, ..QeOptions::default() };
    let f = p("exists x. (x = a | x = b) & (x = c | x = d) & (x = e | x = f)", th);
    assert!(matches!(eliminate_quantifiers(&f, th, &opts), Err(numqe::Error::ResourceCap(_))));
}

#[test]
fn repeated_quantified_subformulas_are_rewritten_in_place() {
    let th = Theory::RPosMul;
    let opts = QeOptions { trace: true, ..QeOptions::default() };
    let f = p("(exists u. u ^ 2 != y) | (forall u. u ^ 2 = y) | (exists u. u ^ 2 != y)", th);
    let (qf, trace) = eliminate_quantifiers(&f, th, &opts).unwrap();
    assert_eq!(qf, Formula::True);
    assert_eq!(trace.replay().unwrap(), qf);
}

#[test]
fn random_traces_replay() {
    let opts = QeOptions { trace: true, ..QeOptions::default() };
    for th in Theory::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let f = random_formula(th, &FormulaShape::default(), &mut rng);
            match eliminate_quantifiers(&f, th, &opts) {
                Ok((qf, trace)) => {
                    assert_eq!(trace.start, f);
                    assert_eq!(trace.replay().unwrap(), qf, "{f}");
                }
                Err(numqe::Error::ResourceCap(_)) => {}
                Err(e) => panic!("{th}: {f}: {e}"),
            }
        }
    }
}

/// Eliminating then instantiating the free variables agrees with
/// instantiating then deciding.
#[test]
fn elimination_commutes_with_instantiation() {
    let shape = FormulaShape { max_quantifiers: 2, max_depth: 3, ..FormulaShape::default() };
    for th in Theory::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let f = random_formula(th, &shape, &mut rng);
            let Ok((qf, _)) = eliminate_quantifiers(&f, th, &QeOptions::default()) else { continue };
            for _ in 0..2 {
                let (mut g, mut h) = (f.clone(), qf.clone());
                for v in f.free_vars() {
                    let c = random_constant(th, &mut rng);
                    g = g.substitute(&v, &c);
                    h = h.substitute(&v, &c);
                }
                let direct = decide_sentence(&g, th).unwrap().verdict;
                assert_eq!(eval_ground(&h, th).unwrap(), direct, "{th}: {f} at {g}");
            }
        }
    }
}

fn abstract_constants(t: &Term, params: &mut Vec<(String, Term)>) -> Term {
    let rec = |a: &Term, params: &mut Vec<(String, Term)>| Box::new(abstract_constants(a, params));
    match t {
        Term::Num(_) | Term::Omega(_) => {
            let name = format!("p{}", params.len());
            params.push((name.clone(), t.clone()));
            Term::var(name)
        }
        Term::Mul(a, b) => Term::Mul(rec(a, params), rec(b, params)),
        Term::Add(a, b) => Term::Add(rec(a, params), rec(b, params)),
        Term::Inv(a) => Term::Inv(rec(a, params)),
        Term::Neg(a) => Term::Neg(rec(a, params)),
        Term::Pow(a, k) if !matches!(**a, Term::Var(_)) => Term::Pow(rec(a, params), *k),
        Term::Scale(k, a) => Term::Scale(k.clone(), rec(a, params)),
        other => other.clone(),
    }
}

/// Symbolic elimination over parameters, instantiated afterwards, agrees
/// with the brute-force oracle on the ground conjunction.
#[test]
fn parametric_elimination_matches_oracle() {
    let shape = ConjShape { max_literals: 4, max_exponent: 4 };
    for th in Theory::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let conj = random_ground_conjunction(th, "x", &shape, &mut rng);
            let mut params = Vec::new();
            let body = Formula::and(conj.clone())
                .map_atoms(&mut |a| Formula::atom(a.map_terms(|t| abstract_constants(t, &mut params))));
            let qf = match eliminate_exists("x", &body, th, &QeOptions::default()) {
                Ok(f) => f,
                Err(numqe::Error::ResourceCap(_)) => continue,
                Err(e) => panic!("{th}: {body}: {e}"),
            };
            let ground = params.iter().fold(qf.clone(), |acc, (v, c)| acc.substitute(v, c));
            let truth = brute_exists("x", &conj, th).unwrap();
            assert_eq!(eval_ground(&ground, th).unwrap(), truth, "{th}: {body} gave {qf}");
        }
    }
}

fn invert_constants(t: &Term) -> Term {
    let rec = |a: &Term| Box::new(invert_constants(a));
    match t {
        Term::Num(c) => Term::Num(c.recip()),
        Term::Mul(a, b) => Term::Mul(rec(a), rec(b)),
        Term::Inv(a) => Term::Inv(rec(a)),
        Term::Pow(a, k) => Term::Pow(rec(a), *k),
        other => other.clone(),
    }
}

#[test]
fn qpos_decisions_are_invariant_under_inversion() {
    let th = Theory::QPosMul;
    let shape = FormulaShape { max_quantifiers: 2, max_depth: 3, ..FormulaShape::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 200 {
        let s = numqe::gen::random_sentence(th, &shape, &mut rng);
        let inverted = s.map_atoms(&mut |a| Formula::atom(a.map_terms(invert_constants)));
        let (Ok(a), Ok(b)) = (decide_sentence(&s, th), decide_sentence(&inverted, th)) else { continue };
        assert_eq!(a.verdict, b.verdict, "{s} vs {inverted}");
        checked += 1;
    }
}

#[test]
fn printed_axioms_reparse() {
    for th in Theory::ALL {
        for inst in axiom_instances(th, 8, 2) {
            let text = inst.formula.to_string();
            assert_eq!(parse(&text, th).unwrap(), inst.formula, "{}", inst.name());
        }
    }
}
