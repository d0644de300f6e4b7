use numqe::formula::{parse_term, to_dnf, to_prenex, DEFAULT_DNF_CAP};
use numqe::{parse, Error, Formula, Term, Theory};

fn p(s: &str, th: Theory) -> Formula {
    parse(s, th).unwrap_or_else(|e| panic!("{s}: {e}"))
}

#[test]
fn parses_documented_examples() {
    let f = p("exists x. x*x = w[2]", Theory::CMul);
    assert_eq!(
        f,
        Formula::exists("x", Formula::eq(Term::mul(Term::var("x"), Term::var("x")), Term::Omega(2)))
    );
    let g = p("forall x. exists y. x = 3 . y", Theory::ZAdd);
    assert_eq!(g.to_string(), "forall x. exists y. x = 3 . y");
}

#[test]
fn signature_violations_are_distinct_from_syntax_errors() {
    assert!(matches!(parse("P(+ x y)", Theory::RMul), Err(Error::Signature(_))));
    assert!(matches!(parse("x * y = 1", Theory::ZAdd), Err(Error::Signature(_))));
    assert!(matches!(parse("x = w[3]", Theory::RMul), Err(Error::Signature(_))));
    assert!(matches!(parse("R[2](x)", Theory::CMul), Err(Error::Signature(_))));
    assert!(matches!(parse("x = 0", Theory::QPosMul), Err(Error::Signature(_))));
    assert!(matches!(parse("x = 1/2", Theory::ZAdd), Err(Error::Signature(_))));
    assert!(matches!(parse("x =[3] y", Theory::DivAdd), Err(Error::Signature(_))));
    assert!(matches!(parse("x = ", Theory::CMul), Err(Error::Parse { .. })));
    assert!(matches!(parse("exists . x = y", Theory::CMul), Err(Error::Parse { .. })));
    assert!(matches!(parse("x ^ 0 = y", Theory::CMul), Err(Error::Parse { .. })));
    assert!(matches!(parse("(x = y", Theory::CMul), Err(Error::Parse { .. })));
}

#[test]
fn precedence_and_associativity() {
    let f = p("a = b | c = d & e = f -> g = h -> i = j <-> k = l", Theory::CMul);
    match &f {
        Formula::Iff(lhs, _) => match lhs.as_ref() {
            Formula::Implies(a, b) => {
                assert!(matches!(a.as_ref(), Formula::Or(xs) if xs.len() == 2));
                assert!(matches!(b.as_ref(), Formula::Implies(..)));
            }
            other => panic!("unexpected {other:?}"),
        },
        other => panic!("unexpected {other:?}"),
    }
    let q = p("exists x. x = y & y = z", Theory::CMul);
    assert!(matches!(q, Formula::Exists(_, ref b) if matches!(b.as_ref(), Formula::And(_))));
    let paren = p("(x) * y = (z) & (x = y)", Theory::CMul);
    assert!(matches!(paren, Formula::And(_)));
}

#[test]
fn printing_round_trips() {
    let cases = [
        (Theory::CMul, "forall x. exists y. y * y = x"),
        (Theory::CMul, "x * inv(y) ^ 3 = w[5] ^ 2 * -3/4"),
        (Theory::RMul, "P(-1 * x) & ~P(x) | x != 0"),
        (Theory::QPosMul, "~R[3](2 * x) -> (exists y. y ^ -2 = x)"),
        (Theory::ZAdd, "x + - 3 . y =[4] -7 <-> ~(x =[2] 1)"),
        (Theory::DivAdd, "(exists x. 2 . x = y) <-> true"),
        (Theory::CMul, "~(exists x. x = y) & false"),
        (Theory::CMul, "(a = b -> c = d) -> e = f"),
        (Theory::CMul, "(a = b <-> c = d) <-> (e = f <-> g = h)"),
    ];
    for (th, s) in cases {
        let f = p(s, th);
        let printed = f.to_string();
        assert_eq!(p(&printed, th), f, "{s} printed as {printed}");
        assert_eq!(p(&printed, th).to_string(), printed);
    }
}

#[test]
fn terms_parse_with_numeral_rules() {
    assert_eq!(parse_term("-3", Theory::ZAdd).unwrap(), Term::int(-3));
    assert_eq!(parse_term("- 3", Theory::ZAdd).unwrap(), Term::neg(Term::int(3)));
    assert_eq!(parse_term("x ^ -2", Theory::CMul).unwrap(), Term::pow(Term::var("x"), -2));
}

#[test]
fn prenex_examples() {
    let th = Theory::CMul;
    assert_eq!(to_prenex(&p("~forall x. x = y", th)).to_string(), "exists x. x != y");
    let qf = p("x = y -> y = z", th);
    assert_eq!(to_prenex(&qf), qf);
    let two = to_prenex(&p("(exists x. x = y) & (exists x. x = z)", th));
    assert_eq!(two.to_string(), "exists x_1. exists x_2. x_1 = y & x_2 = z");
    let captured = to_prenex(&p("x = y & (forall x. x = 1)", th));
    assert_eq!(captured.to_string(), "forall x_1. x = y & x_1 = 1");
}

#[test]
fn dnf_examples() {
    let th = Theory::CMul;
    let d = to_dnf(&p("a = b & (c = d | e = f)", th), DEFAULT_DNF_CAP).unwrap();
    assert_eq!(d.to_string(), "a = b & c = d | a = b & e = f");
    assert_eq!(to_dnf(&p("a != b", th), 10).unwrap().to_string(), "a != b");
    assert_eq!(to_dnf(&p("~(a = b & c = d)", th), 10).unwrap().to_string(), "a != b | c != d");
    let wide = p("(a=b|c=d)&(a=c|b=d)&(a=d|b=c)&(a=e|b=e)&(c=e|d=e)", th);
    assert!(matches!(to_dnf(&wide, 20), Err(Error::ResourceCap(_))));
}
