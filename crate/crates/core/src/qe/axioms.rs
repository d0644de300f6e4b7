//! Axiom schema catalogs, instantiated up to a bound.

use std::fmt;

use crate::formula::{Atom, Formula, Term, Theory};

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomInstance {
    pub schema: &'static str,
    pub index: Option<u64>,
    /// The exponent sequence of an `M16` instance; empty elsewhere.
    pub moduli: Vec<u64>,
    pub formula: Formula,
}

impl AxiomInstance {
    fn plain(schema: &'static str, formula: Formula) -> Self {
        AxiomInstance { schema, index: None, moduli: Vec::new(), formula }
    }

    fn indexed(schema: &'static str, n: u64, formula: Formula) -> Self {
        AxiomInstance { schema, index: Some(n), moduli: Vec::new(), formula }
    }

    pub fn name(&self) -> String {
        let mut s = self.schema.to_string();
        if let Some(n) = self.index {
            s.push_str(&format!(",{n}"));
        }
        if !self.moduli.is_empty() {
            let ms: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
            s.push_str(&format!("[{}]", ms.join(",")));
        }
        s
    }
}

impl fmt::Display for AxiomInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name(), self.formula)
    }
}

fn v(name: &str) -> Term {
    Term::var(name)
}

fn one() -> Term {
    Term::int(1)
}

fn zero() -> Term {
    Term::int(0)
}

fn pos(t: Term) -> Formula {
    Formula::atom(Atom::Pos(t))
}

fn assoc_mul() -> Formula {
    Formula::forall_many(
        ["x", "y", "z"],
        Formula::eq(
            Term::mul(v("x"), Term::mul(v("y"), v("z"))),
            Term::mul(Term::mul(v("x"), v("y")), v("z")),
        ),
    )
}

fn unit_mul() -> Formula {
    Formula::forall("x", Formula::eq(Term::mul(v("x"), one()), v("x")))
}

fn inverse_nonzero() -> Formula {
    Formula::forall(
        "x",
        Formula::implies(
            Formula::ne(v("x"), zero()),
            Formula::eq(Term::mul(v("x"), Term::inv(v("x"))), one()),
        ),
    )
}

fn inverse_total() -> Formula {
    Formula::forall("x", Formula::eq(Term::mul(v("x"), Term::inv(v("x"))), one()))
}

fn comm_mul() -> Formula {
    Formula::forall_many(["x", "y"], Formula::eq(Term::mul(v("x"), v("y")), Term::mul(v("y"), v("x"))))
}

fn absorbing_zero() -> Formula {
    Formula::forall(
        "x",
        Formula::and(vec![
            Formula::eq(Term::mul(v("x"), zero()), zero()),
            Formula::eq(Term::inv(zero()), zero()),
        ]),
    )
}

fn torsion_free(n: u64) -> Formula {
    Formula::forall(
        "x",
        Formula::implies(Formula::eq(Term::pow(v("x"), n as i64), one()), Formula::eq(v("x"), one())),
    )
}

fn roots_exist(n: u64) -> Formula {
    Formula::forall("x", Formula::exists("y", Formula::eq(v("x"), Term::pow(v("y"), n as i64))))
}

fn group_core(theory: Theory) -> Vec<AxiomInstance> {
    let inverse = match theory {
        Theory::RPosMul | Theory::QPosMul => AxiomInstance::plain("M3°", inverse_total()),
        _ => AxiomInstance::plain("M3", inverse_nonzero()),
    };
    vec![
        AxiomInstance::plain("M1", assoc_mul()),
        AxiomInstance::plain("M2", unit_mul()),
        inverse,
        AxiomInstance::plain("M4", comm_mul()),
    ]
}

fn additive_core() -> Vec<AxiomInstance> {
    vec![
        AxiomInstance::plain(
            "A1",
            Formula::forall_many(
                ["x", "y", "z"],
                Formula::eq(
                    Term::add(v("x"), Term::add(v("y"), v("z"))),
                    Term::add(Term::add(v("x"), v("y")), v("z")),
                ),
            ),
        ),
        AxiomInstance::plain("A2", Formula::forall("x", Formula::eq(Term::add(v("x"), zero()), v("x")))),
        AxiomInstance::plain(
            "A3",
            Formula::forall("x", Formula::eq(Term::add(v("x"), Term::neg(v("x"))), zero())),
        ),
        AxiomInstance::plain(
            "A4",
            Formula::forall_many(["x", "y"], Formula::eq(Term::add(v("x"), v("y")), Term::add(v("y"), v("x")))),
        ),
    ]
}

fn no_torsion_add(n: u64) -> Formula {
    Formula::forall(
        "x",
        Formula::implies(Formula::eq(Term::scale(n, v("x")), zero()), Formula::eq(v("x"), zero())),
    )
}

fn complex(n_max: u64) -> Vec<AxiomInstance> {
    let mut out = group_core(Theory::CMul);
    out.push(AxiomInstance::plain("M5", absorbing_zero()));
    for n in 2..=n_max {
        let w = |i: u64| match i {
            0 => one(),
            1 => Term::Omega(n),
            _ => Term::pow(Term::Omega(n), i as i64),
        };
        let distinct = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| Formula::ne(w(i), w(j)))
            .collect();
        out.push(AxiomInstance::indexed("M6", n, Formula::and(distinct)));
        out.push(AxiomInstance::indexed(
            "M7",
            n,
            Formula::forall(
                "x",
                Formula::iff(
                    Formula::eq(Term::pow(v("x"), n as i64), one()),
                    Formula::or((0..n).map(|i| Formula::eq(v("x"), w(i))).collect()),
                ),
            ),
        ));
        out.push(AxiomInstance::indexed(
            "M8",
            n,
            Formula::forall("x", Formula::exists("y", Formula::eq(Term::pow(v("y"), n as i64), v("x")))),
        ));
    }
    out
}

fn divisible(n_max: u64) -> Vec<AxiomInstance> {
    let mut out = additive_core();
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed("A5", n, no_torsion_add(n)));
    }
    out.push(AxiomInstance::plain("A6", Formula::exists("y", Formula::ne(v("y"), zero()))));
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed(
            "A7",
            n,
            Formula::forall("x", Formula::exists("y", Formula::eq(v("x"), Term::scale(n, v("y"))))),
        ));
    }
    out
}

fn integer(n_max: u64) -> Vec<AxiomInstance> {
    let mut out = additive_core();
    for n in 2..=n_max {
        out.push(AxiomInstance::indexed("A5", n, no_torsion_add(n)));
    }
    out.push(AxiomInstance::plain("A6°", Formula::ne(one(), zero())));
    for n in 2..=n_max {
        let body = |y: &str| {
            Formula::or(
                (0..n)
                    .map(|i| Formula::eq(v("x"), Term::add(Term::scale(n, v(y)), Term::int(i as i64))))
                    .collect(),
            )
        };
        let unique = Formula::forall_many(
            ["y", "z"],
            Formula::implies(Formula::and(vec![body("y"), body("z")]), Formula::eq(v("y"), v("z"))),
        );
        out.push(AxiomInstance::indexed(
            "A7°",
            n,
            Formula::forall("x", Formula::and(vec![Formula::exists("y", body("y")), unique])),
        ));
    }
    out
}

fn real_positive(n_max: u64) -> Vec<AxiomInstance> {
    let mut out = group_core(Theory::RPosMul);
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed("M7°", n, torsion_free(n)));
    }
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed("M8", n, roots_exist(n)));
    }
    out.push(AxiomInstance::plain("M9", Formula::exists("y", Formula::ne(v("y"), one()))));
    out
}

fn real_nonneg(n_max: u64) -> Vec<AxiomInstance> {
    let mut out = group_core(Theory::RNonnegMul);
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed("M7°", n, torsion_free(n)));
    }
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed("M8", n, roots_exist(n)));
    }
    out.push(AxiomInstance::plain(
        "M9°",
        Formula::exists("y", Formula::and(vec![Formula::ne(v("y"), zero()), Formula::ne(v("y"), one())])),
    ));
    out.push(AxiomInstance::plain("M10", absorbing_zero()));
    out
}

fn real(n_max: u64) -> Vec<AxiomInstance> {
    let minus_one = || Term::int(-1);
    let mut out = group_core(Theory::RMul);
    out.push(AxiomInstance::plain(
        "M9⋄",
        Formula::exists(
            "y",
            Formula::and(vec![
                Formula::ne(v("y"), minus_one()),
                Formula::ne(v("y"), zero()),
                Formula::ne(v("y"), one()),
            ]),
        ),
    ));
    out.push(AxiomInstance::plain("M10", absorbing_zero()));
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed(
            "M11",
            n,
            Formula::forall(
                "x",
                Formula::iff(
                    Formula::eq(Term::pow(v("x"), 2 * n as i64), one()),
                    Formula::or(vec![Formula::eq(v("x"), one()), Formula::eq(v("x"), minus_one())]),
                ),
            ),
        ));
    }
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed("M12", n, roots_exist(2 * n + 1)));
    }
    out.push(AxiomInstance::plain(
        "M13",
        Formula::forall(
            "x",
            Formula::iff(
                pos(v("x")),
                Formula::exists(
                    "y",
                    Formula::and(vec![
                        Formula::ne(v("y"), zero()),
                        Formula::eq(v("x"), Term::pow(v("y"), 2)),
                    ]),
                ),
            ),
        ),
    ));
    out.push(AxiomInstance::plain(
        "M14",
        Formula::forall(
            "x",
            Formula::implies(
                Formula::ne(v("x"), zero()),
                Formula::iff(Formula::not(pos(v("x"))), pos(Term::mul(minus_one(), v("x")))),
            ),
        ),
    ));
    out.push(AxiomInstance::plain(
        "M15",
        Formula::forall_many(
            ["x", "y"],
            Formula::implies(
                Formula::and(vec![Formula::ne(v("x"), zero()), Formula::ne(v("y"), zero())]),
                Formula::iff(
                    pos(Term::mul(v("x"), v("y"))),
                    Formula::iff(pos(v("x")), pos(v("y"))),
                ),
            ),
        ),
    ));
    out
}

/// Nondecreasing sequences of length `len` drawn from `pool`.
fn multisets(pool: &[u64], len: usize) -> Vec<Vec<u64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &m) in pool.iter().enumerate() {
        for mut tail in multisets(&pool[i..], len - 1) {
            tail.insert(0, m);
            out.push(tail);
        }
    }
    out
}

fn non_power_avoidance(n: u64, ms: &[u64]) -> Formula {
    let params: Vec<String> = (1..=ms.len()).map(|k| format!("v{k}")).collect();
    let clauses = ms
        .iter()
        .zip(&params)
        .map(|(&m, p)| {
            Formula::ne(Term::mul(Term::pow(v("x"), n as i64), v(p)), Term::pow(v("z"), m as i64))
        })
        .collect();
    Formula::forall_many(
        params,
        Formula::exists("x", Formula::forall("z", Formula::and(clauses))),
    )
}

fn qplus(n_max: u64, l_max: usize) -> Vec<AxiomInstance> {
    let mut out = group_core(Theory::QPosMul);
    for n in 1..=n_max {
        out.push(AxiomInstance::indexed("M7°", n, torsion_free(n)));
    }
    for n in 1..=n_max {
        let pool: Vec<u64> = (2..=n_max).filter(|m| n % m != 0).collect();
        for len in 1..=l_max {
            for ms in multisets(&pool, len) {
                out.push(AxiomInstance {
                    schema: "M16",
                    index: Some(n),
                    formula: non_power_avoidance(n, &ms),
                    moduli: ms,
                });
            }
        }
    }
    out
}

/// Every schema instance of `theory`'s axiomatization with index at most
/// `n_max`; `M16` instances use up to `l_max` parameters.
pub fn axiom_instances(theory: Theory, n_max: u64, l_max: usize) -> Vec<AxiomInstance> {
    let n_max = n_max.max(2);
    let l_max = l_max.max(1);
    match theory {
        Theory::CMul => complex(n_max),
        Theory::DivAdd => divisible(n_max),
        Theory::ZAdd => integer(n_max),
        Theory::RPosMul => real_positive(n_max),
        Theory::RNonnegMul => real_nonneg(n_max),
        Theory::RMul => real(n_max),
        Theory::QPosMul => qplus(n_max, l_max),
    }
}
