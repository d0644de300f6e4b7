//! Recursive-descent parser for the ASCII formula grammar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ast::{Atom, Formula, Term};
use super::theory::Theory;
use crate::error::{Error, Result};

const RESERVED: [&str; 6] = ["forall", "exists", "inv", "w", "true", "false"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigRational),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Dot,
    Star,
    Caret,
    Plus,
    Minus,
    Eq,
    Ne,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(q) => format!("numeral `{q}`"),
            other => format!("{other:?}"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let digits_at = |j: usize| j < bytes.len() && bytes[j].is_ascii_digit();
        if c.is_ascii_digit() || (c == b'-' && digits_at(i + 1)) {
            i += 1;
            while digits_at(i) {
                i += 1;
            }
            let mut value = BigRational::from_integer(src[start..i].parse::<BigInt>().unwrap());
            if i < bytes.len() && bytes[i] == b'/' && digits_at(i + 1) {
                let den_start = i + 1;
                i += 1;
                while digits_at(i) {
                    i += 1;
                }
                let den: BigInt = src[den_start..i].parse().unwrap();
                if den.is_zero() {
                    return Err(Error::parse(start, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
            }
            out.push((start, Tok::Num(value)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            i += 1;
            while i < bytes.len()
                && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
            {
                i += 1;
            }
            let word = &src[start..i];
            if c.is_ascii_uppercase() && word != "P" && word != "R" {
                return Err(Error::parse(start, format!("unexpected identifier `{word}`")));
            }
            out.push((start, Tok::Ident(word.to_string())));
            continue;
        }
        let two = |s: &str| src[i..].starts_with(s);
        let (tok, len) = if two("<->") {
            (Tok::DArrow, 3)
        } else if two("->") {
            (Tok::Arrow, 2)
        } else if two("!=") {
            (Tok::Ne, 2)
        } else {
            let t = match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'[' => Tok::LBrack,
                b']' => Tok::RBrack,
                b'.' => Tok::Dot,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'=' => Tok::Eq,
                b'~' => Tok::Tilde,
                b'&' => Tok::Amp,
                b'|' => Tok::Bar,
                _ => {
                    let ch = src[i..].chars().next().unwrap();
                    return Err(Error::parse(start, format!("unexpected character `{ch}`")));
                }
            };
            (t, 1)
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

/// Rejects symbols that the theory's signature does not contain, before
/// any parsing takes place.
fn scan_signature(tokens: &[(usize, Tok)], theory: Theory) -> Result<()> {
    for (idx, (pos, tok)) in tokens.iter().enumerate() {
        let bad = |what: &str| {
            Err(Error::Signature(format!("{what} at byte {pos} is not in the signature of {theory}")))
        };
        let next_is = |t: Tok| tokens.get(idx + 1).map(|(_, n)| n == &t).unwrap_or(false);
        match tok {
            Tok::Plus | Tok::Minus if theory.is_multiplicative() => return bad("additive operator"),
            Tok::Star | Tok::Caret if !theory.is_multiplicative() => {
                return bad("multiplicative operator")
            }
            Tok::Ident(w) if w == "inv" && !theory.is_multiplicative() => return bad("`inv`"),
            Tok::Ident(w) if w == "w" && !theory.allows_omega() => return bad("root of unity"),
            Tok::Ident(w) if w == "P" && !theory.allows_positivity() => return bad("predicate `P`"),
            Tok::Ident(w) if w == "R" && !theory.allows_root_predicate() => {
                return bad("predicate `R`")
            }
            Tok::Eq if next_is(Tok::LBrack) && !theory.allows_congruence() => {
                return bad("congruence")
            }
            Tok::Num(_) if next_is(Tok::Dot) && theory.is_multiplicative() => {
                return bad("scalar multiple")
            }
            _ => {}
        }
    }
    Ok(())
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.offset(), msg))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), Tok::describe);
            self.err(format!("expected {t:?}, found {found}"))
        }
    }

    fn is_keyword(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn int_literal<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<T> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) if q.is_integer() => match T::try_from(q.to_integer()) {
                Ok(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                Err(_) => self.err(format!("{what} `{q}` out of range")),
            },
            _ => self.err(format!("expected {what}")),
        }
    }

    fn index_at_least_two(&mut self, what: &str) -> Result<u64> {
        self.expect(Tok::LBrack)?;
        let n: u64 = self.int_literal(what)?;
        if n < 2 {
            return self.err(format!("{what} must be at least 2"));
        }
        self.expect(Tok::RBrack)?;
        Ok(n)
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.conjunction()?];
        while self.eat(&Tok::Bar) {
            items.push(self.conjunction()?);
        }
        Ok(Formula::or(items))
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.unary()?];
        while self.eat(&Tok::Amp) {
            items.push(self.unary()?);
        }
        Ok(Formula::and(items))
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        for (kw, is_exists) in [("exists", true), ("forall", false)] {
            if self.is_keyword(kw) {
                self.pos += 1;
                let x = self.variable()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                return Ok(if is_exists { Formula::exists(x, body) } else { Formula::forall(x, body) });
            }
        }
        self.primary()
    }

    fn variable(&mut self) -> Result<String> {
        match self.peek().cloned() {
            Some(Tok::Ident(w))
                if w.as_bytes()[0].is_ascii_lowercase() && !RESERVED.contains(&w.as_str()) =>
            {
                self.pos += 1;
                Ok(w)
            }
            _ => self.err("expected a variable"),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.is_keyword("true") {
            self.pos += 1;
            return Ok(Formula::True);
        }
        if self.is_keyword("false") {
            self.pos += 1;
            return Ok(Formula::False);
        }
        if self.is_keyword("P") {
            self.pos += 1;
            self.expect(Tok::LParen)?;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(Formula::Atom(Atom::Pos(t)));
        }
        if self.is_keyword("R") {
            self.pos += 1;
            let n = self.index_at_least_two("root index")?;
            self.expect(Tok::LParen)?;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(Formula::Atom(Atom::Root(n, t)));
        }
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            match self.relation() {
                Ok(f) => return Ok(f),
                Err(term_err) => {
                    self.pos = save + 1;
                    let inner = match self.formula() {
                        Ok(inner) => inner,
                        Err(formula_err) => return Err(furthest(term_err, formula_err)),
                    };
                    if let Err(e) = self.expect(Tok::RParen) {
                        return Err(furthest(term_err, e));
                    }
                    return Ok(inner);
                }
            }
        }
        self.relation()
    }

    fn relation(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        if self.eat(&Tok::Ne) {
            return Ok(Formula::ne(lhs, self.term()?));
        }
        if self.eat(&Tok::Eq) {
            if self.peek() == Some(&Tok::LBrack) {
                let n = self.index_at_least_two("congruence modulus")?;
                return Ok(Formula::Atom(Atom::Cong(n, lhs, self.term()?)));
            }
            return Ok(Formula::eq(lhs, self.term()?));
        }
        self.err("expected `=`, `!=` or `=[n]` after a term")
    }

    // ---- terms ----

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.product()?;
        while self.eat(&Tok::Plus) {
            lhs = Term::add(lhs, self.product()?);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Term> {
        let mut lhs = self.unary_term()?;
        while self.eat(&Tok::Star) {
            lhs = Term::mul(lhs, self.unary_term()?);
        }
        Ok(lhs)
    }

    fn unary_term(&mut self) -> Result<Term> {
        if self.eat(&Tok::Minus) {
            return Ok(Term::neg(self.unary_term()?));
        }
        if let (Some(Tok::Num(q)), Some(Tok::Dot)) = (self.peek(), self.peek_at(1)) {
            let q = q.clone();
            if !q.is_integer() || !q.is_positive() {
                return self.err(format!("scalar `{q}` must be a positive integer"));
            }
            let n: BigInt = self.int_literal("scalar")?;
            self.pos += 1;
            return Ok(Term::scale(n, self.unary_term()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Term> {
        let base = self.primary_term()?;
        if self.eat(&Tok::Caret) {
            let k: i64 = self.int_literal("exponent")?;
            if k == 0 {
                return self.err("exponent must be nonzero");
            }
            return Ok(Term::pow(base, k));
        }
        Ok(base)
    }

    fn primary_term(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Term::Num(q))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(w)) if w == "inv" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::inv(t))
            }
            Some(Tok::Ident(w)) if w == "w" => {
                self.pos += 1;
                Ok(Term::Omega(self.index_at_least_two("root-of-unity order")?))
            }
            Some(Tok::Ident(_)) => Ok(Term::Var(self.variable()?)),
            Some(t) => self.err(format!("unexpected {} in term", t.describe())),
            None => self.err("unexpected end of input in term"),
        }
    }
}

fn furthest(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (Error::Parse { pos: pa, .. }, Error::Parse { pos: pb, .. }) if pa > pb => a,
        _ => b,
    }
}

/// Parses `text` as a formula of `theory`.
///
/// Syntax errors come back as [`Error::Parse`]; symbols or numerals outside
/// the theory's signature as [`Error::Signature`].
pub fn parse(text: &str, theory: Theory) -> Result<Formula> {
    let toks = lex(text)?;
    scan_signature(&toks, theory)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        let d = t.describe();
        return p.err(format!("unexpected {d} after formula"));
    }
    super::check_signature(&f, theory)?;
    Ok(f)
}

/// Parses a term; used by tests and the examples.
pub fn parse_term(text: &str, theory: Theory) -> Result<Term> {
    let toks = lex(text)?;
    scan_signature(&toks, theory)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("unexpected input after term");
    }
    super::check_term(&t, theory)?;
    Ok(t)
}

pub(crate) fn numeral_fits(q: &BigRational, theory: Theory) -> bool {
    match theory {
        Theory::CMul | Theory::RMul | Theory::DivAdd => true,
        Theory::RNonnegMul => !q.is_negative(),
        Theory::RPosMul | Theory::QPosMul => q.is_positive(),
        Theory::ZAdd => q.is_integer(),
    }
}
