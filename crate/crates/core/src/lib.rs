//! Decision procedures for first-order theories of number structures.
//!
//! The crate decides sentences of, and eliminates quantifiers from, the
//! multiplicative theories of ℂ, ℝ, ℝ⁺, ℝ≥0 and ℚ⁺ and the additive
//! theories of ℤ and of the divisible groups ℚ, ℝ, ℂ. Each theory has its
//! own single-quantifier eliminator ([`qe`]); the driver reduces arbitrary
//! formulas to calls into those eliminators. Exact ground models
//! ([`semantics`]) act as truth oracles and host the substructures that
//! show none of these theories is finitely axiomatizable.
//!
//! ```
//! use numqe::{decide_sentence, parse, Theory};
//!
//! let s = parse("forall x. exists y. y * y = x", Theory::CMul).unwrap();
//! assert!(decide_sentence(&s, Theory::CMul).unwrap().verdict);
//! let s = parse("forall x. exists y. y * y = x", Theory::RMul).unwrap();
//! assert!(!decide_sentence(&s, Theory::RMul).unwrap().verdict);
//! ```

pub mod cli;
pub mod error;
pub mod formula;
pub mod gen;
pub mod numtheory;
pub mod qe;
pub mod semantics;

pub use error::{Error, Result};
pub use formula::{parse, Atom, Formula, Term, Theory};
pub use qe::{decide_sentence, eliminate_quantifiers, Decision, EliminationTrace, QeOptions};
