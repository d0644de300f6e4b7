//! Standard models, evaluation and a brute-force existential oracle.

mod counterexample;
mod eval;
mod models;
mod oracle;

pub use eval::{eval_ground, eval_qf, eval_term, Assignment};
pub use models::{nth_root, ComplexElem, Elem, QPlusElem, RealElem};
pub use oracle::{brute_exists, brute_exists_witness};
pub use counterexample::{
    check_counterexample, check_counterexample_with, CounterexampleKind, CounterexampleSpec, Finding, Report, Verdict,
    DEFAULT_SAMPLES,
};
