//! The `numqe` command line: argument model, batch driver and exit codes.

use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::Error;
use crate::formula::{parse, Formula, Theory};
use crate::gen::{random_ground_conjunction, ConjShape};
use crate::qe::{axiom_instances, decide_sentence_with, eliminate_exists, eliminate_quantifiers, QeOptions};
use crate::semantics::{
    brute_exists, check_counterexample_with, eval_ground, CounterexampleKind, CounterexampleSpec, DEFAULT_SAMPLES,
};

pub const EXIT_OK: i32 = 0;
/// `decide` on a false sentence, or a failed cross-check.
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_PARSE: i32 = 64;
pub const EXIT_SIGNATURE: i32 = 65;
pub const EXIT_RESOURCE: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

pub const DEFAULT_SEED: u64 = 0;

/// Exit code for an error surfaced to the user.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Invalid(_) => EXIT_PARSE,
        Error::Signature(_) | Error::NotCanonical(_) => EXIT_SIGNATURE,
        Error::ResourceCap(_) => EXIT_RESOURCE,
        Error::Unassigned(_) | Error::Domain(_) | Error::Invariant(_) => EXIT_INTERNAL,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(name = "numqe", version, about = "Decide and eliminate quantifiers in theories of number structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// c-mul, r-mul, rpos-mul, rnonneg-mul, qpos-mul, z-add or div-add.
    #[arg(long, global = true)]
    pub theory: Option<Theory>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Cap on literal occurrences in normal forms.
    #[arg(long, global = true)]
    pub dnf_cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Read formulas from this file, one per line.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Print TRUE or FALSE; exit 0 or 1.
    Decide { formula: Option<String> },
    /// Print a quantifier-free equivalent.
    Eliminate { formula: Option<String> },
    /// Print the rewrite steps of the elimination.
    Trace { formula: Option<String> },
    /// List axiom instances of the theory.
    Axioms {
        #[arg(long, default_value_t = 20)]
        n_max: u64,
        #[arg(long, default_value_t = 2)]
        l_max: usize,
    },
    /// Compare eliminator verdicts with the brute-force oracle on random
    /// ground conjunctions.
    OracleCheck {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Check the substructures that refute finite axiomatizability.
    Counterexamples {
        /// One of Z_OVER_P, Q_OVER_M, C_OVER_M, R_OVER_M, RPOS_OVER_M, QPOS_OMEGA_P; all when absent.
        #[arg(long)]
        kind: Option<CounterexampleKind>,
        /// N for the `M` kinds, the prime for the others.
        #[arg(long)]
        param: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

/// Agreement counts from [`oracle_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    pub samples: usize,
    pub agree: usize,
    pub satisfiable: usize,
    pub disagree: Vec<String>,
    pub errors: Vec<String>,
}

impl OracleStats {
    pub fn clean(&self) -> bool {
        self.disagree.is_empty() && self.errors.is_empty()
    }
}

/// Eliminates `∃x` from `samples` seeded random ground conjunctions and
/// compares each verdict with [`brute_exists`].
pub fn oracle_check(theory: Theory, seed: u64, samples: usize, opts: &QeOptions) -> OracleStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = OracleStats { samples, ..OracleStats::default() };
    for _ in 0..samples {
        let conj = random_ground_conjunction(theory, "x", &ConjShape::default(), &mut rng);
        let body = Formula::and(conj.clone());
        let expected = brute_exists("x", &conj, theory);
        let got = eliminate_exists("x", &body, theory, opts).and_then(|f| eval_ground(&f, theory));
        match (expected, got) {
            (Ok(a), Ok(b)) if a == b => {
                stats.agree += 1;
                stats.satisfiable += usize::from(a);
            }
            (Ok(a), Ok(b)) => stats.disagree.push(format!("oracle {a}, eliminator {b}: exists x. {body}")),
            (Err(e), _) | (_, Err(e)) => stats.errors.push(format!("{e}: exists x. {body}")),
        }
    }
    stats
}

fn options(common: &Common) -> QeOptions {
    let mut o = QeOptions::default();
    if let Some(cap) = common.dnf_cap {
        o.dnf_cap = cap;
    }
    o
}

/// Lines to process: the positional formula, else the file, else stdin.
fn inputs(arg: Option<String>, common: &Common, stdin: &mut dyn BufRead) -> Result<Vec<String>, String> {
    if let Some(f) = arg {
        return Ok(vec![f]);
    }
    let text = match &common.file {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| format!("cannot read standard input: {e}"))?;
            s
        }
    };
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

struct Out<'a> {
    w: &'a mut dyn Write,
    format: Format,
}

impl Out<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.w, "{}", text.as_ref());
    }

    fn emit(&mut self, text: impl AsRef<str>, obj: serde_json::Value) {
        match self.format {
            Format::Text => self.line(text),
            Format::JsonLines => self.line(obj.to_string()),
        }
    }

    fn error(&mut self, input: &str, e: &Error) -> i32 {
        let code = exit_code(e);
        self.emit(format!("ERROR {e}"), json!({"input": input, "error": e.to_string(), "exit": code}));
        code
    }
}

fn require_theory(common: &Common, out: &mut Out<'_>) -> Option<Theory> {
    if common.theory.is_none() {
        out.emit("ERROR --theory is required", json!({"error": "--theory is required", "exit": EXIT_PARSE}));
    }
    common.theory
}

fn formula_command(cmd: &Command, line: &str, theory: Theory, opts: &QeOptions, out: &mut Out<'_>) -> i32 {
    let f = match parse(line, theory) {
        Ok(f) => f,
        Err(e) => return out.error(line, &e),
    };
    match cmd {
        Command::Decide { .. } => match decide_sentence_with(&f, theory, opts) {
            Ok(d) => {
                let word = if d.verdict { "TRUE" } else { "FALSE" };
                out.emit(word, json!({"verdict": d.verdict, "qf": d.qf.to_string(), "theory": theory.name()}));
                if d.verdict { EXIT_OK } else { EXIT_FALSE }
            }
            Err(e) => out.error(line, &e),
        },
        Command::Eliminate { .. } => match eliminate_quantifiers(&f, theory, opts) {
            Ok((qf, _)) => {
                out.emit(qf.to_string(), json!({"qf": qf.to_string(), "theory": theory.name()}));
                EXIT_OK
            }
            Err(e) => out.error(line, &e),
        },
        _ => {
            let opts = QeOptions { trace: true, ..opts.clone() };
            match eliminate_quantifiers(&f, theory, &opts) {
                Ok((_, trace)) => {
                    if out.format == Format::Text {
                        out.line(trace.to_string());
                    }
                    for (i, s) in trace.steps.iter().enumerate() {
                        if out.format == Format::JsonLines {
                            out.line(
                                json!({
                                    "step": i + 1,
                                    "rule": s.rule,
                                    "before": s.before.to_string(),
                                    "after": s.after.to_string(),
                                })
                                .to_string(),
                            );
                        }
                    }
                    match trace.replay() {
                        Ok(_) => EXIT_OK,
                        Err(e) => out.error(line, &e),
                    }
                }
                Err(e) => out.error(line, &e),
            }
        }
    }
}

fn counterexamples(
    kind: Option<CounterexampleKind>,
    param: Option<u64>,
    samples: usize,
    seed: u64,
    out: &mut Out<'_>,
) -> i32 {
    let kinds = match kind {
        Some(k) => vec![k],
        None => CounterexampleKind::ALL.to_vec(),
    };
    let mut code = EXIT_OK;
    for k in kinds {
        let spec = match param {
            Some(p) => match CounterexampleSpec::new(k, p) {
                Ok(s) => s,
                Err(e) => return out.error(k.name(), &e),
            },
            None => CounterexampleSpec::with_default(k),
        };
        let report = check_counterexample_with(&spec, seed, samples);
        if !report.reproduced() {
            code = EXIT_FALSE;
        }
        match out.format {
            Format::Text => out.line(report.to_string()),
            Format::JsonLines => {
                for f in &report.findings {
                    out.line(
                        json!({
                            "spec": spec.to_string(),
                            "check": f.check,
                            "expected": f.expected.to_string(),
                            "observed": f.observed.to_string(),
                            "witness": f.witness,
                        })
                        .to_string(),
                    );
                }
                out.line(json!({"spec": spec.to_string(), "reproduced": report.reproduced()}).to_string());
            }
        }
    }
    code
}

/// Runs one invocation, writing results to `stdout` and diagnostics to
/// `stderr`. Returns the process exit code.
pub fn run(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let common = cli.common;
    let opts = options(&common);
    let mut out = Out { w: stdout, format: common.format };
    match cli.command {
        cmd @ (Command::Decide { .. } | Command::Eliminate { .. } | Command::Trace { .. }) => {
            let Some(theory) = require_theory(&common, &mut out) else { return EXIT_PARSE };
            let arg = match &cmd {
                Command::Decide { formula } | Command::Eliminate { formula } | Command::Trace { formula } => {
                    formula.clone()
                }
                _ => unreachable!(),
            };
            let lines = match inputs(arg, &common, stdin) {
                Ok(l) => l,
                Err(msg) => {
                    let _ = writeln!(stderr, "numqe: {msg}");
                    return EXIT_PARSE;
                }
            };
            let batch = lines.len() > 1;
            let mut worst = EXIT_OK;
            for (i, line) in lines.iter().enumerate() {
                let code = formula_command(&cmd, line, theory, &opts, &mut out);
                if batch {
                    let _ = writeln!(stderr, "line {}: exit {code}", i + 1);
                }
                worst = worst.max(code);
            }
            worst
        }
        Command::Axioms { n_max, l_max } => {
            let Some(theory) = require_theory(&common, &mut out) else { return EXIT_PARSE };
            for ax in axiom_instances(theory, n_max, l_max) {
                out.emit(
                    ax.to_string(),
                    json!({"schema": ax.name(), "formula": ax.formula.to_string(), "theory": theory.name()}),
                );
            }
            EXIT_OK
        }
        Command::OracleCheck { samples } => {
            let theories = match common.theory {
                Some(t) => vec![t],
                None => Theory::ALL.to_vec(),
            };
            let mut code = EXIT_OK;
            for theory in theories {
                let s = oracle_check(theory, common.seed, samples, &opts);
                out.emit(
                    format!(
                        "{theory}: {} samples, {} agree ({} satisfiable), {} disagree, {} errors",
                        s.samples,
                        s.agree,
                        s.satisfiable,
                        s.disagree.len(),
                        s.errors.len()
                    ),
                    json!({
                        "theory": theory.name(),
                        "samples": s.samples,
                        "agree": s.agree,
                        "satisfiable": s.satisfiable,
                        "disagree": s.disagree,
                        "errors": s.errors,
                    }),
                );
                if out.format == Format::Text {
                    for d in s.disagree.iter().chain(&s.errors) {
                        out.line(format!("  {d}"));
                    }
                }
                if !s.disagree.is_empty() {
                    code = code.max(EXIT_FALSE);
                }
                if let Some(first) = s.errors.first() {
                    let _ = writeln!(stderr, "numqe: {first}");
                    code = code.max(EXIT_FALSE);
                }
            }
            code
        }
        Command::Counterexamples { kind, param, samples } => {
            counterexamples(kind, param, samples, common.seed, &mut out)
        }
    }
}
