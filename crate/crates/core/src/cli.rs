//! Command-line front end. The `rq` binary is a thin wrapper around [`run`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::comm::{default_names, Truncation};
use crate::error::{Error, Result};
use crate::genmm::{cross_check, dixon_s, dixon_sk, eval_f, ScalarMatrix};
use crate::ideal::RelationSet;
use crate::sequences::{
    class_cardinality, enumerate_class, phi, phi_inverse, phi_relative, psi_step, rank, SequenceClass,
    SequenceClassQuery,
};
use crate::suites::{run_suite, RunReport, Suite, SuiteOptions};
use crate::word::{Permutation, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rq", version, about = "Exact computations with right-quantum matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the words of a sequence class of type (p;r).
    Enumerate(EnumerateArgs),
    /// Apply the ordered-to-path transformation, or its inverse.
    Transform(TransformArgs),
    /// Run a verification battery modulo the right-quantum ideal.
    Verify(VerifyArgs),
    /// Evaluate the generalized MacMahon generating function.
    Genmm(GenmmArgs),
    /// Dixon-style binomial sums and their closed forms.
    Dixon(DixonArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// ordered, back-ordered, path or back-path
    #[arg(long)]
    pub class: SequenceClass,
    /// Starting-height counts, e.g. "2,1,1"
    #[arg(long)]
    pub p: String,
    /// Ending-height counts, e.g. "0,3,1"
    #[arg(long)]
    pub r: String,
    /// Priority permutation in one-line notation; identity by default
    #[arg(long)]
    pub pi: Option<Permutation>,
    /// Print only the number of words
    #[arg(long)]
    pub count: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Word such as "a[1,2]a[2,1]" or "a12a21"
    #[arg(long)]
    pub word: Word,
    #[arg(long)]
    pub sigma: Permutation,
    /// Priority order the input word is ordered for; identity by default
    #[arg(long)]
    pub pi: Option<Permutation>,
    /// Print every intermediate word with its rank
    #[arg(long)]
    pub steps: bool,
    /// Map a path sequence back to its ordered word
    #[arg(long, conflicts_with_all = ["steps", "pi"])]
    pub inverse: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// main1, matinv, jacobi, prop-jacobi1 or all
    pub suite: String,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Largest homogeneous degree (type length for main1)
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// right-quantum, cross-only or free; overrides the default of each check
    #[arg(long)]
    pub relations: Option<RelationSet>,
    /// One index tuple: "i,j" (matinv), "i,j,k,l" (prop-jacobi1), "I;J" (jacobi)
    #[arg(long)]
    pub indices: Option<String>,
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock time per check (output is then not reproducible)
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct GenmmArgs {
    /// JSON file {"m": .., "entries": [[..], ..]}
    #[arg(long)]
    pub matrix: PathBuf,
    /// Integer vector with zero sum, e.g. "1,-2,2,-1"
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    /// Cross-check the formula against brute force through this total degree
    #[arg(long)]
    pub series_degree: Option<u32>,
    /// Exponent vector of a coefficient to extract; may be repeated
    #[arg(long)]
    pub coeff: Vec<String>,
}

#[derive(Debug, Args)]
pub struct DixonArgs {
    #[arg(long)]
    pub n: u64,
    /// Shift k of S_k(n); without it, S(n) is printed
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
    fn checked(stdout: String, passed: bool) -> Self {
        Outcome { stdout, code: if passed { EXIT_OK } else { EXIT_FAILED } }
    }
}

fn parse_ints<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| Error::Parse(format!("bad {what} entry {t:?}"))))
        .collect()
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Genmm(a) => cmd_genmm(a),
        Command::Dixon(a) => cmd_dixon(a),
    }
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<Outcome> {
    let p: Vec<usize> = parse_ints(&a.p, "p")?;
    let r: Vec<usize> = parse_ints(&a.r, "r")?;
    let pi = a.pi.unwrap_or_else(|| Permutation::identity(p.len()));
    let q = SequenceClassQuery::new(p, r, pi, a.class);
    if a.count {
        let n = class_cardinality(&q)?;
        let out = if a.json { format!("{{\"count\":{n}}}\n") } else { format!("{n}\n") };
        return Ok(Outcome::ok(out));
    }
    let words = enumerate_class(&q)?;
    let out = if a.json {
        let v = serde_json::json!({
            "class": a.class.to_string(),
            "p": q.p,
            "r": q.r,
            "pi": q.pi.to_string(),
            "count": words.len(),
            "words": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        });
        format!("{v}\n")
    } else {
        words.iter().map(|w| format!("{w}\n")).collect()
    };
    Ok(Outcome::ok(out))
}

fn cmd_transform(a: TransformArgs) -> Result<Outcome> {
    let sigma = a.sigma;
    if a.inverse {
        let w = phi_inverse(&a.word, &sigma)?;
        let out = if a.json {
            format!("{}\n", serde_json::json!({ "input": a.word.to_string(), "ordered": w.to_string() }))
        } else {
            format!("{w}\n")
        };
        return Ok(Outcome::ok(out));
    }
    if let Some(pi) = a.pi.filter(|p| !p.is_identity()) {
        let w = phi_relative(&a.word, &pi, &sigma)?;
        let out = if a.json {
            format!("{}\n", serde_json::json!({ "input": a.word.to_string(), "path": w.to_string() }))
        } else {
            format!("{w}\n")
        };
        return Ok(Outcome::ok(out));
    }
    let image = phi(&a.word, &sigma)?;
    if !a.steps {
        let out = if a.json {
            format!("{}\n", serde_json::json!({ "input": a.word.to_string(), "path": image.to_string() }))
        } else {
            format!("{image}\n")
        };
        return Ok(Outcome::ok(out));
    }
    let id = Permutation::identity(sigma.dim());
    let mut trace = vec![(a.word.clone(), None)];
    let mut current = a.word.clone();
    while let Some((next, k)) = psi_step(&current, &sigma) {
        trace.push((next.clone(), Some(k + 1)));
        current = next;
    }
    debug_assert_eq!(current, image);
    let out = if a.json {
        let steps: Vec<_> = trace
            .iter()
            .map(|(w, k)| serde_json::json!({ "word": w.to_string(), "rank": rank(w, &id), "swapped": k }))
            .collect();
        format!("{}\n", serde_json::json!({ "input": a.word.to_string(), "path": image.to_string(), "steps": steps }))
    } else {
        trace
            .iter()
            .map(|(w, k)| match k {
                None => format!("rank {:>3}  {w}\n", rank(w, &id)),
                Some(k) => format!("rank {:>3}  {w}  (swap {k},{})\n", rank(w, &id), k + 1),
            })
            .collect()
    };
    Ok(Outcome::ok(out))
}

fn cmd_verify(a: VerifyArgs) -> Result<Outcome> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    if a.indices.is_some() && suites.len() != 1 {
        return Err(Error::Parse("--indices needs a single suite".into()));
    }
    let opts = SuiteOptions { m: a.m, degree: a.degree, relations: a.relations, indices: a.indices.clone() };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(run_suite(s, &opts)?);
    }
    let mut command = format!("verify {} --m {} --degree {}", a.suite, a.m, a.degree);
    if let Some(rs) = a.relations {
        command.push_str(&format!(" --relations {rs}"));
    }
    if let Some(ix) = &a.indices {
        command.push_str(&format!(" --indices {ix}"));
    }
    let mut report = RunReport::new(command, checks);
    if !a.timings {
        report = report.without_timings();
    }
    let out = if a.json {
        format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("serializable"))
    } else {
        report.to_text()
    };
    Ok(Outcome::checked(out, report.all_passed()))
}

fn cmd_genmm(a: GenmmArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&a.matrix)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", a.matrix.display())))?;
    let matrix = ScalarMatrix::from_json(&text)?;
    let d: Vec<i64> = parse_ints(&a.d, "d")?;
    let f = eval_f(&matrix, &d)?;
    let names = default_names(matrix.m());
    let mut coefficients = Vec::new();
    for c in &a.coeff {
        let e: Vec<u32> = parse_ints(c, "exponent")?;
        let value = f.coefficient(&e)?;
        coefficients.push(serde_json::json!({ "exponent": e, "value": value.to_string() }));
    }
    let mut passed = true;
    let mut cross = serde_json::Value::Null;
    let mut series = serde_json::Value::Null;
    if let Some(deg) = a.series_degree {
        let mismatches = cross_check(&matrix, &d, deg)?;
        passed = mismatches.is_empty();
        let expansion = f.series(&Truncation::TotalDegree(deg))?;
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        series = serde_json::Value::String(expansion.display_with(&refs));
        cross = serde_json::json!({
            "max_total_degree": deg,
            "status": if passed { "pass" } else { "fail" },
            "mismatches": mismatches.iter().map(|(e, x, y)| serde_json::json!({
                "exponent": e, "formula": x.to_string(), "brute_force": y.to_string()
            })).collect::<Vec<_>>(),
        });
    }
    let v = serde_json::json!({
        "formula": f.to_string(),
        "variables": names,
        "plan": f.to_json(),
        "coefficients": coefficients,
        "series": series,
        "cross_check": cross,
    });
    Ok(Outcome::checked(format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")), passed))
}

fn cmd_dixon(a: DixonArgs) -> Result<Outcome> {
    if a.n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let show = |x: &BigInt| x.to_string();
    let (out, ok) = match a.k {
        None => {
            let s = dixon_s(a.n);
            let out = if a.json {
                format!(
                    "{}\n",
                    serde_json::json!({ "n": a.n, "brute": show(&s.brute), "closed_form": show(&s.closed_form), "agree": s.agrees() })
                )
            } else {
                format!(
                    "S({}) = {}  closed form {}  {}\n",
                    a.n,
                    s.brute,
                    s.closed_form,
                    if s.agrees() { "agree" } else { "DIFFER" }
                )
            };
            (out, s.agrees())
        }
        Some(k) => {
            if 2 * k > a.n {
                return Err(Error::Precondition(format!("need 0 <= k <= n/2, got k = {k}, n = {}", a.n)));
            }
            let s = dixon_sk(a.n, k);
            let g3 = s.double_sum.as_ref().map(show);
            let out = if a.json {
                format!(
                    "{}\n",
                    serde_json::json!({ "n": a.n, "k": k, "brute": show(&s.brute), "factorial_ratio": show(&s.factorial_ratio), "double_sum": g3, "agree": s.agrees() })
                )
            } else {
                format!(
                    "S_{k}({}) = {}  factorial ratio {}  double sum {}  {}\n",
                    a.n,
                    s.brute,
                    s.factorial_ratio,
                    g3.unwrap_or_else(|| "n/a".into()),
                    if s.agrees() { "agree" } else { "DIFFER" }
                )
            };
            (out, s.agrees())
        }
    };
    Ok(Outcome::checked(out, ok))
}
