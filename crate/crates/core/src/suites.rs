//! Verification batteries over many instances, with an aggregated report.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{verify_main1, DegreeResidue, Main1Part, RelationSet, Verification};
use crate::linalg::{subsets_of_size, LinalgInstance};
use crate::word::{compositions, Permutation, TypePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Main1,
    Matinv,
    Jacobi,
    PropJacobi1,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Main1, Suite::Matinv, Suite::Jacobi, Suite::PropJacobi1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Main1 => "main1",
            Suite::Matinv => "matinv",
            Suite::Jacobi => "jacobi",
            Suite::PropJacobi1 => "prop-jacobi1",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One instance of the main identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Main1Instance {
    pub part: Main1Part,
    pub type_pair: TypePair,
    pub pi: Permutation,
    pub sigma: Permutation,
}

impl Main1Instance {
    pub fn verify(&self, relations: Option<RelationSet>) -> Result<Verification> {
        verify_main1(&self.type_pair, &self.pi, &self.sigma, self.part, relations)
    }

    pub fn label(&self) -> String {
        let part = match self.part {
            Main1Part::Part1 => "part1",
            Main1Part::Part2 => "part2",
        };
        format!("main1 {part} m={} {} pi={} sigma={}", self.type_pair.dim(), self.type_pair, self.pi, self.sigma)
    }
}

/// `id`, the cyclic shift `23..m1` and the reversal `m..21`, without repeats.
pub fn sample_sigmas(m: usize) -> Vec<Permutation> {
    let mut shift: Vec<usize> = (2..=m).collect();
    shift.push(1);
    let mut out =
        vec![Permutation::identity(m), Permutation::new(shift).expect("cyclic shift"), Permutation::longest(m)];
    out.dedup();
    out.sort_by(|a, b| a.images().cmp(b.images()));
    out.dedup();
    out
}

/// Every type `(p;r)` in dimension `m` with `1 <= |p| <= max_len`, every
/// `pi`, and the given `sigma`s. Part two keeps only `p` with entries `<= 1`.
pub fn main1_instances(m: usize, max_len: usize, part: Main1Part, sigmas: &[Permutation]) -> Vec<Main1Instance> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        for p in compositions(n, m) {
            if part == Main1Part::Part2 && p.iter().any(|&x| x > 1) {
                continue;
            }
            for r in compositions(n, m) {
                let t = TypePair::new(p.clone(), r).expect("balanced sums");
                for pi in Permutation::all(m) {
                    for sigma in sigmas {
                        out.push(Main1Instance { part, type_pair: t.clone(), pi: pi.clone(), sigma: sigma.clone() });
                    }
                }
            }
        }
    }
    out
}

pub fn matinv_instances(m: usize) -> Vec<LinalgInstance> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            out.push(LinalgInstance::MatrixInverse { m, i, j });
        }
    }
    out
}

pub fn prop_jacobi1_instances(m: usize) -> Vec<LinalgInstance> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            for k in 1..=m {
                for l in 1..=m {
                    out.push(LinalgInstance::PropJacobi1 { m, i, j, k, l });
                }
            }
        }
    }
    out
}

/// All `|I| = |J| <= max_size`, plus `I = J = [m]`.
pub fn jacobi_instances(m: usize, max_size: usize) -> Vec<LinalgInstance> {
    let mut out = Vec::new();
    for k in 1..=max_size.min(m) {
        for rows in subsets_of_size(m, k) {
            for cols in subsets_of_size(m, k) {
                out.push(LinalgInstance::Jacobi { m, rows: rows.clone(), cols });
            }
        }
    }
    let full: Vec<usize> = (1..=m).collect();
    let full_case = LinalgInstance::Jacobi { m, rows: full.clone(), cols: full };
    if !out.contains(&full_case) {
        out.push(full_case);
    }
    out
}

/// Outcome of a single check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub instance: String,
    pub relations: RelationSet,
    pub passed: bool,
    pub residues: Vec<DegreeResidue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
}

fn timed(f: impl FnOnce() -> Result<Verification>) -> Result<(Verification, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64() * 1e3))
}

fn check(suite: Suite, instance: String, v: Verification, ms: f64) -> CheckResult {
    CheckResult { suite, instance, relations: v.relations, passed: v.holds(), residues: v.residues, time_ms: Some(ms) }
}

pub fn run_main1(instances: &[Main1Instance], relations: Option<RelationSet>) -> Result<Vec<CheckResult>> {
    instances
        .par_iter()
        .map(|inst| {
            let (v, ms) = timed(|| inst.verify(relations))?;
            Ok(check(Suite::Main1, inst.label(), v, ms))
        })
        .collect()
}

pub fn run_linalg(instances: &[LinalgInstance], max_degree: usize, relations: RelationSet) -> Result<Vec<CheckResult>> {
    instances
        .par_iter()
        .map(|inst| {
            let suite = match inst {
                LinalgInstance::MatrixInverse { .. } => Suite::Matinv,
                LinalgInstance::PropJacobi1 { .. } => Suite::PropJacobi1,
                LinalgInstance::Jacobi { .. } => Suite::Jacobi,
            };
            let (v, ms) = timed(|| inst.verify(max_degree, relations))?;
            Ok(check(suite, format!("{inst} degree<={max_degree}"), v, ms))
        })
        .collect()
}

/// Parameters of a battery run.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub m: usize,
    pub degree: usize,
    /// Overrides the relation set of every check (negative controls).
    pub relations: Option<RelationSet>,
    /// Restricts the battery to one index tuple: `i,j` for matinv,
    /// `i,j,k,l` for prop-jacobi1, `I;J` for jacobi.
    pub indices: Option<String>,
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
        .collect()
}

fn check_indices(m: usize, v: &[usize]) -> Result<()> {
    match v.iter().find(|&&x| x == 0 || x > m) {
        Some(&x) => Err(Error::IndexOutOfRange { index: x, dim: m }),
        None => Ok(()),
    }
}

fn selected_instances(suite: Suite, opts: &SuiteOptions) -> Result<Vec<LinalgInstance>> {
    let m = opts.m;
    let Some(text) = &opts.indices else {
        return Ok(match suite {
            Suite::Matinv => matinv_instances(m),
            Suite::PropJacobi1 => prop_jacobi1_instances(m),
            Suite::Jacobi => jacobi_instances(m, 2),
            Suite::Main1 => Vec::new(),
        });
    };
    let inst = match suite {
        Suite::Matinv => {
            let v = parse_list(text)?;
            check_indices(m, &v)?;
            let [i, j] = v[..] else { return Err(Error::Parse(format!("matinv expects i,j, got {text:?}"))) };
            LinalgInstance::MatrixInverse { m, i, j }
        }
        Suite::PropJacobi1 => {
            let v = parse_list(text)?;
            check_indices(m, &v)?;
            let [i, j, k, l] = v[..] else {
                return Err(Error::Parse(format!("prop-jacobi1 expects i,j,k,l, got {text:?}")));
            };
            LinalgInstance::PropJacobi1 { m, i, j, k, l }
        }
        Suite::Jacobi => {
            let (a, b) =
                text.split_once(';').ok_or_else(|| Error::Parse(format!("jacobi expects I;J, got {text:?}")))?;
            let (rows, cols) = (parse_list(a)?, parse_list(b)?);
            check_indices(m, &rows)?;
            check_indices(m, &cols)?;
            if rows.len() != cols.len() {
                return Err(Error::MinorShape { rows: rows.len(), cols: cols.len() });
            }
            LinalgInstance::Jacobi { m, rows, cols }
        }
        Suite::Main1 => return Err(Error::Parse("main1 does not take --indices".into())),
    };
    Ok(vec![inst])
}

/// Runs one battery. `main1` covers both parts over types of length up to
/// `degree` (part two up to `min(degree, 3)`), every `pi` and the sample `sigma`s.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    if opts.m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    match suite {
        Suite::Main1 => {
            let sigmas = sample_sigmas(opts.m);
            let mut inst = main1_instances(opts.m, opts.degree, Main1Part::Part1, &sigmas);
            inst.extend(main1_instances(opts.m, opts.degree.min(3), Main1Part::Part2, &sigmas));
            run_main1(&inst, opts.relations)
        }
        _ => run_linalg(
            &selected_instances(suite, opts)?,
            opts.degree,
            opts.relations.unwrap_or(RelationSet::RightQuantum),
        ),
    }
}

/// Aggregated outcome of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, checks: Vec<CheckResult>) -> Self {
        RunReport { command: command.into(), checks }
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Drops wall-clock times so that output is reproducible byte for byte.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.time_ms = None;
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        for c in &self.checks {
            let degrees: Vec<String> = c
                .residues
                .iter()
                .map(|r| format!("{}:{}{}", r.degree, r.terms, if r.in_ideal { "" } else { "!" }))
                .collect();
            let _ = write!(
                out,
                "{} {} [{}] residue_terms={}",
                if c.passed { "PASS" } else { "FAIL" },
                c.instance,
                c.relations,
                degrees.join(",")
            );
            if let Some(ms) = c.time_ms {
                let _ = write!(out, " time_ms={ms:.3}");
            }
            out.push('\n');
        }
        let _ =
            writeln!(out, "summary: {} checks, {} passed, {} failed", self.checks.len(), self.passed(), self.failed());
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "checks": self.checks,
            "total": self.checks.len(),
            "passed": self.passed(),
            "failed": self.failed(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_samples() {
        let names: Vec<String> = sample_sigmas(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["123", "231", "321"]);
        assert_eq!(sample_sigmas(1).len(), 1);
        assert_eq!(sample_sigmas(2).len(), 2);
    }

    #[test]
    fn instance_counts() {
        assert_eq!(matinv_instances(3).len(), 9);
        assert_eq!(prop_jacobi1_instances(2).len(), 16);
        assert_eq!(jacobi_instances(3, 2).len(), 9 + 9 + 1);
        assert_eq!(jacobi_instances(2, 2).len(), 4 + 1);
        // types of length 1 and 2 in dimension 2: 2*2 + 3*3
        assert_eq!(main1_instances(2, 2, Main1Part::Part1, &[Permutation::identity(2)]).len(), 2 * 13);
    }

    #[test]
    fn small_battery_and_control() {
        let opts = SuiteOptions { m: 2, degree: 2, relations: None, indices: None };
        let report = RunReport::new("verify matinv", run_suite(Suite::Matinv, &opts).unwrap());
        assert!(report.all_passed());
        let opts = SuiteOptions { relations: Some(RelationSet::Free), ..opts };
        let report = RunReport::new("verify matinv", run_suite(Suite::Matinv, &opts).unwrap());
        assert!(!report.all_passed());
        assert!(report.clone().without_timings().to_text().contains("FAIL matinv m=2 i=1 j=2"));
    }

    #[test]
    fn index_selection() {
        let opts = SuiteOptions { m: 3, degree: 3, relations: None, indices: Some("1,2;1,3".into()) };
        let r = run_suite(Suite::Jacobi, &opts).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].passed);
        let bad = SuiteOptions { indices: Some("1,4".into()), ..opts };
        assert!(run_suite(Suite::Matinv, &bad).is_err());
    }
}
