//! The generalized MacMahon master theorem.
//!
//! For a matrix `A`, a vector `d` with zero sum and commuting `x_1..x_m`,
//! `F_A(d) = sum over p = r + d of G(p;r) x^p`, where `G(p;r)` is the
//! coefficient of `x^r` in `(A x)^p`. For commutative numeric `A` this module
//! evaluates `F_A(d)` as a signed sum of products of minor ratios of
//! `det(I - XA)` and, independently, by brute-force expansion.

pub mod dixon;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{expand_counts, inversions, multiset_permutations, next_permutation};
use crate::comm::{CommPoly, RationalFn, Truncation};
use crate::error::{Error, Result};
use crate::linalg::NcMatrix;
use crate::series::{NcSeries, Rational};

pub use dixon::{dixon_s, dixon_sk, DixonS, DixonSk};

/// The multisets attached to `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaPlan {
    pub d: Vec<i64>,
    /// Each `i` with `d_i < 0`, repeated `-d_i` times, sorted.
    pub m_multiset: Vec<usize>,
    /// Each `i` with `d_i > 0`, repeated `d_i` times, nondecreasing.
    pub n_tuple: Vec<usize>,
    pub delta: usize,
    pub m_sum: usize,
    pub n_sum: usize,
}

/// One step `k` of a permutation plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    /// `{pi_1, ..., pi_k}` as a sorted set.
    pub i_set: Vec<usize>,
    /// `(I^k minus {pi_k}) union {N_k}`, sorted.
    pub j_set: Vec<usize>,
    /// Size of `I^{k-1}` intersected with the integers strictly between `pi_k` and `N_k`.
    pub eps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationPlan {
    pub pi: Vec<usize>,
    pub steps: Vec<PlanStep>,
}

fn sorted_set(items: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = items.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn plan(d: &[i64]) -> Result<DeltaPlan> {
    let sum: i64 = d.iter().sum();
    if sum != 0 {
        return Err(Error::NonzeroDeltaSum(sum));
    }
    let mut m_multiset = Vec::new();
    let mut n_tuple = Vec::new();
    for (k, &x) in d.iter().enumerate() {
        let i = k + 1;
        if x < 0 {
            m_multiset.extend(std::iter::repeat_n(i, (-x) as usize));
        } else {
            n_tuple.extend(std::iter::repeat_n(i, x as usize));
        }
    }
    Ok(DeltaPlan {
        d: d.to_vec(),
        delta: m_multiset.len(),
        m_sum: m_multiset.iter().sum(),
        n_sum: n_tuple.iter().sum(),
        m_multiset,
        n_tuple,
    })
}

impl DeltaPlan {
    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// The distinct permutations of the multiset, in lexicographic order.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        multiset_permutations(&self.m_multiset)
    }

    pub fn permutation_plan(&self, pi: &[usize]) -> PermutationPlan {
        let mut steps = Vec::with_capacity(pi.len());
        for k in 0..pi.len() {
            let (p, n) = (pi[k], self.n_tuple[k]);
            let previous = sorted_set(pi[..k].iter().copied());
            let i_set = sorted_set(pi[..=k].iter().copied());
            let j_set = sorted_set(i_set.iter().copied().filter(|&x| x != p).chain([n]));
            let (lo, hi) = (p.min(n), p.max(n));
            let eps = previous.iter().filter(|&&x| lo < x && x < hi).count();
            steps.push(PlanStep { i_set, j_set, eps });
        }
        PermutationPlan { pi: pi.to_vec(), steps }
    }

    pub fn permutation_plans(&self) -> Vec<PermutationPlan> {
        self.permutations().iter().map(|pi| self.permutation_plan(pi)).collect()
    }

    /// `(-1)^{M + N}`.
    pub fn sign(&self) -> i64 {
        if (self.m_sum + self.n_sum).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// A commutative matrix with rational entries. JSON form `{"m": 2, "entries": [[1, 2], [3, 4]]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    m: usize,
    entries: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct ScalarMatrixJson {
    m: usize,
    entries: Vec<Vec<i64>>,
}

impl ScalarMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let m = entries.len();
        for row in &entries {
            if row.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: row.len() });
            }
        }
        Ok(ScalarMatrix { m, entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ScalarMatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
        if raw.entries.len() != raw.m {
            return Err(Error::DimensionMismatch { expected: raw.m, found: raw.entries.len() });
        }
        Self::from_integers(&raw.entries)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i - 1][j - 1]
    }

    /// `I - XA`, entry `(i, j)` equal to `delta_ij - a_ij x_i`.
    pub fn identity_minus_xa(&self) -> PolyMatrix {
        let m = self.m;
        let mut entries = Vec::with_capacity(m);
        for i in 1..=m {
            let row = (1..=m)
                .map(|j| {
                    let mut p = CommPoly::var(m, i).scale(&-self.get(i, j).clone());
                    if i == j {
                        p = &p + &CommPoly::one(m);
                    }
                    p
                })
                .collect();
            entries.push(row);
        }
        PolyMatrix { m, entries }
    }
}

/// Square matrix of commutative polynomials, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    m: usize,
    entries: Vec<Vec<CommPoly>>,
}

impl PolyMatrix {
    pub fn get(&self, i: usize, j: usize) -> &CommPoly {
        &self.entries[i - 1][j - 1]
    }

    /// Determinant of the submatrix on the given sorted rows and columns.
    fn sub_determinant(&self, rows: &[usize], cols: &[usize]) -> CommPoly {
        let nvars = self.entries.first().map(|r| r[0].nvars()).unwrap_or(0);
        let mut total = CommPoly::zero(nvars);
        let mut perm: Vec<usize> = (0..rows.len()).collect();
        loop {
            let mut term = CommPoly::one(nvars);
            for (c, &r) in perm.iter().enumerate() {
                term = &term * self.get(rows[r], cols[c]);
                if term.is_zero() {
                    break;
                }
            }
            total = if inversions(&perm).is_multiple_of(2) { &total + &term } else { &total - &term };
            if !next_permutation(&mut perm) {
                break;
            }
        }
        total
    }

    pub fn determinant(&self) -> CommPoly {
        let all: Vec<usize> = (1..=self.m).collect();
        self.sub_determinant(&all, &all)
    }

    /// Determinant without the listed rows and columns.
    pub fn minor(&self, rows_removed: &[usize], cols_removed: &[usize]) -> Result<CommPoly> {
        let rows: Vec<usize> = (1..=self.m).filter(|x| !rows_removed.contains(x)).collect();
        let cols: Vec<usize> = (1..=self.m).filter(|x| !cols_removed.contains(x)).collect();
        if rows.len() != cols.len() {
            return Err(Error::MinorShape { rows: rows_removed.len(), cols: cols_removed.len() });
        }
        Ok(self.sub_determinant(&rows, &cols))
    }
}

/// `det(I-XA)^{I,J} / det(I-XA)^{I,I}` with its sign `(-1)^eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorRatio {
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
    pub eps: usize,
    pub numerator: CommPoly,
    pub denominator: CommPoly,
}

/// Product over `k = 1..delta` of minor ratios for one `pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfTerm {
    pub pi: Vec<usize>,
    pub factors: Vec<MinorRatio>,
}

impl GfTerm {
    fn sign(&self) -> i64 {
        if self.factors.iter().map(|f| f.eps).sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// `F_A(d) = (-1)^{M+N} / det(I-XA) * sum over pi of prod over k of
/// (-1)^eps det(I-XA)^{I,J} / det(I-XA)^{I,I}`, kept unexpanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingFunction {
    pub plan: DeltaPlan,
    pub det: CommPoly,
    pub terms: Vec<GfTerm>,
}

impl GeneratingFunction {
    pub fn nvars(&self) -> usize {
        self.det.nvars()
    }

    /// A single quotient. The numerator is a large expanded product.
    pub fn to_rational_fn(&self) -> RationalFn {
        let n = self.nvars();
        let mut sum = RationalFn::from_poly(CommPoly::zero(n));
        for term in &self.terms {
            let mut f = RationalFn::from_poly(CommPoly::constant(n, Rational::from_integer(term.sign().into())));
            for r in &term.factors {
                f = f.mul(&RationalFn::new(r.numerator.clone(), r.denominator.clone()));
            }
            sum = sum.add(&f);
        }
        let pre =
            RationalFn::new(CommPoly::constant(n, Rational::from_integer(self.plan.sign().into())), self.det.clone());
        pre.mul(&sum)
    }

    /// Power-series expansion at the origin, truncated by `t`.
    pub fn series(&self, t: &Truncation) -> Result<CommPoly> {
        let n = self.nvars();
        let inv_det = self.det.series_inverse(t)?;
        let mut sum = CommPoly::zero(n);
        for term in &self.terms {
            let mut f = CommPoly::constant(n, Rational::from_integer(term.sign().into()));
            for r in &term.factors {
                f = f.mul_truncated(&r.numerator, t);
                f = f.mul_truncated(&r.denominator.series_inverse(t)?, t);
            }
            sum = &sum + &f;
        }
        Ok(inv_det.mul_truncated(&sum, t).scale(&Rational::from_integer(self.plan.sign().into())))
    }

    /// Coefficient of `x^e`.
    pub fn coefficient(&self, e: &[u32]) -> Result<Rational> {
        if e.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: e.len() });
        }
        Ok(self.series(&Truncation::Divides(e.to_vec()))?.coefficient(e))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let set = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<String>();
        serde_json::json!({
            "d": self.plan.d,
            "M": self.plan.m_multiset,
            "N": self.plan.n_tuple,
            "delta": self.plan.delta,
            "M_sum": self.plan.m_sum,
            "N_sum": self.plan.n_sum,
            "sign": self.plan.sign(),
            "det": self.det.to_string(),
            "terms": self.terms.iter().map(|t| serde_json::json!({
                "pi": t.pi,
                "factors": t.factors.iter().map(|f| serde_json::json!({
                    "I": f.i_set,
                    "J": f.j_set,
                    "eps": f.eps,
                    "numerator": format!("D_{{{},{}}} = {}", set(&f.i_set), set(&f.j_set), f.numerator),
                    "denominator": format!("D_{{{},{}}} = {}", set(&f.i_set), set(&f.i_set), f.denominator),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for GeneratingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<String>();
        let sign = if self.plan.sign() < 0 { "-" } else { "" };
        write!(f, "{sign}1/D * (")?;
        if self.terms.iter().all(|t| t.factors.is_empty()) {
            write!(f, "1")?;
        }
        for (k, t) in self.terms.iter().enumerate() {
            if t.factors.is_empty() {
                continue;
            }
            if k > 0 {
                write!(f, " {} ", if t.sign() < 0 { "-" } else { "+" })?;
            } else if t.sign() < 0 {
                write!(f, "-")?;
            }
            let parts: Vec<String> = t
                .factors
                .iter()
                .map(|r| format!("D_{{{},{}}}/D_{{{},{}}}", set(&r.i_set), set(&r.j_set), set(&r.i_set), set(&r.i_set)))
                .collect();
            write!(f, "{}", parts.join(" * "))?;
        }
        write!(f, ")")
    }
}

/// Evaluates `F_A(d)` by the minor-ratio formula.
pub fn eval_f(a: &ScalarMatrix, d: &[i64]) -> Result<GeneratingFunction> {
    if d.len() != a.m() {
        return Err(Error::DimensionMismatch { expected: a.m(), found: d.len() });
    }
    let plan = plan(d)?;
    let b = a.identity_minus_xa();
    let det = b.determinant();
    let mut terms = Vec::new();
    for pp in plan.permutation_plans() {
        let mut factors = Vec::with_capacity(pp.steps.len());
        for st in &pp.steps {
            factors.push(MinorRatio {
                i_set: st.i_set.clone(),
                j_set: st.j_set.clone(),
                eps: st.eps,
                numerator: b.minor(&st.i_set, &st.j_set)?,
                denominator: b.minor(&st.i_set, &st.i_set)?,
            });
        }
        terms.push(GfTerm { pi: pp.pi, factors });
    }
    Ok(GeneratingFunction { plan, det, terms })
}

fn check_type(p: &[usize], r: &[usize]) -> Result<()> {
    if p.len() != r.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), found: r.len() });
    }
    let (sp, sr): (usize, usize) = (p.iter().sum(), r.iter().sum());
    if sp != sr {
        return Err(Error::UnbalancedType { p_sum: sp, r_sum: sr });
    }
    Ok(())
}

/// `[x^r] prod over i of (a_i1 x_1 + ... + a_im x_m)^{p_i}`, factors in row
/// order, for a matrix of noncommuting series.
pub fn coefficient_g_nc(a: &NcMatrix, p: &[usize], r: &[usize]) -> Result<NcSeries> {
    check_type(p, r)?;
    if p.len() != a.m() {
        return Err(Error::DimensionMismatch { expected: a.m(), found: p.len() });
    }
    let starts = expand_counts(p);
    let dim = a.get(1, 1).dim();
    let mut total = NcSeries::zero(dim, a.max_degree());
    for ends in multiset_permutations(&expand_counts(r)) {
        let mut term = NcSeries::one(dim, a.max_degree());
        for (&i, &j) in starts.iter().zip(&ends) {
            term = &term * a.get(i, j);
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Scalar version of [`coefficient_g_nc`], by polynomial expansion.
pub fn coefficient_g(a: &ScalarMatrix, p: &[usize], r: &[usize]) -> Result<Rational> {
    check_type(p, r)?;
    if p.len() != a.m() {
        return Err(Error::DimensionMismatch { expected: a.m(), found: p.len() });
    }
    let bound = Truncation::Divides(r.iter().map(|&x| x as u32).collect());
    let e: Vec<u32> = r.iter().map(|&x| x as u32).collect();
    Ok(row_power_product(a, p, &bound).coefficient(&e))
}

/// `prod over i of (sum_j a_ij x_j)^{p_i}`, truncated.
fn row_power_product(a: &ScalarMatrix, p: &[usize], t: &Truncation) -> CommPoly {
    let m = a.m();
    let mut prod = CommPoly::one(m);
    for (k, &pk) in p.iter().enumerate() {
        let i = k + 1;
        let mut linear = CommPoly::zero(m);
        for j in 1..=m {
            linear = &linear + &CommPoly::var(m, j).scale(a.get(i, j));
        }
        for _ in 0..pk {
            prod = prod.mul_truncated(&linear, t);
        }
    }
    prod
}

/// `sum over p = r + d, |p| <= max_total_degree of G(p;r) x^p`, by brute force.
pub fn eval_f_series(a: &ScalarMatrix, d: &[i64], max_total_degree: u32) -> Result<CommPoly> {
    let m = a.m();
    if d.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: d.len() });
    }
    let sum: i64 = d.iter().sum();
    if sum != 0 {
        return Err(Error::NonzeroDeltaSum(sum));
    }
    let mut out = CommPoly::zero(m);
    for n in 0..=max_total_degree as usize {
        for p in crate::word::compositions(n, m) {
            let r: Vec<i64> = p.iter().zip(d).map(|(&x, &y)| x as i64 - y).collect();
            if r.iter().any(|&x| x < 0) {
                continue;
            }
            let bound = Truncation::Divides(r.iter().map(|&x| x as u32).collect());
            let e: Vec<u32> = r.iter().map(|&x| x as u32).collect();
            let g = row_power_product(a, &p, &bound).coefficient(&e);
            if !g.is_zero() {
                out.add_term(p.iter().map(|&x| x as u32).collect(), g);
            }
        }
    }
    Ok(out)
}

/// Coefficients where the formula and the brute-force expansion differ,
/// through the given total degree.
pub fn cross_check(a: &ScalarMatrix, d: &[i64], max_total_degree: u32) -> Result<Vec<(Vec<u32>, Rational, Rational)>> {
    let f = eval_f(a, d)?;
    let formula = f.series(&Truncation::TotalDegree(max_total_degree))?;
    let brute = eval_f_series(a, d, max_total_degree)?;
    let diff = &formula - &brute;
    Ok(diff.terms().map(|(e, _)| (e.clone(), formula.coefficient(e), brute.coefficient(e))).collect())
}

/// `1/det(I - XA)`, the MacMahon master theorem side of the `d = 0` case.
pub fn macmahon(a: &ScalarMatrix) -> RationalFn {
    let det = a.identity_minus_xa().determinant();
    RationalFn::new(CommPoly::one(det.nvars()), det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comm::default_names;
    use crate::linalg::generic_matrix;
    use crate::sequences::{signed_class_sum, SequenceClass, SequenceClassQuery};
    use crate::word::Permutation;

    fn poly(s: &str) -> CommPoly {
        let names = default_names(4);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        CommPoly::parse(s, &refs).unwrap()
    }

    fn example() -> ScalarMatrix {
        ScalarMatrix::from_integers(&[vec![2, 1, 4, 2], vec![3, 2, 4, 3], vec![3, 4, 1, 1], vec![1, 3, 5, 5]]).unwrap()
    }

    #[test]
    fn plans() {
        let p = plan(&[1, -2, 2, -1]).unwrap();
        assert_eq!(
            (p.m_multiset.clone(), p.n_tuple.clone(), p.delta, p.m_sum, p.n_sum),
            (vec![2, 2, 4], vec![1, 3, 3], 3, 8, 7)
        );
        assert_eq!(p.permutations(), vec![vec![2, 2, 4], vec![2, 4, 2], vec![4, 2, 2]]);
        let z = plan(&[0, 0]).unwrap();
        assert_eq!(z.delta, 0);
        assert_eq!(z.permutation_plans(), vec![PermutationPlan { pi: vec![], steps: vec![] }]);
        let q = plan(&[-1, 1]).unwrap();
        assert_eq!((q.m_multiset, q.n_tuple), (vec![1], vec![2]));
        assert!(matches!(plan(&[1, 0]), Err(Error::NonzeroDeltaSum(1))));
    }

    #[test]
    fn eps_counts_previous_heights_strictly_between() {
        let p = plan(&[-1, 0, -1, 0, 2]).unwrap();
        let pp = p.permutation_plan(&[3, 1]);
        // step 2: pi_2 = 1, N_2 = 5, previous {3} lies in (1, 5)
        assert_eq!(pp.steps[1].eps, 1);
        assert_eq!(pp.steps[0].eps, 0);
    }

    #[test]
    fn worked_example_minors() {
        let b = example().identity_minus_xa();
        assert_eq!(
            b.determinant(),
            poly("1 - 2x - 2y - z - 5w + xy - 10xz + 8xw - 14yz + yw - 5xyz - 4xyw + 28xzw + 17yzw + 46xyzw")
        );
        assert_eq!(b.minor(&[2], &[1]).unwrap(), poly("-x - 15xz - xw + 34xzw"));
        assert_eq!(b.minor(&[2, 4], &[2, 4]).unwrap(), poly("1 - 2x - z - 10xz"));
        assert_eq!(b.minor(&[2, 4], &[3, 4]).unwrap(), poly("-4z + 5xz"));
    }

    #[test]
    fn worked_example_coefficients() {
        let f = eval_f(&example(), &[1, -2, 2, -1]).unwrap();
        let c = |e: [u32; 4]| f.coefficient(&e).unwrap();
        assert_eq!(c([1, 0, 2, 0]), Rational::from_integer(40.into()));
        assert_eq!(c([2, 0, 2, 0]), Rational::from_integer(262.into()));
        assert_eq!(c([0, 0, 0, 0]), Rational::zero());
        assert_eq!(coefficient_g(&example(), &[1, 0, 2, 0], &[0, 2, 0, 1]).unwrap(), Rational::from_integer(40.into()));
    }

    #[test]
    fn d_zero_is_macmahon() {
        let a = ScalarMatrix::from_integers(&[vec![1, 2], vec![-1, 3]]).unwrap();
        let f = eval_f(&a, &[0, 0]).unwrap();
        assert!(f.to_rational_fn().equivalent(&macmahon(&a)));
        assert!(cross_check(&a, &[0, 0], 5).unwrap().is_empty());
        let one = ScalarMatrix::from_integers(&[vec![3]]).unwrap();
        let s = eval_f(&one, &[0]).unwrap().series(&Truncation::TotalDegree(3)).unwrap();
        assert_eq!(s, CommPoly::parse("1 + 3x + 9x^2 + 27x^3", &["x"]).unwrap());
    }

    #[test]
    fn generic_g_is_the_ordered_sum() {
        let a = generic_matrix(3, 4);
        for (p, r) in [(vec![1, 1, 0], vec![0, 1, 1]), (vec![2, 0, 1], vec![1, 1, 1]), (vec![0, 0, 0], vec![0, 0, 0])] {
            let g = coefficient_g_nc(&a, &p, &r).unwrap();
            let q = SequenceClassQuery::new(p.clone(), r.clone(), Permutation::identity(3), SequenceClass::Ordered);
            assert_eq!(g, signed_class_sum(&q).unwrap().with_max_degree(4));
        }
        assert!(coefficient_g_nc(&a, &[1, 0, 0], &[0, 0, 0]).is_err());
    }
}
