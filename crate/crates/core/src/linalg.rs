//! Matrices over the noncommutative series ring: determinants with the
//! column-ordered product, minors, the Neumann inverse `1/(I-A)` and the
//! verifiers for the matrix inverse formula and the Jacobi ratio theorem.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{cycle_count, inversions, next_permutation};
use crate::error::{Error, Result};
use crate::ideal::{verify_residue, RelationSet, Verification};
use crate::series::{NcSeries, Rational};
use crate::word::{Step, Word};

/// Square matrix of series sharing one dimension and truncation degree.
/// Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcMatrix {
    m: usize,
    entries: Vec<NcSeries>,
}

impl NcMatrix {
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> NcSeries) -> Self {
        let mut entries = Vec::with_capacity(m * m);
        for i in 1..=m {
            for j in 1..=m {
                entries.push(f(i, j));
            }
        }
        NcMatrix { m, entries }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &NcSeries {
        &self.entries[(i - 1) * self.m + (j - 1)]
    }

    pub fn max_degree(&self) -> usize {
        self.entries.first().map(NcSeries::max_degree).unwrap_or(0)
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> NcMatrix {
        let (m, n) = (self.m, self.max_degree());
        let dim = self.entries.first().map(NcSeries::dim).unwrap_or(m);
        NcMatrix::from_fn(m, |i, j| {
            let delta = if i == j { NcSeries::one(dim, n) } else { NcSeries::zero(dim, n) };
            &delta - self.get(i, j)
        })
    }

    /// Submatrix on the given rows and columns, kept in increasing order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<SubMatrix<'_>> {
        if rows.len() != cols.len() {
            return Err(Error::MinorShape { rows: rows.len(), cols: cols.len() });
        }
        let check = |v: &[usize]| -> Result<Vec<usize>> {
            let mut v = v.to_vec();
            v.sort_unstable();
            v.dedup();
            for &x in &v {
                if x == 0 || x > self.m {
                    return Err(Error::IndexOutOfRange { index: x, dim: self.m });
                }
            }
            Ok(v)
        };
        let (rows, cols) = (check(rows)?, check(cols)?);
        if rows.len() != cols.len() {
            return Err(Error::MinorShape { rows: rows.len(), cols: cols.len() });
        }
        Ok(SubMatrix { matrix: self, rows, cols })
    }

    fn one(&self) -> NcSeries {
        let dim = self.entries.first().map(NcSeries::dim).unwrap_or(self.m);
        NcSeries::one(dim, self.max_degree())
    }
}

impl fmt::Display for NcMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.m {
            let row: Vec<String> = (1..=self.m).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A view of selected rows and columns.
#[derive(Debug, Clone)]
pub struct SubMatrix<'a> {
    matrix: &'a NcMatrix,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SubMatrix<'_> {
    /// `sum over bijections pi of (-1)^{inv pi} b[pi(c1), c1] b[pi(c2), c2] ...`,
    /// factors in increasing column order.
    pub fn determinant(&self) -> NcSeries {
        let k = self.rows.len();
        let one = self.matrix.one();
        let mut total = NcSeries::zero(one.dim(), one.max_degree());
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let mut term = one.clone();
            for (c, &r) in perm.iter().enumerate() {
                term = &term * self.matrix.get(self.rows[r], self.cols[c]);
                if term.is_zero() {
                    break;
                }
            }
            if inversions(&perm) % 2 == 1 {
                term = -&term;
            }
            total = &total + &term;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        total
    }
}

/// The matrix with the single letter `a[i,j]` at position `(i, j)`.
pub fn generic_matrix(m: usize, max_degree: usize) -> NcMatrix {
    NcMatrix::from_fn(m, |i, j| NcSeries::letter(m, max_degree, i, j))
}

/// `I - A` for the generic matrix `A`.
pub fn identity_minus_generic(m: usize, max_degree: usize) -> NcMatrix {
    generic_matrix(m, max_degree).identity_minus()
}

pub fn determinant(b: &NcMatrix) -> NcSeries {
    let all: Vec<usize> = (1..=b.m()).collect();
    b.submatrix(&all, &all).expect("full matrix").determinant()
}

/// Determinant of `b` without the listed rows and columns.
pub fn minor(b: &NcMatrix, rows_removed: &[usize], cols_removed: &[usize]) -> Result<NcSeries> {
    if rows_removed.len() != cols_removed.len() {
        return Err(Error::MinorShape { rows: rows_removed.len(), cols: cols_removed.len() });
    }
    for &x in rows_removed.iter().chain(cols_removed) {
        if x == 0 || x > b.m() {
            return Err(Error::IndexOutOfRange { index: x, dim: b.m() });
        }
    }
    let keep = |removed: &[usize]| (1..=b.m()).filter(|x| !removed.contains(x)).collect::<Vec<_>>();
    Ok(b.submatrix(&keep(rows_removed), &keep(cols_removed))?.determinant())
}

/// `sum over J of (-1)^{|J|} det A_J` for the generic `A`, in the free algebra.
pub fn det_subset_expansion(m: usize) -> NcSeries {
    let a = generic_matrix(m, m);
    let mut total = NcSeries::zero(m, m);
    for mask in 0u32..(1 << m) {
        let subset: Vec<usize> = (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let d = a.submatrix(&subset, &subset).expect("square").determinant();
        total = if subset.len().is_multiple_of(2) { &total + &d } else { &total - &d };
    }
    total
}

/// The same sum written over permutations of subsets:
/// `a[pi(i1),i1] ... a[pi(ik),ik]` weighted by `(-1)^{cyc pi}`.
pub fn det_cycle_expansion(m: usize) -> NcSeries {
    let mut total = NcSeries::zero(m, m);
    for mask in 0u32..(1 << m) {
        let subset: Vec<usize> = (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let mut perm: Vec<usize> = (0..subset.len()).collect();
        loop {
            let word = Word(perm.iter().enumerate().map(|(c, &r)| Step::new(subset[r], subset[c])).collect());
            let sign = if cycle_count(&perm).is_multiple_of(2) { 1 } else { -1 };
            total.add_term(word, Rational::from_integer(sign.into()));
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    total
}

/// Entry `(i, j)` of `1/(I - A) = sum A^n`: every lattice path from `i` to
/// `j` of length at most `max_degree`, with coefficient one.
pub fn neumann_entry(m: usize, i: usize, j: usize, max_degree: usize) -> Result<NcSeries> {
    for x in [i, j] {
        if x == 0 || x > m {
            return Err(Error::IndexOutOfRange { index: x, dim: m });
        }
    }
    let mut out = NcSeries::zero(m, max_degree);
    let mut path = Vec::with_capacity(max_degree);
    fn walk(m: usize, at: usize, target: usize, left: usize, path: &mut Vec<Step>, out: &mut NcSeries) {
        if at == target {
            out.add_term(Word(path.clone()), Rational::one());
        }
        if left == 0 {
            return;
        }
        for next in 1..=m {
            path.push(Step::new(at, next));
            walk(m, next, target, left - 1, path, out);
            path.pop();
        }
    }
    walk(m, i, j, max_degree, &mut path, &mut out);
    Ok(out)
}

/// The matrix `C = 1/(I - A)` truncated at `max_degree`.
pub fn neumann_matrix(m: usize, max_degree: usize) -> NcMatrix {
    NcMatrix::from_fn(m, |i, j| neumann_entry(m, i, j, max_degree).expect("valid indices"))
}

fn sign(exponent: usize) -> Rational {
    Rational::from_integer(if exponent.is_multiple_of(2) { 1 } else { -1 }.into())
}

/// `det(I-A) * c_ij - (-1)^{i+j} det(I-A)^{j,i}` lies in the ideal, degree by degree.
pub fn verify_matrix_inverse(m: usize, i: usize, j: usize, max_degree: usize, rs: RelationSet) -> Result<Verification> {
    let c = neumann_entry(m, i, j, max_degree)?;
    let d = identity_minus_generic(m, max_degree);
    let lhs = &determinant(&d) * &c;
    let rhs = minor(&d, &[j], &[i])?.scale(&sign(i + j));
    Ok(verify_residue(&(&lhs - &rhs), rs, max_degree))
}

/// `c_ik c_jl - c_jk c_il - c_jl c_ik + c_il c_jk` lies in the ideal.
pub fn verify_prop_jacobi1(
    m: usize,
    (i, j, k, l): (usize, usize, usize, usize),
    max_degree: usize,
    rs: RelationSet,
) -> Result<Verification> {
    let c = |a, b| neumann_entry(m, a, b, max_degree);
    let s = &(&(&c(i, k)? * &c(j, l)?) - &(&c(j, k)? * &c(i, l)?)) - &(&c(j, l)? * &c(i, k)?);
    let s = &s + &(&c(i, l)? * &c(j, k)?);
    Ok(verify_residue(&s, rs, max_degree))
}

/// `det(I-A) * det C_{I,J} - (-1)^{sum I + sum J} det(I-A)^{J,I}` lies in the ideal.
pub fn verify_jacobi(
    m: usize,
    rows: &[usize],
    cols: &[usize],
    max_degree: usize,
    rs: RelationSet,
) -> Result<Verification> {
    let c = neumann_matrix(m, max_degree);
    let d = identity_minus_generic(m, max_degree);
    let det_c = c.submatrix(rows, cols)?.determinant();
    let lhs = &determinant(&d) * &det_c;
    let exponent: usize = rows.iter().sum::<usize>() + cols.iter().sum::<usize>();
    let rhs = minor(&d, cols, rows)?.scale(&sign(exponent));
    Ok(verify_residue(&(&lhs - &rhs), rs, max_degree))
}

/// One instance of a linear-algebra identity, used by the batteries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum LinalgInstance {
    MatrixInverse { m: usize, i: usize, j: usize },
    PropJacobi1 { m: usize, i: usize, j: usize, k: usize, l: usize },
    Jacobi { m: usize, rows: Vec<usize>, cols: Vec<usize> },
}

impl LinalgInstance {
    pub fn verify(&self, max_degree: usize, rs: RelationSet) -> Result<Verification> {
        match self {
            LinalgInstance::MatrixInverse { m, i, j } => verify_matrix_inverse(*m, *i, *j, max_degree, rs),
            LinalgInstance::PropJacobi1 { m, i, j, k, l } => verify_prop_jacobi1(*m, (*i, *j, *k, *l), max_degree, rs),
            LinalgInstance::Jacobi { m, rows, cols } => verify_jacobi(*m, rows, cols, max_degree, rs),
        }
    }
}

impl fmt::Display for LinalgInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            LinalgInstance::MatrixInverse { m, i, j } => write!(f, "matinv m={m} i={i} j={j}"),
            LinalgInstance::PropJacobi1 { m, i, j, k, l } => {
                write!(f, "prop-jacobi1 m={m} (i,j,k,l)=({i},{j},{k},{l})")
            }
            LinalgInstance::Jacobi { m, rows, cols } => {
                write!(f, "jacobi m={m} I={{{}}} J={{{}}}", set(rows), set(cols))
            }
        }
    }
}

/// All subsets of `[m]` of size `k`, in lexicographic order.
pub fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            cur.push(x);
            go(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::new(), &mut out);
    out
}
