//! Exact sparse row echelon form over the rationals.
//!
//! Rows are stored as primitive integer vectors (content divided out, positive
//! leading entry) and elimination is fraction-free, which keeps the entries
//! small for the ±1 relation matrices this crate produces. Pivots sit on the
//! smallest column index of each row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse row: strictly increasing column indices, nonzero entries.
pub type SparseRow = Vec<(u32, BigInt)>;

#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    pivots: Vec<Option<SparseRow>>,
    rank: usize,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: vec![None; ncols], rank: 0 }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `row` against the stored pivots; the result is zero iff
    /// `row` lies in the row space.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut idx = 0;
        while idx < row.len() {
            let col = row[idx].0;
            match &self.pivots[col as usize] {
                Some(pivot) => {
                    let factor = row[idx].1.clone();
                    let lead = pivot[0].1.clone();
                    row = combine(&row, &lead, pivot, &factor);
                    make_primitive(&mut row);
                    idx = row.partition_point(|(c, _)| *c <= col);
                }
                None => idx += 1,
            }
        }
        row
    }

    /// Adds a row to the span. Returns `true` when it was independent.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        make_primitive(&mut row);
        let col = row[0].0 as usize;
        debug_assert!(self.pivots[col].is_none());
        self.pivots[col] = Some(row);
        self.rank += 1;
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Reduced row echelon basis: pivot entries one, pivot columns cleared in
    /// every other row. Rows are ordered by pivot column.
    pub fn reduced_basis(&self) -> Vec<Vec<(u32, BigRational)>> {
        let mut rows: Vec<(usize, SparseRow)> =
            self.pivots.iter().enumerate().filter_map(|(c, r)| r.as_ref().map(|r| (c, r.clone()))).collect();
        // Back substitution from the last pivot upwards.
        for k in (0..rows.len()).rev() {
            let (pc, pivot) = (rows[k].0 as u32, rows[k].1.clone());
            for row in rows.iter_mut().take(k) {
                if let Some(pos) = row.1.iter().position(|(c, _)| *c == pc) {
                    let factor = row.1[pos].1.clone();
                    row.1 = combine(&row.1, &pivot[0].1, &pivot, &factor);
                    make_primitive(&mut row.1);
                }
            }
        }
        rows.into_iter()
            .map(|(_, row)| {
                let lead = row[0].1.clone();
                row.into_iter().map(|(c, v)| (c, BigRational::new(v, lead.clone()))).collect()
            })
            .collect()
    }
}

/// `a * x - b * y` on sparse rows.
fn combine(x: &SparseRow, a: &BigInt, y: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let a_is_one = a.is_one();
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cj = y.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ci < cj {
            out.push((ci, if a_is_one { x[i].1.clone() } else { a * &x[i].1 }));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = if a_is_one { &x[i].1 - b * &y[j].1 } else { a * &x[i].1 - b * &y[j].1 };
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divides out the content and makes the leading entry positive.
fn make_primitive(row: &mut SparseRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Clears denominators of a rational sparse vector, keeping it up to scale.
pub fn integer_row(entries: Vec<(u32, BigRational)>) -> SparseRow {
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut row: SparseRow = entries
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, (v * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect();
    row.sort_by_key(|e| e.0);
    row
}
