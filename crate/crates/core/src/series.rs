//! Degree-truncated formal series in the noncommuting letters `a[i,j]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{word_type, Step, TypePair, Word};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A finite linear combination of words of length at most `max_degree`,
/// standing for the truncation of an infinite series. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcSeries {
    dim: usize,
    max_degree: usize,
    terms: BTreeMap<Word, Rational>,
}

impl NcSeries {
    pub fn zero(dim: usize, max_degree: usize) -> Self {
        NcSeries { dim, max_degree, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, max_degree: usize) -> Self {
        Self::monomial(dim, max_degree, Word::empty(), Rational::one())
    }

    pub fn constant(dim: usize, max_degree: usize, c: Rational) -> Self {
        Self::monomial(dim, max_degree, Word::empty(), c)
    }

    /// The single letter `a[i,j]`.
    pub fn letter(dim: usize, max_degree: usize, i: usize, j: usize) -> Self {
        Self::monomial(dim, max_degree, Word(vec![Step::new(i, j)]), Rational::one())
    }

    pub fn monomial(dim: usize, max_degree: usize, word: Word, coef: Rational) -> Self {
        let mut s = Self::zero(dim, max_degree);
        s.add_term(word, coef);
        s
    }

    /// Sum of the given words with coefficient one each.
    pub fn sum_of_words<'a>(dim: usize, max_degree: usize, words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut s = Self::zero(dim, max_degree);
        for w in words {
            s.add_term(w.clone(), Rational::one());
        }
        s
    }

    /// Adds `coef * word`, dropping words longer than the truncation degree.
    pub fn add_term(&mut self, word: Word, coef: Rational) {
        debug_assert!(word.check_dim(self.dim).is_ok(), "word {word} outside dimension {}", self.dim);
        if word.len() > self.max_degree || coef.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    /// Largest length among stored words, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn with_max_degree(&self, max_degree: usize) -> Self {
        let mut out = Self::zero(self.dim, max_degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Keeps only words of length exactly `n`.
    pub fn homogeneous_component(&self, n: usize) -> Self {
        let mut out = Self::zero(self.dim, self.max_degree);
        for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == n) {
            out.terms.insert(w.clone(), c.clone());
        }
        out
    }

    /// Splits the series by word type. Every relation used in this crate is
    /// homogeneous for this grading.
    pub fn components_by_type(&self) -> BTreeMap<TypePair, NcSeries> {
        let mut out: BTreeMap<TypePair, NcSeries> = BTreeMap::new();
        for (w, c) in &self.terms {
            let t = word_type(w, self.dim).expect("stored words lie in the ambient dimension");
            out.entry(t)
                .or_insert_with(|| NcSeries::zero(self.dim, self.max_degree))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.max_degree);
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.terms.insert(w.clone(), v * c);
        }
        out
    }

    fn check_same_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "series in different dimensions");
    }

    /// Rewrites every letter `a[i,j]` as `a[f(i),f(j)]`.
    pub fn map_heights(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.dim, self.max_degree);
        for (w, c) in &self.terms {
            out.add_term(w.map_heights(&f), c.clone());
        }
        out
    }

    /// Substitutes commuting scalars for the letters: `values[i-1][j-1]` for `a[i,j]`.
    pub fn evaluate_commutative(&self, values: &[Vec<Rational>]) -> Rational {
        let mut total = Rational::zero();
        for (w, c) in &self.terms {
            let mut term = c.clone();
            for s in w.steps() {
                term *= &values[s.start() - 1][s.end() - 1];
            }
            total += term;
        }
        total
    }

    pub fn to_json_terms(&self) -> Vec<SeriesTerm> {
        self.terms
            .iter()
            .map(|(w, c)| SeriesTerm { word: w.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
            .collect()
    }

    pub fn from_json_terms(dim: usize, max_degree: usize, terms: &[SeriesTerm]) -> Result<Self> {
        let mut s = Self::zero(dim, max_degree);
        for t in terms {
            t.word.check_dim(dim)?;
            let num: BigInt = t.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| Error::Parse(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            s.add_term(t.word.clone(), Rational::new(num, den));
        }
        Ok(s)
    }
}

/// JSON form of one series term; `num`/`den` are decimal strings so that
/// arbitrarily large integers survive the round trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub word: Word,
    pub num: String,
    pub den: String,
}

impl<'a> Add<&'a NcSeries> for &'a NcSeries {
    type Output = NcSeries;
    fn add(self, rhs: &NcSeries) -> NcSeries {
        self.check_same_dim(rhs);
        let mut out = self.with_max_degree(self.max_degree.min(rhs.max_degree));
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NcSeries> for &'a NcSeries {
    type Output = NcSeries;
    fn sub(self, rhs: &NcSeries) -> NcSeries {
        self.check_same_dim(rhs);
        let mut out = self.with_max_degree(self.max_degree.min(rhs.max_degree));
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &NcSeries {
    type Output = NcSeries;
    fn neg(self) -> NcSeries {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

/// Concatenation product, truncated at the smaller of the two degrees.
impl<'a> Mul<&'a NcSeries> for &'a NcSeries {
    type Output = NcSeries;
    fn mul(self, rhs: &NcSeries) -> NcSeries {
        self.check_same_dim(rhs);
        let max_degree = self.max_degree.min(rhs.max_degree);
        let mut out = NcSeries::zero(self.dim, max_degree);
        for (u, a) in &self.terms {
            if u.len() > max_degree {
                continue;
            }
            for (v, b) in &rhs.terms {
                if u.len() + v.len() > max_degree {
                    continue;
                }
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<NcSeries> for NcSeries {
            type Output = NcSeries;
            fn $method(self, rhs: NcSeries) -> NcSeries {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a NcSeries> for NcSeries {
            type Output = NcSeries;
            fn $method(self, rhs: &NcSeries) -> NcSeries {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NcSeries {
    type Output = NcSeries;
    fn neg(self) -> NcSeries {
        -&self
    }
}

impl fmt::Display for NcSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Shorter words first, lexicographic within a length.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn series(dim: usize, deg: usize, terms: &[(&str, i64)]) -> NcSeries {
        let mut s = NcSeries::zero(dim, deg);
        for (word, c) in terms {
            s.add_term(w(word), rational(*c));
        }
        s
    }

    #[test]
    fn cross_terms_cancel() {
        let a = series(1, 2, &[("1", 1), ("a11", 1)]);
        let b = series(1, 2, &[("1", 1), ("a11", -1)]);
        let prod = &a * &b;
        assert_eq!(prod, series(1, 2, &[("1", 1), ("a11a11", -1)]));
        assert_eq!(prod.coefficient(&w("a11")), Rational::zero());
    }

    #[test]
    fn letters_concatenate() {
        let prod = NcSeries::letter(2, 3, 1, 2) * NcSeries::letter(2, 3, 2, 1);
        assert_eq!(prod, series(2, 3, &[("a12a21", 1)]));
    }

    #[test]
    fn truncation_drops_long_words() {
        let a = NcSeries::letter(1, 2, 1, 1);
        assert!((&(&a * &a) * &a).is_zero());
        let mixed = &NcSeries::letter(1, 5, 1, 1) * &NcSeries::letter(1, 1, 1, 1);
        assert_eq!(mixed.max_degree(), 1);
        assert!(mixed.is_zero());
    }

    #[test]
    fn homogeneous_component_filters_by_length() {
        let s = series(2, 3, &[("1", 2), ("a12", 1), ("a12a21", 3), ("a11a11", -1)]);
        assert_eq!(s.homogeneous_component(2), series(2, 3, &[("a12a21", 3), ("a11a11", -1)]));
        assert!(s.homogeneous_component(3).is_zero());
    }

    #[test]
    fn subtraction_leaves_no_zero_terms() {
        let s = series(2, 3, &[("a12", 1), ("a21", 2)]);
        let d = &s - &s;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
    }

    #[test]
    fn display_orders_by_length() {
        let s = series(2, 3, &[("a12a21", -1), ("1", 1), ("a11", 2)]);
        assert_eq!(s.to_string(), "1 + 2*a[1,1] - a[1,2]a[2,1]");
        assert_eq!(NcSeries::zero(2, 2).to_string(), "0");
    }

    #[test]
    fn json_terms_round_trip() {
        let mut s = series(2, 3, &[("a12a21", -3), ("1", 1)]);
        s.add_term(w("a22"), Rational::new(BigInt::from(5), BigInt::from(7)));
        let terms = s.to_json_terms();
        let json = serde_json::to_string(&terms).unwrap();
        assert!(json.contains(r#"{"word":[[2,2]],"num":"5","den":"7"}"#));
        let back: Vec<SeriesTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(NcSeries::from_json_terms(2, 3, &back).unwrap(), s);
    }

    #[test]
    fn type_components_partition_terms() {
        let s = series(2, 3, &[("a12a21", 1), ("a21a12", 1), ("a11a22", 1), ("a12", 1)]);
        let parts = s.components_by_type();
        assert_eq!(parts.len(), 2);
        let total = parts.values().fold(NcSeries::zero(2, 3), |acc, p| &acc + p);
        assert_eq!(total, s);
    }
}
