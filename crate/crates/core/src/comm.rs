//! Polynomials in commuting variables `x1..xm` with exact rational
//! coefficients, quotients of such polynomials, and power-series
//! expansion of those quotients at the origin.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::Rational;

pub type Exponent = Vec<u32>;

/// Which monomials survive a truncated product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Truncation {
    /// Keep monomials of total degree at most the bound.
    TotalDegree(u32),
    /// Keep monomials dividing `x^bound`.
    Divides(Exponent),
}

impl Truncation {
    fn keeps(&self, e: &[u32]) -> bool {
        match self {
            Truncation::TotalDegree(d) => e.iter().sum::<u32>() <= *d,
            Truncation::Divides(b) => e.iter().zip(b).all(|(x, y)| x <= y),
        }
    }

    fn max_total(&self) -> u32 {
        match self {
            Truncation::TotalDegree(d) => *d,
            Truncation::Divides(b) => b.iter().sum(),
        }
    }
}

/// Sparse polynomial; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl CommPoly {
    pub fn zero(nvars: usize) -> Self {
        CommPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_k` (1-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k - 1] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial(exponent: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, c);
        p
    }

    pub fn add_term(&mut self, exponent: Exponent, c: Rational) {
        assert_eq!(exponent.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn truncate(&self, t: &Truncation) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in self.terms.iter().filter(|(e, _)| t.keeps(e)) {
            out.terms.insert(e.clone(), v.clone());
        }
        out
    }

    /// Product keeping only monomials allowed by `t`.
    pub fn mul_truncated(&self, other: &Self, t: &Truncation) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, a) in &self.terms {
            if !t.keeps(ea) {
                continue;
            }
            for (eb, b) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if t.keeps(&e) {
                    out.add_term(e, a * b);
                }
            }
        }
        out
    }

    /// Homogeneous part of total degree `d`.
    fn homogeneous(&self, d: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d) {
            out.terms.insert(e.clone(), v.clone());
        }
        out
    }

    /// Power-series reciprocal truncated by `t`, computed degree by degree:
    /// `g_0 = 1/c`, `g_d = -(1/c) * sum_{k>=1} self_k * g_{d-k}`.
    pub fn series_inverse(&self, t: &Truncation) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_c = c.recip();
        let top = t.max_total();
        let parts: Vec<CommPoly> = (0..=top).map(|d| self.homogeneous(d)).collect();
        let mut g: Vec<CommPoly> = vec![CommPoly::constant(self.nvars, inv_c.clone())];
        for d in 1..=top {
            let mut acc = CommPoly::zero(self.nvars);
            for k in 1..=d as usize {
                if parts[k].is_zero() || g[d as usize - k].is_zero() {
                    continue;
                }
                acc = &acc + &parts[k].mul_truncated(&g[d as usize - k], t);
            }
            g.push(acc.scale(&-inv_c.clone()));
        }
        Ok(g.iter().fold(CommPoly::zero(self.nvars), |acc, p| &acc + p))
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }

    /// Renders with the given variable names, highest total degree last.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        // Graded order: total degree, then reverse-lex on exponents so that
        // x precedes y within a degree.
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { names[v].to_string() } else { format!("{}^{}", names[v], p) })
                .collect::<Vec<_>>()
                .join(if names.iter().any(|n| n.len() > 1) { "*" } else { "" });
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                if names.iter().any(|n| n.len() > 1) {
                    out.push('*');
                }
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses sums like `1 - 2x - 14yz + 46xyzw + 3x^2` over single-letter
    /// variable names, or `x1*x2^2` style names when `names` are longer.
    pub fn parse(s: &str, names: &[&str]) -> Result<Self> {
        let nvars = names.len();
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = CommPoly::zero(nvars);
        if text.is_empty() {
            return Err(bad("empty input"));
        }
        // Split at top-level signs.
        let mut pieces = Vec::new();
        let mut start = 0;
        for (k, ch) in text.char_indices() {
            if (ch == '+' || ch == '-') && k > 0 && !text[..k].ends_with('^') {
                pieces.push(&text[start..k]);
                start = k;
            }
        }
        pieces.push(&text[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit() || *c == '/').collect();
            let mut rest = body[digits.len()..].trim_start_matches('*');
            let coef = if digits.is_empty() {
                Rational::one()
            } else if let Some((n, d)) = digits.split_once('/') {
                let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
                let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
                Rational::new(n, d)
            } else {
                Rational::from_integer(digits.parse().map_err(|_| bad("bad coefficient"))?)
            };
            let mut e = vec![0u32; nvars];
            while !rest.is_empty() {
                // Longest matching name first so that `x10` wins over `x1`.
                let (v, name) = names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(*n))
                    .max_by_key(|(_, n)| n.len())
                    .ok_or_else(|| bad("unknown variable"))?;
                rest = &rest[name.len()..];
                let mut power = 1;
                if let Some(r) = rest.strip_prefix('^') {
                    let ds: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
                    power = ds.parse().map_err(|_| bad("bad exponent"))?;
                    rest = &r[ds.len()..];
                }
                e[v] += power;
                rest = rest.trim_start_matches('*');
            }
            out.add_term(e, coef * Rational::from_integer(BigInt::from(sign)));
        }
        Ok(out)
    }
}

/// Default variable names: `x, y, z, w` up to four variables, `x1..xm` beyond.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 4 {
        ["x", "y", "z", "w"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|k| format!("x{k}")).collect()
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl<'a> Add<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = CommPoly::zero(self.nvars);
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(x, y)| x + y).collect(), a * b);
            }
        }
        out
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        self.scale(&-Rational::one())
    }
}

/// A quotient `num / den` kept unreduced; equality is decided by cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalFn {
    pub num: CommPoly,
    pub den: CommPoly,
}

impl RationalFn {
    pub fn new(num: CommPoly, den: CommPoly) -> Self {
        assert_eq!(num.nvars(), den.nvars());
        assert!(!den.is_zero(), "zero denominator");
        RationalFn { num, den }
    }

    pub fn from_poly(p: CommPoly) -> Self {
        let n = p.nvars();
        RationalFn { num: p, den: CommPoly::one(n) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn recip(&self) -> Self {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFn { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFn { num: &self.num + &other.num, den: self.den.clone() };
        }
        RationalFn { num: &(&self.num * &other.den) + &(&other.num * &self.den), den: &self.den * &other.den }
    }

    /// `a/b == c/d` iff `a*d == c*b`.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Expansion at the origin, truncated by `t`.
    pub fn expand(&self, t: &Truncation) -> Result<CommPoly> {
        let inv = self.den.series_inverse(t)?;
        Ok(self.num.mul_truncated(&inv, t))
    }

    /// Coefficient of `x^e` in the power-series expansion at the origin.
    pub fn series_coefficient(&self, e: &[u32]) -> Result<Rational> {
        if e.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: e.len() });
        }
        let t = Truncation::Divides(e.to_vec());
        Ok(self.expand(&t)?.coefficient(e))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational;

    fn poly(s: &str, n: usize) -> CommPoly {
        let names = default_names(n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        CommPoly::parse(s, &refs).unwrap()
    }

    #[test]
    fn geometric_series() {
        let f = RationalFn::new(CommPoly::one(1), poly("1 - x", 1));
        assert_eq!(f.series_coefficient(&[5]).unwrap(), rational(1));
        assert_eq!(f.series_coefficient(&[0]).unwrap(), rational(1));
    }

    #[test]
    fn trinomial_coefficient_matches_multinomial_oracle() {
        let f = RationalFn::new(CommPoly::one(2), poly("1 - x - y", 2));
        // (x+y)^3 contributes 3 x^2 y.
        assert_eq!(f.series_coefficient(&[2, 1]).unwrap(), rational(3));
        assert_eq!(f.series_coefficient(&[3, 3]).unwrap(), rational(20));
    }

    #[test]
    fn polynomial_coefficient_read_off() {
        let f = RationalFn::from_poly(poly("-4z + 5xz", 3));
        assert_eq!(f.series_coefficient(&[1, 0, 1]).unwrap(), rational(5));
        assert_eq!(f.series_coefficient(&[0, 0, 1]).unwrap(), rational(-4));
    }

    #[test]
    fn zero_constant_term_is_a_domain_error() {
        let f = RationalFn::new(CommPoly::one(1), poly("x", 1));
        assert_eq!(f.series_coefficient(&[1]), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn parse_and_display_agree() {
        let p = poly("1 - 2x - 2y - z - 5w + xy - 10xz + 46xyzw + 3x^2", 4);
        assert_eq!(p.coefficient(&[1, 1, 1, 1]), rational(46));
        assert_eq!(p.coefficient(&[2, 0, 0, 0]), rational(3));
        assert_eq!(poly(&p.to_string(), 4), p);
        assert_eq!(p.to_string(), "1 - 2x - 2y - z - 5w + 3x^2 + xy - 10xz + 46xyzw");
    }

    #[test]
    fn parse_long_names() {
        let p = CommPoly::parse("x1*x10^2 - 3/2x2", &["x1", "x2", "x10"]).unwrap();
        assert_eq!(p.coefficient(&[1, 0, 2]), rational(1));
        assert_eq!(p.coefficient(&[0, 1, 0]), Rational::new(BigInt::from(-3), BigInt::from(2)));
    }

    #[test]
    fn rational_function_equivalence_by_cross_multiplication() {
        let a = RationalFn::new(poly("1 + x", 1), poly("1 - x^2", 1));
        let b = RationalFn::new(CommPoly::one(1), poly("1 - x", 1));
        assert!(a.equivalent(&b));
        let sum = b.add(&b.neg());
        assert!(sum.num.is_zero());
        assert!(b.mul(&b.recip()).equivalent(&RationalFn::from_poly(CommPoly::one(1))));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let d = poly("1 - 2x - 2y + xy - 14yz + 46xyz", 3);
        let t = Truncation::TotalDegree(5);
        let inv = d.series_inverse(&t).unwrap();
        assert_eq!(d.mul_truncated(&inv, &t), CommPoly::one(3));
    }
}
