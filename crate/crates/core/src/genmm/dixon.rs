//! Alternating sums of triple products of binomial coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::combinatorics::{binomial, factorial};

/// `S(n) = sum_{i=1}^{n-1} (-1)^i C(n,i-1) C(n,i) C(n,i+1)` and its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DixonS {
    pub n: u64,
    pub brute: BigInt,
    pub closed_form: BigInt,
}

impl DixonS {
    pub fn agrees(&self) -> bool {
        self.brute == self.closed_form
    }
}

/// `S_k(n)` by direct summation and by the two closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DixonSk {
    pub n: u64,
    pub k: u64,
    pub brute: BigInt,
    /// The factorial ratio; zero for odd `n`.
    pub factorial_ratio: BigInt,
    /// The double sum, defined for `k >= 1`; zero for odd `n`.
    pub double_sum: Option<BigInt>,
}

impl DixonSk {
    pub fn agrees(&self) -> bool {
        self.brute == self.factorial_ratio && self.double_sum.as_ref().is_none_or(|v| *v == self.brute)
    }
}

fn alt(i: i64) -> BigInt {
    if i.is_even() {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn triple_sum(n: i64, k: i64) -> BigInt {
    (k..=n - k).map(|i| alt(i) * binomial(n, i - k) * binomial(n, i) * binomial(n, i + k)).sum()
}

pub fn dixon_s(n: u64) -> DixonS {
    let brute = triple_sum(n as i64, 1);
    let closed_form = if n % 2 == 1 {
        BigInt::zero()
    } else {
        let m = (n / 2) as i64;
        2 * alt(m) * binomial(2 * m, m - 1) * binomial(3 * m, m - 1)
    };
    DixonS { n, brute, closed_form }
}

fn factorial_ratio(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let f = |x: u64| BigInt::from(factorial(x));
    let num = alt(m as i64) * f(2 * m) * f(2 * m) * f(3 * m);
    let den = f(m) * f(m - k) * f(m + k) * f(2 * m - k) * f(2 * m + k);
    num / den
}

fn double_sum(m: u64, k: u64) -> BigInt {
    let (m, k) = (m as i64, k as i64);
    let mut total = BigInt::zero();
    for j in 1..=k {
        let mut inner = BigInt::zero();
        for i in 0..=j / 2 {
            inner += alt(m - i) * binomial(j, 2 * i) * binomial(3 * m - i + j - k, m - i) * binomial(2 * m, m + k - i);
        }
        total += binomial(2 * k - j - 1, k - 1) * inner;
    }
    2 * total
}

pub fn dixon_sk(n: u64, k: u64) -> DixonSk {
    let brute = triple_sum(n as i64, k as i64);
    let (factorial_ratio, double_sum) = if n % 2 == 1 {
        (BigInt::zero(), (k >= 1).then(BigInt::zero))
    } else {
        let m = n / 2;
        (factorial_ratio(m, k), (k >= 1).then(|| double_sum(m, k)))
    };
    DixonSk { n, k, brute, factorial_ratio, double_sum }
}
