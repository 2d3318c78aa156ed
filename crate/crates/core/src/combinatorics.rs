//! Small enumerative helpers shared by the sequence and generating-function code.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Rearranges `items` into the lexicographically next permutation.
/// Returns `false` (leaving `items` sorted ascending) once the last one is passed.
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// All distinct arrangements of a multiset, in lexicographic order.
pub fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut current = items.to_vec();
    current.sort();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// The multiset `1^{counts[0]} 2^{counts[1]} ...` as a nondecreasing list of heights.
pub fn expand_counts(counts: &[usize]) -> Vec<usize> {
    counts.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k + 1, c)).collect()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Multinomial coefficient `(sum counts)! / prod(counts!)`.
pub fn multinomial(counts: &[usize]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &c in counts {
        for k in 1..=c as u64 {
            total += 1;
            acc = acc * total / k;
        }
    }
    acc
}

/// Binomial coefficient with the convention `C(n, k) = 0` unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 1..=k {
        acc = acc * (n - k + t) / t;
    }
    acc
}

/// Number of inversions `k < l` with `u[k] > u[l]`.
pub fn inversions<T: Ord>(u: &[T]) -> usize {
    let mut count = 0;
    for k in 0..u.len() {
        for l in k + 1..u.len() {
            if u[k] > u[l] {
                count += 1;
            }
        }
    }
    count
}

/// Number of cycles of a permutation of `0..n` given in one-line form.
pub fn cycle_count(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut cycles = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = images[k];
        }
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_arrangements_are_lexicographic_and_distinct() {
        let perms = multiset_permutations(&[4, 2, 2]);
        assert_eq!(perms, vec![vec![2, 2, 4], vec![2, 4, 2], vec![4, 2, 2]]);
        assert_eq!(multiset_permutations::<u8>(&[]), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn multinomial_matches_factorials() {
        assert_eq!(multinomial(&[0, 3, 1]), BigUint::from(4u32));
        assert_eq!(multinomial(&[2, 2, 0]), BigUint::from(6u32));
        assert_eq!(multinomial(&[2, 1, 1]), BigUint::from(12u32));
        assert_eq!(multinomial(&[]), BigUint::one());
        let f = factorial(10) / (factorial(3) * factorial(3) * factorial(4));
        assert_eq!(multinomial(&[3, 3, 4]), f);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(-3, 0), BigInt::zero());
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(inversions(&[1, 2, 3]), 0);
        assert_eq!(inversions(&[2, 1, 2, 4, 1]), 4);
        assert_eq!(inversions(&[5, 4, 3, 2, 1]), 10);
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_count(&[0, 1, 2]), 3);
        assert_eq!(cycle_count(&[1, 2, 0]), 1);
        assert_eq!(cycle_count(&[1, 0, 2]), 2);
    }
}
