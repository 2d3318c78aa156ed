//! Words in the letters `a[i,j]`, read as sequences of lattice steps from
//! height `i` to height `j`, together with their type statistics and the
//! permutations used to reorder heights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{expand_counts, inversions, multiset_permutations};
use crate::error::{Error, Result};

/// A single lattice step, i.e. the variable `a[start,end]`. Heights are 1-based.
///
/// The derived ordering compares `start` first, then `end`, which makes the
/// derived ordering on [`Word`] lexicographic in `(i1, j1, i2, j2, ...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub start: u8,
    pub end: u8,
}

impl Step {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start >= 1 && end >= 1 && start < 256 && end < 256);
        Step { start: start as u8, end: end as u8 }
    }

    pub fn start(self) -> usize {
        self.start as usize
    }

    pub fn end(self) -> usize {
        self.end as usize
    }

    /// The step traversed backwards: `a[i,j]` becomes `a[j,i]`.
    pub fn reversed(self) -> Self {
        Step { start: self.end, end: self.start }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a[{},{}]", self.start, self.end)
    }
}

impl Serialize for Step {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.start as usize, self.end as usize].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Step {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [start, end] = <[usize; 2]>::deserialize(deserializer)?;
        if start == 0 || end == 0 || start > 255 || end > 255 {
            return Err(serde::de::Error::custom(format!("invalid step [{start},{end}]")));
        }
        Ok(Step::new(start, end))
    }
}

/// A finite sequence of steps. The empty word is the unit of the algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Step>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from `(start, end)` pairs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Word(pairs.iter().map(|&(i, j)| Step::new(i, j)).collect())
    }

    /// Pairs a starting-height word with an ending-height word of the same length.
    pub fn from_heights(starts: &[usize], ends: &[usize]) -> Self {
        assert_eq!(starts.len(), ends.len());
        Word(starts.iter().zip(ends).map(|(&i, &j)| Step::new(i, j)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn starts(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.start()).collect()
    }

    pub fn ends(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.end()).collect()
    }

    /// Concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut steps = Vec::with_capacity(self.len() + other.len());
        steps.extend_from_slice(&self.0);
        steps.extend_from_slice(&other.0);
        Word(steps)
    }

    /// Largest height appearing in the word (0 for the empty word).
    pub fn max_height(&self) -> usize {
        self.0.iter().map(|s| s.start().max(s.end())).max().unwrap_or(0)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        for s in &self.0 {
            for h in [s.start(), s.end()] {
                if h == 0 || h > dim {
                    return Err(Error::HeightOutOfRange { height: h, dim });
                }
            }
        }
        Ok(())
    }

    /// Reads the word right to left with every step reversed. This is the
    /// duality exchanging path sequences and back-path sequences.
    pub fn reverse_dual(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.reversed()).collect())
    }

    /// Applies a height relabeling `h -> f(h)` to every start and end.
    pub fn map_heights(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|s| Step::new(f(s.start()), f(s.end()))).collect())
    }

    /// True when every step starts where the previous one ended.
    pub fn is_lattice_path(&self) -> bool {
        self.0.windows(2).all(|w| w[0].end == w[1].start)
    }
}

impl From<Vec<Step>> for Word {
    fn from(steps: Vec<Step>) -> Self {
        Word(steps)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts the canonical `a[2,3]a[1,4]` form, the compact `a23a14` form
    /// (single-digit heights only), and `1` or the empty string for the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        let bytes = text.as_bytes();
        let mut steps = Vec::new();
        let mut pos = 0;
        let bad = |msg: &str| Error::Parse(format!("{msg} in word {s:?}"));
        while pos < bytes.len() {
            if bytes[pos] != b'a' {
                return Err(bad("expected 'a'"));
            }
            pos += 1;
            if pos < bytes.len() && bytes[pos] == b'[' {
                let close = text[pos..].find(']').ok_or_else(|| bad("unclosed '['"))? + pos;
                let inner = &text[pos + 1..close];
                let mut parts = inner.split(',');
                let i = parts.next().and_then(|t| t.parse::<usize>().ok());
                let j = parts.next().and_then(|t| t.parse::<usize>().ok());
                match (i, j, parts.next()) {
                    (Some(i), Some(j), None) if (1..256).contains(&i) && (1..256).contains(&j) => {
                        steps.push(Step::new(i, j))
                    }
                    _ => return Err(bad("malformed step")),
                }
                pos = close + 1;
            } else {
                if pos + 2 > bytes.len() {
                    return Err(bad("truncated step"));
                }
                let i = (bytes[pos] as char).to_digit(10);
                let j = (bytes[pos + 1] as char).to_digit(10);
                match (i, j) {
                    (Some(i), Some(j)) if i > 0 && j > 0 => steps.push(Step::new(i as usize, j as usize)),
                    _ => return Err(bad("malformed compact step")),
                }
                pos += 2;
            }
        }
        Ok(Word(steps))
    }
}

/// Counts of starting heights (`p`) and ending heights (`r`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypePair {
    pub p: Vec<usize>,
    pub r: Vec<usize>,
}

impl TypePair {
    /// Validates equal dimension and `sum(p) == sum(r)`.
    pub fn new(p: Vec<usize>, r: Vec<usize>) -> Result<Self> {
        if p.len() != r.len() {
            return Err(Error::DimensionMismatch { expected: p.len(), found: r.len() });
        }
        let (p_sum, r_sum) = (p.iter().sum::<usize>(), r.iter().sum::<usize>());
        if p_sum != r_sum {
            return Err(Error::UnbalancedType { p_sum, r_sum });
        }
        Ok(TypePair { p, r })
    }

    pub fn balanced(p: Vec<usize>) -> Self {
        TypePair { r: p.clone(), p }
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    /// The common length `n` of words of this type.
    pub fn len(&self) -> usize {
        self.p.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_balanced(&self) -> bool {
        self.p == self.r
    }

    /// Type of the reverse dual word: starts and ends trade places.
    pub fn swapped(&self) -> TypePair {
        TypePair { p: self.r.clone(), r: self.p.clone() }
    }

    /// Every word of this type, in lexicographic order.
    pub fn words(&self) -> Vec<Word> {
        let starts = multiset_permutations(&expand_counts(&self.p));
        let ends = multiset_permutations(&expand_counts(&self.r));
        let mut out = Vec::with_capacity(starts.len() * ends.len());
        for s in &starts {
            for e in &ends {
                out.push(Word::from_heights(s, e));
            }
        }
        out.sort();
        out
    }

    /// All type pairs of dimension `dim` and length `n`.
    pub fn all_of_length(dim: usize, n: usize) -> Vec<TypePair> {
        let vectors = compositions(n, dim);
        let mut out = Vec::with_capacity(vectors.len() * vectors.len());
        for p in &vectors {
            for r in &vectors {
                out.push(TypePair { p: p.clone(), r: r.clone() });
            }
        }
        out
    }
}

impl fmt::Display for TypePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.p), join(&self.r))
    }
}

/// Weak compositions of `n` into `parts` nonnegative parts, lexicographically.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=n {
            prefix.push(first);
            go(n - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, parts, &mut Vec::new(), &mut out);
    out
}

/// Type of a word in ambient dimension `dim`.
pub fn word_type(w: &Word, dim: usize) -> Result<TypePair> {
    w.check_dim(dim)?;
    let mut p = vec![0; dim];
    let mut r = vec![0; dim];
    for s in w.steps() {
        p[s.start() - 1] += 1;
        r[s.end() - 1] += 1;
    }
    Ok(TypePair { p, r })
}

/// A word is balanced when every height is started from as often as it is ended at.
pub fn is_balanced(w: &Word) -> bool {
    let dim = w.max_height();
    word_type(w, dim).map(|t| t.is_balanced()).unwrap_or(false)
}

/// `inv(j-word) - inv(i-word)`, the exponent of the sign attached to back-ordered sums.
pub fn inv_alpha(w: &Word) -> i64 {
    inversions(&w.ends()) as i64 - inversions(&w.starts()) as i64
}

/// A permutation of `1..=m` in one-line notation: `images[k-1] = pi(k)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    positions: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let dim = images.len();
        let mut positions = vec![0; dim];
        for (k, &v) in images.iter().enumerate() {
            if v == 0 || v > dim || positions[v - 1] != 0 {
                return Err(Error::InvalidPermutation { dim, images });
            }
            positions[v - 1] = k + 1;
        }
        Ok(Permutation { images, positions })
    }

    pub fn identity(dim: usize) -> Self {
        Permutation::new((1..=dim).collect()).expect("identity is a permutation")
    }

    /// The longest element `m ... 2 1`.
    pub fn longest(dim: usize) -> Self {
        Permutation::new((1..=dim).rev().collect()).expect("reversal is a permutation")
    }

    /// Every permutation of `1..=dim` in lexicographic order.
    pub fn all(dim: usize) -> Vec<Permutation> {
        multiset_permutations(&(1..=dim).collect::<Vec<_>>())
            .into_iter()
            .map(|images| Permutation::new(images).expect("arrangement of 1..=dim"))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `pi(k)`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    /// `pi^{-1}(h)`: the position of height `h` in the priority order.
    pub fn rank_of(&self, h: usize) -> usize {
        self.positions[h - 1]
    }

    pub fn inverse(&self) -> Permutation {
        Permutation::new(self.positions.clone()).expect("inverse of a permutation")
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.dim(), other.dim());
        Permutation::new(other.images.iter().map(|&k| self.apply(k)).collect()).expect("composition of permutations")
    }

    pub fn inversions(&self) -> usize {
        inversions(&self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() < 10 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `231`, `2,3,1` or `2 3 1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images: Option<Vec<usize>> = if s.contains(',') || s.contains(' ') {
            s.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let images = images.ok_or_else(|| Error::Parse(format!("bad permutation {s:?}")))?;
        Permutation::new(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn type_of_figure_word() {
        let t = word_type(&w("a23a14a22a41a13"), 4).unwrap();
        assert_eq!(t.p, vec![2, 2, 0, 1]);
        assert_eq!(t.r, vec![1, 1, 2, 1]);
        assert!(!t.is_balanced());
    }

    #[test]
    fn type_of_empty_and_small_words() {
        let t = word_type(&Word::empty(), 3).unwrap();
        assert_eq!(t, TypePair { p: vec![0; 3], r: vec![0; 3] });
        let t = word_type(&w("a12a21"), 2).unwrap();
        assert_eq!(t.p, vec![1, 1]);
        assert!(t.is_balanced());
    }

    #[test]
    fn out_of_range_height_is_rejected() {
        assert_eq!(word_type(&w("a13"), 2), Err(Error::HeightOutOfRange { height: 3, dim: 2 }));
    }

    #[test]
    fn balance() {
        assert!(is_balanced(&w("a12a21")));
        assert!(!is_balanced(&w("a12")));
        assert!(!is_balanced(&w("a23a14a22a41a13")));
        assert!(is_balanced(&Word::empty()));
    }

    #[test]
    fn inv_alpha_examples() {
        assert_eq!(inv_alpha(&w("a11a22")), 0);
        assert_eq!(inv_alpha(&w("a12a21")), 1);
        assert_eq!(inv_alpha(&w("a21a12")), -1);
    }

    #[test]
    fn text_forms_round_trip() {
        let word = w("a[2,3]a[1,4]a[12,1]");
        assert_eq!(word.to_string(), "a[2,3]a[1,4]a[12,1]");
        assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
        assert_eq!(w("a23a14"), Word::from_pairs(&[(2, 3), (1, 4)]));
        assert_eq!(w("1"), Word::empty());
        assert!("a[1,]".parse::<Word>().is_err());
        assert!("b12".parse::<Word>().is_err());
        assert!("a1".parse::<Word>().is_err());
    }

    #[test]
    fn json_form_is_list_of_pairs() {
        let word = w("a23a14");
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, "[[2,3],[1,4]]");
        assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), word);
        assert!(serde_json::from_str::<Word>("[[0,1]]").is_err());
    }

    #[test]
    fn words_of_type_count() {
        let t = TypePair::new(vec![2, 1, 1], vec![0, 3, 1]).unwrap();
        assert_eq!(t.words().len(), 48);
        let t = TypePair::balanced(vec![1, 1]);
        let expected: Vec<Word> = ["a11a22", "a12a21", "a21a12", "a22a11"].iter().map(|s| w(s)).collect();
        assert_eq!(t.words(), expected);
        assert_eq!(TypePair::balanced(vec![0, 0]).words(), vec![Word::empty()]);
    }

    #[test]
    fn permutation_basics() {
        let pi: Permutation = "231".parse().unwrap();
        assert_eq!(pi.apply(1), 2);
        assert_eq!(pi.rank_of(2), 1);
        assert_eq!(pi.rank_of(1), 3);
        assert_eq!(pi.inverse().to_string(), "312");
        assert!(pi.compose(&pi.inverse()).is_identity());
        assert_eq!(Permutation::longest(4).inversions(), 6);
        assert_eq!(Permutation::all(3).len(), 6);
        assert!("221".parse::<Permutation>().is_err());
        assert_eq!("2,3,1".parse::<Permutation>().unwrap(), pi);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }
}
