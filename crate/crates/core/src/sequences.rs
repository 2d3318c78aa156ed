//! Ordered, back-ordered, path and back-path sequences; the switching map
//! `psi` and the bijection `phi` from ordered sequences onto path sequences.
//!
//! Ordered sequences are taken with respect to the identity. For an arbitrary
//! priority order `pi`, [`phi_relative`] relabels heights by `pi^{-1}`, runs
//! the identity construction and maps back.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{inversions, multinomial};
use crate::error::{Error, Result};
use crate::series::{NcSeries, Rational};
use crate::word::{inv_alpha, Permutation, TypePair, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceClass {
    Ordered,
    BackOrdered,
    Path,
    BackPath,
}

impl SequenceClass {
    pub const ALL: [SequenceClass; 4] =
        [SequenceClass::Ordered, SequenceClass::BackOrdered, SequenceClass::Path, SequenceClass::BackPath];

    /// Back classes carry the sign `(-1)^{inv alpha}` in their sums.
    pub fn is_signed(self) -> bool {
        matches!(self, SequenceClass::BackOrdered | SequenceClass::BackPath)
    }

    pub fn contains(self, w: &Word, pi: &Permutation) -> bool {
        match self {
            SequenceClass::Ordered => is_ordered(w, pi),
            SequenceClass::BackOrdered => is_back_ordered(w, pi),
            SequenceClass::Path => is_path_sequence(w, pi),
            SequenceClass::BackPath => is_back_path_sequence(w, pi),
        }
    }
}

impl fmt::Display for SequenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceClass::Ordered => "ordered",
            SequenceClass::BackOrdered => "back_ordered",
            SequenceClass::Path => "path",
            SequenceClass::BackPath => "back_path",
        })
    }
}

impl std::str::FromStr for SequenceClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "ordered" => Ok(SequenceClass::Ordered),
            "back_ordered" => Ok(SequenceClass::BackOrdered),
            "path" => Ok(SequenceClass::Path),
            "back_path" => Ok(SequenceClass::BackPath),
            _ => Err(Error::Parse(format!("unknown sequence class {s:?}"))),
        }
    }
}

/// A request for one of the sets `O^pi(p;r)`, `Obar^pi(p;r)`, `P^pi(p;r)`, `Pbar^pi(p;r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceClassQuery {
    pub p: Vec<usize>,
    pub r: Vec<usize>,
    pub pi: Permutation,
    pub class: SequenceClass,
}

impl SequenceClassQuery {
    pub fn new(p: Vec<usize>, r: Vec<usize>, pi: Permutation, class: SequenceClass) -> Self {
        SequenceClassQuery { p, r, pi, class }
    }

    pub fn type_pair(&self) -> Result<TypePair> {
        let t = TypePair::new(self.p.clone(), self.r.clone())?;
        if self.pi.dim() != t.dim() {
            return Err(Error::DimensionMismatch { expected: t.dim(), found: self.pi.dim() });
        }
        Ok(t)
    }
}

/// All words of type `(p;r)`.
pub fn enumerate_words(p: &[usize], r: &[usize]) -> Result<Vec<Word>> {
    Ok(TypePair::new(p.to_vec(), r.to_vec())?.words())
}

/// `pi^{-1}(i_k) <= pi^{-1}(i_{k+1})` for every `k`.
pub fn is_ordered(w: &Word, pi: &Permutation) -> bool {
    w.steps().windows(2).all(|s| pi.rank_of(s[0].start()) <= pi.rank_of(s[1].start()))
}

/// `pi^{-1}(j_k) >= pi^{-1}(j_{k+1})` for every `k`.
pub fn is_back_ordered(w: &Word, pi: &Permutation) -> bool {
    w.steps().windows(2).all(|s| pi.rank_of(s[0].end()) >= pi.rank_of(s[1].end()))
}

/// Splits a word into maximal lattice paths, returned as `[start, end)` index ranges.
pub fn maximal_paths(w: &Word) -> Vec<(usize, usize)> {
    let steps = w.steps();
    let mut out = Vec::new();
    let mut begin = 0;
    for k in 1..=steps.len() {
        if k == steps.len() || steps[k].start != steps[k - 1].end {
            out.push((begin, k));
            begin = k;
        }
    }
    out
}

/// Path sequence with respect to `pi`: each path starts at a height of
/// minimal `pi`-priority among all later starts, and no later step starts
/// at the height where the path ended.
///
/// The decomposition into lattice paths is forced to be the maximal one:
/// cutting a path where the next step continues it would put a later start
/// at the previous path's end.
pub fn is_path_sequence(w: &Word, pi: &Permutation) -> bool {
    let steps = w.steps();
    for (begin, end) in maximal_paths(w) {
        let head = pi.rank_of(steps[begin].start());
        if steps[begin..].iter().any(|s| pi.rank_of(s.start()) < head) {
            return false;
        }
        let last = steps[end - 1].end;
        if steps[end..].iter().any(|s| s.start == last) {
            return false;
        }
    }
    true
}

/// Back-path sequence with respect to `pi`: the reverse dual (read right to
/// left, every step reversed) is a path sequence with respect to `pi`.
pub fn is_back_path_sequence(w: &Word, pi: &Permutation) -> bool {
    is_path_sequence(&w.reverse_dual(), pi)
}

/// Filter-based enumeration of a sequence class, in lexicographic order.
pub fn enumerate_class(q: &SequenceClassQuery) -> Result<Vec<Word>> {
    let t = q.type_pair()?;
    Ok(t.words().into_iter().filter(|w| q.class.contains(w, &q.pi)).collect())
}

/// Size of a sequence class. Ordered and back-ordered classes have closed
/// forms (multinomials over `r` and `p`); path classes are counted.
pub fn class_cardinality(q: &SequenceClassQuery) -> Result<BigUint> {
    let t = q.type_pair()?;
    Ok(match q.class {
        SequenceClass::Ordered => multinomial(&t.r),
        SequenceClass::BackOrdered => multinomial(&t.p),
        SequenceClass::Path | SequenceClass::BackPath => BigUint::from(enumerate_class(q)?.len()),
    })
}

/// `O^pi`, `P^pi` (unsigned) or `Obar^pi`, `Pbar^pi` (signed by `(-1)^{inv alpha}`).
pub fn signed_class_sum(q: &SequenceClassQuery) -> Result<NcSeries> {
    let t = q.type_pair()?;
    let mut s = NcSeries::zero(t.dim(), t.len());
    for w in enumerate_class(q)? {
        let sign = if q.class.is_signed() && inv_alpha(&w).rem_euclid(2) == 1 { -1 } else { 1 };
        s.add_term(w, Rational::from_integer(sign.into()));
    }
    Ok(s)
}

/// `inv(pi^{-1}(i_1) ... pi^{-1}(i_n))`. Ordered words are exactly those of rank 0.
pub fn rank(w: &Word, pi: &Permutation) -> usize {
    let relabeled: Vec<usize> = w.steps().iter().map(|s| pi.rank_of(s.start())).collect();
    inversions(&relabeled)
}

fn check_perm(w: &Word, perm: &Permutation) -> Result<()> {
    w.check_dim(perm.dim())
}

/// Builds the path sequence of an ordered word directly: repeatedly pull out
/// the leftmost step of minimal `sigma`-priority, then keep appending the
/// leftmost remaining step that starts where the path currently ends.
pub fn phi(w: &Word, sigma: &Permutation) -> Result<Word> {
    check_perm(w, sigma)?;
    if !is_ordered(w, &Permutation::identity(sigma.dim())) {
        return Err(Error::NotOrdered { word: w.to_string() });
    }
    let mut rest = w.steps().to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let first = (0..rest.len()).min_by_key(|&k| (sigma.rank_of(rest[k].start()), k)).expect("rest is nonempty");
        let mut step = rest.remove(first);
        out.push(step);
        while let Some(k) = rest.iter().position(|s| s.start == step.end) {
            step = rest.remove(k);
            out.push(step);
        }
    }
    Ok(Word(out))
}

/// Recovers the ordered word: all steps starting at height 1 in order of
/// appearance, then those starting at height 2, and so on.
pub fn phi_inverse(w: &Word, sigma: &Permutation) -> Result<Word> {
    check_perm(w, sigma)?;
    if !is_path_sequence(w, sigma) {
        return Err(Error::NotPathSequence { word: w.to_string(), sigma: sigma.to_string() });
    }
    Ok(stable_sort_by_start(w))
}

fn stable_sort_by_start(w: &Word) -> Word {
    let mut steps = w.steps().to_vec();
    steps.sort_by_key(|s| s.start);
    Word(steps)
}

/// Relabels heights by `h -> pi^{-1}(h)`, turning `pi`-ordered words into ordered words.
pub fn relabel_to_identity(w: &Word, pi: &Permutation) -> Word {
    w.map_heights(|h| pi.rank_of(h))
}

/// Inverse of [`relabel_to_identity`].
pub fn relabel_from_identity(w: &Word, pi: &Permutation) -> Word {
    w.map_heights(|h| pi.apply(h))
}

/// `phi` for words ordered with respect to an arbitrary `pi`: the image is a
/// path sequence with respect to `sigma` in the original labels.
pub fn phi_relative(w: &Word, pi: &Permutation, sigma: &Permutation) -> Result<Word> {
    check_perm(w, pi)?;
    if !is_ordered(w, pi) {
        return Err(Error::NotOrdered { word: w.to_string() });
    }
    // In relabeled heights the priority order becomes pi^{-1} ∘ sigma.
    let relabeled_sigma = pi.inverse().compose(sigma);
    let image = phi(&relabel_to_identity(w, pi), &relabeled_sigma)?;
    Ok(relabel_from_identity(&image, pi))
}

/// One switch of the transformation, without validating the input.
/// Returns the switched word and the index `k` such that steps `k` and
/// `k + 1` were exchanged, or `None` on path sequences.
pub fn psi_step(w: &Word, sigma: &Permutation) -> Option<(Word, usize)> {
    let steps = w.steps();
    let n = steps.len();
    let mut done = 0;
    'paths: while done < n {
        let head = (done..n).min_by_key(|&k| (sigma.rank_of(steps[k].start()), k)).expect("nonempty range");
        if head != done {
            return Some((swapped(w, head - 1), head - 1));
        }
        let mut end = steps[done].end;
        done += 1;
        loop {
            match (done..n).find(|&k| steps[k].start == end) {
                None => continue 'paths,
                Some(k) if k == done => {
                    end = steps[done].end;
                    done += 1;
                }
                Some(k) => return Some((swapped(w, k - 1), k - 1)),
            }
        }
    }
    None
}

fn swapped(w: &Word, k: usize) -> Word {
    let mut steps = w.steps().to_vec();
    steps.swap(k, k + 1);
    Word(steps)
}

/// The full sequence of words visited by repeated `psi`, starting from an
/// ordered word and ending at `phi` of it.
pub fn psi_orbit(w: &Word, sigma: &Permutation) -> Result<Vec<Word>> {
    check_perm(w, sigma)?;
    if !is_ordered(w, &Permutation::identity(sigma.dim())) {
        return Err(Error::NotOrdered { word: w.to_string() });
    }
    let mut out = vec![w.clone()];
    while let Some((next, _)) = psi_step(out.last().expect("nonempty"), sigma) {
        out.push(next);
    }
    Ok(out)
}

/// A word is a q-sequence when it occurs in the `psi`-orbit of its own
/// ordered rearrangement. Since `psi` never exchanges steps with equal
/// starting heights, that rearrangement is the stable sort by start.
pub fn is_q_sequence(w: &Word, sigma: &Permutation) -> bool {
    if w.check_dim(sigma.dim()).is_err() {
        return false;
    }
    let target_rank = rank(w, &Permutation::identity(sigma.dim()));
    let mut current = stable_sort_by_start(w);
    // Each switch raises the rank by one, so the orbit reaches rank
    // `target_rank` after exactly that many switches, if at all.
    for _ in 0..target_rank {
        match psi_step(&current, sigma) {
            Some((next, _)) => current = next,
            None => return false,
        }
    }
    current == *w
}

/// `psi` with validation; fixes path sequences.
pub fn psi(w: &Word, sigma: &Permutation) -> Result<Word> {
    if !is_q_sequence(w, sigma) {
        return Err(Error::NotQSequence { word: w.to_string(), sigma: sigma.to_string() });
    }
    Ok(psi_step(w, sigma).map(|(next, _)| next).unwrap_or_else(|| w.clone()))
}

/// Sign `(-1)^{inv alpha}` as a rational.
pub fn back_sign(w: &Word) -> Rational {
    if inv_alpha(w).rem_euclid(2) == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}
