//! The two-sided ideals generated by the right-quantum relations, and exact
//! membership tests for them.
//!
//! Every generator is homogeneous for the grading by word type `(p;r)`, so the
//! ideal splits into finite-dimensional pieces, one per type. Each piece is
//! spanned by the products `u * g * v` landing in that type and is row reduced
//! once, then cached.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::echelon::{integer_row, Echelon, SparseRow};
use crate::error::{Error, Result};
use crate::sequences::{signed_class_sum, SequenceClass, SequenceClassQuery};
use crate::series::{NcSeries, Rational};
use crate::word::{Permutation, Step, TypePair, Word};

/// Which quadratic relations generate the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationSet {
    /// Column commutation `a_jk a_ik = a_ik a_jk` together with the cross relations.
    RightQuantum,
    /// Only `a_ik a_jl - a_jk a_il = a_jl a_ik - a_il a_jk` for `k != l`.
    CrossOnly,
    /// No relations: the free algebra.
    Free,
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationSet::RightQuantum => "right_quantum",
            RelationSet::CrossOnly => "cross_only",
            RelationSet::Free => "free",
        })
    }
}

impl std::str::FromStr for RelationSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "right_quantum" | "rq" => Ok(RelationSet::RightQuantum),
            "cross_only" | "cross" => Ok(RelationSet::CrossOnly),
            "free" => Ok(RelationSet::Free),
            _ => Err(Error::Parse(format!("unknown relation set {s:?}"))),
        }
    }
}

fn pair(a: (usize, usize), b: (usize, usize)) -> Word {
    Word(vec![Step::new(a.0, a.1), Step::new(b.0, b.1)])
}

/// Degree-two generators of the ideal, before any reduction.
///
/// Column commutators `a_jk a_ik - a_ik a_jk` for `i < j` and every `k`, then
/// `a_ik a_jl - a_jk a_il - a_jl a_ik + a_il a_jk` for `i < j` and every
/// ordered `k != l`.
pub fn relation_generators(m: usize, rs: RelationSet) -> Vec<NcSeries> {
    let one = Rational::one();
    let mut out = Vec::new();
    if rs == RelationSet::RightQuantum {
        for i in 1..=m {
            for j in i + 1..=m {
                for k in 1..=m {
                    let mut g = NcSeries::zero(m, 2);
                    g.add_term(pair((j, k), (i, k)), one.clone());
                    g.add_term(pair((i, k), (j, k)), -one.clone());
                    out.push(g);
                }
            }
        }
    }
    if matches!(rs, RelationSet::RightQuantum | RelationSet::CrossOnly) {
        for i in 1..=m {
            for j in i + 1..=m {
                for k in 1..=m {
                    for l in 1..=m {
                        if k == l {
                            continue;
                        }
                        let mut g = NcSeries::zero(m, 2);
                        g.add_term(pair((i, k), (j, l)), one.clone());
                        g.add_term(pair((j, k), (i, l)), -one.clone());
                        g.add_term(pair((j, l), (i, k)), -one.clone());
                        g.add_term(pair((i, l), (j, k)), one.clone());
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// The ideal restricted to the words of one type, in row echelon form.
#[derive(Debug)]
pub struct IdealComponent {
    type_pair: TypePair,
    words: Vec<Word>,
    index: HashMap<Word, u32>,
    echelon: Echelon,
}

/// A generator as integer-weighted two-letter words, keyed by its
/// lexicographically smallest word.
struct GeneratorPattern {
    terms: Vec<([Step; 2], BigInt)>,
}

fn generator_patterns(m: usize, rs: RelationSet) -> HashMap<[Step; 2], Vec<GeneratorPattern>> {
    let mut by_lead: HashMap<[Step; 2], Vec<GeneratorPattern>> = HashMap::new();
    for g in relation_generators(m, rs) {
        let terms: Vec<([Step; 2], BigInt)> =
            g.terms().map(|(w, c)| ([w.steps()[0], w.steps()[1]], c.to_integer())).collect();
        let lead = terms[0].0;
        by_lead.entry(lead).or_default().push(GeneratorPattern { terms });
    }
    by_lead
}

impl IdealComponent {
    /// Row reduces the span of all `u * g * v` of the given type.
    pub fn build(rs: RelationSet, type_pair: &TypePair) -> Self {
        let m = type_pair.dim();
        let words = type_pair.words();
        let index: HashMap<Word, u32> = words.iter().enumerate().map(|(k, w)| (w.clone(), k as u32)).collect();
        let mut echelon = Echelon::new(words.len());
        let patterns = generator_patterns(m, rs);
        if !patterns.is_empty() {
            // Each product u*g*v is produced exactly once: from the word
            // u * lead(g) * v at the position where lead(g) sits.
            for w in &words {
                let steps = w.steps();
                for k in 0..steps.len().saturating_sub(1) {
                    let Some(gens) = patterns.get(&[steps[k], steps[k + 1]]) else { continue };
                    for g in gens {
                        let mut row: SparseRow = g
                            .terms
                            .iter()
                            .map(|(two, c)| {
                                let mut s = steps.to_vec();
                                s[k] = two[0];
                                s[k + 1] = two[1];
                                (index[&Word(s)], c.clone())
                            })
                            .collect();
                        row.sort_by_key(|e| e.0);
                        echelon.insert(row);
                    }
                }
            }
        }
        IdealComponent { type_pair: type_pair.clone(), words, index, echelon }
    }

    pub fn type_pair(&self) -> &TypePair {
        &self.type_pair
    }

    /// Dimension of the ideal inside this type.
    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    /// Number of words of this type.
    pub fn ambient_dimension(&self) -> usize {
        self.words.len()
    }

    /// Whether a series supported on this type lies in the ideal.
    pub fn contains(&self, s: &NcSeries) -> bool {
        let entries: Vec<(u32, Rational)> =
            s.terms().map(|(w, c)| (*self.index.get(w).expect("word of this type"), c.clone())).collect();
        self.echelon.contains(integer_row(entries))
    }

    /// Reduced row echelon basis as series of maximal degree `n`.
    pub fn basis(&self) -> Vec<NcSeries> {
        let m = self.type_pair.dim();
        let n = self.type_pair.len();
        self.echelon
            .reduced_basis()
            .into_iter()
            .map(|row| {
                let mut s = NcSeries::zero(m, n);
                for (c, v) in row {
                    s.add_term(self.words[c as usize].clone(), v);
                }
                s
            })
            .collect()
    }
}

type ComponentKey = (RelationSet, TypePair);

/// Memoizes ideal components. Safe for concurrent use; two threads asking for
/// the same missing component may both compute it, with identical results.
#[derive(Debug, Default)]
pub struct IdealCache {
    components: RwLock<HashMap<ComponentKey, Arc<IdealComponent>>>,
}

impl IdealCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by the free functions of this module.
    pub fn global() -> &'static IdealCache {
        static CACHE: OnceLock<IdealCache> = OnceLock::new();
        CACHE.get_or_init(IdealCache::new)
    }

    pub fn component(&self, rs: RelationSet, t: &TypePair) -> Arc<IdealComponent> {
        let key = (rs, t.clone());
        if let Some(c) = self.components.read().expect("cache lock").get(&key) {
            return c.clone();
        }
        let built = Arc::new(IdealComponent::build(rs, t));
        self.components.write().expect("cache lock").entry(key).or_insert(built).clone()
    }

    pub fn len(&self) -> usize {
        self.components.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// See [`ideal_contains`].
    pub fn contains(&self, s: &NcSeries, rs: RelationSet) -> bool {
        if s.is_zero() {
            return true;
        }
        if rs == RelationSet::Free {
            return false;
        }
        s.components_by_type().iter().all(|(t, part)| {
            // Relations have degree two: nothing of length < 2 is in the ideal.
            t.len() >= 2 && self.component(rs, t).contains(part)
        })
    }

    pub fn degree_basis(&self, m: usize, rs: RelationSet, n: usize) -> DegreeBasis {
        let mut components = Vec::new();
        if n >= 2 && rs != RelationSet::Free {
            for t in TypePair::all_of_length(m, n) {
                components.push(self.component(rs, &t));
            }
        }
        DegreeBasis { m, degree: n, relations: rs, components }
    }
}

/// The degree-`n` piece of the ideal, as the direct sum of its type components.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    pub m: usize,
    pub degree: usize,
    pub relations: RelationSet,
    components: Vec<Arc<IdealComponent>>,
}

impl DegreeBasis {
    pub fn dimension(&self) -> usize {
        self.components.iter().map(|c| c.dimension()).sum()
    }

    /// `m^(2n)`, the number of words of length `n`.
    pub fn ambient_dimension(&self) -> usize {
        (self.m * self.m).pow(self.degree as u32)
    }

    /// Reduced row echelon basis, type by type in lexicographic type order.
    pub fn basis(&self) -> Vec<NcSeries> {
        self.components.iter().flat_map(|c| c.basis()).collect()
    }
}

/// Reduced basis of the degree-`n` component of the ideal.
pub fn ideal_degree_basis(m: usize, rs: RelationSet, n: usize) -> DegreeBasis {
    IdealCache::global().degree_basis(m, rs, n)
}

/// True iff every homogeneous component of `s` lies in the ideal.
pub fn ideal_contains(s: &NcSeries, rs: RelationSet) -> bool {
    IdealCache::global().contains(s, rs)
}

/// `s1 - s2` in the ideal, comparing components up to `max_degree`.
pub fn equal_mod_ideal(s1: &NcSeries, s2: &NcSeries, rs: RelationSet, max_degree: usize) -> bool {
    let diff = (s1 - s2).with_max_degree(max_degree);
    ideal_contains(&diff, rs)
}

/// Per-degree outcome of checking that a residue lies in the ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResidue {
    pub degree: usize,
    /// Number of words with nonzero coefficient in this homogeneous component.
    pub terms: usize,
    pub in_ideal: bool,
}

/// Result of checking an identity modulo an ideal, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub relations: RelationSet,
    pub residues: Vec<DegreeResidue>,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.residues.iter().all(|r| r.in_ideal)
    }
}

/// Checks every homogeneous component of `residue` up to `max_degree`.
pub fn verify_residue(residue: &NcSeries, rs: RelationSet, max_degree: usize) -> Verification {
    verify_residue_with(IdealCache::global(), residue, rs, max_degree)
}

pub fn verify_residue_with(cache: &IdealCache, residue: &NcSeries, rs: RelationSet, max_degree: usize) -> Verification {
    let mut by_degree: BTreeMap<usize, NcSeries> = BTreeMap::new();
    for (w, c) in residue.terms() {
        if w.len() <= max_degree {
            by_degree
                .entry(w.len())
                .or_insert_with(|| NcSeries::zero(residue.dim(), residue.max_degree()))
                .add_term(w.clone(), c.clone());
        }
    }
    let residues = (0..=max_degree.min(residue.max_degree()))
        .map(|d| match by_degree.get(&d) {
            None => DegreeResidue { degree: d, terms: 0, in_ideal: true },
            Some(part) => DegreeResidue { degree: d, terms: part.len(), in_ideal: cache.contains(part, rs) },
        })
        .collect();
    Verification { relations: rs, residues }
}

/// Which half of the main identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Main1Part {
    /// `O^pi(p;r) = P^sigma(p;r)` modulo the right-quantum relations.
    Part1,
    /// `Obar^pi(p;r) = Pbar^sigma(p;r)` modulo the cross relations, when every `p_i <= 1`.
    Part2,
}

impl Main1Part {
    pub fn default_relations(self) -> RelationSet {
        match self {
            Main1Part::Part1 => RelationSet::RightQuantum,
            Main1Part::Part2 => RelationSet::CrossOnly,
        }
    }
}

/// Ordered sums equal path sums modulo the relations, for any two priority orders.
/// `relations` overrides the default relation set (used for negative controls).
pub fn verify_main1(
    type_pair: &TypePair,
    pi: &Permutation,
    sigma: &Permutation,
    part: Main1Part,
    relations: Option<RelationSet>,
) -> Result<Verification> {
    let m = type_pair.dim();
    for perm in [pi, sigma] {
        if perm.dim() != m {
            return Err(Error::DimensionMismatch { expected: m, found: perm.dim() });
        }
    }
    if part == Main1Part::Part2 && type_pair.p.iter().any(|&x| x > 1) {
        return Err(Error::Precondition(format!("every p_i must be at most 1, got p = {:?}", type_pair.p)));
    }
    let (lhs_class, rhs_class) = match part {
        Main1Part::Part1 => (SequenceClass::Ordered, SequenceClass::Path),
        Main1Part::Part2 => (SequenceClass::BackOrdered, SequenceClass::BackPath),
    };
    let query = |perm: &Permutation, class| {
        SequenceClassQuery::new(type_pair.p.clone(), type_pair.r.clone(), perm.clone(), class)
    };
    let lhs = signed_class_sum(&query(pi, lhs_class))?;
    let rhs = signed_class_sum(&query(sigma, rhs_class))?;
    let rs = relations.unwrap_or_else(|| part.default_relations());
    Ok(verify_residue(&(&lhs - &rhs), rs, type_pair.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational;

    fn series(m: usize, terms: &[(&str, i64)]) -> NcSeries {
        let mut s = NcSeries::zero(m, 8);
        for (w, c) in terms {
            s.add_term(w.parse().unwrap(), rational(*c));
        }
        s
    }

    #[test]
    fn generator_counts() {
        assert_eq!(relation_generators(2, RelationSet::RightQuantum).len(), 4);
        assert_eq!(relation_generators(3, RelationSet::RightQuantum).len(), 9 + 18);
        assert_eq!(relation_generators(3, RelationSet::CrossOnly).len(), 18);
        assert!(relation_generators(1, RelationSet::RightQuantum).is_empty());
        assert!(relation_generators(4, RelationSet::Free).is_empty());
    }

    #[test]
    fn degree_two_dimensions() {
        let b = ideal_degree_basis(2, RelationSet::RightQuantum, 2);
        assert_eq!(b.dimension(), 3);
        assert_eq!(b.ambient_dimension(), 16);
        assert_eq!(b.basis().len(), 3);
        assert_eq!(ideal_degree_basis(2, RelationSet::CrossOnly, 2).dimension(), 1);
        assert_eq!(ideal_degree_basis(2, RelationSet::Free, 2).dimension(), 0);
        assert_eq!(ideal_degree_basis(3, RelationSet::RightQuantum, 1).dimension(), 0);
        assert_eq!(ideal_degree_basis(3, RelationSet::RightQuantum, 2).dimension(), 18);
    }

    #[test]
    fn membership_examples() {
        let rq = RelationSet::RightQuantum;
        assert!(ideal_contains(&NcSeries::zero(2, 3), rq));
        assert!(ideal_contains(&series(2, &[("a21a11", 1), ("a11a21", -1)]), rq));
        assert!(!ideal_contains(&series(2, &[("a11a22", 1), ("a22a11", -1)]), rq));
        assert!(!ideal_contains(&series(2, &[("a21a11", 1), ("a11a21", -1)]), RelationSet::CrossOnly));
        assert!(!ideal_contains(&series(2, &[("a12", 1)]), rq));
    }

    #[test]
    fn equal_mod_ideal_examples() {
        let o = series(2, &[("a11a22", 1), ("a12a21", 1)]);
        let p = series(2, &[("a22a11", 1), ("a21a12", 1)]);
        assert!(equal_mod_ideal(&o, &p, RelationSet::RightQuantum, 4));
        assert!(!equal_mod_ideal(&o, &p, RelationSet::Free, 4));
        assert!(equal_mod_ideal(&o, &o, RelationSet::Free, 4));
    }

    #[test]
    fn ideal_is_two_sided() {
        // a12 * (a21a11 - a11a21) * a22 lies in the ideal at degree 4.
        let g = series(2, &[("a21a11", 1), ("a11a21", -1)]);
        let left = NcSeries::letter(2, 8, 1, 2);
        let right = NcSeries::letter(2, 8, 2, 2);
        let s = &(&left * &g) * &right;
        assert!(ideal_contains(&s, RelationSet::RightQuantum));
    }

    #[test]
    fn basis_elements_belong_to_the_ideal() {
        for g in ideal_degree_basis(2, RelationSet::RightQuantum, 3).basis() {
            assert!(ideal_contains(&g, RelationSet::RightQuantum));
        }
    }

    #[test]
    fn main1_small_instances() {
        let perm = |s: &str| s.parse::<Permutation>().unwrap();
        let t = TypePair::balanced(vec![1, 1]);
        let v = verify_main1(&t, &perm("12"), &perm("21"), Main1Part::Part1, None).unwrap();
        assert!(v.holds());
        let v = verify_main1(&t, &perm("12"), &perm("21"), Main1Part::Part1, Some(RelationSet::Free)).unwrap();
        assert!(!v.holds());

        let t = TypePair::new(vec![2, 1, 1], vec![0, 3, 1]).unwrap();
        assert!(verify_main1(&t, &perm("231"), &perm("123"), Main1Part::Part1, None).unwrap().holds());

        let t = TypePair::new(vec![1, 1], vec![0, 2]).unwrap();
        assert!(verify_main1(&t, &perm("12"), &perm("21"), Main1Part::Part2, None).unwrap().holds());
    }

    #[test]
    fn main1_part2_rejects_repeated_starts() {
        let t = TypePair::new(vec![2, 0], vec![1, 1]).unwrap();
        let id = Permutation::identity(2);
        assert!(matches!(verify_main1(&t, &id, &id, Main1Part::Part2, None), Err(Error::Precondition(_))));
    }
}
