//! Exact computations in the right-quantum algebra: words over the letters
//! `a[i,j]`, ordered and path sequences with their Foata-type bijection,
//! membership in the right-quantum ideal, noncommutative determinant
//! identities and a generalized MacMahon master theorem.

pub mod cli;
pub mod combinatorics;
pub mod comm;
pub mod echelon;
pub mod error;
pub mod genmm;
pub mod ideal;
pub mod linalg;
pub mod sequences;
pub mod series;
pub mod suites;
pub mod word;

pub use comm::{CommPoly, RationalFn, Truncation};
pub use error::{Error, Result};
pub use ideal::{
    equal_mod_ideal, ideal_contains, ideal_degree_basis, relation_generators, verify_main1, DegreeResidue, IdealCache,
    Main1Part, RelationSet, Verification,
};
pub use sequences::{SequenceClass, SequenceClassQuery};
pub use series::{rational, NcSeries, Rational};
pub use word::{Permutation, Step, TypePair, Word};
