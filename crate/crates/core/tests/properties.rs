use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rq_algebra::echelon::{integer_row, Echelon};
use rq_algebra::genmm::{dixon_s, eval_f, plan, ScalarMatrix};
use rq_algebra::sequences::{enumerate_class, phi, phi_inverse, psi_orbit, rank};
use rq_algebra::{
    ideal_contains, rational, relation_generators, NcSeries, Permutation, Rational, RelationSet, SequenceClass,
    SequenceClassQuery, Step, Word,
};

fn word_strategy(m: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=m, 1..=m), 0..=max_len).prop_map(|v| Word::from_pairs(&v))
}

fn series_strategy(m: usize, deg: usize) -> impl Strategy<Value = NcSeries> {
    prop::collection::vec((word_strategy(m, deg), -4i64..=4), 0..6).prop_map(move |terms| {
        let mut s = NcSeries::zero(m, deg);
        for (w, c) in terms {
            s.add_term(w, rational(c));
        }
        s
    })
}

fn composition(m: usize, n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..m, n).prop_map(move |cells| {
        let mut p = vec![0; m];
        for c in cells {
            p[c] += 1;
        }
        p
    })
}

/// A type pair with `m <= 3` and length at most 5.
fn type_strategy() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..=3, 0usize..=5).prop_flat_map(|(m, n)| (composition(m, n), composition(m, n)))
}

fn scalar_values(m: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, m), m)
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(rational).collect()).collect())
}

fn rank_oracle(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut rank = 0;
    for col in 0..a.first().map_or(0, Vec::len) {
        let Some(pivot) = (rank..a.len()).find(|&i| a[i][col] != BigRational::from_integer(0.into())) else {
            continue;
        };
        a.swap(rank, pivot);
        for i in 0..a.len() {
            if i != rank {
                let f = &a[i][col] / &a[rank][col];
                let pivot_row = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_product_is_associative(a in series_strategy(2, 4), b in series_strategy(2, 4), c in series_strategy(2, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn series_product_distributes(a in series_strategy(3, 3), b in series_strategy(3, 3), c in series_strategy(3, 3)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&b + &c) * &a, &(&b * &a) + &(&c * &a));
    }

    #[test]
    fn series_json_round_trip(s in series_strategy(3, 4)) {
        let json = serde_json::to_string(&s.to_json_terms()).unwrap();
        let terms: Vec<_> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(NcSeries::from_json_terms(3, 4, &terms).unwrap(), s);
    }

    #[test]
    fn word_text_and_json_round_trip(w in word_strategy(4, 8)) {
        prop_assert_eq!(&w.to_string().parse::<Word>().unwrap(), &w);
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), w);
    }

    #[test]
    fn phi_is_a_bijection_onto_paths((p, r) in type_strategy(), k in 0usize..6) {
        let m = p.len();
        let sigma = Permutation::all(m)[k % Permutation::all(m).len()].clone();
        let id = Permutation::identity(m);
        let ordered = enumerate_class(&SequenceClassQuery::new(p.clone(), r.clone(), id, SequenceClass::Ordered)).unwrap();
        let paths: BTreeSet<Word> =
            enumerate_class(&SequenceClassQuery::new(p, r, sigma.clone(), SequenceClass::Path)).unwrap().into_iter().collect();
        let images: BTreeSet<Word> = ordered.iter().map(|w| phi(w, &sigma).unwrap()).collect();
        prop_assert_eq!(images.len(), ordered.len());
        prop_assert_eq!(images, paths);
    }

    #[test]
    fn phi_round_trips_and_orbit_ranks_rise((p, r) in type_strategy(), k in 0usize..6, pick in any::<prop::sample::Index>()) {
        let m = p.len();
        let sigma = Permutation::all(m)[k % Permutation::all(m).len()].clone();
        let id = Permutation::identity(m);
        let ordered = enumerate_class(&SequenceClassQuery::new(p, r, id.clone(), SequenceClass::Ordered)).unwrap();
        if ordered.is_empty() {
            return Ok(());
        }
        let w = pick.get(&ordered);
        let image = phi(w, &sigma).unwrap();
        prop_assert_eq!(&phi_inverse(&image, &sigma).unwrap(), w);
        let orbit = psi_orbit(w, &sigma).unwrap();
        prop_assert_eq!(orbit.first().unwrap(), w);
        prop_assert_eq!(orbit.last().unwrap(), &image);
        for pair in orbit.windows(2) {
            prop_assert_eq!(rank(&pair[1], &id), rank(&pair[0], &id) + 1);
        }
    }

    #[test]
    fn ordered_and_path_sums_agree_commutatively((p, r) in type_strategy(), k in 0usize..6, values in scalar_values(3)) {
        let m = p.len();
        let sigma = Permutation::all(m)[k % Permutation::all(m).len()].clone();
        let id = Permutation::identity(m);
        let weight = |w: &Word| -> Rational {
            w.steps().iter().fold(rational(1), |acc, s| acc * &values[s.start() - 1][s.end() - 1])
        };
        let ordered: Rational = enumerate_class(&SequenceClassQuery::new(p.clone(), r.clone(), id, SequenceClass::Ordered))
            .unwrap().iter().map(weight).sum();
        let paths: Rational = enumerate_class(&SequenceClassQuery::new(p, r, sigma, SequenceClass::Path))
            .unwrap().iter().map(weight).sum();
        prop_assert_eq!(ordered, paths);
    }

    #[test]
    fn generators_vanish_on_commuting_letters(m in 2usize..=4, values in scalar_values(4)) {
        for g in relation_generators(m, RelationSet::RightQuantum) {
            prop_assert_eq!(g.evaluate_commutative(&values), rational(0));
        }
    }

    #[test]
    fn two_sided_multiples_lie_in_the_ideal(
        u in word_strategy(2, 2), v in word_strategy(2, 2), k in any::<prop::sample::Index>(), c in -3i64..=3
    ) {
        let gens = relation_generators(2, RelationSet::RightQuantum);
        let g = k.get(&gens);
        let deg = u.len() + v.len() + 2;
        let left = NcSeries::monomial(2, deg, u, rational(c));
        let right = NcSeries::monomial(2, deg, v, rational(1));
        let s = &(&left * &g.with_max_degree(deg)) * &right;
        prop_assert!(ideal_contains(&s, RelationSet::RightQuantum));
        if c != 0 {
            prop_assert!(!ideal_contains(&s, RelationSet::Free));
        }
    }

    #[test]
    fn echelon_contains_exactly_the_span(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..5),
        coeffs in prop::collection::vec(-3i64..=3, 5),
    ) {
        let to_row = |r: &[i64]| integer_row(r.iter().enumerate().map(|(i, &x)| (i as u32, BigRational::from_integer(BigInt::from(x)))).collect());
        let mut ech = Echelon::new(6);
        for r in &rows {
            ech.insert(to_row(r));
        }
        let combo: Vec<i64> = (0..6).map(|j| rows.iter().zip(&coeffs).map(|(r, c)| r[j] * c).sum()).collect();
        prop_assert!(ech.contains(to_row(&combo)));
        prop_assert!(ech.rank() <= rows.len());
        prop_assert_eq!(ech.rank(), rank_oracle(&rows));
    }

    #[test]
    fn multiset_permutations_are_counted(d in prop::collection::vec(-3i64..=3, 2..=4)) {
        let total: i64 = d.iter().sum();
        let mut d = d;
        d[0] -= total;
        let pl = plan(&d).unwrap();
        let perms = pl.permutations();
        let distinct: BTreeSet<_> = perms.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), perms.len());
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        let mut expected = fact(pl.m_multiset.len());
        for v in BTreeSet::<usize>::from_iter(pl.m_multiset.iter().copied()) {
            expected /= fact(pl.m_multiset.iter().filter(|&&x| x == v).count());
        }
        prop_assert_eq!(perms.len() as u64, expected);
        for pi in &perms {
            let mut sorted = pi.clone();
            sorted.sort();
            prop_assert_eq!(&sorted, &pl.m_multiset);
        }
    }
}

#[test]
fn dixon_matrix_diagonal_is_the_alternating_cube_sum() {
    let a = ScalarMatrix::from_integers(&[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]).unwrap();
    let f = eval_f(&a, &[-1, -1, 2]).unwrap();
    for n in 0..=4u32 {
        let c = f.coefficient(&[n, n, n]).unwrap();
        assert_eq!(c, Rational::from_integer(dixon_s(n as u64).brute), "n = {n}");
    }
}

#[test]
fn step_reversal_is_an_involution() {
    let s = Step::new(2, 5);
    assert_eq!(s.reversed().reversed(), s);
}
