use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qgrass_core::combinatorics::{is_maximal, IndexSubset};
use qgrass_core::grassmannian::{
    classical_plucker_eval, detect_geometric_exchange, explore, initial_seed, initial_seed_with,
    ExploreOptions,
};
use qgrass_core::seed::{mutate_bl, SeedError};
use qgrass_core::torus::QCoefficient;
use qgrass_core::verify::same_label_same_variable;
use qgrass_core::{IntMatrix, QuantumSeed, TorusElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Classical matrix mutation, applied entrywise.
fn fz_mutate(b: &IntMatrix, k: usize) -> IntMatrix {
    let mut out = b.clone();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out[(i, j)] = if i == k || j == k {
                -b[(i, j)]
            } else {
                b[(i, j)] + (b[(i, k)].abs() * b[(k, j)] + b[(i, k)] * b[(k, j)].abs()) / 2
            };
        }
    }
    out
}

fn grassmannian() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 5)), Just((2, 6)), Just((3, 6)), Just((3, 7)), Just((4, 8))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mutation_matches_classical_rule_and_is_an_involution(
        (m, n) in grassmannian(),
        steps in proptest::collection::vec(0usize..64, 1..8),
    ) {
        let mut seed = initial_seed_with(m, n, false).unwrap();
        for s in steps {
            let k = s % seed.mutable();
            let next = seed.mutate(k).unwrap().seed;
            prop_assert_eq!(next.b().matrix(), &fz_mutate(seed.b().matrix(), k));
            prop_assert!(next.degrees().iter().all(|&d| d == 2));
            let back = next.mutate(k).unwrap().seed;
            prop_assert_eq!(&back, &seed);
            let (b2, l2) = mutate_bl(next.b(), next.l(), k).unwrap();
            prop_assert_eq!((&b2, &l2), (seed.b(), seed.l()));
            seed = next;
        }
        // no loops or 2-cycles on the mutable part
        let b = seed.b().matrix();
        for i in 0..seed.mutable() {
            prop_assert_eq!(b[(i, i)], 0);
            for j in 0..seed.mutable() {
                prop_assert!(b[(i, j)] * b[(j, i)] <= 0);
            }
        }
    }

    #[test]
    fn variables_quasi_commute_along_random_paths(
        steps in proptest::collection::vec(0usize..8, 1..5),
    ) {
        let mut seed = initial_seed(2, 5).unwrap();
        for s in steps {
            seed = seed.mutate(s % seed.mutable()).unwrap().seed;
            prop_assert_eq!(seed.check_variable_quasi_commutation().unwrap(), None);
            prop_assert!(seed.variables().unwrap().iter().all(|v| v.is_laurent()));
        }
    }
}

#[test]
fn gr24_exchange_expansion_and_classical_minor() {
    let seed = initial_seed(2, 4).unwrap();
    let next = seed.mutate(0).unwrap();
    assert_eq!(next.seed.label(0), Some(IndexSubset::new(4, &[2, 4]).unwrap()));
    let x = next.seed.variable(0).unwrap();
    let ordered = x.ordered_coefficients();
    assert_eq!(ordered[&vec![-1, 1, 0, 1, 0]], QCoefficient::u_power(-2));
    assert_eq!(ordered[&vec![-1, 0, 1, 0, 1]], QCoefficient::u_power(2));

    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mat = vec![vec![q(2), q(-1), q(3), q(1)], vec![q(1), q(4), q(-2), q(5)]];
    let values: Vec<BigRational> =
        seed.labels().unwrap().iter().map(|l| classical_plucker_eval(&mat, l)).collect();
    let got = x.evaluate_classical(&values).unwrap();
    assert_eq!(got, classical_plucker_eval(&mat, &IndexSubset::new(4, &[2, 4]).unwrap()));
}

#[test]
fn frozen_positions_are_rejected() {
    let seed = initial_seed(2, 5).unwrap();
    assert_eq!(seed.mutate(2).unwrap_err(), SeedError::FrozenIndex(2));
    assert_eq!(seed.mutate(99).unwrap_err(), SeedError::FrozenIndex(99));
}

/// Random walks through geometric exchanges; every label must always carry
/// the same initial-torus expansion, whichever path produced it.
fn check_well_defined(m: usize, n: usize, walks: usize, depth: usize, seed: u64) {
    let start = initial_seed(m, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_label: HashMap<IndexSubset, TorusElement> = HashMap::new();
    let mut by_cluster: HashMap<Vec<IndexSubset>, QuantumSeed> = HashMap::new();
    let mut compared = 0;
    for _ in 0..walks {
        let mut cur = start.clone();
        for _ in 0..depth {
            let moves: Vec<_> = (0..cur.mutable())
                .filter_map(|k| cur.mutate(k).ok().filter(|mu| mu.exchange.is_some()))
                .collect();
            if moves.is_empty() {
                break;
            }
            cur = moves[rng.gen_range(0..moves.len())].seed.clone();
            for i in 0..cur.total() {
                let label = cur.label(i).unwrap();
                let var = cur.variable(i).unwrap().as_ref().clone();
                let stored = by_label.entry(label).or_insert_with(|| var.clone());
                assert_eq!(stored, &var, "label {label} has two expansions");
            }
            let key = cur.label_key().unwrap();
            if let Some(other) = by_cluster.get(&key) {
                let (n_cmp, bad) = same_label_same_variable(other, &cur);
                assert!(bad.is_empty(), "{bad:?}");
                compared += n_cmp;
            } else {
                by_cluster.insert(key, cur.clone());
            }
        }
    }
    assert!(compared > 0);
}

#[test]
fn well_defined_across_paths_gr26() {
    check_well_defined(2, 6, 40, 8, 5);
}

#[test]
fn well_defined_across_paths_gr36() {
    check_well_defined(3, 6, 40, 6, 6);
}

#[test]
fn gr36_has_non_geometric_mutations() {
    let seed = initial_seed(3, 6).unwrap();
    let mut found = None;
    'outer: for k1 in 0..seed.mutable() {
        let s1 = seed.mutate(k1).unwrap().seed;
        for k2 in 0..s1.mutable() {
            let mu = s1.mutate(k2).unwrap();
            if mu.exchange.is_none() && s1.label(k2).is_some() {
                found = Some((mu.seed, k2));
                break 'outer;
            }
        }
    }
    let (s2, k) = found.expect("Gr(3,6) leaves the minor locus within two steps");
    assert_eq!(s2.label(k), None);
    assert!(s2.variable(k).unwrap().is_laurent());
    assert_eq!(detect_geometric_exchange(&s2, k), Err(SeedError::NoLabel(k)));
    // mutating back restores the label
    assert!(s2.mutate(k).unwrap().seed.label(k).is_some());
}

#[test]
fn gr36_plabic_clusters() {
    let opts = ExploreOptions { max_seeds: 10_000, max_depth: 100, geometric_only: true };
    let g = explore(3, 6, opts).unwrap();
    assert_eq!(g.seeds.len(), 34);
    assert!(!g.truncated);
    for (s, _) in &g.seeds {
        let labels: BTreeSet<IndexSubset> = s.labels().unwrap().into_iter().collect();
        assert_eq!(labels.len(), 10);
        assert!(is_maximal(&labels).unwrap());
    }
}

#[test]
fn gr36_all_clusters() {
    let opts = ExploreOptions { max_seeds: 10_000, max_depth: 100, geometric_only: false };
    let g = explore(3, 6, opts).unwrap();
    assert_eq!(g.seeds.len(), 50);
    assert_eq!(g.summary().labels.len(), 14);
}

#[test]
fn exploration_bounds() {
    let opts = ExploreOptions { max_seeds: 3, max_depth: 100, geometric_only: true };
    let g = explore(2, 7, opts).unwrap();
    assert_eq!((g.seeds.len(), g.truncated), (3, true));
    let opts = ExploreOptions { max_seeds: 1000, max_depth: 1, geometric_only: true };
    let s = explore(2, 7, opts).unwrap().summary();
    assert_eq!((s.depth, s.truncated), (1, true));
    assert_eq!(s.seeds, 1 + 4);
}

#[test]
fn seed_json_shape() {
    let seed = initial_seed(2, 4).unwrap().mutate(0).unwrap().seed;
    let v = serde_json::to_value(seed.to_json()).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["n"], 4);
    assert_eq!(v["history"], serde_json::json!([1]));
    assert_eq!(v["positions"][0], serde_json::json!({"label": [2, 4], "frozen": false}));
    assert_eq!(v["B"], serde_json::json!([[0], [-1], [1], [-1], [1]]));
    assert_eq!(v["L"][0][1], -1);
}
