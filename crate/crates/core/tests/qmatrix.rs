use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use qgrass_core::combinatorics::{c_exponent, is_noncrossing, GrassParams, IndexSubset};
use qgrass_core::poly::LaurentPoly;
use qgrass_core::qmatrix::{is_normal_word, QMatrixAlgebra, Strategy as Rewrite};

/// `(m, n, word)` with `m * n <= 12` and degree at most 6.
fn corpus() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize)>)> {
    (1usize..=3, 2usize..=4)
        .prop_filter("small", |(m, n)| m * n <= 12)
        .prop_flat_map(|(m, n)| {
            (Just(m), Just(n), proptest::collection::vec((1..=m, 1..=n), 0..=6))
        })
}

fn content(word: &[(usize, usize)], m: usize, n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut rows = vec![0; m];
    let mut cols = vec![0; n];
    for &(i, j) in word {
        rows[i - 1] += 1;
        cols[j - 1] += 1;
    }
    (rows, cols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn straightening_is_confluent((m, n, word) in corpus()) {
        let alg = QMatrixAlgebra::new(m, n);
        let expr = [(word, LaurentPoly::one())];
        let fast = alg.normal_form(&expr).unwrap();
        let left = alg.normal_form_naive(&expr, Rewrite::Leftmost).unwrap();
        let right = alg.normal_form_naive(&expr, Rewrite::Rightmost).unwrap();
        prop_assert_eq!(&fast, &left);
        prop_assert_eq!(&left, &right);
    }

    #[test]
    fn straightening_preserves_multidegree((m, n, word) in corpus()) {
        let alg = QMatrixAlgebra::new(m, n);
        let nf = alg.normal_form(&[(word.clone(), LaurentPoly::one())]).unwrap();
        let want = content(&word, m, n);
        for (w, _) in nf.terms() {
            prop_assert!(is_normal_word(&w));
            prop_assert_eq!(content(&w, m, n), want.clone());
        }
    }

    #[test]
    fn q_to_one_gives_the_sorted_monomial((m, n, word) in corpus()) {
        let alg = QMatrixAlgebra::new(m, n);
        let nf = alg.normal_form(&[(word.clone(), LaurentPoly::one())]).unwrap();
        let mut sorted = word;
        sorted.sort_by(|a, b| b.cmp(a));
        prop_assert_eq!(nf.specialize_q1(), BTreeMap::from([(sorted, BigInt::one())]));
    }
}

#[test]
fn minors_quasi_commute_with_exponent_c() {
    for (m, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let alg = QMatrixAlgebra::new(m, n);
        let subsets = GrassParams::new(m, n).unwrap().subsets();
        let minors: Vec<_> = subsets.iter().map(|s| alg.quantum_minor(s).unwrap()).collect();
        for a in 0..subsets.len() {
            for b in 0..subsets.len() {
                let (i, j) = (&subsets[a], &subsets[b]);
                let got = alg.quasi_comm_exponent(&minors[a], &minors[b]);
                if is_noncrossing(i, j) {
                    assert_eq!(got, Some(c_exponent(i, j).unwrap()), "{i} {j}");
                } else {
                    assert_eq!(got, None, "{i} {j}");
                }
            }
        }
    }
}

#[test]
fn minors_specialize_to_determinants() {
    let alg = QMatrixAlgebra::new(3, 4);
    let d = alg.quantum_minor(&IndexSubset::new(4, &[1, 2, 4]).unwrap()).unwrap();
    let classical = d.specialize_q1();
    assert_eq!(classical.len(), 6);
    assert_eq!(classical.values().filter(|v| **v == BigInt::one()).count(), 3);
}

#[test]
fn short_plucker_in_gr36() {
    let alg = QMatrixAlgebra::new(3, 6);
    let j = IndexSubset::new(6, &[2]).unwrap();
    assert!(alg.verify_short_plucker(&j, [1, 3, 4, 6]).unwrap());
    assert!(alg.verify_short_plucker(&j, [3, 4, 6, 1]).unwrap());
    let j = IndexSubset::new(6, &[5]).unwrap();
    assert!(alg.verify_short_plucker(&j, [6, 1, 2, 3]).unwrap());
}
