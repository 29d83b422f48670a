use proptest::prelude::*;
use qgrass_core::combinatorics::{c_exponent, is_noncrossing, IndexSubset};
use qgrass_core::invariants::{kappa, kappa_truncated_oracle, lambda_pair, min_exponent_vector};

fn pair() -> impl Strategy<Value = (usize, IndexSubset, IndexSubset)> {
    (2usize..=7).prop_flat_map(|n| (Just(n), 1..n)).prop_flat_map(|(n, m)| {
        let s = move || {
            proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), m)
                .prop_map(move |e| IndexSubset::new(n, &e).unwrap())
        };
        (Just(n), s(), s())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kappa_matches_truncated_oracle((n, i, j) in pair(), extra in 1usize..4) {
        prop_assert_eq!(kappa(&i, &j).unwrap(), kappa_truncated_oracle(&i, &j, n + extra).unwrap());
    }

    #[test]
    fn exponent_vector_has_zero_minimum((_, i, j) in pair()) {
        let v = min_exponent_vector(&i, &j).unwrap();
        prop_assert_eq!(v.0.iter().min(), Some(&0));
        prop_assert!(v.0.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1));
    }

    #[test]
    fn lambda_is_antisymmetric_and_matches_c((_, i, j) in pair()) {
        let l = lambda_pair(&i, &j).unwrap();
        prop_assert_eq!(l, -lambda_pair(&j, &i).unwrap());
        if is_noncrossing(&i, &j) {
            prop_assert_eq!(l, c_exponent(&i, &j).unwrap());
        }
    }
}

#[test]
fn kappa_of_projective_base_vanishes() {
    // {1..m} is the projective at the distinguished vertex
    let base = IndexSubset::new(6, &[1, 2, 3]).unwrap();
    for e in [[1, 3, 5], [2, 4, 6], [4, 5, 6]] {
        let j = IndexSubset::new(6, &e).unwrap();
        assert_eq!(kappa(&base, &j).unwrap(), 0);
    }
}
