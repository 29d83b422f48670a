use proptest::prelude::*;
use qgrass_core::combinatorics::{
    c_exponent, classify_noncrossing, is_noncrossing, partition_from_subset, subset_from_partition,
    GrassParams, IndexSubset, Partition,
};

fn subset(n: usize, m: usize) -> impl Strategy<Value = IndexSubset> {
    proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), m)
        .prop_map(move |e| IndexSubset::new(n, &e).unwrap())
}

fn pair() -> impl Strategy<Value = (usize, IndexSubset, IndexSubset)> {
    (2usize..=8)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, m)| (Just(n), subset(n, m), subset(n, m)))
}

proptest! {
    #[test]
    fn c_is_antisymmetric((_, i, j) in pair()) {
        match (c_exponent(&i, &j), c_exponent(&j, &i)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, -b),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "asymmetric crossing verdict {:?}", other),
        }
    }

    #[test]
    fn both_cases_give_the_same_exponent((_, i, j) in pair()) {
        let cl = classify_noncrossing(&i, &j);
        if let (Some(a), Some(b)) = (&cl.case_i, &cl.case_ii) {
            let ci = a.after.len() as i64 - a.before.len() as i64;
            let cii = b.before.len() as i64 - b.after.len() as i64;
            prop_assert_eq!(ci, cii);
        }
        prop_assert_eq!(cl.crossing, cl.c.is_none());
    }

    #[test]
    fn noncrossing_is_cyclically_invariant((n, i, j) in pair(), shift in 0usize..8) {
        let s = shift % n;
        prop_assert_eq!(is_noncrossing(&i, &j), is_noncrossing(&i.rotate(s), &j.rotate(s)));
    }

    #[test]
    fn partition_round_trip((n, i, _) in pair()) {
        let params = GrassParams::new(i.len(), n).unwrap();
        let p = partition_from_subset(&i);
        prop_assert!(p.parts().len() <= params.m);
        prop_assert!(p.parts().iter().all(|&w| w <= n - params.m));
        prop_assert_eq!(subset_from_partition(&p, params).unwrap(), i);
    }
}

fn is_boundary_rectangle(p: &Partition, m: usize, width: usize) -> bool {
    let parts = p.parts();
    match parts.first() {
        None => true,
        Some(&w) => {
            let rect = parts.iter().all(|&x| x == w);
            rect && (parts.len() == m || w == width)
        }
    }
}

#[test]
fn cyclic_intervals_are_the_boundary_rectangles() {
    for n in 2..=8 {
        for m in 1..n {
            let params = GrassParams::new(m, n).unwrap();
            let mut count = 0;
            for s in params.subsets() {
                let rect = is_boundary_rectangle(&partition_from_subset(&s), m, n - m);
                assert_eq!(s.is_cyclic_interval(), rect, "{s} in Gr({m},{n})");
                count += usize::from(rect);
            }
            assert_eq!(count, n);
        }
    }
}

#[test]
fn equal_labels_commute() {
    let i = IndexSubset::new(6, &[2, 4, 5]).unwrap();
    assert_eq!(c_exponent(&i, &i), Ok(0));
}
