mod common;

use canrel_core::symplectic::{enumerate_lagrangians, lagrangian_count};
use common::{naive_lagrangians, std_space};
use std::collections::BTreeSet;

#[test]
fn enumeration_matches_naive_oracle_and_formula() {
    for (p, n, expected) in [(2, 1, 3), (3, 1, 4), (5, 1, 6), (7, 1, 8), (2, 2, 15), (3, 2, 40)] {
        let x = std_space(p, n);
        let lag = enumerate_lagrangians(&x).unwrap();
        assert_eq!(lag.len(), expected, "p={p} n={n}");
        assert_eq!(lagrangian_count(p, n as u32), expected as u128);
        let oracle = naive_lagrangians(p, n);
        let ours: BTreeSet<_> = lag.members.iter().cloned().collect();
        assert_eq!(ours, oracle, "p={p} n={n}");
        for l in &lag.members {
            assert!(x.classify(l).unwrap().lagrangian);
        }
    }
}

#[test]
fn larger_counts_follow_the_product_formula() {
    assert_eq!(enumerate_lagrangians(&std_space(2, 3)).unwrap().len(), 135);
    assert_eq!(enumerate_lagrangians(&std_space(5, 2)).unwrap().len(), 156);
}

#[test]
fn members_are_sorted_and_distinct() {
    let lag = enumerate_lagrangians(&std_space(3, 2)).unwrap();
    assert!(lag.members.windows(2).all(|w| w[0] < w[1]));
}
