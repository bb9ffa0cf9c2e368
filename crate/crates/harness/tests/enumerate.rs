use std::collections::BTreeSet;

use scf_core::doc::pcond_to_json;
use scf_core::fixtures::u1;
use scf_core::single::{validate_p, PCondition};
use scf_harness::enumerate::{enumerate_candidates, enumerate_conditions, subsets, Bounds, EnumError};
use scf_harness::oracle;

const U1_BOUNDS: Bounds = Bounds { max_models: 1, max_dom: 2, max_g: 1, budget: 100_000 };

/// Frozen after the oracle count below agreed with it.
const U1_CONDITIONS: usize = 58;

#[test]
fn zero_bounds_give_the_empty_condition() {
    let u = u1();
    assert_eq!(enumerate_conditions(&u, None, Bounds::ZERO).unwrap(), vec![PCondition::empty(None)]);
    assert_eq!(enumerate_conditions(&u, Some(1), Bounds::ZERO).unwrap(), vec![PCondition::empty(Some(1))]);
}

#[test]
fn fixture_count_is_frozen() {
    let u = u1();
    let conds = enumerate_conditions(&u, None, U1_BOUNDS).unwrap();
    assert_eq!(conds.len(), U1_CONDITIONS);
    let by_oracle =
        enumerate_candidates(&u, None, U1_BOUNDS).unwrap().into_iter().filter(|p| oracle::valid(&u, p)).count();
    assert_eq!(by_oracle, U1_CONDITIONS);
}

#[test]
fn enumeration_is_valid_duplicate_free_and_stable() {
    let u = u1();
    let a = enumerate_conditions(&u, None, U1_BOUNDS).unwrap();
    let b = enumerate_conditions(&u, None, U1_BOUNDS).unwrap();
    assert_eq!(a, b);
    let docs: BTreeSet<String> = a.iter().map(|p| pcond_to_json(&u, p)).collect();
    assert_eq!(docs.len(), a.len());
    for p in &a {
        assert_eq!(validate_p(&u, p).unwrap(), vec![], "{p}");
        assert!(p.a.len() <= 1 && p.f.len() <= 2 && p.g.values().all(|v| v.len() <= 1));
    }
}

#[test]
fn budget_is_enforced() {
    let u = u1();
    let tight = Bounds { budget: 10, ..U1_BOUNDS };
    assert_eq!(enumerate_candidates(&u, None, tight), Err(EnumError::BudgetExceeded(10)));
}

#[test]
fn larger_bounds_contain_smaller_ones() {
    let u = u1();
    let small: BTreeSet<String> =
        enumerate_conditions(&u, None, U1_BOUNDS).unwrap().iter().map(|p| pcond_to_json(&u, p)).collect();
    let big = Bounds { max_models: 2, max_dom: 3, max_g: 1, budget: 1_000_000 };
    let large: BTreeSet<String> =
        enumerate_conditions(&u, None, big).unwrap().iter().map(|p| pcond_to_json(&u, p)).collect();
    assert!(small.is_subset(&large));
}

#[test]
fn subsets_are_ordered_by_size() {
    let s = subsets(&[1, 2, 3], 2);
    assert_eq!(s, vec![vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    assert_eq!(subsets::<u8>(&[], 3), vec![Vec::<u8>::new()]);
}
