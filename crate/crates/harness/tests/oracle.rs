use scf_core::fixtures::{condition_mutants, golden_amalgam, p1, u1, w_example};
use scf_core::single::{leq_p, PCondition};
use scf_harness::enumerate::Bounds;
use scf_harness::oracle::{leq, r_star, s_star, sweep, valid};

#[test]
fn oracle_reads_the_fixtures_like_the_core() {
    let u = u1();
    for p in [p1(&u), w_example(&u), golden_amalgam(&u), PCondition::empty(None)] {
        assert!(valid(&u, &p), "{p}");
    }
    for m in condition_mutants() {
        assert!(!valid(&m.universe, &m.condition), "{}", m.name);
    }
    let g = golden_amalgam(&u);
    assert!(leq(&g, &p1(&u)) && leq(&g, &w_example(&u)));
    assert!(!leq(&p1(&u), &g));
    assert_eq!(leq(&w_example(&u), &p1(&u)), leq_p(&w_example(&u), &p1(&u)));
    let all = u.all_countables();
    assert_eq!(r_star(&u, all).to_vec(), vec![28]);
    assert_eq!(s_star(&u, all).iter().collect::<Vec<_>>(), vec![1]);
}

#[test]
fn sweep_of_the_fixture_finds_no_disagreement() {
    let u = u1();
    let s = sweep(&u, Bounds { max_models: 2, max_dom: 3, max_g: 1, budget: 2_000_000 }, 50_000).unwrap();
    assert!(s.disagreements.is_empty(), "{:?}", &s.disagreements[..s.disagreements.len().min(5)]);
    assert!(s.conditions > 0 && s.order_queries > 0 && s.restriction_queries > 0 && s.lemma_checks > 0);
}
