//! Structural invariants over randomly generated universes and conditions.

use proptest::prelude::*;
use rand::SeedableRng;

use scf_core::adequacy::{compare, is_adequate, r_star, s_star};
use scf_core::doc::{
    pcond_from_json, pcond_to_json, qcond_from_json, qcond_to_json, universe_from_json, universe_to_json,
};
use scf_core::product::{in_dnq, is_q_condition, leq_q, restrict_q};
use scf_core::single::{in_dn, is_condition, leq_p, restrict_countable};
use scf_core::universe::{validate_universe, CSet, Container};
use scf_harness::gen::{
    draw_universe, into_dn, random_adequate, random_condition, random_q, simple_countables, strengthen_inside, Rng8,
};
use scf_harness::oracle;

fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn universes_are_valid_and_comparison_is_antisymmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = draw_universe(&mut r);
        prop_assert!(validate_universe(&u).all_pass());
        for m in u.cids() {
            prop_assert!(is_adequate(&u, CSet::singleton(m)));
            for n in u.cids() {
                prop_assert_eq!(compare(&u, m, n), compare(&u, n, m).flip());
                prop_assert_eq!(compare(&u, m, n), oracle::relation(&u, m, n));
            }
        }
    }

    #[test]
    fn remainders_agree_with_the_oracle_and_are_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = draw_universe(&mut r);
        let Some(a) = random_adequate(&u, &mut r, None, CSet::EMPTY, 4) else { return Ok(()) };
        prop_assert_eq!(r_star(&u, a), oracle::r_star(&u, a));
        prop_assert_eq!(s_star(&u, a), oracle::s_star(&u, a));
        for m in a.iter() {
            let b = a.without(m);
            prop_assert!(r_star(&u, b).is_subset(r_star(&u, a)));
            prop_assert!(s_star(&u, b).is_subset(s_star(&u, a)));
        }
    }

    #[test]
    fn generated_conditions_are_valid_and_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = draw_universe(&mut r);
        let s = universe_to_json(&u);
        prop_assert_eq!(universe_to_json(&universe_from_json(&s).unwrap()), s);
        if let Some(p) = random_condition(&u, &mut r, None) {
            prop_assert!(is_condition(&u, &p));
            prop_assert!(oracle::valid(&u, &p));
            prop_assert!(leq_p(&p, &p));
            let doc = pcond_to_json(&u, &p);
            let back = pcond_from_json(&u, &doc).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(pcond_to_json(&u, &back), doc);
        }
        if let Some(q) = random_q(&u, &mut r, None) {
            prop_assert!(is_q_condition(&u, &q));
            prop_assert!(leq_q(&q, &q));
            let doc = qcond_to_json(&u, &q);
            prop_assert_eq!(qcond_to_json(&u, &qcond_from_json(&u, &doc).unwrap()), doc);
        }
    }

    #[test]
    fn order_is_transitive_along_strengthenings(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = draw_universe(&mut r);
        let Some(p) = random_condition(&u, &mut r, None) else { return Ok(()) };
        let scope = Container::U(match u.uids().next() { Some(q) => q, None => return Ok(()) });
        let q = strengthen_inside(&u, &mut r, &p, scope, 6);
        let s = strengthen_inside(&u, &mut r, &q, scope, 6);
        prop_assert!(leq_p(&q, &p) && leq_p(&s, &q));
        prop_assert!(leq_p(&s, &p));
        prop_assert_eq!(leq_p(&s, &p), oracle::leq(&s, &p));
        prop_assert_eq!(leq_p(&p, &s), oracle::leq(&p, &s));
    }

    #[test]
    fn countable_restriction_matches_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = draw_universe(&mut r);
        let ns = simple_countables(&u);
        let Some(&n) = ns.first() else { return Ok(()) };
        let Some(p) = scf_harness::gen::condition_with_model(&u, &mut r, n) else { return Ok(()) };
        let Some(p) = into_dn(&u, &p, n) else { return Ok(()) };
        prop_assert!(in_dn(&u, &p, n));
        prop_assert!(oracle::in_d_countable(&u, &p, n));
        let pn = restrict_countable(&u, &p, n).unwrap();
        prop_assert_eq!(&pn, &oracle::restrict(&u, &p, Container::C(n)));
        prop_assert!(is_condition(&u, &pn));
        prop_assert!(leq_p(&p, &pn));
        prop_assert_eq!(oracle::restrict(&u, &pn, Container::C(n)), pn);
    }

    #[test]
    fn product_restriction_is_weaker(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = draw_universe(&mut r);
        let Some(q) = random_q(&u, &mut r, None) else { return Ok(()) };
        for p in u.uids().filter(|&p| u.um(p).simple) {
            let c = Container::U(p);
            if in_dnq(&u, &q, c) {
                let qp = restrict_q(&u, &q, c).unwrap();
                prop_assert!(is_q_condition(&u, &qp));
                prop_assert!(leq_q(&q, &qp));
            }
        }
    }
}
