//! Exhaustive identities at desk scale.

use qlag_core::involution::{is_convertible, phi, CaseTag};
use qlag_core::laguerre::{
    laguerre_combinatorial, laguerre_recurrence, linearize_functional, moment_matching,
    moment_motzkin, moment_permutation,
};
use qlag_core::marked::{
    compositions_of, derangement_gf, enumerate_derangements, enumerate_marked, signed_sum,
    MarkedPM,
};
use qlag_core::{Limits, Poly3};

#[test]
fn matching_expansion_equals_recurrence() {
    let limits = Limits::default();
    for n in 0..=6 {
        assert_eq!(
            laguerre_combinatorial(n, &limits).unwrap(),
            laguerre_recurrence(n, &limits).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn three_moment_routes_agree() {
    let limits = Limits::default();
    for n in 0..=7 {
        let motzkin = moment_motzkin(n, &limits).unwrap();
        assert_eq!(moment_permutation(n, &limits).unwrap(), motzkin, "n={n}");
        assert_eq!(moment_matching(n, &limits).unwrap(), motzkin, "n={n}");
        assert!(motzkin.terms().all(|(m, _)| m.x == 0));
    }
}

#[test]
fn linearization_routes_agree_for_every_small_composition() {
    let limits = Limits::default();
    for n in 1..=5 {
        for c in compositions_of(n) {
            let functional = linearize_functional(c.parts(), &limits).unwrap();
            assert_eq!(signed_sum(&c, &limits).unwrap(), functional, "{c}");
            assert_eq!(derangement_gf(&c, &limits).unwrap(), functional, "{c}");
            assert!(functional.terms().all(|(_, coeff)| coeff > 0), "{c}: {functional}");
        }
    }
}

#[test]
fn derangements_as_fully_marked_structures() {
    let limits = Limits::default();
    for n in 1..=6 {
        for c in compositions_of(n) {
            for sigma in enumerate_derangements(&c, &limits).unwrap() {
                let m = MarkedPM::fully_marked(c.clone(), sigma.clone()).unwrap();
                let s = m.stats();
                assert_eq!(s.bwex, sigma.wex());
                assert_eq!(s.q_exponent().unwrap(), sigma.cr());
            }
        }
    }
}

#[test]
fn involution_properties_on_compositions_up_to_five() {
    let limits = Limits::default();
    for n in 1..=5 {
        for c in compositions_of(n) {
            let mut fixed_sum = Poly3::zero();
            for m in enumerate_marked(&c, &limits).unwrap() {
                let (image, trace) = phi(&m).unwrap();
                let (back, _) = phi(&image).unwrap();
                assert_eq!(back, m);
                if trace.case == CaseTag::Case0 {
                    assert!(m.is_derangement());
                    fixed_sum.add_assign(&m.signed_term().unwrap()).unwrap();
                    continue;
                }
                let toggled = trace.toggled_edge.unwrap();
                assert!(is_convertible(&m, toggled).unwrap());
                assert_eq!(m.stats().bwex, image.stats().bwex);
                assert_eq!(m.stats().q_exponent(), image.stats().q_exponent());
                assert_eq!(m.stats().e.abs_diff(image.stats().e), 1);
            }
            assert_eq!(fixed_sum, derangement_gf(&c, &limits).unwrap(), "{c}");
        }
    }
}
