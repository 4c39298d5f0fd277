mod common;

use equivch::assembler::{predict_closed_form, verify_against_theorems, GradingParams};
use equivch::groupring::{action_matrix, all_elements, GroupRingElement, PrimeModulus};
use equivch::ladder::{propagate_units, random_commuting_ladder, validate_commutativity, CommutativityVerdict, Direction, LadderSpec, UnitVerdict};
use equivch::profiles::{PLProfile, StandardFamilyParams};
use equivch::rational::{q, Rational};
use equivch::squeeze::{certify_nonsqueezing, cover_radius, fN_image, find_prime_scale};
use proptest::prelude::*;

fn modulus() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(vec![3u32, 5, 7, 11]).prop_map(|k| PrimeModulus::new(k).unwrap())
}

fn element(m: PrimeModulus) -> impl Strategy<Value = GroupRingElement> {
    let k = m.get() as i64;
    prop::collection::vec(0..k, m.size()).prop_map(move |c| GroupRingElement::from_coeffs(m, &c).unwrap())
}

fn rational_in(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (1i64..=30).prop_flat_map(move |d| ((lo * d + 1)..(hi * d)).prop_map(move |n| q(n, d)))
}

proptest! {
    #[test]
    fn unit_iff_nonzero_augmentation((m, a) in modulus().prop_flat_map(|m| (Just(m), element(m)))) {
        let full_rank = action_matrix(&a).rank() == m.size();
        prop_assert_eq!(a.is_unit(), full_rank);
        prop_assert_eq!(a.is_unit(), a.augmentation() != 0);
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.try_mul(&inv).unwrap(), GroupRingElement::one(m));
        }
    }

    #[test]
    fn ring_axioms((a, b, c) in modulus().prop_flat_map(|m| (element(m), element(m), element(m)))) {
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = q(n, d);
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(&back, &r);
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }

    #[test]
    fn standard_profile_round_trip(
        radius in rational_in(0, 3),
        delta_num in 51i64..99,
        c in 3i64..40,
    ) {
        prop_assume!(!radius.recip().is_integer());
        let params = StandardFamilyParams::new(radius, q(delta_num, 100), q(c, 1));
        if let Ok(profile) = equivch::profiles::build_standard_profile(&params) {
            let text = serde_json::to_string(&profile).unwrap();
            prop_assert_eq!(serde_json::from_str::<PLProfile>(&text).unwrap(), profile);
        }
    }

    #[test]
    fn ladder_lemma_random(seed in any::<u64>(), k in prop::sample::select(vec![3u32, 5, 7]), n in 1usize..=3, reversed in any::<bool>()) {
        let dir = if reversed { Direction::BottomToTop } else { Direction::TopToBottom };
        let l = random_commuting_ladder(seed, k, n, dir).unwrap();
        prop_assert_eq!(validate_commutativity(&l).unwrap(), CommutativityVerdict::Ok);
        prop_assert_eq!(propagate_units(&l).unwrap(), UnitVerdict::AllUnits);
        let text = serde_json::to_string(&l).unwrap();
        prop_assert_eq!(serde_json::from_str::<LadderSpec>(&text).unwrap(), l);
    }

    #[test]
    fn prime_scale_is_strict((r1, r2) in (rational_in(1, 4), rational_in(1, 4)).prop_filter("distinct", |(a, b)| a != b)) {
        let (r1, r2) = if r1 > r2 { (r1, r2) } else { (r2, r1) };
        let (k, l) = find_prime_scale(&r1, &r2).unwrap();
        let kl = q(k as i64, l as i64);
        prop_assert!(r2 < kl && kl < r1);
        prop_assert!(l < k);
        // minimality in l: no smaller l has an odd prime in its interval
        for smaller in 1..l {
            let lo = (q(smaller as i64, 1) * &r2).floor_i64() + 1;
            let hi = (q(smaller as i64, 1) * &r1).ceil().try_into().unwrap_or(i64::MAX);
            prop_assert!((lo..hi).all(|c| c < 3 || !is_odd_prime(c as u64)));
        }
    }

    #[test]
    fn fn_image_shrinks(r in rational_in(0, 5), n in 1u64..20) {
        prop_assert!(fN_image(&r, n) < r);
        prop_assert_eq!(fN_image(&r, 0), r.clone());
        prop_assert_eq!(cover_radius(&r, 1), r);
    }
}

fn is_odd_prime(n: u64) -> bool {
    n > 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn certificate_applies_to_intermediate_radii() {
    let (r1, r2) = (q(6, 5), q(21, 20));
    let base = certify_nonsqueezing(1, &r1, &r2, None).unwrap();
    let kl = q(base.k as i64, base.l as i64);
    // every R in [R2, k/l) keeps the same scale
    for i in 0..10 {
        let r = &r2 + (&kl - &r2) * q(i, 10);
        let c = certify_nonsqueezing(1, &r1, &r, Some(base.k)).unwrap();
        assert_eq!((c.k, c.l), (base.k, base.l));
        assert!(c.valid);
    }
}

#[test]
fn closed_form_agrees_with_pipeline_for_n_up_to_3() {
    let profile = common::worked_profile();
    for n in 1..=3 {
        let g = GradingParams::new(n, PrimeModulus::new(5).unwrap());
        let r = verify_against_theorems(&profile, &q(2, 5), &q(1, 8), &g).unwrap();
        assert!(r.passed());
        assert_eq!(r.noneq.nonzero_degrees(), vec![predict_closed_form(n, &q(2, 5)).unwrap().noneq_degree]);
    }
}

#[test]
fn all_elements_counts() {
    let m = PrimeModulus::new(3).unwrap();
    let units = all_elements(m).filter(GroupRingElement::is_unit).count();
    assert_eq!(units, 27 - 9);
}
