mod common;

use equivch::profiles::{build_standard_profile, extract_orbits, OrbitKind, PLProfile, StandardFamilyParams};
use equivch::rational::{q, Rational};

/// Max intercept error of the smoothed profile against exact extraction, after
/// checking that both find the same (corner, class) pairs.
fn compare(profile: &PLProfile, radius: &Rational, width: f64) -> f64 {
    let exact = extract_orbits(profile, radius).unwrap();
    let mut exact: Vec<(usize, u64, f64)> = exact
        .iter()
        .filter(|o| o.kind != OrbitKind::Origin)
        .map(|o| (o.corner_index, o.m, o.vertical_intercept.to_f64()))
        .collect();
    exact.sort_by_key(|e| (e.0, e.1));
    let corners: Vec<(f64, f64)> = profile.corners().iter().map(|(u, y)| (u.to_f64(), y.to_f64())).collect();
    let mut smooth = common::smoothed_tangencies(&corners, profile.plateau().to_f64(), radius.to_f64(), width);
    smooth.sort_by_key(|t| (t.corner, t.m));
    let keys: Vec<_> = smooth.iter().map(|t| (t.corner, t.m)).collect();
    let exact_keys: Vec<_> = exact.iter().map(|e| (e.0, e.1)).collect();
    assert_eq!(keys, exact_keys, "width {width}");
    smooth.iter().zip(&exact).map(|(s, e)| (s.vertical_intercept - e.2).abs()).fold(0.0, f64::max)
}

#[test]
fn worked_profile_intercepts_converge() {
    let p = common::worked_profile();
    let errs: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|&w| compare(&p, &q(2, 5), w)).collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] < 1e-3, "{errs:?}");
    // first-order convergence in the width
    assert!(errs[1] / errs[0] < 0.2 && errs[2] / errs[1] < 0.2, "{errs:?}");
}

#[test]
fn standard_profile_intercepts_converge() {
    let params = StandardFamilyParams::new(q(2, 7), q(5, 8), q(12, 1));
    let p = build_standard_profile(&params).unwrap();
    let err = compare(&p, &q(2, 7), 1e-5);
    assert!(err < 1e-3, "{err}");
}
