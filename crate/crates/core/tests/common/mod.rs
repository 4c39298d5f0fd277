#![allow(dead_code)]

use equivch::assembler::{standard_run, AssemblyError, Regime, StandardRun};
use equivch::groupring::{GroupRingElement, PrimeModulus};
use equivch::profiles::PLProfile;
use equivch::rational::{q, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn worked_profile() -> PLProfile {
    PLProfile::new(vec![(q(0, 1), q(10, 1)), (q(9, 25), q(31, 4)), (q(9, 10), q(1, 1))], q(1, 1)).unwrap()
}

pub fn sweep_radii() -> Vec<Rational> {
    vec![q(2, 5), q(2, 7), q(7, 6), q(3, 2), q(5, 2)]
}

/// One standard-family run per admissible orbit picture on `B(R)` whose
/// sphere classes are prime to `k`.
pub fn admissible_runs(radius: &Rational, k: u32) -> Vec<(Regime, StandardRun)> {
    let m0 = radius.recip().floor_i64() as u64;
    let mut regimes = vec![Regime::SingleOrbit];
    regimes.extend((0..m0).map(|origin_class| Regime::WithBlocks { origin_class }));
    regimes
        .into_iter()
        .filter(|r| match r {
            Regime::SingleOrbit => true,
            Regime::WithBlocks { origin_class } => (origin_class + 1..=m0).all(|m| m % k as u64 != 0),
        })
        .filter_map(|r| match standard_run(radius, r) {
            Ok(run) => Some((r, run)),
            Err(AssemblyError::NoAdmissibleParams(_)) => None,
            Err(e) => panic!("standard run for R = {radius}, {r:?}: {e}"),
        })
        .collect()
}

/// A uniformly random unit of `Z_k[T]/(T^k - 1)`.
pub fn random_unit(rng: &mut ChaCha8Rng, modulus: PrimeModulus) -> GroupRingElement {
    let k = modulus.get() as i64;
    loop {
        let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(0..k)).collect();
        let e = GroupRingElement::from_coeffs(modulus, &coeffs).unwrap();
        if e.is_unit() {
            return e;
        }
    }
}

/// Tangency data of a smoothed profile, in floating point.
#[derive(Debug, Clone, Copy)]
pub struct SmoothTangency {
    pub corner: usize,
    pub m: u64,
    pub vertical_intercept: f64,
}

/// Replaces each interior corner `u_i` by the parabola on `[u_i - w, u_i + w]`
/// that joins the adjacent lines with matching slopes, then solves
/// `u - f(u)/f'(u) = 1/(mR)` on every arc by bisection. Slope-zero tangencies
/// (class 0) are reported with `m = 0`.
pub fn smoothed_tangencies(corners: &[(f64, f64)], plateau: f64, radius: f64, width: f64) -> Vec<SmoothTangency> {
    let mut slopes: Vec<f64> = corners.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect();
    slopes.push(0.0);
    assert!((corners.last().unwrap().1 - plateau).abs() < 1e-12);
    let mut out = Vec::new();
    for i in 1..corners.len() {
        let (ui, yi) = corners[i];
        let (sl, sr) = (slopes[i - 1], slopes[i]);
        let start = ui - width;
        let f = |u: f64| yi + sl * (u - ui) + (sr - sl) * (u - start).powi(2) / (4.0 * width);
        let df = |u: f64| sl + (sr - sl) * (u - start) / (2.0 * width);
        let h = |u: f64| u - f(u) / df(u);
        let end = ui + width;
        if sr == 0.0 {
            out.push(SmoothTangency { corner: i, m: 0, vertical_intercept: f(end) });
        }
        // h is monotone on the arc; the slope-zero end sends it to infinity
        let h_start = h(start);
        let h_end = if sr == 0.0 { f64::INFINITY } else { h(end) };
        let (h_lo, h_hi) = if h_start < h_end { (h_start, h_end) } else { (h_end, h_start) };
        let m_max = (1.0 / (h_lo * radius)).floor() as u64;
        for m in 1..=m_max {
            let target = 1.0 / (m as f64 * radius);
            if !(target > h_lo && target < h_hi) {
                continue;
            }
            let (mut a, mut b) = (start, if sr == 0.0 { end - 1e-15 } else { end });
            let increasing = h_start < h_end;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (h(mid) < target) == increasing {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let u = 0.5 * (a + b);
            out.push(SmoothTangency { corner: i, m, vertical_intercept: f(u) - u * df(u) });
        }
    }
    out
}
