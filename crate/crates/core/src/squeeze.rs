//! Non-squeezing certificates and squeezing-room arithmetic.
//!
//! A squeezing of `B(R1) x S^1` into `B(R2) x S^1` lifts through the k-fold
//! cover `(z, t) -> (sqrt(k) z, k t)` to a `Z_k`-equivariant squeezing of the
//! radii `r_i = R_i / k`. Choosing `k` prime and `l` with `R2 < k/l < R1`
//! puts the grading `p = -n - 2nl` where the equivariant homology of the
//! smaller ball is `Z_k` and that of the larger one vanishes.

use serde::{Deserialize, Serialize};

use crate::assembler::{default_window, run_pipeline, standard_run, AssemblyError, GradingParams, Regime};
use crate::groupring::{is_prime, PrimeModulus};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SqueezeError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error("certificate failed: {0}")]
    CertificateFailure(String),
}

/// Upper bound on `k` used for certificates; origin-only complexes never
/// expand to `k x k` matrices, so large primes are cheap.
pub const CERTIFICATE_MODULUS_CAP: u32 = 1_000_003;

fn check_pair(r1: &Rational, r2: &Rational) -> Result<(), SqueezeError> {
    if *r2 <= Rational::one() {
        return Err(SqueezeError::Precondition(format!("R2 = {r2} must exceed 1")));
    }
    if r2 >= r1 {
        return Err(SqueezeError::Precondition(format!("R2 = {r2} must be smaller than R1 = {r1}")));
    }
    Ok(())
}

/// Minimal `l`, then minimal odd prime `k`, with `R2 < k/l < R1`.
pub fn find_prime_scale(r1: &Rational, r2: &Rational) -> Result<(u32, u32), SqueezeError> {
    check_pair(r1, r2)?;
    for l in 1u32.. {
        let lr = Rational::from_integer(l as i64);
        let lo = (&lr * r2).floor() + 1;
        let hi_excl = (&lr * r1).ceil();
        let lo: u64 = u64::try_from(lo).map_err(|_| SqueezeError::Precondition("scale out of range".into()))?;
        let hi: u64 = u64::try_from(hi_excl).map_err(|_| SqueezeError::Precondition("scale out of range".into()))?;
        if let Some(k) = (lo..hi).find(|&k| k > 2 && is_prime(k)) {
            let k = u32::try_from(k).map_err(|_| SqueezeError::Precondition("prime out of range".into()))?;
            if k > CERTIFICATE_MODULUS_CAP {
                return Err(SqueezeError::Precondition(format!("prime {k} exceeds the certificate cap")));
            }
            return Ok((k, l));
        }
    }
    unreachable!("the scale search terminates")
}

fn scale_for_prime(k: u32, r1: &Rational, r2: &Rational) -> Result<u32, SqueezeError> {
    if k < 3 || !is_prime(k as u64) {
        return Err(SqueezeError::Precondition(format!("k = {k} is not an odd prime")));
    }
    let kr = Rational::from_integer(k as i64);
    let l = (&kr / r1).floor() + 1;
    let l: u32 = u32::try_from(l).map_err(|_| SqueezeError::Precondition("scale out of range".into()))?;
    let kl = &kr / Rational::from_integer(l as i64);
    if kl > *r2 && kl < *r1 {
        Ok(l)
    } else {
        Err(SqueezeError::Precondition(format!("no l with {r2} < {k}/l < {r1}")))
    }
}

/// The preimage of `B(R)` under the k-fold cover is `B(R/k)`.
pub fn cover_radius(r: &Rational, k: u32) -> Rational {
    r / Rational::from_integer(k as i64)
}

/// `F_N` maps `B(R) x S^1` into `B(R / (1 + NR)) x S^1`.
#[allow(non_snake_case)]
pub fn fN_image(r: &Rational, n: u64) -> Rational {
    r / (Rational::one() + Rational::from_integer(n as i64) * r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledRun {
    pub radius: Rational,
    pub delta: Rational,
    pub c: Rational,
    pub epsilon: Rational,
    pub origin_degree: i64,
    pub dim_at_p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u32,
    pub requested_r1: Rational,
    pub requested_r2: Rational,
    pub r1: Rational,
    pub r2: Rational,
    pub k: u32,
    pub l: u32,
    pub scaled_r1: Rational,
    pub scaled_r2: Rational,
    pub p: i64,
    pub dims: (usize, usize),
    pub larger: ScaledRun,
    pub smaller: ScaledRun,
    pub narrative: Vec<String>,
    pub valid: bool,
}

impl Certificate {
    /// Re-checks every numerical invariant of the certificate.
    pub fn invariants_hold(&self) -> bool {
        let k = Rational::from_integer(self.k as i64);
        let kl = &k / Rational::from_integer(self.l as i64);
        let l = self.l as i64;
        self.l < self.k
            && self.r2 < kl
            && kl < self.r1
            && self.scaled_r1.recip().floor_i64() < l
            && l <= self.scaled_r2.recip().floor_i64()
            && self.dims == (0, 1)
            && k.recip() < self.scaled_r2
            && self.p == -(self.n as i64) - 2 * self.n as i64 * l
            && self.r1 <= self.requested_r1
            && self.r2 >= self.requested_r2
    }
}

/// Moves `r` toward `target` by halving until `k / r` is not an integer.
fn nudge(r: &Rational, target: &Rational, k: u32) -> Rational {
    let kr = Rational::from_integer(k as i64);
    let mut out = r.clone();
    while (&kr / &out).is_integer() {
        out = out.midpoint(target);
    }
    out
}

fn scaled_run(n: u32, k: PrimeModulus, radius: &Rational, p: i64) -> Result<ScaledRun, SqueezeError> {
    let run = standard_run(radius, Regime::SingleOrbit)?;
    let g = GradingParams::new(n, k);
    let outcome = run_pipeline(&run.profile, radius, &run.epsilon, &g)?;
    let (lo, hi) = default_window(n, radius);
    let table = outcome.complex.equivariant_homology(lo.min(p), hi.max(p)).map_err(AssemblyError::from)?;
    Ok(ScaledRun {
        radius: radius.clone(),
        delta: run.params.delta.clone(),
        c: run.params.c.clone(),
        epsilon: run.epsilon,
        origin_degree: outcome.layout.origin_degree,
        dim_at_p: table.dim(p),
    })
}

pub fn certify_nonsqueezing(
    n: u32,
    r1: &Rational,
    r2: &Rational,
    k_override: Option<u32>,
) -> Result<Certificate, SqueezeError> {
    if n == 0 {
        return Err(SqueezeError::Precondition("n must be positive".into()));
    }
    check_pair(r1, r2)?;
    let (k, l) = match k_override {
        Some(k) => (k, scale_for_prime(k, r1, r2)?),
        None => find_prime_scale(r1, r2)?,
    };
    let modulus = PrimeModulus::with_cap(k, CERTIFICATE_MODULUS_CAP)
        .map_err(|e| SqueezeError::Precondition(e.to_string()))?;
    let kl = Rational::from_integer(k as i64) / Rational::from_integer(l as i64);
    let cert_r1 = nudge(r1, &kl, k);
    let cert_r2 = nudge(r2, &kl, k);
    let s1 = cover_radius(&cert_r1, k);
    let s2 = cover_radius(&cert_r2, k);
    let p = -(n as i64) - 2 * n as i64 * l as i64;
    let larger = scaled_run(n, modulus, &s1, p)?;
    let smaller = scaled_run(n, modulus, &s2, p)?;
    let dims = (larger.dim_at_p, smaller.dim_at_p);
    let narrative = vec![
        format!(
            "Suppose phi squeezes B({cert_r1}) x S^1 into B({cert_r2}) x S^1. Lifting through the {k}-fold cover gives a Z_{k}-equivariant psi with psi(B({s1}) x S^1) inside B({s2}) x S^1."
        ),
        format!("Inclusions: psi(B({s2}) x S^1) in psi(B({s1}) x S^1) in B({s2}) x S^1."),
        format!(
            "In grading p = {p}: the composite CH^Z{k}_p(psi(B({s2}))) -> CH^Z{k}_p(B({s2})) is an isomorphism Z_{k} -> Z_{k} (dim {}), but it factors through CH^Z{k}_p(B({s1})), which has dim {}.",
            dims.1, dims.0
        ),
        format!("An isomorphism Z_{k} -> Z_{k} cannot factor through the zero space, so no such phi exists"),
    ];
    let mut cert = Certificate {
        n,
        requested_r1: r1.clone(),
        requested_r2: r2.clone(),
        r1: cert_r1,
        r2: cert_r2,
        k,
        l,
        scaled_r1: s1,
        scaled_r2: s2,
        p,
        dims,
        larger,
        smaller,
        narrative,
        valid: false,
    };
    cert.valid = cert.invariants_hold();
    if !cert.valid {
        return Err(SqueezeError::CertificateFailure(format!(
            "pipeline dims {:?} at p = {p} for k = {k}, l = {l}",
            cert.dims
        )));
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoomReport {
    pub m: u64,
    pub kappa: u64,
    pub b: u64,
    /// `1/(b+1) < m/kappa < 1/b`.
    pub sandwich_holds: bool,
    /// `1/(b+1) < m/kappa < 1/(b + 1/m)`.
    pub strong_holds: bool,
    pub required_room: Option<Rational>,
    pub ekp_bound: Rational,
    pub construction_bound: Rational,
    /// `(1/b, m/(kappa - m))` when both the sandwich holds and the interval is nonempty.
    pub gap: Option<(Rational, Rational)>,
}

pub fn room_report(m: u64, kappa: u64, b: u64) -> Result<RoomReport, SqueezeError> {
    if m == 0 || m >= kappa || b == 0 {
        return Err(SqueezeError::Precondition(format!("need 0 < m < kappa and b >= 1, got m={m} kappa={kappa} b={b}")));
    }
    let r = |v: u64| Rational::from_integer(v as i64);
    let ratio = r(m) / r(kappa);
    let one = Rational::one();
    let lower = &one / r(b + 1);
    let upper = &one / r(b);
    let strong_upper = &one / (r(b) + r(m).recip());
    let sandwich_holds = lower < ratio && ratio < upper;
    let strong_holds = lower < ratio && ratio < strong_upper;
    let ekp_bound = r(m) / r(kappa - 1);
    let construction_bound = r(m) / r(kappa - m);
    let gap = (sandwich_holds && construction_bound > upper).then(|| (upper.clone(), construction_bound.clone()));
    Ok(RoomReport {
        m,
        kappa,
        b,
        sandwich_holds,
        strong_holds,
        required_room: sandwich_holds.then_some(upper),
        ekp_bound,
        construction_bound,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn prime_scales() {
        assert_eq!(find_prime_scale(&q(6, 5), &q(21, 20)).unwrap(), (7, 6));
        assert_eq!(find_prime_scale(&q(3, 1), &q(2, 1)).unwrap(), (5, 2));
        let (k, l) = find_prime_scale(&q(2, 1), &q(10001, 10000)).unwrap();
        let kl = q(k as i64, l as i64);
        assert!(q(10001, 10000) < kl && kl < q(2, 1));
        assert!(find_prime_scale(&q(21, 20), &q(6, 5)).is_err());
        assert!(find_prime_scale(&q(2, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn cover_and_fn() {
        assert_eq!(cover_radius(&q(6, 5), 7), q(6, 35));
        assert_eq!(cover_radius(&q(21, 20), 7), q(3, 20));
        assert_eq!(cover_radius(&q(5, 3), 1), q(5, 3));
        assert_eq!(fN_image(&q(1, 1), 1), q(1, 2));
        assert_eq!(fN_image(&q(2, 5), 2), q(2, 9));
        assert_eq!(fN_image(&q(7, 3), 0), q(7, 3));
    }

    #[test]
    fn certificate_examples() {
        let c = certify_nonsqueezing(1, &q(6, 5), &q(21, 20), None).unwrap();
        assert_eq!((c.k, c.l, c.p, c.dims), (7, 6, -13, (0, 1)));
        assert!(c.valid);
        let c = certify_nonsqueezing(2, &q(3, 1), &q(2, 1), None).unwrap();
        assert_eq!((c.k, c.l, c.p, c.dims), (5, 2, -10, (0, 1)));
        assert!(certify_nonsqueezing(1, &q(21, 20), &q(6, 5), None).is_err());
    }

    #[test]
    fn integral_inverse_is_nudged() {
        // k/R2 = 7/(7/6) = 6 is an integer
        let c = certify_nonsqueezing(1, &q(3, 2), &q(7, 6), Some(7)).unwrap();
        assert_eq!(c.l, 5);
        assert_eq!(c.requested_r2, q(7, 6));
        assert!(c.r2 > q(7, 6));
        assert!(!(q(7, 1) / &c.r2).is_integer());
        assert!(c.valid);
    }

    #[test]
    fn k_override() {
        let c = certify_nonsqueezing(1, &q(6, 5), &q(21, 20), Some(11)).unwrap();
        assert_eq!((c.k, c.l), (11, 10));
        assert!(certify_nonsqueezing(1, &q(6, 5), &q(21, 20), Some(5)).is_err());
        assert!(certify_nonsqueezing(1, &q(6, 5), &q(21, 20), Some(9)).is_err());
    }

    #[test]
    fn room_examples() {
        let r = room_report(3, 8, 2).unwrap();
        assert!(r.sandwich_holds && r.strong_holds);
        assert_eq!(r.ekp_bound, q(3, 7));
        assert_eq!(r.construction_bound, q(3, 5));
        assert_eq!(r.gap, Some((q(1, 2), q(3, 5))));
        assert!(r.ekp_bound < r.required_room.clone().unwrap());
        let r = room_report(2, 5, 2).unwrap();
        assert!(r.sandwich_holds && !r.strong_holds);
        let r = room_report(1, 2, 3).unwrap();
        assert!(!r.sandwich_holds && r.gap.is_none());
        assert!(room_report(3, 3, 1).is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let c = certify_nonsqueezing(1, &q(6, 5), &q(21, 20), None).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
