//! Piecewise-linear radial Hamiltonian profiles and the closed Reeb orbits
//! they carry.
//!
//! A profile is a decreasing PL function of `u = pi|z|^2 / R` given by its
//! corners, constant (the plateau) after the last corner. Orbit families are
//! read off from generalized tangent lines: at a corner any line through the
//! corner whose slope lies between the two adjacent slopes counts as tangent.
//! A sphere family of multiplicity class `m` sits at a corner exactly when the
//! horizontal intercept `1/(mR)` lies strictly inside the range swept by
//! those lines.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("invalid profile: {0}")]
    Invalid(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate standard profile: {0}")]
    DegenerateGeometry(String),
    #[error("1/R = {0} is a positive integer")]
    IntegralInverseRadius(Rational),
    #[error("degenerate profile: the line of segment {segment} has horizontal intercept exactly 1/(mR) for m = {m}")]
    DegenerateIntercept { m: u64, segment: usize },
    #[error("epsilon = {0} is the action of a closed orbit")]
    CriticalValue(Rational),
}

/// A decreasing piecewise-linear profile starting at `u = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileDoc", into = "ProfileDoc")]
pub struct PLProfile {
    corners: Vec<(Rational, Rational)>,
    plateau: Rational,
}

#[derive(Serialize, Deserialize)]
struct ProfileDoc {
    corners: Vec<(Rational, Rational)>,
    plateau: Rational,
}

impl TryFrom<ProfileDoc> for PLProfile {
    type Error = ProfileError;
    fn try_from(d: ProfileDoc) -> Result<Self, Self::Error> {
        PLProfile::new(d.corners, d.plateau)
    }
}

impl From<PLProfile> for ProfileDoc {
    fn from(p: PLProfile) -> Self {
        ProfileDoc { corners: p.corners, plateau: p.plateau }
    }
}

impl PLProfile {
    pub fn new(corners: Vec<(Rational, Rational)>, plateau: Rational) -> Result<Self, ProfileError> {
        let bad = |s: String| Err(ProfileError::Invalid(s));
        if corners.len() < 2 {
            return bad("need at least two corners".into());
        }
        if !corners[0].0.is_zero() {
            return bad(format!("first corner must be at u = 0, got {}", corners[0].0));
        }
        if !plateau.is_positive() {
            return bad(format!("plateau must be positive, got {plateau}"));
        }
        for w in corners.windows(2) {
            if w[1].0 <= w[0].0 {
                return bad(format!("u must increase strictly ({} then {})", w[0].0, w[1].0));
            }
            if w[1].1 >= w[0].1 {
                return bad(format!("values must decrease strictly ({} then {})", w[0].1, w[1].1));
            }
        }
        if corners.last().unwrap().1 != plateau {
            return bad(format!("last corner value {} differs from plateau {}", corners.last().unwrap().1, plateau));
        }
        let p = PLProfile { corners, plateau };
        for i in 1..p.corners.len() {
            if p.slope_after(i) == p.slope_before(i) {
                return bad(format!("corner {i} is not a genuine corner (equal slopes)"));
            }
        }
        Ok(p)
    }

    pub fn corners(&self) -> &[(Rational, Rational)] {
        &self.corners
    }

    pub fn plateau(&self) -> &Rational {
        &self.plateau
    }

    /// Number of linear segments before the plateau.
    pub fn segment_count(&self) -> usize {
        self.corners.len() - 1
    }

    /// Slope of segment `i` (between corners `i` and `i + 1`); zero on the plateau.
    pub fn slope(&self, segment: usize) -> Rational {
        if segment >= self.segment_count() {
            return Rational::zero();
        }
        let (u0, y0) = &self.corners[segment];
        let (u1, y1) = &self.corners[segment + 1];
        (y1 - y0) / (u1 - u0)
    }

    fn slope_before(&self, corner: usize) -> Rational {
        self.slope(corner - 1)
    }

    fn slope_after(&self, corner: usize) -> Rational {
        self.slope(corner)
    }

    /// Horizontal intercept of the line extending segment `i`.
    pub fn segment_intercept(&self, segment: usize) -> Rational {
        let (u, y) = &self.corners[segment];
        u - y / self.slope(segment)
    }

    pub fn value_at(&self, u: &Rational) -> Rational {
        assert!(!u.is_negative(), "profile evaluated at negative u");
        for seg in 0..self.segment_count() {
            let (u0, y0) = &self.corners[seg];
            let (u1, _) = &self.corners[seg + 1];
            if u <= u1 {
                return y0 + self.slope(seg) * (u - u0);
            }
        }
        self.plateau.clone()
    }

    pub fn scaled(&self, factor: &Rational) -> PLProfile {
        PLProfile {
            corners: self.corners.iter().map(|(u, y)| (u.clone(), y * factor)).collect(),
            plateau: &self.plateau * factor,
        }
    }
}

/// `b = f(c)` for the standard family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum BRule {
    /// `f(c) = 1 - 1/c`.
    #[default]
    OneMinusInverse,
    /// `f(c) = 1 - s/c`.
    OneMinusScaledInverse(Rational),
}

impl BRule {
    pub fn eval(&self, c: &Rational) -> Rational {
        match self {
            BRule::OneMinusInverse => Rational::one() - c.recip(),
            BRule::OneMinusScaledInverse(s) => Rational::one() - s / c,
        }
    }
}

/// Parameters of the three-piece family `F_c` on `B(R)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFamilyParams {
    pub radius: Rational,
    pub delta: Rational,
    pub c: Rational,
    #[serde(default)]
    pub b_rule: BRule,
}

impl StandardFamilyParams {
    pub fn new(radius: Rational, delta: Rational, c: Rational) -> Self {
        StandardFamilyParams { radius, delta, c, b_rule: BRule::default() }
    }

    pub fn b(&self) -> Rational {
        self.b_rule.eval(&self.c)
    }

    /// `m_0 = [1/R]`.
    pub fn m0(&self) -> i64 {
        self.radius.recip().floor_i64()
    }

    fn check(&self) -> Result<(), ProfileError> {
        let bad = |s: String| Err(ProfileError::InvalidParams(s));
        if !self.radius.is_positive() {
            return bad(format!("R must be positive, got {}", self.radius));
        }
        check_inverse_radius(&self.radius)?;
        if !(self.delta.is_positive() && self.delta < Rational::one()) {
            return bad(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        if self.c <= Rational::one() {
            return bad(format!("c must exceed 1, got {}", self.c));
        }
        Ok(())
    }

    /// Soft checks that do not block construction.
    pub fn warnings(&self, epsilon: Option<&Rational>) -> Vec<String> {
        let mut w = Vec::new();
        if let Some(eps) = epsilon {
            let bound = Rational::from_integer(2) / eps;
            if self.c <= bound {
                w.push(format!("c = {} does not exceed 2/epsilon = {}", self.c, bound));
            }
        }
        w
    }
}

pub(crate) fn check_inverse_radius(radius: &Rational) -> Result<(), ProfileError> {
    let inv = radius.recip();
    if inv.is_integer() && inv.is_positive() {
        return Err(ProfileError::IntegralInverseRadius(inv));
    }
    Ok(())
}

/// Corners `(0, c)`, `(a, F(a))`, `(b, 1)` with plateau `1`: a left piece of
/// slope `-c delta` through `(0, c)`, a middle piece of twice that slope
/// through `(b, 1)`, then flat.
pub fn build_standard_profile(p: &StandardFamilyParams) -> Result<PLProfile, ProfileError> {
    p.check()?;
    let one = Rational::one();
    let two = Rational::from_integer(2);
    let b = p.b();
    if !(b.is_positive() && b < one) {
        return Err(ProfileError::DegenerateGeometry(format!("b = f(c) = {b} must lie in (0, 1)")));
    }
    let cd = &p.c * &p.delta;
    // c - cd u = 1 - 2cd (u - b)  =>  u = (1 + 2 cd b - c) / cd
    let a = (&one + &two * &cd * &b - &p.c) / &cd;
    if !a.is_positive() {
        return Err(ProfileError::DegenerateGeometry(format!("corner a = {a} violates a > 0")));
    }
    if a >= b {
        return Err(ProfileError::DegenerateGeometry(format!("corner a = {a} violates a < b = {b}")));
    }
    let ya = &p.c - &cd * &a;
    PLProfile::new(vec![(Rational::zero(), p.c.clone()), (a, ya), (b, one.clone())], one)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitKind {
    /// The isolated orbit `{0} x S^1`.
    Origin,
    /// An `S^{2n-1}`-family at a corner, class `m >= 1`.
    Sphere,
    /// The horizontal tangent (class 0) at the corner bordering the plateau.
    Plateau,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitFamilyRecord {
    pub kind: OrbitKind,
    pub m: u64,
    pub corner_index: usize,
    pub tangent_slope: Rational,
    pub vertical_intercept: Rational,
    pub action: Rational,
    pub u_location: Rational,
}

impl OrbitFamilyRecord {
    /// `-s / (y - u s)` at the record's corner; equals `mR` for sphere records.
    pub fn tangency_value(&self, profile: &PLProfile) -> Rational {
        let (u, y) = &profile.corners()[self.corner_index];
        -&self.tangent_slope / (y - u * &self.tangent_slope)
    }
}

/// Closed Reeb orbit families of the (limit of smoothings of the) profile on `B(R)`.
pub fn extract_orbits(profile: &PLProfile, radius: &Rational) -> Result<Vec<OrbitFamilyRecord>, ProfileError> {
    if !radius.is_positive() {
        return Err(ProfileError::InvalidParams(format!("R must be positive, got {radius}")));
    }
    check_inverse_radius(radius)?;
    // Any segment line hitting 1/(mR) exactly makes the sweep endpoint ambiguous.
    for seg in 0..profile.segment_count() {
        let h = profile.segment_intercept(seg);
        let m_exact = (&h * radius).recip();
        if m_exact.is_integer() && m_exact.is_positive() {
            let m = m_exact.floor().try_into().unwrap_or(u64::MAX);
            return Err(ProfileError::DegenerateIntercept { m, segment: seg });
        }
    }

    let corners = profile.corners();
    let mut out = Vec::new();
    let c0 = corners[0].1.clone();
    out.push(OrbitFamilyRecord {
        kind: OrbitKind::Origin,
        m: 0,
        corner_index: 0,
        tangent_slope: profile.slope(0),
        action: c0.recip(),
        vertical_intercept: c0,
        u_location: Rational::zero(),
    });

    let last = corners.len() - 1;
    for (i, (u, y)) in corners.iter().enumerate().skip(1) {
        let h_left = profile.segment_intercept(i - 1);
        let h_right = if i == last { None } else { Some(profile.segment_intercept(i)) };
        let (lo, hi) = match &h_right {
            None => (h_left.clone(), None),
            Some(hr) if *hr < h_left => (hr.clone(), Some(h_left.clone())),
            Some(hr) => (h_left.clone(), Some(hr.clone())),
        };
        // lo < 1/(mR) < hi  <=>  1/(hi R) < m < 1/(lo R)
        let upper = (&lo * radius).recip();
        let m_max: num_bigint::BigInt = upper.ceil() - 1;
        let one = num_bigint::BigInt::from(1);
        let m_min = match &hi {
            None => one,
            Some(h) => {
                let above: num_bigint::BigInt = (h * radius).recip().floor() + &one;
                above.max(one)
            }
        };
        let mut m = m_min;
        while m <= m_max {
            let m_u: u64 = (&m).try_into().expect("multiplicity class out of range");
            let h = (Rational::from_big(m.clone(), 1.into()) * radius).recip();
            let cm = y * &h / (&h - u);
            let slope = -(&cm / &h);
            out.push(OrbitFamilyRecord {
                kind: OrbitKind::Sphere,
                m: m_u,
                corner_index: i,
                tangent_slope: slope,
                action: cm.recip(),
                vertical_intercept: cm,
                u_location: u.clone(),
            });
            m += 1;
        }
        if i == last {
            out.push(OrbitFamilyRecord {
                kind: OrbitKind::Plateau,
                m: 0,
                corner_index: i,
                tangent_slope: Rational::zero(),
                action: profile.plateau().recip(),
                vertical_intercept: profile.plateau().clone(),
                u_location: u.clone(),
            });
        }
    }
    Ok(out)
}

/// Records with action strictly below `epsilon`; `epsilon` must not be an action.
pub fn filter_window(orbits: &[OrbitFamilyRecord], epsilon: &Rational) -> Result<Vec<OrbitFamilyRecord>, ProfileError> {
    if orbits.iter().any(|o| &o.action == epsilon) {
        return Err(ProfileError::CriticalValue(epsilon.clone()));
    }
    Ok(orbits.iter().filter(|o| &o.action < epsilon).cloned().collect())
}

/// Largest `eta` with `eta (1 - delta u) <= profile(u)` for all `u >= 0`.
pub fn compute_eta(profile: &PLProfile, delta: &Rational) -> Result<Rational, ProfileError> {
    if !(delta.is_positive() && *delta < Rational::one()) {
        return Err(ProfileError::InvalidParams(format!("delta must lie in (0, 1), got {delta}")));
    }
    let limit = delta.recip();
    let best = profile
        .corners()
        .iter()
        .filter(|(u, _)| *u < limit)
        .map(|(u, y)| y / (Rational::one() - delta * u))
        .min()
        .expect("the corner at u = 0 always qualifies");
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileOrder {
    /// First profile is pointwise `<=` the second.
    Le,
    Ge,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientComparison {
    pub order: ProfileOrder,
    pub equal: bool,
}

/// Pointwise order of `P1(w / R1)` against `P2(w / R2)` in the ambient
/// coordinate `w = pi|z|^2`. Both are PL in `w`, so comparing at the union of
/// breakpoints and on the plateau tails is exact.
pub fn compare_profiles_ambient(p1: &PLProfile, r1: &Rational, p2: &PLProfile, r2: &Rational) -> AmbientComparison {
    let mut ws: Vec<Rational> = p1.corners().iter().map(|(u, _)| u * r1).chain(p2.corners().iter().map(|(u, _)| u * r2)).collect();
    ws.sort();
    ws.dedup();
    let mut less = false;
    let mut greater = false;
    let mut note = |o: Ordering| match o {
        Ordering::Less => less = true,
        Ordering::Greater => greater = true,
        Ordering::Equal => {}
    };
    for w in &ws {
        note(p1.value_at(&(w / r1)).cmp(&p2.value_at(&(w / r2))));
    }
    note(p1.plateau().cmp(p2.plateau()));
    let order = match (less, greater) {
        (true, true) => ProfileOrder::Incomparable,
        (false, true) => ProfileOrder::Ge,
        _ => ProfileOrder::Le,
    };
    AmbientComparison { order, equal: !less && !greater }
}

/// Checks `F_upper / 2 <= F_lower` pointwise in `u` and
/// `f(c_upper) < f(c_lower) + 1 / (2 c_upper delta)`.
pub fn family_monotonicity_check(lower: &StandardFamilyParams, upper: &StandardFamilyParams) -> Result<bool, ProfileError> {
    if lower.radius != upper.radius || lower.delta != upper.delta || lower.b_rule != upper.b_rule {
        return Err(ProfileError::InvalidParams("monotonicity check needs equal R, delta and b-rule".into()));
    }
    let f_lo = build_standard_profile(lower)?;
    let f_hi = build_standard_profile(upper)?;
    let half = Rational::new(1, 2);
    let half_hi = f_hi.scaled(&half);
    let mut us: Vec<Rational> = f_lo.corners().iter().chain(f_hi.corners()).map(|(u, _)| u.clone()).collect();
    us.sort();
    us.dedup();
    let pointwise = us.iter().all(|u| half_hi.value_at(u) <= f_lo.value_at(u)) && half_hi.plateau() <= f_lo.plateau();
    let increment = Rational::one() / (Rational::from_integer(2) * &upper.c * &upper.delta);
    let b_ok = upper.b() < lower.b() + increment;
    Ok(pointwise && b_ok)
}
