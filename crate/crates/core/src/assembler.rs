//! From an orbit window to the chain complex: the origin generator (a trivial
//! `Z_k` summand) followed by shifted Morse blocks, one per sphere family,
//! joined by `c_j p(T)` connecting maps.
//!
//! Grading: a sphere family of class `m` contributes a block whose bottom
//! degree is `-n - 2nm`; the origin sits one above the top of the first block,
//! at `-n - 2n m_or` where `m_or` counts the classes whose intercept `1/(mR)`
//! lies beyond the leftmost segment's horizontal intercept.

use serde::Serialize;

use crate::complexes::{morse_block, ComplexError, EquivariantModule, GradedRComplex, HomologyTable};
use crate::groupring::{GroupRingElement, PrimeModulus};
use crate::profiles::{
    build_standard_profile, check_inverse_radius, extract_orbits, filter_window, OrbitFamilyRecord, OrbitKind, PLProfile,
    ProfileError, StandardFamilyParams,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssemblyError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("non-standard layout: {0}")]
    NonStandardLayout(String),
    #[error("non-free action: class m = {m} is divisible by k = {k}")]
    NonFreeAction { m: u64, k: u32 },
    #[error("no admissible parameters: {0}")]
    NoAdmissibleParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradingParams {
    pub n: u32,
    pub k: PrimeModulus,
}

impl GradingParams {
    pub fn new(n: u32, k: PrimeModulus) -> Self {
        assert!(n >= 1, "n must be positive");
        GradingParams { n, k }
    }

    /// `-n - 2nm`.
    pub fn class_degree(&self, m: u64) -> i64 {
        let n = self.n as i64;
        -n - 2 * n * m as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub origin_degree: i64,
    /// `m_or`, so that `origin_degree = -n - 2n m_or`.
    pub origin_class: u64,
    pub block_ms: Vec<u64>,
    /// `c_0` connects the origin to the first block, `c_j` block `j - 1` to block `j`.
    #[serde(serialize_with = "serialize_units")]
    pub connecting_units: Vec<GroupRingElement>,
}

fn serialize_units<S: serde::Serializer>(units: &[GroupRingElement], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(units.len()))?;
    for u in units {
        seq.serialize_element(&u.to_string())?;
    }
    seq.end()
}

impl BlockLayout {
    pub fn block_bottom(&self, g: &GradingParams, index: usize) -> i64 {
        g.class_degree(self.block_ms[index])
    }

    pub fn block_top(&self, g: &GradingParams, index: usize) -> i64 {
        self.block_bottom(g, index) + 2 * g.n as i64 - 1
    }

    /// Shape checks: contiguity, degree adjacency, free action, unit count.
    pub fn validate(&self, g: &GradingParams) -> Result<(), AssemblyError> {
        let k = g.k.get();
        for &m in &self.block_ms {
            if m % k as u64 == 0 {
                return Err(AssemblyError::NonFreeAction { m, k });
            }
        }
        if self.origin_degree != g.class_degree(self.origin_class) {
            return Err(AssemblyError::NonStandardLayout(format!(
                "origin degree {} does not match class {}",
                self.origin_degree, self.origin_class
            )));
        }
        for (i, &m) in self.block_ms.iter().enumerate() {
            if m != self.origin_class + 1 + i as u64 {
                return Err(AssemblyError::NonStandardLayout(format!(
                    "block classes {:?} are not contiguous from {}",
                    self.block_ms,
                    self.origin_class + 1
                )));
            }
        }
        if !self.block_ms.is_empty() && self.block_top(g, 0) != self.origin_degree - 1 {
            return Err(AssemblyError::NonStandardLayout("first block is not adjacent to the origin".into()));
        }
        for i in 1..self.block_ms.len() {
            if self.block_top(g, i) != self.block_bottom(g, i - 1) - 1 {
                return Err(AssemblyError::NonStandardLayout(format!("blocks {} and {} are not adjacent", i - 1, i)));
            }
        }
        if self.connecting_units.len() != self.block_ms.len() {
            return Err(AssemblyError::NonStandardLayout(format!(
                "{} connecting units for {} blocks",
                self.connecting_units.len(),
                self.block_ms.len()
            )));
        }
        if self.connecting_units.iter().any(|u| u.modulus() != g.k) {
            return Err(AssemblyError::NonStandardLayout("connecting unit over the wrong modulus".into()));
        }
        Ok(())
    }

    pub fn with_units(mut self, units: Vec<GroupRingElement>) -> Self {
        self.connecting_units = units;
        self
    }

    /// Lowest degree carrying a generator.
    pub fn bottom_degree(&self, g: &GradingParams) -> i64 {
        match self.block_ms.last() {
            Some(&m) => g.class_degree(m),
            None => self.origin_degree,
        }
    }
}

/// Assigns Conley-Zehnder degrees to the orbits inside an action window.
pub fn assign_degrees(
    window: &[OrbitFamilyRecord],
    profile: &PLProfile,
    radius: &Rational,
    g: &GradingParams,
) -> Result<BlockLayout, AssemblyError> {
    check_inverse_radius(radius)?;
    let origins = window.iter().filter(|o| o.kind == OrbitKind::Origin).count();
    if origins != 1 {
        return Err(AssemblyError::NonStandardLayout(format!("expected one origin orbit in the window, found {origins}")));
    }
    if window.iter().any(|o| o.kind == OrbitKind::Plateau) {
        return Err(AssemblyError::NonStandardLayout("plateau orbit inside the window".into()));
    }
    let mut ms: Vec<u64> = window.iter().filter(|o| o.kind == OrbitKind::Sphere).map(|o| o.m).collect();
    ms.sort_unstable();
    if ms.windows(2).any(|w| w[0] == w[1]) {
        return Err(AssemblyError::NonStandardLayout(format!("repeated sphere classes {ms:?}")));
    }
    let k = g.k.get() as u64;
    if let Some(&m) = ms.iter().find(|&&m| m % k == 0) {
        return Err(AssemblyError::NonFreeAction { m, k: g.k.get() });
    }
    // m_or = #{m >= 1 : 1/(mR) > h_left} = ceil(1/(h_left R)) - 1
    let h_left = profile.segment_intercept(0);
    let bound: num_bigint::BigInt = (&h_left * radius).recip().ceil() - 1;
    let origin_class: u64 = u64::try_from(bound)
        .map_err(|_| AssemblyError::NonStandardLayout("origin class out of range".into()))?;
    let layout = BlockLayout {
        origin_degree: g.class_degree(origin_class),
        origin_class,
        connecting_units: vec![GroupRingElement::one(g.k); ms.len()],
        block_ms: ms,
    };
    layout.validate(g)?;
    Ok(layout)
}

/// Origin generator, shifted Morse blocks, and `c_j p(T)` connecting maps.
pub fn build_complex(layout: &BlockLayout, g: &GradingParams) -> Result<GradedRComplex, AssemblyError> {
    layout.validate(g)?;
    build_complex_unchecked(layout, g)
}

fn build_complex_unchecked(layout: &BlockLayout, g: &GradingParams) -> Result<GradedRComplex, AssemblyError> {
    let k = g.k;
    let norm = GroupRingElement::norm(k);
    let mut c = GradedRComplex::new(k);
    c.add_module(layout.origin_degree, EquivariantModule::Trivial(1));
    let block = morse_block(g.n, k);
    let mut previous_bottom = layout.origin_degree;
    for (i, unit) in layout.connecting_units.iter().enumerate().take(layout.block_ms.len()) {
        let bottom = layout.block_bottom(g, i);
        c.append(&block.shifted(bottom));
        let connector = unit.try_mul(&norm).expect("moduli checked");
        // each degree holds a single generator
        c.set_entry(previous_bottom, 0, 0, connector);
        previous_bottom = bottom;
    }
    c.validate().map_err(ComplexError::from)?;
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedFormPrediction {
    /// The only degree with nonzero non-equivariant homology.
    pub noneq_degree: i64,
    /// Equivariant homology is `Z_k` from here upward.
    pub equivariant_threshold: i64,
}

pub fn predict_closed_form(n: u32, radius: &Rational) -> Result<ClosedFormPrediction, AssemblyError> {
    if !radius.is_positive() {
        return Err(ProfileError::InvalidParams(format!("R must be positive, got {radius}")).into());
    }
    check_inverse_radius(radius)?;
    let m0 = radius.recip().floor_i64();
    let n = n as i64;
    let d = -n - 2 * n * m0;
    Ok(ClosedFormPrediction { noneq_degree: d, equivariant_threshold: d })
}

/// Default comparison window `[-n - 2n([1/R] + 1), -n + 1]`.
pub fn default_window(n: u32, radius: &Rational) -> (i64, i64) {
    let n_i = n as i64;
    let m0 = radius.recip().floor_i64();
    (-n_i - 2 * n_i * (m0 + 1), -n_i + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineOutcome {
    pub orbits: Vec<OrbitFamilyRecord>,
    pub window_orbits: Vec<OrbitFamilyRecord>,
    pub layout: BlockLayout,
    #[serde(skip)]
    pub complex: GradedRComplex,
}

/// Extraction, windowing, degree assignment and assembly in one call.
pub fn run_pipeline(
    profile: &PLProfile,
    radius: &Rational,
    epsilon: &Rational,
    g: &GradingParams,
) -> Result<PipelineOutcome, AssemblyError> {
    let orbits = extract_orbits(profile, radius)?;
    let window_orbits = filter_window(&orbits, epsilon)?;
    let layout = assign_degrees(&window_orbits, profile, radius, g)?;
    let complex = build_complex(&layout, g)?;
    Ok(PipelineOutcome { orbits, window_orbits, layout, complex })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: u32,
    pub k: u32,
    pub radius: Rational,
    pub prediction: ClosedFormPrediction,
    pub layout: BlockLayout,
    pub noneq: HomologyTable,
    pub equiv: HomologyTable,
    pub noneq_matches: bool,
    pub equiv_matches: bool,
    /// `R > 1/k`, the hypothesis under which the equivariant prediction is claimed.
    pub equivariant_hypothesis: bool,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.noneq_matches && self.equiv_matches
    }
}

/// Runs the full pipeline and compares both homology tables with the closed forms.
pub fn verify_against_theorems(
    profile: &PLProfile,
    radius: &Rational,
    epsilon: &Rational,
    g: &GradingParams,
) -> Result<TheoremReport, AssemblyError> {
    let outcome = run_pipeline(profile, radius, epsilon, g)?;
    verify_layout(outcome.layout, radius, g, default_window(g.n, radius))
}

/// Same comparison for a layout whose connecting units were chosen by the caller.
/// The units are not required to be units, so that negative controls can be built.
pub fn verify_layout(
    layout: BlockLayout,
    radius: &Rational,
    g: &GradingParams,
    window: (i64, i64),
) -> Result<TheoremReport, AssemblyError> {
    let prediction = predict_closed_form(g.n, radius)?;
    let complex = build_complex(&layout, g)?;
    let (lo, hi) = window;
    let noneq = complex.homology(lo, hi)?;
    let equiv = complex.equivariant_homology(lo, hi)?;
    let noneq_matches = (lo..=hi).all(|m| noneq.dim(m) == usize::from(m == prediction.noneq_degree));
    let equiv_matches = (lo..=hi).all(|m| equiv.dim(m) == usize::from(m >= prediction.equivariant_threshold));
    let equivariant_hypothesis = *radius > Rational::from_integer(g.k.get() as i64).recip();
    Ok(TheoremReport {
        n: g.n,
        k: g.k.get(),
        radius: radius.clone(),
        prediction,
        layout,
        noneq,
        equiv,
        noneq_matches,
        equiv_matches,
        equivariant_hypothesis,
    })
}

/// Which orbit picture to aim for when choosing standard-family parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Only the origin orbit in the window (`delta > [1/R] R`).
    SingleOrbit,
    /// Upper-corner sphere families of classes `origin_class + 1 ..= [1/R]` as well.
    WithBlocks { origin_class: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardRun {
    pub params: StandardFamilyParams,
    pub profile: PLProfile,
    pub epsilon: Rational,
    pub orbits: Vec<OrbitFamilyRecord>,
}

/// Picks `delta`, `c` and a window `epsilon` so that the standard profile on
/// `B(R)` realizes `regime`: `delta` is the midpoint of its admissible interval
/// and `c` the first integer past the explicit lower bounds for which the
/// extraction is non-degenerate and the window separates the upper corner
/// orbits from the lower ones.
pub fn standard_run(radius: &Rational, regime: Regime) -> Result<StandardRun, AssemblyError> {
    if !radius.is_positive() {
        return Err(ProfileError::InvalidParams(format!("R must be positive, got {radius}")).into());
    }
    check_inverse_radius(radius)?;
    let m0 = radius.recip().floor_i64() as u64;
    let origin_class = match regime {
        Regime::SingleOrbit => m0,
        Regime::WithBlocks { origin_class } if origin_class < m0 => origin_class,
        Regime::WithBlocks { origin_class } => {
            return Err(AssemblyError::NoAdmissibleParams(format!(
                "origin class {origin_class} leaves no sphere blocks below [1/R] = {m0}"
            )))
        }
    };
    let one = Rational::one();
    let half = Rational::new(1, 2);
    let lo = (Rational::from_integer(origin_class as i64) * radius).max(half);
    let hi = (Rational::from_integer(origin_class as i64 + 1) * radius).min(one.clone());
    if lo >= hi {
        return Err(AssemblyError::NoAdmissibleParams(format!(
            "no delta in (1/2, 1) with [delta/R] = {origin_class} for R = {radius}"
        )));
    }
    let delta = lo.midpoint(&hi);

    // mid-segment intercept b + 1/(2 c delta) must exceed t = 1/((m0+1)R),
    // and c (1 - m0 R) > 3 keeps the window clear of the lower corner.
    let two = Rational::from_integer(2);
    let t = (Rational::from_integer(m0 as i64 + 1) * radius).recip();
    let gap = &one - Rational::from_integer(m0 as i64) * radius;
    let bound_mid = (&two * &delta - &one) / (&two * &delta * (&one - &t));
    let bound_gap = Rational::from_integer(3) / &gap;
    let start = Rational::from_integer(2).max(bound_mid).max(bound_gap).floor() + 1;
    let mut c = Rational::from_big(start, 1.into());
    for _ in 0..256 {
        let params = StandardFamilyParams::new(radius.clone(), delta.clone(), c.clone());
        if let Ok(run) = try_standard(&params, origin_class, m0) {
            return Ok(run);
        }
        c = c + Rational::one();
    }
    Err(AssemblyError::NoAdmissibleParams(format!("no integer c found for R = {radius}, delta = {delta}")))
}

fn try_standard(params: &StandardFamilyParams, origin_class: u64, m0: u64) -> Result<StandardRun, AssemblyError> {
    let profile = build_standard_profile(params)?;
    let orbits = extract_orbits(&profile, &params.radius)?;
    let epsilon = separating_epsilon(&orbits, &profile)
        .ok_or_else(|| AssemblyError::NoAdmissibleParams("upper and lower corner actions overlap".into()))?;
    let upper: Vec<u64> = orbits.iter().filter(|o| o.kind == OrbitKind::Sphere && o.corner_index == 1).map(|o| o.m).collect();
    let expected: Vec<u64> = (origin_class + 1..=m0).collect();
    if upper != expected {
        return Err(AssemblyError::NoAdmissibleParams(format!("upper corner classes {upper:?}, wanted {expected:?}")));
    }
    if !params.warnings(Some(&epsilon)).is_empty() {
        return Err(AssemblyError::NoAdmissibleParams("c too small for the window".into()));
    }
    Ok(StandardRun { params: params.clone(), profile, epsilon, orbits })
}

/// Midpoint between the largest action of orbits away from the last corner and
/// the smallest action at the last corner, if the former is smaller.
pub fn separating_epsilon(orbits: &[OrbitFamilyRecord], profile: &PLProfile) -> Option<Rational> {
    let last = profile.corners().len() - 1;
    let upper = orbits.iter().filter(|o| o.corner_index < last).map(|o| o.action.clone()).max()?;
    let lower = orbits.iter().filter(|o| o.corner_index == last).map(|o| o.action.clone()).min()?;
    (upper < lower).then(|| upper.midpoint(&lower))
}
