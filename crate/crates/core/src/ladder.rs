//! Chain-map ladders between two origin-plus-blocks rows.
//!
//! A row is `Z_k -> R -> R -> ... -> R -> 0` with arrows alternating
//! `c_i p(T)` and `(T - 1)`, starting with `c_0 p(T)` out of the trivial head.
//! Arrow `j` leaves module `j` (module 0 is the head). The verticals are
//! `a_0 in Z_k` and `a_j in R` for `j >= 1`. If `a_0 != 0` every `a_j` is a
//! unit; the checks here make that statement testable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::groupring::{action_matrix, GroupRingElement, PrimeModulus, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LadderError {
    #[error("malformed ladder: {0}")]
    Malformed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("square {square} does not commute")]
    NotCommuting { square: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    TopToBottom,
    BottomToTop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRow {
    /// Number of free modules after the trivial head.
    pub free_len: usize,
    /// `c_i` on arrow `2i`; there are `ceil(free_len / 2)` of them.
    pub coefficients: Vec<GroupRingElement>,
}

impl LadderRow {
    pub fn new(free_len: usize, coefficients: Vec<GroupRingElement>) -> Self {
        LadderRow { free_len, coefficients }
    }

    /// All coefficients equal to one.
    pub fn standard(modulus: PrimeModulus, free_len: usize) -> Self {
        LadderRow { free_len, coefficients: vec![GroupRingElement::one(modulus); free_len.div_ceil(2)] }
    }

    /// Multiplier of arrow `j`: `c_{j/2} p` for even `j`, `T - 1` for odd `j`.
    pub fn arrow(&self, j: usize) -> GroupRingElement {
        let m = self.coefficients[0].modulus();
        if j % 2 == 1 {
            GroupRingElement::t_minus_one(m)
        } else {
            self.coefficients[j / 2].try_mul(&GroupRingElement::norm(m)).expect("moduli checked")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderSpec {
    pub modulus: PrimeModulus,
    pub top: LadderRow,
    pub bottom: LadderRow,
    pub a0: u32,
    /// `a_1, a_2, ...`, one per module present in both rows.
    pub verticals: Vec<GroupRingElement>,
    pub direction: Direction,
    /// Label only; the checks do not depend on it.
    pub n_label: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CommutativityVerdict {
    Ok,
    FailingSquare { square: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum UnitVerdict {
    AllUnits,
    /// Index `0` refers to `a_0`. A non-unit with `a_0 != 0` is a counterexample.
    FirstNonUnit { index: usize, counterexample: bool },
}

impl UnitVerdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, UnitVerdict::FirstNonUnit { counterexample: true, .. })
    }
}

impl LadderSpec {
    pub fn overlap(&self) -> usize {
        self.top.free_len.min(self.bottom.free_len)
    }

    pub fn well_formed(&self) -> Result<(), LadderError> {
        let k = self.modulus;
        for (name, row) in [("top", &self.top), ("bottom", &self.bottom)] {
            if row.free_len == 0 {
                return Err(LadderError::Malformed(format!("{name} row has no free modules")));
            }
            if row.coefficients.len() != row.free_len.div_ceil(2) {
                return Err(LadderError::Malformed(format!(
                    "{name} row has {} coefficients, expected {}",
                    row.coefficients.len(),
                    row.free_len.div_ceil(2)
                )));
            }
            if let Some(c) = row.coefficients.iter().find(|c| c.modulus() != k) {
                return Err(RingError::ModulusMismatch(k.get(), c.modulus().get()).into());
            }
        }
        if self.a0 >= k.get() {
            return Err(LadderError::Malformed(format!("a0 = {} is not reduced mod {}", self.a0, k)));
        }
        if self.verticals.len() != self.overlap() {
            return Err(LadderError::Malformed(format!(
                "{} verticals for an overlap of {} modules",
                self.verticals.len(),
                self.overlap()
            )));
        }
        if let Some(a) = self.verticals.iter().find(|a| a.modulus() != k) {
            return Err(RingError::ModulusMismatch(k.get(), a.modulus().get()).into());
        }
        Ok(())
    }

    /// `a_j` as a ring element, with `a_0` embedded as a scalar.
    pub fn vertical(&self, j: usize) -> GroupRingElement {
        if j == 0 {
            GroupRingElement::scalar(self.modulus, self.a0 as i64)
        } else {
            self.verticals[j - 1].clone()
        }
    }

    fn source_target(&self) -> (&LadderRow, &LadderRow) {
        match self.direction {
            Direction::TopToBottom => (&self.top, &self.bottom),
            Direction::BottomToTop => (&self.bottom, &self.top),
        }
    }

    /// Checks `tgt_j a_j == a_{j+1} src_j` for every square inside both rows.
    /// For square 0 both sides are compared through `1 -> R`, which is the same
    /// identity with `a_0` read as a scalar.
    pub fn square_commutes(&self, j: usize) -> bool {
        let (src, tgt) = self.source_target();
        let lhs = tgt.arrow(j).try_mul(&self.vertical(j)).expect("moduli checked");
        let rhs = self.vertical(j + 1).try_mul(&src.arrow(j)).expect("moduli checked");
        lhs == rhs
    }
}

pub fn validate_commutativity(l: &LadderSpec) -> Result<CommutativityVerdict, LadderError> {
    l.well_formed()?;
    for j in 0..l.overlap() {
        if !l.square_commutes(j) {
            return Ok(CommutativityVerdict::FailingSquare { square: j });
        }
    }
    Ok(CommutativityVerdict::Ok)
}

pub fn propagate_units(l: &LadderSpec) -> Result<UnitVerdict, LadderError> {
    if let CommutativityVerdict::FailingSquare { square } = validate_commutativity(l)? {
        return Err(LadderError::NotCommuting { square });
    }
    if l.a0 == 0 {
        return Ok(UnitVerdict::FirstNonUnit { index: 0, counterexample: false });
    }
    for (i, a) in l.verticals.iter().enumerate() {
        if !a.is_unit() {
            return Ok(UnitVerdict::FirstNonUnit { index: i + 1, counterexample: true });
        }
    }
    Ok(UnitVerdict::AllUnits)
}

fn random_nonzero(rng: &mut ChaCha8Rng, k: u32) -> u32 {
    rng.gen_range(1..k)
}

fn random_scalar_units(rng: &mut ChaCha8Rng, modulus: PrimeModulus, count: usize) -> Vec<GroupRingElement> {
    (0..count).map(|_| GroupRingElement::scalar(modulus, random_nonzero(rng, modulus.get()) as i64)).collect()
}

/// A commuting ladder with `2N + 1` free modules on top and `2N` below.
/// `a_0` and the scalar coefficients `c_i in Z_k^*` are uniform; each `a_{j+1}`
/// is uniform over the affine solution space of its square.
pub fn random_commuting_ladder(seed: u64, k: u32, n: usize, direction: Direction) -> Result<LadderSpec, LadderError> {
    let modulus = PrimeModulus::new(k)?;
    if n == 0 || n > 4 {
        return Err(LadderError::Malformed(format!("N = {n} outside 1..=4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a0 = random_nonzero(&mut rng, k);
    let top = LadderRow::new(2 * n + 1, random_scalar_units(&mut rng, modulus, n + 1));
    let bottom = LadderRow::new(2 * n, random_scalar_units(&mut rng, modulus, n));
    let mut spec = LadderSpec { modulus, top, bottom, a0, verticals: Vec::new(), direction, n_label: Some(n) };
    let (src, tgt) = match direction {
        Direction::TopToBottom => (spec.top.clone(), spec.bottom.clone()),
        Direction::BottomToTop => (spec.bottom.clone(), spec.top.clone()),
    };
    for j in 0..2 * n {
        // a_{j+1} src_j = tgt_j a_j is linear in a_{j+1}
        let rhs = tgt.arrow(j).try_mul(&spec.vertical(j))?;
        let a = action_matrix(&src.arrow(j));
        let particular = a.solve(rhs.coeffs()).expect("square always has the scalar solution");
        let mut x: Vec<u64> = particular.iter().map(|&v| v as u64).collect();
        for basis in a.null_space() {
            let t = rng.gen_range(0..k) as u64;
            for (xi, bi) in x.iter_mut().zip(&basis) {
                *xi = (*xi + t * *bi as u64) % k as u64;
            }
        }
        let coeffs: Vec<i64> = x.into_iter().map(|v| v as i64).collect();
        spec.verticals.push(GroupRingElement::from_coeffs(modulus, &coeffs)?);
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveSummary {
    pub k: u32,
    pub n: usize,
    pub direction: Direction,
    pub examined: u64,
    pub commuting: u64,
    pub commuting_with_unit_a0: u64,
    pub counterexamples: u64,
}

/// Every ladder with `2N + 1` free modules on top, `2N` below, coefficients in
/// `Z_k^*` and arbitrary verticals. Feasible for `k = 3, N = 1`.
pub fn exhaustive_check(k: u32, n: usize, direction: Direction) -> Result<ExhaustiveSummary, LadderError> {
    let modulus = PrimeModulus::new(k)?;
    let elements: Vec<GroupRingElement> = crate::groupring::all_elements(modulus).collect();
    let scalars: Vec<GroupRingElement> = (1..k).map(|c| GroupRingElement::scalar(modulus, c as i64)).collect();
    let coeff_choices = |count: usize| -> Vec<Vec<GroupRingElement>> {
        let mut out = vec![Vec::new()];
        for _ in 0..count {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    scalars.iter().map(move |s| {
                        let mut v = prefix.clone();
                        v.push(s.clone());
                        v
                    })
                })
                .collect();
        }
        out
    };
    let vertical_choices = {
        let mut out: Vec<Vec<GroupRingElement>> = vec![Vec::new()];
        for _ in 0..2 * n {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    elements.iter().map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e.clone());
                        v
                    })
                })
                .collect();
        }
        out
    };
    let mut summary = ExhaustiveSummary {
        k,
        n,
        direction,
        examined: 0,
        commuting: 0,
        commuting_with_unit_a0: 0,
        counterexamples: 0,
    };
    for top_c in coeff_choices(n + 1) {
        for bottom_c in coeff_choices(n) {
            for a0 in 0..k {
                for verticals in &vertical_choices {
                    let spec = LadderSpec {
                        modulus,
                        top: LadderRow::new(2 * n + 1, top_c.clone()),
                        bottom: LadderRow::new(2 * n, bottom_c.clone()),
                        a0,
                        verticals: verticals.clone(),
                        direction,
                        n_label: Some(n),
                    };
                    summary.examined += 1;
                    if validate_commutativity(&spec)? != CommutativityVerdict::Ok {
                        continue;
                    }
                    summary.commuting += 1;
                    if a0 != 0 {
                        summary.commuting_with_unit_a0 += 1;
                    }
                    if propagate_units(&spec)?.is_counterexample() {
                        summary.counterexamples += 1;
                    }
                }
            }
        }
    }
    Ok(summary)
}

/// Serialized form: ring elements as coefficient lists `[c_0, ..., c_{k-1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderDoc {
    pub modulus: u32,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub top: RowDoc,
    pub bottom: RowDoc,
    pub a0: u32,
    pub verticals: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDoc {
    pub free_len: usize,
    pub coefficients: Vec<Vec<i64>>,
}

impl From<&LadderSpec> for LadderDoc {
    fn from(l: &LadderSpec) -> Self {
        let el = |e: &GroupRingElement| e.coeffs().iter().map(|&c| c as i64).collect::<Vec<i64>>();
        let row = |r: &LadderRow| RowDoc { free_len: r.free_len, coefficients: r.coefficients.iter().map(el).collect() };
        LadderDoc {
            modulus: l.modulus.get(),
            direction: l.direction,
            n: l.n_label,
            top: row(&l.top),
            bottom: row(&l.bottom),
            a0: l.a0,
            verticals: l.verticals.iter().map(el).collect(),
        }
    }
}

impl TryFrom<LadderDoc> for LadderSpec {
    type Error = LadderError;

    fn try_from(d: LadderDoc) -> Result<Self, LadderError> {
        let modulus = PrimeModulus::new(d.modulus)?;
        let el = |c: &Vec<i64>| GroupRingElement::from_coeffs(modulus, c);
        let row = |r: &RowDoc| -> Result<LadderRow, LadderError> {
            Ok(LadderRow::new(r.free_len, r.coefficients.iter().map(el).collect::<Result<_, _>>()?))
        };
        let spec = LadderSpec {
            modulus,
            top: row(&d.top)?,
            bottom: row(&d.bottom)?,
            a0: d.a0.rem_euclid(d.modulus),
            verticals: d.verticals.iter().map(el).collect::<Result<_, _>>()?,
            direction: d.direction,
            n_label: d.n,
        };
        spec.well_formed()?;
        Ok(spec)
    }
}

impl Serialize for LadderSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LadderDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LadderSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        LadderDoc::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}
