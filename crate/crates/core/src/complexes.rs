//! Bounded graded complexes of `R`-modules and their (equivariant) homology.
//!
//! A complex stores, per degree, a list of summands that are either free
//! (`R`) or trivial (`Z_k` with `T` acting as the identity). The differential
//! `d_m : C_m -> C_{m-1}` is a sparse matrix of group ring entries whose
//! meaning depends on the generator kinds:
//!
//! | source  | target  | entry `e` means            |
//! |---------|---------|----------------------------|
//! | free    | free    | `x -> e x`                 |
//! | trivial | free    | `1 -> e` (needs `(T-1)e = 0`) |
//! | free    | trivial | `x -> e(1) x(1)`           |
//! | trivial | trivial | multiplication by `e(1)`   |
//!
//! Homology is taken over `Z_k` after expanding every entry into its matrix.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Serialize;

use crate::groupring::{action_matrix, GroupRingElement, PrimeModulus};
use crate::linalg::FpMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EquivariantModule {
    /// `R^r`: underlying dimension `r k`, `T` permuting each block cyclically.
    Free(usize),
    /// `Z_k^d` with trivial action.
    Trivial(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorKind {
    Free,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexViolation {
    #[error("d o d is nonzero on degree {degree}")]
    NotSquareZero { degree: i64 },
    #[error("d_{degree} does not commute with the T-action")]
    NotEquivariant { degree: i64 },
    #[error("d_{degree} has an entry ({row}, {col}) outside the generator range")]
    EntryOutOfRange { degree: i64, row: usize, col: usize },
    #[error("d_{degree} has an entry over the wrong modulus")]
    ModulusMismatch { degree: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    Invalid(#[from] ComplexViolation),
    #[error("window [{lo}, {hi}] is empty")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("equivariant homology did not stabilize between depths {depth} and {depth_plus}: degree {degree} gave {first} vs {second}")]
    NotStabilized { depth: usize, depth_plus: usize, degree: i64, first: usize, second: usize },
}

/// Result container for a homology computation over a closed degree window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub window: (i64, i64),
    pub dims: BTreeMap<i64, usize>,
    /// Two truncation depths agreed. Always `true` for non-equivariant tables.
    pub stabilized: bool,
}

impl HomologyTable {
    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&m, _)| m).collect()
    }
}

/// Generator counts and positions for one degree, after expansion over `Z_k`.
#[derive(Debug, Clone)]
struct Layout {
    kinds: Vec<GeneratorKind>,
    offsets: Vec<usize>,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRComplex {
    modulus: PrimeModulus,
    modules: BTreeMap<i64, Vec<EquivariantModule>>,
    /// `diffs[m][(t, s)]` is the entry of `d_m` from generator `s` of degree
    /// `m` to generator `t` of degree `m - 1`.
    diffs: BTreeMap<i64, BTreeMap<(usize, usize), GroupRingElement>>,
}

impl GradedRComplex {
    pub fn new(modulus: PrimeModulus) -> Self {
        GradedRComplex { modulus, modules: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Appends a summand in `degree`; returns the range of generator indices it occupies.
    pub fn add_module(&mut self, degree: i64, module: EquivariantModule) -> Range<usize> {
        let start = self.generator_count(degree);
        let len = match module {
            EquivariantModule::Free(r) => r,
            EquivariantModule::Trivial(d) => d,
        };
        self.modules.entry(degree).or_default().push(module);
        start..start + len
    }

    /// Sets the entry of `d_degree` from `source` (in `degree`) to `target` (in `degree - 1`).
    pub fn set_entry(&mut self, degree: i64, target: usize, source: usize, e: GroupRingElement) {
        let slot = self.diffs.entry(degree).or_default();
        if e.is_zero() {
            slot.remove(&(target, source));
        } else {
            slot.insert((target, source), e);
        }
    }

    pub fn entry(&self, degree: i64, target: usize, source: usize) -> Option<&GroupRingElement> {
        self.diffs.get(&degree).and_then(|m| m.get(&(target, source)))
    }

    pub fn modules(&self, degree: i64) -> &[EquivariantModule] {
        self.modules.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.modules.values().all(|v| v.is_empty())
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut nonempty = self.modules.iter().filter(|(_, v)| v.iter().any(|m| module_len(*m) > 0)).map(|(&d, _)| d);
        let first = nonempty.next()?;
        let last = nonempty.next_back().unwrap_or(first);
        Some((first, last))
    }

    pub fn generator_kinds(&self, degree: i64) -> Vec<GeneratorKind> {
        self.modules(degree)
            .iter()
            .flat_map(|m| match *m {
                EquivariantModule::Free(r) => std::iter::repeat(GeneratorKind::Free).take(r),
                EquivariantModule::Trivial(d) => std::iter::repeat(GeneratorKind::Trivial).take(d),
            })
            .collect()
    }

    pub fn generator_count(&self, degree: i64) -> usize {
        self.modules(degree).iter().map(|m| module_len(*m)).sum()
    }

    /// `dim_{Z_k} C_m`.
    pub fn zk_dim(&self, degree: i64) -> usize {
        self.layout(degree).dim
    }

    fn layout(&self, degree: i64) -> Layout {
        let k = self.modulus.size();
        let kinds = self.generator_kinds(degree);
        let mut offsets = Vec::with_capacity(kinds.len());
        let mut dim = 0;
        for kind in &kinds {
            offsets.push(dim);
            dim += match kind {
                GeneratorKind::Free => k,
                GeneratorKind::Trivial => 1,
            };
        }
        Layout { kinds, offsets, dim }
    }

    /// `d_m` expanded to a `dim C_{m-1} x dim C_m` matrix over `Z_k`.
    pub fn expanded_differential(&self, degree: i64) -> FpMatrix {
        let src = self.layout(degree);
        let tgt = self.layout(degree - 1);
        self.expand_with(degree, &src, &tgt)
    }

    fn expand_with(&self, degree: i64, src: &Layout, tgt: &Layout) -> FpMatrix {
        let k = self.modulus.size();
        let mut out = FpMatrix::zeros(self.modulus.get(), tgt.dim, src.dim);
        let Some(entries) = self.diffs.get(&degree) else {
            return out;
        };
        for (&(t, s), e) in entries {
            let (Some(&tk), Some(&sk)) = (tgt.kinds.get(t), src.kinds.get(s)) else {
                continue;
            };
            let (r0, c0) = (tgt.offsets[t], src.offsets[s]);
            match (sk, tk) {
                (GeneratorKind::Free, GeneratorKind::Free) => {
                    let block = action_matrix(e);
                    for i in 0..k {
                        for j in 0..k {
                            out.set(r0 + i, c0 + j, block.get(i, j));
                        }
                    }
                }
                (GeneratorKind::Trivial, GeneratorKind::Free) => {
                    for (i, &c) in e.coeffs().iter().enumerate() {
                        out.set(r0 + i, c0, c);
                    }
                }
                (GeneratorKind::Free, GeneratorKind::Trivial) => {
                    let a = e.augmentation();
                    for j in 0..k {
                        out.set(r0, c0 + j, a);
                    }
                }
                (GeneratorKind::Trivial, GeneratorKind::Trivial) => out.set(r0, c0, e.augmentation()),
            }
        }
        out
    }

    /// Matrix of the generator `T` on `C_m`.
    pub fn t_action(&self, degree: i64) -> FpMatrix {
        let lay = self.layout(degree);
        let k = self.modulus.size();
        let mut out = FpMatrix::zeros(self.modulus.get(), lay.dim, lay.dim);
        for (kind, &off) in lay.kinds.iter().zip(&lay.offsets) {
            match kind {
                GeneratorKind::Free => {
                    for j in 0..k {
                        out.set(off + (j + 1) % k, off + j, 1);
                    }
                }
                GeneratorKind::Trivial => out.set(off, off, 1),
            }
        }
        out
    }

    /// Confirms `d o d = 0` and `d T = T d` in every degree; reports the first offending degree.
    pub fn validate(&self) -> Result<(), ComplexViolation> {
        for (&m, entries) in &self.diffs {
            let src_n = self.generator_count(m);
            let tgt_n = self.generator_count(m - 1);
            for (&(t, s), e) in entries {
                if t >= tgt_n || s >= src_n {
                    return Err(ComplexViolation::EntryOutOfRange { degree: m, row: t, col: s });
                }
                if e.modulus() != self.modulus {
                    return Err(ComplexViolation::ModulusMismatch { degree: m });
                }
            }
        }
        let Some((lo, hi)) = self.degree_range() else {
            return Ok(());
        };
        for m in lo..=hi {
            let d = self.expanded_differential(m);
            let lhs = d.mul(&self.t_action(m));
            let rhs = self.t_action(m - 1).mul(&d);
            if lhs != rhs {
                return Err(ComplexViolation::NotEquivariant { degree: m });
            }
        }
        for m in lo + 1..=hi {
            let dd = self.expanded_differential(m - 1).mul(&self.expanded_differential(m));
            if !dd.is_zero() {
                return Err(ComplexViolation::NotSquareZero { degree: m });
            }
        }
        Ok(())
    }

    /// Non-equivariant homology over `Z_k` on the closed window `[lo, hi]`.
    pub fn homology(&self, lo: i64, hi: i64) -> Result<HomologyTable, ComplexError> {
        if lo > hi {
            return Err(ComplexError::EmptyWindow { lo, hi });
        }
        self.validate()?;
        Ok(self.homology_unchecked(lo, hi))
    }

    fn homology_unchecked(&self, lo: i64, hi: i64) -> HomologyTable {
        let ranks: BTreeMap<i64, usize> = (lo..=hi + 1).map(|m| (m, self.expanded_differential(m).rank())).collect();
        let dims = (lo..=hi).map(|m| (m, self.zk_dim(m) - ranks[&m] - ranks[&(m + 1)])).collect();
        HomologyTable { window: (lo, hi), dims, stabilized: true }
    }

    /// Shifts every degree by `by`.
    pub fn shifted(&self, by: i64) -> GradedRComplex {
        GradedRComplex {
            modulus: self.modulus,
            modules: self.modules.iter().map(|(&d, v)| (d + by, v.clone())).collect(),
            diffs: self.diffs.iter().map(|(&d, v)| (d + by, v.clone())).collect(),
        }
    }

    /// Direct sum with `other` placed after this complex's generators in each degree.
    /// Returns the generator offsets of `other` per degree.
    pub fn append(&mut self, other: &GradedRComplex) -> BTreeMap<i64, usize> {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut offsets = BTreeMap::new();
        let degrees: Vec<i64> = other.modules.keys().copied().collect();
        for &d in &degrees {
            offsets.insert(d, self.generator_count(d));
        }
        for &d in &degrees {
            for &m in other.modules(d) {
                self.add_module(d, m);
            }
        }
        for (&d, entries) in &other.diffs {
            let so = offsets.get(&d).copied().unwrap_or_else(|| self.generator_count(d));
            let to = offsets.get(&(d - 1)).copied().unwrap_or_else(|| self.generator_count(d - 1));
            for (&(t, s), e) in entries {
                self.set_entry(d, t + to, s + so, e.clone());
            }
        }
        offsets
    }

    /// `C (x)_R Z_k`: every generator becomes trivial and entries act through augmentation.
    pub fn coinvariants(&self) -> GradedRComplex {
        let mut out = GradedRComplex::new(self.modulus);
        for (&d, mods) in &self.modules {
            let n: usize = mods.iter().map(|m| module_len(*m)).sum();
            out.add_module(d, EquivariantModule::Trivial(n));
        }
        for (&d, entries) in &self.diffs {
            let src = self.generator_kinds(d);
            let tgt = self.generator_kinds(d - 1);
            for (&(t, s), e) in entries {
                // 1 -> e for a trivial source into a free target is e = c p(T); it dies.
                let a = match (src.get(s), tgt.get(t)) {
                    (Some(GeneratorKind::Trivial), Some(GeneratorKind::Free)) => 0,
                    _ => e.augmentation(),
                };
                out.set_entry(d, t, s, GroupRingElement::scalar(self.modulus, a as i64));
            }
        }
        out
    }

    /// Total complex of `C (x)_R E` where `E` is the periodic resolution truncated at `depth`.
    pub fn tensor_with_resolution(&self, depth: usize) -> GradedRComplex {
        let res = ResolutionTruncation::new(self.modulus, depth);
        let mut out = GradedRComplex::new(self.modulus);
        // index[(j, i)] = generator offset of C_j (x) E_i inside total degree j + i
        let mut index: BTreeMap<(i64, usize), usize> = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else {
            return out;
        };
        for total in lo..=hi + depth as i64 {
            for j in lo..=hi {
                let i = total - j;
                if i < 0 || i > depth as i64 {
                    continue;
                }
                let start = out.generator_count(total);
                for &m in self.modules(j) {
                    out.add_module(total, m);
                }
                index.insert((j, i as usize), start);
            }
        }
        for (&j, entries) in &self.diffs {
            for i in 0..=depth {
                let (Some(&so), Some(&to)) = (index.get(&(j, i)), index.get(&(j - 1, i))) else {
                    continue;
                };
                let total = j + i as i64;
                for (&(t, s), e) in entries {
                    out.set_entry(total, t + to, s + so, e.clone());
                }
            }
        }
        let kinds_by_degree: BTreeMap<i64, Vec<GeneratorKind>> = (lo..=hi).map(|j| (j, self.generator_kinds(j))).collect();
        for j in lo..=hi {
            let sign_negative = j.rem_euclid(2) == 1;
            for i in 1..=depth {
                let (Some(&so), Some(&to)) = (index.get(&(j, i)), index.get(&(j, i - 1))) else {
                    continue;
                };
                let mult = res.multiplier(i);
                let mult = if sign_negative { mult.neg() } else { mult.clone() };
                let total = j + i as i64;
                for (g, kind) in kinds_by_degree[&j].iter().enumerate() {
                    // On trivial summands both (T-1) and p(T) act as zero.
                    if *kind == GeneratorKind::Free {
                        out.set_entry(total, to + g, so + g, mult.clone());
                    }
                }
            }
        }
        out
    }

    /// `Z_k`-equivariant homology on `[lo, hi]`: homology of the resolution
    /// total complex at depth `D0 = hi - min_degree + 2`, cross-checked at `D0 + 2`.
    pub fn equivariant_homology(&self, lo: i64, hi: i64) -> Result<HomologyTable, ComplexError> {
        if lo > hi {
            return Err(ComplexError::EmptyWindow { lo, hi });
        }
        self.validate()?;
        let Some((min_deg, _)) = self.degree_range() else {
            let dims = (lo..=hi).map(|m| (m, 0)).collect();
            return Ok(HomologyTable { window: (lo, hi), dims, stabilized: true });
        };
        let depth = (hi - min_deg + 2).max(2) as usize;
        let first = self.tensor_with_resolution(depth).homology_unchecked(lo, hi);
        let second = self.tensor_with_resolution(depth + 2).homology_unchecked(lo, hi);
        for m in lo..=hi {
            let (a, b) = (first.dim(m), second.dim(m));
            if a != b {
                return Err(ComplexError::NotStabilized { depth, depth_plus: depth + 2, degree: m, first: a, second: b });
            }
        }
        Ok(HomologyTable { stabilized: true, ..first })
    }
}

fn module_len(m: EquivariantModule) -> usize {
    match m {
        EquivariantModule::Free(r) => r,
        EquivariantModule::Trivial(d) => d,
    }
}

/// The periodic free resolution of the trivial module, truncated after `depth` steps:
/// `R <-(T-1)- R <-p(T)- R <-(T-1)- ...`, with `maps[i-1]` the map out of `E_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTruncation {
    pub modulus: PrimeModulus,
    pub depth: usize,
    pub maps: Vec<GroupRingElement>,
}

impl ResolutionTruncation {
    pub fn new(modulus: PrimeModulus, depth: usize) -> Self {
        let tm1 = GroupRingElement::t_minus_one(modulus);
        let norm = GroupRingElement::norm(modulus);
        let maps = (1..=depth).map(|i| if i % 2 == 1 { tm1.clone() } else { norm.clone() }).collect();
        ResolutionTruncation { modulus, depth, maps }
    }

    /// Multiplier of `E_i -> E_{i-1}`, `i >= 1`.
    pub fn multiplier(&self, i: usize) -> &GroupRingElement {
        &self.maps[i - 1]
    }
}

/// Equivariant Morse complex of the perturbed function on `S^{2n-1}`:
/// `R` in degrees `0..2n-1`, with `d_i = T - 1` for odd `i` and `p(T)` for even `i`.
pub fn morse_block(n: u32, modulus: PrimeModulus) -> GradedRComplex {
    assert!(n >= 1, "sphere dimension parameter must be positive");
    let mut c = GradedRComplex::new(modulus);
    let top = 2 * n as i64 - 1;
    for deg in 0..=top {
        c.add_module(deg, EquivariantModule::Free(1));
    }
    for deg in 1..=top {
        c.set_entry(deg, 0, 0, block_differential(deg, modulus));
    }
    c
}

/// `d_i` inside a Morse block, by local degree.
pub fn block_differential(local_degree: i64, modulus: PrimeModulus) -> GroupRingElement {
    if local_degree.rem_euclid(2) == 1 {
        GroupRingElement::t_minus_one(modulus)
    } else {
        GroupRingElement::norm(modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn km(k: u32) -> PrimeModulus {
        PrimeModulus::new(k).unwrap()
    }

    fn dims(t: &HomologyTable) -> Vec<usize> {
        t.dims.values().copied().collect()
    }

    #[test]
    fn morse_block_homology_is_that_of_a_sphere() {
        for n in 1..=3u32 {
            for k in [3u32, 5, 7] {
                let c = morse_block(n, km(k));
                assert_eq!(c.validate(), Ok(()));
                let h = c.homology(0, 2 * n as i64 - 1).unwrap();
                let mut expected = vec![0; 2 * n as usize];
                expected[0] = 1;
                expected[2 * n as usize - 1] = 1;
                assert_eq!(dims(&h), expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn morse_block_examples() {
        let h = morse_block(1, km(5)).homology(0, 1).unwrap();
        assert_eq!(dims(&h), vec![1, 1]);
        let h = morse_block(2, km(3)).homology(0, 3).unwrap();
        assert_eq!(dims(&h), vec![1, 0, 0, 1]);
    }

    #[test]
    fn degree_zero_of_small_block_has_trivial_action() {
        // H_0 = coker(T - 1) = R/(T-1): the T-action on the quotient is the identity.
        let k = km(3);
        let c = morse_block(1, k);
        let d1 = c.expanded_differential(1);
        let t = c.t_action(0);
        // (T - I) maps C_0 into the image of d_1.
        let diff = {
            let mut m = t.clone();
            for i in 0..3 {
                m.add_at(i, i, 2);
            }
            m
        };
        for col in 0..3 {
            let v: Vec<u32> = (0..3).map(|r| diff.get(r, col)).collect();
            assert!(d1.solve(&v).is_some());
        }
    }

    #[test]
    fn validate_reports_square_nonzero() {
        let k = km(3);
        let mut c = GradedRComplex::new(k);
        for d in 0..3 {
            c.add_module(d, EquivariantModule::Free(1));
        }
        c.set_entry(1, 0, 0, GroupRingElement::t_minus_one(k));
        c.set_entry(2, 0, 0, GroupRingElement::t_minus_one(k));
        assert_eq!(c.validate(), Err(ComplexViolation::NotSquareZero { degree: 2 }));
        assert!(matches!(c.homology(0, 2), Err(ComplexError::Invalid(_))));
    }

    #[test]
    fn validate_reports_non_equivariant_trivial_to_free() {
        let k = km(5);
        let mut c = GradedRComplex::new(k);
        c.add_module(1, EquivariantModule::Trivial(1));
        c.add_module(0, EquivariantModule::Free(1));
        c.set_entry(1, 0, 0, GroupRingElement::one(k));
        assert_eq!(c.validate(), Err(ComplexViolation::NotEquivariant { degree: 1 }));
        c.set_entry(1, 0, 0, GroupRingElement::norm(k).scale(3));
        assert_eq!(c.validate(), Ok(()));
    }

    #[test]
    fn empty_complex_is_valid() {
        let c = GradedRComplex::new(km(3));
        assert_eq!(c.validate(), Ok(()));
        let h = c.homology(-2, 2).unwrap();
        assert!(h.nonzero_degrees().is_empty());
        let h = c.equivariant_homology(-2, 2).unwrap();
        assert!(h.nonzero_degrees().is_empty());
    }

    #[test]
    fn single_trivial_summand() {
        let mut c = GradedRComplex::new(km(5));
        c.add_module(-3, EquivariantModule::Trivial(1));
        let h = c.homology(-6, 2).unwrap();
        assert_eq!(h.nonzero_degrees(), vec![-3]);
        let t = c.tensor_with_resolution(4);
        assert_eq!(t.degree_range(), Some((-3, 1)));
        for m in -3..=1 {
            assert_eq!(t.generator_kinds(m), vec![GeneratorKind::Trivial]);
            assert!(t.expanded_differential(m).is_zero());
        }
        let eq = c.equivariant_homology(-6, 2).unwrap();
        for m in -6..=2 {
            assert_eq!(eq.dim(m), usize::from(m >= -3), "m={m}");
        }
        assert!(eq.stabilized);
    }

    #[test]
    fn tensoring_a_free_module_reproduces_the_resolution() {
        let k = km(3);
        let mut c = GradedRComplex::new(k);
        c.add_module(0, EquivariantModule::Free(1));
        let t = c.tensor_with_resolution(3);
        assert_eq!(t.degree_range(), Some((0, 3)));
        assert_eq!(t.entry(1, 0, 0), Some(&GroupRingElement::t_minus_one(k)));
        assert_eq!(t.entry(2, 0, 0), Some(&GroupRingElement::norm(k)));
        assert_eq!(t.entry(3, 0, 0), Some(&GroupRingElement::t_minus_one(k)));
        assert_eq!(t.validate(), Ok(()));
    }

    #[test]
    fn total_differential_squares_to_zero() {
        for (n, k) in [(1u32, 3u32), (2, 5), (3, 3)] {
            let c = morse_block(n, km(k)).shifted(-4);
            for depth in [1usize, 2, 5] {
                assert_eq!(c.tensor_with_resolution(depth).validate(), Ok(()), "n={n} k={k} D={depth}");
            }
        }
    }

    #[test]
    fn equivariant_homology_of_free_block_equals_coinvariant_homology() {
        let c = morse_block(1, km(5)).shifted(-5);
        let eq = c.equivariant_homology(-7, 0).unwrap();
        let co = c.coinvariants().homology(-7, 0).unwrap();
        assert_eq!(eq.dims, co.dims);
        assert_eq!(eq.nonzero_degrees(), vec![-5, -4]);
        for (n, k) in [(2u32, 3u32), (3, 7)] {
            let c = morse_block(n, km(k)).shifted(-3);
            let eq = c.equivariant_homology(-6, 4).unwrap();
            assert_eq!(eq.dims, c.coinvariants().homology(-6, 4).unwrap().dims);
        }
    }

    #[test]
    fn bad_window() {
        let c = morse_block(1, km(3));
        assert_eq!(c.homology(2, 1), Err(ComplexError::EmptyWindow { lo: 2, hi: 1 }));
    }

    #[test]
    fn append_offsets_generators() {
        let k = km(3);
        let mut a = morse_block(1, k);
        let b = morse_block(1, k).shifted(1);
        let offs = a.append(&b);
        assert_eq!(offs[&1], 1);
        assert_eq!(a.generator_count(1), 2);
        assert_eq!(a.entry(2, 1, 0), Some(&GroupRingElement::t_minus_one(k)));
        assert_eq!(a.validate(), Ok(()));
    }
}
