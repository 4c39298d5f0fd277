//! The group ring `R = Z_k[T]/(T^k - 1)` for an odd prime `k`.
//!
//! Elements are stored densely as `k` residues (coefficients of
//! `1, T, ..., T^{k-1}`). Multiplication by a fixed element is the `k x k`
//! circulant matrix returned by [`action_matrix`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::FpMatrix;

/// Default upper bound on `k` for modules that expand to `k x k` blocks.
pub const DEFAULT_MODULUS_CAP: u32 = 97;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus 2 is not supported; k must be an odd prime")]
    EvenPrime,
    #[error("modulus {k} exceeds the configured cap {cap}")]
    AboveCap { k: u32, cap: u32 },
    #[error("group ring elements over different moduli ({0} vs {1})")]
    ModulusMismatch(u32, u32),
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An odd prime `k`, the order of the cyclic group acting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(k: u32) -> Result<Self, RingError> {
        Self::with_cap(k, DEFAULT_MODULUS_CAP)
    }

    pub fn with_cap(k: u32, cap: u32) -> Result<Self, RingError> {
        if k == 2 {
            return Err(RingError::EvenPrime);
        }
        if !is_prime(k as u64) {
            return Err(RingError::NotPrime(k));
        }
        if k > cap {
            return Err(RingError::AboveCap { k, cap });
        }
        Ok(PrimeModulus(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }
}

impl<'de> Deserialize<'de> for PrimeModulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let k = u32::deserialize(d)?;
        PrimeModulus::with_cap(k, u32::MAX).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    modulus: PrimeModulus,
    coeffs: Vec<u32>,
}

impl GroupRingElement {
    pub fn from_coeffs(modulus: PrimeModulus, coeffs: &[i64]) -> Result<Self, RingError> {
        let k = modulus.size();
        if coeffs.len() != k {
            return Err(RingError::WrongLength { expected: k, got: coeffs.len() });
        }
        let kk = modulus.get() as i64;
        Ok(GroupRingElement { modulus, coeffs: coeffs.iter().map(|&c| c.rem_euclid(kk) as u32).collect() })
    }

    /// Builds `sum c_i T^{e_i}` from sparse terms; exponents wrap mod `k`.
    pub fn from_terms(modulus: PrimeModulus, terms: &[(i64, u64)]) -> Self {
        let k = modulus.get();
        let mut coeffs = vec![0u32; k as usize];
        for &(c, e) in terms {
            let slot = (e % k as u64) as usize;
            coeffs[slot] = ((coeffs[slot] as i64 + c).rem_euclid(k as i64)) as u32;
        }
        GroupRingElement { modulus, coeffs }
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        GroupRingElement { modulus, coeffs: vec![0; modulus.size()] }
    }

    pub fn scalar(modulus: PrimeModulus, c: i64) -> Self {
        Self::from_terms(modulus, &[(c, 0)])
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::scalar(modulus, 1)
    }

    /// `T^e`.
    pub fn t_pow(modulus: PrimeModulus, e: u64) -> Self {
        Self::from_terms(modulus, &[(1, e)])
    }

    /// `T - 1`.
    pub fn t_minus_one(modulus: PrimeModulus) -> Self {
        Self::from_terms(modulus, &[(1, 1), (-1, 0)])
    }

    /// The norm element `p(T) = T^{k-1} + ... + T + 1`.
    pub fn norm(modulus: PrimeModulus) -> Self {
        GroupRingElement { modulus, coeffs: vec![1; modulus.size()] }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Augmentation `a(1)`, the image under `T -> 1`.
    pub fn augmentation(&self) -> u32 {
        let k = self.modulus.get() as u64;
        (self.coeffs.iter().map(|&c| c as u64).sum::<u64>() % k) as u32
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.modulus != other.modulus {
            return Err(RingError::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let k = self.modulus.get();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + b) % k).collect();
        Ok(GroupRingElement { modulus: self.modulus, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let k = self.modulus.get();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + k - b) % k).collect();
        Ok(GroupRingElement { modulus: self.modulus, coeffs })
    }

    /// Cyclic convolution of coefficient vectors, reduced mod `k`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let k = self.modulus.size();
        let p = self.modulus.get() as u64;
        let mut acc = vec![0u64; k];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let slot = (i + j) % k;
                acc[slot] = (acc[slot] + a as u64 * b as u64) % p;
            }
        }
        Ok(GroupRingElement { modulus: self.modulus, coeffs: acc.into_iter().map(|c| c as u32).collect() })
    }

    pub fn scale(&self, c: u32) -> Self {
        let k = self.modulus.get() as u64;
        let coeffs = self.coeffs.iter().map(|&a| (a as u64 * c as u64 % k) as u32).collect();
        GroupRingElement { modulus: self.modulus, coeffs }
    }

    pub fn neg(&self) -> Self {
        let k = self.modulus.get();
        GroupRingElement { modulus: self.modulus, coeffs: self.coeffs.iter().map(|&a| (k - a) % k).collect() }
    }

    /// Unit test via the local-ring criterion: `R` is local with maximal
    /// ideal `(T - 1)`, so `a` is a unit iff `a(1) != 0`.
    pub fn is_unit(&self) -> bool {
        self.augmentation() != 0
    }

    /// Inverse of a unit, found by solving `M_a x = 1`.
    pub fn inverse(&self) -> Option<Self> {
        let m = action_matrix(self);
        let mut e0 = vec![0u32; self.modulus.size()];
        e0[0] = 1;
        let x = m.solve(&e0)?;
        Some(GroupRingElement { modulus: self.modulus, coeffs: x })
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "T".to_string(),
                (1, c) => format!("{c}T"),
                (e, 1) => format!("T^{e}"),
                (e, c) => format!("{c}T^{e}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod (k={})", self, self.modulus)
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

/// Multiplication by `a` as a `k x k` matrix in the basis `1, T, ..., T^{k-1}`.
/// Column `j` holds the coefficients of `a * T^j`.
pub fn action_matrix(a: &GroupRingElement) -> FpMatrix {
    let k = a.modulus.size();
    let mut m = FpMatrix::zeros(a.modulus.get(), k, k);
    for j in 0..k {
        for (i, &c) in a.coeffs.iter().enumerate() {
            m.set((i + j) % k, j, c);
        }
    }
    m
}

/// `dim_{Z_k} { x in R : a x = 0 }`.
pub fn kernel_dim(a: &GroupRingElement) -> usize {
    a.modulus.size() - action_matrix(a).rank()
}

/// Free-function spelling of ring multiplication.
pub fn gr_mul(a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement, RingError> {
    a.try_mul(b)
}

pub fn gr_is_unit(a: &GroupRingElement) -> bool {
    a.is_unit()
}

/// Every element of `R`, in lexicographic coefficient order. Only sensible for tiny `k`.
pub fn all_elements(modulus: PrimeModulus) -> impl Iterator<Item = GroupRingElement> {
    let k = modulus.size();
    let kk = modulus.get() as u64;
    let total = kk.pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = vec![0u32; k];
        for c in coeffs.iter_mut() {
            *c = (idx % kk) as u32;
            idx /= kk;
        }
        GroupRingElement { modulus, coeffs }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn km(k: u32) -> PrimeModulus {
        PrimeModulus::new(k).unwrap()
    }

    /// Inverse search by brute force over all of `R`; independent of the
    /// augmentation criterion.
    fn has_inverse_brute(a: &GroupRingElement) -> bool {
        let one = GroupRingElement::one(a.modulus());
        all_elements(a.modulus()).any(|b| a.try_mul(&b).unwrap() == one)
    }

    #[test]
    fn modulus_construction() {
        assert_eq!(PrimeModulus::new(2), Err(RingError::EvenPrime));
        assert_eq!(PrimeModulus::new(9), Err(RingError::NotPrime(9)));
        assert_eq!(PrimeModulus::new(1), Err(RingError::NotPrime(1)));
        assert_eq!(PrimeModulus::new(101), Err(RingError::AboveCap { k: 101, cap: 97 }));
        assert!(PrimeModulus::with_cap(101, 1000).is_ok());
        assert_eq!(PrimeModulus::new(7).unwrap().get(), 7);
    }

    #[test]
    fn multiplication_examples() {
        let k3 = km(3);
        let p = GroupRingElement::norm(k3);
        let tm1 = GroupRingElement::t_minus_one(k3);
        assert!(gr_mul(&p, &tm1).unwrap().is_zero());
        // (T-1)^2 = T^2 - 2T + 1 = T^2 + T + 1 mod 3
        assert_eq!(gr_mul(&tm1, &tm1).unwrap(), p);
        let k5 = km(5);
        let prod = gr_mul(&GroupRingElement::t_pow(k5, 2), &GroupRingElement::t_pow(k5, 3)).unwrap();
        assert_eq!(prod, GroupRingElement::one(k5));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = GroupRingElement::one(km(3));
        let b = GroupRingElement::one(km(5));
        assert_eq!(gr_mul(&a, &b), Err(RingError::ModulusMismatch(3, 5)));
    }

    #[test]
    fn unit_examples() {
        let k3 = km(3);
        assert!(gr_is_unit(&GroupRingElement::t_pow(k3, 1)));
        assert!(!gr_is_unit(&GroupRingElement::t_minus_one(k3)));
        let a = GroupRingElement::from_terms(km(5), &[(2, 0), (1, 1)]);
        assert!(gr_is_unit(&a));
        assert!(has_inverse_brute(&a));
        let inv = a.inverse().unwrap();
        assert_eq!(a.try_mul(&inv).unwrap(), GroupRingElement::one(km(5)));
    }

    #[test]
    fn unit_criterion_matches_exhaustive_inverse_search_k3() {
        for a in all_elements(km(3)) {
            assert_eq!(a.is_unit(), has_inverse_brute(&a), "disagreement at {a}");
        }
    }

    #[test]
    fn unit_criterion_matches_linear_solve_k5_k7() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for k in [5u32, 7] {
            let m = km(k);
            for _ in 0..400 {
                let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(0..k as i64)).collect();
                let a = GroupRingElement::from_coeffs(m, &coeffs).unwrap();
                let invertible = action_matrix(&a).rank() == k as usize;
                assert_eq!(a.is_unit(), invertible, "k={k} a={a}");
            }
        }
    }

    #[test]
    fn unit_property_is_multiplicative_k3() {
        let elems: Vec<_> = all_elements(km(3)).collect();
        for a in &elems {
            for b in &elems {
                let ab = a.try_mul(b).unwrap();
                assert_eq!(ab.is_unit(), a.is_unit() && b.is_unit());
            }
        }
    }

    #[test]
    fn action_matrix_examples() {
        let k3 = km(3);
        let t = action_matrix(&GroupRingElement::t_pow(k3, 1));
        let cyc = FpMatrix::from_rows(3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(t, cyc);
        assert!(action_matrix(&GroupRingElement::zero(k3)).is_zero());
        assert_eq!(action_matrix(&GroupRingElement::t_minus_one(km(5))).rank(), 4);
    }

    #[test]
    fn kernel_dims_and_exactness() {
        for k in [3u32, 5, 7, 11] {
            let m = km(k);
            let tm1 = GroupRingElement::t_minus_one(m);
            let p = GroupRingElement::norm(m);
            assert_eq!(kernel_dim(&tm1), 1);
            assert_eq!(kernel_dim(&p), k as usize - 1);
            assert_eq!(action_matrix(&p).rank(), 1);
            assert_eq!(action_matrix(&tm1).rank(), k as usize - 1);
            assert_eq!(kernel_dim(&GroupRingElement::zero(m)), k as usize);
            // image(p) = ker(T-1): p spans ker(T-1)
            assert!(tm1.try_mul(&p).unwrap().is_zero());
        }
    }

    #[test]
    fn action_matrix_is_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for k in [3u32, 5, 7] {
            let m = km(k);
            for _ in 0..50 {
                let a: Vec<i64> = (0..k).map(|_| rng.gen_range(0..k as i64)).collect();
                let b: Vec<i64> = (0..k).map(|_| rng.gen_range(0..k as i64)).collect();
                let a = GroupRingElement::from_coeffs(m, &a).unwrap();
                let b = GroupRingElement::from_coeffs(m, &b).unwrap();
                assert_eq!(action_matrix(&a.try_mul(&b).unwrap()), action_matrix(&a).mul(&action_matrix(&b)));
            }
        }
    }

    #[test]
    fn display() {
        let k5 = km(5);
        assert_eq!(GroupRingElement::t_minus_one(k5).to_string(), "4 + T");
        assert_eq!(GroupRingElement::zero(k5).to_string(), "0");
        assert_eq!(GroupRingElement::from_terms(k5, &[(2, 3)]).to_string(), "2T^3");
    }
}
