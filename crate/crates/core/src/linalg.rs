//! Dense matrices over the prime field with `p` elements.
//!
//! Everything the homology engine needs reduces to row echelon form: rank,
//! null space, and solving `A x = b`. Matrices here are at most a few hundred
//! rows, so plain Gaussian elimination is used.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix({}x{} over F_{})", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Modular inverse in F_p via Fermat. `a` must be nonzero mod `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut b = base as u64 % p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let idx = r * self.cols + c;
        self.data[idx] = ((self.data[idx] as u64 + v as u64) % self.p as u64) as u32;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(l);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = ((*d as u64 + a * b as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s = self.row(i).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in c..self.cols {
                let v = self.get(r, j) as u64 * inv % p;
                self.data[r * self.cols + j] = v as u32;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = f * self.get(r, j) as u64 % p;
                    let cur = self.get(i, j) as u64;
                    self.data[i * self.cols + j] = ((cur + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Forward elimination only; cheaper than full RREF.
        let p = self.p as u64;
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != rank {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, rank * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(rank, c), m.p) as u64;
            for i in rank + 1..m.rows {
                let f = m.get(i, c) as u64 * inv % p;
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f * m.get(rank, j) as u64 % p;
                    let cur = m.get(i, j) as u64;
                    m.data[i * m.cols + j] = ((cur + p - sub) % p) as u32;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of `{ x : A x = 0 }`.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    let a = m.get(r, fc);
                    v[pc] = (p - a) % p;
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}
