//! Minimal dense complex linear algebra for the Siegel layer: products,
//! Gauss-Jordan inversion with a condition estimate, and symmetric
//! eigenvalue bounds via Jacobi sweeps. Double precision only; the exact
//! layer owns every classification decision.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        CMat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CMat::new(rows, cols, entries)
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        CMat::from_fn(m.rows(), m.cols(), |i, j| {
            Complex64::new(big_to_f64(&m[(i, j)]), 0.0)
        })
    }

    pub fn from_rat(m: &RatMatrix) -> Self {
        let vals = m.to_f64();
        CMat::from_fn(m.rows(), m.cols(), |i, j| Complex64::new(vals[i * m.cols() + j], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &CMat) -> CMat {
        assert_eq!(self.rows, other.rows);
        CMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn block_diag(blocks: &[&CMat]) -> CMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = CMat::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r + i, c + j, b.get(i, j));
                }
            }
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> CMat {
        CMat::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Gauss-Jordan inverse with partial pivoting. Returns the inverse and
    /// the infinity-norm condition estimate ||A|| * ||A^{-1}||.
    pub fn inverse(&self) -> Result<(CMat, f64)> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok((CMat::zeros(0, 0), 1.0));
        }
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let mut pivot = col;
            let mut best = a.get(col, col).norm();
            for r in col + 1..n {
                let v = a.get(r, col).norm();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return Err(Error::NearSingularBlock(f64::INFINITY));
            }
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - f * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - f * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        let cond = self.norm_inf() * inv.norm_inf();
        Ok((inv, cond))
    }
}

fn big_to_f64(x: &num_bigint::BigInt) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Smallest eigenvalue of a real symmetric matrix (row-major, n x n) by
/// cyclic Jacobi rotations. Sizes here are tiny, so plain sweeps converge
/// quickly.
pub fn min_symmetric_eigenvalue(mat: &[f64], n: usize) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    let mut a = mat.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + a.iter().map(|x| x.abs()).fold(0.0, f64::max)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[idx(i, i)]).fold(f64::INFINITY, f64::min)
}
