//! Dense matrices over the exact rationals. Entries are kept in lowest terms
//! with positive denominators by `BigRational` itself.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::int::IntMatrix;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix::new(rows, cols, entries)
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix::from_fn(m.rows(), m.cols(), |i, j| BigRational::from_integer(m[(i, j)].clone()))
    }

    /// The exact rational numer/denom.
    pub fn ratio(numer: BigInt, denom: BigInt) -> BigRational {
        BigRational::new(numer, denom)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(BigRational::is_integer)
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self[(i, j)]
    }

    pub fn add_to_entry(&mut self, i: usize, j: usize, v: &BigRational) {
        let sum = &self[(i, j)] + v;
        self[(i, j)] = sum;
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn column(&self, j: usize) -> RatMatrix {
        RatMatrix::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        RatMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RatMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        RatMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Fails with NotIntegral if any entry has a nontrivial denominator.
    pub fn to_integer(&self) -> Result<IntMatrix> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(IntMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_integer()))
    }

    /// Least common denominator d > 0 and integer matrix n with self = n / d.
    pub fn common_denominator(&self) -> (BigInt, IntMatrix) {
        let mut d = BigInt::one();
        for e in &self.entries {
            d = d.lcm(e.denom());
        }
        let n = IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            (&self[(i, j)] * BigRational::from_integer(d.clone())).to_integer()
        });
        (d, n)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Err(Error::Singular);
            };
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot * n + j);
                    inv.entries.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                let t = &a[(col, j)] / &p;
                a[(col, j)] = t;
                let t = &inv[(col, j)] / &p;
                inv[(col, j)] = t;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &a[(r, j)] - &f * &a[(col, j)];
                    a[(r, j)] = t;
                    let t = &inv[(r, j)] - &f * &inv[(col, j)];
                    inv[(r, j)] = t;
                }
            }
        }
        Ok(inv)
    }

    /// Solve self * x = rhs exactly, requiring full column rank. Returns
    /// Singular when the system is inconsistent or the rank drops.
    pub fn solve_exact(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        assert_eq!(self.rows, rhs.rows, "rhs row mismatch");
        let m = self.rows;
        let n = self.cols;
        let mut a = self.hstack(rhs);
        let width = a.cols;
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..n {
            let Some(p) = (pivot_row..m).find(|&r| !a[(r, col)].is_zero()) else {
                return Err(Error::Singular);
            };
            if p != pivot_row {
                for j in 0..width {
                    a.entries.swap(pivot_row * width + j, p * width + j);
                }
            }
            let pv = a[(pivot_row, col)].clone();
            for j in 0..width {
                let t = &a[(pivot_row, j)] / &pv;
                a[(pivot_row, j)] = t;
            }
            for r in 0..m {
                if r == pivot_row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..width {
                    let t = &a[(r, j)] - &f * &a[(pivot_row, j)];
                    a[(r, j)] = t;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        // Consistency of the remaining rows.
        for r in pivot_row..m {
            for j in n..width {
                if !a[(r, j)].is_zero() {
                    return Err(Error::Singular);
                }
            }
        }
        let mut x = RatMatrix::zeros(n, rhs.cols);
        for (row, &col) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(col, j)] = a[(row, n + j)].clone();
            }
        }
        Ok(x)
    }

    /// Max absolute value of the entries, as f64 (for conditioning checks).
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| {
                let num = e.numer();
                let den = e.denom();
                approx_big(num) / approx_big(den)
            })
            .collect()
    }
}

fn approx_big(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}
