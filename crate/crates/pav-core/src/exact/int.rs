//! Dense arbitrary-precision integer matrices and the integer normal forms
//! (Hermite, Smith) that every lattice computation in this crate reduces to.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::group::FiniteAbelianGroup;
use crate::exact::rat::RatMatrix;

/// Row-major dense matrix over the integers. Zero-dimensional shapes
/// (0 rows or 0 columns) are legal everywhere; the determinant of the
/// 0x0 matrix is 1 and its cokernel is trivial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
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

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Convenience constructor from machine-integer rows, mostly for tests
    /// and for the CLI examples.
    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(r, c, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix::new(rows, cols, entries)
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

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
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

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn column(&self, j: usize) -> IntMatrix {
        IntMatrix::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        IntMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r + i, c + j)] = b[(i, j)].clone();
                }
            }
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_int(self)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * &self[(src, j)];
            self[(dst, j)] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * &self[(i, src)];
            self[(i, dst)] -= t;
        }
    }

    /// Row Hermite normal form. Returns (h, u) with h = u * self, u
    /// unimodular, pivots positive, entries above each pivot reduced into
    /// [0, pivot) and zero rows at the bottom. The form is the canonical
    /// representative of the row span, so equality of row lattices is
    /// equality of forms.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // Euclidean reduction within the column until at most one
            // nonzero entry remains at or below pivot_row.
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..self.rows {
                    if !h[(r, col)].is_zero() {
                        let better = match best {
                            None => true,
                            Some(b) => h[(r, col)].abs() < h[(b, col)].abs(),
                        };
                        if better {
                            best = Some(r);
                        }
                    }
                }
                let Some(rmin) = best else { break };
                h.swap_rows(pivot_row, rmin);
                u.swap_rows(pivot_row, rmin);
                let mut clean = true;
                for r in pivot_row + 1..self.rows {
                    if h[(r, col)].is_zero() {
                        continue;
                    }
                    let q = &h[(r, col)] / &h[(pivot_row, col)];
                    h.row_sub(r, pivot_row, &q);
                    u.row_sub(r, pivot_row, &q);
                    if !h[(r, col)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if h[(pivot_row, col)].is_zero() {
                continue;
            }
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let pivot = h[(pivot_row, col)].clone();
            for r in 0..pivot_row {
                let q = h[(r, col)].div_floor(&pivot);
                h.row_sub(r, pivot_row, &q);
                u.row_sub(r, pivot_row, &q);
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Column Hermite form: (h, v) with h = self * v, v unimodular, zero
    /// columns at the right. Transpose of the row form.
    pub fn column_hnf(&self) -> (IntMatrix, IntMatrix) {
        let (ht, ut) = self.transpose().hnf();
        (ht.transpose(), ut.transpose())
    }

    /// Smith normal form. Returns (s, u, v) with s = u * self * v, u and v
    /// unimodular, s diagonal with nonnegative entries and s_i | s_{i+1}.
    pub fn snf(&self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let mut s = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let dim = self.rows.min(self.cols);

        let mut t = 0;
        while t < dim {
            // Global minimum-abs pivot in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !s[(i, j)].is_zero() {
                        let better = match best {
                            None => true,
                            Some(b) => s[(i, j)].abs() < s[b].abs(),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            loop {
                // Clear column t below the pivot.
                let mut restart = false;
                for i in t + 1..self.rows {
                    if s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = &s[(i, t)] / &s[(t, t)];
                    s.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    if !s[(i, t)].is_zero() {
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                        restart = true;
                    }
                }
                if restart {
                    continue;
                }
                // Clear row t to the right of the pivot (column ops do not
                // touch column t).
                for j in t + 1..self.cols {
                    if s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = &s[(t, j)] / &s[(t, t)];
                    s.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    if !s[(t, j)].is_zero() {
                        s.swap_cols(t, j);
                        v.swap_cols(t, j);
                        restart = true;
                    }
                }
                if restart {
                    continue;
                }
                let col_clear = (t + 1..self.rows).all(|i| s[(i, t)].is_zero());
                let row_clear = (t + 1..self.cols).all(|j| s[(t, j)].is_zero());
                if col_clear && row_clear {
                    break;
                }
            }
            t += 1;
        }

        // Normalize signs.
        for i in 0..dim {
            if s[(i, i)].is_negative() {
                s.negate_row(i);
                u.negate_row(i);
            }
        }

        // Enforce the divisibility chain d_i | d_{i+1} on the diagonal.
        loop {
            let mut fixed = true;
            for i in 0..dim.saturating_sub(1) {
                let a = s[(i, i)].clone();
                let b = s[(i + 1, i + 1)].clone();
                if a.is_zero() {
                    // Zeros must trail; swap a nonzero later entry forward.
                    if !b.is_zero() {
                        s.swap_rows(i, i + 1);
                        u.swap_rows(i, i + 1);
                        s.swap_cols(i, i + 1);
                        v.swap_cols(i, i + 1);
                        fixed = false;
                    }
                    continue;
                }
                if b.is_zero() || (&b % &a).is_zero() {
                    continue;
                }
                // Fold the 2x2 block diag(a, b) into diag(gcd, lcm): merge the
                // columns, then re-run the Euclidean elimination on the block.
                let minus_one = BigInt::from(-1);
                s.col_sub(i, i + 1, &minus_one);
                v.col_sub(i, i + 1, &minus_one);
                loop {
                    if s[(i + 1, i)].is_zero() {
                        break;
                    }
                    let q = &s[(i + 1, i)] / &s[(i, i)];
                    s.row_sub(i + 1, i, &q);
                    u.row_sub(i + 1, i, &q);
                    if !s[(i + 1, i)].is_zero() {
                        s.swap_rows(i, i + 1);
                        u.swap_rows(i, i + 1);
                    }
                }
                // Clear the off-diagonal remnant in row i.
                loop {
                    if s[(i, i + 1)].is_zero() {
                        break;
                    }
                    let q = &s[(i, i + 1)] / &s[(i, i)];
                    s.col_sub(i + 1, i, &q);
                    v.col_sub(i + 1, i, &q);
                    if !s[(i, i + 1)].is_zero() {
                        s.swap_cols(i, i + 1);
                        v.swap_cols(i, i + 1);
                    }
                }
                if s[(i, i)].is_negative() {
                    s.negate_row(i);
                    u.negate_row(i);
                }
                if s[(i + 1, i + 1)].is_negative() {
                    s.negate_row(i + 1);
                    u.negate_row(i + 1);
                }
                fixed = false;
            }
            if fixed {
                break;
            }
        }
        (s, u, v)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    // Exact by the Bareiss identity.
                    a[(i, j)] = num / &prev;
                }
            }
            for i in k + 1..n {
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Exact inverse over the rationals.
    pub fn rat_inverse(&self) -> Result<RatMatrix> {
        self.to_rational().inverse()
    }

    /// Integer inverse of a unimodular matrix. Panics if the matrix is not
    /// unimodular; callers own that invariant.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let inv = self.rat_inverse().expect("unimodular matrix must be invertible");
        inv.to_integer().expect("inverse of a unimodular matrix is integral")
    }

    /// Invariant factors of Z^k / (self Z^k): the Smith diagonal with unit
    /// entries dropped. The matrix must be square and nonsingular, so the
    /// quotient is finite of order |det|.
    pub fn cokernel(&self) -> Result<FiniteAbelianGroup> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let (s, _, _) = self.snf();
        let mut factors = Vec::new();
        for i in 0..self.rows {
            if s[(i, i)].is_zero() {
                return Err(Error::Singular);
            }
            if !s[(i, i)].is_one() {
                factors.push(s[(i, i)].clone());
            }
        }
        Ok(FiniteAbelianGroup::new(factors).expect("Smith diagonal is a divisor chain"))
    }

    /// A full set of coset representatives of L / Z^k where L = self^{-1} Z^k,
    /// from the Smith form s = u*self*v: the representatives are
    /// sum_i c_i (v_i / s_i) with 0 <= c_i < s_i. The list has |det| entries.
    pub fn kernel_cosets(&self, max_order: u64) -> Result<Vec<RatMatrix>> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let det = self.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let order = det.abs();
        if order > BigInt::from(max_order) {
            return Err(Error::OrderTooLarge { order, limit: max_order });
        }
        let (s, _, v) = self.snf();
        let n = self.rows;
        let radix: Vec<BigInt> = (0..n).map(|i| s[(i, i)].clone()).collect();
        let mut reps = Vec::new();
        let mut counter = vec![BigInt::zero(); n];
        loop {
            let mut rep = RatMatrix::zeros(n, 1);
            for (i, c) in counter.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for r in 0..n {
                    let term = RatMatrix::ratio(c * &v[(r, i)], radix[i].clone());
                    rep.add_to_entry(r, 0, &term);
                }
            }
            reps.push(rep);
            // Mixed-radix increment.
            let mut done = true;
            for i in (0..n).rev() {
                counter[i] += 1;
                if counter[i] < radix[i] {
                    done = false;
                    break;
                }
                counter[i] = BigInt::zero();
            }
            if done {
                break;
            }
        }
        Ok(reps)
    }

    /// Basis (as columns, in column Hermite form) of {x : self * x = 0}.
    /// The kernel of an integer matrix is a saturated sublattice.
    pub fn integer_kernel(&self) -> IntMatrix {
        let (h, v) = self.column_hnf();
        let mut zero_cols = Vec::new();
        for j in 0..self.cols {
            if (0..self.rows).all(|i| h[(i, j)].is_zero()) {
                zero_cols.push(j);
            }
        }
        let mut kernel = IntMatrix::zeros(self.cols, zero_cols.len());
        for (out_j, &j) in zero_cols.iter().enumerate() {
            for i in 0..self.cols {
                kernel[(i, out_j)] = v[(i, j)].clone();
            }
        }
        // Canonical basis of the kernel lattice.
        let (kh, _) = kernel.column_hnf();
        strip_zero_columns(&kh)
    }

    /// Basis of the saturation of the column span: the largest sublattice of
    /// Z^rows with the same rational span and torsion-free quotient.
    pub fn saturate_columns(&self) -> IntMatrix {
        let (s, u, _) = self.snf();
        let rank = (0..self.rows.min(self.cols)).take_while(|&i| !s[(i, i)].is_zero()).count();
        let uinv = u.unimodular_inverse();
        let basis = uinv.submatrix(0, self.rows, 0, rank);
        let (h, _) = basis.column_hnf();
        strip_zero_columns(&h)
    }
}

pub(crate) fn strip_zero_columns(m: &IntMatrix) -> IntMatrix {
    let keep: Vec<usize> =
        (0..m.cols()).filter(|&j| (0..m.rows()).any(|i| !m[(i, j)].is_zero())).collect();
    let mut out = IntMatrix::zeros(m.rows(), keep.len());
    for (jo, &j) in keep.iter().enumerate() {
        for i in 0..m.rows() {
            out[(i, jo)] = m[(i, j)].clone();
        }
    }
    out
}

/// Basis of {v : b^T * form * v = 0 for every column b of sub_basis}: the
/// orthogonal complement of a sublattice with respect to a bilinear form.
pub fn orthogonal_complement(sub_basis: &IntMatrix, form: &IntMatrix) -> IntMatrix {
    assert_eq!(form.rows(), form.cols());
    assert_eq!(sub_basis.rows(), form.rows());
    sub_basis.transpose().mul(form).integer_kernel()
}
