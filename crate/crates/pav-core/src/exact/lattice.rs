//! Full and partial lattices in Q^k with a canonical stored form, used for
//! the saturation conditions on embedding types and the kernel lattice L_F
//! of the morphism checker.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::int::{strip_zero_columns, IntMatrix};
use crate::exact::rat::RatMatrix;

/// A finitely generated subgroup of Q^k of any rank, stored as
/// (1/denom) * column span of an integer basis in column Hermite form.
/// After normalization the denominator is the exponent of the lattice over
/// Z^k (the least e with e*L contained in Z^k), so two equal lattices have
/// bit-identical representations and equality is derived.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    denom: BigInt,
    basis: IntMatrix,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(dim {}, 1/{} * {:?})", self.ambient_dim, self.denom, self.basis)
    }
}

impl Lattice {
    /// Z^k.
    pub fn standard(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, denom: BigInt::one(), basis: IntMatrix::identity(ambient_dim) }
    }

    /// The zero lattice in Q^k.
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, denom: BigInt::one(), basis: IntMatrix::zeros(ambient_dim, 0) }
    }

    /// The sublattice of Z^k spanned by the coordinate vectors e_first..e_last.
    pub fn coordinate_block(ambient_dim: usize, first: usize, last: usize) -> Self {
        assert!(first <= last && last <= ambient_dim);
        let basis = IntMatrix::from_fn(ambient_dim, last - first, |i, j| {
            if i == first + j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Lattice { ambient_dim, denom: BigInt::one(), basis }
    }

    /// Lattice generated over Z by the columns of a rational matrix.
    pub fn from_rational_columns(generators: &RatMatrix) -> Self {
        let (denom, numer) = generators.common_denominator();
        Lattice::from_scaled_generators(generators.rows(), denom, numer)
    }

    /// Lattice (1/denom) * column span of an integer generator matrix.
    pub fn from_scaled_generators(ambient_dim: usize, denom: BigInt, generators: IntMatrix) -> Self {
        assert_eq!(generators.rows(), ambient_dim);
        assert!(denom.is_positive());
        let (h, _) = generators.column_hnf();
        let basis = strip_zero_columns(&h);
        // Reduce to the minimal denominator: divide out gcd(content, denom).
        let mut g = denom.clone();
        for e in basis.entries() {
            g = g.gcd(e);
            if g.is_one() {
                break;
            }
        }
        if g.is_one() {
            return Lattice { ambient_dim, denom, basis };
        }
        let basis = IntMatrix::from_fn(basis.rows(), basis.cols(), |i, j| &basis[(i, j)] / &g);
        Lattice { ambient_dim, denom: denom / g, basis }
    }

    /// L = m^{-1} Z^k for a nonsingular integer matrix m: the kernel lattice
    /// of the exact sequence defining the cokernel.
    pub fn inverse_image(m: &IntMatrix) -> crate::error::Result<Self> {
        let inv = m.rat_inverse()?;
        Ok(Lattice::from_rational_columns(&inv))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// The exponent of the lattice over Z^k.
    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn basis_int(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rat(&self) -> RatMatrix {
        let d = self.denom.clone();
        RatMatrix::from_fn(self.ambient_dim, self.basis.cols(), |i, j| {
            RatMatrix::ratio(self.basis[(i, j)].clone(), d.clone())
        })
    }

    pub fn is_standard(&self) -> bool {
        *self == Lattice::standard(self.ambient_dim)
    }

    /// Membership test: v in L iff denom*v is an integer combination of the
    /// basis columns, solved along the Hermite pivot structure.
    pub fn contains(&self, v: &RatMatrix) -> bool {
        assert_eq!(v.rows(), self.ambient_dim);
        assert_eq!(v.cols(), 1);
        let scaled = v.scale(&RatMatrix::ratio(self.denom.clone(), BigInt::one()));
        let Ok(mut r) = scaled.to_integer() else { return false };
        for j in 0..self.basis.cols() {
            let pivot_row = (0..self.ambient_dim)
                .find(|&i| !self.basis[(i, j)].is_zero())
                .expect("basis has no zero columns");
            let (q, rem) = r[(pivot_row, 0)].div_rem(&self.basis[(pivot_row, j)]);
            if !rem.is_zero() {
                return false;
            }
            for i in 0..self.ambient_dim {
                let t = &q * &self.basis[(i, j)];
                r[(i, 0)] -= t;
            }
        }
        r.is_zero()
    }

    /// The sublattice of vectors supported on coordinates [first, last).
    pub fn intersect_with_coordinate_block(&self, first: usize, last: usize) -> Self {
        assert!(first <= last && last <= self.ambient_dim);
        // Rows outside the window must vanish: solve B_out * x = 0 over Z.
        let outside: Vec<usize> = (0..self.ambient_dim).filter(|&i| i < first || i >= last).collect();
        let b_out = IntMatrix::from_fn(outside.len(), self.basis.cols(), |i, j| {
            self.basis[(outside[i], j)].clone()
        });
        let kernel = b_out.integer_kernel();
        let generators = self.basis.mul(&kernel);
        Lattice::from_scaled_generators(self.ambient_dim, self.denom.clone(), generators)
    }

    /// Image under the coordinate projection onto [first, last).
    pub fn project_to_block(&self, first: usize, last: usize) -> Self {
        assert!(first <= last && last <= self.ambient_dim);
        let generators = self.basis.submatrix(first, last, 0, self.basis.cols());
        Lattice::from_scaled_generators(last - first, self.denom.clone(), generators)
    }
}
