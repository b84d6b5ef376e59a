//! Embedding types (D, D', E, M): the Gram product equation
//! D x D' = M^T E M together with the saturation condition that makes the
//! kernel F = coker(M) inject into both factors.
//!
//! The saturation condition implements "F embeds into X and X'" as a pure
//! lattice statement about L = M^{-1} Z^{2(n+n')}:
//!
//!   L n (Q^{2n} x 0)  =  Z^{2n} x 0     and     L n (0 x Q^{2n'})  =  0 x Z^{2n'}.
//!
//! Sketch of the equivalence: an element of F = L / Z^k maps to zero in X'
//! iff some representative x has X'-block zero (subtract the integral
//! X'-part, which lies in Z^k and hence in L); such an x lies in
//! L n (Q^{2n} x 0), and it represents zero in F iff it is integral. So the
//! X-side intersection being exactly Z^{2n} x 0 is injectivity of F -> X',
//! and symmetrically. Block ordering inside the product is X first then X',
//! matching the left side of the Gram product; the ambient Gram uses the
//! l_i <-> l_{i+n} pairing on the full ambient index set.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Lattice};
use crate::morphisms::report::{CheckReport, Condition};
use crate::symplectic::{product_gram, PolarizationType};

/// The discrete datum of an embedding X -> Y relative to symplectic bases:
/// induced type D on X, complement type D' on X', ambient type E on Y, and
/// the matrix M of the sum isogeny X x X' -> Y.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddingType {
    sub: PolarizationType,
    complement: PolarizationType,
    ambient: PolarizationType,
    matrix: IntMatrix,
}

impl EmbeddingType {
    pub fn new(
        sub: PolarizationType,
        complement: PolarizationType,
        ambient: PolarizationType,
        matrix: IntMatrix,
    ) -> Result<Self> {
        if sub.dim() + complement.dim() != ambient.dim() {
            return Err(Error::DimensionClash(format!(
                "types {sub} + {complement} do not fill the ambient type {ambient}"
            )));
        }
        let k = 2 * ambient.dim();
        if matrix.rows() != k || matrix.cols() != k {
            return Err(Error::SizeMismatch(format!(
                "matrix is {}x{}, expected {k}x{k}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(EmbeddingType { sub, complement, ambient, matrix })
    }

    pub fn sub(&self) -> &PolarizationType {
        &self.sub
    }

    pub fn complement(&self) -> &PolarizationType {
        &self.complement
    }

    pub fn ambient(&self) -> &PolarizationType {
        &self.ambient
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn check(&self) -> CheckReport {
        check_embedding_type(&self.sub, &self.complement, &self.ambient, &self.matrix)
            .expect("sizes were validated on construction")
    }
}

/// Decides whether (d, d_comp, e, m) is a valid embedding type.
pub fn check_embedding_type(
    d: &PolarizationType,
    d_comp: &PolarizationType,
    e: &PolarizationType,
    m: &IntMatrix,
) -> Result<CheckReport> {
    let n = d.dim();
    let n_comp = d_comp.dim();
    if n + n_comp != e.dim() {
        return Err(Error::SizeMismatch(format!(
            "types {d} + {d_comp} do not fill the ambient type {e}"
        )));
    }
    let k = 2 * e.dim();
    if m.rows() != k || m.cols() != k {
        return Err(Error::SizeMismatch(format!(
            "matrix is {}x{}, expected {k}x{k}",
            m.rows(),
            m.cols()
        )));
    }

    let mut failures = Vec::new();
    let lhs = m.transpose().mul(e.gram().matrix()).mul(m);
    if lhs != product_gram(d, d_comp) {
        failures.push(Condition::GramProduct);
    }

    // The Gram product is nondegenerate, so a singular m has already failed
    // above and the lattice conditions only run on nonsingular input.
    let det = m.det()?;
    let mut kernel = None;
    if !det.is_zero() {
        kernel = Some(m.cokernel()?);
        let lattice = Lattice::inverse_image(m)?;
        if lattice.intersect_with_coordinate_block(0, 2 * n)
            != Lattice::coordinate_block(k, 0, 2 * n)
        {
            failures.push(Condition::SaturationX);
        }
        if lattice.intersect_with_coordinate_block(2 * n, k)
            != Lattice::coordinate_block(k, 2 * n, k)
        {
            failures.push(Condition::SaturationXComp);
        }
    }

    let mut report = CheckReport::from_failures(failures);
    report.kernel = kernel;
    Ok(report)
}

/// The matrix of the canonical inclusion X x X' = Y for a product ambient
/// variety, with X occupying the ambient symplectic pair slots `x_slots`
/// (strictly increasing) and X' the complementary slots. Columns express
/// the product basis vectors in the ambient basis, translating between the
/// product block ordering and the ambient pairing convention.
pub fn product_inclusion_matrix(n: usize, n_comp: usize, x_slots: &[usize]) -> IntMatrix {
    let total = n + n_comp;
    assert_eq!(x_slots.len(), n, "one ambient slot per X pair");
    assert!(x_slots.windows(2).all(|w| w[0] < w[1]), "slots must increase");
    assert!(x_slots.iter().all(|&s| s < total), "slot out of range");
    let comp_slots: Vec<usize> = (0..total).filter(|s| !x_slots.contains(s)).collect();
    let mut m = IntMatrix::zeros(2 * total, 2 * total);
    for (i, &slot) in x_slots.iter().enumerate() {
        m[(slot, i)] = BigInt::one(); // lambda_i of X
        m[(slot + total, i + n)] = BigInt::one(); // mu_i of X
    }
    for (i, &slot) in comp_slots.iter().enumerate() {
        m[(slot, 2 * n + i)] = BigInt::one(); // lambda_i of X'
        m[(slot + total, 2 * n + n_comp + i)] = BigInt::one(); // mu_i of X'
    }
    m
}

/// Default inclusion with X on the leading ambient slots.
pub fn leading_inclusion_matrix(n: usize, n_comp: usize) -> IntMatrix {
    let slots: Vec<usize> = (0..n).collect();
    product_inclusion_matrix(n, n_comp, &slots)
}

/// Brute-force oracle for the saturation condition, independent of the
/// lattice route: enumerate the cosets of F = M^{-1}Z^k / Z^k and test that
/// no nonzero element has X-block or X'-block congruent to zero mod Z.
pub fn saturation_oracle(
    d: &PolarizationType,
    m: &IntMatrix,
    max_order: u64,
) -> Result<bool> {
    let n = d.dim();
    let reps = m.kernel_cosets(max_order)?;
    let k = m.rows();
    for rep in &reps {
        if rep.is_integral() {
            continue; // the zero element of F
        }
        let x_block = rep.submatrix(0, 2 * n, 0, 1);
        let comp_block = rep.submatrix(2 * n, k, 0, 1);
        if x_block.is_integral() || comp_block.is_integral() {
            return Ok(false);
        }
    }
    Ok(true)
}
