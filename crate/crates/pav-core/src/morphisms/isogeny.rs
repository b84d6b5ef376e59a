//! Isogeny types (D, E, M): the Gram equation D = M^T E M, the kernel
//! F = coker(M), and membership in the stabilizer of M inside
//! Sp(D, Z) x Sp(E, Z).

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{FiniteAbelianGroup, IntMatrix};
use crate::morphisms::report::{CheckReport, Condition};
use crate::symplectic::{is_symplectic, PolarizationType};

/// The discrete datum of an isogeny of polarized abelian varieties relative
/// to symplectic bases: source type D, target type E and the matrix M of
/// the rational representation. Validity means D = M^T E M exactly; then
/// |det M| = deg(D) / deg(E) and coker(M) is the kernel of the isogeny.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsogenyType {
    source: PolarizationType,
    target: PolarizationType,
    matrix: IntMatrix,
}

impl IsogenyType {
    /// Size/shape checks only; run `check` for the full verdict.
    pub fn new(source: PolarizationType, target: PolarizationType, matrix: IntMatrix) -> Result<Self> {
        if source.dim() != target.dim() {
            return Err(Error::DimensionClash(format!(
                "source type {source} and target type {target} have different dimensions"
            )));
        }
        let n2 = 2 * source.dim();
        if matrix.rows() != n2 || matrix.cols() != n2 {
            return Err(Error::SizeMismatch(format!(
                "matrix is {}x{}, types of dimension {} need {n2}x{n2}",
                matrix.rows(),
                matrix.cols(),
                source.dim()
            )));
        }
        Ok(IsogenyType { source, target, matrix })
    }

    pub fn source(&self) -> &PolarizationType {
        &self.source
    }

    pub fn target(&self) -> &PolarizationType {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn check(&self) -> CheckReport {
        check_isogeny_type(&self.source, &self.target, &self.matrix)
            .expect("sizes were validated on construction")
    }
}

/// Decides whether (d, e, m) is a valid isogeny type: m^T * gram(e) * m must
/// equal gram(d) exactly. The report carries F = coker(m) and the sign of
/// det m whenever m is nonsingular.
pub fn check_isogeny_type(
    d: &PolarizationType,
    e: &PolarizationType,
    m: &IntMatrix,
) -> Result<CheckReport> {
    if d.dim() != e.dim() {
        return Err(Error::SizeMismatch(format!(
            "types {d} and {e} have different dimensions"
        )));
    }
    let n2 = 2 * d.dim();
    if m.rows() != n2 || m.cols() != n2 {
        return Err(Error::SizeMismatch(format!(
            "matrix is {}x{}, expected {n2}x{n2}",
            m.rows(),
            m.cols()
        )));
    }
    let lhs = m.transpose().mul(e.gram().matrix()).mul(m);
    let mut failures = Vec::new();
    if lhs != d.gram().into_matrix() {
        failures.push(Condition::GramEquation);
    }
    let mut report = CheckReport::from_failures(failures);
    let det = m.det()?;
    if !det.is_zero() {
        report.det_sign = Some(if det.is_negative() { -1 } else { 1 });
        report.kernel = Some(m.cokernel()?);
    }
    Ok(report)
}

/// The kernel of the isogeny represented by m, as a finite abelian group:
/// F = coker(m), isomorphic to Ker(f).
pub fn kernel_structure(m: &IntMatrix) -> Result<FiniteAbelianGroup> {
    m.cokernel()
}

/// Stabilizer membership for an isogeny type: a is accepted iff a is in
/// Sp(D, Z) and b := M a M^{-1} is integral and in Sp(E, Z); the pair (a, b)
/// then satisfies M a = b M. Returns b on success.
pub fn is_in_stabilizer(a: &IntMatrix, t: &IsogenyType) -> Result<(bool, Option<IntMatrix>)> {
    let n2 = 2 * t.source.dim();
    if a.rows() != n2 || a.cols() != n2 {
        return Err(Error::SizeMismatch(format!(
            "candidate is {}x{}, expected {n2}x{n2}",
            a.rows(),
            a.cols()
        )));
    }
    if !is_symplectic(a, &t.source)? {
        return Ok((false, None));
    }
    let m_inv = t.matrix.rat_inverse().map_err(|e| match e {
        Error::Singular => Error::InvalidType("isogeny matrix is singular".into()),
        other => other,
    })?;
    let b_rat = t.matrix.to_rational().mul(&a.to_rational()).mul(&m_inv);
    let Ok(b) = b_rat.to_integer() else {
        return Ok((false, None));
    };
    if !is_symplectic(&b, &t.target)? {
        return Ok((false, None));
    }
    debug_assert_eq!(t.matrix.mul(a), b.mul(&t.matrix));
    Ok((true, Some(b)))
}
