//! Floating-point Siegel-space layer: validation of period data, the
//! isogeny-induced automorphism of the Siegel space, the symplectic action,
//! and constructive realization of the moduli bijections.
//!
//! Conventions: basis vectors are columns, and transporting along a matrix
//! m means new column j = sum_i old_i * m[i][j] (right multiplication).
//! Normalization pins the right n x n block of a period matrix to
//! diag(pol_type), making the Siegel coordinate unique per basis. All
//! classification decisions stay in the exact layer; this module only
//! witnesses them numerically in double precision.

mod cmat;

pub use cmat::CMat;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::morphisms::{check_isogeny_type, check_morphism_type, EmbeddingType, MorphismType};
use crate::siegel::cmat::min_symmetric_eigenvalue;
use crate::symplectic::{is_symplectic, PolarizationType};

/// Default tolerance for validity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Condition-number ceiling above which a block is treated as singular.
pub const CONDITION_LIMIT: f64 = 1e12;

/// A point of the Siegel upper half-space: a symmetric complex n x n matrix
/// with positive-definite imaginary part (both within tolerance).
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    z: CMat,
}

impl SiegelPoint {
    /// No validation happens here; run `validate_siegel`.
    pub fn new(z: CMat) -> Result<Self> {
        if z.rows() != z.cols() {
            return Err(Error::NonSquare { rows: z.rows(), cols: z.cols() });
        }
        Ok(SiegelPoint { z })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::NonSquare { rows: n, cols: r.len() });
            }
        }
        SiegelPoint::new(CMat::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.z.rows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.z
    }

    pub fn max_abs_diff(&self, other: &SiegelPoint) -> f64 {
        self.z.max_abs_diff(&other.z)
    }
}

/// A lattice basis for a polarized abelian variety: n x 2n complex columns
/// together with the polarization type whose Gram form the columns carry.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodBasis {
    columns: CMat,
    pol_type: PolarizationType,
}

impl PeriodBasis {
    pub fn new(columns: CMat, pol_type: PolarizationType) -> Result<Self> {
        let n = pol_type.dim();
        if columns.rows() != n || columns.cols() != 2 * n {
            return Err(Error::SizeMismatch(format!(
                "period matrix is {}x{}, type {pol_type} needs {n}x{}",
                columns.rows(),
                columns.cols(),
                2 * n
            )));
        }
        Ok(PeriodBasis { columns, pol_type })
    }

    pub fn dim(&self) -> usize {
        self.pol_type.dim()
    }

    pub fn columns(&self) -> &CMat {
        &self.columns
    }

    pub fn pol_type(&self) -> &PolarizationType {
        &self.pol_type
    }
}

/// True iff z is symmetric and Im z is positive definite, within tol.
pub fn validate_siegel(z: &SiegelPoint, tol: f64) -> bool {
    let n = z.dim();
    let m = z.matrix();
    for i in 0..n {
        for j in i + 1..n {
            if (m.get(i, j) - m.get(j, i)).norm() > tol {
                return false;
            }
        }
    }
    // Symmetrized imaginary part.
    let mut im = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            im[i * n + j] = 0.5 * (m.get(i, j).im + m.get(j, i).im);
        }
    }
    min_symmetric_eigenvalue(&im, n) > tol
}

/// The standard period basis (z | diag(d)) attached to a Siegel coordinate.
pub fn period_basis(z: &SiegelPoint, d: &PolarizationType) -> Result<PeriodBasis> {
    if !validate_siegel(z, DEFAULT_TOL) {
        return Err(Error::InvalidSiegelPoint);
    }
    standard_basis(z, d)
}

/// Shape checks only; callers validate the point at their own tolerance.
fn standard_basis(z: &SiegelPoint, d: &PolarizationType) -> Result<PeriodBasis> {
    if z.dim() != d.dim() {
        return Err(Error::SizeMismatch(format!(
            "point has dimension {}, type {d} has dimension {}",
            z.dim(),
            d.dim()
        )));
    }
    let delta = CMat::from_int(&IntMatrix::diagonal(d.divisors()));
    PeriodBasis::new(z.matrix().hstack(&delta), d.clone())
}

/// Riemann-relation check for arbitrary period data: the alternating form
/// with Gram gram(pol_type) in these columns must be invariant under
/// multiplication by i and its associated hermitian form positive definite,
/// both within tol.
pub fn validate_period_basis(p: &PeriodBasis, tol: f64) -> bool {
    let n = p.dim();
    if n == 0 {
        return true;
    }
    let cols = p.columns();
    // Real coordinate change T = [[Re Pi], [Im Pi]] (2n x 2n).
    let t = CMat::from_fn(2 * n, 2 * n, |i, j| {
        let v = cols.get(i % n, j);
        if i < n {
            Complex64::new(v.re, 0.0)
        } else {
            Complex64::new(v.im, 0.0)
        }
    });
    let Ok((t_inv, cond)) = t.inverse() else { return false };
    if !cond.is_finite() || cond > CONDITION_LIMIT {
        return false;
    }
    let gram = CMat::from_int(p.pol_type().gram().matrix());
    // G = T^{-T} J T^{-1}: the form in real coordinates (Re v; Im v).
    let t_inv_t = CMat::from_fn(2 * n, 2 * n, |i, j| t_inv.get(j, i));
    let g = t_inv_t.mul(&gram).mul(&t_inv);
    // Multiplication by i: (x, y) -> (-y, x).
    let s = CMat::from_fn(2 * n, 2 * n, |i, j| {
        let v = if i < n && j == i + n {
            -1.0
        } else if i >= n && j == i - n {
            1.0
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    });
    let s_t = CMat::from_fn(2 * n, 2 * n, |i, j| s.get(j, i));
    // Compatibility E(iu, iv) = E(u, v).
    if s_t.mul(&g).mul(&s).max_abs_diff(&g) > tol * (1.0 + g.max_abs()) {
        return false;
    }
    // Positivity of H(u, u) = E(iu, u).
    let a = s_t.mul(&g);
    let mut sym = vec![0.0f64; 4 * n * n];
    for i in 0..2 * n {
        for j in 0..2 * n {
            sym[i * 2 * n + j] = 0.5 * (a.get(i, j).re + a.get(j, i).re);
        }
    }
    min_symmetric_eigenvalue(&sym, 2 * n) > tol
}

/// Normalizes a period basis to its Siegel coordinate Z = D G2^{-1} G1,
/// where the columns split as (G1 | G2) and D = diag(pol_type).
pub fn normalize(p: &PeriodBasis) -> Result<SiegelPoint> {
    let n = p.dim();
    let g1 = p.columns().submatrix(0, n, 0, n);
    let g2 = p.columns().submatrix(0, n, n, 2 * n);
    let (g2_inv, cond) = g2.inverse()?;
    if !cond.is_finite() || cond > CONDITION_LIMIT {
        return Err(Error::NearSingularBlock(cond));
    }
    let delta = CMat::from_int(&IntMatrix::diagonal(p.pol_type().divisors()));
    SiegelPoint::new(delta.mul(&g2_inv).mul(&g1))
}

/// Transports a Siegel point along an isogeny type: given the target-side
/// point of type e, returns the source-side point of type d determined by
/// the lattice basis (period columns of z) * m, normalized.
pub fn transport(
    z_target: &SiegelPoint,
    e: &PolarizationType,
    d: &PolarizationType,
    m: &IntMatrix,
    tol: f64,
) -> Result<SiegelPoint> {
    let report = check_isogeny_type(d, e, m)?;
    if !report.valid {
        return Err(Error::InvalidType(format!(
            "not an isogeny type: {:?}",
            report.failure_names()
        )));
    }
    if !validate_siegel(z_target, tol) {
        return Err(Error::InvalidSiegelPoint);
    }
    let basis = standard_basis(z_target, e)?;
    let moved = basis.columns().mul(&CMat::from_int(m));
    let source = PeriodBasis::new(moved, d.clone())?;
    let out = normalize(&source)?;
    if !validate_siegel(&out, tol) || !validate_period_basis(&standard_basis(&out, d)?, tol) {
        return Err(Error::InvalidSiegelPoint);
    }
    Ok(out)
}

/// The modular action of Sp(D, Z) on the Siegel space in these conventions:
/// transport along the type (d, d, r).
pub fn sp_action(
    z: &SiegelPoint,
    d: &PolarizationType,
    r: &IntMatrix,
    tol: f64,
) -> Result<SiegelPoint> {
    if !is_symplectic(r, d)? {
        return Err(Error::NotSymplectic);
    }
    transport(z, d, d, r, tol)
}

/// Realizes the ambient point of an embedding type from the points of the
/// subvariety and its complement: the block-diagonal product period basis
/// (X columns, then X' columns) moved by m^{-1} and normalized with the
/// ambient type.
pub fn realize_embedding(
    z_sub: &SiegelPoint,
    z_comp: &SiegelPoint,
    t: &EmbeddingType,
    tol: f64,
) -> Result<SiegelPoint> {
    let report = t.check();
    if !report.valid {
        return Err(Error::InvalidType(format!(
            "not an embedding type: {:?}",
            report.failure_names()
        )));
    }
    if z_sub.dim() != t.sub().dim() || z_comp.dim() != t.complement().dim() {
        return Err(Error::SizeMismatch("point dimensions do not match the type".into()));
    }
    if !validate_siegel(z_sub, tol) || !validate_siegel(z_comp, tol) {
        return Err(Error::InvalidSiegelPoint);
    }
    let pi_sub = standard_basis(z_sub, t.sub())?;
    let pi_comp = standard_basis(z_comp, t.complement())?;
    let product = CMat::block_diag(&[pi_sub.columns(), pi_comp.columns()]);
    let m_inv = CMat::from_rat(&t.matrix().rat_inverse()?);
    let ambient_cols = product.mul(&m_inv);
    let ambient = PeriodBasis::new(ambient_cols, t.ambient().clone())?;
    let out = normalize(&ambient)?;
    if !validate_siegel(&out, tol) || !validate_period_basis(&standard_basis(&out, t.ambient())?, tol)
    {
        return Err(Error::InvalidSiegelPoint);
    }
    Ok(out)
}

/// Realizes a full morphism from the free parameters of its type: the
/// points of X, X' and Y'. Returns the ambient points of V and W and the
/// induced integral matrix q of the morphism.
pub fn realize_morphism(
    z_x: &SiegelPoint,
    z_xcomp: &SiegelPoint,
    z_ycomp: &SiegelPoint,
    t: &MorphismType,
    tol: f64,
) -> Result<(SiegelPoint, SiegelPoint, IntMatrix)> {
    let report = check_morphism_type(t)?;
    if !report.valid {
        return Err(Error::InvalidType(format!(
            "not a morphism type: {:?}",
            report.failure_names()
        )));
    }
    let delta = t.delta();
    if !validate_siegel(z_x, tol) {
        return Err(Error::InvalidSiegelPoint);
    }
    // The point of Y is determined by z_x through P: Pi_Y = Pi_X P^{-1}.
    let pi_x = standard_basis(z_x, &delta.source_sub)?;
    let z_y = if delta.source_sub.dim() == 0 {
        SiegelPoint::new(CMat::zeros(0, 0))?
    } else {
        let p_inv = CMat::from_rat(&t.isogeny().rat_inverse()?);
        let cols = pi_x.columns().mul(&p_inv);
        normalize(&PeriodBasis::new(cols, delta.target_sub.clone())?)?
    };
    if !validate_siegel(&z_y, tol) {
        return Err(Error::InvalidSiegelPoint);
    }

    let source_embedding = EmbeddingType::new(
        delta.source_sub.clone(),
        delta.source_complement.clone(),
        delta.source_ambient.clone(),
        t.embedding_source().clone(),
    )?;
    let target_embedding = EmbeddingType::new(
        delta.target_sub.clone(),
        delta.target_complement.clone(),
        delta.target_ambient.clone(),
        t.embedding_target().clone(),
    )?;
    let z_v = realize_embedding(z_x, z_xcomp, &source_embedding, tol)?;
    let z_w = realize_embedding(&z_y, z_ycomp, &target_embedding, tol)?;
    let q = report.induced_matrix.expect("valid morphism types have integral Q");
    Ok((z_v, z_w, q))
}
