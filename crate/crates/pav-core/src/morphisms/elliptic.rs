//! Canonical diagonal forms of 2x2 isogeny matrices and their Hecke-style
//! factorizations through a degree-p step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// The unique diagonal form (d1, d2) of a nonsingular 2x2 integer matrix
/// under unimodular transformations on both sides: d1 | d2, both positive,
/// d1 * d2 = |det|. These are the Smith invariants.
pub fn elliptic_canonical(m: &IntMatrix) -> Result<(BigInt, BigInt)> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::NotTwoByTwo);
    }
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let (s, _, _) = m.snf();
    Ok((s[(0, 0)].clone(), s[(1, 1)].clone()))
}

/// Factors a 2x2 isogeny matrix m with canonical form (d1, d2) = (a, b*p)
/// through a degree-p cyclic step: returns (m_u, m_g) with m = m_g * m_u,
/// canonical form of m_u equal to (a, b) and of m_g equal to (1, p).
/// Admissibility of p requires p | d2, gcd(d2/p, p) = 1 and d1 | d2/p.
pub fn hecke_factor(m: &IntMatrix, p: &BigInt) -> Result<(IntMatrix, IntMatrix)> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::NotTwoByTwo);
    }
    if !p.is_positive() {
        return Err(Error::BadDivisor(format!("p = {p} is not positive")));
    }
    let (d1, d2) = elliptic_canonical(m)?;
    let (b, rem) = d2.div_rem(p);
    if !rem.is_zero() {
        return Err(Error::BadDivisor(format!("{p} does not divide d2 = {d2}")));
    }
    if !b.gcd(p).is_one() {
        return Err(Error::BadDivisor(format!("b = {b} and p = {p} are not coprime")));
    }
    if !(&b % &d1).is_zero() {
        return Err(Error::BadDivisor(format!("d1 = {d1} does not divide b = {b}")));
    }
    // m = u^{-1} diag(d1, d2) v^{-1} and diag(d1, d2) = diag(1, p) diag(d1, b).
    let (s, u, v) = m.snf();
    debug_assert_eq!(s, IntMatrix::diagonal(&[d1.clone(), d2.clone()]));
    let u_inv = u.unimodular_inverse();
    let v_inv = v.unimodular_inverse();
    let m_g = u_inv.mul(&IntMatrix::diagonal(&[BigInt::one(), p.clone()]));
    let m_u = IntMatrix::diagonal(&[d1, b]).mul(&v_inv);
    debug_assert_eq!(m_g.mul(&m_u), *m);
    Ok((m_u, m_g))
}
