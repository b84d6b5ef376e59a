//! Polarization types, their alternating Gram forms, symplectic group
//! membership, divisibility of types, and symplectic (Frobenius) bases of
//! integer alternating forms.
//!
//! Basis ordering convention, used by every module downstream: a symplectic
//! basis (l_1, ..., l_2n) pairs l_i with l_{i+n}, so the Gram matrix of a
//! type (d_1, ..., d_n) is the block matrix [[0, D], [-D, 0]] with
//! D = diag(d_1, ..., d_n). Pairs are NOT interleaved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::rng::DetRng;

/// An elementary divisor chain d_1 | d_2 | ... | d_n of positive integers.
/// The chain length is the dimension; the empty chain is the type of the
/// zero-dimensional variety.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolarizationType {
    divisors: Vec<BigInt>,
}

impl std::fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.divisors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl PolarizationType {
    pub fn new(divisors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in divisors.iter().enumerate() {
            if !d.is_positive() {
                return Err(Error::InvalidChain(format!("divisor {d} is not positive")));
            }
            if i + 1 < divisors.len() {
                let next = &divisors[i + 1];
                if !(next % d).is_zero() {
                    return Err(Error::InvalidChain(format!("{d} does not divide {next}")));
                }
            }
        }
        Ok(PolarizationType { divisors })
    }

    pub fn from_i64(divisors: &[i64]) -> Result<Self> {
        PolarizationType::new(divisors.iter().map(|&d| BigInt::from(d)).collect())
    }

    /// The principal type (1, ..., 1) of the given dimension.
    pub fn principal(dim: usize) -> Self {
        PolarizationType { divisors: vec![BigInt::one(); dim] }
    }

    pub fn empty() -> Self {
        PolarizationType { divisors: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.divisors.len()
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Product of the divisors (the Pfaffian of the Gram form).
    pub fn degree(&self) -> BigInt {
        self.divisors.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn gram(&self) -> GramForm {
        let n = self.dim();
        let mut m = IntMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            m[(i, i + n)] = self.divisors[i].clone();
            m[(i + n, i)] = -self.divisors[i].clone();
        }
        GramForm { matrix: m }
    }
}

/// The matrix of a polarization's alternating form with respect to a
/// symplectic basis: [[0, D], [-D, 0]].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramForm {
    matrix: IntMatrix,
}

impl GramForm {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }
}

/// Gram matrix of a product polarization: the X-block (first 2n indices)
/// carries gram(d), the X'-block (last 2n') carries gram(d_comp). Note the
/// ambient pairing convention differs: an ambient type e of dimension n+n'
/// pairs index i with i+(n+n') across the whole index set.
pub fn product_gram(d: &PolarizationType, d_comp: &PolarizationType) -> IntMatrix {
    IntMatrix::block_diag(&[d.gram().matrix(), d_comp.gram().matrix()])
}

/// True iff a is an integer matrix with a^T * gram(d) * a = gram(d).
/// Every accepted matrix has determinant +1; this is asserted.
pub fn is_symplectic(a: &IntMatrix, d: &PolarizationType) -> Result<bool> {
    let n2 = 2 * d.dim();
    if a.rows() != n2 || a.cols() != n2 {
        return Err(Error::SizeMismatch(format!(
            "matrix is {}x{}, type {d} needs {n2}x{n2}",
            a.rows(),
            a.cols()
        )));
    }
    let g = d.gram().into_matrix();
    let ok = a.transpose().mul(&g).mul(a) == g;
    if ok {
        assert!(a.det()?.is_one(), "symplectic matrices have determinant one");
    }
    Ok(ok)
}

/// Termwise divisibility e_i | d_i of two chains of the same length (the
/// necessary condition for an isogeny type (D, E) to be realizable).
pub fn type_divides(e: &PolarizationType, d: &PolarizationType) -> Result<bool> {
    if e.dim() != d.dim() {
        return Err(Error::LengthMismatch(e.dim(), d.dim()));
    }
    Ok(e.divisors().iter().zip(d.divisors()).all(|(ei, di)| (di % ei).is_zero()))
}

/// Generators of Sp(D, Z) used by `random_symplectic`: for each i the
/// one-parameter transvections [[I, E_ii], [0, I]] and [[I, 0], [E_ii, I]],
/// for each i < j the paired transvections with B = (d_j/d_i) E_ij + E_ji
/// (integral because the divisors form a chain), and the block inversion
/// [[0, -I], [I, 0]]. No completeness claim is made for this set; it is a
/// test-data generator, not an enumeration of the group.
fn symplectic_generators(d: &PolarizationType) -> Vec<IntMatrix> {
    let n = d.dim();
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let upper = |b: &IntMatrix| -> IntMatrix {
        let mut g = IntMatrix::identity(2 * n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j + n)] = b[(i, j)].clone();
            }
        }
        g
    };
    let lower = |c: &IntMatrix| -> IntMatrix {
        let mut g = IntMatrix::identity(2 * n);
        for i in 0..n {
            for j in 0..n {
                g[(i + n, j)] = c[(i, j)].clone();
            }
        }
        g
    };
    for i in 0..n {
        let mut b = IntMatrix::zeros(n, n);
        b[(i, i)] = BigInt::one();
        gens.push(upper(&b));
        gens.push(lower(&b));
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut b = IntMatrix::zeros(n, n);
            b[(i, j)] = &d.divisors()[j] / &d.divisors()[i];
            b[(j, i)] = BigInt::one();
            gens.push(upper(&b));
            gens.push(lower(&b));
        }
    }
    // [[0, -I], [I, 0]]
    let mut s = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        s[(i, i + n)] = BigInt::from(-1);
        s[(i + n, i)] = BigInt::one();
    }
    gens.push(s);
    gens
}

/// A deterministic product of `word_length` random elementary generators of
/// Sp(D, Z), with random choice of generator or its inverse at each step.
pub fn random_symplectic(d: &PolarizationType, word_length: usize, seed: u64) -> IntMatrix {
    let n = d.dim();
    let mut acc = IntMatrix::identity(2 * n);
    if n == 0 {
        return acc;
    }
    let gens = symplectic_generators(d);
    let mut rng = DetRng::new(seed);
    for _ in 0..word_length {
        let g = rng.pick(&gens);
        let step = if rng.coin() { g.clone() } else { g.unimodular_inverse() };
        acc = acc.mul(&step);
    }
    debug_assert!(is_symplectic(&acc, d).unwrap());
    acc
}

/// Frobenius normal form of a nondegenerate integer alternating form:
/// returns the divisor chain d and a unimodular c with c^T * j * c = gram(d).
///
/// The algorithm repeatedly picks the entry of minimal nonzero absolute
/// value, improves it until it divides every entry it meets (the usual
/// Euclidean descent), completes a hyperbolic pair, splits off its
/// orthogonal complement and recurses.
pub fn alternating_type(j: &IntMatrix) -> Result<(PolarizationType, IntMatrix)> {
    if !j.is_square() {
        return Err(Error::NotAlternating);
    }
    let k = j.rows();
    if *j != j.transpose().neg() {
        return Err(Error::NotAlternating);
    }
    if !k.is_multiple_of(2) {
        return Err(Error::Degenerate);
    }

    let mut a = j.clone();
    let mut c = IntMatrix::identity(k);
    let mut active: Vec<usize> = (0..k).collect();
    let mut pairs: Vec<(usize, usize, BigInt)> = Vec::new();

    // Congruence operation e_dst += alpha * e_src on the form and the
    // accumulated basis change.
    fn basis_add(a: &mut IntMatrix, c: &mut IntMatrix, dst: usize, src: usize, alpha: &BigInt) {
        if alpha.is_zero() {
            return;
        }
        let k = a.rows();
        for q in 0..k {
            let t = alpha * &a[(src, q)];
            a[(dst, q)] += t;
        }
        for p in 0..k {
            let t = alpha * &a[(p, src)];
            a[(p, dst)] += t;
        }
        for p in 0..c.rows() {
            let t = alpha * &c[(p, src)];
            c[(p, dst)] += t;
        }
    }

    // Division with remainder of minimal absolute value.
    fn round_div(x: &BigInt, g: &BigInt) -> BigInt {
        let (mut q, r) = x.div_rem(g);
        let twice = BigInt::from(2) * r.abs();
        if twice > g.abs() {
            if (x.is_negative()) != (g.is_negative()) {
                q -= 1;
            } else {
                q += 1;
            }
        }
        q
    }

    while !active.is_empty() {
        // Minimal nonzero entry of the active block.
        let mut pivot: Option<(usize, usize)> = None;
        for &p in &active {
            for &q in &active {
                if p != q && !a[(p, q)].is_zero() {
                    let better = match pivot {
                        None => true,
                        Some(b) => a[(p, q)].abs() < a[b].abs(),
                    };
                    if better {
                        pivot = Some((p, q));
                    }
                }
            }
        }
        let Some((mut i, mut jj)) = pivot else {
            return Err(Error::Degenerate);
        };
        if a[(i, jj)].is_negative() {
            std::mem::swap(&mut i, &mut jj);
        }
        let g = a[(i, jj)].clone();

        // Reduce any entry in row i or row j that g does not divide; each
        // reduction strictly shrinks the minimum, so this loop ends.
        let mut improved = false;
        for &kk in &active {
            if kk == i || kk == jj {
                continue;
            }
            if !(&a[(i, kk)] % &g).is_zero() {
                let alpha = -round_div(&a[(i, kk)], &g);
                basis_add(&mut a, &mut c, kk, jj, &alpha);
                improved = true;
                break;
            }
            if !(&a[(jj, kk)] % &g).is_zero() {
                let beta = round_div(&a[(jj, kk)], &g);
                basis_add(&mut a, &mut c, kk, i, &beta);
                improved = true;
                break;
            }
        }
        if improved {
            continue;
        }

        // g divides both rows: split off the hyperbolic pair (e_i, e_j).
        for &kk in &active {
            if kk == i || kk == jj {
                continue;
            }
            let beta = -(&a[(i, kk)] / &g);
            let gamma = &a[(jj, kk)] / &g;
            basis_add(&mut a, &mut c, kk, jj, &beta);
            basis_add(&mut a, &mut c, kk, i, &gamma);
            debug_assert!(a[(i, kk)].is_zero() && a[(jj, kk)].is_zero());
        }

        // The pivot must divide the rest of the block for the chain
        // property; if not, fold the offending row back in and retry.
        let mut dirty = false;
        'scan: for &p in &active {
            if p == i || p == jj {
                continue;
            }
            for &q in &active {
                if q == i || q == jj || p == q {
                    continue;
                }
                if !(&a[(p, q)] % &g).is_zero() {
                    basis_add(&mut a, &mut c, i, p, &BigInt::one());
                    dirty = true;
                    break 'scan;
                }
            }
        }
        if dirty {
            continue;
        }

        pairs.push((i, jj, g));
        active.retain(|&p| p != i && p != jj);
    }

    // Reorder columns so the first members of the pairs come first.
    let n = pairs.len();
    let mut perm = IntMatrix::zeros(k, k);
    for (idx, (i, jj, _)) in pairs.iter().enumerate() {
        perm[(*i, idx)] = BigInt::one();
        perm[(*jj, idx + n)] = BigInt::one();
    }
    let c_final = c.mul(&perm);
    let d = PolarizationType::new(pairs.into_iter().map(|(_, _, g)| g).collect())
        .expect("pivot chain is a divisor chain");
    debug_assert_eq!(c_final.transpose().mul(j).mul(&c_final), d.gram().into_matrix());
    Ok((d, c_final))
}
