//! Shared generators for the integration suites: random valid type data of
//! every kind, and random Siegel points.

use num_bigint::BigInt;
use num_complex::Complex64;

use pav_core::exact::IntMatrix;
use pav_core::morphisms::{
    apply_morphism_equivalence, check_morphism_type, leading_inclusion_matrix,
    product_inclusion_matrix, search_embedding_matrices, search_isogeny_matrices, IsogenyType,
    MorphismDelta, MorphismType, MorphismWitnesses,
};
use pav_core::rng::DetRng;
use pav_core::siegel::{CMat, SiegelPoint};
use pav_core::symplectic::{random_symplectic, PolarizationType};

pub fn ptype(ds: &[i64]) -> PolarizationType {
    PolarizationType::from_i64(ds).unwrap()
}

/// A random element of the Siegel space with comfortable conditioning:
/// symmetric real part in [-1/2, 1/2], imaginary part diagonally dominant.
pub fn random_siegel_point(n: usize, rng: &mut DetRng) -> SiegelPoint {
    let mut re = vec![0.0; n * n];
    let mut im = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let a = rng.f64_unit() - 0.5;
            let b = 0.4 * (rng.f64_unit() - 0.5);
            re[i * n + j] = a;
            re[j * n + i] = a;
            im[i * n + j] = b;
            im[j * n + i] = b;
        }
    }
    for i in 0..n {
        im[i * n + i] += 1.5;
    }
    SiegelPoint::new(CMat::from_fn(n, n, |i, j| {
        Complex64::new(re[i * n + j], im[i * n + j])
    }))
    .unwrap()
}

/// A valid isogeny type (d, e, m) with randomized matrix: the canonical
/// multiplication matrix conjugated by random symplectic words.
pub fn random_valid_isogeny(
    d: &PolarizationType,
    e: &PolarizationType,
    word: usize,
    rng: &mut DetRng,
) -> IsogenyType {
    let n = d.dim();
    let mut diag: Vec<BigInt> = vec![BigInt::from(1); n];
    for i in 0..n {
        diag.push(&d.divisors()[i] / &e.divisors()[i]);
    }
    let m0 = IntMatrix::diagonal(&diag);
    let a = random_symplectic(d, word, rng.next_u64());
    let b = random_symplectic(e, word, rng.next_u64());
    let m = b.mul(&m0).mul(&a.unimodular_inverse());
    IsogenyType::new(d.clone(), e.clone(), m).unwrap()
}

/// The worked order-two-kernel embedding: D = D' = (2), E = (1, 2),
/// F = Z/2 embedded diagonally in the 2-torsion of X x X'.
pub fn diagonal_halves_embedding_matrix() -> IntMatrix {
    IntMatrix::from_rows_i64(&[
        &[2, 0, 0, 0],
        &[-1, 0, 1, 0],
        &[0, 1, 0, 1],
        &[0, 0, 0, 1],
    ])
}

/// Base morphism types covering the decomposition shapes: pure isogenies,
/// trivial-kernel products, and a nontrivial kernel that the isogeny part
/// kills. All are valid; this is asserted.
pub fn base_morphism_types() -> Vec<MorphismType> {
    let mut out = Vec::new();

    // Pure isogeny, zero-dimensional complements.
    let delta = MorphismDelta {
        source_sub: ptype(&[3]),
        source_complement: PolarizationType::empty(),
        source_ambient: ptype(&[3]),
        target_sub: ptype(&[1]),
        target_complement: PolarizationType::empty(),
        target_ambient: ptype(&[1]),
    };
    out.push(
        MorphismType::new(
            delta,
            IntMatrix::identity(2),
            IntMatrix::identity(2),
            IntMatrix::diagonal(&[BigInt::from(1), BigInt::from(3)]),
        )
        .unwrap(),
    );

    // Trivial-kernel product decomposition with a degree-2 isogeny part.
    let delta = MorphismDelta {
        source_sub: ptype(&[2]),
        source_complement: ptype(&[1]),
        source_ambient: ptype(&[1, 2]),
        target_sub: ptype(&[1]),
        target_complement: ptype(&[1]),
        target_ambient: ptype(&[1, 1]),
    };
    out.push(
        MorphismType::new(
            delta,
            product_inclusion_matrix(1, 1, &[1]),
            leading_inclusion_matrix(1, 1),
            IntMatrix::diagonal(&[BigInt::from(1), BigInt::from(2)]),
        )
        .unwrap(),
    );

    // Nontrivial kernel F = Z/2 in the source ambient variety, killed by
    // the isogeny part P = diag(2, 1).
    let delta = MorphismDelta {
        source_sub: ptype(&[2]),
        source_complement: ptype(&[2]),
        source_ambient: ptype(&[1, 2]),
        target_sub: ptype(&[1]),
        target_complement: ptype(&[2]),
        target_ambient: ptype(&[1, 2]),
    };
    out.push(
        MorphismType::new(
            delta,
            diagonal_halves_embedding_matrix(),
            leading_inclusion_matrix(1, 1),
            IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(1)]),
        )
        .unwrap(),
    );

    for t in &out {
        let report = check_morphism_type(t).unwrap();
        assert!(report.valid, "base morphism invalid: {:?}", report.failure_names());
    }
    out
}

/// Morphism types found by small bounded searches: source embeddings with
/// kernel of order two (D = D' = (2) inside E = (1, 2)), isogeny parts that
/// kill the kernel, and the canonical target inclusion. Deterministic.
pub fn searched_morphism_types(limit: usize) -> Vec<MorphismType> {
    let d = ptype(&[2]);
    let e = ptype(&[1, 2]);
    let h = ptype(&[1]);
    let mut out = Vec::new();
    let embeddings = search_embedding_matrices(&d, &d, &e, 1, &[]);
    let isogenies = search_isogeny_matrices(&d, &h, 2);
    for m in &embeddings {
        for p in &isogenies {
            let delta = MorphismDelta {
                source_sub: d.clone(),
                source_complement: d.clone(),
                source_ambient: e.clone(),
                target_sub: h.clone(),
                target_complement: ptype(&[2]),
                target_ambient: ptype(&[1, 2]),
            };
            let t = MorphismType::new(
                delta,
                m.clone(),
                leading_inclusion_matrix(1, 1),
                p.clone(),
            )
            .unwrap();
            if check_morphism_type(&t).unwrap().valid {
                out.push(t);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Applies a random six-witness equivalence to a morphism type.
pub fn randomize_morphism(t: &MorphismType, word: usize, rng: &mut DetRng) -> MorphismType {
    let delta = t.delta();
    let w_d = random_symplectic(&delta.source_sub, word, rng.next_u64());
    let w_dc = random_symplectic(&delta.source_complement, word, rng.next_u64());
    let w_e = random_symplectic(&delta.source_ambient, word, rng.next_u64());
    let w_h = random_symplectic(&delta.target_sub, word, rng.next_u64());
    let w_hc = random_symplectic(&delta.target_complement, word, rng.next_u64());
    let w_k = random_symplectic(&delta.target_ambient, word, rng.next_u64());
    apply_morphism_equivalence(
        t,
        &MorphismWitnesses {
            source_sub: &w_d,
            source_complement: &w_dc,
            source_ambient: &w_e,
            target_sub: &w_h,
            target_complement: &w_hc,
            target_ambient: &w_k,
        },
    )
    .unwrap()
}
