//! The symplectic base-change action on type data: (A, B) sends an isogeny
//! matrix M to B M A^{-1}, and the analogous actions on embedding and
//! morphism data. Validity and kernel invariants are preserved; both are
//! asserted here because every caller relies on them.

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::morphisms::embedding::EmbeddingType;
use crate::morphisms::isogeny::IsogenyType;
use crate::morphisms::morphism::MorphismType;
use crate::symplectic::is_symplectic;

fn require_symplectic(w: &IntMatrix, t: &crate::symplectic::PolarizationType) -> Result<()> {
    if !is_symplectic(w, t)? {
        return Err(Error::NotSymplectic);
    }
    Ok(())
}

/// (A, B) with A symplectic for the source and B for the target:
/// M goes to B M A^{-1}.
pub fn apply_isogeny_equivalence(
    t: &IsogenyType,
    a: &IntMatrix,
    b: &IntMatrix,
) -> Result<IsogenyType> {
    require_symplectic(a, t.source())?;
    require_symplectic(b, t.target())?;
    let moved = b.mul(t.matrix()).mul(&a.unimodular_inverse());
    let out = IsogenyType::new(t.source().clone(), t.target().clone(), moved)?;
    debug_assert_eq!(t.check().valid, out.check().valid);
    Ok(out)
}

/// (A, A', B): M goes to B M (A x A')^{-1}.
pub fn apply_embedding_equivalence(
    t: &EmbeddingType,
    a: &IntMatrix,
    a_comp: &IntMatrix,
    b: &IntMatrix,
) -> Result<EmbeddingType> {
    require_symplectic(a, t.sub())?;
    require_symplectic(a_comp, t.complement())?;
    require_symplectic(b, t.ambient())?;
    let block = IntMatrix::block_diag(&[a, a_comp]);
    let moved = b.mul(t.matrix()).mul(&block.unimodular_inverse());
    let out = EmbeddingType::new(
        t.sub().clone(),
        t.complement().clone(),
        t.ambient().clone(),
        moved,
    )?;
    debug_assert_eq!(t.check().valid, out.check().valid);
    Ok(out)
}

/// Witnesses for the six polarization slots of a morphism type, in the
/// order (D, D', E, H, H', K).
pub struct MorphismWitnesses<'a> {
    pub source_sub: &'a IntMatrix,
    pub source_complement: &'a IntMatrix,
    pub source_ambient: &'a IntMatrix,
    pub target_sub: &'a IntMatrix,
    pub target_complement: &'a IntMatrix,
    pub target_ambient: &'a IntMatrix,
}

/// Simultaneous base change on all six varieties: M goes to
/// B M (A x A')^{-1}, N to K N (C x C')^{-1}, P to C P A^{-1}, writing
/// (A, A', B, C, C', K) for the six witnesses.
pub fn apply_morphism_equivalence(
    t: &MorphismType,
    w: &MorphismWitnesses<'_>,
) -> Result<MorphismType> {
    let delta = t.delta();
    require_symplectic(w.source_sub, &delta.source_sub)?;
    require_symplectic(w.source_complement, &delta.source_complement)?;
    require_symplectic(w.source_ambient, &delta.source_ambient)?;
    require_symplectic(w.target_sub, &delta.target_sub)?;
    require_symplectic(w.target_complement, &delta.target_complement)?;
    require_symplectic(w.target_ambient, &delta.target_ambient)?;

    let source_block = IntMatrix::block_diag(&[w.source_sub, w.source_complement]);
    let target_block = IntMatrix::block_diag(&[w.target_sub, w.target_complement]);
    let m_new = w
        .source_ambient
        .mul(t.embedding_source())
        .mul(&source_block.unimodular_inverse());
    let n_new = w
        .target_ambient
        .mul(t.embedding_target())
        .mul(&target_block.unimodular_inverse());
    let p_new = w
        .target_sub
        .mul(t.isogeny())
        .mul(&w.source_sub.unimodular_inverse());
    let out = MorphismType::new(delta.clone(), m_new, n_new, p_new)?;
    debug_assert_eq!(
        t.check().map(|r| r.valid).ok(),
        out.check().map(|r| r.valid).ok()
    );
    Ok(out)
}
