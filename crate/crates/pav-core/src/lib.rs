//! Exact-arithmetic classification of morphisms between polarized abelian
//! varieties: isogeny, embedding and morphism types together with their
//! kernels, canonical forms, equivalence actions and bounded searches, plus
//! a floating-point Siegel-space layer that transports period matrices along
//! isogenies.
//!
//! All classification decisions are made in exact integer/rational
//! arithmetic; the numerical layer only witnesses the moduli bijections.

pub mod error;
pub mod exact;
pub mod morphisms;
pub mod rng;
pub mod siegel;
pub mod symplectic;

pub use error::{Error, Result};
pub use morphisms::{
    check_embedding_type, check_isogeny_type, check_morphism_type, decompose_morphism,
    elliptic_canonical, hecke_factor, CheckReport, Condition, EmbeddingType, IsogenyType,
    MorphismDelta, MorphismType,
};
pub use exact::{FiniteAbelianGroup, IntMatrix, Lattice, RatMatrix};
pub use symplectic::{
    alternating_type, is_symplectic, product_gram, random_symplectic, type_divides, GramForm,
    PolarizationType,
};
