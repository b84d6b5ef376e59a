//! The discrete classification layer: checkers for isogeny, embedding and
//! morphism types, kernel structures, canonical forms and Hecke
//! factorization for elliptic curves, stabilizer membership, the symplectic
//! equivalence action and bounded matrix searches.

mod elliptic;
mod embedding;
mod equivalence;
mod isogeny;
mod morphism;
mod report;
mod search;

pub use elliptic::{elliptic_canonical, hecke_factor};
pub use embedding::{
    check_embedding_type, leading_inclusion_matrix, product_inclusion_matrix, saturation_oracle,
    EmbeddingType,
};
pub use equivalence::{
    apply_embedding_equivalence, apply_isogeny_equivalence, apply_morphism_equivalence,
    MorphismWitnesses,
};
pub use isogeny::{check_isogeny_type, is_in_stabilizer, kernel_structure, IsogenyType};
pub use morphism::{
    check_morphism_type, decompose_morphism, kernel_image_lattice, kernel_kill_oracle,
    Decomposition, MorphismDelta, MorphismType,
};
pub use report::{CheckReport, Condition, FactorWitness};
pub use search::{
    search_embedding_gram_matrices, search_embedding_gram_matrices_with_jobs,
    search_embedding_matrices, search_embedding_matrices_with_jobs, search_isogeny_matrices,
    search_isogeny_matrices_with_jobs, ColumnConstraint,
};
