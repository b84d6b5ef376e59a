//! Exact integer and rational linear algebra: normal forms, lattices,
//! cokernels and coset enumeration. Everything here is pure and immutable;
//! values are safe to share across threads.

mod group;
mod int;
mod lattice;
mod rat;

pub use group::FiniteAbelianGroup;
pub use int::{orthogonal_complement, IntMatrix};
pub use lattice::Lattice;
pub use rat::RatMatrix;
