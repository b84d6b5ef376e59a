//! Finite abelian groups in invariant-factor form. These carry the kernels
//! of isogenies (the cokernels F and G of the lattice maps).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Invariant factors f1 | f2 | ... | fk with every fi >= 2. The empty list
/// is the trivial group, so the representation is canonical and equality of
/// groups is equality of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup({self})")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

impl FiniteAbelianGroup {
    /// Factors must form a divisor chain with no unit entries.
    pub fn new(invariant_factors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in invariant_factors.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidChain(format!("factor {d} is less than 2")));
            }
            if i + 1 < invariant_factors.len() {
                let next = &invariant_factors[i + 1];
                if !(next % d).is_zero() {
                    return Err(Error::InvalidChain(format!("{d} does not divide {next}")));
                }
            }
        }
        Ok(FiniteAbelianGroup { invariant_factors })
    }

    /// Builds from a Smith diagonal, dropping unit factors. Zero entries are
    /// rejected (infinite quotient).
    pub fn from_diagonal(diag: &[BigInt]) -> Result<Self> {
        let mut factors = Vec::new();
        for d in diag {
            if d.is_zero() {
                return Err(Error::Singular);
            }
            if !d.is_one() {
                factors.push(d.clone());
            }
        }
        FiniteAbelianGroup::new(factors)
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariant_factors: Vec::new() }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::one(), |acc, d| acc * d)
    }
}
