//! Verdicts of the type checkers, with stable condition identifiers so that
//! callers (and the CLI's JSON reports) can assert on causes.

use std::fmt;

use crate::exact::{FiniteAbelianGroup, IntMatrix};

/// Named conditions a checker can fail. The serialized names are stable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Condition {
    /// The isogeny Gram equation D = M^T E M.
    GramEquation,
    /// The embedding Gram equation D x D' = M^T E M.
    GramProduct,
    /// Saturation of M^{-1} Z^k in the X coordinate block.
    SaturationX,
    /// Saturation of M^{-1} Z^k in the X' coordinate block.
    SaturationXComp,
    /// The isogeny part must kill the kernel: P L_F in Z^{2m}.
    KernelKill,
    /// Integrality of the induced matrix Q = N (P + 0) M^{-1}.
    InducedIntegrality,
    /// Dimension bookkeeping between the components of a compound datum.
    TypeMismatch,
}

impl Condition {
    pub fn as_str(&self) -> &'static str {
        match self {
            Condition::GramEquation => "gram_equation",
            Condition::GramProduct => "gram_product",
            Condition::SaturationX => "saturation_x",
            Condition::SaturationXComp => "saturation_xcomp",
            Condition::KernelKill => "kernel_kill",
            Condition::InducedIntegrality => "induced_integrality",
            Condition::TypeMismatch => "type_mismatch",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Witness pair for the factorization P = Pbar * R with Coker(R) = F,
/// certifying the kernel-kill condition in the form the classification
/// theory states it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorWitness {
    pub pbar: IntMatrix,
    pub r: IntMatrix,
}

/// Outcome of a type check. `valid` holds exactly when `failures` is empty;
/// the kernel fields are present whenever the determinant conditions allow
/// them to be computed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub valid: bool,
    pub failures: Vec<Condition>,
    /// Invariant factors of F = coker(M).
    pub kernel: Option<FiniteAbelianGroup>,
    /// Invariant factors of G = coker(N), for morphism types.
    pub target_kernel: Option<FiniteAbelianGroup>,
    /// The induced matrix Q = N (P + 0) M^{-1} when integral.
    pub induced_matrix: Option<IntMatrix>,
    /// Sign of det M for isogeny checks.
    pub det_sign: Option<i8>,
    /// Witness for the kernel-kill factorization, for morphism types.
    pub factor_witness: Option<FactorWitness>,
}

impl CheckReport {
    pub(crate) fn from_failures(failures: Vec<Condition>) -> Self {
        CheckReport {
            valid: failures.is_empty(),
            failures,
            kernel: None,
            target_kernel: None,
            induced_matrix: None,
            det_sign: None,
            factor_witness: None,
        }
    }

    pub fn failure_names(&self) -> Vec<&'static str> {
        self.failures.iter().map(Condition::as_str).collect()
    }

    pub fn has_failure(&self, c: Condition) -> bool {
        self.failures.contains(&c)
    }
}
