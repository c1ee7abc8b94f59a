use alloc::vec::Vec;

use crate::perm::Violation;
use crate::slipface::SfViolation;

/// Errors raised by the core library.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid one-line notation: {0}")]
    InvalidOneLine(&'static str),
    #[error("not a bijection ({} violation(s), first: {})", .0.len(), .0[0])]
    NotABijection(Vec<Violation>),
    #[error("invalid generator set: {0}")]
    InvalidGeneratorSet(&'static str),
    #[error("window of length {needed} exceeds the cap of {cap}")]
    ResourceLimit { needed: usize, cap: usize },
    #[error("permutation has infinitely many inversions")]
    InfiniteInversions,
    #[error("not a slipface ({} violation(s), first: {})", .0.len(), .0[0])]
    NotASlipface(Vec<SfViolation>),
    #[error("slipface is not submodular: delta({a},{b}) = {value}")]
    NotSubmodular { a: i64, b: i64, value: i64 },
    #[error("inconsistent slipface near column {b}")]
    InconsistentSlipface { b: i64 },
    #[error("rank grid disagrees with the asymptote at ({a},{b}): {found} != {expected}")]
    AsymptoteMismatch { a: i64, b: i64, found: i64, expected: i64 },
    #[error("result failed closure verification after widening the box")]
    ClosureVerification,
    #[error("essential-set comparison needs chi_s <= chi_t, got {chi_s} > {chi_t}")]
    ShiftPrecondition { chi_s: i64, chi_t: i64 },
    #[error("shift mismatch: expected {expected}, got {found}")]
    ShiftMismatch { expected: i64, found: i64 },
    #[error("not dominated at ({a},{b}): {lhs} < {rhs}")]
    NotDominated { a: i64, b: i64, lhs: i64, rhs: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(&'static str),
    #[error("scan radius too small")]
    InsufficientRadius,
    #[error("oracle expects a permutation of 1..={0}")]
    NotInSd(usize),
    #[error("no unique extremum: {0}")]
    TheoremViolation(&'static str),
}

impl Error {
    /// True for errors caused by configured resource caps.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
