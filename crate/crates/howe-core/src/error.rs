//! Error types.
//!
//! Errors are split into two tiers mirroring the CLI exit-code contract:
//! [`DomainError`] for invalid or out-of-range inputs (exit status 1), and
//! [`InternalError`] for violated internal invariants (exit status 2). An
//! internal error means the library found its own mathematics to be wrong;
//! it is never a user mistake.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Domain(DomainError),
    Internal(InternalError),
}

/// Invalid input: rejected preconditions, unsupported parameters, parse
/// failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainError {
    /// `p` is not an odd prime.
    NotAnOddPrime(u64),
    /// `p` exceeds the supported bound.
    PrimeTooLarge { p: u64, max: u64 },
    /// Extension degree outside {1, 2, 4, 8}.
    UnsupportedDegree(usize),
    /// No tower path between the two field contexts.
    NoTowerPath { from: usize, to: usize },
    /// Inversion or division by zero.
    DivisionByZero,
    /// A coefficient is outside `[0, p)` or has the wrong length.
    InvalidCoefficients(String),
    /// Element string failed to parse.
    ParseElement(String),
    /// Polynomial of unexpected degree.
    WrongDegree { expected: usize, got: usize },
    /// Polynomial has repeated roots where a squarefree one is required.
    RepeatedRoots,
    /// Legendre parameter in {0, 1} (degenerate curve).
    DegenerateLegendre,
    /// Configuration is not of genus 3.
    NotGenus3,
    /// Genus-degenerate configuration (λ₃ lands in {0, 1} or a formula
    /// denominator vanishes); enumeration skips these uniformly.
    GenusDegenerate,
    /// The curve parameters are singular (a ∈ {±2}, b ∈ {±2}, or a = b).
    SingularCurve,
    /// Square roots do not exist within the supported tower.
    TowerExhausted,
    /// Field too large for brute-force point counting.
    FieldTooLarge { q: u128, max: u128 },
    /// Verdicts require q to be an even power of p.
    OddPowerField { k: usize },
    /// Brute enumeration cap exceeded.
    BruteEnumerationTooLarge { p: u64, max: u64 },
    /// Automorphism labels are only defined for p > 7.
    LabelsRequireLargeP { p: u64 },
    /// Generic precondition failure with context.
    Precondition(String),
}

/// A violated internal invariant; carries enough context to debug.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InternalError {
    /// A counted curve violated the Hasse–Weil bound.
    HasseWeilViolation { q: u64, genus: u32, n: u64 },
    /// A root of the Deuring polynomial was not a fourth power in F_{p²}.
    FourthPowerPostcondition { p: u64 },
    /// Measured reduced automorphism order outside {4, 8, 16, 24}.
    AutOrderOutOfRange { order: usize },
    /// A canonical model measured an unexpected automorphism order.
    CalibrationFailed {
        model: &'static str,
        expected: usize,
        got: usize,
    },
    /// A superspecial curve disagreed with the maximal/minimal prediction.
    MaxMinViolation { p: u64, n: u64 },
    /// Deterministic root splitting failed to make progress.
    RootSplitStalled,
    /// Catch-all for impossible states.
    Invariant(&'static str),
}

impl From<DomainError> for Error {
    fn from(e: DomainError) -> Self {
        Error::Domain(e)
    }
}

impl From<InternalError> for Error {
    fn from(e: InternalError) -> Self {
        Error::Internal(e)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(e) => write!(f, "{e}"),
            Error::Internal(e) => write!(f, "internal invariant violation: {e}"),
        }
    }
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::NotAnOddPrime(p) => write!(f, "{p} is not an odd prime"),
            DomainError::PrimeTooLarge { p, max } => {
                write!(f, "p = {p} exceeds the supported bound {max}")
            }
            DomainError::UnsupportedDegree(k) => {
                write!(f, "extension degree {k} is not one of 1, 2, 4, 8")
            }
            DomainError::NoTowerPath { from, to } => {
                write!(f, "no tower path from degree {from} to degree {to}")
            }
            DomainError::DivisionByZero => write!(f, "division by zero"),
            DomainError::InvalidCoefficients(s) => write!(f, "invalid coefficients: {s}"),
            DomainError::ParseElement(s) => write!(f, "cannot parse element: {s}"),
            DomainError::WrongDegree { expected, got } => {
                write!(f, "expected degree {expected}, got {got}")
            }
            DomainError::RepeatedRoots => write!(f, "polynomial has repeated roots"),
            DomainError::DegenerateLegendre => {
                write!(f, "Legendre parameter must avoid 0 and 1")
            }
            DomainError::NotGenus3 => write!(f, "configuration is not of genus 3"),
            DomainError::GenusDegenerate => write!(f, "genus-degenerate configuration"),
            DomainError::SingularCurve => write!(f, "singular curve parameters"),
            DomainError::TowerExhausted => {
                write!(f, "square root does not exist within the F_{{p^8}} tower")
            }
            DomainError::FieldTooLarge { q, max } => {
                write!(f, "field of size {q} exceeds the counting limit {max}")
            }
            DomainError::OddPowerField { k } => {
                write!(f, "verdicts require an even prime power, got degree {k}")
            }
            DomainError::BruteEnumerationTooLarge { p, max } => {
                write!(f, "brute enumeration requires p <= {max}, got {p}")
            }
            DomainError::LabelsRequireLargeP { p } => {
                write!(f, "automorphism labels require p > 7, got {p}")
            }
            DomainError::Precondition(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for InternalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InternalError::HasseWeilViolation { q, genus, n } => write!(
                f,
                "point count {n} violates the Hasse-Weil bound for genus {genus} over F_{q}"
            ),
            InternalError::FourthPowerPostcondition { p } => write!(
                f,
                "a supersingular Legendre parameter at p = {p} is not a fourth power"
            ),
            InternalError::AutOrderOutOfRange { order } => {
                write!(
                    f,
                    "reduced automorphism order {order} outside {{4, 8, 16, 24}}"
                )
            }
            InternalError::CalibrationFailed {
                model,
                expected,
                got,
            } => write!(
                f,
                "canonical model {model} measured automorphism order {got}, expected {expected}"
            ),
            InternalError::MaxMinViolation { p, n } => write!(
                f,
                "superspecial curve at p = {p} counted {n} points, contradicting the \
                 maximal/minimal prediction"
            ),
            InternalError::RootSplitStalled => write!(f, "deterministic root splitting stalled"),
            InternalError::Invariant(s) => write!(f, "{s}"),
        }
    }
}
