//! Error type shared across the kernel.

use std::fmt;

use crate::symbol::Symbol;

/// Errors produced by kernel operations.
///
/// Structural misuse (mismatched derivation counts, derivation indices out of
/// range) panics instead; these variants cover data-dependent failures that a
/// caller can meaningfully handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero polynomial or a rational function with zero
    /// denominator.
    DivisionByZero,
    /// A symbol was not declared in the ranking in use.
    UnknownSymbol(Symbol),
    /// An operation that needs at least one nonzero polynomial got none.
    EmptyInput,
    /// The system contains a nonzero constant, i.e. `1 ∈ [Σ]`.
    InconsistentSystem,
    /// A set offered as autoreduced is not (element indices of the violation).
    NotAutoreduced(usize, usize),
    /// A constant polynomial where a ranked (nonconstant) one is required.
    ConstantPolynomial,
    /// A rational function outside the constants was required.
    ConstantGenerator,
    /// `is_delta_irreducible` met an algebraic tower outside the supported
    /// class (every earlier element linear in its leader or in a parametric
    /// variable).
    UnsupportedTower(String),
    /// A soundness check failed: component selection or certification did not
    /// behave the way the underlying theory guarantees.
    Certification(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::UnknownSymbol(s) => write!(f, "symbol `{s}` not declared in the ranking"),
            Error::EmptyInput => write!(f, "no nonzero input polynomials"),
            Error::InconsistentSystem => {
                write!(f, "system contains a nonzero constant (empty variety)")
            }
            Error::NotAutoreduced(i, j) => {
                write!(f, "element {i} is not reduced with respect to element {j}")
            }
            Error::ConstantPolynomial => write!(f, "constant polynomial has no leader"),
            Error::ConstantGenerator => write!(f, "generator must not be constant"),
            Error::UnsupportedTower(msg) => write!(f, "unsupported algebraic tower: {msg}"),
            Error::Certification(msg) => write!(f, "certification failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
