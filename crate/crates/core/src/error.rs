//! Shared error type for every computation in this crate.
//!
//! Parsing has its own error types (`document::DocumentError`, `poly::ParseError`)
//! because they carry positional context; everything downstream of a parsed,
//! validated model reports through [`Error`].

use thiserror::Error;

use crate::model::ComponentId;
use crate::motivic::SymbolId;

/// Errors raised by model queries, series construction, specialization, and
/// the jet-counting oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A subset referenced a component id the model does not declare.
    #[error("unknown component id `{0}`")]
    UnknownComponent(ComponentId),

    /// An operation was asked about the empty component subset.
    #[error("component subset must be nonempty")]
    EmptySubset,

    /// The requested blow-up center is not one of the model's listed strata.
    #[error("`{0}` is not a listed stratum of this model")]
    NotAStratum(String),

    /// Blow-up centers must be intersections of at least two components.
    #[error("blow-up center `{0}` must contain at least two components")]
    SingletonCenter(String),

    /// A component lacks the discrepancy (`nu`) required by the operation.
    #[error("component `{0}` has no discrepancy (nu)")]
    MissingDiscrepancy(ComponentId),

    /// A component lacks the differential-form order (`mu`) required by the operation.
    #[error("component `{0}` has no form order (mu); derive one from nu or supply it")]
    MissingGaugeOrder(ComponentId),

    /// A stratum lacks an Euler characteristic entry for the requested support tag.
    #[error("stratum `{stratum}` has no chi entry for support tag `{tag}`")]
    MissingChi { stratum: String, tag: String },

    /// A stratum lacks the explicit cover class needed for a total point count.
    #[error("stratum `{0}` carries no class_L data, required for total point counts")]
    MissingClassL(String),

    /// A specialization was applied to a class containing an unassigned symbol.
    #[error("no value assigned to stratum symbol `{0}`")]
    MissingSymbolValue(SymbolId),

    /// The Lefschetz variable may not specialize to zero (negative powers occur).
    #[error("the Lefschetz variable cannot specialize to 0")]
    ZeroLValue,

    /// Jet-count bookkeeping needs the model's ambient dimension.
    #[error("model declares no ambient_dim, required for jet-count comparisons")]
    MissingAmbientDim,

    /// Jet counting works over a prime field only.
    #[error("{0} is not a prime field size")]
    NonPrimeField(u64),

    /// Point-count comparisons require the field size to be coprime to all multiplicities.
    #[error("field size {q} shares a factor with multiplicity {n} of component `{id}`")]
    NonCoprimeMultiplicity { q: u64, n: u64, id: ComponentId },

    /// Brute-force enumeration would exceed the configured budget.
    #[error("enumeration would evaluate {needed} jets, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    /// A polynomial and a jet (or monomial) disagree about the number of variables.
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// The zero polynomial admits no jet solutions and is rejected up front.
    #[error("polynomial is identically zero")]
    EmptyPolynomial,

    /// A point-count specialization failed to land in the integers.
    #[error("point-count specialization is not an integer: {0}")]
    InexactPointCount(String),

    /// A fixed-width integer computation would overflow.
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}
