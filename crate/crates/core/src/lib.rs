//! Exact invariants of a hypersurface singularity from the combinatorics of a
//! strict normal crossings resolution.
//!
//! The input is a [`model::ResolutionModel`]: the components of a resolution's
//! special fiber with their multiplicities and orders, and the intersection
//! strata with their Euler characteristics and (optionally) explicit classes.
//! From that data the crate computes, with exact integer arithmetic
//! throughout:
//!
//! - generating series — the volume and reduced Poincaré series and the
//!   motivic zeta function — as finite sums of closed-form terms
//!   ([`series`]), with two independent routes to any `T^d` coefficient;
//! - the `T -> infinity` limit, motivic volume, and nearby-cycles class
//!   ([`series`]);
//! - monodromy invariants: Lefschetz numbers, their generating series, and
//!   the monodromy zeta function ([`monodromy`]);
//! - blow-up rewriting of a model together with the class substitution that
//!   makes the series invariant ([`model`], [`series`]);
//! - brute-force jet counts over small prime fields, cross-checking the zeta
//!   function's point-count specialization ([`jets`]).
//!
//! Models are read and written as JSON documents ([`document`]); jet-count
//! inputs are ordinary polynomial expressions ([`poly`]).

pub mod document;
pub mod error;
pub mod jets;
pub mod laurent;
pub mod model;
pub mod monodromy;
pub mod motivic;
pub mod poly;
pub mod series;
#[cfg(test)]
mod testutil;

pub use error::Error;
pub use laurent::LaurentPoly;
pub use model::{
    BlowUp, Component, ComponentId, ResolutionModel, Stratum, Violation, SUPPORT_TOTAL,
};
pub use motivic::{MotivicClass, Specialization, StratumSymbol, SymbolId};
pub use series::{MotivicSeries, SeriesTerm};
