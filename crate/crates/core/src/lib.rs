//! Local cohomology of monomial ideals and subspace arrangements.
//!
//! Three independent routes compute the same numbers:
//!
//! * the intersection poset and reduced homology of its order complexes
//!   ([`poset`], [`homology`], [`invariants`]),
//! * the multigraded Čech complex on the minimal generators ([`cech`]),
//! * Koszul homology of the Alexander dual ([`koszul`]).
//!
//! [`invariants::cross_validate`] runs them against each other.

pub mod cech;
pub mod corpus;
pub mod homology;
pub mod invariants;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod poset;

use thiserror::Error;

pub use linalg::{FieldSpec, Matrix};
pub use monomial::{parse_ideal, Monomial, MonomialIdeal, SignVector};
pub use poset::{AffineSubspace, IntersectionPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Ideal(#[from] monomial::IdealError),
    #[error(transparent)]
    Poset(#[from] poset::PosetError),
    #[error(transparent)]
    Cech(#[from] cech::CechError),
    #[error("routes disagree: {0}")]
    CrossRouteMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
