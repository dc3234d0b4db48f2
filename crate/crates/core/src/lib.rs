//! Exact computation of first resonance varieties of line arrangements.
//!
//! The pipeline: an [`incidence::Arrangement`] yields collections of multiple
//! points, each collection yields the symmetric matrix `Q = JᵗJ - E`
//! ([`qforms`]), whose blocks are classified as finite, affine or indefinite
//! ([`vinberg`]). [`resonance`] turns that into cocycle spaces and the
//! irreducible components of `R₁`. [`labelings`], [`realizer`] and
//! [`pencils`] study which matrices `Q` can occur.

// Index loops mirror the matrix notation.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod incidence;
pub mod io;
pub mod labelings;
pub mod linalg;
pub mod par;
pub mod pencils;
pub mod qforms;
pub mod realizer;
pub mod resonance;
pub mod vinberg;

pub use error::{Error, Result};
