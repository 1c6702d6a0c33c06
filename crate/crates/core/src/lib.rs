//! Exact computation of the G-invariant, catenary data and Tutte polynomial
//! of small explicitly presented matroids, with the constructions, parameters,
//! reconstructions and configuration machinery built on them.

pub mod configuration;
pub mod constructions;
pub mod corpus;
pub mod element_set;
pub mod error;
pub mod freeproduct;
pub mod ginvariant;
pub mod matroid;
pub mod numeric;
pub mod parameters;
pub mod reconstruction;
pub mod verify;

pub use element_set::ElementSet;
pub use error::{Error, Result};
pub use ginvariant::{CatenaryData, Composition, GInvariant, RankSequence, TuttePolynomial};
pub use matroid::{build_matroid, BuildOptions, Matroid, MatroidFile, MatroidPresentation};
