//! Core domain types and their validators.
//!
//! Symbols, vertices and points are 0-indexed throughout. Every type is
//! immutable once validated.

mod design;
mod graph;
mod latin;
mod net;
mod srg;

pub use design::{binomial, DesignError, SteinerDesign};
pub use graph::{Graph, GraphError};
pub use latin::{validate_latin_square, Conjugate, Isotopy, LatinError, LatinSquare};
pub use net::{Net, NetError};
pub use srg::{srg_check, srg_complement_params, SrgError, SrgParams};
