//! Isotopy and isomorphism testing for Latin squares, nets, Steiner designs
//! and conference graphs, built on the generator-enumeration technique.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! benchmarking live in the companion `isokit` crate.
//!
//! Every search that can only be exhaustive at small sizes reports a
//! three-valued [`Verdict`]: a verified witness, a certified absence (the
//! search space was fully enumerated) or `Unknown` (the node budget ran out).

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cube;
pub mod designs;
pub mod gen;
pub mod isotopy;
pub mod oracle;
pub mod perm;
pub mod recover;
pub mod refine;
pub mod search;
pub mod structures;

pub use search::{Budget, Verdict};
pub use structures::{
    Graph, Isotopy, LatinSquare, Net, SrgParams, SteinerDesign,
};
