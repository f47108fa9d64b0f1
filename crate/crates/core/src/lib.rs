//! Combinatorics and exact geometry of embedded 3-periodic nets.
//!
//! The crate covers labelled quotient graphs ([`lqg`]), exact properness and
//! graph knots of model nets ([`geometry`]), topological invariants
//! ([`invariants`]), the depth-1 lattice and double-lattice censuses
//! ([`enumeration`]), orbit counts of n-grid patterns ([`orbits`]),
//! translation-transitive grids from superlattices ([`superlattices`]) and
//! free-space scans for a single mobile node ([`freespace`]).

pub mod enumeration;
pub mod error;
pub mod freespace;
pub mod geometry;
pub mod invariants;
pub mod lqg;
pub mod orbits;
pub mod rational;
pub mod snf;
pub mod superlattices;
pub mod vec3;

pub use error::{Error, Result};
