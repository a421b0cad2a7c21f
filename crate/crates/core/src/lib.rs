//! Quantum graphs whose vertices carry a preferred orientation.
//!
//! The vertex coupling is the cyclic one, `(ψ_{j+1} − ψ_j) + i(ψ'_{j+1} + ψ'_j) = 0`,
//! i.e. `A = U − I`, `B = i(U + I)` with `U` the cyclic shift. The crate
//! computes
//!
//! - star-graph bound states ([`star`]),
//! - on-shell scattering matrices and their energy limits ([`vertex`]),
//! - band spectra of the square and hexagonal lattices built from such
//!   vertices ([`lattice`]),
//! - a claim-by-claim comparison of published band properties against
//!   computation ([`verify`]).
//!
//! Every quantitative routine has an independent brute-force counterpart
//! (secular determinants assembled from the matching conditions, Brillouin
//! zone sampling, dense scans) used by the test suites.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod numerics;
pub mod star;
pub mod verify;
pub mod vertex;

pub use error::{Error, Result};
