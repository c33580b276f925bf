//! Exact-arithmetic toolkit for deciding and certifying universal optimality
//! of error-correcting codes and quasicodes in Hamming space.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! codes ──> quasicode (distance distributions) ──> lp (Delsarte bounds)
//!                                     │                    │
//!                                     └──> certificates <──┘
//! ```
//!
//! with `exact` and `krawtchouk` supplying the rational arithmetic and the
//! Hamming-scheme transform underneath, `removal` checking the
//! codeword-deletion theory, `search` providing ground truth by exhaustive
//! enumeration at small block lengths, and `catalog` holding the registry of
//! known LP universally optimal families together with their certification
//! routes.

pub mod catalog;
pub mod certificates;
pub mod codes;
pub mod error;
pub mod exact;
pub(crate) mod isometry;
pub mod krawtchouk;
pub mod lp;
pub mod quasicode;
pub mod removal;
pub mod search;

pub use error::{Error, Result};
