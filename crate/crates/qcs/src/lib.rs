//! Exact computations around quantum cluster algebras on finite windows of
//! infinite quivers: the limit quiver and its surgered red/green companion,
//! stabilized g-vectors by mutation tracking and by the braid action,
//! quantization matrices and their compatibility identities, and a quantum
//! torus over `Z[t^{1/2}, t^{-1/2}]` in which the exchange-relation
//! identities (quantum QQ-systems, Baxter relations, the oscillator and
//! double-Bruhat presentations) are verified exactly.
//!
//! Everything is exact integer or exact Laurent-polynomial arithmetic; there
//! are no tolerances anywhere. Each capability has a runnable example under
//! `examples/`, and the `qcs` binary exposes the same computations as
//! subcommands.

pub mod cli;
pub mod error;
pub mod gvector;
pub mod lie;
pub mod matrix;
pub mod oscillator;
pub mod quantization;
pub mod quiver;
pub mod report;
pub mod torus;

pub use error::{Error, Result};
