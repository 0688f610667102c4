//! Exact verification workbench for fractional Helly bounds.
//!
//! The crate is organised bottom-up:
//!
//! * [`complex`] stores finite simplicial complexes and uniform hypergraphs
//!   over small vertex sets, with exact clique and independence search.
//! * [`homology`] computes reduced rational Betti numbers by fraction-free
//!   elimination and certifies the d-Leray property exhaustively.
//! * [`bounds`] evaluates every closed-form quantity (binomial bounds,
//!   `g_d(n, t, r)`, Turán numbers, the fractional Helly fractions).
//! * [`constructions`] generates the extremal complexes and hypergraphs.
//! * [`geometry`] is an exact rational polyhedral kernel: simplex and
//!   Fourier–Motzkin feasibility, the inductive slab construction, product
//!   lifts and nerve extraction.
//! * [`verify`] binds everything into named verification suites producing
//!   machine-readable reports.

pub mod bounds;
pub mod complex;
pub mod config;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod serde_util;
pub mod verify;

pub use error::{Error, Result};
