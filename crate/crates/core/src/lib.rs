//! Exact arithmetic for symmetric unimodular forms over the integers.
//!
//! The crate computes Arf-type invariants of a form paired with a mod-2
//! functional, builds and verifies Lagrangians inside the kernel of that
//! functional, decides elementarity of the associated surgery obstruction,
//! and carries the λ-invariant arithmetic for the 28 homotopy 7-spheres.

pub mod error;
pub mod intlin;
pub mod gf2;
pub mod json;
pub mod forms;
pub mod classify;
pub mod arf;
pub mod oracle;
pub mod obstruction;
pub mod spheres;
pub mod sample;
pub mod schema;

pub use error::{Error, Result};
pub use forms::{GramForm, IntegralFunctional, ModTwoFunctional, Parity};
pub use intlin::{IntMatrix, IntVector};
