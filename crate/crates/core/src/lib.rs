//! Exact state complexity of regular-language operations.
//!
//! The pieces fit together like this: [`transform`] models how letters act
//! on states, [`dfa`] holds complete deterministic automata and their
//! minimization, [`modifier`] expresses operations on languages as
//! letter-blind recipes on state spaces, [`monster`] builds the automata
//! whose alphabet realizes every possible letter action, [`oracle`] checks
//! modifiers against direct word-level definitions, and [`engine`] sweeps
//! monsters over all final-set choices to compute worst-case minimal sizes
//! exactly.
//!
//! The crate is `no_std` and allocates, so it can sit under any front end.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod dfa;
pub mod engine;
mod error;
pub mod modifier;
pub mod monster;
pub mod oracle;
pub mod transform;

pub use bitset::StateSet;
pub use dfa::{Cdfa, Minimization, StateConfig};
pub use error::{Error, Result};
pub use transform::Transformation;
