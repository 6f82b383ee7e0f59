//! Exact p-element statistics for finite permutation groups.
//!
//! The crate is `no_std` and only needs `alloc`. Group elements are
//! [`Perm`]s, groups are immutable [`GroupHandle`]s backed by a
//! deterministic Schreier–Sims chain, and every count or probability is an
//! exact [`Natural`] or [`Rational`].

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod census;
pub mod classical;
pub mod constructions;
mod error;
pub mod field;
pub mod group;
pub mod perm;
pub mod quotients;
pub mod verify;

pub use arith::{Natural, Rational};
pub use error::{Error, Result};
pub use group::{GroupBuilder, GroupHandle, Limits, Structure};
pub use perm::{Perm, Point};
pub use classical::{ClassicalKind, LabeledCoset, OuterKind};
pub use field::{FieldElement, FieldSpec};
