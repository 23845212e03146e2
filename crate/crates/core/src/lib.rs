//! Exact computational toolkit for axial algebras of Monster type.
//!
//! The crate is `no_std` (it needs `alloc`): every operation is a pure
//! function of exact data. File formats and the command-line driver live in
//! the companion `axial` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exactnum;
pub mod algebra;
pub mod catalog;
pub mod forms;
pub mod fusion;
pub mod groups;
pub mod decompose;
pub mod idempotents;
