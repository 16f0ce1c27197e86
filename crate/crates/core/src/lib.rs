//! Exact computation of the genus-`g` generating functions of rooted maps
//! and rooted hypermaps.
//!
//! After the substitution `s = t(1 - 2t)` (hypermaps, counted by darts) or
//! `s = t(1 - 3t)` (maps, counted by edges) each generating function is a
//! rational function of `t` whose denominator is a product of two linear
//! factors. [`engine`] computes these genus by genus, [`series`] turns them
//! back into count sequences and recomputes the same counts from a plain
//! coefficient recursion, and [`oracle`] counts small maps and hypermaps by
//! brute force over permutation pairs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod engine;
mod error;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
