//! Demazure products and their adjoints on eventually periodic permutations
//! of the integers, computed through min-plus products of slipface functions.
#![no_std]

extern crate alloc;

pub mod demazure;
mod error;
pub mod oracle;
pub mod order;
pub mod perm;
pub mod slipface;

pub use error::Error;
pub use perm::{GeneratorSet, Limits, Permutation, RawPerm};
pub use slipface::{Comparison, EssPoint, EssSet, Grid, Slipface, Witness};
