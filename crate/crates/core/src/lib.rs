//! Word problems, run-counting quasimorphisms and palindromic-length bounds
//! for HNN extensions and amalgamated free products of finite groups.

pub mod amalgam;
pub mod cli;
pub mod error;
pub mod group;
pub mod hnn;
pub mod lab;
pub mod palindrome;
pub mod runs;

pub use amalgam::{AmalInstance, AmalWord, Syllable};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use hnn::{HnnInstance, HnnWord, Letter};
pub use runs::{Mark, RunStats, Sign, Signature};
