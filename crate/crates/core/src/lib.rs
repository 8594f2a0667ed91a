//! Nonrepetitive (Thue) colorings of graphs and of lexicographic products.
//!
//! - [`graphs`]: paths, cycles, rooted trees, the outerplanar gadget and
//!   `G[E_k]` / `G[K_k]` products.
//! - [`sequences`]: square-free and palindrome-free words, peak/gap analysis.
//! - [`colorings`]: explicit colorings of path and tree products, layer color
//!   sets and the richness labeling.
//! - [`verifier`]: repetitive path, tuple and walk checks with witnesses.
//! - [`solver`]: exact branch-and-bound for Thue numbers and tuple colorings.
//! - [`json`]: the JSON file formats.

pub mod colorings;
pub mod error;
pub mod graphs;
pub mod json;
pub mod sequences;
pub mod solver;
pub mod verifier;

pub use error::{Error, Result};
