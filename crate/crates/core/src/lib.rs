//! Exact wall combinatorics for finitely generated Coxeter groups.
//!
//! Everything is computed over real cyclotomic fields with certified signs:
//! root systems by depth, half-space nesting, wall distances and separators,
//! chains of nested roots, and a desk-scale model of the Niblo-Reeves cube
//! complex.

pub mod algebra;
pub mod chains;
pub mod cubes;
pub mod error;
pub mod roots;
pub mod walls;

pub use error::{Error, Result};
