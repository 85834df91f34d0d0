//! Nielsen graphs of generating tuples.
//!
//! The vertices of `N_n(G)` are the generating `n`-tuples of a group `G`;
//! its darts are the elementary Nielsen moves. This crate builds finite
//! fragments of these graphs for a handful of concrete groups and checks
//! structural facts about them: growth, isoperimetry, closed walks,
//! spanning forests of `N_n(Z)`, coverings induced by epimorphisms, and
//! Nielsen classes of finite groups.

pub mod amenability;
pub mod cli;
pub mod covering;
pub mod dihedral;
pub mod error;
pub mod explorer;
pub mod forest;
pub mod group;
mod json;
pub mod nielsen;
pub mod tame;

pub use error::{Error, Result};
pub use group::{Element, Group, GroupSpec};
pub use nielsen::{MoveWord, NielsenMove, Sign, Tuple};
