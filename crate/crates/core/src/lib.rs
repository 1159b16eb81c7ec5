//! Double coset digraphs and Cayley digraphs of finite groups.
//!
//! Builds Cayley and double coset digraphs, recognizes wreath-product
//! structure directly from connection sets, computes automorphism groups
//! both by brute force and by structural formulas, and transfers
//! isomorphisms between coset digraphs and Cayley digraphs.
//!
//! Index-based loops over points and group elements are the house style;
//! the corresponding pedantic lint stays off crate-wide.
#![allow(clippy::needless_range_loop)]

pub mod autiso;
pub mod construct;
pub mod digraph;
pub mod error;
pub mod fixtures;
pub mod genwreath;
pub mod group;
pub mod json;
pub mod perm;
pub mod recognize;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
