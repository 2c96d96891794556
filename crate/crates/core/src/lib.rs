//! Finite groups, their commuting graphs, and certified perfection tests.
//!
//! The pipeline is: build a group from a [`named::GroupSpec`], form its
//! commuting graph restricted to elements with non-abelian centralizers,
//! collapse twin vertices, then decide whether the graph is Berge. A
//! non-Berge verdict always carries an odd hole or odd antihole that can be
//! re-checked independently.

#![allow(clippy::needless_range_loop)]

pub mod bits;
pub mod cg;
pub mod classify;
pub mod cli;
pub mod error;
pub mod gf;
pub mod grp;
pub mod named;
pub mod perf;
pub mod wit;

pub use error::{Error, Result};
