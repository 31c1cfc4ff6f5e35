//! Exact computations with finite partially multiplicative quandles (PMQs).

pub mod braid;
pub mod bar;
pub mod catalog;
pub mod completion;
pub mod construct;
pub mod envelope;
pub mod error;
pub mod free;
pub mod gd;
pub mod group;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod perm;
pub mod pmq;
pub mod properties;
pub mod racks;
pub mod ring;
pub mod symgeo;
pub mod validate;

pub use error::{Error, Result};
pub use pmq::{Elem, FinitePmq};
