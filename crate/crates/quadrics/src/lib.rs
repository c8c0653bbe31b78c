//! Exact-arithmetic analysis of pencils of two quadratic forms over Q:
//! local and global invariants, hyperbolic content at all places, witness
//! construction, finite-field oracles, and verification campaigns.

pub mod arith;
pub mod error;
pub mod fforacle;
pub mod harness;
pub mod linalg;
pub mod localglobal;
pub mod pencil;
pub mod poly;
pub mod qform;
pub mod search;

pub use error::{Error, Result};
