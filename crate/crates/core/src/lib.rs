//! Rank-saturating systems and linear sets over finite fields.
//!
//! The crate builds F_q-subspaces U of F_{q^m}^k, computes their linear sets
//! in PG(k-1, q^m), decides how many points of U are needed to reach every
//! point of the space, and relates that index to the rank covering radius of
//! the dual code. It also carries the algebra needed to check the explicit
//! families of rank-4 systems in PG(2, q^4).

pub mod appendix;
pub mod cert;
pub mod config;
pub mod constructions;
pub mod error;
pub mod gf;
pub mod geometry;
pub mod linalg;
pub mod linset;
pub mod par;
pub mod rankcov;
pub mod reproduce;
pub mod search;

pub use error::{Error, Result};
pub use gf::{Elt, FieldSpec};
