//! Exact computations on double Bruhat cells of a group and its Langlands
//! dual: root data, Laurent and tropical arithmetic, cluster seeds,
//! generalized minors, potential cones with their crystal structure, and the
//! constant Poisson structure on the partial tropicalization.

#![allow(clippy::needless_range_loop)]

pub mod cluster;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod polyhedra;
pub mod poisson;
pub mod potential;
pub mod registry;
pub mod rootdata;
pub mod scalar;
pub mod symbolic;

pub use error::{Error, Result};
pub use rootdata::{build_datum, datum_by_name, CartanDatum, Isogeny, RootDatum, WeylWord};
pub use scalar::{q, qr, Q};
