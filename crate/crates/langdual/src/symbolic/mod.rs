//! Laurent and subtraction-free arithmetic, tropicalization and PL maps.

pub mod laurent;
pub mod rational;
pub mod trop;

pub use laurent::{det, parse, vars, LaurentPoly, Vars};
pub use rational::{
    compose_maps, maps_equal, positivity_normalize, tropicalize, tropicalize_map, PosRational,
};
pub use trop::{canonicalize as trop_canonicalize, pl_equal, pl_equal_on, pl_eval, Form, PLMap, TropPoly, TropRational};
