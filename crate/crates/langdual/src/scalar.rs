//! Scalar traits. The algebra here is exact, so the generic parameters range
//! over exact rings (machine or big integers and rationals); floats satisfy
//! the bounds but are never used by the library itself.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

/// A field with a total order, as needed by Gauss elimination and Fourier-Motzkin.
pub trait Field:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}
impl<T> Field for T where
    T: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// An exact integer type.
pub trait IntScalar:
    Clone + Debug + Display + Ord + std::hash::Hash + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}
impl<T> IntScalar for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + std::hash::Hash
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Arbitrary-precision rationals; the default coefficient field.
pub type Q = BigRational;
/// Lattice coordinates.
pub type Z = i64;
/// Small rationals for quick weight arithmetic.
pub type Q64 = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

/// Exact conversion of an integral rational to i64.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}
