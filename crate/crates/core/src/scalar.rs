//! The numeric abstraction shared by every solver stage.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Zero};

use crate::money::Money;

/// A cost or payoff value.
///
/// Shortest paths and the compromise selection only need ordered addition
/// and subtraction. Price formation additionally divides by batch sizes and
/// applies a rational margin; that arithmetic runs in [`Scalar::Wide`] and is
/// narrowed back once at the end, which is where fixed-point rounding happens.
///
/// NaN-valued floats are not supported.
pub trait Scalar:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Zero
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Exact (or widest available) type for intermediate price arithmetic.
    type Wide: Num + Clone + PartialOrd + Debug;

    fn widen(self) -> Self::Wide;

    fn narrow(wide: &Self::Wide) -> Self;

    fn wide_from_ratio(ratio: Ratio<i64>) -> Self::Wide;

    fn wide_from_int(n: u64) -> Self::Wide {
        Self::wide_from_ratio(Ratio::from_integer(
            i64::try_from(n).expect("integer out of range"),
        ))
    }

    /// Multiplies by a nonnegative integer count (demand, batch).
    fn times(self, n: u64) -> Self {
        Self::from_u64(n).expect("count not representable") * self
    }
}

impl Scalar for Money {
    type Wide = Ratio<i128>;

    fn widen(self) -> Ratio<i128> {
        self.to_ratio()
    }

    fn narrow(wide: &Ratio<i128>) -> Money {
        Money::from_ratio(wide)
    }

    fn wide_from_ratio(ratio: Ratio<i64>) -> Ratio<i128> {
        Ratio::new(i128::from(*ratio.numer()), i128::from(*ratio.denom()))
    }

    fn times(self, n: u64) -> Money {
        let n = i64::try_from(n).expect("count out of range");
        Money::from_minor(self.minor().checked_mul(n).expect("money overflow"))
    }
}

impl Scalar for f64 {
    type Wide = f64;

    fn widen(self) -> f64 {
        self
    }

    fn narrow(wide: &f64) -> f64 {
        *wide
    }

    fn wide_from_ratio(ratio: Ratio<i64>) -> f64 {
        *ratio.numer() as f64 / *ratio.denom() as f64
    }
}

impl Scalar for f32 {
    type Wide = f64;

    fn widen(self) -> f64 {
        f64::from(self)
    }

    fn narrow(wide: &f64) -> f32 {
        *wide as f32
    }

    fn wide_from_ratio(ratio: Ratio<i64>) -> f64 {
        *ratio.numer() as f64 / *ratio.denom() as f64
    }
}

impl Scalar for Ratio<i64> {
    type Wide = Ratio<i64>;

    fn widen(self) -> Ratio<i64> {
        self
    }

    fn narrow(wide: &Ratio<i64>) -> Ratio<i64> {
        *wide
    }

    fn wide_from_ratio(ratio: Ratio<i64>) -> Ratio<i64> {
        ratio
    }
}

/// Exact rational view of a [`Money`] amount, for callers that move a
/// scenario onto the rational scalar.
pub fn money_to_rational(m: Money) -> Ratio<i64> {
    Ratio::new(m.minor(), Money::SCALE)
}
