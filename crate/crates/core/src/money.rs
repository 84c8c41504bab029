//! Fixed-point decimal money with four fractional digits.
//!
//! Values are stored as a signed count of minor units (1/10000 of a unit).
//! Addition and subtraction are exact. Multiplication and conversion from
//! exact rationals round half-up at the fourth fractional digit.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A fixed-point amount with four fractional decimal digits.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Money(i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseMoneyError {
    #[error("empty decimal literal")]
    Empty,
    #[error("invalid decimal literal `{0}`")]
    Invalid(String),
    #[error("`{0}` has nonzero digits beyond the 4th decimal place")]
    TooPrecise(String),
    #[error("`{0}` is out of range")]
    Overflow(String),
}

impl Money {
    /// Number of fractional decimal digits.
    pub const DIGITS: u32 = 4;
    /// Minor units per whole unit.
    pub const SCALE: i64 = 10_000;
    pub const ZERO: Money = Money(0);
    pub const MAX: Money = Money(i64::MAX);

    pub const fn from_minor(minor: i64) -> Self {
        Money(minor)
    }

    pub const fn from_int(units: i64) -> Self {
        Money(units * Self::SCALE)
    }

    pub const fn minor(self) -> i64 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// Exact value as a rational number.
    pub fn to_ratio(self) -> Ratio<i128> {
        Ratio::new(self.0 as i128, Self::SCALE as i128)
    }

    /// Rounds an exact rational half-up to four digits. `None` on overflow.
    pub fn try_from_ratio(value: &Ratio<i128>) -> Option<Self> {
        // floor(x * SCALE + 1/2) = floor((2 * num * SCALE + den) / (2 * den)); den > 0
        let num = value.numer().checked_mul(2 * Self::SCALE as i128)?;
        let den = value.denom().checked_mul(2)?;
        let minor = num.checked_add(*value.denom())?.div_euclid(den);
        i64::try_from(minor).ok().map(Money)
    }

    pub fn from_ratio(value: &Ratio<i128>) -> Self {
        Self::try_from_ratio(value).expect("money value out of range")
    }

    /// `true` when the rational is representable without rounding.
    pub fn is_exact(value: &Ratio<i128>) -> bool {
        (value * Ratio::from_integer(Self::SCALE as i128)).is_integer()
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }

    pub fn checked_add(self, rhs: Money) -> Option<Money> {
        self.0.checked_add(rhs.0).map(Money)
    }
}

impl fmt::Display for Money {
    /// Minimal digits: `13.95`, `24`, `2.4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let scale = Self::SCALE as u64;
        let whole = abs / scale;
        let frac = abs % scale;
        let text = if frac == 0 {
            format!("{sign}{whole}")
        } else {
            let digits = format!("{frac:04}");
            format!("{sign}{whole}.{}", digits.trim_end_matches('0'))
        };
        f.pad(&text)
    }
}

impl fmt::Debug for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Money({self})")
    }
}

impl FromStr for Money {
    type Err = ParseMoneyError;

    /// Accepts JSON-style decimal literals, including exponents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || ParseMoneyError::Invalid(s.to_string());
        if s.is_empty() {
            return Err(ParseMoneyError::Empty);
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(pos) => {
                let exp: i32 = body[pos + 1..].parse().map_err(|_| invalid())?;
                (&body[..pos], exp)
            }
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(invalid());
        }
        if mantissa.ends_with('.') && frac_part.is_empty() && mantissa.len() > 1 {
            return Err(invalid());
        }

        let mut digits: String = format!("{int_part}{frac_part}");
        // value = digits * 10^(exponent - frac_len); shift to minor units
        let shift = i64::from(exponent) - frac_part.len() as i64 + i64::from(Self::DIGITS);
        if shift < 0 {
            let cut = (-shift) as usize;
            if cut >= digits.len() {
                if digits.bytes().any(|b| b != b'0') {
                    return Err(ParseMoneyError::TooPrecise(s.to_string()));
                }
                digits = "0".to_string();
            } else {
                let (keep, dropped) = digits.split_at(digits.len() - cut);
                if dropped.bytes().any(|b| b != b'0') {
                    return Err(ParseMoneyError::TooPrecise(s.to_string()));
                }
                digits = keep.to_string();
            }
        } else {
            if shift > 40 && digits.bytes().any(|b| b != b'0') {
                return Err(ParseMoneyError::Overflow(s.to_string()));
            }
            digits.extend(std::iter::repeat_n('0', shift.min(40) as usize));
        }
        let trimmed = digits.trim_start_matches('0');
        let magnitude: i128 = if trimmed.is_empty() {
            0
        } else if trimmed.len() > 30 {
            return Err(ParseMoneyError::Overflow(s.to_string()));
        } else {
            trimmed.parse().map_err(|_| invalid())?
        };
        let signed = if negative { -magnitude } else { magnitude };
        i64::try_from(signed)
            .map(Money)
            .map_err(|_| ParseMoneyError::Overflow(s.to_string()))
    }
}

impl Add for Money {
    type Output = Money;
    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl AddAssign for Money {
    fn add_assign(&mut self, rhs: Money) {
        self.0 += rhs.0;
    }
}

impl Sub for Money {
    type Output = Money;
    fn sub(self, rhs: Money) -> Money {
        Money(self.0 - rhs.0)
    }
}

impl SubAssign for Money {
    fn sub_assign(&mut self, rhs: Money) {
        self.0 -= rhs.0;
    }
}

impl Neg for Money {
    type Output = Money;
    fn neg(self) -> Money {
        Money(-self.0)
    }
}

impl Mul for Money {
    type Output = Money;
    /// Fixed-point product, rounded half-up.
    fn mul(self, rhs: Money) -> Money {
        let product = Ratio::new(
            self.0 as i128 * rhs.0 as i128,
            (Self::SCALE * Self::SCALE) as i128,
        );
        Money::from_ratio(&product)
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        iter.fold(Money::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Money> for Money {
    fn sum<I: Iterator<Item = &'a Money>>(iter: I) -> Money {
        iter.copied().sum()
    }
}

impl Zero for Money {
    fn zero() -> Self {
        Money::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Money {
    fn one() -> Self {
        Money::from_int(1)
    }
}

impl FromPrimitive for Money {
    fn from_i64(n: i64) -> Option<Self> {
        n.checked_mul(Self::SCALE).map(Money)
    }

    fn from_u64(n: u64) -> Option<Self> {
        i64::try_from(n).ok().and_then(Self::from_i64)
    }

    fn from_f64(n: f64) -> Option<Self> {
        let scaled = (n * Self::SCALE as f64 + 0.5).floor();
        if scaled.is_finite() && scaled.abs() < i64::MAX as f64 {
            Some(Money(scaled as i64))
        } else {
            None
        }
    }
}

impl From<Money> for f64 {
    fn from(m: Money) -> f64 {
        m.to_f64()
    }
}

impl Serialize for Money {
    /// Serialized as an exact JSON number with minimal digits.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let number =
            serde_json::Number::from_str(&self.to_string()).map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Money {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let number = serde_json::Number::deserialize(deserializer)?;
        number.as_str().parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Money {
        s.parse().unwrap()
    }

    #[test]
    fn parses_short_decimal_values() {
        assert_eq!(m("13.95"), Money::from_minor(139_500));
        assert_eq!(m("1.5"), Money::from_minor(15_000));
        assert_eq!(m("24"), Money::from_int(24));
        assert_eq!(m("-0.0001"), Money::from_minor(-1));
        assert_eq!(m("2.5e1"), Money::from_int(25));
        assert_eq!(m("1234E-4"), Money::from_minor(1234));
        assert_eq!(m("1.50000"), m("1.5"));
        assert_eq!(m("0"), Money::ZERO);
    }

    #[test]
    fn rejects_excess_precision_and_garbage() {
        assert!(matches!(
            "0.00001".parse::<Money>(),
            Err(ParseMoneyError::TooPrecise(_))
        ));
        assert!(matches!(
            "1.23456".parse::<Money>(),
            Err(ParseMoneyError::TooPrecise(_))
        ));
        assert!(matches!(
            "1e-5".parse::<Money>(),
            Err(ParseMoneyError::TooPrecise(_))
        ));
        assert!(matches!("".parse::<Money>(), Err(ParseMoneyError::Empty)));
        for bad in ["abc", "1.2.3", "-", ".", "1e", "1,5"] {
            assert!(
                matches!(bad.parse::<Money>(), Err(ParseMoneyError::Invalid(_))),
                "{bad}"
            );
        }
        assert!(matches!(
            "1e30".parse::<Money>(),
            Err(ParseMoneyError::Overflow(_))
        ));
    }

    #[test]
    fn display_uses_minimal_digits() {
        assert_eq!(Money::from_minor(139_500).to_string(), "13.95");
        assert_eq!(Money::from_int(279).to_string(), "279");
        assert_eq!(Money::from_minor(24_000).to_string(), "2.4");
        assert_eq!(Money::from_minor(-5).to_string(), "-0.0005");
        assert_eq!(format!("{:>6}", Money::from_int(7)), "     7");
    }

    #[test]
    fn rational_rounding_is_half_up() {
        assert_eq!(Money::from_ratio(&Ratio::new(24, 10)), m("2.4"));
        assert_eq!(Money::from_ratio(&Ratio::new(1, 3)), m("0.3333"));
        assert_eq!(Money::from_ratio(&Ratio::new(2, 3)), m("0.6667"));
        assert_eq!(Money::from_ratio(&Ratio::new(1, 20_000)), m("0.0001"));
        assert_eq!(Money::from_ratio(&Ratio::new(-1, 20_000)), Money::ZERO);
        assert!(Money::is_exact(&Ratio::new(7, 5)));
        assert!(!Money::is_exact(&Ratio::new(1, 3)));
    }

    #[test]
    fn multiplication_by_integer_is_exact() {
        assert_eq!(Money::from_int(5) * m("13.95"), m("69.75"));
        assert_eq!(m("0.5") * m("0.0001"), m("0.0001"));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let v: Money = serde_json::from_str("15.15").unwrap();
        assert_eq!(v, m("15.15"));
        assert_eq!(serde_json::to_string(&v).unwrap(), "15.15");
        assert_eq!(serde_json::to_string(&Money::from_int(24)).unwrap(), "24");
        assert!(serde_json::from_str::<Money>("0.12345").is_err());
    }

    proptest::proptest! {
        #[test]
        fn display_parse_round_trip(minor in proptest::num::i64::ANY) {
            let value = Money::from_minor(minor);
            proptest::prop_assert_eq!(value.to_string().parse::<Money>().unwrap(), value);
        }
    }
}
