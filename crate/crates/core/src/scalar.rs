//! Numeric carriers for measure values.
//!
//! Values derived from intensions or counts are exact [`Rational`]s so that
//! equalities such as "union equals max" can be asserted with zero tolerance.
//! Values from simulation or user-supplied reals use `f64` and compare with an
//! absolute tolerance. Both implement [`Scalar`], which is all the generic
//! distribution and relation code needs.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default absolute tolerance for comparisons of real-valued quantities.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// An exact reduced fraction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    /// Builds `num / den` in lowest terms. Panics when `den` is zero.
    pub fn new(num: i128, den: i128) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn from_integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        let whole = n.div_euclid(d);
        let rest = n.rem_euclid(d);
        whole as f64 + rest as f64 / d as f64
    }

    /// Parses the exact value of a decimal literal such as `0.125`, `-3`,
    /// or `2.5e-3`.
    pub fn from_decimal_str(text: &str) -> Option<Self> {
        let text = text.trim();
        let (mantissa, exponent) = match text.find(['e', 'E']) {
            Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
            None => (text, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let all_digits = format!("{int_part}{frac_part}");
        let mut num: i128 = if all_digits.is_empty() { 0 } else { all_digits.parse().ok()? };
        let scale = exponent - frac_part.len() as i32;
        let mut den: i128 = 1;
        if scale >= 0 {
            num = num.checked_mul(10i128.checked_pow(scale as u32)?)?;
        } else {
            den = 10i128.checked_pow((-scale) as u32)?;
        }
        if negative {
            num = -num;
        }
        Some(Rational::new(num, den))
    }

    /// Best exact representation of a finite float: the shortest decimal that
    /// round-trips to the same `f64`.
    pub fn from_f64(value: f64) -> Option<Self> {
        if !value.is_finite() {
            return None;
        }
        Rational::from_decimal_str(&format!("{value}"))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Accepts `a/b` fractions and decimal literals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((n, d)) = s.split_once('/') {
            let num: i128 = n.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let den: i128 = d.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if den == 0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            return Ok(Rational::new(num, den));
        }
        Rational::from_decimal_str(s).ok_or_else(|| format!("`{s}` is not a number"))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Ratio::one())
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_integer(n)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 3)?;
        st.serialize_field("num", &self.numer())?;
        st.serialize_field("den", &self.denom())?;
        st.serialize_field("decimal", &self.to_f64())?;
        st.end()
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a number, a \"a/b\" string, or an object {\"num\": int, \"den\": int}")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v as i128))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v as i128))
    }

    fn visit_i128<E: de::Error>(self, v: i128) -> Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
        Rational::from_f64(v).ok_or_else(|| E::custom(format!("non-finite number {v}")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Rational, A::Error> {
        let mut num: Option<i128> = None;
        let mut den: Option<i128> = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "num" => num = Some(map.next_value()?),
                "den" => den = Some(map.next_value()?),
                _ => {
                    map.next_value::<de::IgnoredAny>()?;
                }
            }
        }
        let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
        let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
        if den == 0 {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Arithmetic carrier shared by the probability and possibility code.
pub trait Scalar:
    Copy
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Serialize
    + Send
    + Sync
    + 'static
{
    /// Whether comparisons are exact (tolerance is ignored).
    const EXACT: bool;

    /// Equality up to `tol` for reals, exact equality for rationals.
    fn close_to(self, other: Self, tol: f64) -> bool;

    fn to_f64(self) -> f64;

    /// The fraction `num / den`; `den` must be non-zero.
    fn ratio(num: u64, den: u64) -> Self;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `self <= other`, allowing `tol` of slack for reals.
    fn at_most(self, other: Self, tol: f64) -> bool {
        self <= other || self.close_to(other, tol)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn close_to(self, other: Self, _tol: f64) -> bool {
        self == other
    }

    fn to_f64(self) -> f64 {
        Rational::to_f64(&self)
    }

    fn ratio(num: u64, den: u64) -> Self {
        Rational::new(num as i128, den as i128)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn close_to(self, other: Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
}

/// Sum of a slice of scalars.
pub fn sum<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::zero(), |acc, &v| acc + v)
}

/// Maximum of a slice; zero for an empty slice.
pub fn max<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::zero(), |acc, &v| acc.max_of(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(Rational::from_decimal_str("0.1"), Some(Rational::new(1, 10)));
        assert_eq!(Rational::from_decimal_str("-2.50"), Some(Rational::new(-5, 2)));
        assert_eq!(Rational::from_decimal_str("1e-3"), Some(Rational::new(1, 1000)));
        assert_eq!(Rational::from_decimal_str("3"), Some(Rational::from_integer(3)));
        assert_eq!(Rational::from_decimal_str("abc"), None);
        assert_eq!(Rational::from_decimal_str("."), None);
    }

    #[test]
    fn floats_map_to_their_shortest_decimal() {
        assert_eq!(Rational::from_f64(0.3), Some(Rational::new(3, 10)));
        assert_eq!(Rational::from_f64(1e-7), Some(Rational::new(1, 10_000_000)));
        assert_eq!(Rational::from_f64(f64::NAN), None);
    }

    #[test]
    fn json_forms() {
        let r: Rational = serde_json::from_str("0.25").unwrap();
        assert_eq!(r, Rational::new(1, 4));
        let r: Rational = serde_json::from_str("\"2/6\"").unwrap();
        assert_eq!(r, Rational::new(1, 3));
        let r: Rational = serde_json::from_str(r#"{"num": 2, "den": 4, "decimal": 0.5}"#).unwrap();
        assert_eq!(r, Rational::new(1, 2));
        let text = serde_json::to_string(&Rational::new(1, 4)).unwrap();
        assert_eq!(text, r#"{"num":1,"den":4,"decimal":0.25}"#);
        assert!(serde_json::from_str::<Rational>(r#"{"num": 1, "den": 0}"#).is_err());
    }

    #[test]
    fn scalar_comparisons() {
        assert!(0.1f64.close_to(0.1 + 1e-12, DEFAULT_TOLERANCE));
        assert!(!Rational::new(1, 3).close_to(Rational::new(333, 1000), 1.0));
        assert!(1.0f64.at_most(1.0 - 1e-12, 1e-9));
        assert_eq!(max(&[Rational::new(1, 2), Rational::new(2, 3)]), Rational::new(2, 3));
        assert_eq!(sum(&[Rational::new(1, 2), Rational::new(1, 3)]), Rational::new(5, 6));
    }
}
