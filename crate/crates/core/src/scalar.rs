//! Numeric abstraction shared by every solver in the crate.
//!
//! Everything is written against [`Scalar`] so the same code runs on `f32`,
//! `f64`, and exact rationals ([`crate::Exact`]). Exact arithmetic is what the
//! tests use when a comparison is too close to trust binary floating point.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

pub trait Scalar:
    Num + Signed + Copy + PartialOrd + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// Parses a decimal literal such as `12`, `-1.9` or `1e-7`.
    fn parse_decimal(s: &str) -> Option<Self>;

    /// Decimal rendering that `parse_decimal` maps back to the same value.
    /// `None` when the value has no finite decimal expansion.
    fn to_decimal(&self) -> Option<String>;

    fn is_finite_value(&self) -> bool;

    /// The value as an `i64`, if it is exactly integral and in range.
    fn to_exact_integer(&self) -> Option<i64>;

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }

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
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn parse_decimal(s: &str) -> Option<Self> {
                let s = s.trim();
                if !looks_decimal(s) {
                    return None;
                }
                s.parse::<$t>().ok().filter(|v| v.is_finite())
            }

            fn to_decimal(&self) -> Option<String> {
                // Display is the shortest representation that round-trips.
                self.is_finite().then(|| format!("{}", self))
            }

            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }

            fn to_exact_integer(&self) -> Option<i64> {
                if self.is_finite() && self.fract() == 0.0 && self.abs() < 9.0e15 {
                    Some(*self as i64)
                } else {
                    None
                }
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

macro_rules! ratio_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $int)
            }

            fn parse_decimal(s: &str) -> Option<Self> {
                let d = DecimalParts::parse(s.trim())?;
                let mut digits: $int = 0;
                for c in d.digits.bytes() {
                    digits = digits.checked_mul(10)?.checked_add((c - b'0') as $int)?;
                }
                let ten: $int = 10;
                let exp = d.exponent;
                let mag = ten.checked_pow(exp.unsigned_abs())?;
                let value = if exp >= 0 {
                    Ratio::from_integer(digits.checked_mul(mag)?)
                } else {
                    Ratio::new(digits, mag)
                };
                Some(if d.negative { -value } else { value })
            }

            fn to_decimal(&self) -> Option<String> {
                let mut den = *self.denom();
                let mut twos = 0u32;
                let mut fives = 0u32;
                while den % 2 == 0 {
                    den /= 2;
                    twos += 1;
                }
                while den % 5 == 0 {
                    den /= 5;
                    fives += 1;
                }
                if den != 1 {
                    return None;
                }
                let places = twos.max(fives);
                let scale = (10 as $int).checked_pow(places)?;
                let scaled = self.numer().checked_mul(scale / self.denom())?;
                let neg = scaled < 0;
                let abs = scaled.unsigned_abs().to_string();
                let body = if places == 0 {
                    abs
                } else {
                    let p = places as usize;
                    let padded = format!("{:0>width$}", abs, width = p + 1);
                    let (int_part, frac_part) = padded.split_at(padded.len() - p);
                    format!("{}.{}", int_part, frac_part)
                };
                Some(if neg { format!("-{}", body) } else { body })
            }

            fn is_finite_value(&self) -> bool {
                true
            }

            fn to_exact_integer(&self) -> Option<i64> {
                if self.is_integer() {
                    i64::try_from(self.to_integer()).ok()
                } else {
                    None
                }
            }
        }
    };
}

ratio_scalar!(i64);
ratio_scalar!(i128);

fn looks_decimal(s: &str) -> bool {
    DecimalParts::parse(s).is_some()
}

/// Sign, significant digits and power-of-ten exponent of a decimal literal.
struct DecimalParts<'a> {
    negative: bool,
    digits: std::borrow::Cow<'a, str>,
    exponent: i32,
}

impl<'a> DecimalParts<'a> {
    fn parse(s: &'a str) -> Option<Self> {
        let (negative, rest) = match s.as_bytes().first()? {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exp) = match rest.find(['e', 'E']) {
            Some(pos) => (&rest[..pos], rest[pos + 1..].parse::<i32>().ok()?),
            None => (rest, 0),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = if frac_part.is_empty() {
            std::borrow::Cow::Borrowed(int_part)
        } else {
            std::borrow::Cow::Owned(format!("{}{}", int_part, frac_part))
        };
        let exponent = exp.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
        Some(DecimalParts {
            negative,
            digits,
            exponent,
        })
    }
}

/// `true` when `a` and `b` agree to within `tol` in absolute value.
pub fn approx_eq<T: Scalar>(a: T, b: T, tol: T) -> bool {
    (a - b).abs() <= tol
}

pub(crate) fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}
