//! Exact non-negative distances and the signed rationals derived from them.
//!
//! Every distance in the pipeline is an exact rational parsed from a decimal
//! string. Geometry never rounds: segment endpoints that should coincide
//! compare equal.

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseLengthError {
    #[error("empty numeric literal")]
    Empty,
    #[error("invalid decimal literal `{0}`")]
    Invalid(String),
    #[error("negative length `{0}`")]
    Negative(String),
}

/// Parse a decimal literal (optional sign, integer part, optional fraction)
/// into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational, ParseLengthError> {
    let raw = s.trim();
    if raw.is_empty() {
        return Err(ParseLengthError::Empty);
    }
    let (neg, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw.strip_prefix('+').unwrap_or(raw)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseLengthError::Invalid(s.to_string()));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(ParseLengthError::Invalid(s.to_string()));
    }
    let digits: String = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&digits).map_err(|_| ParseLengthError::Invalid(s.to_string()))?;
    if neg {
        numer = -numer;
    }
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(numer, denom))
}

/// Render an exact rational as a decimal string when the reduced denominator
/// is of the form 2^a·5^b, falling back to `p/q` otherwise.
///
/// The decimal form is canonical: no trailing zeros, no leading `+`.
pub fn format_exact(r: &BigRational) -> String {
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let ten = BigInt::from(10u32);

    let neg = r.is_negative();
    let numer = r.numer().abs();
    let denom = r.denom().abs();

    let mut q = denom.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&q % &two).is_zero() {
        q /= &two;
        twos += 1;
    }
    while (&q % &five).is_zero() {
        q /= &five;
        fives += 1;
    }
    if !q.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let k = twos.max(fives);
    let scaled = numer * ten.pow(k) / denom;
    let mut digits = scaled.to_string();
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if k == 0 {
        return format!("{sign}{digits}");
    }
    let k = k as usize;
    if digits.len() <= k {
        digits = format!("{}{}", "0".repeat(k + 1 - digits.len()), digits);
    }
    let split = digits.len() - k;
    format!("{sign}{}.{}", &digits[..split], &digits[split..])
}

/// Exact non-negative distance in network units.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Length(BigRational);

impl Length {
    pub fn zero() -> Self {
        Length(BigRational::zero())
    }

    pub fn from_int(v: u64) -> Self {
        Length(BigRational::from_integer(BigInt::from(v)))
    }

    /// Wrap a rational, rejecting negatives.
    pub fn from_ratio(r: BigRational) -> Result<Self, ParseLengthError> {
        if r.is_negative() {
            return Err(ParseLengthError::Negative(format_exact(&r)));
        }
        Ok(Length(r))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn halved(&self) -> Length {
        Length(&self.0 / BigRational::from_integer(BigInt::from(2u32)))
    }

    /// `self − other` when non-negative.
    pub fn checked_sub(&self, other: &Length) -> Option<Length> {
        if self >= other {
            Some(Length(&self.0 - &other.0))
        } else {
            None
        }
    }

    /// Signed difference `self − other`.
    pub fn sub_signed(&self, other: &Length) -> BigRational {
        &self.0 - &other.0
    }

    /// Best-effort float view for logging only; never used in geometry.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add<&Length> for &Length {
    type Output = Length;
    fn add(self, rhs: &Length) -> Length {
        Length(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Length> for Length {
    fn add_assign(&mut self, rhs: &Length) {
        self.0 += &rhs.0;
    }
}

impl Sub<&Length> for &Length {
    type Output = BigRational;
    fn sub(self, rhs: &Length) -> BigRational {
        &self.0 - &rhs.0
    }
}

impl FromStr for Length {
    type Err = ParseLengthError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = parse_decimal(s)?;
        if r.is_negative() {
            return Err(ParseLengthError::Negative(s.to_string()));
        }
        Ok(Length(r))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_exact(&self.0))
    }
}

impl fmt::Debug for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Length({})", format_exact(&self.0))
    }
}

/// Sum of an iterator of length references.
pub fn total<'a>(iter: impl IntoIterator<Item = &'a Length>) -> Length {
    let mut acc = Length::zero();
    for l in iter {
        acc += l;
    }
    acc
}
