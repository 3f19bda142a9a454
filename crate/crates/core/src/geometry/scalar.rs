//! Exact rational scalars and their text forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Arbitrary-precision rational. Always reduced with a positive denominator.
pub type Scalar = BigRational;

/// `n / d` as a scalar. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Unreduced fraction with a positive denominator. Chains of arithmetic on
/// these skip the gcd after every step and reduce once at the end, or not at
/// all when only the sign is needed.
#[derive(Clone, Debug)]
pub(crate) struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    pub(crate) fn of(s: &Scalar) -> Frac {
        Frac {
            n: s.numer().clone(),
            d: s.denom().clone(),
        }
    }

    pub(crate) fn add(&self, o: &Frac) -> Frac {
        if self.d == o.d {
            return Frac {
                n: &self.n + &o.n,
                d: self.d.clone(),
            };
        }
        Frac {
            n: &self.n * &o.d + &o.n * &self.d,
            d: &self.d * &o.d,
        }
    }

    pub(crate) fn sub(&self, o: &Frac) -> Frac {
        if self.d == o.d {
            return Frac {
                n: &self.n - &o.n,
                d: self.d.clone(),
            };
        }
        Frac {
            n: &self.n * &o.d - &o.n * &self.d,
            d: &self.d * &o.d,
        }
    }

    pub(crate) fn mul(&self, o: &Frac) -> Frac {
        Frac {
            n: &self.n * &o.n,
            d: &self.d * &o.d,
        }
    }

    /// Panics on division by zero.
    pub(crate) fn div(&self, o: &Frac) -> Frac {
        assert!(!o.n.is_zero(), "division by zero");
        let (n, d) = (&self.n * &o.d, &self.d * &o.n);
        if d.is_negative() {
            Frac { n: -n, d: -d }
        } else {
            Frac { n, d }
        }
    }

    pub(crate) fn neg(&self) -> Frac {
        Frac {
            n: -&self.n,
            d: self.d.clone(),
        }
    }

    pub(crate) fn signum(&self) -> std::cmp::Ordering {
        self.n.sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub(crate) fn reduce(self) -> Scalar {
        BigRational::new(self.n, self.d)
    }
}

/// Nearest-ish `f64` for display and filtering. Non-finite when out of range.
pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite `f64` into a rational.
pub fn from_f64(v: f64) -> Option<Scalar> {
    BigRational::from_float(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarParseError {
    /// Byte offset of the first offending character.
    pub offset: usize,
    pub message: &'static str,
}

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl std::error::Error for ScalarParseError {}

/// Parses an integer, a decimal (`-1.25`, `.5`, `3e-2`) or a fraction (`7/3`)
/// into an exact rational. Decimals are converted digit by digit, so `0.1`
/// becomes exactly `1/10`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    if let Some((num, den)) = text.split_once('/') {
        let n = parse_scalar(num)?;
        let d = parse_scalar(den).map_err(|e| ScalarParseError {
            offset: e.offset + num.len() + 1,
            ..e
        })?;
        if d.is_zero() {
            return Err(ScalarParseError {
                offset: num.len() + 1,
                message: "zero denominator",
            });
        }
        return Ok(n / d);
    }

    let bytes = text.as_bytes();
    let mut i = 0;
    let mut negative = false;
    if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
        negative = bytes[i] == b'-';
        i += 1;
    }
    let mut mantissa = BigInt::zero();
    let mut frac_digits: i64 = 0;
    let mut seen_digit = false;
    let mut seen_point = false;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'0'..=b'9' => {
                mantissa = mantissa * 10 + (c - b'0');
                seen_digit = true;
                if seen_point {
                    frac_digits += 1;
                }
            }
            b'.' if !seen_point => seen_point = true,
            b'e' | b'E' => break,
            _ => {
                return Err(ScalarParseError {
                    offset: i,
                    message: "unexpected character in number",
                })
            }
        }
        i += 1;
    }
    if !seen_digit {
        return Err(ScalarParseError {
            offset: i,
            message: "expected digits",
        });
    }
    let mut exponent: i64 = 0;
    if i < bytes.len() {
        // Exponent part.
        i += 1;
        let start = i;
        let rest = &text[start..];
        exponent = rest.parse::<i64>().map_err(|_| ScalarParseError {
            offset: start,
            message: "malformed exponent",
        })?;
        if exponent.abs() > 10_000 {
            return Err(ScalarParseError {
                offset: start,
                message: "exponent out of range",
            });
        }
    }
    let shift = exponent - frac_digits;
    let ten = BigInt::from(10);
    let mut value = if shift >= 0 {
        BigRational::from_integer(mantissa * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(mantissa, num_traits::pow(ten, (-shift) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Decimal rendering with at most `max_frac` fractional digits, rounded half
/// away from zero, trailing zeros stripped. Exact whenever the expansion
/// terminates within `max_frac` digits.
pub fn format_decimal(value: &Scalar, max_frac: usize) -> String {
    let negative = value.is_negative();
    let abs = value.abs();
    let scale = num_traits::pow(BigInt::from(10), max_frac);
    let scaled = abs.numer() * &scale;
    let (q, r) = scaled.div_rem(abs.denom());
    let mut q = q;
    if r * 2 >= *abs.denom() {
        q += BigInt::one();
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let mut frac = frac_part.to_string();
    while frac.len() < max_frac {
        frac.insert(0, '0');
    }
    let frac = frac.trim_end_matches('0');
    let sign = if negative && !(int_part.is_zero() && frac.is_empty()) {
        "-"
    } else {
        ""
    };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}
