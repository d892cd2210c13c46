//! Exact scalar, interval and polynomial arithmetic.
//!
//! Every value the engine reports is an exact [`Rational`]. Intervals carry
//! rational endpoints, so interval evaluation is exact set arithmetic with no
//! rounding to account for.

mod interval;
mod interval_set;
mod poly;
mod range;

pub use interval::{Enclosure, Interval};
pub use interval_set::{measure, Component, IntervalSet};
pub use poly::{GridEvaluator, Polynomial};
pub use range::{range_enclosure, RangeEnclosure, MAX_SUBDIVISION_DEPTH};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n` or `p/q` (optional leading `-`, positive denominator).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("malformed rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(numer, denom))
}

/// Decimal rendering with `sig` significant digits, trailing zeros trimmed.
///
/// Rounds half away from zero. Magnitudes outside `[1e-6, 1e12)` use
/// exponent notation.
pub fn to_decimal(q: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().clone();
    // Estimate floor(log10 |q|) from digit counts, then correct.
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = BigInt::from(10);
    let pow10 = |e: i64| num_traits::pow(ten.clone(), e as usize);
    let ge_pow = |e: i64| {
        if e >= 0 {
            num >= &den * pow10(e)
        } else {
            &num * pow10(-e) >= den
        }
    };
    while !ge_pow(exp) {
        exp -= 1;
    }
    while ge_pow(exp + 1) {
        exp += 1;
    }
    let shift = sig as i64 - 1 - exp;
    let (n, d) = if shift >= 0 {
        (&num * pow10(shift), den)
    } else {
        (num, den * pow10(-shift))
    };
    let (mut digits, rem) = n.div_rem(&d);
    if rem * 2 >= d {
        digits += 1;
    }
    if digits == pow10(sig as i64) {
        digits /= 10;
        exp += 1;
    }
    let s = digits.to_string();
    let sign = if neg { "-" } else { "" };
    let trim = |t: String| -> String {
        if t.contains('.') {
            t.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            t
        }
    };
    if (-6..12).contains(&exp) {
        let body = if exp >= 0 {
            let int_len = exp as usize + 1;
            if int_len >= s.len() {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), s)
        };
        format!("{sign}{}", trim(body))
    } else {
        let mantissa = trim(format!("{}.{}", &s[..1], &s[1..]));
        format!("{sign}{mantissa}e{exp}")
    }
}

/// Exact form followed by a 12-significant-digit decimal annotation.
pub fn annotate(q: &Rational) -> String {
    format!("{} (~{})", q, to_decimal(q, 12))
}

/// Floor of a rational as a big integer.
pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Ceiling of a rational as a big integer.
pub fn ceil_int(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// The rational with the smallest denominator strictly between `a` and `b`
/// (`a < b`), found by continued-fraction descent.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    // Shift so that the search runs over a positive interval.
    let fl = floor_int(a);
    let base = Rational::from_integer(fl.clone());
    let r = simplest_open(&(a - &base), &(b - &base));
    r + base
}

// Simplest rational in the open interval (a, b) with 0 <= a < b.
fn simplest_open(a: &Rational, b: &Rational) -> Rational {
    let fa = floor_int(a);
    let next = Rational::from_integer(&fa + 1);
    if &next < b {
        // An integer strictly inside: the smallest one is simplest.
        return next;
    }
    // a and b share the integer part fa (b may equal fa + 1).
    let fa_q = Rational::from_integer(fa.clone());
    if a.is_integer() {
        // (fa, b) with b <= fa + 1: recurse on 1/(b - fa) < x' .
        let inv_lo = (b - &fa_q).recip();
        let tail = simplest_above(&inv_lo);
        return fa_q + tail.recip();
    }
    let lo = a - &fa_q;
    let hi = b - &fa_q;
    // x = fa + 1/y with y in (1/hi, 1/lo).
    let y = simplest_open(&hi.recip(), &lo.recip());
    fa_q + y.recip()
}

// Simplest rational strictly greater than x (x > 0).
fn simplest_above(x: &Rational) -> Rational {
    Rational::from_integer(floor_int(x) + 1)
}

pub(crate) fn sign_of(q: &Rational) -> Sign {
    if q.is_zero() {
        Sign::NoSign
    } else if q.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub(crate) fn max_q(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

pub(crate) fn min_q(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

/// `2^k` as a rational.
pub(crate) fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k as usize)
}
