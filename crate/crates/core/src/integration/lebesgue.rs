//! Lebesgue integral by simple-function approximation over level sets.
//!
//! With `m <= f <= M` and levels `c_j = m + j (M - m) / k`,
//!
//! ```text
//! m |D| + h sum_{j=1..k} mu{f >= c_j}  <=  integral  <=  m |D| + h sum_{j=0..k-1} mu{f > c_j}
//! ```
//!
//! where `h = (M - m) / k`. All level measures are taken together in one
//! sweep over each piece's monotone cells: on an increasing cell sampled at
//! `P_0 < ... < P_N` with spacing `s`, the level crossings are bracketed by
//! the samples, so `s sum_{i<N} #{j >= 1 : c_j <= P_i}` and
//! `s sum_{i>0} #{j < k : c_j <= P_i}` bound the summed measures from below and
//! above. Countable modifications only enter through `m` and `M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cover::CoverCell;
use super::prepared::{Prepared, Resolution};
use crate::error::{Error, Result};
use crate::model::FunctionModel;
use crate::numeric::{ceil_int, floor_int, max_q, min_q, Enclosure, GridEvaluator, Interval, Polynomial, Rational};

/// First level count tried; doubled until the enclosure is narrow enough.
pub const INITIAL_LEVELS: u64 = 8;
/// Level count beyond which refinement gives up.
pub const MAX_LEVELS: u64 = 1 << 32;

/// Encloses the Lebesgue integral of `f` over its domain.
pub fn lebesgue_integral(f: &FunctionModel, tol: &Rational) -> Result<Enclosure> {
    if tol <= &Rational::zero() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let prepared = Prepared::new(f, &Resolution::for_model(f, tol));
    let (m, big_m) = prepared.value_bounds();
    let length = prepared.domain.width();
    if m == big_m {
        return Ok(Enclosure::exact(m * length));
    }
    // Outward rounding to a dyadic grain keeps the level arithmetic small.
    let grain = dyadic_at_most(&(tol / (Rational::from_integer(16.into()) * (&length + Rational::one()))));
    let m = Rational::from_integer(floor_int(&(&m / &grain))) * &grain;
    let big_m = Rational::from_integer(ceil_int(&(&big_m / &grain))) * &grain;
    let variation = variation(&prepared);
    let mut best: Option<Interval> = None;
    let mut k = INITIAL_LEVELS;
    loop {
        // Balance sampling error (about s * variation) against level spacing.
        let kq = Rational::from_integer(k.into());
        let spacing = if variation.is_zero() { length.clone() } else { (&big_m - &m) * &length / (kq * &variation) };
        let round = simple_function_bounds(&prepared, &m, &big_m, k, &spacing);
        best = Some(match best {
            None => round,
            Some(b) => Interval::new(max_q(b.lo().clone(), round.lo().clone()), min_q(b.hi().clone(), round.hi().clone()))
                .expect("both enclose the integral"),
        });
        let b = best.as_ref().expect("set");
        if &b.width() <= tol || k >= MAX_LEVELS {
            return Ok(Enclosure::new(b.clone(), tol));
        }
        k *= 2;
    }
}

// Total variation over monotone cells plus the outer ranges of tiny cells.
fn variation(p: &Prepared<'_>) -> Rational {
    let mut v = Rational::zero();
    for cover in &p.covers {
        for cell in &cover.cells {
            v += match cell {
                CoverCell::Monotone { at_lo, at_hi, .. } => (at_hi - at_lo).abs(),
                CoverCell::Tiny { outer, .. } => outer.width(),
            };
        }
    }
    v
}

/// Level counting against `c_j = m + j R / k`: `floor((y - m) k / R)` is the
/// number of levels `c_1..c_k` at or below `y` (for `m <= y <= M`).
struct Levels<'a> {
    m: &'a Rational,
    range: Rational,
    k: BigInt,
}

impl Levels<'_> {
    fn position(&self, y: &Rational) -> Rational {
        (y - self.m) * Rational::from_integer(self.k.clone()) / &self.range
    }

    /// `#{j in 1..=k : c_j <= y}`.
    fn at_or_below(&self, y: &Rational) -> BigInt {
        floor_int(&self.position(y)).clamp(BigInt::zero(), self.k.clone())
    }

    /// `#{j in 0..k : c_j <= y}`.
    fn at_or_below_from_zero(&self, y: &Rational) -> BigInt {
        (floor_int(&self.position(y)) + BigInt::one()).clamp(BigInt::zero(), self.k.clone())
    }

    /// `#{j in 0..k : c_j < y}`.
    fn strictly_below(&self, y: &Rational) -> BigInt {
        ceil_int(&self.position(y)).clamp(BigInt::zero(), self.k.clone())
    }
}

/// Bounds at `k` levels, sampling monotone cells at spacing at most `spacing`.
fn simple_function_bounds(p: &Prepared<'_>, m: &Rational, big_m: &Rational, k: u64, spacing: &Rational) -> Interval {
    let range = big_m - m;
    let levels = Levels { m, range: range.clone(), k: BigInt::from(k) };
    let length = p.domain.width();
    let kq = Rational::from_integer(k.into());
    let mut lower = Rational::zero();
    let mut upper = Rational::zero();
    for cover in &p.covers {
        for cell in &cover.cells {
            match cell {
                CoverCell::Monotone { lo, hi, at_lo, at_hi } if at_lo == at_hi => {
                    let w = hi - lo;
                    lower += &w * Rational::from_integer(levels.at_or_below(at_lo));
                    upper += &w * Rational::from_integer(levels.strictly_below(at_lo));
                }
                CoverCell::Monotone { lo, hi, at_lo, at_hi } => {
                    let (l, u) = monotone_counts(&cover.poly, lo, hi, at_lo < at_hi, spacing, &levels);
                    lower += l;
                    upper += u;
                }
                CoverCell::Tiny { lo, hi, outer, .. } => {
                    let w = hi - lo;
                    lower += &w * Rational::from_integer(levels.at_or_below(outer.lo()));
                    upper += &w * Rational::from_integer(levels.strictly_below(outer.hi()));
                }
            }
        }
    }
    let h = &range / kq;
    let base = m * &length;
    Interval::new(&base + &h * lower, base + h * upper).expect("lower sum below upper sum")
}

/// Summed level measures over a strictly monotone cell.
///
/// Samples `P_0 < ... < P_n` run from the low-value end to the high-value
/// end at dyadic spacing `s` (the last step may be shorter). Returns the
/// leaf-width-weighted sums of `#{j in 1..=k : c_j <= P_i}` over left
/// samples and of `#{j in 0..k : c_j <= P_{i+1}}` over right samples.
fn monotone_counts(
    poly: &Polynomial,
    lo: &Rational,
    hi: &Rational,
    increasing: bool,
    spacing: &Rational,
    levels: &Levels<'_>,
) -> (Rational, Rational) {
    let width = hi - lo;
    let s = dyadic_at_most(&min_q(spacing.clone(), width.clone()));
    let n = ceil_int(&(&width / &s));
    let (origin, far) = if increasing { (lo, hi) } else { (hi, lo) };
    let eval = GridEvaluator::new(poly, origin, &if increasing { s.clone() } else { -&s });
    // floor((N_i / d - m) k / R) = floor((N_i a - b) / c) with integers a, b, c.
    let kr = Rational::from_integer(levels.k.clone()) / &levels.range;
    let a_q = &kr / Rational::from_integer(eval.denominator().clone());
    let b_q = levels.m * &kr;
    let common = a_q.denom().lcm(b_q.denom());
    let a = a_q.numer() * (&common / a_q.denom());
    let b = b_q.numer() * (&common / b_q.denom());
    let k = &levels.k;
    // (#{j in 1..=k : c_j <= P_i}, #{j in 0..k : c_j <= P_i})
    let counts = |i: &BigInt| -> (BigInt, BigInt) {
        let q: BigInt = (eval.numerator(i) * &a - &b).div_floor(&common);
        let up = (&q + BigInt::one()).clamp(BigInt::zero(), k.clone());
        (q.clamp(BigInt::zero(), k.clone()), up)
    };
    let last = &n - 1;
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    let mut i = BigInt::zero();
    let mut left = counts(&i).0;
    while i < last {
        i += 1;
        let (l, u) = counts(&i);
        lower += std::mem::replace(&mut left, l);
        upper += u;
    }
    let end = poly.eval(far);
    let short = &width - &s * Rational::from_integer(last);
    let sq = |c: BigInt| Rational::from_integer(c) * &s;
    (
        sq(lower) + &short * Rational::from_integer(left),
        sq(upper) + short * Rational::from_integer(levels.at_or_below_from_zero(&end)),
    )
}

/// The largest `2^-t` (`t >= 0`) not above `x`, or `x` rounded down to a
/// power of two when `x >= 1`.
fn dyadic_at_most(x: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    let mut p = Rational::one();
    while &p > x {
        p /= &two;
    }
    while &(&p * &two) <= x {
        p *= &two;
    }
    p
}
