use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{max_q, min_q, Rational};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval lower bound {lo} exceeds upper bound {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    /// Smallest interval containing both endpoints, in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: min_q(self.lo.clone(), other.lo.clone()),
            hi: max_q(self.hi.clone(), other.hi.clone()),
        }
    }

    /// Intersection, or `None` when disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = max_q(self.lo.clone(), other.lo.clone());
        let hi = min_q(self.hi.clone(), other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn bisect(&self) -> (Interval, Interval) {
        let mid = self.midpoint();
        (
            Interval { lo: self.lo.clone(), hi: mid.clone() },
            Interval { lo: mid, hi: self.hi.clone() },
        )
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        Interval::spanning(&self.lo * k, &self.hi * k)
    }

    pub fn shift(&self, k: &Rational) -> Interval {
        Interval { lo: &self.lo + k, hi: &self.hi + k }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_degenerate() {
            return rhs.scale(&self.lo);
        }
        if rhs.is_degenerate() {
            return self.scale(&rhs.lo);
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }
}

/// An interval certified to contain some real quantity.
///
/// `converged` records whether the width met the tolerance it was computed
/// against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub bounds: Interval,
    pub width: Rational,
    pub converged: bool,
}

impl Enclosure {
    pub fn new(bounds: Interval, tol: &Rational) -> Self {
        let width = bounds.width();
        let converged = &width <= tol;
        Self { bounds, width, converged }
    }

    pub fn with_flag(bounds: Interval, converged: bool) -> Self {
        let width = bounds.width();
        Self { bounds, width, converged }
    }

    pub fn exact(x: Rational) -> Self {
        Self { bounds: Interval::point(x), width: Rational::zero(), converged: true }
    }

    pub fn lo(&self) -> &Rational {
        self.bounds.lo()
    }

    pub fn hi(&self) -> &Rational {
        self.bounds.hi()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.bounds.contains(x)
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.bounds.overlaps(&other.bounds)
    }

    pub fn is_exact(&self) -> bool {
        self.width.is_zero()
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo())
        } else {
            write!(f, "{}", self.bounds)
        }
    }
}
