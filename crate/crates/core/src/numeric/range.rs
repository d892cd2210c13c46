//! Branch-and-bound enclosure of a polynomial's extreme values on a window.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::Zero;

use super::{max_q, min_q, Enclosure, Interval, Polynomial, Rational};
use crate::error::{Error, Result};

/// Bisection depth beyond which a box is no longer split.
pub const MAX_SUBDIVISION_DEPTH: u32 = 64;

/// Enclosures of the supremum and infimum of a polynomial over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeEnclosure {
    pub sup: Enclosure,
    pub inf: Enclosure,
}

/// Encloses `sup p` and `inf p` over the closed `window`.
///
/// Outer bounds come from interval evaluation of subdivided boxes, inner
/// bounds from exact evaluations at box endpoints and midpoints. The search
/// is best-first and fully deterministic, so rerunning with a smaller
/// tolerance continues the same sequence of steps and returns a subset of
/// the coarser enclosure.
pub fn range_enclosure(p: &Polynomial, window: &Interval, tol: &Rational) -> Result<RangeEnclosure> {
    if tol <= &Rational::zero() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let sup = sup_enclosure(p, window, tol);
    let neg = sup_enclosure(&p.neg(), window, tol);
    let inf = Enclosure::with_flag(
        Interval::new(-neg.hi(), -neg.lo()).expect("negated enclosure"),
        neg.converged,
    );
    Ok(RangeEnclosure { sup, inf })
}

struct Node {
    upper: Rational,
    window: Interval,
    depth: u32,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // Largest upper bound first; ties go to the leftmost box.
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .cmp(&other.upper)
            .then_with(|| other.window.lo().cmp(self.window.lo()))
    }
}

fn sup_enclosure(p: &Polynomial, window: &Interval, tol: &Rational) -> Enclosure {
    let mut inner = max_q(p.eval(window.lo()), p.eval(window.hi()));
    if window.is_degenerate() || p.is_constant() {
        return Enclosure::exact(inner);
    }
    let dp = p.derivative();
    let upper = p.enclose_using(&dp, window).hi().clone();
    let mut heap = BinaryHeap::new();
    heap.push(Node { upper, window: window.clone(), depth: 0 });
    loop {
        let Some(top) = heap.peek() else {
            return Enclosure::exact(inner);
        };
        if top.upper <= inner {
            return Enclosure::exact(inner);
        }
        if &top.upper - &inner <= *tol {
            let bounds = Interval::new(inner, top.upper.clone()).expect("inner below outer");
            return Enclosure::with_flag(bounds, true);
        }
        if top.depth >= MAX_SUBDIVISION_DEPTH {
            let bounds = Interval::new(inner, top.upper.clone()).expect("inner below outer");
            return Enclosure::with_flag(bounds, false);
        }
        let node = heap.pop().expect("peeked");
        let (left, right) = node.window.bisect();
        inner = max_q(inner, p.eval(left.hi()));
        for child in [left, right] {
            // Children never report a looser bound than their parent.
            let upper = min_q(p.enclose_using(&dp, &child).hi().clone(), node.upper.clone());
            if upper > inner {
                heap.push(Node { upper, window: child, depth: node.depth + 1 });
            }
        }
    }
}
