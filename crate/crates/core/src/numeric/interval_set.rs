use std::fmt;

use num_traits::Zero;

use super::Rational;
use crate::error::{Error, Result};

/// One connected piece of an [`IntervalSet`], with endpoint openness flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub lo: Rational,
    pub lo_open: bool,
    pub hi: Rational,
    pub hi_open: bool,
}

impl Component {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self { lo, lo_open: false, hi, hi_open: false }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self { lo, lo_open: true, hi, hi_open: true }
    }

    pub fn point(x: Rational) -> Self {
        Self::closed(x.clone(), x)
    }

    pub fn is_nonempty(&self) -> bool {
        self.lo < self.hi || (self.lo == self.hi && !self.lo_open && !self.hi_open)
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    // Strictly before `next` with no shared point.
    fn precedes(&self, next: &Component) -> bool {
        self.hi < next.lo || (self.hi == next.lo && (self.hi_open || next.lo_open))
    }

    // Touches `next` so that the union is connected.
    fn joins(&self, next: &Component) -> bool {
        self.hi == next.lo && !(self.hi_open && next.lo_open)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", self.lo);
        }
        let l = if self.lo_open { ']' } else { '[' };
        let r = if self.hi_open { '[' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Finite disjoint union of intervals, sorted by lower endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalSet {
    components: Vec<Component>,
}

impl IntervalSet {
    /// Validates that components are nonempty, sorted and pairwise disjoint.
    pub fn new(components: Vec<Component>) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if !c.is_nonempty() {
                return Err(Error::InvalidIntervalSet(format!("component {i} ({c}) is empty")));
            }
        }
        for (i, pair) in components.windows(2).enumerate() {
            if !pair[0].precedes(&pair[1]) {
                return Err(Error::InvalidIntervalSet(format!(
                    "components {i} and {} overlap or are out of order",
                    i + 1
                )));
            }
        }
        Ok(Self { components })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a set from disjoint components in any order, merging touching
    /// neighbours into single components.
    pub fn from_disjoint(mut components: Vec<Component>) -> Result<Self> {
        components.retain(Component::is_nonempty);
        components.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Component> = Vec::with_capacity(components.len());
        for c in components {
            match merged.last_mut() {
                Some(last) if last.joins(&c) => {
                    if c.hi > last.hi || (c.hi == last.hi && !c.hi_open) {
                        last.hi = c.hi;
                        last.hi_open = c.hi_open;
                    }
                }
                _ => merged.push(c),
            }
        }
        Self::new(merged)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }

    pub fn measure(&self) -> Rational {
        self.components.iter().fold(Rational::zero(), |acc, c| acc + c.length())
    }

    /// Union with a set disjoint from `self`.
    pub fn disjoint_union(&self, other: &IntervalSet) -> Result<IntervalSet> {
        let all: Vec<Component> =
            self.components.iter().chain(other.components.iter()).cloned().collect();
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        for pair in sorted.windows(2) {
            if !pair[0].precedes(&pair[1]) {
                return Err(Error::InvalidIntervalSet("operands are not disjoint".into()));
            }
        }
        Self::from_disjoint(all)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// Lebesgue measure: the exact sum of component lengths.
pub fn measure(set: &IntervalSet) -> Rational {
    set.measure()
}
