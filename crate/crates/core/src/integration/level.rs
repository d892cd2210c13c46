//! Level sets `{f rel c}` as interval unions adjusted by countable point sets.

use std::fmt;

use num_bigint::Sign;
use num_traits::Zero;

use super::cover::{CoverCell, PieceCover};
use crate::error::{Error, Result};
use crate::model::{CountableModification, DenseSet, FunctionModel};
use crate::numeric::{sign_of, simplest_between, Component, Enclosure, Interval, IntervalSet, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Gt,
    Ge,
    Lt,
    Le,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::Gt, Relation::Ge, Relation::Lt, Relation::Le];

    /// Whether `value rel level` holds given the sign of `value - level`.
    pub fn holds_for(&self, sign: Sign) -> bool {
        match self {
            Relation::Gt => sign == Sign::Plus,
            Relation::Ge => sign != Sign::Minus,
            Relation::Lt => sign == Sign::Minus,
            Relation::Le => sign != Sign::Plus,
        }
    }

    pub fn holds(&self, value: &Rational, level: &Rational) -> bool {
        self.holds_for(sign_of(&(value - level)))
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Le => "<=",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A countable point set added to or removed from the base level set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointAdjustment {
    None,
    Finite(Vec<Rational>),
    /// Every member of the dense set (not already in / still in the base set).
    Dense(DenseSet),
}

impl PointAdjustment {
    pub fn is_none(&self) -> bool {
        matches!(self, PointAdjustment::None) || matches!(self, PointAdjustment::Finite(v) if v.is_empty())
    }

    pub fn describe(&self) -> String {
        match self {
            PointAdjustment::None => "none".into(),
            PointAdjustment::Finite(v) => format!("{} point(s)", v.len()),
            PointAdjustment::Dense(set) => format!("{set} (countable, dense)"),
        }
    }
}

/// `{x : f(x) rel level}` for a model `f`.
///
/// `base_set` holds the points of the unmodified function certainly in the
/// set; each boundary enclosure is a short open cell whose membership is
/// unresolved (it contains an irrational boundary point of the set). The
/// modification enters only through `added` and `removed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub level: Rational,
    pub relation: Relation,
    pub base_set: IntervalSet,
    pub added: PointAdjustment,
    pub removed: PointAdjustment,
    pub boundary_enclosures: Vec<Enclosure>,
    pub tol: Rational,
}

struct Builder<'a> {
    poly: &'a crate::numeric::Polynomial,
    level: &'a Rational,
    relation: Relation,
    tol: &'a Rational,
    components: Vec<Component>,
    boundaries: Vec<Enclosure>,
}

impl Builder<'_> {
    fn q(&self, x: &Rational) -> Rational {
        self.poly.eval(x) - self.level
    }

    fn open_part(&mut self, lo: &Rational, hi: &Rational, sign: Sign) {
        if lo < hi && self.relation.holds_for(sign) {
            self.components.push(Component::open(lo.clone(), hi.clone()));
        }
    }

    fn point(&mut self, x: &Rational, sign: Sign) {
        if self.relation.holds_for(sign) {
            self.components.push(Component::point(x.clone()));
        }
    }

    fn unresolved(&mut self, lo: &Rational, hi: &Rational) {
        let cell = Interval::new(lo.clone(), hi.clone()).expect("ordered");
        self.boundaries.push(Enclosure::new(cell, self.tol));
    }

    /// Open interior of a cell on which the piece is strictly monotone.
    fn monotone(&mut self, lo: &Rational, hi: &Rational, q_lo: Rational, q_hi: Rational) {
        let (s_lo, s_hi) = (sign_of(&q_lo), sign_of(&q_hi));
        let crosses = matches!((s_lo, s_hi), (Sign::Plus, Sign::Minus) | (Sign::Minus, Sign::Plus));
        if !crosses {
            let interior = if s_lo == Sign::NoSign { s_hi } else { s_lo };
            self.open_part(lo, hi, interior);
            return;
        }
        // Exactly one root strictly inside: bracket it.
        let (mut bl, mut bh) = (lo.clone(), hi.clone());
        loop {
            let r = simplest_between(&bl, &bh);
            let qr = self.q(&r);
            if qr.is_zero() {
                return self.split_at_root(lo, hi, &r, s_lo, s_hi);
            }
            if sign_of(&qr) == s_lo {
                bl = r;
            } else {
                bh = r;
            }
            if &(&bh - &bl) <= self.tol {
                break;
            }
            let m = (&bl + &bh) / Rational::from_integer(2.into());
            let qm = self.q(&m);
            if qm.is_zero() {
                return self.split_at_root(lo, hi, &m, s_lo, s_hi);
            }
            if sign_of(&qm) == s_lo {
                bl = m;
            } else {
                bh = m;
            }
            if &(&bh - &bl) <= self.tol {
                break;
            }
        }
        self.open_part(lo, &bl, s_lo);
        if &bl != lo {
            self.point(&bl, s_lo);
        }
        self.unresolved(&bl, &bh);
        if &bh != hi {
            self.point(&bh, s_hi);
        }
        self.open_part(&bh, hi, s_hi);
    }

    fn split_at_root(&mut self, lo: &Rational, hi: &Rational, r: &Rational, s_lo: Sign, s_hi: Sign) {
        self.open_part(lo, r, s_lo);
        self.point(r, Sign::NoSign);
        self.open_part(r, hi, s_hi);
    }
}

/// Builds `{x : f(x) rel level}`.
///
/// Boundaries at rational roots are exact; irrational ones are bracketed to
/// width at most `tol`.
pub fn level_set(f: &FunctionModel, level: &Rational, relation: Relation, tol: &Rational) -> Result<LevelSet> {
    if tol <= &Rational::zero() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let base = f.base();
    let domain = Interval::new(base.domain_lo().clone(), base.domain_hi().clone())?;
    let mut components = Vec::new();
    let mut boundaries = Vec::new();
    for (x, v) in base.breakpoints().iter().zip(base.point_values()) {
        if relation.holds(v, level) {
            components.push(Component::point(x.clone()));
        }
    }
    for (i, poly) in base.pieces().iter().enumerate() {
        let span = base.piece_span(i);
        let mut b = Builder { poly, level, relation, tol, components: Vec::new(), boundaries: Vec::new() };
        if poly.is_constant() {
            let s = sign_of(&b.q(span.lo()));
            b.open_part(span.lo(), span.hi(), s);
        } else {
            let cover = PieceCover::build(poly, &span, &domain, tol, tol);
            for (k, cell) in cover.cells.iter().enumerate() {
                if k > 0 {
                    let x = cell.lo();
                    let s = sign_of(&b.q(x));
                    b.point(x, s);
                }
                match cell {
                    CoverCell::Monotone { lo, hi, at_lo, at_hi } => {
                        b.monotone(lo, hi, at_lo - level, at_hi - level);
                    }
                    CoverCell::Tiny { lo, hi, outer, .. } => {
                        let all = relation_on_range(relation, outer, level);
                        match all {
                            Some(true) => b.components.push(Component::open(lo.clone(), hi.clone())),
                            Some(false) => {}
                            None => b.unresolved(lo, hi),
                        }
                    }
                }
            }
        }
        components.extend(b.components);
        boundaries.extend(b.boundaries);
    }
    let base_set = IntervalSet::from_disjoint(components)?;
    let (added, removed) = adjustments(f, level, relation)?;
    Ok(LevelSet {
        level: level.clone(),
        relation,
        base_set,
        added,
        removed,
        boundary_enclosures: boundaries,
        tol: tol.clone(),
    })
}

// Some(true): relation holds on the whole range; Some(false): nowhere.
fn relation_on_range(relation: Relation, range: &Interval, level: &Rational) -> Option<bool> {
    let (lo, hi) = (range.lo(), range.hi());
    match relation {
        Relation::Gt if lo > level => Some(true),
        Relation::Gt if hi <= level => Some(false),
        Relation::Ge if lo >= level => Some(true),
        Relation::Ge if hi < level => Some(false),
        Relation::Lt if hi < level => Some(true),
        Relation::Lt if lo >= level => Some(false),
        Relation::Le if hi <= level => Some(true),
        Relation::Le if lo > level => Some(false),
        _ => None,
    }
}

fn adjustments(f: &FunctionModel, level: &Rational, relation: Relation) -> Result<(PointAdjustment, PointAdjustment)> {
    Ok(match f.modification() {
        None => (PointAdjustment::None, PointAdjustment::None),
        Some(CountableModification::Finite(points)) => {
            let mut added = Vec::new();
            let mut removed = Vec::new();
            for (x, v) in points {
                let base_in = relation.holds(&f.base().eval(x)?, level);
                let mod_in = relation.holds(v, level);
                match (base_in, mod_in) {
                    (false, true) => added.push(x.clone()),
                    (true, false) => removed.push(x.clone()),
                    _ => {}
                }
            }
            (PointAdjustment::Finite(added), PointAdjustment::Finite(removed))
        }
        Some(CountableModification::Dense { set, value }) => {
            if relation.holds(value, level) {
                (PointAdjustment::Dense(*set), PointAdjustment::None)
            } else {
                (PointAdjustment::None, PointAdjustment::Dense(*set))
            }
        }
    })
}

/// Measure of a level set. Countable adjustments have measure zero, so only
/// unresolved boundary cells widen the enclosure.
pub fn level_measure(ls: &LevelSet) -> Enclosure {
    let lo = ls.base_set.measure();
    let slack = ls
        .boundary_enclosures
        .iter()
        .fold(Rational::zero(), |acc, b| acc + &b.width);
    let converged = ls.boundary_enclosures.iter().all(|b| b.width <= ls.tol);
    Enclosure::with_flag(Interval::new(lo.clone(), lo + slack).expect("ordered"), converged)
}

impl LevelSet {
    /// Membership of a rational point, or `None` inside an unresolved cell.
    pub fn contains(&self, f: &FunctionModel, x: &Rational) -> Option<bool> {
        if let Some(v) = f.modification().and_then(|m| m.value_at(x)) {
            return Some(self.relation.holds(v, &self.level));
        }
        if self.base_set.contains(x) {
            return Some(true);
        }
        let unresolved = self
            .boundary_enclosures
            .iter()
            .any(|b| b.lo() < x && x < b.hi());
        (!unresolved).then_some(false)
    }
}
