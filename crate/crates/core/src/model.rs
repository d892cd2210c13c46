//! Piecewise polynomial functions on a compact interval, optionally modified
//! on a countable set.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{Interval, Polynomial, Rational};

/// Polynomial governing one open interval between consecutive breakpoints.
pub type PieceExpr = Polynomial;

/// Default bound on piece degree.
pub const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelConfig {
    pub max_degree: usize,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self { max_degree: DEFAULT_MAX_DEGREE }
    }
}

/// Pieces on the open intervals `]x_i, x_{i+1}[` plus an independent value at
/// every breakpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseFunction {
    breakpoints: Vec<Rational>,
    pieces: Vec<PieceExpr>,
    point_values: Vec<Rational>,
}

impl PiecewiseFunction {
    pub fn new(
        breakpoints: Vec<Rational>,
        pieces: Vec<PieceExpr>,
        point_values: Vec<Rational>,
    ) -> Result<Self> {
        Self::with_config(breakpoints, pieces, point_values, ModelConfig::default())
    }

    pub fn with_config(
        breakpoints: Vec<Rational>,
        pieces: Vec<PieceExpr>,
        point_values: Vec<Rational>,
        config: ModelConfig,
    ) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidModel("at least two breakpoints are required".into()));
        }
        if let Some(i) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel(format!(
                "breakpoints must be strictly increasing ({} >= {})",
                breakpoints[i],
                breakpoints[i + 1]
            )));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidModel(format!(
                "piece count mismatch: {} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        if point_values.len() != breakpoints.len() {
            return Err(Error::InvalidModel(format!(
                "value count mismatch: {} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len(),
                point_values.len()
            )));
        }
        if let Some(i) = pieces.iter().position(|p| p.degree() > config.max_degree) {
            return Err(Error::InvalidModel(format!(
                "piece {i} has degree {} above the limit {}",
                pieces[i].degree(),
                config.max_degree
            )));
        }
        Ok(Self { breakpoints, pieces, point_values })
    }

    /// Convenience constructor for a single polynomial on `[lo, hi]` with
    /// endpoint values taken from the polynomial.
    pub fn single(lo: Rational, hi: Rational, p: PieceExpr) -> Result<Self> {
        let values = vec![p.eval(&lo), p.eval(&hi)];
        Self::new(vec![lo, hi], vec![p], values)
    }

    pub fn domain_lo(&self) -> &Rational {
        &self.breakpoints[0]
    }

    pub fn domain_hi(&self) -> &Rational {
        self.breakpoints.last().expect("validated")
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[PieceExpr] {
        &self.pieces
    }

    pub fn point_values(&self) -> &[Rational] {
        &self.point_values
    }

    /// Closed span `[x_i, x_{i+1}]` of piece `i`.
    pub fn piece_span(&self, i: usize) -> Interval {
        Interval::new(self.breakpoints[i].clone(), self.breakpoints[i + 1].clone())
            .expect("breakpoints increase")
    }

    pub fn domain_length(&self) -> Rational {
        self.domain_hi() - self.domain_lo()
    }

    /// Value of the unmodified function.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        Ok(match self.locate(x)? {
            Location::Breakpoint(k) => self.point_values[k].clone(),
            Location::Piece { index, .. } => self.pieces[index].eval(x),
        })
    }

    /// Binary search for the breakpoint or open piece containing `x`.
    pub fn locate(&self, x: &Rational) -> Result<Location> {
        self.check_domain(x)?;
        Ok(match self.breakpoints.binary_search(x) {
            Ok(k) => Location::Breakpoint(k),
            Err(k) => Location::Piece { index: k - 1 },
        })
    }

    pub fn check_domain(&self, x: &Rational) -> Result<()> {
        if x < self.domain_lo() || x > self.domain_hi() {
            return Err(Error::OutOfDomain {
                x: x.clone(),
                lo: self.domain_lo().clone(),
                hi: self.domain_hi().clone(),
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(Polynomial::neg).collect(),
            point_values: self.point_values.iter().map(|v| -v).collect(),
        }
    }
}

/// Position of a point relative to the breakpoint grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Breakpoint(usize),
    Piece { index: usize },
}

/// Countable dense sets with decidable membership for rational inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenseSet {
    Rationals,
    /// Rationals whose reduced denominator is a power of two.
    Dyadics,
}

impl DenseSet {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            DenseSet::Rationals => true,
            DenseSet::Dyadics => {
                let d: &BigInt = x.denom();
                (d & (d - BigInt::one())).is_zero()
            }
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            DenseSet::Rationals => "rationals",
            DenseSet::Dyadics => "dyadics",
        }
    }
}

impl fmt::Display for DenseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DenseSet::Rationals => "RATIONALS",
            DenseSet::Dyadics => "DYADICS",
        })
    }
}

/// Replacement of the base function's values on an at-most-countable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountableModification {
    /// Points strictly increasing, each inside the domain.
    Finite(Vec<(Rational, Rational)>),
    /// Every member of `set` takes `value`.
    Dense { set: DenseSet, value: Rational },
}

impl CountableModification {
    /// Modified value at `x`, if `x` is a modification point.
    pub fn value_at(&self, x: &Rational) -> Option<&Rational> {
        match self {
            CountableModification::Finite(points) => points
                .binary_search_by(|(p, _)| p.cmp(x))
                .ok()
                .map(|i| &points[i].1),
            CountableModification::Dense { set, value } => set.contains(x).then_some(value),
        }
    }

    fn neg(&self) -> Self {
        match self {
            CountableModification::Finite(points) => {
                CountableModification::Finite(points.iter().map(|(x, v)| (x.clone(), -v)).collect())
            }
            CountableModification::Dense { set, value } => {
                CountableModification::Dense { set: *set, value: -value }
            }
        }
    }
}

/// A piecewise base function together with an optional countable modification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionModel {
    base: PiecewiseFunction,
    modification: Option<CountableModification>,
}

impl FunctionModel {
    pub fn new(base: PiecewiseFunction, modification: Option<CountableModification>) -> Result<Self> {
        if let Some(CountableModification::Finite(points)) = &modification {
            if let Some(i) = points.windows(2).position(|w| w[0].0 >= w[1].0) {
                return Err(Error::InvalidModel(format!(
                    "modification points must be strictly increasing ({} >= {})",
                    points[i].0,
                    points[i + 1].0
                )));
            }
            for (x, _) in points {
                if x < base.domain_lo() || x > base.domain_hi() {
                    return Err(Error::InvalidModel(format!(
                        "modification point {x} lies outside the domain [{}, {}]",
                        base.domain_lo(),
                        base.domain_hi()
                    )));
                }
            }
        }
        Ok(Self { base, modification })
    }

    pub fn unmodified(base: PiecewiseFunction) -> Self {
        Self { base, modification: None }
    }

    pub fn base(&self) -> &PiecewiseFunction {
        &self.base
    }

    pub fn modification(&self) -> Option<&CountableModification> {
        self.modification.as_ref()
    }

    /// The dense modification, if any.
    pub fn dense(&self) -> Option<(DenseSet, &Rational)> {
        match &self.modification {
            Some(CountableModification::Dense { set, value }) => Some((*set, value)),
            _ => None,
        }
    }

    /// Finite modification points, empty when there are none.
    pub fn finite_points(&self) -> &[(Rational, Rational)] {
        match &self.modification {
            Some(CountableModification::Finite(points)) => points,
            _ => &[],
        }
    }

    pub fn domain_lo(&self) -> &Rational {
        self.base.domain_lo()
    }

    pub fn domain_hi(&self) -> &Rational {
        self.base.domain_hi()
    }

    /// Exact value: the modification wins at its points, then breakpoint
    /// values, then the governing piece.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        self.base.check_domain(x)?;
        if let Some(v) = self.modification.as_ref().and_then(|m| m.value_at(x)) {
            return Ok(v.clone());
        }
        self.base.eval(x)
    }

    pub fn is_modified_at(&self, x: &Rational) -> bool {
        self.modification.as_ref().is_some_and(|m| m.value_at(x).is_some())
    }

    pub fn piece_at(&self, x: &Rational) -> Result<PieceLocation<'_>> {
        Ok(match self.base.locate(x)? {
            Location::Breakpoint(k) => PieceLocation::Breakpoint(k),
            Location::Piece { index } => PieceLocation::Piece {
                index,
                expr: &self.base.pieces[index],
                span: self.base.piece_span(index),
            },
        })
    }

    /// Pointwise negation of base pieces, point values and modification values.
    pub fn neg(&self) -> Self {
        Self {
            base: self.base.neg(),
            modification: self.modification.as_ref().map(CountableModification::neg),
        }
    }

    /// The same model with the modification removed.
    pub fn without_modification(&self) -> Self {
        Self::unmodified(self.base.clone())
    }
}

/// Result of [`FunctionModel::piece_at`]: the governing piece with its open
/// interval `]span.lo, span.hi[`, or a breakpoint index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceLocation<'a> {
    Piece { index: usize, expr: &'a PieceExpr, span: Interval },
    Breakpoint(usize),
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn evaluate_examples() {
        assert_eq!(constant(3, 0, 1).evaluate(&rat(1, 2)).unwrap(), int(3));
        assert_eq!(heaviside().evaluate(&int(0)).unwrap(), int(1));
        assert_eq!(heaviside().evaluate(&rat(-1, 2)).unwrap(), int(0));
        assert_eq!(dirichlet().evaluate(&rat(1, 2)).unwrap(), int(1));
    }

    #[test]
    fn evaluate_outside_domain() {
        assert!(matches!(
            heaviside().evaluate(&int(2)),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn piece_at_examples() {
        let h = heaviside();
        match h.piece_at(&rat(1, 2)).unwrap() {
            PieceLocation::Piece { index, expr, span } => {
                assert_eq!(index, 1);
                assert_eq!(expr, &Polynomial::constant(int(1)));
                assert_eq!(span, Interval::new(int(0), int(1)).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(h.piece_at(&int(0)).unwrap(), PieceLocation::Breakpoint(1));
        let f = FunctionModel::unmodified(
            PiecewiseFunction::new(
                vec![int(0), rat(1, 3), int(1)],
                vec![Polynomial::zero(), Polynomial::zero()],
                vec![int(0), int(0), int(0)],
            )
            .unwrap(),
        );
        assert_eq!(f.piece_at(&rat(1, 3)).unwrap(), PieceLocation::Breakpoint(1));
    }

    #[test]
    fn dyadic_membership() {
        let d = DenseSet::Dyadics;
        assert!(d.contains(&rat(3, 8)));
        assert!(d.contains(&int(-5)));
        assert!(!d.contains(&rat(1, 3)));
        assert!(!d.contains(&rat(1, 6)));
    }

    #[test]
    fn invalid_models() {
        let p = || Polynomial::zero();
        assert!(PiecewiseFunction::new(vec![int(0), int(0)], vec![p()], vec![int(0), int(0)]).is_err());
        assert!(PiecewiseFunction::new(vec![int(0), int(1)], vec![p(), p()], vec![int(0), int(0)]).is_err());
        assert!(PiecewiseFunction::new(vec![int(0), int(1)], vec![p()], vec![int(0)]).is_err());
        let high = Polynomial::new((0..14).map(int).collect());
        assert!(PiecewiseFunction::new(vec![int(0), int(1)], vec![high], vec![int(0), int(0)]).is_err());
        let base = constant(0, 0, 1).base().clone();
        let outside = CountableModification::Finite(vec![(int(2), int(1))]);
        assert!(FunctionModel::new(base.clone(), Some(outside)).is_err());
        let unsorted = CountableModification::Finite(vec![(rat(1, 2), int(1)), (rat(1, 4), int(1))]);
        assert!(FunctionModel::new(base, Some(unsorted)).is_err());
    }

    #[test]
    fn finite_modification_wins() {
        let base = heaviside().base().clone();
        let f = FunctionModel::new(
            base,
            Some(CountableModification::Finite(vec![(int(0), int(7)), (rat(1, 2), int(-2))])),
        )
        .unwrap();
        assert_eq!(f.evaluate(&int(0)).unwrap(), int(7));
        assert_eq!(f.evaluate(&rat(1, 2)).unwrap(), int(-2));
        assert_eq!(f.evaluate(&rat(1, 3)).unwrap(), int(1));
    }
}
