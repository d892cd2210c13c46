//! Executable measurability argument: a piecewise continuous base is Borel,
//! the modification set is countable, so the model is Borel measurable.

use super::level::{level_measure, level_set, PointAdjustment, Relation};
use super::prepared::{Prepared, Resolution};
use crate::error::Result;
use crate::model::{CountableModification, DenseSet, FunctionModel};
use crate::numeric::{pow2, Enclosure, Rational};

/// Number of level sets sampled by the spot check.
pub const SPOT_CHECKS: usize = 5;

/// The set on which the model departs from its piecewise base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionSet {
    Empty,
    Finite(usize),
    Dense(DenseSet),
}

impl ExceptionSet {
    pub fn is_countable(&self) -> bool {
        // Finite lists and the supported dense sets are all countable.
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotCheck {
    pub level: Rational,
    pub relation: Relation,
    pub measure: Enclosure,
    pub unmodified_measure: Enclosure,
    /// Same interval part as the unmodified level set, with disjoint
    /// countable adjustments and an identical measure.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub pieces: usize,
    pub breakpoints: usize,
    pub exceptions: ExceptionSet,
    /// Finitely many polynomial pieces glued at finitely many points.
    pub base_is_borel: bool,
    pub exceptions_countable: bool,
    pub measurable: bool,
    pub spot_checks: Vec<SpotCheck>,
}

/// Builds the measurability certificate of `f` with [`SPOT_CHECKS`] sampled
/// level sets spread over the range of `f`.
pub fn measurability_report(f: &FunctionModel) -> Result<Certificate> {
    let tol = pow2(20).recip();
    let exceptions = match f.modification() {
        None => ExceptionSet::Empty,
        Some(CountableModification::Finite(points)) if points.is_empty() => ExceptionSet::Empty,
        Some(CountableModification::Finite(points)) => ExceptionSet::Finite(points.len()),
        Some(CountableModification::Dense { set, .. }) => ExceptionSet::Dense(*set),
    };
    let (m, big_m) = Prepared::new(f, &Resolution::for_model(f, &tol)).value_bounds();
    let plain = f.without_modification();
    let mut spot_checks = Vec::with_capacity(SPOT_CHECKS);
    for j in 0..SPOT_CHECKS {
        let t = Rational::new((j as i64 + 1).into(), (SPOT_CHECKS as i64 + 1).into());
        let level = &m + (&big_m - &m) * t;
        let relation = Relation::ALL[j % Relation::ALL.len()];
        let modified = level_set(f, &level, relation, &tol)?;
        let unmodified = level_set(&plain, &level, relation, &tol)?;
        let measure = level_measure(&modified);
        let unmodified_measure = level_measure(&unmodified);
        let disjoint = match (&modified.added, &modified.removed) {
            (PointAdjustment::Finite(a), PointAdjustment::Finite(r)) => a.iter().all(|x| !r.contains(x)),
            (PointAdjustment::Dense(_), PointAdjustment::Dense(_)) => false,
            _ => true,
        };
        let certified = disjoint
            && modified.base_set == unmodified.base_set
            && modified.boundary_enclosures == unmodified.boundary_enclosures
            && measure == unmodified_measure;
        spot_checks.push(SpotCheck { level, relation, measure, unmodified_measure, certified });
    }
    let exceptions_countable = exceptions.is_countable();
    Ok(Certificate {
        pieces: f.base().pieces().len(),
        breakpoints: f.base().breakpoints().len(),
        exceptions,
        base_is_borel: true,
        exceptions_countable,
        measurable: exceptions_countable && spot_checks.iter().all(|c| c.certified),
        spot_checks,
    })
}
