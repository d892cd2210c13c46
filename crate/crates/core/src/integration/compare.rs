//! Riemann versus Lebesgue comparison.

use std::fmt;

use super::darboux::{darboux_integrals, DarbouxResult};
use super::lebesgue::lebesgue_integral;
use super::level::{level_measure, level_set, Relation};
use crate::error::Result;
use crate::model::FunctionModel;
use crate::numeric::{pow2, Enclosure, Interval, Rational};

/// Oscillation thresholds `1/2^j` for `j = 1..=OSCILLATION_LEVELS`.
pub const OSCILLATION_LEVELS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    UndecidedAtTolerance,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::UndecidedAtTolerance => "UNDECIDED_AT_TOLERANCE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub riemann_integrable: Verdict,
    pub riemann_value: Option<Enclosure>,
    pub lebesgue_value: Enclosure,
    /// Whether the two values overlap; absent without a Riemann value.
    pub agree: Option<bool>,
    /// `(eps, measure{x : oscillation(x) >= eps})`.
    pub oscillation_evidence: Vec<(Rational, Enclosure)>,
    pub darboux: DarbouxResult,
}

/// Encloses the measure of `{x : oscillation(x) >= eps}` for `eps > 0`.
///
/// Without a dense modification the oscillation is positive only at finitely
/// many points. With a dense value `v`, the oscillation at every point off
/// the breakpoints is `|p(x) - v|` for the governing piece `p`.
pub fn oscillation_measure(f: &FunctionModel, eps: &Rational, tol: &Rational) -> Result<Enclosure> {
    let Some((_, v)) = f.dense() else {
        return Ok(Enclosure::exact(Rational::from_integer(0.into())));
    };
    let base = f.without_modification();
    let above = level_measure(&level_set(&base, &(v + eps), Relation::Ge, tol)?);
    let below = level_measure(&level_set(&base, &(v - eps), Relation::Le, tol)?);
    let bounds = Interval::new(above.lo() + below.lo(), above.hi() + below.hi()).expect("ordered");
    Ok(Enclosure::with_flag(bounds, above.converged && below.converged))
}

/// Runs both integrals and classifies Riemann integrability.
///
/// YES when the Darboux gap closes to `tol`. NO needs both a separation of
/// the lower and upper integral enclosures by more than `tol` and a dense
/// oscillation set of certified positive measure; anything else is
/// undecided.
pub fn compare_report(f: &FunctionModel, tol: &Rational, max_depth: u32) -> Result<ComparisonReport> {
    let darboux = darboux_integrals(f, tol, max_depth)?;
    let lebesgue_value = lebesgue_integral(f, tol)?;
    let mut oscillation_evidence = Vec::with_capacity(OSCILLATION_LEVELS as usize);
    for j in 1..=OSCILLATION_LEVELS {
        let eps = pow2(j).recip();
        let m = oscillation_measure(f, &eps, tol)?;
        oscillation_evidence.push((eps, m));
    }
    let separated = darboux.upper_integral.lo() - darboux.lower_integral.hi() > *tol;
    let dense_evidence = oscillation_evidence.iter().any(|(_, m)| m.lo() > &Rational::from_integer(0.into()));
    let (riemann_integrable, riemann_value) = if &darboux.gap <= tol {
        let hull = darboux.lower_integral.bounds.hull(&darboux.upper_integral.bounds);
        (Verdict::Yes, Some(Enclosure::new(hull, tol)))
    } else if separated && dense_evidence {
        (Verdict::No, None)
    } else {
        (Verdict::UndecidedAtTolerance, None)
    };
    let agree = riemann_value.as_ref().map(|r| r.overlaps(&lebesgue_value));
    Ok(ComparisonReport { riemann_integrable, riemann_value, lebesgue_value, agree, oscillation_evidence, darboux })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{CountableModification, DenseSet, PiecewiseFunction};
    use crate::numeric::{int, rat, Polynomial};

    #[test]
    fn dirichlet_is_not_riemann_integrable() {
        let r = compare_report(&dirichlet(), &rat(1, 1000), 20).unwrap();
        assert_eq!(r.riemann_integrable, Verdict::No);
        assert_eq!(r.darboux.gap, int(1));
        assert_eq!(r.lebesgue_value, Enclosure::exact(int(0)));
        assert_eq!(r.agree, None);
        assert_eq!(r.oscillation_evidence[0], (rat(1, 2), Enclosure::exact(int(1))));
    }

    #[test]
    fn heaviside_is_integrable() {
        let r = compare_report(&heaviside(), &rat(1, 1000), 20).unwrap();
        assert_eq!(r.riemann_integrable, Verdict::Yes);
        assert!(r.riemann_value.unwrap().contains(&int(1)));
        assert_eq!(r.agree, Some(true));
        assert!(r.oscillation_evidence.iter().all(|(_, m)| m.is_exact() && m.contains(&int(0))));
    }

    #[test]
    fn square_agrees() {
        let r = compare_report(&square(0, 1), &rat(1, 1 << 12), 30).unwrap();
        assert_eq!(r.riemann_integrable, Verdict::Yes);
        assert_eq!(r.agree, Some(true));
        assert!(r.lebesgue_value.contains(&rat(1, 3)));
    }

    #[test]
    fn dense_value_inside_the_range() {
        // y on [0, 1] with dyadics sent to 1/2: oscillation |y - 1/2|.
        let base = PiecewiseFunction::single(int(0), int(1), Polynomial::new(vec![int(0), int(1)])).unwrap();
        let f = FunctionModel::new(
            base,
            Some(CountableModification::Dense { set: DenseSet::Dyadics, value: rat(1, 2) }),
        )
        .unwrap();
        let m = oscillation_measure(&f, &rat(1, 4), &rat(1, 1000)).unwrap();
        assert_eq!(m, Enclosure::exact(rat(1, 2)));
        let r = compare_report(&f, &rat(1, 1000), 16).unwrap();
        assert_eq!(r.riemann_integrable, Verdict::No);
        assert!(r.lebesgue_value.contains(&rat(1, 2)));
        // Lower integral 3/8, upper integral 5/8.
        assert!(r.darboux.lower_integral.contains(&rat(3, 8)));
        assert!(r.darboux.upper_integral.contains(&rat(5, 8)));
    }

    #[test]
    fn unresolved_gap_is_undecided() {
        let f = square(0, 1);
        let r = compare_report(&f, &rat(1, 1 << 20), 3).unwrap();
        assert_eq!(r.riemann_integrable, Verdict::UndecidedAtTolerance);
        assert_eq!(r.agree, None);
    }
}
