//! Per-model data shared by the integration routines: piece covers built at
//! a resolution derived from the tolerance, and the sorted list of points
//! whose values are not governed by a piece.

use num_traits::{One, Signed, Zero};

use super::cover::{PieceCover, WindowRange};
use crate::model::FunctionModel;
use crate::numeric::{max_q, min_q, pow2, Interval, Rational};

/// Cover parameters for a requested tolerance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Resolution {
    pub tiny_width: Rational,
    pub range_tol: Rational,
}

impl Resolution {
    /// Small enough that all tiny cells together move any integral bound by
    /// a small fraction of `tol`.
    pub(crate) fn for_model(f: &FunctionModel, tol: &Rational) -> Self {
        let base = f.base();
        let radius = max_q(max_q(base.domain_lo().abs(), base.domain_hi().abs()), Rational::one());
        let mut lipschitz = Rational::zero();
        let mut critical = 1usize;
        for p in base.pieces() {
            let mut bound = Rational::zero();
            let mut power = Rational::one();
            for (k, c) in p.coeffs().iter().enumerate().skip(1) {
                bound += c.abs() * Rational::from_integer(k.into()) * &power;
                power *= &radius;
            }
            lipschitz = max_q(lipschitz, bound);
            critical += 2 * p.degree();
        }
        let scale = Rational::from_integer((16 * critical).into())
            * (lipschitz + Rational::one())
            * (base.domain_length() + Rational::one());
        let bound = min_q(tol / scale, Rational::one());
        let mut k = 0;
        while pow2(k) * &bound < Rational::one() {
            k += 1;
        }
        let tiny_width = pow2(k).recip();
        Self { range_tol: tiny_width.clone(), tiny_width }
    }
}

/// A model with its piece covers.
pub(crate) struct Prepared<'a> {
    pub f: &'a FunctionModel,
    pub domain: Interval,
    pub covers: Vec<PieceCover>,
    /// Breakpoints and finite modification points with their values.
    pub points: Vec<(Rational, Rational)>,
    pub dense: Option<Rational>,
}

impl<'a> Prepared<'a> {
    pub(crate) fn new(f: &'a FunctionModel, res: &Resolution) -> Self {
        let base = f.base();
        let domain = Interval::new(base.domain_lo().clone(), base.domain_hi().clone()).expect("valid domain");
        let covers = (0..base.pieces().len())
            .map(|i| PieceCover::build(&base.pieces()[i], &base.piece_span(i), &domain, &res.tiny_width, &res.range_tol))
            .collect();
        let mut points: Vec<(Rational, Rational)> = base
            .breakpoints()
            .iter()
            .map(|x| (x.clone(), f.evaluate(x).expect("breakpoint in domain")))
            .chain(f.finite_points().iter().cloned())
            .collect();
        points.sort_by(|a, b| a.0.cmp(&b.0));
        points.dedup_by(|later, earlier| later.0 == earlier.0);
        let dense = f.dense().map(|(_, v)| v.clone());
        Self { f, domain, covers, points, dense }
    }

    pub(crate) fn breakpoints(&self) -> &[Rational] {
        self.f.base().breakpoints()
    }

    /// Points with `lo <= x <= hi`.
    pub(crate) fn points_in(&self, lo: &Rational, hi: &Rational) -> &[(Rational, Rational)] {
        let a = self.points.partition_point(|(x, _)| x < lo);
        let b = self.points.partition_point(|(x, _)| x <= hi);
        &self.points[a..b]
    }

    /// Pieces whose open span meets the open interval `]lo, hi[`, with the
    /// clipped windows.
    pub(crate) fn pieces_meeting(&self, lo: &Rational, hi: &Rational) -> Vec<(usize, Interval)> {
        let bps = self.breakpoints();
        let first = bps.partition_point(|x| x <= lo).saturating_sub(1);
        let mut out = Vec::new();
        for i in first..bps.len() - 1 {
            if &bps[i] >= hi {
                break;
            }
            let a = max_q(bps[i].clone(), lo.clone());
            let b = min_q(bps[i + 1].clone(), hi.clone());
            if a < b {
                out.push((i, Interval::new(a, b).expect("ordered")));
            }
        }
        out
    }

    /// Bounds on the values of `f` over the closed cell `[lo, hi]`.
    pub(crate) fn cell_bounds(&self, lo: &Rational, hi: &Rational) -> CellBounds {
        let mut range: Option<WindowRange> = None;
        let mut ess_sup_lower: Option<Rational> = None;
        let mut ess_inf_upper: Option<Rational> = None;
        for (i, window) in self.pieces_meeting(lo, hi) {
            let r = self.covers[i].range_over(&window);
            // Almost everywhere f_* = min(p, v) and f^* = max(p, v) on a
            // piece when a dense value v is present.
            let (s, t) = match &self.dense {
                Some(v) => (min_q(r.sup_hi.clone(), v.clone()), max_q(r.inf_lo.clone(), v.clone())),
                None => (r.sup_hi.clone(), r.inf_lo.clone()),
            };
            ess_sup_lower = Some(ess_sup_lower.map_or(s.clone(), |e| max_q(e, s)));
            ess_inf_upper = Some(ess_inf_upper.map_or(t.clone(), |e| min_q(e, t)));
            match &mut range {
                Some(acc) => acc.merge(&r),
                None => range = Some(r),
            }
        }
        let mut range = range.expect("nonempty cell meets a piece");
        for (_, v) in self.points_in(lo, hi) {
            range.absorb_attained(v);
        }
        if let Some(v) = &self.dense {
            range.absorb_attained(v);
        }
        CellBounds {
            inf_lo: range.inf_lo,
            inf_hi: range.inf_hi,
            sup_lo: range.sup_lo,
            sup_hi: range.sup_hi,
            ess_sup_lower: ess_sup_lower.expect("nonempty"),
            ess_inf_upper: ess_inf_upper.expect("nonempty"),
        }
    }

    /// Exact bounds `m <= f <= M` over the whole domain.
    pub(crate) fn value_bounds(&self) -> (Rational, Rational) {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut absorb = |a: &Rational, b: &Rational| {
            lo = Some(lo.take().map_or(a.clone(), |l| min_q(l, a.clone())));
            hi = Some(hi.take().map_or(b.clone(), |h| max_q(h, b.clone())));
        };
        for cover in &self.covers {
            let r = cover.range_over(&cover.span);
            absorb(&r.inf_lo, &r.sup_hi);
        }
        for (_, v) in &self.points {
            absorb(v, v);
        }
        if let Some(v) = &self.dense {
            absorb(v, v);
        }
        (lo.expect("at least one piece"), hi.expect("at least one piece"))
    }
}

/// Bounds on a cell's infimum and supremum, plus the essential bounds of
/// the envelopes used for the Darboux integrals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CellBounds {
    pub inf_lo: Rational,
    pub inf_hi: Rational,
    pub sup_lo: Rational,
    pub sup_hi: Rational,
    /// Upper bound on the essential supremum of `f_*` over the cell.
    pub ess_sup_lower: Rational,
    /// Lower bound on the essential infimum of `f^*` over the cell.
    pub ess_inf_upper: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::model::fixtures::*;
    use crate::numeric::{int, rat};

    #[test]
    fn resolution_is_a_power_of_two_below_tol() {
        let res = Resolution::for_model(&square(0, 1), &rat(1, 1000));
        assert!(res.tiny_width < rat(1, 1000));
        assert!(res.tiny_width.numer().is_one());
        let d = res.tiny_width.denom();
        assert!((d & (d - BigInt::one())).is_zero());
    }

    #[test]
    fn dirichlet_cell_bounds() {
        let f = dirichlet();
        let p = Prepared::new(&f, &Resolution::for_model(&f, &rat(1, 10)));
        let b = p.cell_bounds(&rat(1, 4), &rat(1, 2));
        assert_eq!((b.inf_lo.clone(), b.inf_hi.clone()), (int(0), int(0)));
        assert_eq!((b.sup_lo.clone(), b.sup_hi.clone()), (int(1), int(1)));
        assert_eq!((b.ess_sup_lower, b.ess_inf_upper), (int(0), int(1)));
        assert_eq!(p.value_bounds(), (int(0), int(1)));
    }

    #[test]
    fn heaviside_cells_see_the_jump() {
        let f = heaviside();
        let p = Prepared::new(&f, &Resolution::for_model(&f, &rat(1, 10)));
        let b = p.cell_bounds(&rat(-1, 2), &int(0));
        assert_eq!((b.inf_lo, b.sup_hi), (int(0), int(1)));
        let b = p.cell_bounds(&rat(-1, 2), &rat(-1, 4));
        assert_eq!((b.inf_lo, b.sup_hi), (int(0), int(0)));
        assert_eq!(p.pieces_meeting(&int(-1), &int(1)).len(), 2);
        assert_eq!(p.pieces_meeting(&int(0), &int(1)).len(), 1);
    }
}
