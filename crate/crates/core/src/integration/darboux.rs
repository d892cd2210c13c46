//! Darboux sums and dyadic refinement toward the lower and upper integrals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cover::CoverCell;
use super::prepared::{CellBounds, Prepared, Resolution};
use crate::error::{Error, Result};
use crate::model::FunctionModel;
use crate::numeric::{floor_int, ceil_int, max_q, min_q, pow2, Enclosure, GridEvaluator, Interval, Rational};

/// Enclosures of the lower and upper Darboux sums of one partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxSums {
    pub lower: Enclosure,
    pub upper: Enclosure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxResult {
    pub lower_integral: Enclosure,
    pub upper_integral: Enclosure,
    /// `upper_integral.hi - lower_integral.lo`.
    pub gap: Rational,
    pub partition_depth: u32,
}

impl DarbouxResult {
    pub fn converged(&self) -> bool {
        self.lower_integral.converged && self.upper_integral.converged
    }
}

/// One uniform dyadic partition with `2^depth` cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxStep {
    pub depth: u32,
    pub sums: DarbouxSums,
    /// Bounds on the lower integral implied by this partition alone.
    pub lower_integral: Interval,
    /// Bounds on the upper integral implied by this partition alone.
    pub upper_integral: Interval,
}

/// Exact sum kept as integer numerators grouped by denominator, so that
/// adding a term costs no gcd.
#[derive(Default)]
struct Sum(BTreeMap<BigInt, BigInt>);

impl Sum {
    fn add(&mut self, x: &Rational) {
        *self.0.entry(x.denom().clone()).or_default() += x.numer();
    }

    fn add_product(&mut self, x: &Rational, w: &Rational) {
        *self.0.entry(x.denom() * w.denom()).or_default() += x.numer() * w.numer();
    }

    fn total(self) -> Rational {
        self.0.into_iter().map(|(d, n)| Rational::new(n, d)).sum()
    }
}

#[derive(Default)]
struct Totals {
    inf_lo: Sum,
    inf_hi: Sum,
    sup_lo: Sum,
    sup_hi: Sum,
    ess_sup_lower: Sum,
    ess_inf_upper: Sum,
}

impl Totals {
    fn add_cell(&mut self, b: &CellBounds, w: &Rational) {
        self.inf_lo.add_product(&b.inf_lo, w);
        self.inf_hi.add_product(&b.inf_hi, w);
        self.sup_lo.add_product(&b.sup_lo, w);
        self.sup_hi.add_product(&b.sup_hi, w);
        self.ess_sup_lower.add_product(&b.ess_sup_lower, w);
        self.ess_inf_upper.add_product(&b.ess_inf_upper, w);
    }

    fn finish(self, tol: &Rational) -> (DarbouxSums, Interval, Interval) {
        let (inf_lo, inf_hi) = (self.inf_lo.total(), self.inf_hi.total());
        let (sup_lo, sup_hi) = (self.sup_lo.total(), self.sup_hi.total());
        let (ess_sup_lower, ess_inf_upper) = (self.ess_sup_lower.total(), self.ess_inf_upper.total());
        let iv = |a: Rational, b: Rational| Interval::new(a, b).expect("ordered totals");
        let sums = DarbouxSums {
            lower: Enclosure::new(iv(inf_lo.clone(), inf_hi), tol),
            upper: Enclosure::new(iv(sup_lo, sup_hi.clone()), tol),
        };
        (sums, iv(inf_lo, ess_sup_lower), iv(ess_inf_upper, sup_hi))
    }
}

/// Darboux sums of `f` over an arbitrary partition of its domain.
pub fn darboux_sums(f: &FunctionModel, partition: &[Rational], tol: &Rational) -> Result<DarbouxSums> {
    check_tol(tol)?;
    if partition.len() < 2 || partition[0] != *f.domain_lo() || partition.last() != Some(f.domain_hi()) {
        return Err(Error::InvalidArgument("partition must start and end at the domain endpoints".into()));
    }
    if partition.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("partition must be strictly increasing".into()));
    }
    let prepared = Prepared::new(f, &Resolution::for_model(f, tol));
    let mut totals = Totals::default();
    for w in partition.windows(2) {
        totals.add_cell(&prepared.cell_bounds(&w[0], &w[1]), &(&w[1] - &w[0]));
    }
    Ok(totals.finish(tol).0)
}

fn check_tol(tol: &Rational) -> Result<()> {
    if tol <= &Rational::zero() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Successive uniform dyadic partitions of the domain, depth 1, 2, ...
pub struct DyadicRefinement<'a> {
    prepared: Prepared<'a>,
    tol: Rational,
    depth: u32,
}

/// Starts the dyadic refinement of `f`; `tol` sets the cover resolution and
/// the convergence flags of the reported enclosures.
pub fn dyadic_refinement<'a>(f: &'a FunctionModel, tol: &Rational) -> Result<DyadicRefinement<'a>> {
    check_tol(tol)?;
    Ok(DyadicRefinement { prepared: Prepared::new(f, &Resolution::for_model(f, tol)), tol: tol.clone(), depth: 0 })
}

impl Iterator for DyadicRefinement<'_> {
    type Item = DarbouxStep;

    fn next(&mut self) -> Option<DarbouxStep> {
        self.depth += 1;
        Some(dyadic_step(&self.prepared, self.depth, &self.tol))
    }
}

/// Refines until both integral enclosures have width at most `tol`, or
/// `max_depth` is reached.
///
/// Each partition gives valid bounds on the same two integrals, so bounds
/// from successive depths are intersected.
pub fn darboux_integrals(f: &FunctionModel, tol: &Rational, max_depth: u32) -> Result<DarbouxResult> {
    if max_depth < 1 {
        return Err(Error::InvalidArgument("max depth must be at least 1".into()));
    }
    let mut lower: Option<Interval> = None;
    let mut upper: Option<Interval> = None;
    let mut depth = 0;
    for step in dyadic_refinement(f, tol)?.take(max_depth as usize) {
        depth = step.depth;
        lower = Some(tighten(lower, step.lower_integral));
        upper = Some(tighten(upper, step.upper_integral));
        let (l, u) = (lower.as_ref().expect("set"), upper.as_ref().expect("set"));
        if &l.width() <= tol && &u.width() <= tol {
            break;
        }
    }
    let (lower, upper) = (lower.expect("at least one step"), upper.expect("at least one step"));
    Ok(DarbouxResult {
        gap: upper.hi() - lower.lo(),
        lower_integral: Enclosure::new(lower, tol),
        upper_integral: Enclosure::new(upper, tol),
        partition_depth: depth,
    })
}

fn tighten(acc: Option<Interval>, next: Interval) -> Interval {
    match acc {
        None => next,
        Some(a) => {
            let lo = max_q(a.lo().clone(), next.lo().clone());
            let hi = min_q(a.hi().clone(), next.hi().clone());
            Interval::new(lo, hi).expect("both enclose the same integral")
        }
    }
}

// Integer sums over runs of plain cells, in units of 1/denom.
#[derive(Default)]
struct RunSums {
    inf: BigInt,
    sup: BigInt,
    ess_sup_lower: BigInt,
    ess_inf_upper: BigInt,
}

fn dyadic_step(p: &Prepared<'_>, depth: u32, tol: &Rational) -> DarbouxStep {
    let lo = p.domain.lo();
    let n = BigInt::one() << depth as usize;
    let h = p.domain.width() / pow2(depth);
    let grid = |j: &BigInt| lo + &h * Rational::from_integer(j.clone());
    // Runs of cells lying inside one monotone cover cell.
    let mut runs: Vec<(usize, BigInt, BigInt)> = Vec::new();
    for (i, cover) in p.covers.iter().enumerate() {
        for cell in &cover.cells {
            if let CoverCell::Monotone { lo: cl, hi: ch, .. } = cell {
                let a = ceil_int(&((cl - lo) / &h));
                let b = floor_int(&((ch - lo) / &h));
                if a < b {
                    runs.push((i, a, b));
                }
            }
        }
    }
    // Cells touching a breakpoint or a modification point are not plain.
    let mut blocked: Vec<BigInt> = Vec::new();
    for (x, _) in &p.points {
        let t = (x - lo) / &h;
        let j = floor_int(&t);
        if t.is_integer() && j > BigInt::zero() {
            blocked.push(&j - 1);
        }
        if j < n {
            blocked.push(j);
        }
    }
    blocked.sort();
    blocked.dedup();

    let mut totals = Totals::default();
    let generic = |j: &BigInt, totals: &mut Totals| {
        let b = p.cell_bounds(&grid(j), &grid(&(j + 1)));
        totals.add_cell(&b, &h);
    };
    let mut next = BigInt::zero();
    for (piece, a, b) in &runs {
        while &next < a {
            generic(&next, &mut totals);
            next += 1;
        }
        let lo_b = blocked.partition_point(|x| x < a);
        let hi_b = blocked.partition_point(|x| x < b);
        let eval = GridEvaluator::new(&p.covers[*piece].poly, p.domain.lo(), &h);
        let mut start = a.clone();
        for stop in blocked[lo_b..hi_b].iter().chain(std::iter::once(b)) {
            if &start < stop {
                plain_run(p, &eval, &h, &start, stop, &mut totals);
            }
            if stop < b {
                generic(stop, &mut totals);
            }
            start = stop + 1;
        }
        next = b.clone();
    }
    while next < n {
        generic(&next, &mut totals);
        next += 1;
    }
    let (sums, lower_integral, upper_integral) = totals.finish(tol);
    DarbouxStep { depth, sums, lower_integral, upper_integral }
}

/// Cells `start..stop` of width `h`, all inside one monotone cell and free
/// of special points: extremes are endpoint values.
fn plain_run(p: &Prepared<'_>, eval: &GridEvaluator, h: &Rational, start: &BigInt, stop: &BigInt, totals: &mut Totals) {
    let (scale, dense) = match &p.dense {
        Some(v) => (v.denom().clone(), Some(v.numer() * eval.denominator())),
        None => (BigInt::one(), None),
    };
    let mut sums = RunSums::default();
    let mut j = start.clone();
    let mut prev = eval.numerator(&j) * &scale;
    while &j < stop {
        j += 1;
        let cur = eval.numerator(&j) * &scale;
        let (mut a, mut b) = if prev <= cur { (prev, cur.clone()) } else { (cur.clone(), prev) };
        match &dense {
            Some(v) => {
                sums.ess_sup_lower += if &b < v { &b } else { v };
                sums.ess_inf_upper += if &a > v { &a } else { v };
                if &a > v {
                    a = v.clone();
                }
                if &b < v {
                    b = v.clone();
                }
            }
            None => {
                sums.ess_sup_lower += &b;
                sums.ess_inf_upper += &a;
            }
        }
        sums.inf += a;
        sums.sup += b;
        prev = cur;
    }
    let unit = h / Rational::from_integer(eval.denominator() * &scale);
    let q = |s: BigInt| Rational::from_integer(s) * &unit;
    let (inf, sup) = (q(sums.inf), q(sums.sup));
    totals.inf_lo.add(&inf);
    totals.inf_hi.add(&inf);
    totals.sup_lo.add(&sup);
    totals.sup_hi.add(&sup);
    totals.ess_sup_lower.add(&q(sums.ess_sup_lower));
    totals.ess_inf_upper.add(&q(sums.ess_inf_upper));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{CountableModification, PiecewiseFunction};
    use crate::numeric::{int, rat, Polynomial};

    fn identity() -> FunctionModel {
        let p = Polynomial::new(vec![int(0), int(1)]);
        FunctionModel::unmodified(PiecewiseFunction::single(int(0), int(1), p).unwrap())
    }

    fn uniform(lo: i64, hi: i64, n: i64) -> Vec<Rational> {
        (0..=n).map(|i| int(lo) + (int(hi) - int(lo)) * rat(i, n)).collect()
    }

    #[test]
    fn identity_quarter_partition() {
        let s = darboux_sums(&identity(), &uniform(0, 1, 4), &rat(1, 1000)).unwrap();
        assert_eq!(s.lower, Enclosure::exact(rat(3, 8)));
        assert_eq!(s.upper, Enclosure::exact(rat(5, 8)));
    }

    #[test]
    fn constant_and_dirichlet_sums() {
        let s = darboux_sums(&constant(5, 0, 2), &[int(0), rat(1, 3), int(2)], &rat(1, 10)).unwrap();
        assert_eq!((s.lower, s.upper), (Enclosure::exact(int(10)), Enclosure::exact(int(10))));
        let s = darboux_sums(&dirichlet(), &uniform(0, 1, 7), &rat(1, 10)).unwrap();
        assert_eq!((s.lower, s.upper), (Enclosure::exact(int(0)), Enclosure::exact(int(1))));
    }

    #[test]
    fn rejects_bad_partitions() {
        let f = identity();
        let tol = rat(1, 10);
        assert!(darboux_sums(&f, &[int(0)], &tol).is_err());
        assert!(darboux_sums(&f, &[int(0), rat(1, 2)], &tol).is_err());
        assert!(darboux_sums(&f, &[int(0), rat(1, 2), rat(1, 2), int(1)], &tol).is_err());
        assert!(darboux_sums(&f, &[int(0), int(1)], &int(0)).is_err());
        assert!(darboux_integrals(&f, &tol, 0).is_err());
    }

    #[test]
    fn dirichlet_integrals_at_every_depth() {
        let f = dirichlet();
        for step in dyadic_refinement(&f, &rat(1, 1000)).unwrap().take(10) {
            assert_eq!(step.lower_integral, Interval::point(int(0)));
            assert_eq!(step.upper_integral, Interval::point(int(1)));
        }
        let r = darboux_integrals(&f, &rat(1, 1000), 20).unwrap();
        assert_eq!(r.gap, int(1));
        assert!(r.converged());
    }

    #[test]
    fn dyadic_steps_match_generic_sums() {
        let mut fast_cases = vec![square(-1, 1), heaviside(), dirichlet()];
        let cubic = Polynomial::new(vec![rat(1, 5), int(2), int(0), int(-1)]);
        let base = PiecewiseFunction::new(
            vec![int(-1), rat(1, 3), int(1)],
            vec![cubic, Polynomial::new(vec![int(1), rat(-3, 2)])],
            vec![int(0), int(7), int(-2)],
        )
        .unwrap();
        fast_cases.push(
            FunctionModel::new(base.clone(), Some(CountableModification::Finite(vec![(rat(1, 4), int(3))]))).unwrap(),
        );
        fast_cases.push(
            FunctionModel::new(
                base,
                Some(CountableModification::Dense { set: crate::model::DenseSet::Dyadics, value: rat(1, 2) }),
            )
            .unwrap(),
        );
        let tol = rat(1, 1 << 20);
        for f in &fast_cases {
            for step in dyadic_refinement(f, &tol).unwrap().take(7) {
                let n = 1i64 << step.depth;
                let partition: Vec<Rational> =
                    (0..=n).map(|i| f.domain_lo() + (f.domain_hi() - f.domain_lo()) * rat(i, n)).collect();
                assert_eq!(darboux_sums(f, &partition, &tol).unwrap(), step.sums, "depth {}", step.depth);
            }
        }
    }

    #[test]
    fn square_converges_to_a_third() {
        let tol = rat(1, 1 << 12);
        let r = darboux_integrals(&square(0, 1), &tol, 30).unwrap();
        assert!(r.converged());
        assert!(r.lower_integral.contains(&rat(1, 3)) && r.upper_integral.contains(&rat(1, 3)));
        assert!(r.gap <= tol);
        assert_eq!(r.partition_depth, 12);
    }
}
