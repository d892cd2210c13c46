//! Decomposition of a piece's closed span into cells on which the piece is
//! monotone, plus short cells around critical points that interval
//! arithmetic cannot certify as monotone.

use crate::numeric::{max_q, min_q, range_enclosure, simplest_between, Interval, Polynomial, Rational};

#[derive(Debug, Clone)]
pub(crate) enum CoverCell {
    /// Strictly monotone (or the piece is constant) on `[lo, hi]`.
    Monotone { lo: Rational, hi: Rational, at_lo: Rational, at_hi: Rational },
    /// Width at most the cover's tiny width. `outer` bounds the range;
    /// `attained_min` and `attained_max` are exact values taken on the cell.
    Tiny {
        lo: Rational,
        hi: Rational,
        outer: Interval,
        attained_min: Rational,
        attained_max: Rational,
    },
}

impl CoverCell {
    pub(crate) fn lo(&self) -> &Rational {
        match self {
            CoverCell::Monotone { lo, .. } | CoverCell::Tiny { lo, .. } => lo,
        }
    }

    pub(crate) fn hi(&self) -> &Rational {
        match self {
            CoverCell::Monotone { hi, .. } | CoverCell::Tiny { hi, .. } => hi,
        }
    }
}

/// Bounds on `inf` and `sup` of a piece over a sub-window.
#[derive(Debug, Clone)]
pub(crate) struct WindowRange {
    pub inf_lo: Rational,
    pub inf_hi: Rational,
    pub sup_lo: Rational,
    pub sup_hi: Rational,
}

impl WindowRange {
    fn exact(v: Rational) -> Self {
        Self { inf_lo: v.clone(), inf_hi: v.clone(), sup_lo: v.clone(), sup_hi: v }
    }

    pub(crate) fn absorb_attained(&mut self, v: &Rational) {
        if v < &self.inf_lo {
            self.inf_lo = v.clone();
        }
        if v < &self.inf_hi {
            self.inf_hi = v.clone();
        }
        if v > &self.sup_lo {
            self.sup_lo = v.clone();
        }
        if v > &self.sup_hi {
            self.sup_hi = v.clone();
        }
    }

    fn absorb_outer(&mut self, outer: &Interval) {
        if outer.lo() < &self.inf_lo {
            self.inf_lo = outer.lo().clone();
        }
        if outer.hi() > &self.sup_hi {
            self.sup_hi = outer.hi().clone();
        }
    }

    pub(crate) fn merge(&mut self, other: &WindowRange) {
        self.inf_lo = min_q(self.inf_lo.clone(), other.inf_lo.clone());
        self.inf_hi = min_q(self.inf_hi.clone(), other.inf_hi.clone());
        self.sup_lo = max_q(self.sup_lo.clone(), other.sup_lo.clone());
        self.sup_hi = max_q(self.sup_hi.clone(), other.sup_hi.clone());
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PieceCover {
    pub poly: Polynomial,
    pub span: Interval,
    pub cells: Vec<CoverCell>,
}

impl PieceCover {
    /// Covers `span` (inside `grid`, normally the whole domain).
    ///
    /// Every cell lies inside one dyadic cell `g` of `grid`, and tiny cells
    /// are only emitted once `g` itself is at most `tiny_width` wide. So no
    /// point of a dyadic partition of `grid` coarser than `tiny_width` falls
    /// strictly inside a tiny cell.
    pub(crate) fn build(
        poly: &Polynomial,
        span: &Interval,
        grid: &Interval,
        tiny_width: &Rational,
        range_tol: &Rational,
    ) -> Self {
        let mut cells = Vec::new();
        let dp = poly.derivative();
        let ddp = dp.derivative();
        let zero = Rational::from_integer(0.into());
        let mut stack = vec![(span.clone(), grid.clone(), true)];
        // Depth-first, right child pushed first, so cells come out in order.
        while let Some((cell, g, fresh)) = stack.pop() {
            if fresh {
                let slope = dp.enclose_using(&ddp, &cell);
                if poly.is_constant() || slope.lo() >= &zero || slope.hi() <= &zero {
                    cells.push(CoverCell::Monotone {
                        at_lo: poly.eval(cell.lo()),
                        at_hi: poly.eval(cell.hi()),
                        lo: cell.lo().clone(),
                        hi: cell.hi().clone(),
                    });
                    continue;
                }
                // Split exactly at a rational critical point when one is
                // simple to find.
                let candidate = simplest_between(cell.lo(), cell.hi());
                if dp.eval(&candidate) == zero {
                    let right = Interval::new(candidate.clone(), cell.hi().clone()).expect("ordered");
                    let left = Interval::new(cell.lo().clone(), candidate).expect("ordered");
                    stack.push((right, g.clone(), true));
                    stack.push((left, g, true));
                    continue;
                }
            }
            if &g.width() <= tiny_width {
                let r = range_enclosure(poly, &cell, range_tol).expect("positive tolerance");
                cells.push(CoverCell::Tiny {
                    outer: Interval::new(r.inf.lo().clone(), r.sup.hi().clone()).expect("ordered"),
                    attained_min: r.inf.hi().clone(),
                    attained_max: r.sup.lo().clone(),
                    lo: cell.lo().clone(),
                    hi: cell.hi().clone(),
                });
                continue;
            }
            let (g_left, g_right) = g.bisect();
            let mid = g_left.hi();
            if mid <= cell.lo() {
                stack.push((cell, g_right, false));
            } else if mid >= cell.hi() {
                stack.push((cell, g_left, false));
            } else {
                let left = Interval::new(cell.lo().clone(), mid.clone()).expect("ordered");
                let right = Interval::new(mid.clone(), cell.hi().clone()).expect("ordered");
                stack.push((right, g_right, true));
                stack.push((left, g_left, true));
            }
        }
        Self { poly: poly.clone(), span: span.clone(), cells }
    }

    /// Index of the first cell whose span reaches `x`.
    fn first_cell_reaching(&self, x: &Rational) -> usize {
        self.cells.partition_point(|c| c.hi() < x)
    }

    /// Bounds on the piece's inf and sup over `window` (inside the span).
    ///
    /// Monotone parts contribute exact endpoint values. Tiny cells contribute
    /// their whole outer range even when only partly covered, so the bound
    /// for a sub-window is never looser than for a window containing it.
    pub(crate) fn range_over(&self, window: &Interval) -> WindowRange {
        let (a, b) = (window.lo(), window.hi());
        let mut out: Option<WindowRange> = None;
        let absorb = |out: &mut Option<WindowRange>, v: Rational| match out {
            Some(r) => r.absorb_attained(&v),
            None => *out = Some(WindowRange::exact(v)),
        };
        for cell in &self.cells[self.first_cell_reaching(a)..] {
            if cell.lo() > b {
                break;
            }
            let lo = max_q(cell.lo().clone(), a.clone());
            let hi = min_q(cell.hi().clone(), b.clone());
            match cell {
                CoverCell::Monotone { lo: cl, hi: ch, at_lo, at_hi } => {
                    let vl = if &lo == cl { at_lo.clone() } else { self.poly.eval(&lo) };
                    let vh = if &hi == ch { at_hi.clone() } else { self.poly.eval(&hi) };
                    absorb(&mut out, vl);
                    absorb(&mut out, vh);
                }
                CoverCell::Tiny { lo: cl, hi: ch, outer, attained_min, attained_max } => {
                    if &lo == cl && &hi == ch {
                        absorb(&mut out, attained_min.clone());
                        absorb(&mut out, attained_max.clone());
                    } else {
                        absorb(&mut out, self.poly.eval(&lo));
                        absorb(&mut out, self.poly.eval(&hi));
                    }
                    out.as_mut().expect("absorbed").absorb_outer(outer);
                }
            }
        }
        out.expect("window inside the span meets a cell")
    }

    #[cfg(test)]
    pub(crate) fn tiny_cells(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c, CoverCell::Tiny { .. })).count()
    }
}
