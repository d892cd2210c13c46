//! Upper and lower limit envelopes, one-sided envelopes, and pointwise
//! semicontinuity and continuity classification.
//!
//! Within the model class every envelope is attained symbolically: near a
//! point the function only takes its own value, the one-sided polynomial
//! limits of the adjacent pieces, and (for a dense modification) the dense
//! value. Finite modification points are isolated, so they never enter a
//! punctured window once it is small enough.

use std::fmt;

use crate::error::Result;
use crate::model::{DenseSet, FunctionModel, Location};
use crate::numeric::{max_q, min_q, range_enclosure, Interval, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A (limsup, liminf) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub sup: Rational,
    pub inf: Rational,
}

impl Limits {
    fn from_values<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut iter = values.into_iter();
        let first = iter.next().expect("at least one value").clone();
        let (sup, inf) = iter.fold((first.clone(), first), |(s, i), v| {
            (max_q(s, v.clone()), min_q(i, v.clone()))
        });
        Limits { sup, inf }
    }
}

/// Polynomial limit of the adjacent piece from `side`, or `None` when the
/// one-sided window is empty at a domain endpoint.
fn piece_limit(f: &FunctionModel, x: &Rational, side: Side) -> Result<Option<Rational>> {
    let base = f.base();
    let loc = base.locate(x)?;
    let piece = match (side, loc) {
        (Side::Left, _) if x == base.domain_lo() => return Ok(None),
        (Side::Right, _) if x == base.domain_hi() => return Ok(None),
        (Side::Left, Location::Breakpoint(k)) => k - 1,
        (Side::Right, Location::Breakpoint(k)) => k,
        (_, Location::Piece { index }) => index,
    };
    Ok(Some(base.pieces()[piece].eval(x)))
}

/// Limsup and liminf over the punctured one-sided window `]x-e, x[` or
/// `]x, x+e[`; `None` when that window is empty.
pub fn one_sided_limits(f: &FunctionModel, x: &Rational, side: Side) -> Result<Option<Limits>> {
    let Some(limit) = piece_limit(f, x, side)? else {
        return Ok(None);
    };
    Ok(Some(match f.dense() {
        Some((_, v)) => Limits::from_values([&limit, v]),
        None => Limits { sup: limit.clone(), inf: limit },
    }))
}

/// `f*(x)` and `f_*(x)` over windows `]x-e, x+e[` intersected with the
/// domain. The window contains `x`, so `f_*(x) <= f(x) <= f*(x)`.
pub fn two_sided_limits(f: &FunctionModel, x: &Rational) -> Result<Limits> {
    let own = f.evaluate(x)?;
    let mut values = vec![own];
    for side in [Side::Left, Side::Right] {
        if let Some(l) = one_sided_limits(f, x, side)? {
            values.push(l.sup);
            values.push(l.inf);
        }
    }
    Ok(Limits::from_values(&values))
}

/// All envelope values at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeValues {
    pub value: Rational,
    pub two_sided_sup: Rational,
    pub two_sided_inf: Rational,
    pub left_sup: Option<Rational>,
    pub left_inf: Option<Rational>,
    pub right_sup: Option<Rational>,
    pub right_inf: Option<Rational>,
    pub oscillation: Rational,
}

impl EnvelopeValues {
    pub fn left(&self) -> Option<Limits> {
        Some(Limits { sup: self.left_sup.clone()?, inf: self.left_inf.clone()? })
    }

    pub fn right(&self) -> Option<Limits> {
        Some(Limits { sup: self.right_sup.clone()?, inf: self.right_inf.clone()? })
    }

    /// Checks the structural invariants, returning a description of the
    /// first violation.
    pub fn check(&self) -> std::result::Result<(), String> {
        if !(self.two_sided_inf <= self.value && self.value <= self.two_sided_sup) {
            return Err(format!(
                "sandwich violated: {} <= {} <= {}",
                self.two_sided_inf, self.value, self.two_sided_sup
            ));
        }
        if self.oscillation != &self.two_sided_sup - &self.two_sided_inf {
            return Err("oscillation differs from sup - inf".into());
        }
        let mut sup = self.value.clone();
        let mut inf = self.value.clone();
        for l in [self.left(), self.right()].into_iter().flatten() {
            if l.inf > l.sup {
                return Err("one-sided inf exceeds sup".into());
            }
            sup = max_q(sup, l.sup);
            inf = min_q(inf, l.inf);
        }
        if sup != self.two_sided_sup || inf != self.two_sided_inf {
            return Err("two-sided envelope differs from the one-sided decomposition".into());
        }
        Ok(())
    }
}

pub fn envelope_values(f: &FunctionModel, x: &Rational) -> Result<EnvelopeValues> {
    let value = f.evaluate(x)?;
    let left = one_sided_limits(f, x, Side::Left)?;
    let right = one_sided_limits(f, x, Side::Right)?;
    let two = two_sided_limits(f, x)?;
    let (left_sup, left_inf) = left.map_or((None, None), |l| (Some(l.sup), Some(l.inf)));
    let (right_sup, right_inf) = right.map_or((None, None), |l| (Some(l.sup), Some(l.inf)));
    Ok(EnvelopeValues {
        value,
        oscillation: &two.sup - &two.inf,
        two_sided_sup: two.sup,
        two_sided_inf: two.inf,
        left_sup,
        left_inf,
        right_sup,
        right_inf,
    })
}

/// Exact envelope values at every grid point, in grid order.
pub fn envelope_table(f: &FunctionModel, grid: &[Rational]) -> Result<Vec<(Rational, EnvelopeValues)>> {
    grid.iter()
        .map(|x| Ok((x.clone(), envelope_values(f, x)?)))
        .collect()
}

/// Regularity profile at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointClass {
    pub is_usc: bool,
    pub is_lsc: bool,
    pub is_left_cont: bool,
    pub is_right_cont: bool,
    pub is_cont: bool,
}

impl PointClass {
    pub fn has(&self, property: Property) -> bool {
        match property {
            Property::Usc => self.is_usc,
            Property::Lsc => self.is_lsc,
            Property::LeftCont => self.is_left_cont,
            Property::RightCont => self.is_right_cont,
            Property::Cont => self.is_cont,
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "usc={} lsc={} left={} right={} cont={}",
            yn(self.is_usc),
            yn(self.is_lsc),
            yn(self.is_left_cont),
            yn(self.is_right_cont),
            yn(self.is_cont)
        )
    }
}

fn side_continuous(limits: Option<Limits>, value: &Rational) -> bool {
    limits.map_or(true, |l| &l.sup == value && &l.inf == value)
}

pub fn classify_values(env: &EnvelopeValues) -> PointClass {
    let is_usc = env.two_sided_sup == env.value;
    let is_lsc = env.two_sided_inf == env.value;
    PointClass {
        is_usc,
        is_lsc,
        is_left_cont: side_continuous(env.left(), &env.value),
        is_right_cont: side_continuous(env.right(), &env.value),
        is_cont: is_usc && is_lsc,
    }
}

/// usc at `x` iff `f*(x) = f(x)`, lsc iff `f_*(x) = f(x)`; a one-sided
/// property holds vacuously on an empty side.
pub fn classify_point(f: &FunctionModel, x: &Rational) -> Result<PointClass> {
    Ok(classify_values(&envelope_values(f, x)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Usc,
    Lsc,
    LeftCont,
    RightCont,
    Cont,
}

impl Property {
    pub const ALL: [Property; 5] =
        [Property::Usc, Property::Lsc, Property::LeftCont, Property::RightCont, Property::Cont];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Usc => "usc",
            Property::Lsc => "lsc",
            Property::LeftCont => "left-continuous",
            Property::RightCont => "right-continuous",
            Property::Cont => "continuous",
        }
    }
}

/// Where the base function stands relative to the dense value on the
/// failing part of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// base > dense value
    Above,
    /// base < dense value
    Below,
    /// base != dense value
    Differs,
}

impl Condition {
    fn symbol(&self) -> &'static str {
        match self {
            Condition::Above => ">",
            Condition::Below => "<",
            Condition::Differs => "!=",
        }
    }
}

/// How much of a piece's open interval satisfies a [`Condition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    Nowhere,
    /// On a nonempty open subset.
    Partial,
    Everywhere,
    /// Everywhere except finitely many roots.
    AllButFinitelyMany,
    /// The condition touches the boundary of the piece's range and the
    /// enclosure could not separate the cases.
    Undetermined,
}

/// Failure set carried by one half (members or non-members) of a dense
/// modification: `{x in half, x interior to a piece : base(x) condition v}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureRegion {
    pub condition: Condition,
    pub pieces: Vec<(usize, Extent)>,
}

impl FailureRegion {
    pub fn is_nonempty(&self) -> bool {
        self.pieces
            .iter()
            .any(|(_, e)| matches!(e, Extent::Partial | Extent::Everywhere | Extent::AllButFinitelyMany))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseFailure {
    pub set: DenseSet,
    pub value: Rational,
    pub members: FailureRegion,
    pub non_members: FailureRegion,
    /// Breakpoints in the dense set where the property fails.
    pub member_breakpoints: Vec<Rational>,
}

/// Where a regularity property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionReport {
    pub property: Property,
    /// Exact failures among breakpoints and finite modification points,
    /// excluding members of a dense modification set.
    pub points: Vec<Rational>,
    pub dense: Option<DenseFailure>,
}

impl ExceptionReport {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
            && self.dense.as_ref().map_or(true, |d| {
                d.member_breakpoints.is_empty() && !d.members.is_nonempty() && !d.non_members.is_nonempty()
            })
    }

    /// Lists the halves of the dense set that actually fail, with the
    /// pieces involved; `None` when nothing interior fails.
    pub fn describe_dense(&self) -> Option<String> {
        let d = self.dense.as_ref()?;
        let half = |name: &str, r: &FailureRegion| {
            let parts: Vec<String> = r
                .pieces
                .iter()
                .filter_map(|(i, e)| match e {
                    Extent::Nowhere => None,
                    Extent::Partial => Some(format!("part of piece {i}")),
                    Extent::Everywhere => Some(format!("all of piece {i}")),
                    Extent::AllButFinitelyMany => Some(format!("piece {i} minus finitely many roots")),
                    Extent::Undetermined => Some(format!("piece {i} undetermined")),
                })
                .collect();
            (!parts.is_empty()).then(|| {
                format!("{name} {} where base {} {} ({})", d.set, r.condition.symbol(), d.value, parts.join(", "))
            })
        };
        let halves: Vec<String> =
            [half("members of", &d.members), half("non-members of", &d.non_members)].into_iter().flatten().collect();
        (!halves.is_empty()).then(|| halves.join("; "))
    }
}

const EXTENT_TOL_BITS: usize = 40;

fn extent(f: &FunctionModel, piece: usize, cond: Condition, v: &Rational) -> Extent {
    let base = f.base();
    let q = base.pieces()[piece].sub_constant(v);
    if q.is_zero() {
        return Extent::Nowhere;
    }
    let span: Interval = base.piece_span(piece);
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(1) << EXTENT_TOL_BITS);
    let zero = Rational::from_integer(0.into());
    if cond == Condition::Differs {
        // A nonzero polynomial vanishes at finitely many points.
        let r = range_enclosure(&q, &span, &tol).expect("positive tolerance");
        return if r.inf.lo() > &zero || r.sup.hi() < &zero {
            Extent::Everywhere
        } else {
            Extent::AllButFinitelyMany
        };
    }
    let q = if cond == Condition::Below { q.neg() } else { q };
    let r = range_enclosure(&q, &span, &tol).expect("positive tolerance");
    if r.inf.lo() > &zero {
        Extent::Everywhere
    } else if r.sup.lo() > &zero {
        // An attained positive value; by continuity it persists on an open set.
        Extent::Partial
    } else if r.sup.hi() <= &zero {
        Extent::Nowhere
    } else {
        Extent::Undetermined
    }
}

/// Enumerates where `property` fails.
///
/// Without a dense modification the failure set is finite and contained in
/// the breakpoints plus finite modification points, because each piece is
/// continuous on its open interval. With a dense modification the report
/// also carries the symbolic failure set off the breakpoints.
pub fn exceptional_points(f: &FunctionModel, property: Property) -> ExceptionReport {
    let base = f.base();
    let mut candidates: Vec<Rational> = base.breakpoints().to_vec();
    candidates.extend(f.finite_points().iter().map(|(x, _)| x.clone()));
    candidates.sort();
    candidates.dedup();
    let dense = f.dense();
    let mut points = Vec::new();
    let mut member_breakpoints = Vec::new();
    for x in candidates {
        let class = classify_point(f, &x).expect("candidate inside domain");
        if class.has(property) {
            continue;
        }
        match dense {
            Some((set, _)) if set.contains(&x) => member_breakpoints.push(x),
            _ => points.push(x),
        }
    }
    let dense = dense.map(|(set, v)| {
        let (member_cond, non_member_cond) = match property {
            Property::Usc => (Condition::Above, Condition::Below),
            Property::Lsc => (Condition::Below, Condition::Above),
            _ => (Condition::Differs, Condition::Differs),
        };
        let region = |cond| FailureRegion {
            condition: cond,
            pieces: (0..base.pieces().len()).map(|i| (i, extent(f, i, cond, v))).collect(),
        };
        DenseFailure {
            set,
            value: v.clone(),
            members: region(member_cond),
            non_members: region(non_member_cond),
            member_breakpoints,
        }
    });
    ExceptionReport { property, points, dense }
}
