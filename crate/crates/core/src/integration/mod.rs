//! Level sets, measurability certificates, Darboux and Lebesgue integrals.

mod certificate;
mod compare;
mod cover;
mod darboux;
mod lebesgue;
mod level;
mod prepared;

pub use certificate::{measurability_report, Certificate, ExceptionSet, SpotCheck, SPOT_CHECKS};
pub use compare::{compare_report, oscillation_measure, ComparisonReport, Verdict, OSCILLATION_LEVELS};
pub use darboux::{
    darboux_integrals, darboux_sums, dyadic_refinement, DarbouxResult, DarbouxStep, DarbouxSums, DyadicRefinement,
};
pub use lebesgue::{lebesgue_integral, INITIAL_LEVELS, MAX_LEVELS};
pub use level::{level_measure, level_set, LevelSet, PointAdjustment, Relation};
