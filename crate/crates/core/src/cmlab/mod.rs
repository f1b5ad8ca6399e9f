//! Elliptic-curve and quadratic-field experiments over the rational primes.
//!
//! Surveys of `E x E` for CM curves, the same ranks for a curve without CM,
//! least inert primes against the effective bound, and prime-ideal counts in
//! quadratic fields.

mod cm;
mod curve;
mod primes;
mod survey;

pub use cm::{ap_cm, cornacchia, kronecker, CmTrace, ReductionType, SUPPORTED_CM};
pub use curve::{ap_pointcount, EllipticCurve, POINTCOUNT_BUDGET};
pub use primes::{
    least_nonsplit_search, li, offset_li, pi_k_count, primes_in, NonSplitSearch, PiKCount,
    PI_K_BUDGET,
};
pub use survey::{
    exe_survey, noncm_rank_check, square_ranks, survey_rows, CmFieldDensity, DensityReport,
    NonCmReport, NonCmRow, SquareRanks, Survey, SurveyRow, NONCM_BUDGET, SURVEY_BUDGET,
};
