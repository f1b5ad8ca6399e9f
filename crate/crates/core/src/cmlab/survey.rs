use rayon::prelude::*;
use serde::Serialize;

use super::cm::{ap_cm, kronecker, ReductionType, SUPPORTED_CM};
use super::curve::{ap_pointcount, EllipticCurve};
use super::primes::primes_in;
use crate::error::CmError;
use crate::tate::cyclotomic_spectrum;
use crate::weil::{elliptic, product_variety};

pub const SURVEY_BUDGET: u64 = 10_000_000;
pub const NONCM_BUDGET: u64 = 10_000;

/// Tate-class ranks of `E x E` over `F_p` and over the algebraic closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareRanks {
    pub rank_base: u64,
    pub rank_stable: u64,
    pub stable_degree: u64,
}

/// Ranks of codimension-1 Tate classes on `E x E` for `E` with trace `a` over
/// `F_p`. They depend on `a` only through `a^2`.
pub fn square_ranks(a: i64, p: u64) -> Result<SquareRanks, CmError> {
    let e = elliptic(a, p)?;
    let ee = product_variety(&e, &e)?;
    let spec = cyclotomic_spectrum(&ee, 1)?;
    Ok(SquareRanks {
        rank_base: spec.dim_over(1),
        rank_stable: spec.stable_dim(),
        stable_degree: spec.min_stable_degree(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub p: u64,
    pub kronecker: i8,
    /// `|a_p|`; absent at excluded primes.
    pub a_p: Option<u64>,
    pub reduction_type: ReductionType,
    pub rank_base: Option<u64>,
    pub rank_stable: Option<u64>,
    pub stable_degree: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub p_max: u64,
    /// Primes `5 <= p <= p_max` not dividing `D`.
    pub good_primes: u64,
    pub split: u64,
    pub inert: u64,
    pub rank4: u64,
    pub rank6: u64,
    pub other_rank: u64,
    pub inert_fraction: f64,
    pub split_fraction: f64,
    pub reference_fraction: f64,
    /// The same data counted over prime ideals of the CM field.
    pub cm_field: CmFieldDensity,
}

/// Over the CM field, a split `p` gives two degree-one primes (rank 4) and an
/// inert `p` one prime of norm `p^2` (rank 6 is then already attained over
/// the residue field). Counting ideals of norm `<= p_max`, the rank-6 share
/// tends to 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmFieldDensity {
    pub prime_ideals: u64,
    pub from_inert: u64,
    pub inert_fraction: f64,
}

impl DensityReport {
    pub fn from_rows(p_max: u64, rows: &[SurveyRow]) -> Self {
        let good: Vec<&SurveyRow> = rows
            .iter()
            .filter(|r| r.reduction_type != ReductionType::BadOrExcluded)
            .collect();
        let count = |f: &dyn Fn(&SurveyRow) -> bool| good.iter().filter(|r| f(r)).count() as u64;
        let split = count(&|r| r.kronecker == 1);
        let inert = count(&|r| r.kronecker == -1);
        let rank4 = count(&|r| r.rank_stable == Some(4));
        let rank6 = count(&|r| r.rank_stable == Some(6));
        let n = good.len() as u64;
        let frac = |k: u64| if n == 0 { 0.0 } else { k as f64 / n as f64 };
        let from_inert = good
            .iter()
            .filter(|r| r.kronecker == -1 && r.p.checked_mul(r.p).is_some_and(|sq| sq <= p_max))
            .count() as u64;
        let prime_ideals = 2 * split + from_inert;
        Self {
            p_max,
            good_primes: n,
            split,
            inert,
            rank4,
            rank6,
            other_rank: n - rank4 - rank6,
            inert_fraction: frac(inert),
            split_fraction: frac(split),
            reference_fraction: 0.5,
            cm_field: CmFieldDensity {
                prime_ideals,
                from_inert,
                inert_fraction: if prime_ideals == 0 {
                    0.0
                } else {
                    from_inert as f64 / prime_ideals as f64
                },
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Survey {
    pub disc: i64,
    pub rows: Vec<SurveyRow>,
    pub density: DensityReport,
}

fn check_disc(d: i64) -> Result<(), CmError> {
    if SUPPORTED_CM.contains(&d) {
        Ok(())
    } else {
        Err(CmError::UnsupportedDiscriminant { d })
    }
}

fn survey_row(d: i64, p: u64) -> Result<SurveyRow, CmError> {
    let kr = kronecker(d, p)?;
    if p < 5 || d.unsigned_abs().is_multiple_of(p) {
        return Ok(SurveyRow {
            p,
            kronecker: kr,
            a_p: None,
            reduction_type: ReductionType::BadOrExcluded,
            rank_base: None,
            rank_stable: None,
            stable_degree: None,
        });
    }
    let t = ap_cm(d, p)?;
    let ranks = square_ranks(t.abs_trace as i64, p)?;
    Ok(SurveyRow {
        p,
        kronecker: kr,
        a_p: Some(t.abs_trace),
        reduction_type: t.reduction,
        rank_base: Some(ranks.rank_base),
        rank_stable: Some(ranks.rank_stable),
        stable_degree: Some(ranks.stable_degree),
    })
}

/// Survey rows for the primes in `lo..=hi`, in increasing order.
pub fn survey_rows(d: i64, lo: u64, hi: u64) -> Result<Vec<SurveyRow>, CmError> {
    check_disc(d)?;
    if hi > SURVEY_BUDGET {
        return Err(CmError::BudgetExceeded {
            what: "p_max",
            value: hi,
            limit: SURVEY_BUDGET,
        });
    }
    primes_in(lo, hi)
        .into_par_iter()
        .map(|p| survey_row(d, p))
        .collect()
}

/// Ranks of `E x E` for the CM curves with discriminant `D` at every prime
/// up to `p_max`, with splitting densities.
pub fn exe_survey(d: i64, p_max: u64) -> Result<Survey, CmError> {
    let rows = survey_rows(d, 2, p_max)?;
    let density = DensityReport::from_rows(p_max, &rows);
    Ok(Survey {
        disc: d,
        rows,
        density,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonCmRow {
    pub p: u64,
    /// Signed trace; absent at bad primes.
    pub a_p: Option<i64>,
    pub good: bool,
    pub rank_base: Option<u64>,
    pub rank_stable: Option<u64>,
    pub stable_degree: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonCmReport {
    pub curve: EllipticCurve,
    pub p_max: u64,
    pub rows: Vec<NonCmRow>,
    /// Good primes with `rank_stable > 4`.
    pub exceptions: Vec<u64>,
    pub all_rank_base_4: bool,
}

/// Ranks of `E x E` at every prime up to `p_max` by point counting.
pub fn noncm_rank_check(e: &EllipticCurve, p_max: u64) -> Result<NonCmReport, CmError> {
    if p_max > NONCM_BUDGET {
        return Err(CmError::BudgetExceeded {
            what: "p_max",
            value: p_max,
            limit: NONCM_BUDGET,
        });
    }
    let rows = primes_in(2, p_max)
        .into_par_iter()
        .map(|p| -> Result<NonCmRow, CmError> {
            let Some(a) = ap_pointcount(e, p)? else {
                return Ok(NonCmRow {
                    p,
                    a_p: None,
                    good: false,
                    rank_base: None,
                    rank_stable: None,
                    stable_degree: None,
                });
            };
            let r = square_ranks(a, p)?;
            Ok(NonCmRow {
                p,
                a_p: Some(a),
                good: true,
                rank_base: Some(r.rank_base),
                rank_stable: Some(r.rank_stable),
                stable_degree: Some(r.stable_degree),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let exceptions = rows
        .iter()
        .filter(|r| r.rank_stable.is_some_and(|s| s > 4))
        .map(|r| r.p)
        .collect();
    let all_rank_base_4 = rows
        .iter()
        .filter(|r| r.good)
        .all(|r| r.rank_base == Some(4));
    Ok(NonCmReport {
        curve: e.clone(),
        p_max,
        rows,
        exceptions,
        all_rank_base_4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rows() {
        let s = exe_survey(-4, 13).unwrap();
        let ps: Vec<u64> = s.rows.iter().map(|r| r.p).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13]);
        assert_eq!(s.rows[0].reduction_type, ReductionType::BadOrExcluded);
        assert_eq!(s.rows[1].reduction_type, ReductionType::BadOrExcluded);
        let r7 = &s.rows[3];
        assert_eq!(
            (
                r7.kronecker,
                r7.a_p,
                r7.reduction_type,
                r7.rank_base,
                r7.rank_stable,
                r7.stable_degree
            ),
            (
                -1,
                Some(0),
                ReductionType::Supersingular,
                Some(4),
                Some(6),
                Some(2)
            )
        );
        let r13 = &s.rows[5];
        assert_eq!(
            (
                r13.kronecker,
                r13.a_p,
                r13.reduction_type,
                r13.rank_base,
                r13.rank_stable,
                r13.stable_degree
            ),
            (
                1,
                Some(6),
                ReductionType::Ordinary,
                Some(4),
                Some(4),
                Some(1)
            )
        );
        assert_eq!(s.density.good_primes, 4);
        assert_eq!(s.density.inert, 2);
    }

    #[test]
    fn conductor_37_small_primes() {
        let r = noncm_rank_check(&EllipticCurve::conductor_37(), 3).unwrap();
        let r2 = &r.rows[0];
        assert_eq!(
            (r2.a_p, r2.rank_base, r2.rank_stable, r2.stable_degree),
            (Some(-2), Some(4), Some(6), Some(4))
        );
        assert_eq!(r.rows[1].a_p, Some(-3));
        assert_eq!(r.rows[1].rank_base, Some(4));
        assert_eq!(r.exceptions, vec![2, 3]);
        assert!(r.all_rank_base_4);
    }

    #[test]
    fn budgets() {
        assert!(matches!(
            exe_survey(-4, SURVEY_BUDGET + 1),
            Err(CmError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            noncm_rank_check(&EllipticCurve::conductor_37(), NONCM_BUDGET + 1),
            Err(CmError::BudgetExceeded { .. })
        ));
        assert_eq!(
            exe_survey(-5, 10),
            Err(CmError::UnsupportedDiscriminant { d: -5 })
        );
    }
}
