use serde::Serialize;

use super::cm::kronecker;
use crate::arith::is_fundamental_discriminant;
use crate::bounds::{least_nonsplit_bound, BoundReport, FieldParams};
use crate::error::CmError;
use crate::scalar::Real;

/// Largest `x` accepted by [`pi_k_count`].
pub const PI_K_BUDGET: u64 = 100_000_000;

/// Primes in `lo..=hi`, increasing.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    primal::Sieve::new(hi as usize)
        .primes_from(lo.max(2) as usize)
        .take_while(|&p| p as u64 <= hi)
        .map(|p| p as u64)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct NonSplitSearch<R: Real> {
    pub disc: i64,
    pub found_prime: u64,
    pub bound: BoundReport<R>,
    pub satisfied: bool,
}

/// Least prime inert in `Q(sqrt(D))`, compared with the bound for the least
/// prime of the base field that does not split completely. The base field
/// must be the rationals.
pub fn least_nonsplit_search<R: Real>(
    d: i64,
    base: &FieldParams<R>,
    c: &R,
) -> Result<NonSplitSearch<R>, CmError> {
    if base.degree() != 1 {
        return Err(CmError::UnsupportedBase);
    }
    if !is_fundamental_discriminant(d) {
        return Err(CmError::NotFundamental { d });
    }
    let log_d_l = R::from_u64(d.unsigned_abs()).ln();
    let bound = least_nonsplit_bound(base, &log_d_l, 2, c)?;
    // The character of a quadratic field is nontrivial, so an inert prime
    // exists; widen the sieve until it is found.
    let mut hi = 64u64;
    let found_prime = loop {
        let hit = primes_in(2, hi)
            .into_iter()
            .find(|&p| kronecker(d, p) == Ok(-1));
        if let Some(p) = hit {
            break p;
        }
        hi *= 4;
    };
    let satisfied = R::from_u64(found_prime).ln() <= bound.log_value;
    Ok(NonSplitSearch {
        disc: d,
        found_prime,
        bound,
        satisfied,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PiKCount {
    pub disc: i64,
    pub x: u64,
    pub count: u64,
    /// `Li(x) = li(x) - li(2)`.
    pub li_x: f64,
    pub ratio: f64,
}

/// Number of prime ideals of `Q(sqrt(D))` of norm at most `x`.
pub fn pi_k_count(d: i64, x: u64) -> Result<PiKCount, CmError> {
    if d == 0 {
        return Err(CmError::ZeroDiscriminant);
    }
    if !is_fundamental_discriminant(d) {
        return Err(CmError::NotFundamental { d });
    }
    if x > PI_K_BUDGET {
        return Err(CmError::BudgetExceeded {
            what: "x",
            value: x,
            limit: PI_K_BUDGET,
        });
    }
    let count = primes_in(2, x)
        .into_iter()
        .map(|p| match kronecker(d, p) {
            Ok(1) => 2,
            Ok(0) => 1,
            _ if p.checked_mul(p).is_some_and(|sq| sq <= x) => 1,
            _ => 0,
        })
        .sum();
    let li_x = offset_li(x as f64);
    Ok(PiKCount {
        disc: d,
        x,
        count,
        li_x,
        ratio: if li_x > 0.0 { count as f64 / li_x } else { 0.0 },
    })
}

/// `li(x) = gamma + ln ln x + sum_k (ln x)^k / (k k!)`, for `x > 1`.
pub fn li(x: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    let l = x.ln();
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..1000 {
        term *= l / k as f64;
        let add = term / k as f64;
        sum += add;
        if add < sum * 1e-17 {
            break;
        }
    }
    EULER_GAMMA + l.ln() + sum
}

/// `Li(x) = li(x) - li(2)`, zero for `x <= 2`.
pub fn offset_li(x: f64) -> f64 {
    if x <= 2.0 {
        0.0
    } else {
        li(x) - li(2.0)
    }
}
