//! Dimensions of Tate-class spaces over finite extensions.
//!
//! The Tate classes of codimension `k` over `F_{q^n}` correspond to the
//! eigenvalues `alpha_I` of Frobenius on `H^{2k}` with `alpha_I^n = q^{kn}`.
//! Writing `Q` for the characteristic polynomial on `H^{2k}` and
//! `R(T) = Q(q^k T)`, the roots of `R` are the ratios `alpha_I / q^k`, so the
//! count is the number of roots of `R` that are n-th roots of unity: the sum
//! over `m | n` of `phi(m)` times the multiplicity of `Phi_m` in `R`. Only `m` with
//! `phi(m) <= deg R` can occur, which also gives a degree over which every
//! class is defined.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, lcm_big, totient, totient_bounded};
use crate::cyclotomic::{global_cache, multiplicity_of};
use crate::error::TateError;
use crate::roots::{complex_roots, subset_products};
use crate::scalar::Real;
use crate::weil::{h_charpoly, WeilPoly};
use crate::{with_precision, IntPoly};

/// Display cap on the number of extension degrees listed per profile row.
pub const N_REPORT_CAP: u64 = 60;

/// Roots of unity among the eigenvalue ratios on `H^{2k}`: `(m, e)` means
/// `Phi_m^e` exactly divides `R`, contributing `e * phi(m)` roots. Sorted by
/// `m`, nonzero `e` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicSpectrum {
    pub k: usize,
    pub entries: Vec<(u64, u32)>,
}

impl CyclotomicSpectrum {
    pub fn dim_over(&self, n: u64) -> u64 {
        self.entries
            .iter()
            .filter(|(m, _)| n.is_multiple_of(*m))
            .map(|&(m, e)| e as u64 * totient(m))
            .sum()
    }

    pub fn dim_over_big(&self, n: &BigUint) -> u64 {
        self.entries
            .iter()
            .filter(|(m, _)| (n % BigUint::from(*m)).is_zero())
            .map(|&(m, e)| e as u64 * totient(m))
            .sum()
    }

    pub fn stable_dim(&self) -> u64 {
        self.entries
            .iter()
            .map(|&(m, e)| e as u64 * totient(m))
            .sum()
    }

    /// Least n over which all classes are defined: lcm of the occurring `m`.
    pub fn min_stable_degree(&self) -> u64 {
        self.entries.iter().fold(1u64, |acc, &(m, _)| acc.lcm(&m))
    }
}

fn check_codim(w: &WeilPoly, k: usize) -> Result<(), TateError> {
    let d = w.dimension();
    if k > d {
        return Err(TateError::CodimensionOutOfRange { k, d });
    }
    Ok(())
}

/// `R(T) = Q_{2k}(q^k T)`.
pub fn rescaled_h2k(w: &WeilPoly, k: usize) -> Result<IntPoly, TateError> {
    check_codim(w, k)?;
    let q = h_charpoly(w, 2 * k)?;
    let qk: BigInt = Pow::pow(w.q(), k as u32);
    Ok(q.poly().scale_variable(&qk))
}

pub fn cyclotomic_spectrum(w: &WeilPoly, k: usize) -> Result<CyclotomicSpectrum, TateError> {
    let r = rescaled_h2k(w, k)?;
    let deg = r.degree().unwrap_or(0) as u64;
    let cache = global_cache();
    let entries = totient_bounded(deg)
        .into_iter()
        .filter_map(|m| {
            let phi = cache.get(m).expect("m >= 1");
            let e = multiplicity_of(&r, &phi);
            (e > 0).then_some((m, e))
        })
        .collect();
    Ok(CyclotomicSpectrum { k, entries })
}

/// Number of Tate classes of codimension `k` over `F_{q^n}`, with multiplicity.
pub fn tate_dim(w: &WeilPoly, k: usize, n: u64) -> Result<u64, TateError> {
    if n == 0 {
        return Err(TateError::ZeroExtension);
    }
    Ok(cyclotomic_spectrum(w, k)?.dim_over(n))
}

/// [`tate_dim`] for extension degrees beyond 64 bits, such as [`degree_bound`].
pub fn tate_dim_big(w: &WeilPoly, k: usize, n: &BigUint) -> Result<u64, TateError> {
    if n.is_zero() {
        return Err(TateError::ZeroExtension);
    }
    Ok(cyclotomic_spectrum(w, k)?.dim_over_big(n))
}

/// `lcm { m : phi(m) <= C(2d, 2k) }`: every Tate class of codimension `k`
/// on any `d`-dimensional abelian variety is defined over the extension of
/// this degree.
pub fn degree_bound(d: usize, k: usize) -> BigUint {
    let b = binomial(2 * d as u64, 2 * k as u64);
    if b == 0 {
        return BigUint::one();
    }
    lcm_big(totient_bounded(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StableTate {
    pub stable_dim: u64,
    pub min_stable_degree: u64,
}

pub fn stable_tate_dim(w: &WeilPoly, k: usize) -> Result<StableTate, TateError> {
    let spec = cyclotomic_spectrum(w, k)?;
    Ok(StableTate {
        stable_dim: spec.stable_dim(),
        min_stable_degree: spec.min_stable_degree(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    pub n: u64,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TateRow {
    pub k: usize,
    pub dims: Vec<DimEntry>,
    pub stable_dim: u64,
    pub min_stable_degree: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub degree_bound: BigUint,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TateProfile {
    #[serde(serialize_with = "crate::serde_bigint::serialize")]
    pub q: BigInt,
    pub d: usize,
    pub rows: Vec<TateRow>,
}

/// `min(60, max_k degree_bound(d, k))`.
pub fn default_n_report(d: usize) -> u64 {
    let cap = BigUint::from(N_REPORT_CAP);
    let best = (0..=d)
        .map(|k| degree_bound(d, k))
        .max()
        .unwrap_or_else(BigUint::one);
    if best > cap {
        N_REPORT_CAP
    } else {
        best.try_into().unwrap_or(N_REPORT_CAP)
    }
}

/// Dimensions over `F_{q^n}` for `n = 1..=n_report` and the stable data, for
/// every codimension `0..=d`. Rows are computed in parallel and returned in
/// order of `k`.
pub fn tate_profile(w: &WeilPoly, n_report: u64) -> Result<TateProfile, TateError> {
    if n_report == 0 {
        return Err(TateError::ZeroExtension);
    }
    let d = w.dimension();
    let rows = (0..=d)
        .into_par_iter()
        .map(|k| {
            let spec = cyclotomic_spectrum(w, k)?;
            Ok(TateRow {
                k,
                dims: (1..=n_report)
                    .map(|n| DimEntry {
                        n,
                        dim: spec.dim_over(n),
                    })
                    .collect(),
                stable_dim: spec.stable_dim(),
                min_stable_degree: spec.min_stable_degree(),
                degree_bound: degree_bound(d, k),
            })
        })
        .collect::<Result<Vec<_>, TateError>>()?;
    Ok(TateProfile {
        q: w.q().clone(),
        d,
        rows,
    })
}

/// Brute-force count of `#{I : |I| = 2k, alpha_I^n = q^{kn}}` from numeric
/// roots of the Weil polynomial.
///
/// With `b = precision_bits`, a product counts when
/// `|alpha_I^n - q^{kn}| < 2^{-b/2} q^{kn}`. Any product within a factor
/// `2^{b/4}` of that threshold makes the classification ambiguous and is
/// reported as [`TateError::PrecisionInsufficient`]. Roots are computed with
/// 64 guard bits on top of `b`.
pub fn tate_dim_numeric(
    w: &WeilPoly,
    k: usize,
    n: u64,
    precision_bits: u32,
) -> Result<u64, TateError> {
    check_codim(w, k)?;
    if n == 0 {
        return Err(TateError::ZeroExtension);
    }
    let degree = 2 * w.dimension();
    if degree > 16 {
        return Err(TateError::TooLarge { degree });
    }
    let working = precision_bits + 64 + 2 * (64 - n.leading_zeros());
    with_precision!(working, R => numeric_count::<R>(w, k, n, precision_bits))
}

fn numeric_count<R: Real>(w: &WeilPoly, k: usize, n: u64, bits: u32) -> Result<u64, TateError> {
    let roots: Vec<Complex<R>> =
        complex_roots::<R>(w.poly()).ok_or(crate::WeilError::RootsDidNotConverge)?;
    let qkn: BigInt = Pow::pow(w.q(), (k as u64 * n) as u32);
    let target = R::from_bigint(&qkn);
    let target_c = Complex::new(target.clone(), R::zero());
    let threshold_sq = (target.clone() * target).mul_pow2(-(bits as i32));
    let window = (bits / 4) as i32;
    let lower_sq = threshold_sq.clone().mul_pow2(-2 * window);
    let upper_sq = threshold_sq.mul_pow2(2 * window);
    let mut count = 0;
    for prod in subset_products(&roots, 2 * k) {
        let diff_sq = (prod.powu(n as u32) - target_c.clone()).norm_sqr();
        if diff_sq < lower_sq {
            count += 1;
        } else if diff_sq <= upper_sq {
            return Err(TateError::PrecisionInsufficient { bits });
        }
    }
    Ok(count)
}
