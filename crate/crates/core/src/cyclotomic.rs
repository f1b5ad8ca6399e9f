//! Cyclotomic polynomials and the multiplicity of `Phi_m` in an integer
//! polynomial.

use std::borrow::Cow;
use std::sync::{LazyLock, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::divisors;
use crate::error::PolyError;
use crate::IntPoly;

pub const DEFAULT_CACHE_LIMIT: u64 = 10_000;

/// Write-once cache of `Phi_1, ..., Phi_{m_max}`.
///
/// Every slot is filled at most once; readers on other threads either see the
/// finished polynomial or block until it is written.
pub struct CyclotomicCache {
    slots: Vec<OnceLock<IntPoly>>,
}

impl CyclotomicCache {
    pub fn new(m_max: u64) -> Self {
        Self {
            slots: (0..m_max).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn limit(&self) -> u64 {
        self.slots.len() as u64
    }

    pub fn get(&self, m: u64) -> Result<Cow<'_, IntPoly>, PolyError> {
        if m == 0 {
            return Err(PolyError::CyclotomicIndex);
        }
        match self.slots.get((m - 1) as usize) {
            Some(slot) => Ok(Cow::Borrowed(slot.get_or_init(|| self.compute(m)))),
            None => Ok(Cow::Owned(self.compute(m))),
        }
    }

    /// `T^m - 1` divided by `Phi_d` for every proper divisor `d`.
    fn compute(&self, m: u64) -> IntPoly {
        let mut coeffs = vec![BigInt::from(0); m as usize + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[m as usize] = BigInt::one();
        let mut f = IntPoly::new(coeffs);
        for d in divisors(m) {
            if d == m {
                break;
            }
            let phi_d = self.get(d).expect("d >= 1");
            f = f
                .div_exact(&phi_d)
                .expect("Phi_d divides T^m - 1 for d | m");
        }
        f
    }
}

static GLOBAL: LazyLock<CyclotomicCache> =
    LazyLock::new(|| CyclotomicCache::new(DEFAULT_CACHE_LIMIT));

/// The process-wide cache used by [`cyclotomic`].
pub fn global_cache() -> &'static CyclotomicCache {
    &GLOBAL
}

/// `Phi_m` for `m >= 1`.
pub fn cyclotomic(m: u64) -> Result<IntPoly, PolyError> {
    Ok(GLOBAL.get(m)?.into_owned())
}

/// Largest `e` with `Phi_m^e` dividing `f` in `Z[T]`.
pub fn cyclotomic_multiplicity(f: &IntPoly, m: u64) -> Result<u32, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let phi = GLOBAL.get(m)?;
    Ok(multiplicity_of(f, &phi))
}

/// Largest `e` with `g^e | f`, for monic `g` of positive degree and nonzero `f`.
pub(crate) fn multiplicity_of(f: &IntPoly, g: &IntPoly) -> u32 {
    let dg = g.degree().unwrap_or(0);
    let mut e = 0;
    let mut cur = f.clone();
    while cur.degree().is_some_and(|d| d >= dg) {
        match cur.div_exact(g) {
            Some(q) => {
                cur = q;
                e += 1;
            }
            None => break,
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), p(&[1, 1]));
        // Frozen from an independent symbolic computation.
        assert_eq!(cyclotomic(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(0), Err(PolyError::CyclotomicIndex));
    }

    #[test]
    fn first_nonunit_coefficient_at_105() {
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}: -2 at T^7 (and T^41).
        let phi = cyclotomic(105).unwrap();
        assert_eq!(phi.degree(), Some(48));
        assert_eq!(phi.coeff(7), BigInt::from(-2));
        assert_eq!(phi.coeff(41), BigInt::from(-2));
    }

    #[test]
    fn multiplicities() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[1, 1]);
        assert_eq!(cyclotomic_multiplicity(&f, 1).unwrap(), 2);
        assert_eq!(cyclotomic_multiplicity(&f, 2).unwrap(), 1);
        assert_eq!(cyclotomic_multiplicity(&f, 3).unwrap(), 0);
        assert_eq!(
            cyclotomic_multiplicity(&p(&[1, 0, -1, 0, 1]), 12).unwrap(),
            1
        );
        assert_eq!(
            cyclotomic_multiplicity(&IntPoly::zero(), 1),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn multiplicity_ignores_non_monic_scaling() {
        let f = p(&[-1, 1]).scale(&BigInt::from(7));
        assert_eq!(cyclotomic_multiplicity(&f, 1).unwrap(), 1);
    }

    #[test]
    fn small_private_cache_falls_back_beyond_limit() {
        let cache = CyclotomicCache::new(4);
        assert_eq!(cache.limit(), 4);
        assert!(matches!(cache.get(3).unwrap(), Cow::Borrowed(_)));
        let phi12 = cache.get(12).unwrap();
        assert!(matches!(phi12, Cow::Owned(_)));
        assert_eq!(phi12.into_owned(), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn concurrent_readers_agree() {
        let cache = CyclotomicCache::new(300);
        let results: Vec<IntPoly> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8)
                .map(|_| s.spawn(|| cache.get(210).unwrap().into_owned()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(results.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(results[0].degree(), Some(48));
    }
}
