use serde::Serialize;

use crate::arith::{field_discriminant, is_prime, isqrt, kronecker_prime, sqrt_mod_prime};
use crate::error::CmError;

/// Discriminants of the imaginary quadratic orders of class number one.
pub const SUPPORTED_CM: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

/// Splitting of `p` in `Q(sqrt(D))`: `+1` split, `-1` inert, `0` ramified.
pub fn kronecker(d: i64, p: u64) -> Result<i8, CmError> {
    if d == 0 {
        return Err(CmError::ZeroDiscriminant);
    }
    if !is_prime(p) {
        return Err(CmError::NotPrime { p });
    }
    Ok(kronecker_prime(field_discriminant(d), p) as i8)
}

/// Solves `x^2 + |D| y^2 = 4p` with `x, y >= 0`, for an odd prime `p` that
/// splits in `Q(sqrt(D))`, `D < 0`.
pub fn cornacchia(d: i64, p: u64) -> Option<(u64, u64)> {
    let ad = d.unsigned_abs();
    if p == 2 || d >= 0 {
        return None;
    }
    let mut x0 = sqrt_mod_prime(d.rem_euclid(p as i64) as u64, p)?;
    // x0^2 = D mod 4p needs x0 = D mod 2.
    if x0 % 2 != ad % 2 {
        x0 = p - x0;
    }
    let limit = isqrt(4 * p);
    let (mut a, mut b) = (2 * p, x0);
    while b > limit {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = 4 * p - b * b;
    if !rest.is_multiple_of(ad) {
        return None;
    }
    let y2 = rest / ad;
    let y = isqrt(y2);
    (y * y == y2).then_some((b, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionType {
    Ordinary,
    Supersingular,
    /// Bad reduction, or a prime left out of the survey (2, 3 and `p | D`).
    #[serde(rename = "bad-or-excluded")]
    BadOrExcluded,
}

impl ReductionType {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ordinary => "ordinary",
            Self::Supersingular => "supersingular",
            Self::BadOrExcluded => "bad-or-excluded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmTrace {
    pub reduction: ReductionType,
    /// `|a_p|`.
    pub abs_trace: u64,
}

/// `|a_p|` of a CM elliptic curve over the rationals with CM discriminant `D`.
///
/// For `D = -4` and `D = -3` the unit group is larger than `{+-1}` and the
/// six (or four) twists have different `|a_p|`; the value returned is the
/// one of `y^2 = x^3 + x` (for `-4`) and `y^2 = x^3 + 1` (for `-3`), chosen by
/// the congruence forced by their rational torsion. For the other supported
/// `D`, `|a_p|` is the same for every curve with that CM.
pub fn ap_cm(d: i64, p: u64) -> Result<CmTrace, CmError> {
    if !SUPPORTED_CM.contains(&d) {
        return Err(CmError::UnsupportedDiscriminant { d });
    }
    if !is_prime(p) {
        return Err(CmError::NotPrime { p });
    }
    if p == 2 || d.unsigned_abs().is_multiple_of(p) {
        return Err(CmError::ExcludedPrime { p });
    }
    match kronecker(d, p)? {
        -1 => Ok(CmTrace {
            reduction: ReductionType::Supersingular,
            abs_trace: 0,
        }),
        1 => {
            let (x, y) = cornacchia(d, p).ok_or_else(|| {
                CmError::Internal(format!("no representation of 4*{p} for D = {d}"))
            })?;
            let abs_trace = normalize(d, p, x, y)?;
            Ok(CmTrace {
                reduction: ReductionType::Ordinary,
                abs_trace,
            })
        }
        _ => Err(CmError::ExcludedPrime { p }),
    }
}

fn normalize(d: i64, p: u64, x: u64, y: u64) -> Result<u64, CmError> {
    let unique = |cands: Vec<i64>| -> Result<u64, CmError> {
        let mut abs: Vec<u64> = cands.iter().map(|c| c.unsigned_abs()).collect();
        abs.sort_unstable();
        abs.dedup();
        match abs.as_slice() {
            [one] => Ok(*one),
            _ => Err(CmError::Internal(format!(
                "trace normalization for D = {d}, p = {p} is ambiguous: {cands:?}"
            ))),
        }
    };
    match d {
        // 4p = x^2 + 4y^2 with x = 2u; traces of the quartic twists are
        // +-2u, +-2y. Full 2-torsion on y^2 = x^3 + x gives a = 2 mod 4.
        -4 => unique(
            [x as i64, 2 * y as i64]
                .into_iter()
                .filter(|a| a.rem_euclid(4) == 2)
                .collect(),
        ),
        // Traces of the sextic twists are +-x, +-(x +- 3y)/2. On y^2 = x^3 + 1,
        // Z/6 torsion plus full 2-torsion give #E = 0 mod 12.
        -3 => {
            let (x, y) = (x as i64, y as i64);
            let target = (p as i64 + 1).rem_euclid(12);
            unique(
                [x, (x + 3 * y) / 2, (x - 3 * y) / 2]
                    .into_iter()
                    .flat_map(|a| [a, -a])
                    .filter(|a| a.rem_euclid(12) == target)
                    .collect(),
            )
        }
        _ => Ok(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 2).unwrap(), 0);
        assert_eq!(kronecker(-4, 5).unwrap(), 1);
        assert_eq!(kronecker(-4, 7).unwrap(), -1);
        assert_eq!(kronecker(-3, 2).unwrap(), -1);
        assert_eq!(kronecker(-1, 3).unwrap(), -1);
        assert_eq!(kronecker(0, 3), Err(CmError::ZeroDiscriminant));
        assert_eq!(kronecker(-4, 9), Err(CmError::NotPrime { p: 9 }));
    }

    #[test]
    fn cornacchia_examples() {
        // 20 = 2^2 + 4 * 2^2 = 4^2 + 4 * 1^2 are both representations.
        assert!(matches!(cornacchia(-4, 5), Some((2, 2)) | Some((4, 1))));
        assert!(matches!(cornacchia(-4, 13), Some((6, 2)) | Some((4, 3))));
        assert_eq!(cornacchia(-4, 7), None);
        for &d in &SUPPORTED_CM {
            for p in (3..2000u64).filter(|&p| is_prime(p)) {
                if d.unsigned_abs() % p != 0 && kronecker(d, p).unwrap() == 1 {
                    let (x, y) = cornacchia(d, p).expect("split primes are represented");
                    assert_eq!(x * x + d.unsigned_abs() * y * y, 4 * p);
                }
            }
        }
    }

    #[test]
    fn ap_cm_examples() {
        let ord = |a| CmTrace {
            reduction: ReductionType::Ordinary,
            abs_trace: a,
        };
        assert_eq!(ap_cm(-4, 5).unwrap(), ord(2));
        assert_eq!(ap_cm(-4, 13).unwrap(), ord(6));
        assert_eq!(
            ap_cm(-4, 7).unwrap(),
            CmTrace {
                reduction: ReductionType::Supersingular,
                abs_trace: 0
            }
        );
        assert_eq!(
            ap_cm(-5, 7),
            Err(CmError::UnsupportedDiscriminant { d: -5 })
        );
        assert_eq!(ap_cm(-7, 7), Err(CmError::ExcludedPrime { p: 7 }));
        assert_eq!(ap_cm(-4, 2), Err(CmError::ExcludedPrime { p: 2 }));
    }

    #[test]
    fn hasse_and_inert_equivalence() {
        for &d in &SUPPORTED_CM {
            for p in (5..3000u64).filter(|&p| is_prime(p) && d.unsigned_abs() % p != 0) {
                let t = ap_cm(d, p).unwrap();
                assert!(t.abs_trace * t.abs_trace <= 4 * p);
                assert_eq!(
                    t.abs_trace == 0,
                    kronecker(d, p).unwrap() == -1,
                    "D={d} p={p}"
                );
            }
        }
    }
}
