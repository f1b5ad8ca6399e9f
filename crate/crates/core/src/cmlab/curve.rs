use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::CmError;

/// Largest prime accepted by [`ap_pointcount`].
pub const POINTCOUNT_BUDGET: u64 = 1_000_000;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub label: String,
    #[serde(serialize_with = "crate::serde_bigint::serialize")]
    discriminant: BigInt,
}

impl EllipticCurve {
    pub fn new(coeffs: [i64; 5], label: impl Into<String>) -> Result<Self, CmError> {
        let [a1, a2, a3, a4, a6] = coeffs;
        let discriminant = discriminant(coeffs);
        if discriminant.is_zero() {
            return Err(CmError::SingularCurve);
        }
        Ok(Self {
            a1,
            a2,
            a3,
            a4,
            a6,
            label: label.into(),
            discriminant,
        })
    }

    /// `y^2 + y = x^3 - x`, conductor 37.
    pub fn conductor_37() -> Self {
        Self::new([0, 0, 1, -1, 0], "37a1").expect("nonsingular")
    }

    /// `y^2 = x^3 + x`, CM by the Gaussian integers.
    pub fn gaussian_cm() -> Self {
        Self::new([0, 0, 0, 1, 0], "y^2=x^3+x").expect("nonsingular")
    }

    /// `y^2 = x^3 + 1`, CM by the Eisenstein integers.
    pub fn eisenstein_cm() -> Self {
        Self::new([0, 0, 0, 0, 1], "y^2=x^3+1").expect("nonsingular")
    }

    pub fn coeffs(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    /// Good reduction of this model at `p`.
    pub fn good_at(&self, p: u64) -> bool {
        !(&self.discriminant % BigInt::from(p)).is_zero()
    }

    fn b_invariants(&self) -> [BigInt; 3] {
        b_invariants(self.coeffs())
    }
}

fn b_invariants(c: [i64; 5]) -> [BigInt; 3] {
    let [a1, a2, a3, a4, a6] = c.map(BigInt::from);
    let b2 = &a1 * &a1 + 4 * &a2;
    let b4 = 2 * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + 4 * &a6;
    [b2, b4, b6]
}

fn discriminant(c: [i64; 5]) -> BigInt {
    let [a1, a2, a3, a4, a6] = c.map(BigInt::from);
    let [b2, b4, b6] = b_invariants(c);
    let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
    let lead: BigInt = &b2 * &b2 * &b8;
    -lead - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl FromStr for EllipticCurve {
    type Err = String;

    /// `"a1,a2,a3,a4,a6"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(format!(
                "expected 5 comma-separated coefficients, got {}",
                parts.len()
            ));
        }
        let mut c = [0i64; 5];
        for (slot, part) in c.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| format!("malformed coefficient {part:?}"))?;
        }
        Self::new(c, s.trim()).map_err(|e| e.to_string())
    }
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p")
}

/// Frobenius trace `p + 1 - #E(F_p)` by counting points, or `None` at a prime
/// of bad reduction of the model.
///
/// Odd `p` uses the completed square `(2y + a1 x + a3)^2 = 4x^3 + b2 x^2 +
/// 2 b4 x + b6` and a table of quadratic characters; `p = 2` enumerates
/// `F_2 x F_2`.
pub fn ap_pointcount(e: &EllipticCurve, p: u64) -> Result<Option<i64>, CmError> {
    if p > POINTCOUNT_BUDGET {
        return Err(CmError::BudgetExceeded {
            what: "p",
            value: p,
            limit: POINTCOUNT_BUDGET,
        });
    }
    if !is_prime(p) {
        return Err(CmError::NotPrime { p });
    }
    if !e.good_at(p) {
        return Ok(None);
    }
    if p == 2 {
        let c = e.coeffs().map(|a| a.rem_euclid(2) as u64);
        let [a1, a2, a3, a4, a6] = c;
        let mut affine = 0i64;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs + rhs) % 2 == 0 {
                    affine += 1;
                }
            }
        }
        return Ok(Some(3 - (affine + 1)));
    }
    let [b2, b4, b6] = e.b_invariants();
    let (b2, b4, b6) = (residue(&b2, p), residue(&(2 * b4), p), residue(&b6, p));
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=(p / 2) {
        chi[(y * y % p) as usize] = 1;
    }
    let mut sum = 0i64;
    for x in 0..p {
        // 4x^3 + b2 x^2 + 2 b4 x + b6 by Horner.
        let v = (((4 * x % p + b2) % p * x % p + b4) % p * x % p + b6) % p;
        sum += chi[v as usize] as i64;
    }
    Ok(Some(-sum))
}
