//! Weil polynomials of abelian varieties over finite fields.
//!
//! A [`WeilPoly`] is stored in the monic convention `det(T - Frob | H^1)`.
//! The reciprocal form `det(1 - Frob T)` is available through
//! [`WeilPoly::reciprocal_form`] for display only.

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::arith::prime_power;
use crate::error::WeilError;
use crate::roots::complex_roots;
use crate::scalar::Real;
use crate::{with_precision, IntMatrix, IntPoly};

/// Numeric settings for the secondary root-modulus check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeilCheck {
    /// Working precision of the root finder.
    pub precision_bits: u32,
    /// Accept `||alpha|^2 - q| <= 2^-tolerance_bits * q`.
    pub tolerance_bits: u32,
}

impl Default for WeilCheck {
    fn default() -> Self {
        Self {
            precision_bits: 128,
            tolerance_bits: 64,
        }
    }
}

/// Characteristic polynomial of Frobenius on `H^1` of a `d`-dimensional
/// abelian variety over `F_q`, `q = p^e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilPoly {
    #[serde(rename = "coeffs")]
    poly: IntPoly,
    #[serde(serialize_with = "crate::serde_bigint::serialize")]
    q: BigInt,
    p: u64,
    e: u32,
    d: usize,
}

impl WeilPoly {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `q = p^exponent`.
    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// `det(1 - Frob T)`, the reversed coefficient list.
    pub fn reciprocal_form(&self) -> IntPoly {
        self.poly.reversed()
    }
}

/// Characteristic polynomial of Frobenius on `H^r`, degree `C(2d, r)`, roots
/// of weight `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomPoly {
    #[serde(rename = "coeffs")]
    poly: IntPoly,
    r: usize,
    #[serde(serialize_with = "crate::serde_bigint::serialize")]
    q: BigInt,
}

impl CohomPoly {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree_r(&self) -> usize {
        self.r
    }

    pub fn weight(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn reciprocal_form(&self) -> IntPoly {
        self.poly.reversed()
    }
}

pub fn validate_weil(f: &IntPoly, q: u64) -> Result<WeilPoly, WeilError> {
    validate_weil_with(f, q, WeilCheck::default())
}

/// Checks, in order: prime-power `q`, monic, positive even degree, constant
/// term `q^d`, the exact functional equation, and numerically that every
/// root has `|alpha|^2 = q`.
pub fn validate_weil_with(f: &IntPoly, q: u64, check: WeilCheck) -> Result<WeilPoly, WeilError> {
    let (p, e) = prime_power(q).ok_or(WeilError::NotPrimePower { q })?;
    if !f.is_monic() {
        return Err(WeilError::NotMonic);
    }
    let degree = f.degree().expect("monic implies nonzero");
    if degree == 0 || degree % 2 == 1 {
        return Err(WeilError::OddDegree { degree });
    }
    let d = degree / 2;
    let qb = BigInt::from(q);
    let qd: BigInt = Pow::pow(&qb, d as u32);
    if f.coeff(0) != qd {
        return Err(WeilError::ConstantTerm {
            expected: qd.to_string(),
            found: f.coeff(0).to_string(),
        });
    }
    if f.reciprocal_scaled(degree, &qb) != f.scale(&qd) {
        return Err(WeilError::FunctionalEquationFails);
    }
    with_precision!(check.precision_bits, R => check_root_moduli::<R>(f, q, check.tolerance_bits))?;
    Ok(WeilPoly {
        poly: f.clone(),
        q: qb,
        p,
        e,
        d,
    })
}

fn check_root_moduli<R: Real>(f: &IntPoly, q: u64, tolerance_bits: u32) -> Result<(), WeilError> {
    let roots = complex_roots::<R>(f).ok_or(WeilError::RootsDidNotConverge)?;
    let qr = R::from_u64(q);
    let tol = qr.clone().mul_pow2(-(tolerance_bits as i32));
    for root in roots {
        let modulus_sq = root.norm_sqr();
        if (modulus_sq.clone() - qr.clone()).abs() > tol {
            return Err(WeilError::RootModulusFails {
                q: q.to_string(),
                modulus_sq: modulus_sq.to_decimal(20),
            });
        }
    }
    Ok(())
}

/// Weil polynomial of `A x B`: `H^1` is the direct sum, so the polynomials
/// multiply.
pub fn product_variety(a: &WeilPoly, b: &WeilPoly) -> Result<WeilPoly, WeilError> {
    if a.q != b.q {
        return Err(WeilError::FieldMismatch {
            left: a.q.to_string(),
            right: b.q.to_string(),
        });
    }
    Ok(WeilPoly {
        poly: &a.poly * &b.poly,
        q: a.q.clone(),
        p: a.p,
        e: a.e,
        d: a.d + b.d,
    })
}

/// Frobenius on `H^r = Λ^r H^1`: the characteristic polynomial of the r-th
/// compound of the companion matrix, whose roots are the products of `r`
/// distinct eigenvalues on `H^1`.
pub fn h_charpoly(w: &WeilPoly, r: usize) -> Result<CohomPoly, WeilError> {
    let top = 2 * w.d;
    if r > top {
        return Err(WeilError::DegreeOutOfRange { r, max: top });
    }
    let poly = if r == 0 {
        IntPoly::from_i64s(&[-1, 1])
    } else {
        let comp =
            IntMatrix::companion(&w.poly).expect("Weil polynomials are monic of degree >= 2");
        comp.compound(r)
            .and_then(|c| c.charpoly())
            .expect("compound of a square matrix is square")
    };
    Ok(CohomPoly {
        poly,
        r,
        q: w.q.clone(),
    })
}

/// The same variety over `F_{q^n}`: eigenvalues raised to the n-th power,
/// via the n-th power of the companion matrix.
pub fn base_change(w: &WeilPoly, n: u32) -> Result<WeilPoly, WeilError> {
    if n == 0 {
        return Err(WeilError::ZeroExtension);
    }
    if n == 1 {
        return Ok(w.clone());
    }
    let comp = IntMatrix::companion(&w.poly).expect("Weil polynomials are monic of degree >= 2");
    let poly = comp
        .pow(n as u64)
        .and_then(|m| m.charpoly())
        .expect("companion matrices are square");
    Ok(WeilPoly {
        poly,
        q: Pow::pow(&w.q, n),
        p: w.p,
        e: w.e * n,
        d: w.d,
    })
}

/// `T^2 - a T + q` for an elliptic curve with trace `a` over `F_q`.
pub fn elliptic(trace: i64, q: u64) -> Result<WeilPoly, WeilError> {
    validate_weil(
        &IntPoly::new(vec![BigInt::from(q), BigInt::from(-trace), BigInt::one()]),
        q,
    )
}
