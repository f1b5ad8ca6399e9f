//! Dense univariate polynomials over a [`Ring`].
//!
//! Coefficients are stored from the constant term upward with no trailing
//! zeros, so the zero polynomial is the empty vector and equality is
//! structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PolyError;
use crate::scalar::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `T`.
    pub fn x() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }

    /// `c * T^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `T - r`.
    pub fn linear_root(r: R) -> Self {
        Self::new(vec![-r, R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `T^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `f(s T)`.
    pub fn scale_variable(&self, s: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pow.clone());
            pow = pow * s.clone();
        }
        Self::new(out)
    }

    /// `T^n f(c / T)` for `n >= deg f`, i.e. coefficient `i` becomes
    /// `f_{n-i} c^{n-i}`.
    pub fn reciprocal_scaled(&self, n: usize, c: &R) -> Self {
        assert!(self.degree().is_none_or(|d| d <= n), "n below the degree");
        let mut out = vec![R::zero(); n + 1];
        let mut pow = R::one();
        for (i, f) in self.coeffs.iter().enumerate() {
            out[n - i] = f.clone() * pow.clone();
            pow = pow * c.clone();
        }
        Self::new(out)
    }

    /// Reversal `T^deg f(1/T)`; moves between `det(T - F)` and `det(1 - F T)`.
    pub fn reversed(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => self.reciprocal_scaled(d, &R::one()),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Long division, exact at every step.
    ///
    /// Each step divides the current leading coefficient by the divisor's
    /// leading coefficient; over the integers this stops early if that is not
    /// exact, so the remainder has degree below the divisor's whenever the
    /// divisor is monic (or the coefficients form a field).
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![R::zero(); n - dd];
        for i in (dd..n).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let Some(q) = rem[i].try_div(lead) else {
                // Not exactly divisible; what is left is the remainder.
                rem.truncate(i + 1);
                return Ok((Self::new(quot), Self::new(rem)));
            };
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = rem[k].clone() - q.clone() * dc.clone();
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// `Some(q)` when `self = q * divisor` exactly.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }
}

impl<R: Ring> Default for Poly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $method(self, rhs: Poly<R>) -> Poly<R> {
                $tr::$method(&self, &rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

// ---------------------------------------------------------------------------
// Integer polynomials
// ---------------------------------------------------------------------------

impl Poly<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// `lc(g)^(deg f - deg g + 1) * f mod g`, computed without division.
    pub fn pseudo_rem(&self, g: &Self) -> Result<Self, PolyError> {
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = g.leading().expect("nonzero").clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            let shifted = Self::monomial(lr, dr - dg);
            r = &r.scale(&lead) - &(&shifted * g);
        }
        Ok(r)
    }

    /// Primitive gcd over Z[T] (positive leading coefficient).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b nonzero");
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Yun's square-free decomposition of a nonzero polynomial.
    ///
    /// Returns `(g_i, i)` with each `g_i` primitive, square-free and of
    /// positive degree such that `prod g_i^i` equals `self` up to a constant.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.primitive_part();
        if f.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut c = f.div_exact(&g).expect("gcd divides f").primitive_part();
        let mut d = &df.div_exact(&g).expect("gcd divides f'") - &c.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while c.degree().is_some_and(|deg| deg > 0) {
            let a = c.gcd(&d);
            if a.degree().is_some_and(|deg| deg > 0) {
                out.push((a.clone(), i));
            }
            let c_next = c.div_exact(&a).expect("a divides c");
            d = &d.div_exact(&a).expect("a divides d") - &c_next.derivative();
            c = c_next;
            i += 1;
        }
        out
    }

    /// Human-readable form such as `T^2 - 3T + 5`.
    pub fn pretty(&self) -> String {
        pretty_with(&self.coeffs, "T")
    }
}

fn pretty_with(coeffs: &[BigInt], var: &str) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mag.is_one() && i > 0 {
            out.push_str(&mono);
        } else {
            out.push_str(&mag.to_string());
            out.push_str(&mono);
        }
    }
    out
}

/// Comma-separated coefficients from the constant term upward.
impl fmt::Display for Poly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Poly<BigInt> {
    type Err = PolyError;

    /// Parses `"5,-3,1"` as `T^2 - 3T + 5`; the empty string is zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Self::zero());
        }
        let mut coeffs = Vec::new();
        for (idx, raw) in s.split(',').enumerate() {
            let tok = raw.trim();
            let bad = || PolyError::Parse {
                position: idx,
                token: tok.to_string(),
            };
            let digits = tok.strip_prefix('-').unwrap_or(tok);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            coeffs.push(BigInt::from_str(tok).map_err(|_| bad())?);
        }
        Ok(Self::new(coeffs))
    }
}

/// Serialized as a list of decimal strings (coefficients may exceed 64 bits).
impl Serialize for Poly<BigInt> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for Poly<BigInt> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        raw.iter()
            .map(|s| BigInt::from_str(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn multiply_linear_factors() {
        assert_eq!(&p(&[2, 1]) * &p(&[-3, 1]), p(&[-6, -1, 1]));
    }

    #[test]
    fn divide_difference_of_squares() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divide_by_zero_is_an_error() {
        assert_eq!(
            p(&[1, 1]).div_rem(&IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn division_with_remainder_by_monic() {
        // T^3 + 2T + 7 = (T^2 + T + 3)(T - 1) + 10
        let (q, r) = p(&[7, 2, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[3, 1, 1]));
        assert_eq!(r, p(&[10]));
    }

    #[test]
    fn non_exact_integer_division_stops() {
        let (q, r) = p(&[1, 0, 3]).div_rem(&p(&[0, 2])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p(&[1, 0, 3]));
        assert_eq!(p(&[0, 0, 6]).div_exact(&p(&[0, 2])), Some(p(&[0, 3])));
    }

    #[test]
    fn scale_variable_substitutes() {
        assert_eq!(
            p(&[5, -3, 1]).scale_variable(&BigInt::from(5)),
            p(&[5, -15, 25])
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[5, -3, 1]).eval(&BigInt::from(3)), BigInt::from(5));
        assert_eq!(IntPoly::zero().eval(&BigInt::from(3)), BigInt::zero());
    }

    #[test]
    fn canonical_form_trims() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn text_format() {
        assert_eq!("5,-3,1".parse::<IntPoly>().unwrap(), p(&[5, -3, 1]));
        assert_eq!(" 5 , -3,  1 ".parse::<IntPoly>().unwrap(), p(&[5, -3, 1]));
        assert_eq!("".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert!("+5,1".parse::<IntPoly>().is_err());
        assert!("5,,1".parse::<IntPoly>().is_err());
        assert!("5,x".parse::<IntPoly>().is_err());
        assert!("- 5".parse::<IntPoly>().is_err());
        assert_eq!(p(&[5, -3, 1]).to_string(), "5,-3,1");
        assert_eq!(IntPoly::zero().to_string(), "");
        let big = "123456789012345678901234567890,1";
        assert_eq!(big.parse::<IntPoly>().unwrap().to_string(), big);
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(p(&[5, -3, 1]).pretty(), "T^2 - 3T + 5");
        assert_eq!(p(&[-1, 0, 0, -2]).pretty(), "-2T^3 - 1");
        assert_eq!(IntPoly::zero().pretty(), "0");
    }

    #[test]
    fn reversal_and_reciprocal() {
        assert_eq!(p(&[5, -3, 1]).reversed(), p(&[1, -3, 5]));
        // T^2 f(5/T) for f = T^2 - 3T + 5 gives 25 - 15T + 5T^2
        assert_eq!(
            p(&[5, -3, 1]).reciprocal_scaled(2, &BigInt::from(5)),
            p(&[25, -15, 5])
        );
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        let c = p(&[5, 0, 1]);
        let f = &(&a.pow(3) * &b) * &c.pow(2);
        assert_eq!(f.gcd(&(&a * &c)), &a * &c);
        let sqf = f.scale(&BigInt::from(6)).square_free_decomposition();
        assert_eq!(sqf, vec![(b, 1), (c, 2), (a, 3)]);
    }

    #[test]
    fn square_free_of_square_free_is_itself() {
        let f = p(&[5, -3, 1]);
        assert_eq!(f.square_free_decomposition(), vec![(f, 1)]);
        assert!(p(&[7]).square_free_decomposition().is_empty());
    }
}
