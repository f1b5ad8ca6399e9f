//! Scalar abstractions shared by the exact and numeric halves of the crate.
//!
//! [`Ring`] is what the polynomial and matrix kernel needs: a commutative ring
//! with an optional exact division. [`Real`] is what the numeric oracles and
//! the bound calculators need: an ordered field with `sqrt`, `ln`, `exp` and
//! decimal I/O. Both are implemented for the primitive floats and for
//! [`MpFloat`], an MPFR float whose precision is fixed by a const parameter.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};
use rug::float::Round;
use rug::Float;

/// Commutative ring with identity, plus division where it happens to be exact.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `Some(q)` with `q * rhs == self` when such `q` exists and can be found;
    /// `None` otherwise (including `rhs == 0`).
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

impl Ring for BigInt {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl Ring for i64 {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0 || self % rhs != 0 {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl<T> Ring for num_rational::Ratio<T>
where
    T: Clone + Integer + fmt::Debug + Signed,
{
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self.clone() / rhs.clone())
    }
}

macro_rules! float_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn try_div(&self, rhs: &Self) -> Option<Self> {
                (*rhs != 0.0).then(|| self / rhs)
            }
        }
    )*};
}
float_ring!(f32, f64);

/// Ordered real field with the transcendental functions the crate uses.
///
/// `num_traits::Float` is not an option here: it requires `Copy`, which an
/// MPFR-backed float cannot provide.
pub trait Real: Ring + Num + PartialOrd + Div<Output = Self> + Send + Sync {
    /// Mantissa bits carried by every value of this type.
    fn precision_bits() -> u32;
    fn from_f64(x: f64) -> Self;
    fn from_i64(x: i64) -> Self;
    fn from_bigint(x: &BigInt) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact-as-possible conversion into an MPFR float of the given precision.
    fn to_mpfr(&self, prec: u32) -> Float;
    fn from_mpfr(x: &Float) -> Self;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn is_finite(&self) -> bool;

    /// `self * 2^e`.
    fn mul_pow2(&self, e: i32) -> Self;

    fn from_u64(x: u64) -> Self {
        Self::from_bigint(&BigInt::from(x))
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn powu(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }

    /// Parses a plain or scientific decimal literal.
    fn parse_decimal(s: &str) -> Option<Self> {
        let prec = Self::precision_bits().max(64);
        let parsed = Float::parse(s.trim()).ok()?;
        Some(Self::from_mpfr(&Float::with_val(prec, parsed)))
    }

    /// Positional decimal string with `digits` significant digits.
    fn to_decimal(&self, digits: usize) -> String {
        positional_decimal(&self.to_mpfr(Self::precision_bits().max(64)), digits)
    }

    /// Least integer not below `self`; `None` for non-finite values.
    fn ceil_to_bigint(&self) -> Option<BigInt> {
        let f = self.to_mpfr(Self::precision_bits().max(64));
        if !f.is_finite() {
            return None;
        }
        let int = f.ceil().to_integer()?;
        BigInt::from_str(&int.to_string()).ok()
    }

    fn pi() -> Self {
        let prec = Self::precision_bits().max(64);
        Self::from_mpfr(&Float::with_val(prec, rug::float::Constant::Pi))
    }
}

/// Renders `x` in positional notation rounded to `digits` significant digits.
pub fn positional_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = x.to_string_radix(10, Some(digits.max(1)));
    let (neg, body) = match sci.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, sci.as_str()),
    };
    let (mantissa, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let all: String = format!("{int_part}{frac_part}");
    let point = int_part.len() as i64 + exp;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&all);
    } else if point as usize >= all.len() {
        out.push_str(&all);
        out.extend(std::iter::repeat_n('0', point as usize - all.len()));
    } else {
        out.push_str(&all[..point as usize]);
        out.push('.');
        out.push_str(&all[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

macro_rules! primitive_real {
    ($t:ty, $bits:expr) => {
        impl Real for $t {
            fn precision_bits() -> u32 {
                $bits
            }
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            fn from_i64(x: i64) -> Self {
                x as $t
            }
            fn from_bigint(x: &BigInt) -> Self {
                num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN) as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn to_mpfr(&self, prec: u32) -> Float {
                Float::with_val(prec, *self)
            }
            fn from_mpfr(x: &Float) -> Self {
                x.to_f64() as $t
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
            fn mul_pow2(&self, e: i32) -> Self {
                *self * (2.0 as $t).powi(e)
            }
        }
    };
}
primitive_real!(f32, 24);
primitive_real!(f64, 53);

/// MPFR float with `BITS` bits of mantissa.
///
/// Every constructor and every arithmetic result is rounded to `BITS`, so
/// values of one `MpFloat<BITS>` type never carry mixed precisions.
#[derive(Clone)]
pub struct MpFloat<const BITS: u32>(Float);

impl<const BITS: u32> MpFloat<BITS> {
    pub fn new(x: Float) -> Self {
        Self(Float::with_val(BITS, x))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }
}

impl<const BITS: u32> fmt::Debug for MpFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(24)))
    }
}

impl<const BITS: u32> fmt::Display for MpFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&positional_decimal(&self.0, 30))
    }
}

impl<const BITS: u32> PartialEq for MpFloat<BITS> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<const BITS: u32> PartialOrd for MpFloat<BITS> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! mp_binop {
    ($tr:ident, $method:ident) => {
        impl<const BITS: u32> $tr for MpFloat<BITS> {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                Self(Float::with_val(BITS, $tr::$method(&self.0, &rhs.0)))
            }
        }
    };
}
mp_binop!(Add, add);
mp_binop!(Sub, sub);
mp_binop!(Mul, mul);
mp_binop!(Div, div);

impl<const BITS: u32> Rem for MpFloat<BITS> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        let q = Float::with_val(BITS, &self.0 / &rhs.0).trunc();
        Self(Float::with_val(BITS, &self.0 - q * &rhs.0))
    }
}

impl<const BITS: u32> Neg for MpFloat<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl<const BITS: u32> Zero for MpFloat<BITS> {
    fn zero() -> Self {
        Self(Float::new(BITS))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const BITS: u32> One for MpFloat<BITS> {
    fn one() -> Self {
        Self(Float::with_val(BITS, 1))
    }
}

impl<const BITS: u32> Num for MpFloat<BITS> {
    type FromStrRadixErr = rug::float::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(Self(Float::with_val(BITS, parsed)))
    }
}

impl<const BITS: u32> Ring for MpFloat<BITS> {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.0.is_zero()).then(|| Self(Float::with_val(BITS, &self.0 / &rhs.0)))
    }
}

impl<const BITS: u32> Real for MpFloat<BITS> {
    fn precision_bits() -> u32 {
        BITS
    }
    fn from_f64(x: f64) -> Self {
        Self(Float::with_val(BITS, x))
    }
    fn from_i64(x: i64) -> Self {
        Self(Float::with_val(BITS, x))
    }
    fn from_bigint(x: &BigInt) -> Self {
        let int = rug::Integer::from_str_radix(&x.to_str_radix(16), 16)
            .expect("hex digits of a BigInt always parse");
        Self(Float::with_val(BITS, int))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn to_mpfr(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.0)
    }
    fn from_mpfr(x: &Float) -> Self {
        Self(Float::with_val_round(BITS, x, Round::Nearest).0)
    }
    fn abs(&self) -> Self {
        Self(self.0.clone().abs())
    }
    fn sqrt(&self) -> Self {
        Self(self.0.clone().sqrt())
    }
    fn ln(&self) -> Self {
        Self(self.0.clone().ln())
    }
    fn exp(&self) -> Self {
        Self(self.0.clone().exp())
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn mul_pow2(&self, e: i32) -> Self {
        Self(Float::with_val(BITS, &self.0 << e))
    }
}

/// Converts between two `Real` types through MPFR at the wider precision.
pub fn convert<S: Real, T: Real>(x: &S) -> T {
    let prec = S::precision_bits().max(T::precision_bits()).max(64);
    T::from_mpfr(&x.to_mpfr(prec))
}
