//! Effective bounds in natural-log space.
//!
//! Every function is generic over [`Real`]; [`crate::Real256`] is the working
//! precision used by the CLI. Factorials and powers of two are formed exactly
//! and converted once. Absolute constants that have no known numeric value
//! are parameters (default 1) and are echoed in each [`BoundReport`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rug::Float;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::arith::{factorial, is_prime};
use crate::error::BoundsError;
use crate::scalar::{positional_decimal, Real};

/// Significant digits of `log_value` in serialized reports.
pub const REPORT_DIGITS: usize = 30;
/// Reports carry an integer ceiling only below `2^EXACT_LIMIT_BITS`.
pub const EXACT_LIMIT_BITS: u32 = 4096;

/// Whether the Dedekind zeta function of `K` has an exceptional real zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExceptionalZero {
    Yes,
    No,
    /// Treated as [`ExceptionalZero::Yes`], which gives the larger bound.
    Unknown,
}

impl ExceptionalZero {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Yes => "yes",
            Self::No => "no",
            Self::Unknown => "unknown",
        }
    }
}

impl std::str::FromStr for ExceptionalZero {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "yes" => Ok(Self::Yes),
            "no" => Ok(Self::No),
            "unknown" => Ok(Self::Unknown),
            other => Err(format!("expected yes, no or unknown, got {other:?}")),
        }
    }
}

/// Degree, log-discriminant and exceptional-zero status of a number field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldParams<R> {
    n_k: u64,
    log_abs_disc: R,
    exceptional: ExceptionalZero,
}

impl<R: Real> FieldParams<R> {
    pub fn new(
        n_k: u64,
        log_abs_disc: R,
        exceptional: ExceptionalZero,
    ) -> Result<Self, BoundsError> {
        if n_k == 0 {
            return Err(BoundsError::ZeroDegree);
        }
        if log_abs_disc < R::zero() || (n_k == 1 && !log_abs_disc.is_zero()) {
            return Err(BoundsError::BadDiscriminant);
        }
        Ok(Self {
            n_k,
            log_abs_disc,
            exceptional,
        })
    }

    pub fn rationals() -> Self {
        Self {
            n_k: 1,
            log_abs_disc: R::zero(),
            exceptional: ExceptionalZero::No,
        }
    }

    pub fn degree(&self) -> u64 {
        self.n_k
    }

    pub fn log_abs_disc(&self) -> &R {
        &self.log_abs_disc
    }

    pub fn exceptional(&self) -> ExceptionalZero {
        self.exceptional
    }

    fn echo(&self, inputs: &mut Vec<(&'static str, String)>) {
        inputs.push(("n_K", self.n_k.to_string()));
        inputs.push((
            "log_abs_disc_K",
            self.log_abs_disc.to_decimal(REPORT_DIGITS),
        ));
        inputs.push(("exceptional_zero", self.exceptional.as_str().to_string()));
    }
}

/// `n_K^2` without an exceptional zero, otherwise
/// `max(n_K! log|d_K|, |d_K|^(1/n_K)) + n_K^2`.
pub fn f_of_k<R: Real>(fp: &FieldParams<R>) -> R {
    f_with_branch(fp).0
}

fn f_with_branch<R: Real>(fp: &FieldParams<R>) -> (R, &'static str) {
    let n = R::from_u64(fp.n_k);
    let square = n.clone() * n.clone();
    if fp.exceptional == ExceptionalZero::No {
        return (square, "no exceptional zero");
    }
    let fact = R::from_bigint(&factorial(fp.n_k)) * fp.log_abs_disc.clone();
    let root = (fp.log_abs_disc.clone() / n).exp();
    if fact >= root {
        (fact + square, "factorial term")
    } else {
        (root + square, "root term")
    }
}

fn distinct_primes(primes: &[u64]) -> Result<BTreeSet<u64>, BoundsError> {
    primes
        .iter()
        .map(|&p| {
            if is_prime(p) {
                Ok(p)
            } else {
                Err(BoundsError::NotPrime { p })
            }
        })
        .collect()
}

fn sum_log<R: Real>(primes: &BTreeSet<u64>) -> R {
    primes
        .iter()
        .fold(R::zero(), |acc, &p| acc + R::from_u64(p).ln())
}

/// `(n_L - 1) sum log p + n_L log(n_L) |P|`: upper bound for `log|d_L|` when
/// exactly the primes in `P` ramify. Repeated primes count once.
pub fn hensel_log_disc<R: Real>(n_l: u64, ramified: &[u64]) -> Result<R, BoundsError> {
    if n_l == 0 {
        return Err(BoundsError::ZeroDegree);
    }
    let primes = distinct_primes(ramified)?;
    let nl = R::from_u64(n_l);
    Ok(R::from_u64(n_l - 1) * sum_log(&primes)
        + nl.clone() * nl.ln() * R::from_u64(primes.len() as u64))
}

/// `(n_L - n_K) sum log p + n_L (log n_L - log n_K) + (n_L / n_K) log|d_K|`
/// for a Galois extension `L/K`.
pub fn hensel_galois_log_disc<R: Real>(
    n_l: u64,
    n_k: u64,
    log_d_k: &R,
    ramified: &[u64],
) -> Result<R, BoundsError> {
    if n_l == 0 || n_k == 0 {
        return Err(BoundsError::ZeroDegree);
    }
    if !n_l.is_multiple_of(n_k) {
        return Err(BoundsError::DegreeNotDivisible { n_l, n_k });
    }
    if *log_d_k < R::zero() {
        return Err(BoundsError::BadDiscriminant);
    }
    let primes = distinct_primes(ramified)?;
    let nl = R::from_u64(n_l);
    let nk = R::from_u64(n_k);
    Ok(R::from_u64(n_l - n_k) * sum_log(&primes)
        + nl.clone() * (nl.ln() - nk.ln())
        + R::from_u64(n_l / n_k) * log_d_k.clone())
}

/// A bound together with the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<R> {
    pub name: &'static str,
    /// Parameter echo in a fixed order.
    pub inputs: Vec<(&'static str, String)>,
    /// Inputs that stand for constants with no known numeric value.
    pub unnormalized: Vec<&'static str>,
    pub log_value: R,
    /// Log-values of the alternatives inside a `max`, when there is one.
    pub branches: Vec<(&'static str, R)>,
    pub active_branch: Option<&'static str>,
    /// `ceil(exp(log_value))` when it is below `2^4096`.
    pub exact_value: Option<BigInt>,
}

impl<R: Real> BoundReport<R> {
    fn new(name: &'static str, inputs: Vec<(&'static str, String)>, log_value: R) -> Self {
        let exact_value = exact_ceiling(&log_value);
        Self {
            name,
            inputs,
            unnormalized: Vec::new(),
            log_value,
            branches: Vec::new(),
            active_branch: None,
            exact_value,
        }
    }

    /// `exp(log_value)` as a positional decimal, when it is below `2^4096`.
    pub fn value_decimal(&self, digits: usize) -> Option<String> {
        let prec = R::precision_bits().max(64) + 64;
        let x = self.log_value.to_mpfr(prec);
        if x > ln2_times(EXACT_LIMIT_BITS, prec) {
            return None;
        }
        let v = x.exp();
        // Past `digits` integer digits a positional form only pads zeros.
        let ten_pow = Float::with_val(prec, Float::i_pow_u(10, digits as u32));
        if v >= ten_pow {
            return Some(scientific_decimal(&v, digits));
        }
        Some(positional_decimal(&v, digits))
    }
}

fn scientific_decimal(x: &Float, digits: usize) -> String {
    let sci = x.to_string_radix(10, Some(digits.max(1)));
    let (mantissa, exp) = sci.split_once('e').unwrap_or((sci.as_str(), "0"));
    let exp: i64 = exp.parse().unwrap_or(0);
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    // Normalize to one leading digit.
    let shift = int_part.len() as i64 - 1;
    let digits_all = format!("{int_part}{frac_part}");
    let (head, tail) = digits_all.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{head}e{}", exp + shift)
    } else {
        format!("{head}.{tail}e{}", exp + shift)
    }
}

fn ln2_times(k: u32, prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Log2) * k
}

fn exact_ceiling<R: Real>(log_value: &R) -> Option<BigInt> {
    let prec = R::precision_bits().max(64) + 64;
    let x = log_value.to_mpfr(prec);
    if !x.is_finite() || x > ln2_times(EXACT_LIMIT_BITS, prec) {
        return None;
    }
    // Values that are integers up to the working precision snap to that
    // integer rather than to the next one.
    let v = x.exp();
    let nearest = Float::with_val(prec, v.round_ref());
    let slack = Float::with_val(prec, &nearest >> (R::precision_bits().max(64) - 16));
    let int = if Float::with_val(prec, &v - &nearest).abs() <= slack {
        nearest
    } else {
        v.ceil()
    };
    int.to_integer()?.to_string().parse().ok()
}

impl<R: Real> Serialize for BoundReport<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Pairs<'a>(&'a [(&'static str, String)]);
        impl Serialize for Pairs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let branches: Vec<(&'static str, String)> = self
            .branches
            .iter()
            .map(|(k, v)| (*k, v.to_decimal(REPORT_DIGITS)))
            .collect();
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("name", self.name)?;
        m.serialize_entry("inputs", &Pairs(&self.inputs))?;
        m.serialize_entry("unnormalized_constants", &self.unnormalized)?;
        m.serialize_entry("log_value", &self.log_value.to_decimal(REPORT_DIGITS))?;
        m.serialize_entry("value", &self.value_decimal(REPORT_DIGITS))?;
        m.serialize_entry(
            "exact_value",
            &self.exact_value.as_ref().map(|v| v.to_string()),
        )?;
        if !branches.is_empty() {
            m.serialize_entry("branches", &Pairs(&branches))?;
        }
        m.serialize_entry("active_branch", &self.active_branch)?;
        m.end()
    }
}

pub fn f_of_k_report<R: Real>(fp: &FieldParams<R>) -> BoundReport<R> {
    let mut inputs = Vec::new();
    fp.echo(&mut inputs);
    let (f, branch) = f_with_branch(fp);
    let mut r = BoundReport::new("f(K)", inputs, f.ln());
    r.active_branch = Some(branch);
    r
}

pub fn hensel_report<R: Real>(n_l: u64, ramified: &[u64]) -> Result<BoundReport<R>, BoundsError> {
    let v = hensel_log_disc::<R>(n_l, ramified)?;
    let inputs = vec![("n_L", n_l.to_string()), ("ramified", join(ramified))];
    Ok(BoundReport::new("hensel", inputs, v))
}

pub fn hensel_galois_report<R: Real>(
    n_l: u64,
    n_k: u64,
    log_d_k: &R,
    ramified: &[u64],
) -> Result<BoundReport<R>, BoundsError> {
    let v = hensel_galois_log_disc(n_l, n_k, log_d_k, ramified)?;
    let inputs = vec![
        ("n_L", n_l.to_string()),
        ("n_K", n_k.to_string()),
        ("log_abs_disc_K", log_d_k.to_decimal(REPORT_DIGITS)),
        ("ramified", join(ramified)),
    ];
    Ok(BoundReport::new("hensel-galois", inputs, v))
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn check_constant<R: Real>(name: &'static str, c: &R) -> Result<(), BoundsError> {
    if *c <= R::zero() {
        return Err(BoundsError::NonPositive { name });
    }
    Ok(())
}

/// `max(55, e^(c f(K)) |d_L|^(5 / (2(n-1))))` in log form, for the least
/// prime of `K` that does not split completely in `L`, `n = [L : K]`.
pub fn least_nonsplit_bound<R: Real>(
    fp: &FieldParams<R>,
    log_d_l: &R,
    n: u64,
    c: &R,
) -> Result<BoundReport<R>, BoundsError> {
    if n < 2 {
        return Err(BoundsError::TrivialExtension { n });
    }
    check_constant("c", c)?;
    if *log_d_l < R::zero() {
        return Err(BoundsError::BadDiscriminant);
    }
    let floor = R::from_u64(55).ln();
    let growth =
        c.clone() * f_of_k(fp) + R::from_u64(5) * log_d_l.clone() / R::from_u64(2 * (n - 1));
    let (log_value, active) = if growth > floor {
        (growth.clone(), "discriminant")
    } else {
        (floor.clone(), "constant 55")
    };
    let mut inputs = Vec::new();
    fp.echo(&mut inputs);
    inputs.push(("log_abs_disc_L", log_d_l.to_decimal(REPORT_DIGITS)));
    inputs.push(("n", n.to_string()));
    inputs.push(("c", c.to_decimal(REPORT_DIGITS)));
    let mut r = BoundReport::new("least-nonsplit", inputs, log_value);
    r.unnormalized = vec!["c"];
    r.branches = vec![("constant 55", floor), ("discriminant", growth)];
    r.active_branch = Some(active);
    Ok(r)
}

/// `log B` from `log N`, with `m` and `d` as reals:
/// `f + E log N + (E + 1) log(f + n_K log N)`, `E = m n_K d^2`, where the last
/// logarithm is taken as 0 when its argument is below 1.
fn log_b<R: Real>(log_n: &R, fp: &FieldParams<R>, m: &R, d: &R) -> (R, bool) {
    let f = f_of_k(fp);
    let nk = R::from_u64(fp.n_k);
    let e = m.clone() * nk.clone() * d.clone() * d.clone();
    let inner = f.clone() + nk * log_n.clone();
    let clamped = inner < R::one();
    let log_inner = if clamped { R::zero() } else { inner.ln() };
    (
        f + e.clone() * log_n.clone() + (e + R::one()) * log_inner,
        clamped,
    )
}

/// `B(N, K, m, d)` for an integer conductor `N >= 1`.
pub fn bound_b<R: Real>(
    n: u64,
    fp: &FieldParams<R>,
    m: u64,
    d: u64,
) -> Result<BoundReport<R>, BoundsError> {
    if n == 0 {
        return Err(BoundsError::NonPositive { name: "N" });
    }
    if m == 0 {
        return Err(BoundsError::NonPositive { name: "m" });
    }
    if d == 0 {
        return Err(BoundsError::NonPositive { name: "d" });
    }
    let (v, clamped) = log_b(&R::from_u64(n).ln(), fp, &R::from_u64(m), &R::from_u64(d));
    let mut inputs = vec![("N", n.to_string())];
    fp.echo(&mut inputs);
    inputs.push(("m", m.to_string()));
    inputs.push(("d", d.to_string()));
    let mut r = BoundReport::new("B", inputs, v);
    r.active_branch = clamped.then_some("log term clamped to 0");
    Ok(r)
}

/// `log N' = log(2^(4d) (2d+1)! N log|d_F|)`, the conductor-like first
/// argument of `B` inside `C`.
pub fn c_conductor_log<R: Real>(d: u64, n: u64, log_d_f: &R) -> R {
    let exact = BigInt::from(1u8) << (4 * d as usize);
    let exact = exact * factorial(2 * d + 1) * BigInt::from(n);
    R::from_bigint(&exact).ln() + log_d_f.ln()
}

/// `log C = log c1 + c log B(N', K, (2d)!, 2^(2d))`.
pub fn bound_c<R: Real>(
    n: u64,
    d: u64,
    log_d_f: &R,
    fp: &FieldParams<R>,
    c: &R,
    c1: &R,
) -> Result<BoundReport<R>, BoundsError> {
    if n == 0 {
        return Err(BoundsError::NonPositive { name: "N" });
    }
    if d == 0 {
        return Err(BoundsError::NonPositive { name: "d" });
    }
    if *log_d_f <= R::zero() {
        return Err(BoundsError::NonPositive { name: "log_d_F" });
    }
    if *c < R::one() {
        return Err(BoundsError::BelowOne { name: "c" });
    }
    if *c1 < R::one() {
        return Err(BoundsError::BelowOne { name: "c1" });
    }
    let log_n = c_conductor_log(d, n, log_d_f);
    let m = R::from_bigint(&factorial(2 * d));
    let dd = R::from_bigint(&(BigInt::from(1u8) << (2 * d as usize)));
    let (lb, clamped) = log_b(&log_n, fp, &m, &dd);
    let v = c1.ln() + c.clone() * lb;
    let mut inputs = vec![("N", n.to_string()), ("d", d.to_string())];
    inputs.push(("log_d_F", log_d_f.to_decimal(REPORT_DIGITS)));
    fp.echo(&mut inputs);
    inputs.push(("c", c.to_decimal(REPORT_DIGITS)));
    inputs.push(("c1", c1.to_decimal(REPORT_DIGITS)));
    inputs.push(("log_N_prime", log_n.to_decimal(REPORT_DIGITS)));
    let mut r = BoundReport::new("C", inputs, v);
    r.unnormalized = vec!["c", "c1"];
    r.active_branch = clamped.then_some("log term clamped to 0");
    Ok(r)
}
