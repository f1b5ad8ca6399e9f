//! Numeric complex roots of integer polynomials at a chosen precision.
//!
//! Repeated roots are separated exactly first (square-free decomposition over
//! the integers), so the iterative part only ever sees simple roots and keeps
//! its full convergence rate. Each square-free factor is solved by
//! Aberth–Ehrlich iteration, first in `f64` and then refined in the target
//! [`Real`] type.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::matrix::k_subsets;
use crate::scalar::Real;
use crate::IntPoly;

/// Picks an MPFR float type with at least `$bits` bits and evaluates `$body`
/// with that type bound to `$R`.
#[macro_export]
macro_rules! with_precision {
    ($bits:expr, $R:ident => $body:expr) => {{
        let bits: u32 = $bits;
        if bits <= 128 {
            type $R = $crate::MpFloat<128>;
            $body
        } else if bits <= 192 {
            type $R = $crate::MpFloat<192>;
            $body
        } else if bits <= 256 {
            type $R = $crate::MpFloat<256>;
            $body
        } else if bits <= 320 {
            type $R = $crate::MpFloat<320>;
            $body
        } else if bits <= 384 {
            type $R = $crate::MpFloat<384>;
            $body
        } else if bits <= 512 {
            type $R = $crate::MpFloat<512>;
            $body
        } else if bits <= 1024 {
            type $R = $crate::MpFloat<1024>;
            $body
        } else if bits <= 2048 {
            type $R = $crate::MpFloat<2048>;
            $body
        } else {
            type $R = $crate::MpFloat<4096>;
            $body
        }
    }};
}

/// All complex roots of a nonzero polynomial, repeated by multiplicity.
///
/// `None` if the iteration fails to converge (not observed on polynomials of
/// the sizes used here).
pub fn complex_roots<R: Real>(f: &IntPoly) -> Option<Vec<Complex<R>>> {
    let mut out = Vec::with_capacity(f.degree().unwrap_or(0));
    for (factor, mult) in f.square_free_decomposition() {
        let roots = simple_roots::<R>(&factor)?;
        for r in roots {
            for _ in 0..mult {
                out.push(r.clone());
            }
        }
    }
    Some(out)
}

fn simple_roots<R: Real>(g: &IntPoly) -> Option<Vec<Complex<R>>> {
    let n = g.degree()?;
    if n == 0 {
        return Some(Vec::new());
    }
    let coeffs: Vec<R> = g.coeffs().iter().map(R::from_bigint).collect();
    if n == 1 {
        let root = -(coeffs[0].clone() / coeffs[1].clone());
        return Some(vec![Complex::new(root, R::zero())]);
    }
    let coeffs64: Vec<f64> = g
        .coeffs()
        .iter()
        .map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::INFINITY))
        .collect();
    let start: Vec<Complex<R>> = if coeffs64.iter().all(|c| c.is_finite()) {
        let (z, _) = aberth(&coeffs64, initial_guesses(&coeffs64), 30, 500);
        if z.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            z.into_iter()
                .map(|c| Complex::new(R::from_f64(c.re), R::from_f64(c.im)))
                .collect()
        } else {
            initial_guesses(&coeffs)
        }
    } else {
        initial_guesses(&coeffs)
    };
    let guard = R::precision_bits().saturating_sub(24).max(20);
    let (roots, ok) = aberth(&coeffs, start, guard, 400);
    ok.then_some(roots)
}

/// Points on a circle of radius `|a_0 / a_n|^(1/n)`, offset so that no guess
/// lies on the real axis.
fn initial_guesses<R: Real>(coeffs: &[R]) -> Vec<Complex<R>> {
    let n = coeffs.len() - 1;
    let a0 = coeffs[0].to_f64().abs();
    let an = coeffs[n].to_f64().abs();
    let mut radius = if a0 > 0.0 && an > 0.0 && (a0 / an).is_finite() {
        (a0 / an).powf(1.0 / n as f64)
    } else {
        1.0
    };
    if !radius.is_finite() || radius == 0.0 {
        radius = 1.0;
    }
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex::new(
                R::from_f64(radius * theta.cos()),
                R::from_f64(radius * theta.sin()),
            )
        })
        .collect()
}

fn horner<R: Real>(coeffs: &[R], z: &Complex<R>) -> Complex<R> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::zero(), |acc: Complex<R>, c| {
            acc * z.clone() + Complex::new(c.clone(), R::zero())
        })
}

/// Simultaneous Aberth–Ehrlich iteration (Gauss–Seidel updates).
///
/// Converged when every correction is below `2^-tol_bits` relative to its
/// root; two extra sweeps then polish to working precision.
fn aberth<R: Real>(
    coeffs: &[R],
    mut z: Vec<Complex<R>>,
    tol_bits: u32,
    max_iter: usize,
) -> (Vec<Complex<R>>, bool) {
    let deriv: Vec<R> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.clone() * R::from_u64(i as u64))
        .collect();
    let tol_sq = R::one().mul_pow2(-2 * tol_bits as i32);
    let n = z.len();
    let mut polish = 0;
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let zi = z[i].clone();
            let pv = horner(coeffs, &zi);
            if pv.is_zero() {
                continue;
            }
            let dv = horner(&deriv, &zi);
            if dv.is_zero() {
                // Nudge off a critical point.
                z[i] = zi.clone() + zi * Complex::new(R::from_f64(1e-3), R::from_f64(1e-3));
                converged = false;
                continue;
            }
            let ratio = pv / dv;
            let mut s: Complex<R> = Complex::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = zi.clone() - zj.clone();
                    if !diff.is_zero() {
                        s = s + Complex::<R>::one() / diff;
                    }
                }
            }
            let denom: Complex<R> = Complex::<R>::one() - ratio.clone() * s;
            let w = if denom.is_zero() {
                ratio
            } else {
                ratio / denom
            };
            let new = zi - w.clone();
            if w.norm_sqr() > tol_sq.clone() * new.norm_sqr() {
                converged = false;
            }
            z[i] = new;
        }
        if converged {
            polish += 1;
            if polish > 2 {
                return (z, true);
            }
        }
    }
    (z, false)
}

/// Products over all `size`-subsets of `values`, in lexicographic subset order.
pub fn subset_products<R: Real>(values: &[Complex<R>], size: usize) -> Vec<Complex<R>> {
    k_subsets(values.len(), size)
        .into_iter()
        .map(|idx| {
            idx.into_iter()
                .fold(Complex::one(), |acc: Complex<R>, i| acc * values[i].clone())
        })
        .collect()
}

/// Whether two multisets of complex numbers agree element-for-element within
/// `tol * max(1, |x|)`, by greedy nearest matching.
pub fn multisets_match<R: Real>(a: &[Complex<R>], b: &[Complex<R>], tol: &R) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let scale = x.norm_sqr().max_of(R::one());
        let limit = tol.clone() * tol.clone() * scale;
        let best = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x.clone() - y.clone()).norm_sqr()))
            .min_by(|l, r| l.1.partial_cmp(&r.1).unwrap_or(std::cmp::Ordering::Equal));
        match best {
            Some((j, d)) if d <= limit => used[j] = true,
            _ => return false,
        }
    }
    true
}
