#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tatelab::arith::{isqrt, prime_power};
use tatelab::weil::elliptic;
use tatelab::{product_variety, validate_weil, BigInt, IntPoly, WeilPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn prime_powers_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&q| prime_power(q).is_some()).collect()
}

/// Largest `a >= 0` with `a^2 <= 4q`.
fn trace_limit(q: u64) -> i64 {
    isqrt(4 * q) as i64
}

fn random_elliptic(rng: &mut ChaCha8Rng, q: u64) -> WeilPoly {
    let t = trace_limit(q);
    // Bias towards the supersingular and extremal traces, where the
    // interesting Tate classes live.
    let a = match rng.gen_range(0..6) {
        0 => 0,
        1 => t,
        2 => -t,
        _ => rng.gen_range(-t..=t),
    };
    elliptic(a, q).expect("|a| <= 2 sqrt(q)")
}

/// `T^4 + a T^3 + b T^2 + q a T + q^2`, rejection-sampled until it passes
/// validation.
fn random_surface(rng: &mut ChaCha8Rng, q: u64) -> WeilPoly {
    let t = 2 * trace_limit(q);
    loop {
        let a = rng.gen_range(-t..=t);
        let b = rng.gen_range(-2 * q as i64..=6 * q as i64);
        let qi = q as i64;
        let f = IntPoly::new(vec![
            BigInt::from(qi * qi),
            BigInt::from(qi * a),
            BigInt::from(b),
            BigInt::from(a),
            BigInt::from(1),
        ]);
        if let Ok(w) = validate_weil(&f, q) {
            return w;
        }
    }
}

/// `(T^2 - q)^2`: the square of the real-root factor.
fn real_surface(q: u64) -> WeilPoly {
    let f = IntPoly::from_i64s(&[-(q as i64), 0, 1]).pow(2);
    validate_weil(&f, q).expect("(T^2 - q)^2 is a Weil polynomial")
}

/// A random Weil polynomial of dimension `1..=max_d` over a random prime
/// power `q <= q_max`, built from elliptic factors, surfaces and real-root
/// factors.
pub fn random_weil(rng: &mut ChaCha8Rng, q_max: u64, max_d: usize) -> WeilPoly {
    let qs = prime_powers_upto(q_max);
    let q = qs[rng.gen_range(0..qs.len())];
    let d = rng.gen_range(1..=max_d);
    let mut parts: Vec<WeilPoly> = Vec::new();
    let mut left = d;
    while left > 0 {
        let piece = if left >= 2 && rng.gen_bool(0.4) {
            left -= 2;
            if rng.gen_bool(0.2) {
                real_surface(q)
            } else {
                random_surface(rng, q)
            }
        } else {
            left -= 1;
            random_elliptic(rng, q)
        };
        // Repeating a factor produces extra Tate classes.
        if !parts.is_empty() && left > 0 && rng.gen_bool(0.3) && parts[0].dimension() <= left {
            left -= parts[0].dimension();
            let again = parts[0].clone();
            parts.push(again);
        }
        parts.push(piece);
    }
    parts
        .into_iter()
        .reduce(|a, b| product_variety(&a, &b).expect("same q"))
        .expect("at least one factor")
}

/// Random monic integer polynomial of the given degree.
pub fn random_monic(rng: &mut ChaCha8Rng, degree: usize, bound: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    IntPoly::from_i64s(&c)
}
