//! Elementary integer arithmetic on machine words.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    primal::is_prime(n)
}

/// Prime factorization by trial division, as `(prime, exponent)` in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, e))` with `q = p^e`, `e >= 1`, when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    // Try every exponent from the largest down; the base is then checked for
    // primality, so a large prime q costs one primality test.
    for e in (1..=63u32).rev() {
        let r = integer_root(q, e);
        if r >= 2 && r.checked_pow(e) == Some(q) && is_prime(r) {
            return Some((r, e));
        }
    }
    None
}

/// floor(n^(1/e)) for e >= 1.
pub fn integer_root(n: u64, e: u32) -> u64 {
    if e == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / e as f64).round() as u64;
    while r > 0 && r.checked_pow(e).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(e).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

pub fn isqrt(n: u64) -> u64 {
    integer_root(n, 2)
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Every `m >= 1` with `phi(m) <= bound`, in increasing order.
///
/// Uses `phi(m) >= sqrt(m / 2)`, so it suffices to scan `m <= 2 * bound^2`.
pub fn totient_bounded(bound: u64) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    let limit = (2 * bound * bound).max(6);
    (1..=limit).filter(|&m| totient(m) <= bound).collect()
}

pub fn lcm_big(values: impl IntoIterator<Item = u64>) -> BigUint {
    values
        .into_iter()
        .fold(BigUint::one(), |acc, m| acc.lcm(&BigUint::from(m)))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (d/p) for a prime p.
pub fn kronecker_prime(d: i64, p: u64) -> i32 {
    if p == 2 {
        if d % 2 == 0 {
            0
        } else {
            match d.rem_euclid(8) {
                1 | 7 => 1,
                _ => -1,
            }
        }
    } else {
        jacobi(d, p)
    }
}

/// Squarefree part of a nonzero integer, sign included.
pub fn squarefree_part(d: i64) -> i64 {
    let sign = d.signum();
    let core: u64 = factorize(d.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    sign * core as i64
}

/// Discriminant of the quadratic field Q(sqrt(d)); 1 when d is a square.
pub fn field_discriminant(d: i64) -> i64 {
    let s = squarefree_part(d);
    if s == 1 {
        1
    } else if s.rem_euclid(4) == 1 {
        s
    } else {
        4 * s
    }
}

/// Fundamental discriminants of quadratic fields (so `1` is excluded).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    field_discriminant(d) == d
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(36), None);
        assert_eq!(
            prime_power(18446744073709551557),
            Some((18446744073709551557, 1))
        );
    }

    #[test]
    fn totients_and_divisors() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn totient_bounded_sets() {
        assert_eq!(totient_bounded(1), vec![1, 2]);
        assert_eq!(totient_bounded(2), vec![1, 2, 3, 4, 6]);
        assert_eq!(
            totient_bounded(6),
            vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]
        );
        assert_eq!(lcm_big(totient_bounded(6)), BigUint::from(2520u32));
    }

    #[test]
    fn totient_bounded_matches_wide_scan() {
        for b in 1..=40u64 {
            let wide: Vec<u64> = (1..=20 * b * b + 100)
                .filter(|&m| totient(m) <= b)
                .collect();
            assert_eq!(totient_bounded(b), wide, "bound {b}");
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_prime(-4, 2), 0);
        assert_eq!(kronecker_prime(-4, 5), 1);
        assert_eq!(kronecker_prime(-4, 7), -1);
        assert_eq!(kronecker_prime(-3, 2), -1);
        assert_eq!(kronecker_prime(5, 2), -1);
        assert_eq!(kronecker_prime(-7, 2), 1);
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            for a in -50i64..50 {
                let euler = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let expected = match euler {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(jacobi(a, p), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(field_discriminant(-1), -4);
        assert_eq!(field_discriminant(-4), -4);
        assert_eq!(field_discriminant(-3), -3);
        assert_eq!(field_discriminant(2), 8);
        assert_eq!(field_discriminant(12), 12);
        assert_eq!(field_discriminant(9), 1);
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(5));
        assert!(!is_fundamental_discriminant(-16));
        assert!(!is_fundamental_discriminant(1));
        assert!(!is_fundamental_discriminant(3));
    }

    #[test]
    fn modular_square_roots() {
        for p in [3u64, 5, 13, 17, 97, 1_000_003, 998_244_353] {
            for a in 1..200u64 {
                if let Some(r) = sqrt_mod_prime(a, p) {
                    assert_eq!(mul_mod(r, r, p), a % p);
                } else {
                    assert_eq!(jacobi(a as i64, p), -1);
                }
            }
        }
    }

    #[test]
    fn small_helpers() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(integer_root(1 << 40, 5), 256);
        assert_eq!(isqrt(99), 9);
        assert_eq!(squarefree_part(-72), -2);
    }
}
