//! Small exact-integer helpers shared across modules.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

/// Floor square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Returns `Some(r)` with `r*r == n` when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn isqrt_u128(n: u128) -> u128 {
    n.sqrt()
}

pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

/// Binomial coefficient `C(n, k)` for non-negative `n`; zero when `k > n` or `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i+1) after the division
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d <= p / d {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(8, 5), BigInt::from(56));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(97 * 89));
    }

    #[test]
    fn xgcd_signs() {
        let (g, x, y) = xgcd(&BigInt::from(-4), &BigInt::from(6));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(BigInt::from(-4) * x + BigInt::from(6) * y, g);
    }

    #[test]
    fn squares() {
        assert_eq!(exact_sqrt(&BigInt::from(144)), Some(BigInt::from(12)));
        assert_eq!(exact_sqrt(&BigInt::from(145)), None);
        assert_eq!(exact_sqrt_i128(0), Some(0));
        assert_eq!(isqrt_u128(99), 9);
    }
}
