//! Which degrees `4n` are norms of `L20` vectors.
//!
//! A vector `(lambda, mu, delta)` has norm `x^2 + y^2 + 10 z^2` with
//! `x = 2 lambda - delta`, `y = 2 mu - delta`, `z = delta`. An even number is of
//! that shape unless it is `4^i (16 j + 6)`, and the lift back to `(lambda, mu,
//! delta)` is integral because `x`, `y`, `z` share a parity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{exact_sqrt_i128, is_prime, isqrt_u128};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// Closed-form criterion: false exactly when `n = 4^i (16 j + 6)`.
pub fn is_representable(n: &BigInt) -> Result<bool> {
    if !n.is_positive() {
        return Err(Error::NonPositive(n.clone()));
    }
    let four = BigInt::from(4);
    let mut m = n.clone();
    while (&m % &four).is_zero() {
        m /= &four;
    }
    Ok(m.mod_floor(&BigInt::from(16)) != BigInt::from(6))
}

/// Every `(lambda, mu, delta)` of norm `4n`, sorted lexicographically.
///
/// `delta` ranges over `|delta| <= sqrt(4n/10)` and, per `delta`, `x = 2 lambda -
/// delta` over `|x| <= sqrt(4n - 10 delta^2)`; `y` is then determined up to sign.
pub fn enumerate_solutions(n: u64) -> Vec<LatticeVector> {
    let target = 4 * n as i128;
    let delta_max = isqrt_u128((target / 10) as u128) as i128;
    let mut out = Vec::new();
    for delta in -delta_max..=delta_max {
        let rest = target - 10 * delta * delta;
        let x_max = isqrt_u128(rest as u128) as i128;
        for x in -x_max..=x_max {
            if (x - delta).rem_euclid(2) != 0 {
                continue;
            }
            let Some(y_abs) = exact_sqrt_i128(rest - x * x) else { continue };
            if (y_abs - delta).rem_euclid(2) != 0 {
                continue;
            }
            let ys: &[i128] = if y_abs == 0 { &[0] } else { &[-y_abs, y_abs] };
            for &y in ys {
                out.push(LatticeVector::new((x + delta) / 2, (y + delta) / 2, delta));
            }
        }
    }
    out.sort();
    out
}

/// Lifts a representation `x^2 + y^2 + 10 z^2 = 4n` to the lattice vector
/// `((x + z)/2, (y + z)/2, z)`.
pub fn parity_lift(x: &BigInt, y: &BigInt, z: &BigInt) -> Result<LatticeVector> {
    let total: BigInt = x * x + y * y + 10 * z * z;
    let same_parity = x.is_even() == z.is_even() && y.is_even() == z.is_even();
    if !same_parity || !total.is_positive() || !(&total % BigInt::from(4)).is_zero() {
        return Err(Error::NotARepresentation { x: x.clone(), y: y.clone(), z: z.clone() });
    }
    Ok(LatticeVector::new((x + z) / 2, (y + z) / 2, z.clone()))
}

/// `p = lambda^2 + mu^2` with `0 < lambda <= mu`, by search over `lambda <= sqrt(p/2)`.
pub fn two_squares(p: u64) -> Result<(u64, u64)> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::NotPrimeOneModFour(p));
    }
    let p128 = p as u128;
    let bound = isqrt_u128(p128 / 2);
    (1..=bound)
        .find_map(|l| {
            let rest = (p128 - l * l) as i128;
            exact_sqrt_i128(rest).map(|m| (l as u64, m as u64))
        })
        // Fermat: every such prime is a sum of two squares
        .ok_or(Error::NotPrimeOneModFour(p))
}

/// The first `count` primes `p = 1 mod 4`, each with the witness `(lambda, mu, 0)` of norm `4p`.
pub fn infinitude_scan(count: usize) -> Vec<(u64, LatticeVector)> {
    (5u64..)
        .step_by(4)
        .filter(|&p| is_prime(p))
        .take(count)
        .map(|p| {
            let (l, m) = two_squares(p).expect("p is prime and 1 mod 4");
            (p, LatticeVector::new(l, m, 0))
        })
        .collect()
}

/// Witnesses among primes `p <= max`.
pub fn prime_witnesses_up_to(max: u64) -> Vec<(u64, LatticeVector)> {
    (5u64..=max.max(4))
        .step_by(4)
        .filter(|&p| is_prime(p))
        .map(|p| {
            let (l, m) = two_squares(p).expect("p is prime and 1 mod 4");
            (p, LatticeVector::new(l, m, 0))
        })
        .collect()
}
