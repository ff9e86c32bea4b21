//! Exact arithmetic in the rank-3 invariant lattice `L20`.
//!
//! Coordinates are taken in the ordered basis `(e, f, h)` with Gram matrix
//! `[[4,0,-2],[0,4,-2],[-2,-2,12]]`. Every norm is a multiple of 4 and every
//! inner product is even.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{gcd3, xgcd};
use crate::error::{Error, Result};

/// Gram matrix of `L20` in the basis `(e, f, h)`.
pub const GRAM: [[i64; 3]; 3] = [[4, 0, -2], [0, 4, -2], [-2, -2, 12]];

pub const GRAM_DET: i64 = 160;

/// A vector `lambda*e + mu*f + delta*h`.
///
/// The derived ordering is lexicographic on `(lambda, mu, delta)`, which is what
/// canonical orbit labels rely on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub lambda: BigInt,
    pub mu: BigInt,
    pub delta: BigInt,
}

impl LatticeVector {
    pub fn new(lambda: impl Into<BigInt>, mu: impl Into<BigInt>, delta: impl Into<BigInt>) -> Self {
        Self { lambda: lambda.into(), mu: mu.into(), delta: delta.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn e() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn f() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn h() -> Self {
        Self::new(0, 0, 1)
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.lambda, &self.mu, &self.delta]
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero() && self.mu.is_zero() && self.delta.is_zero()
    }

    pub fn scale(&self, r: &BigInt) -> Self {
        Self { lambda: &self.lambda * r, mu: &self.mu * r, delta: &self.delta * r }
    }

    /// `G * v` as a coordinate row.
    pub fn gram_row(&self) -> [BigInt; 3] {
        let c = self.coords();
        std::array::from_fn(|i| (0..3).map(|j| BigInt::from(GRAM[i][j]) * c[j]).sum())
    }

    /// Coordinates as `i64`, when they fit.
    pub fn to_i64(&self) -> Option<[i64; 3]> {
        use num_traits::ToPrimitive;
        Some([self.lambda.to_i64()?, self.mu.to_i64()?, self.delta.to_i64()?])
    }
}

impl fmt::Display for LatticeVector {
    /// Renders as a combination of `e`, `f`, `h`, e.g. `3e+f-2h`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (coef, name) in self.coords().into_iter().zip(["e", "f", "h"]) {
            if coef.is_zero() {
                continue;
            }
            let sign = if coef.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = coef.abs();
            if mag == BigInt::from(1) {
                write!(out, "{sign}{name}")?;
            } else {
                write!(out, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, w: &LatticeVector) -> LatticeVector {
        LatticeVector { lambda: &self.lambda + &w.lambda, mu: &self.mu + &w.mu, delta: &self.delta + &w.delta }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, w: &LatticeVector) -> LatticeVector {
        LatticeVector { lambda: &self.lambda - &w.lambda, mu: &self.mu - &w.mu, delta: &self.delta - &w.delta }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { lambda: -&self.lambda, mu: -&self.mu, delta: -&self.delta }
    }
}

impl Mul<&LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: &LatticeVector) -> LatticeVector {
        v.scale(&BigInt::from(self))
    }
}

/// Symmetric 2x2 integer Gram matrix of a rank-2 sublattice of `L20`.
///
/// Construction checks the parity conditions every sublattice of `L20` obeys
/// (diagonal divisible by 4, off-diagonal even) and positive definiteness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram2 {
    entries: [[BigInt; 2]; 2],
}

impl Gram2 {
    pub fn new(g11: impl Into<BigInt>, g12: impl Into<BigInt>, g22: impl Into<BigInt>) -> Result<Self> {
        let (g11, g12, g22) = (g11.into(), g12.into(), g22.into());
        let four = BigInt::from(4);
        if !(&g11 % &four).is_zero() || !(&g22 % &four).is_zero() {
            return Err(Error::InvalidGram("diagonal entries must be divisible by 4"));
        }
        if g12.is_odd() {
            return Err(Error::InvalidGram("off-diagonal entry must be even"));
        }
        if !g11.is_positive() || &g11 * &g22 - &g12 * &g12 <= BigInt::zero() {
            return Err(Error::InvalidGram("matrix is not positive definite"));
        }
        Ok(Self { entries: [[g11, g12.clone()], [g12, g22]] })
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.entries
    }

    pub fn det(&self) -> BigInt {
        let [[a, b], [_, c]] = &self.entries;
        a * c - b * b
    }
}

/// `v^T G w`.
pub fn inner(v: &LatticeVector, w: &LatticeVector) -> BigInt {
    let row = v.gram_row();
    let c = w.coords();
    &row[0] * c[0] + &row[1] * c[1] + &row[2] * c[2]
}

/// `(2 lambda - delta)^2 + (2 mu - delta)^2 + 10 delta^2`.
pub fn norm_closed_form(v: &LatticeVector) -> BigInt {
    let x: BigInt = 2 * &v.lambda - &v.delta;
    let y: BigInt = 2 * &v.mu - &v.delta;
    &x * &x + &y * &y + 10 * &v.delta * &v.delta
}

pub fn norm(v: &LatticeVector) -> BigInt {
    let n = inner(v, v);
    debug_assert_eq!(n, norm_closed_form(v), "Gram norm disagrees with closed form at {v:?}");
    n
}

pub fn is_primitive(v: &LatticeVector) -> Result<bool> {
    Ok(divisibility(v)?.0 == BigInt::from(1))
}

/// Splits `v = r * v0` with `r > 0` and `v0` primitive.
pub fn divisibility(v: &LatticeVector) -> Result<(BigInt, LatticeVector)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let r = gcd3(&v.lambda, &v.mu, &v.delta);
    let v0 = LatticeVector { lambda: &v.lambda / &r, mu: &v.mu / &r, delta: &v.delta / &r };
    Ok((r, v0))
}

/// A basis of the saturated rank-2 lattice `{x : <x, v> = 0}` and its Gram matrix.
pub fn orthogonal_complement(v: &LatticeVector) -> Result<([LatticeVector; 2], Gram2)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let row = v.gram_row();
    let g = gcd3(&row[0], &row[1], &row[2]);
    let [g1, g2, g3] = row.map(|x| x / &g);
    let basis = integer_kernel(&g1, &g2, &g3);
    let gram = Gram2::new(
        inner(&basis[0], &basis[0]),
        inner(&basis[0], &basis[1]),
        inner(&basis[1], &basis[1]),
    )?;
    Ok((basis, gram))
}

/// Basis of the kernel of the primitive row `(g1, g2, g3)` over the integers.
///
/// With `g' = gcd(g1, g2) = p*g1 + q*g2` the vectors `(g2/g', -g1/g', 0)` and
/// `(g3*p, g3*q, -g')` span the kernel; their cross product is `(g1, g2, g3)`,
/// which is primitive, so the span is saturated.
fn integer_kernel(g1: &BigInt, g2: &BigInt, g3: &BigInt) -> [LatticeVector; 2] {
    let (gp, p, q) = xgcd(g1, g2);
    if gp.is_zero() {
        // row is (0, 0, +-1)
        return [LatticeVector::e(), LatticeVector::f()];
    }
    let u1 = LatticeVector::new(g2 / &gp, -(g1 / &gp), 0);
    let u2 = LatticeVector::new(g3 * p, g3 * q, -gp);
    [u1, u2]
}

/// Cross product of coordinate vectors; used to certify saturation.
pub fn cross(u: &LatticeVector, w: &LatticeVector) -> [BigInt; 3] {
    [
        &u.mu * &w.delta - &u.delta * &w.mu,
        &u.delta * &w.lambda - &u.lambda * &w.delta,
        &u.lambda * &w.mu - &u.mu * &w.lambda,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::exact_sqrt;

    fn v(l: i64, m: i64, d: i64) -> LatticeVector {
        LatticeVector::new(l, m, d)
    }

    #[test]
    fn gram_entries_and_det() {
        assert_eq!(inner(&LatticeVector::e(), &LatticeVector::h()), BigInt::from(-2));
        let g = GRAM;
        let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        assert_eq!(det, GRAM_DET);
        assert!(g[0][0] > 0 && g[0][0] * g[1][1] - g[0][1] * g[1][0] > 0);
    }

    #[test]
    fn inner_products() {
        let one = v(1, 1, 1);
        assert_eq!(inner(&one, &one), norm(&one));
        let u1 = &LatticeVector::f() - &LatticeVector::e();
        let u2 = &LatticeVector::h() + &(6 * &LatticeVector::e());
        assert_eq!(inner(&u1, &u2), BigInt::from(-24));
    }

    #[test]
    fn norms() {
        assert_eq!(norm(&v(0, 0, 1)), BigInt::from(12));
        assert_eq!(norm(&v(1, 1, 0)), BigInt::from(8));
        assert_eq!(norm(&v(0, 0, 0)), BigInt::from(0));
    }

    #[test]
    fn norm_identity_exhaustive() {
        for l in -20..=20 {
            for m in -20..=20 {
                for d in -20..=20 {
                    let x = v(l, m, d);
                    let n = inner(&x, &x);
                    assert_eq!(n, norm_closed_form(&x));
                    assert!((&n % BigInt::from(4)).is_zero());
                }
            }
        }
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&v(0, 0, 1)).unwrap());
        assert!(!is_primitive(&v(2, 0, 0)).unwrap());
        assert!(is_primitive(&v(4, 6, 1)).unwrap());
        assert_eq!(is_primitive(&v(0, 0, 0)), Err(Error::ZeroVector));
    }

    #[test]
    fn divisibility_splits() {
        assert_eq!(divisibility(&v(2, 0, 0)).unwrap(), (BigInt::from(2), v(1, 0, 0)));
        assert_eq!(divisibility(&v(3, 6, 0)).unwrap(), (BigInt::from(3), v(1, 2, 0)));
        assert_eq!(divisibility(&v(1, 1, 1)).unwrap(), (BigInt::from(1), v(1, 1, 1)));
        assert_eq!(divisibility(&v(-4, 0, -2)).unwrap(), (BigInt::from(2), v(-2, 0, -1)));
        assert!(divisibility(&LatticeVector::zero()).is_err());
    }

    #[test]
    fn complement_of_h() {
        let (basis, gram) = orthogonal_complement(&v(0, 0, 1)).unwrap();
        for u in &basis {
            assert!(inner(u, &v(0, 0, 1)).is_zero());
        }
        // same lattice as span(f - e, h + 6e): both bases have unimodular change of basis
        assert_eq!(gram.det(), BigInt::from(8 * 132 - 24 * 24));
        let known = [v(-1, 1, 0), v(6, 0, 1)];
        let c = cross(&basis[0], &basis[1]);
        let cp = cross(&known[0], &known[1]);
        assert!(c == cp || c == cp.clone().map(|x| -x));
    }

    #[test]
    fn complement_of_e() {
        let e = LatticeVector::e();
        let (basis, gram) = orthogonal_complement(&e).unwrap();
        for u in &basis {
            assert!(inner(u, &e).is_zero());
        }
        assert!(gram.det() > BigInt::zero());
    }

    #[test]
    fn complement_of_e_plus_2f() {
        let (_, gram) = orthogonal_complement(&v(1, 2, 0)).unwrap();
        // diag(20, 40) has determinant 800
        assert_eq!(gram.det(), BigInt::from(800));
    }

    #[test]
    fn complement_index_identity() {
        // det(gram) * norm(v) = 160 t^2 for every v of norm <= 400
        for l in -12i64..=12 {
            for m in -12i64..=12 {
                for d in -7i64..=7 {
                    let x = v(l, m, d);
                    if x.is_zero() || norm(&x) > BigInt::from(400) {
                        continue;
                    }
                    let (basis, gram) = orthogonal_complement(&x).unwrap();
                    assert!(inner(&basis[0], &x).is_zero() && inner(&basis[1], &x).is_zero());
                    let row = x.gram_row();
                    let g = gcd3(&row[0], &row[1], &row[2]);
                    let c = cross(&basis[0], &basis[1]);
                    let prim = row.map(|r| r / &g);
                    assert!(c == prim || c == prim.clone().map(|t| -t), "not saturated at {x:?}");
                    let lhs = gram.det() * norm(&x);
                    assert!((&lhs % BigInt::from(160)).is_zero());
                    assert!(exact_sqrt(&(lhs / 160)).is_some(), "index not integral at {x:?}");
                }
            }
        }
    }

    #[test]
    fn gram2_invariants() {
        assert!(Gram2::new(4, 1, 4).is_err());
        assert!(Gram2::new(6, 0, 4).is_err());
        assert!(Gram2::new(4, 4, 4).is_err());
        assert!(Gram2::new(8, -24, 132).is_ok());
    }

    #[test]
    fn display() {
        assert_eq!(v(3, 1, -2).to_string(), "3e+f-2h");
        assert_eq!(v(0, -1, 1).to_string(), "-f+h");
        assert_eq!(v(0, 0, 0).to_string(), "0");
    }
}
