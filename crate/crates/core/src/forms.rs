//! Positive definite even binary lattices and their reduction.
//!
//! The triple `(a, b, c)` stands for the Gram matrix `[[4a, 2b], [2b, 4c]]`, i.e.
//! four times the quadratic form `a x^2 + b x y + c y^2` of discriminant
//! `b^2 - 4ac = -d`. Equivalence is proper (`SL2(Z)`) equivalence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Gram2;

/// 2x2 integer matrix, row-major.
pub type Mat2 = [[BigInt; 2]; 2];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenBinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl EvenBinaryForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = Self { a: a.into(), b: b.into(), c: c.into() };
        if !f.a.is_positive() || !f.discriminant().is_positive() {
            return Err(Error::NotPositiveDefinite { a: f.a, b: f.b, c: f.c });
        }
        Ok(f)
    }

    /// `d = 4ac - b^2`.
    pub fn discriminant(&self) -> BigInt {
        4 * &self.a * &self.c - &self.b * &self.b
    }

    pub fn gram(&self) -> Mat2 {
        [[4 * &self.a, 2 * &self.b], [2 * &self.b, 4 * &self.c]]
    }

    /// Value of `a x^2 + b x y + c y^2`.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// The form in the basis given by the columns of `t`, i.e. `t^T Gram t / 4`.
    pub fn transform(&self, t: &Mat2) -> EvenBinaryForm {
        let [[p, q], [r, s]] = t;
        EvenBinaryForm {
            a: self.eval(p, r),
            b: 2 * &self.a * p * q + &self.b * (p * s + q * r) + 2 * &self.c * r * s,
            c: self.eval(q, s),
        }
    }

    pub fn is_reduced(&self) -> bool {
        -&self.a <= self.b && self.b <= self.a && self.a <= self.c
    }
}

impl fmt::Display for EvenBinaryForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// A form with `-a <= b <= a <= c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm(EvenBinaryForm);

impl ReducedForm {
    pub fn new(f: EvenBinaryForm) -> Result<Self> {
        if !f.is_reduced() {
            return Err(Error::InvalidGram("form is not reduced"));
        }
        let ac = &f.a * &f.c;
        // b^2 <= ac <= d/3 follows from the reduced inequalities
        assert!(&f.b * &f.b <= ac && 3 * &ac <= f.discriminant(), "reduced form bound violated by {f}");
        Ok(Self(f))
    }

    pub fn form(&self) -> &EvenBinaryForm {
        &self.0
    }

    pub fn into_form(self) -> EvenBinaryForm {
        self.0
    }

    pub fn triple(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.0.a, &self.0.b, &self.0.c)
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(out)
    }
}

pub fn from_gram(g: &Gram2) -> EvenBinaryForm {
    let [[g11, g12], [_, g22]] = g.entries();
    EvenBinaryForm { a: g11 / 4, b: g12 / 2, c: g22 / 4 }
}

pub fn discriminant(f: &EvenBinaryForm) -> BigInt {
    f.discriminant()
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j]))
}

pub fn identity() -> Mat2 {
    [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]]
}

pub fn det2(t: &Mat2) -> BigInt {
    &t[0][0] * &t[1][1] - &t[0][1] * &t[1][0]
}

/// Gauss reduction. Returns the reduced form and `t` in `SL2(Z)` with
/// `t^T Gram(f) t = Gram(reduced)`.
pub fn reduce(f: &EvenBinaryForm) -> (ReducedForm, Mat2) {
    let mut g = f.clone();
    let mut t = identity();
    let swap: Mat2 = [[BigInt::zero(), -BigInt::one()], [BigInt::one(), BigInt::zero()]];
    loop {
        let two_a = 2 * &g.a;
        if g.b > g.a || g.b <= -&g.a {
            // k with b + 2ak in (-a, a]
            let k = (&g.a - &g.b).div_floor(&two_a);
            let step: Mat2 = [[BigInt::one(), k.clone()], [BigInt::zero(), BigInt::one()]];
            g = g.transform(&step);
            t = mat_mul(&t, &step);
        }
        if g.a > g.c {
            g = g.transform(&swap);
            t = mat_mul(&t, &swap);
            continue;
        }
        break;
    }
    (ReducedForm::new(g).expect("Gauss reduction ends in a reduced form"), t)
}

/// Proper equivalence: equal reduced forms, or one of the two exceptional
/// pairs `(a, a, c) ~ (a, -a, c)` and `(a, b, a) ~ (a, -b, a)`.
pub fn equivalent(f1: &EvenBinaryForm, f2: &EvenBinaryForm) -> bool {
    let (r1, _) = reduce(f1);
    let (r2, _) = reduce(f2);
    let (x, y) = (r1.form(), r2.form());
    if x == y {
        return true;
    }
    let mirrored = x.a == y.a && x.c == y.c && x.b == -&y.b;
    mirrored && (x.b.abs() == x.a || x.a == x.c)
}

/// Unique label of the equivalence class: the reduced form with `b >= 0`
/// whenever `|b| = a` or `a = c`.
pub fn canonical(f: &EvenBinaryForm) -> ReducedForm {
    let (r, _) = reduce(f);
    let mut g = r.into_form();
    if g.b.is_negative() && (-&g.b == g.a || g.a == g.c) {
        g.b = -g.b;
    }
    ReducedForm::new(g).expect("sign flip keeps the form reduced")
}

/// Label of the lattice up to isometry, i.e. up to `GL2(Z)`: the canonical form
/// with `b >= 0`. A complement lattice carries no orientation, so this is the
/// label transcendental lattices are reported under.
pub fn lattice_class(f: &EvenBinaryForm) -> ReducedForm {
    let mut g = canonical(f).into_form();
    g.b = g.b.abs();
    ReducedForm::new(g).expect("reflection keeps the form reduced")
}

/// Isometry of the underlying lattices: proper equivalence to `f2` or to its mirror.
pub fn lattice_equivalent(f1: &EvenBinaryForm, f2: &EvenBinaryForm) -> bool {
    let mirror = EvenBinaryForm { a: f2.a.clone(), b: -&f2.b, c: f2.c.clone() };
    equivalent(f1, f2) || equivalent(f1, &mirror)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> EvenBinaryForm {
        EvenBinaryForm::new(a, b, c).unwrap()
    }

    fn mat_t(t: &Mat2) -> Mat2 {
        [[t[0][0].clone(), t[1][0].clone()], [t[0][1].clone(), t[1][1].clone()]]
    }

    #[test]
    fn gram_encoding() {
        let g = Gram2::new(8, -24, 132).unwrap();
        assert_eq!(from_gram(&g), form(2, -12, 33));
        assert_eq!(from_gram(&Gram2::new(4, 0, 40).unwrap()), form(1, 0, 10));
        assert!(Gram2::new(4, 1, 4).is_err());
    }

    #[test]
    fn reduce_examples() {
        let f = form(2, -12, 33);
        let (r, t) = reduce(&f);
        assert_eq!(r.form(), &form(2, 0, 15));
        assert_eq!(det2(&t), BigInt::one());
        assert_eq!(mat_mul(&mat_mul(&mat_t(&t), &f.gram()), &t), r.form().gram());
        assert_eq!(reduce(&form(1, 0, 10)).0.form(), &form(1, 0, 10));
        assert_eq!(reduce(&form(9, 6, 11)).0.form(), &form(9, 6, 11));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&form(1, 1, 2), &form(1, -1, 2)));
        assert!(equivalent(&form(2, 0, 15), &form(2, 0, 15)));
        assert!(!equivalent(&form(1, 0, 10), &form(2, 2, 3)));
        assert!(equivalent(&form(3, 2, 3), &form(3, -2, 3)));
        assert!(!equivalent(&form(2, 1, 3), &form(2, -1, 3)));
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&form(2, 0, 15)), BigInt::from(120));
        assert_eq!(discriminant(&form(1, 0, 10)), BigInt::from(40));
        assert_eq!(discriminant(&form(2, 2, 3)), BigInt::from(20));
    }

    #[test]
    fn canonical_labels() {
        assert_eq!(canonical(&form(1, -1, 2)).form(), &form(1, 1, 2));
        assert_eq!(canonical(&form(2, 0, 15)).form(), &form(2, 0, 15));
        assert_eq!(canonical(&EvenBinaryForm { a: 5.into(), b: (-5).into(), c: 5.into() }).form(), &form(5, 5, 5));
        assert_eq!(canonical(&form(4, -3, 4)).form(), &form(4, 3, 4));
    }

    #[test]
    fn lattice_classes() {
        assert_eq!(lattice_class(&form(9, -6, 11)).form(), &form(9, 6, 11));
        assert!(!equivalent(&form(9, -6, 11), &form(9, 6, 11)));
        assert!(lattice_equivalent(&form(9, -6, 11), &form(9, 6, 11)));
        assert!(!lattice_equivalent(&form(1, 0, 10), &form(2, 2, 3)));
    }

    #[test]
    fn not_positive_definite() {
        assert!(EvenBinaryForm::new(1, 2, 1).is_err());
        assert!(EvenBinaryForm::new(0, 0, 1).is_err());
        assert!(EvenBinaryForm::new(-1, 0, -1).is_err());
    }
}
