//! Dimension and equation counts for models of non-primitive polarizations
//! obtained through Veronese embeddings.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::analysis::quadric_count;
use crate::arith::binomial;
use crate::error::{Error, Result};

/// `m` with the degree-`d` Veronese map `P^n -> P^m`, i.e. `C(n+d, d) - 1`.
pub fn veronese_target_dim(n: u64, d: u64) -> BigInt {
    binomial((n + d) as i64, d as i64) - 1
}

/// Independent quadrics vanishing on the degree-2 Veronese image of `P^n`:
/// all quadrics in `C(n+2, 2)` variables minus the quartics on `P^n`.
pub fn quadrics_on_veronese2(n: u64) -> BigInt {
    let coords = binomial(n as i64 + 2, 2);
    let coords = i64::try_from(coords).expect("coordinate count fits in i64");
    binomial(coords + 1, 2) - binomial(n as i64 + 4, 4)
}

/// Model of the doubled polarization `L = 2M` with `M^2 = 4n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledModel {
    /// `P^(2n+1)` containing the model of `M`.
    pub ambient_before: BigInt,
    /// Target of `nu_2` on that space, `2n^2 + 5n + 2`.
    pub veronese_ambient: BigInt,
    /// One hyperplane per defining quadric of the `M`-model.
    pub hyperplanes: BigInt,
    /// `8n + 1`.
    pub ambient_after: BigInt,
    /// Quadrics cutting out `nu_2(P^(2n+1))`, restricted to the `8n+1`-space.
    pub image_quadrics: BigInt,
}

pub fn doubled_model_dims(n: u64) -> Result<DoubledModel> {
    if n == 0 {
        return Err(Error::NonPositive(BigInt::zero()));
    }
    let hyperplanes = quadric_count(n).count;
    if hyperplanes.is_zero() {
        return Err(Error::NoQuadrics(n));
    }
    let ambient_before = BigInt::from(2 * n + 1);
    let veronese_ambient = veronese_target_dim(2 * n + 1, 2);
    let ambient_after = &veronese_ambient - &hyperplanes;
    // p_a of 2M: (16n)/2 + 1
    assert_eq!(ambient_after, BigInt::from(8 * n as u128 + 1), "doubled model dimension");
    let image_quadrics = quadrics_on_veronese2(2 * n + 1);
    Ok(DoubledModel { ambient_before, veronese_ambient, hyperplanes, ambient_after, image_quadrics })
}

/// Model of `L = rM` with `M^2 = 4` (the quartic in `P^3`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledQuarticModel {
    pub veronese_ambient: BigInt,
    /// Hyperplanes `q_i f_4 = 0`, one per monomial `q_i` of degree `r - 4`.
    pub hyperplanes: BigInt,
    /// `2r^2 + 1`.
    pub ambient_after: BigInt,
    pub note: Option<&'static str>,
}

pub fn scaled_quartic_dims(r: u64) -> Result<ScaledQuarticModel> {
    if r < 3 {
        return Err(Error::DegenerateScale(r));
    }
    let veronese_ambient = veronese_target_dim(3, r);
    let hyperplanes = binomial(r as i64 - 1, 3);
    let ambient_after = &veronese_ambient - &hyperplanes;
    assert_eq!(ambient_after, 2 * BigInt::from(r) * BigInt::from(r) + 1, "scaled quartic dimension");
    let note = (r == 3).then_some(
        "no hyperplanes: the quartic times the 10 quadratic monomials gives 10 sextics, \
         which become 10 quadrics in P^19 under the cubic Veronese map",
    );
    Ok(ScaledQuarticModel { veronese_ambient, hyperplanes, ambient_after, note })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn target_dims() {
        assert_eq!(veronese_target_dim(3, 2), b(9));
        assert_eq!(veronese_target_dim(3, 5), b(55));
        for n in 1..20 {
            assert_eq!(veronese_target_dim(n, 1), b(n as i64));
        }
    }

    #[test]
    fn veronese_quadrics() {
        assert_eq!(quadrics_on_veronese2(5), b(105));
        assert_eq!(quadrics_on_veronese2(3), b(20));
        assert_eq!(quadrics_on_veronese2(1), b(1));
    }

    #[test]
    fn doubled() {
        let dims = |n| {
            let m = doubled_model_dims(n).unwrap();
            (m.ambient_before, m.veronese_ambient, m.hyperplanes, m.ambient_after)
        };
        assert_eq!(dims(4), (b(9), b(54), b(21), b(33)));
        assert_eq!(dims(2), (b(5), b(20), b(3), b(17)));
        assert_eq!(dims(3), (b(7), b(35), b(10), b(25)));
        assert_eq!(doubled_model_dims(2).unwrap().image_quadrics, b(105));
        assert_eq!(doubled_model_dims(1), Err(Error::NoQuadrics(1)));
    }

    #[test]
    fn scaled() {
        let dims = |r| {
            let m = scaled_quartic_dims(r).unwrap();
            (m.veronese_ambient, m.hyperplanes, m.ambient_after)
        };
        assert_eq!(dims(3), (b(19), b(0), b(19)));
        assert_eq!(dims(5), (b(55), b(4), b(51)));
        assert_eq!(dims(4), (b(34), b(1), b(33)));
        assert!(scaled_quartic_dims(3).unwrap().note.is_some());
        assert_eq!(scaled_quartic_dims(2), Err(Error::DegenerateScale(2)));
    }

    #[test]
    fn quartic_identity_splits() {
        for n in 1..=100u64 {
            let total = binomial(i64::try_from(binomial(n as i64 + 2, 2)).unwrap() + 1, 2);
            assert_eq!(total, quadrics_on_veronese2(n) + binomial(n as i64 + 4, 4));
        }
    }
}
