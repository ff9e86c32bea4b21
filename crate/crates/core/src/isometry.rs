//! The finite isometry group of `L20`, its orbits and canonical orbit labels.
//!
//! Matrices act on coordinate columns: `v -> M v`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, GRAM};

type Mat3 = [[i64; 3]; 3];

const IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
const MINUS_ID: Mat3 = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]];
/// Swaps `e` and `f`.
const RHO1: Mat3 = [[0, 1, 0], [1, 0, 0], [0, 0, 1]];
const RHO2: Mat3 = [[1, 0, -1], [0, -1, 0], [0, 0, -1]];

/// Upper bound on the closure size before generation is declared broken.
const CLOSURE_LIMIT: usize = 64;

pub const GROUP_ORDER: usize = 16;

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

fn det(a: &Mat3) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// A 3x3 integer matrix with `M^T G M = G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    matrix: Mat3,
}

impl Isometry {
    pub fn new(matrix: Mat3) -> Result<Self> {
        let preserved = mat_mul(&mat_mul(&transpose(&matrix), &GRAM), &matrix) == GRAM;
        if !preserved || det(&matrix).abs() != 1 {
            return Err(Error::NotAnIsometry(matrix));
        }
        Ok(Self { matrix })
    }

    pub fn identity() -> Self {
        Self { matrix: IDENTITY }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn det(&self) -> i64 {
        det(&self.matrix)
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { matrix: mat_mul(&self.matrix, &other.matrix) }
    }

    /// Inverse via the adjugate; the determinant is +-1.
    pub fn inverse(&self) -> Isometry {
        let a = &self.matrix;
        let d = self.det();
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
        let adj: Mat3 = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Isometry { matrix: adj.map(|row| row.map(|x| x * d)) }
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        let c = v.coords();
        let row = |i: usize| -> BigInt { (0..3).map(|j| BigInt::from(self.matrix[i][j]) * c[j]).sum() };
        LatticeVector { lambda: row(0), mu: row(1), delta: row(2) }
    }
}

/// `-id`, `rho1` and `rho2`, each validated against the Gram matrix.
pub fn generators() -> Result<Vec<Isometry>> {
    [MINUS_ID, RHO1, RHO2].into_iter().map(Isometry::new).collect()
}

#[derive(Clone, Debug)]
pub struct IsometryGroup {
    elements: Vec<Isometry>,
}

impl IsometryGroup {
    /// Closure of the generators under composition.
    pub fn generate() -> Result<Self> {
        let gens = generators()?;
        let mut seen: BTreeSet<Isometry> = BTreeSet::from([Isometry::identity()]);
        let mut frontier = vec![Isometry::identity()];
        while let Some(g) = frontier.pop() {
            for s in &gens {
                let h = Isometry::new(*g.compose(s).matrix())?;
                if seen.insert(h) {
                    if seen.len() > CLOSURE_LIMIT {
                        return Err(Error::ClosureOverflow(CLOSURE_LIMIT));
                    }
                    frontier.push(h);
                }
            }
        }
        Ok(Self { elements: seen.into_iter().collect() })
    }

    /// The group, generated once per process.
    pub fn get() -> &'static IsometryGroup {
        static GROUP: OnceLock<IsometryGroup> = OnceLock::new();
        GROUP.get_or_init(|| Self::generate().expect("isometry generators are valid"))
    }

    pub fn elements(&self) -> &[Isometry] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Isometry) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn orbit(&self, v: &LatticeVector) -> BTreeSet<LatticeVector> {
        self.elements.iter().map(|m| m.apply(v)).collect()
    }

    pub fn same_orbit(&self, v: &LatticeVector, w: &LatticeVector) -> bool {
        self.elements.iter().any(|m| m.apply(v) == *w)
    }

    /// Lexicographically smallest member of the orbit.
    pub fn canonical_rep(&self, v: &LatticeVector) -> LatticeVector {
        self.elements.iter().map(|m| m.apply(v)).min().expect("group is non-empty")
    }
}

pub fn orbit(v: &LatticeVector) -> BTreeSet<LatticeVector> {
    IsometryGroup::get().orbit(v)
}

pub fn same_orbit(v: &LatticeVector, w: &LatticeVector) -> bool {
    IsometryGroup::get().same_orbit(v, w)
}

pub fn canonical_rep(v: &LatticeVector) -> LatticeVector {
    IsometryGroup::get().canonical_rep(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::norm;

    fn v(l: i64, m: i64, d: i64) -> LatticeVector {
        LatticeVector::new(l, m, d)
    }

    #[test]
    fn generator_actions() {
        let [minus, rho1, rho2]: [Isometry; 3] = generators().unwrap().try_into().unwrap();
        assert_eq!(rho1.apply(&v(2, 7, -3)), v(7, 2, -3));
        assert_eq!(minus.apply(&v(1, 2, 3)), v(-1, -2, -3));
        assert_eq!(minus.compose(&rho2).apply(&v(1, 1, 1)), v(0, 1, 1));
    }

    #[test]
    fn transposed_generator_rejected() {
        assert!(Isometry::new(transpose(&RHO2)).is_err());
        assert!(Isometry::new([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).is_err());
    }

    #[test]
    fn group_axioms() {
        let g = IsometryGroup::generate().unwrap();
        assert_eq!(g.len(), GROUP_ORDER);
        assert!(g.contains(&Isometry::identity()));
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
            assert_eq!(a.compose(&a.inverse()), Isometry::identity());
            assert_eq!(a.det().abs(), 1);
            for b in g.elements() {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn orbit_of_h() {
        let o = orbit(&v(0, 0, 1));
        let expected: BTreeSet<_> = [
            v(0, 0, 1),
            v(1, 0, 1),
            v(0, 1, 1),
            v(1, 1, 1),
            v(0, 0, -1),
            v(-1, 0, -1),
            v(0, -1, -1),
            v(-1, -1, -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(o, expected);
        assert_eq!(canonical_rep(&v(0, 0, 1)), v(-1, -1, -1));
    }

    #[test]
    fn trivial_orbits() {
        assert_eq!(orbit(&LatticeVector::zero()).len(), 1);
        assert_eq!(canonical_rep(&LatticeVector::zero()), LatticeVector::zero());
        assert!(orbit(&v(1, 0, 0)).contains(&v(0, 1, 0)));
    }

    #[test]
    fn orbit_membership() {
        assert!(!same_orbit(&v(3, 6, 5), &v(5, 0, 5)));
        assert!(!same_orbit(&v(1, 1, 0), &v(1, 2, 0)));
        assert!(same_orbit(&v(1, 0, 1), &v(0, 0, 1)));
        assert!(same_orbit(&v(0, 0, 1), &v(1, 0, 1)));
    }

    #[test]
    fn orbit_sizes_divide_order_and_preserve_norm() {
        for l in -4..=4 {
            for m in -4..=4 {
                for d in -3..=3 {
                    let x = v(l, m, d);
                    let o = orbit(&x);
                    assert_eq!(GROUP_ORDER % o.len(), 0);
                    assert!(o.iter().all(|y| norm(y) == norm(&x)));
                    let c = canonical_rep(&x);
                    assert!(o.iter().all(|y| canonical_rep(y) == c));
                    assert_eq!(canonical_rep(&c), c);
                }
            }
        }
    }
}
