//! The per-degree pipeline: solution vectors, isometry orbits, transcendental
//! lattices, lattice indices, quadric counts and the Diophantine checks behind
//! ampleness, base-point-freeness, non-hyperellipticity and quadric generation.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{binomial, exact_sqrt, isqrt};
use crate::error::{Error, Result};
use crate::forms::{from_gram, lattice_class, EvenBinaryForm, ReducedForm};
use crate::isometry::IsometryGroup;
use crate::lattice::{divisibility, norm, orthogonal_complement, LatticeVector};
use crate::representability::enumerate_solutions;

/// One isometry orbit of norm-`4n` vectors together with its transcendental lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    pub canonical: LatticeVector,
    pub orbit_size: usize,
    pub divisibility: BigInt,
    pub primitive_root: LatticeVector,
    /// Complement Gram matrix of `canonical` before reduction.
    pub tx_unreduced: EvenBinaryForm,
    pub tx: ReducedForm,
    pub discriminant: BigInt,
    /// `160 n / d`.
    pub index_squared: BigInt,
    pub index: BigInt,
}

/// `dim S^2 H^0(L)` minus `dim H^0(2L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricCount {
    pub ambient_quadrics: BigInt,
    pub sections_of_2l: BigInt,
    pub count: BigInt,
}

/// The Diophantine conditions `target = n alpha^2 d m` for one transcendental lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityEntry {
    pub tx: ReducedForm,
    pub discriminant: BigInt,
    pub n_divides_10: bool,
    pub div1_solvable: bool,
    pub n_divides_40: bool,
    pub div2_solvable: bool,
    pub n_divides_90: bool,
    pub quadrics_eq_solvable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FeasibilityChecklist {
    pub classes: Vec<FeasibilityEntry>,
}

impl FeasibilityChecklist {
    pub fn div1(&self) -> bool {
        self.classes.iter().any(|c| c.n_divides_10 && c.div1_solvable)
    }

    pub fn div2(&self) -> bool {
        self.classes.iter().any(|c| c.n_divides_40 && c.div2_solvable)
    }

    pub fn eq90(&self) -> bool {
        self.classes.iter().any(|c| c.n_divides_90 && c.quadrics_eq_solvable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationReport {
    pub n: u64,
    pub l_squared: BigInt,
    pub representable: bool,
    pub solution_count: usize,
    pub orbits: Vec<OrbitClass>,
    pub tx_classes: Vec<ReducedForm>,
    pub quadric_count: QuadricCount,
    pub ambient_dim: BigInt,
    pub feasibility: FeasibilityChecklist,
}

impl PolarizationReport {
    /// Degree 4 models are quartic surfaces in P^3; the count of quadrics through
    /// them is 0, not the 1 printed in the published table.
    pub fn footnote(&self) -> Option<&'static str> {
        (self.n == 1).then_some("L^2 = 4: the model is a quartic in P^3, cut out by no quadrics; the formula gives 0")
    }

    pub fn orbit_of(&self, v: &LatticeVector) -> Option<&OrbitClass> {
        let c = IsometryGroup::get().canonical_rep(v);
        self.orbits.iter().find(|o| o.canonical == c)
    }
}

pub fn quadric_count(n: u64) -> QuadricCount {
    let n_big = BigInt::from(n);
    let ambient_quadrics = binomial(2 * n as i64 + 3, 2);
    let sections_of_2l = 2 + 8 * &n_big;
    let count = &ambient_quadrics - &sections_of_2l;
    debug_assert_eq!(count, 2 * &n_big * &n_big - 3 * &n_big + 1);
    QuadricCount { ambient_quadrics, sections_of_2l, count }
}

/// `I` with `I^2 = 160 n / d`; anything but a positive perfect square is an anomaly.
pub fn index_from(n: &BigInt, d: &BigInt) -> Result<BigInt> {
    let anomaly = || Error::IndexAnomaly { n: n.clone(), d: d.clone() };
    if d.is_zero() {
        return Err(anomaly());
    }
    let scaled: BigInt = 160 * n;
    let (q, r) = scaled.div_rem(d);
    if !r.is_zero() || q <= BigInt::zero() {
        return Err(anomaly());
    }
    exact_sqrt(&q).ok_or_else(anomaly)
}

/// Whether `target = n alpha^2 d m` has a solution in positive integers `alpha`, `m`.
pub fn div_feasible(target: &BigInt, n: &BigInt, d: &BigInt) -> bool {
    let base = n * d;
    if base <= BigInt::zero() {
        return false;
    }
    let mut alpha = BigInt::one();
    let bound = isqrt(target);
    while alpha <= bound {
        let step: BigInt = &base * &alpha * &alpha;
        if (target % &step).is_zero() {
            return true;
        }
        alpha += 1;
    }
    false
}

pub fn scale_embedding(v: &LatticeVector, r: u64) -> LatticeVector {
    v.scale(&BigInt::from(r))
}

/// Transcendental lattice `v^perp`, labelled by its isometry class, together with
/// the unreduced complement form it came from.
pub fn transcendental_lattice(v: &LatticeVector) -> Result<(EvenBinaryForm, ReducedForm)> {
    let (_, gram) = orthogonal_complement(v)?;
    let raw = from_gram(&gram);
    let tx = lattice_class(&raw);
    Ok((raw, tx))
}

fn orbit_class(n: &BigInt, canonical_rep: LatticeVector, orbit_size: usize) -> Result<OrbitClass> {
    let (r, root) = divisibility(&canonical_rep)?;
    let (raw, tx) = transcendental_lattice(&canonical_rep)?;
    let d = tx.form().discriminant();
    let index = index_from(n, &d)?;
    // the complement index t with t^2 = n d / 10 must be integral as well
    let nd = n * &d;
    if !(&nd % 10u32).is_zero() || exact_sqrt(&(&nd / 10u32)).is_none() {
        return Err(Error::IndexAnomaly { n: n.clone(), d });
    }
    Ok(OrbitClass {
        canonical: canonical_rep,
        orbit_size,
        divisibility: r,
        primitive_root: root,
        tx_unreduced: raw,
        tx,
        discriminant: d,
        index_squared: &index * &index,
        index,
    })
}

fn feasibility_entry(n: u64, tx: &ReducedForm) -> FeasibilityEntry {
    let d = tx.form().discriminant();
    let nb = BigInt::from(n);
    let check = |t: u64| (t.is_multiple_of(n), div_feasible(&BigInt::from(t), &nb, &d));
    let (n_divides_10, div1_solvable) = check(10);
    let (n_divides_40, div2_solvable) = check(40);
    let (n_divides_90, quadrics_eq_solvable) = check(90);
    FeasibilityEntry {
        tx: tx.clone(),
        discriminant: d,
        n_divides_10,
        div1_solvable,
        n_divides_40,
        div2_solvable,
        n_divides_90,
        quadrics_eq_solvable,
    }
}

/// Full classification of degree `4n` polarizations.
///
/// Orbits are sorted by canonical representative; `T_X` is computed from that
/// representative only.
pub fn classify(n: u64) -> Result<PolarizationReport> {
    if n == 0 {
        return Err(Error::NonPositive(BigInt::zero()));
    }
    let nb = BigInt::from(n);
    let group = IsometryGroup::get();
    let solutions = enumerate_solutions(n);
    let mut sizes: BTreeMap<LatticeVector, usize> = BTreeMap::new();
    for s in &solutions {
        *sizes.entry(group.canonical_rep(s)).or_default() += 1;
    }
    let orbits = sizes
        .into_iter()
        .map(|(rep, size)| orbit_class(&nb, rep, size))
        .collect::<Result<Vec<_>>>()?;
    let tx_classes: Vec<ReducedForm> = orbits.iter().map(|o| o.tx.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let feasibility = FeasibilityChecklist { classes: tx_classes.iter().map(|t| feasibility_entry(n, t)).collect() };
    Ok(PolarizationReport {
        n,
        l_squared: 4 * &nb,
        representable: !orbits.is_empty(),
        solution_count: solutions.len(),
        orbits,
        tx_classes,
        quadric_count: quadric_count(n),
        ambient_dim: 2 * &nb + 1,
        feasibility,
    })
}

fn run_pooled<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(k) if k > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool with a positive thread count")
            .install(job),
        _ => job(),
    }
}

/// Classifies every `n` in `range`, in ascending order, stopping at the first
/// anomaly. `threads = Some(1)` runs sequentially, `None` uses the global pool.
pub fn classify_many(range: RangeInclusive<u64>, threads: Option<usize>) -> Result<Vec<PolarizationReport>> {
    if threads == Some(1) {
        return range.map(classify).collect();
    }
    run_pooled(threads, || range.into_par_iter().map(classify).collect())
}

/// Like [`classify_many`] but keeps going past anomalies; results stay in ascending `n`.
pub fn classify_each(range: RangeInclusive<u64>, threads: Option<usize>) -> Vec<(u64, Result<PolarizationReport>)> {
    if threads == Some(1) {
        return range.map(|n| (n, classify(n))).collect();
    }
    run_pooled(threads, || range.into_par_iter().map(|n| (n, classify(n))).collect())
}

/// How one obstruction from the projective-model argument is disposed of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `n` does not divide the target, so the equation cannot hold.
    NotApplicable,
    /// `n` divides the target but `target = n alpha^2 d m` has no solution.
    Infeasible,
    /// `L = 2M`, and a genus-one curve `E` with `E.M = 1` cannot exist.
    ExcludedByDoubling,
    /// Degrees 4 and 8, and the Kondo lattice in degree 40, are settled by earlier
    /// work on the maximal groups containing M20.
    KnownFromPriorWork,
}

impl Obstruction {
    pub fn label(self) -> &'static str {
        match self {
            Obstruction::NotApplicable => "n does not divide target",
            Obstruction::Infeasible => "infeasible",
            Obstruction::ExcludedByDoubling => "excluded: L = 2M",
            Obstruction::KnownFromPriorWork => "known from prior work",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub tx: ReducedForm,
    pub base_point_free: Obstruction,
    pub hyperelliptic: Obstruction,
    pub quadric_generation: Obstruction,
    /// `(2B + Gamma)^2 = 10` never equals `4n`.
    pub genus_two_branch_excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelVerdict {
    pub n: u64,
    pub classes: Vec<ClassVerdict>,
}

impl ModelVerdict {
    pub fn summary(&self) -> &'static str {
        "embedding; quadrics only"
    }
}

fn is_prior_work(n: u64, tx: &ReducedForm) -> bool {
    let kondo = EvenBinaryForm { a: 1.into(), b: 0.into(), c: 1.into() };
    n == 1 || n == 2 || (n == 10 && tx.form() == &kondo)
}

/// Checks the arithmetic behind ampleness, base-point-freeness, non-hyperellipticity
/// and generation by quadrics for every transcendental lattice in `report`.
///
/// Any obstruction that is arithmetically open and not covered by an exclusion is
/// returned as [`Error::Discrepancy`].
pub fn model_verdict(report: &PolarizationReport) -> Result<ModelVerdict> {
    let n = report.n;
    if !report.representable {
        return Err(Error::Discrepancy { n, what: "no embedding to judge".into() });
    }
    let mut classes = Vec::new();
    for entry in &report.feasibility.classes {
        let tx = &entry.tx;
        // every orbit with this T_X is a multiple of 2 when L = 2M is claimed
        let doubled = report.orbits.iter().filter(|o| &o.tx == tx).all(|o| o.divisibility.is_even());
        let settle = |divides: bool, solvable: bool, doubling_applies: bool, what: &str| -> Result<Obstruction> {
            if !divides {
                Ok(Obstruction::NotApplicable)
            } else if !solvable {
                Ok(Obstruction::Infeasible)
            } else if doubling_applies {
                Ok(Obstruction::ExcludedByDoubling)
            } else if is_prior_work(n, tx) {
                Ok(Obstruction::KnownFromPriorWork)
            } else {
                Err(Error::Discrepancy { n, what: format!("{what} obstruction solvable for T_X = {tx}") })
            }
        };
        let base_point_free = settle(entry.n_divides_10, entry.div1_solvable, false, "fixed-part")?;
        let hyperelliptic = settle(
            entry.n_divides_40,
            entry.div2_solvable,
            matches!(n, 4 | 8 | 20 | 40) && doubled,
            "hyperelliptic",
        )?;
        let quadric_generation = settle(entry.n_divides_90, entry.quadrics_eq_solvable, false, "cubic-genus-one")?;
        let genus_two_branch_excluded = BigInt::from(10) != report.l_squared;
        if !genus_two_branch_excluded {
            return Err(Error::Discrepancy { n, what: "genus-two branch (2B+Gamma)^2 = 4n".into() });
        }
        classes.push(ClassVerdict {
            tx: tx.clone(),
            base_point_free,
            hyperelliptic,
            quadric_generation,
            genus_two_branch_excluded,
        });
    }
    Ok(ModelVerdict { n, classes })
}

/// Sanity checks a report against its own invariants; returns the violations.
pub fn report_invariant_violations(report: &PolarizationReport) -> Vec<String> {
    let mut bad = Vec::new();
    let total: usize = report.orbits.iter().map(|o| o.orbit_size).sum();
    if total != report.solution_count {
        bad.push(format!("orbit sizes sum to {total}, expected {}", report.solution_count));
    }
    if report.representable == report.orbits.is_empty() {
        bad.push("representable flag disagrees with orbit list".into());
    }
    if report.ambient_dim != &report.l_squared / 2 + 1 {
        bad.push("ambient dimension is not L^2/2 + 1".into());
    }
    for o in &report.orbits {
        if norm(&o.canonical) != report.l_squared {
            bad.push(format!("orbit {} has the wrong norm", o.canonical));
        }
        if 16 % o.orbit_size != 0 {
            bad.push(format!("orbit size {} does not divide 16", o.orbit_size));
        }
        if o.primitive_root.scale(&o.divisibility) != o.canonical {
            bad.push(format!("{} is not r times its primitive root", o.canonical));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> EvenBinaryForm {
        EvenBinaryForm::new(a, b, c).unwrap()
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn degree_twelve() {
        let r = classify(3).unwrap();
        assert_eq!(r.solution_count, 8);
        assert_eq!(r.orbits.len(), 1);
        let o = &r.orbits[0];
        assert_eq!(o.tx.form(), &form(2, 0, 15));
        assert_eq!(o.index, b(2));
        assert_eq!(r.quadric_count.count, b(10));
        assert_eq!(r.ambient_dim, b(7));
        assert!(report_invariant_violations(&r).is_empty());
    }

    #[test]
    fn degree_twenty_has_two_orbits_one_lattice() {
        let r = classify(5).unwrap();
        assert_eq!(r.orbits.len(), 2);
        assert!(r.orbits.iter().all(|o| o.tx.form() == &form(5, 0, 10)));
        assert_eq!(r.tx_classes.len(), 1);
    }

    #[test]
    fn degree_360_lattices() {
        let r = classify(90).unwrap();
        let got: BTreeSet<_> = r.tx_classes.iter().map(|t| t.form().clone()).collect();
        let want: BTreeSet<_> = [form(5, 0, 5), form(1, 0, 1), form(5, 0, 45), form(2, 2, 5)].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn non_representable_report() {
        let r = classify(6).unwrap();
        assert!(!r.representable && r.orbits.is_empty() && r.tx_classes.is_empty());
        assert!(model_verdict(&r).is_err());
        assert!(classify(0).is_err());
    }

    #[test]
    fn quadric_counts() {
        assert_eq!(quadric_count(3).count, b(10));
        assert_eq!(quadric_count(4).count, b(21));
        assert_eq!(quadric_count(1).count, b(0));
        let q = quadric_count(2);
        assert_eq!((q.ambient_quadrics, q.sections_of_2l, q.count), (b(21), b(18), b(3)));
        assert!(classify(1).unwrap().footnote().is_some());
    }

    #[test]
    fn indices() {
        assert_eq!(index_from(&b(3), &b(120)).unwrap(), b(2));
        assert_eq!(index_from(&b(10), &b(4)).unwrap(), b(20));
        assert_eq!(index_from(&b(15), &b(600)).unwrap(), b(2));
        // 2400 / 500 is not an integer
        assert!(matches!(index_from(&b(15), &b(500)), Err(Error::IndexAnomaly { .. })));
        assert!(matches!(index_from(&b(3), &b(7)), Err(Error::IndexAnomaly { .. })));
        assert!(matches!(index_from(&b(3), &b(60)), Err(Error::IndexAnomaly { .. })));
    }

    #[test]
    fn feasibility() {
        assert!(!div_feasible(&b(10), &b(5), &b(200)));
        assert!(div_feasible(&b(40), &b(1), &b(40)));
        assert!(!div_feasible(&b(90), &b(9), &b(120)));
        assert!(div_feasible(&b(90), &b(1), &b(10)));
        assert!(div_feasible(&b(40), &b(1), &b(10)));
    }

    #[test]
    fn verdicts() {
        let v3 = model_verdict(&classify(3).unwrap()).unwrap();
        assert_eq!(v3.summary(), "embedding; quadrics only");
        assert!(v3.classes.iter().all(|c| c.base_point_free == Obstruction::NotApplicable));
        let v5 = model_verdict(&classify(5).unwrap()).unwrap();
        assert_eq!(v5.classes[0].base_point_free, Obstruction::Infeasible);
        let v10 = model_verdict(&classify(10).unwrap()).unwrap();
        let kondo = v10.classes.iter().find(|c| c.tx.form() == &form(1, 0, 1)).unwrap();
        assert_eq!(kondo.base_point_free, Obstruction::Infeasible);
        assert_eq!(kondo.hyperelliptic, Obstruction::KnownFromPriorWork);
        let v1 = model_verdict(&classify(1).unwrap()).unwrap();
        assert_eq!(v1.classes[0].hyperelliptic, Obstruction::KnownFromPriorWork);
    }

    #[test]
    fn scaling() {
        let e = LatticeVector::e();
        assert_eq!(scale_embedding(&e, 2), LatticeVector::new(2, 0, 0));
        for (v, r, tx) in [
            (LatticeVector::e(), 2, form(1, 0, 10)),
            (LatticeVector::new(1, 1, 0), 2, form(2, 2, 3)),
            (LatticeVector::e(), 3, form(1, 0, 10)),
        ] {
            let w = scale_embedding(&v, r);
            assert_eq!(norm(&w), BigInt::from(r * r) * norm(&v));
            assert_eq!(transcendental_lattice(&v).unwrap().1.form(), &tx);
            assert_eq!(transcendental_lattice(&w).unwrap().1.form(), &tx);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = classify_many(1..=40, Some(1)).unwrap();
        let par = classify_many(1..=40, Some(4)).unwrap();
        assert_eq!(seq, par);
        assert!(seq.windows(2).all(|w| w[0].n + 1 == w[1].n));
    }
}
