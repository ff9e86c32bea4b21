//! Regression data: the published table of transcendental lattices, copied by hand
//! and compared field by field against the pipeline.
//!
//! Both the printed Gram matrix and the printed `(a, b, c)` columns are kept, so
//! that rows whose columns disagree with each other can be reported as such.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::analysis::{classify, index_from, quadric_count, PolarizationReport};
use crate::error::Result;
use crate::forms::{lattice_class, EvenBinaryForm};
use crate::lattice::{norm, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub n: u64,
    pub l_squared: u64,
    pub q: u64,
    /// Printed `T_X` matrix as `(4a, 2b, 4c)`.
    pub tx_matrix: (i64, i64, i64),
    /// Printed `(a, b, c)` columns.
    pub tx: (i64, i64, i64),
    pub embedding: (i64, i64, i64),
    pub index_i: u64,
    /// The printed `Q` for degree 4 counts the quartic, not quadrics.
    pub q_footnote: bool,
}

impl GoldenRow {
    pub fn embedding_vector(&self) -> LatticeVector {
        let (l, m, d) = self.embedding;
        LatticeVector::new(l, m, d)
    }
}

const fn row(
    n: u64,
    l_squared: u64,
    q: u64,
    tx_matrix: (i64, i64, i64),
    tx: (i64, i64, i64),
    embedding: (i64, i64, i64),
    index_i: u64,
) -> GoldenRow {
    GoldenRow { n, l_squared, q, tx_matrix, tx, embedding, index_i, q_footnote: false }
}

/// Table rows in printed order; rows listing several embeddings for one lattice
/// are split into one entry per embedding.
pub const GOLDEN_ROWS: &[GoldenRow] = &[
    // n=1: L -> e
    GoldenRow { q_footnote: true, ..row(1, 4, 1, (4, 0, 40), (1, 0, 10), (1, 0, 0), 2) },
    // n=2: L -> e+f
    row(2, 8, 3, (8, 4, 12), (2, 2, 3), (1, 1, 0), 4),
    // n=3: L -> h
    row(3, 12, 10, (8, 0, 60), (2, 0, 15), (0, 0, 1), 2),
    // n=4: L -> 2e
    row(4, 16, 21, (4, 0, 40), (1, 0, 10), (2, 0, 0), 4),
    // n=5: L -> e+2f and L -> f-h, one lattice
    row(5, 20, 36, (20, 0, 40), (5, 0, 10), (1, 2, 0), 2),
    row(5, 20, 36, (20, 0, 40), (5, 0, 10), (0, 1, -1), 2),
    // n=7: L -> e+f-h
    row(7, 28, 80, (8, 0, 140), (2, 0, 35), (1, 1, -1), 4),
    // n=8: L -> 2e+2f
    row(8, 32, 105, (8, 4, 12), (2, 2, 3), (2, 2, 0), 8),
    // n=9: L -> 3e and L -> 3e+h
    row(9, 36, 136, (4, 0, 40), (1, 0, 10), (3, 0, 0), 6),
    row(9, 36, 136, (36, 12, 44), (9, 6, 11), (3, 0, 1), 2),
    // n=10: L -> e+f+2h and L -> e+3f
    row(10, 40, 171, (4, 0, 4), (1, 0, 1), (1, 1, 2), 20),
    row(10, 40, 171, (20, 0, 20), (5, 0, 5), (1, 3, 0), 4),
    // n=15: L -> 2e+2f-h and L -> e-2h
    row(15, 60, 406, (8, 0, 12), (2, 0, 3), (2, 2, -1), 5),
    row(15, 60, 406, (20, 0, 120), (5, 0, 25), (1, 0, -2), 1),
    // n=18: L -> 3e+3f and L -> 3e+3f+2h
    row(18, 72, 595, (8, 4, 12), (2, 2, 3), (3, 3, 0), 12),
    row(18, 72, 595, (8, 4, 92), (2, 2, 23), (3, 3, 2), 4),
    // n=30: L -> 3e+f-2h
    row(30, 120, 1711, (20, 10, 20), (5, 5, 5), (3, 1, -2), 8),
    // n=45: L -> 3f-3h, 3e+6f (first lattice); 4e+6f+h, 3e+4f+4h (second)
    row(45, 180, 3916, (20, 0, 40), (5, 0, 10), (0, 3, -3), 6),
    row(45, 180, 3916, (20, 0, 40), (5, 0, 10), (3, 6, 0), 6),
    row(45, 180, 3916, (20, 0, 360), (5, 0, 90), (4, 6, 1), 2),
    row(45, 180, 3916, (20, 0, 360), (5, 0, 90), (3, 4, 4), 2),
    // n=90: L -> 3e+9f, 3e+3f+6h, 3e+7f-2h, 3e+3f-4h
    row(90, 360, 15931, (20, 0, 20), (5, 0, 5), (3, 9, 0), 12),
    row(90, 360, 15931, (4, 0, 4), (1, 0, 1), (3, 3, 6), 60),
    row(90, 360, 15931, (20, 0, 180), (5, 0, 45), (3, 7, -2), 4),
    row(90, 360, 15931, (8, 4, 20), (2, 2, 5), (3, 3, -4), 20),
];

/// Degrees the table marks with dashes.
pub const GOLDEN_NON_REPRESENTABLE: &[u64] = &[6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u64,
    pub embedding: LatticeVector,
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
    /// Set when the printed value also disagrees with the table's own other columns.
    pub table_inconsistency: Option<String>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "n={} L->{} field={} table={} computed={}",
            self.n, self.embedding, self.field, self.expected, self.computed
        )?;
        if let Some(why) = &self.table_inconsistency {
            write!(out, " [table inconsistent: {why}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoldenReport {
    pub rows_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Rows whose printed `Q` is exempt from comparison, with the formula value.
    pub footnotes: Vec<(u64, u64, BigInt)>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn printed_form(row: &GoldenRow) -> Option<EvenBinaryForm> {
    let (a, b, c) = row.tx;
    EvenBinaryForm::new(a, b, c).ok()
}

/// Whether the printed `(a, b, c)` columns agree with the printed matrix.
fn columns_match_matrix(row: &GoldenRow) -> bool {
    let (a, b, c) = row.tx;
    row.tx_matrix == (4 * a, 2 * b, 4 * c)
}

fn check_row(row: &GoldenRow, report: &PolarizationReport, out: &mut GoldenReport) {
    let v = row.embedding_vector();
    let mut miss = |field: &'static str, expected: String, computed: String, why: Option<String>| {
        out.mismatches.push(Mismatch { n: row.n, embedding: v.clone(), field, expected, computed, table_inconsistency: why });
    };
    if report.l_squared != BigInt::from(row.l_squared) || BigInt::from(4 * row.n) != BigInt::from(row.l_squared) {
        miss("l_squared", row.l_squared.to_string(), report.l_squared.to_string(), None);
    }
    let q = quadric_count(row.n).count;
    if !row.q_footnote && q != BigInt::from(row.q) {
        miss("q", row.q.to_string(), q.to_string(), Some(format!("2n^2-3n+1 = {q}")));
    }
    let Some(orbit) = report.orbit_of(&v).filter(|_| norm(&v) == report.l_squared) else {
        miss("orbit", v.to_string(), "no computed orbit".into(), None);
        return;
    };
    let computed_tx = orbit.tx.form();
    let expected_tx = printed_form(row).map(|f| lattice_class(&f));
    if expected_tx.as_ref().map(|t| t.form()) != Some(computed_tx) {
        let (a, b, c) = row.tx;
        let (g11, g12, g22) = row.tx_matrix;
        let why = (!columns_match_matrix(row))
            .then(|| format!("printed matrix [[{g11},{g12}],[{g12},{g22}]] has (a,b,c) = ({}, {}, {})", g11 / 4, g12 / 2, g22 / 4));
        miss("tx", format!("({a}, {b}, {c})"), computed_tx.to_string(), why);
    }
    if orbit.index != BigInt::from(row.index_i) {
        let why = printed_form(row).map(|f| match index_from(&BigInt::from(row.n), &f.discriminant()) {
            Ok(i) if i != BigInt::from(row.index_i) => Some(format!("sqrt(160n/(4ac-b^2)) on the printed columns = {i}")),
            Ok(_) => None,
            Err(_) => Some("160n/(4ac-b^2) on the printed columns is not a perfect square".to_string()),
        });
        miss("index", row.index_i.to_string(), orbit.index.to_string(), why.flatten());
    }
}

/// Compares `rows` (and the non-representable degrees) against the pipeline.
pub fn check_rows(rows: &[GoldenRow], non_representable: &[u64]) -> Result<GoldenReport> {
    let mut reports: BTreeMap<u64, PolarizationReport> = BTreeMap::new();
    let mut out = GoldenReport::default();
    for row in rows {
        let report = match reports.entry(row.n) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(classify(row.n)?),
        };
        check_row(row, report, &mut out);
        if row.q_footnote {
            out.footnotes.push((row.n, row.q, quadric_count(row.n).count));
        }
        out.rows_checked += 1;
    }
    for &n in non_representable {
        let r = classify(n)?;
        if r.representable {
            out.mismatches.push(Mismatch {
                n,
                embedding: LatticeVector::zero(),
                field: "representable",
                expected: "no embedding".into(),
                computed: format!("{} orbits", r.orbits.len()),
                table_inconsistency: None,
            });
        }
        out.rows_checked += 1;
    }
    out.footnotes.dedup();
    Ok(out)
}

pub fn golden_check() -> Result<GoldenReport> {
    check_rows(GOLDEN_ROWS, GOLDEN_NON_REPRESENTABLE)
}
