//! Rendering of classification results: text, JSON and CSV.
//!
//! All data formats are deterministic. Integers go out exactly; JSON numbers are
//! written from their decimal strings so that nothing passes through `f64`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::analysis::{model_verdict, PolarizationReport};
use crate::error::{Error, Result};
use crate::forms::ReducedForm;
use crate::lattice::LatticeVector;
use crate::representability::prime_witnesses_up_to;
use crate::veronese::{DoubledModel, ScaledQuarticModel};

pub const CSV_HEADER: [&str; 10] = ["n", "l2", "q", "a", "b", "c", "lambda", "mu", "delta", "index"];

pub fn banner() -> String {
    format!("m20 {}", env!("CARGO_PKG_VERSION"))
}

fn num(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer is a JSON number"))
}

fn vec_json(v: &LatticeVector) -> Value {
    let [l, m, d] = v.coords();
    Value::Array(vec![num(l), num(m), num(d)])
}

fn form_json(f: &ReducedForm) -> Value {
    let (a, b, c) = f.triple();
    json!({ "a": num(a), "b": num(b), "c": num(c) })
}

fn gram_json(f: &ReducedForm) -> Value {
    let (a, b, c) = f.triple();
    let (g11, g12, g22) = (4 * a, 2 * b, 4 * c);
    json!([[num(&g11), num(&g12)], [num(&g12), num(&g22)]])
}

pub fn report_json(report: &PolarizationReport) -> Value {
    let orbits: Vec<Value> = report
        .orbits
        .iter()
        .map(|o| {
            json!({
                "canonical": vec_json(&o.canonical),
                "orbit_size": o.orbit_size,
                "divisibility": num(&o.divisibility),
                "tx": form_json(&o.tx),
                "tx_gram": gram_json(&o.tx),
                "discriminant": num(&o.discriminant),
                "index": num(&o.index),
            })
        })
        .collect();
    json!({
        "n": report.n,
        "l_squared": num(&report.l_squared),
        "representable": report.representable,
        "orbits": orbits,
        "quadric_count": num(&report.quadric_count.count),
        "ambient_dim": num(&report.ambient_dim),
        "feasibility": {
            "div1": report.feasibility.div1(),
            "div2": report.feasibility.div2(),
            "eq90": report.feasibility.eq90(),
        },
    })
}

pub fn report_text(report: &PolarizationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", banner());
    let _ = writeln!(out, "n = {}, L^2 = {}", report.n, report.l_squared);
    if !report.representable {
        let _ = writeln!(out, "no embedding (n = 16j+6 family)");
        return out;
    }
    let _ = writeln!(out, "model in P^{}", report.ambient_dim);
    let _ = write!(out, "quadrics through the model: {}", report.quadric_count.count);
    if let Some(note) = report.footnote() {
        let _ = write!(out, " ({note})");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "solutions: {}, orbits: {}", report.solution_count, report.orbits.len());
    for o in &report.orbits {
        let (a, b, c) = o.tx.triple();
        let _ = writeln!(
            out,
            "  L -> {}  orbit size {}  div {}  T_X = [[{}, {}], [{}, {}]] ~ ({a}, {b}, {c})  d = {}  I = {}",
            o.canonical,
            o.orbit_size,
            o.divisibility,
            4 * a,
            2 * b,
            2 * b,
            4 * c,
            o.discriminant,
            o.index
        );
    }
    let f = &report.feasibility;
    let _ = writeln!(out, "feasibility: div1 {} div2 {} eq90 {}", f.div1(), f.div2(), f.eq90());
    match model_verdict(report) {
        Ok(v) => {
            let _ = writeln!(out, "verdict: {}", v.summary());
        }
        Err(e) => {
            let _ = writeln!(out, "verdict: {e}");
        }
    }
    out
}

/// One row of the degree table: a transcendental lattice class for a given `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub l2: BigInt,
    pub q: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub embedding: LatticeVector,
    pub index: BigInt,
}

/// Rows for one report, one per `T_X` class, each with its smallest canonical embedding.
pub fn table_rows(report: &PolarizationReport) -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = Vec::new();
    for class in &report.tx_classes {
        let best = report.orbits.iter().filter(|o| &o.tx == class).min_by(|x, y| x.canonical.cmp(&y.canonical));
        let Some(o) = best else { continue };
        let (a, b, c) = class.triple();
        rows.push(TableRow {
            n: report.n,
            l2: report.l_squared.clone(),
            q: report.quadric_count.count.clone(),
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            embedding: o.canonical.clone(),
            index: o.index.clone(),
        });
    }
    rows.sort_by(|x, y| (&x.a, &x.b, &x.c).cmp(&(&y.a, &y.b, &y.c)));
    rows
}

impl TableRow {
    fn fields(&self) -> [String; 10] {
        let [l, m, d] = self.embedding.coords();
        [
            self.n.to_string(),
            self.l2.to_string(),
            self.q.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            l.to_string(),
            m.to_string(),
            d.to_string(),
            self.index.to_string(),
        ]
    }

    pub fn to_json(&self) -> Value {
        let [l, m, d] = self.embedding.coords();
        let mut obj = Map::new();
        obj.insert("n".into(), json!(self.n));
        for (k, v) in [
            ("l2", &self.l2),
            ("q", &self.q),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("lambda", l),
            ("mu", m),
            ("delta", d),
            ("index", &self.index),
        ] {
            obj.insert(k.into(), num(v));
        }
        Value::Object(obj)
    }
}

pub fn rows_to_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| Error::Csv(e.to_string()))?;
    for r in rows {
        w.write_record(r.fields()).map_err(|e| Error::Csv(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
}

pub fn rows_from_csv(text: &str) -> Result<Vec<TableRow>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Csv(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Csv(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
        if rec.len() != CSV_HEADER.len() {
            return Err(Error::Csv(format!("expected {} fields, got {}", CSV_HEADER.len(), rec.len())));
        }
        let big = |i: usize| -> Result<BigInt> {
            BigInt::from_str(&rec[i]).map_err(|_| Error::Csv(format!("field {} is not an integer: {:?}", CSV_HEADER[i], &rec[i])))
        };
        let n = rec[0].parse::<u64>().map_err(|_| Error::Csv(format!("bad n: {:?}", &rec[0])))?;
        rows.push(TableRow {
            n,
            l2: big(1)?,
            q: big(2)?,
            a: big(3)?,
            b: big(4)?,
            c: big(5)?,
            embedding: LatticeVector::new(big(6)?, big(7)?, big(8)?),
            index: big(9)?,
        });
    }
    Ok(rows)
}

pub fn rows_to_json(rows: &[TableRow]) -> Value {
    Value::Array(rows.iter().map(TableRow::to_json).collect())
}

pub fn rows_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", banner());
    let _ = writeln!(out, "{:>5} {:>6} {:>8}  {:<16} {:<14} {:>3}", "n", "L^2", "Q", "(a, b, c)", "L ->", "I");
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} {:>6} {:>8}  {:<16} {:<14} {:>3}",
            r.n,
            r.l2,
            r.q,
            format!("({}, {}, {})", r.a, r.b, r.c),
            r.embedding.to_string(),
            r.index
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanSummary {
    pub max_n: u64,
    pub representable: usize,
    pub non_representable: Vec<u64>,
    pub distinct_tx_classes: usize,
    pub anomalies: Vec<String>,
    pub prime_witnesses: Vec<(u64, LatticeVector)>,
}

/// Builds the summary from per-`n` results. Errors and invariant violations both count as anomalies.
pub fn scan_summary(max_n: u64, results: &[(u64, Result<PolarizationReport>)]) -> ScanSummary {
    let mut representable = 0;
    let mut non_representable = Vec::new();
    let mut classes: BTreeSet<ReducedForm> = BTreeSet::new();
    let mut anomalies = Vec::new();
    for (n, res) in results {
        match res {
            Ok(rep) => {
                if rep.representable {
                    representable += 1;
                } else {
                    non_representable.push(*n);
                }
                classes.extend(rep.tx_classes.iter().cloned());
                anomalies.extend(crate::analysis::report_invariant_violations(rep));
                if !rep.representable {
                    continue;
                }
                if let Err(e) = model_verdict(rep) {
                    anomalies.push(e.to_string());
                }
            }
            Err(e) => anomalies.push(format!("n={n}: {e}")),
        }
    }
    ScanSummary {
        max_n,
        representable,
        non_representable,
        distinct_tx_classes: classes.len(),
        anomalies,
        prime_witnesses: prime_witnesses_up_to(max_n),
    }
}

pub fn scan_json(s: &ScanSummary) -> Value {
    let witnesses: Vec<Value> = s.prime_witnesses.iter().map(|(p, v)| json!({ "p": p, "vector": vec_json(v) })).collect();
    json!({
        "max_n": s.max_n,
        "representable": s.representable,
        "non_representable_count": s.non_representable.len(),
        "non_representable": s.non_representable,
        "distinct_tx_classes": s.distinct_tx_classes,
        "anomaly_count": s.anomalies.len(),
        "anomalies": s.anomalies,
        "prime_witnesses": witnesses,
    })
}

pub fn scan_text(s: &ScanSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", banner());
    let _ = writeln!(out, "n <= {}", s.max_n);
    let _ = writeln!(out, "representable: {}", s.representable);
    let list: Vec<String> = s.non_representable.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "non-representable: {} [{}]", s.non_representable.len(), list.join(", "));
    let _ = writeln!(out, "distinct T_X classes: {}", s.distinct_tx_classes);
    let _ = writeln!(out, "anomalies: {}", s.anomalies.len());
    for a in &s.anomalies {
        let _ = writeln!(out, "  {a}");
    }
    let _ = writeln!(out, "prime witnesses: {}", s.prime_witnesses.len());
    for (p, v) in &s.prime_witnesses {
        let [l, m, _] = v.coords();
        let _ = writeln!(out, "  {p}: ({l}, {m}, 0)");
    }
    out
}

pub fn doubled_json(n: u64, m: &DoubledModel) -> Value {
    json!({
        "n": n,
        "ambient_before": num(&m.ambient_before),
        "veronese_ambient": num(&m.veronese_ambient),
        "hyperplanes": num(&m.hyperplanes),
        "ambient_after": num(&m.ambient_after),
        "image_quadrics": num(&m.image_quadrics),
    })
}

pub fn doubled_text(n: u64, m: &DoubledModel) -> String {
    format!(
        "L = 2M, M^2 = {}: P^{} -> P^{} by quadrics, cut by {} hyperplanes -> P^{}; {} quadrics on the image\n",
        4 * n,
        m.ambient_before,
        m.veronese_ambient,
        m.hyperplanes,
        m.ambient_after,
        m.image_quadrics
    )
}

pub fn quartic_json(r: u64, m: &ScaledQuarticModel) -> Value {
    json!({
        "r": r,
        "veronese_ambient": num(&m.veronese_ambient),
        "hyperplanes": num(&m.hyperplanes),
        "ambient_after": num(&m.ambient_after),
        "note": m.note,
    })
}

pub fn quartic_text(r: u64, m: &ScaledQuarticModel) -> String {
    let mut out = format!(
        "L = {r}M, M^2 = 4: P^3 -> P^{}, cut by {} hyperplanes -> P^{}\n",
        m.veronese_ambient, m.hyperplanes, m.ambient_after
    );
    if let Some(note) = m.note {
        out.push_str(note);
        out.push('\n');
    }
    out
}
