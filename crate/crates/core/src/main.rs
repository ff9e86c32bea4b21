use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use m20_lattice::analysis::{classify, classify_each, classify_many};
use m20_lattice::golden::golden_check;
use m20_lattice::report::{self, TableRow};
use m20_lattice::veronese::{doubled_model_dims, scaled_quartic_dims};

const EXIT_OK: u8 = 0;
const EXIT_ANOMALY: u8 = 1;
const EXIT_NOT_REPRESENTABLE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "m20", version, about = "Classify M20-invariant polarizations on K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Classify the polarizations with L^2 = 4n.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// One row per (n, T_X class) for every n up to max-n.
    Table {
        #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        parallel: Option<u64>,
    },
    /// Compare the pipeline against the built-in reference table.
    GoldenCheck {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Summary statistics for all n up to max-n.
    Scan {
        #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        parallel: Option<u64>,
    },
    /// Dimension counts for the Veronese models of L = 2M (--n) and L = rM with M^2 = 4 (--r).
    Veronese {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
}

fn emit_json(v: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_ANOMALY)
}

fn emit_rows(rows: &[TableRow], format: Format) -> ExitCode {
    match format {
        Format::Text => emit(&report::rows_text(rows)),
        Format::Json => emit_json(&report::rows_to_json(rows)),
        Format::Csv => match report::rows_to_csv(rows) {
            Ok(s) => emit(&s),
            Err(e) => return fail(e),
        },
    }
    ExitCode::from(EXIT_OK)
}

fn threads(p: Option<u64>) -> Option<usize> {
    Some(p.map_or(1, |k| k as usize))
}

fn run(cmd: Cmd) -> ExitCode {
    match cmd {
        Cmd::Classify { n, format } => {
            let rep = match classify(n) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let code = match format {
                Format::Text => {
                    emit(&report::report_text(&rep));
                    ExitCode::from(EXIT_OK)
                }
                Format::Json => {
                    emit_json(&report::report_json(&rep));
                    ExitCode::from(EXIT_OK)
                }
                Format::Csv => emit_rows(&report::table_rows(&rep), Format::Csv),
            };
            if rep.representable {
                code
            } else {
                ExitCode::from(EXIT_NOT_REPRESENTABLE)
            }
        }
        Cmd::Table { max_n, format, parallel } => match classify_many(1..=max_n, threads(parallel)) {
            Ok(reps) => {
                let rows: Vec<TableRow> = reps.iter().flat_map(report::table_rows).collect();
                emit_rows(&rows, format)
            }
            Err(e) => fail(e),
        },
        Cmd::GoldenCheck { format } => {
            let g = match golden_check() {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            match format {
                Format::Json => {
                    let mism: Vec<serde_json::Value> = g
                        .mismatches
                        .iter()
                        .map(|m| {
                            serde_json::json!({
                                "n": m.n,
                                "embedding": m.embedding.to_string(),
                                "field": m.field,
                                "table": m.expected,
                                "computed": m.computed,
                                "table_inconsistency": m.table_inconsistency,
                            })
                        })
                        .collect();
                    emit_json(&serde_json::json!({
                        "rows_checked": g.rows_checked,
                        "passed": g.passed(),
                        "mismatches": mism,
                    }));
                }
                _ => {
                    let mut s = format!("{}\nrows checked: {}\n", report::banner(), g.rows_checked);
                    for (n, printed, formula) in &g.footnotes {
                        s.push_str(&format!("footnote n={n}: printed Q={printed}, formula Q={formula}\n"));
                    }
                    for m in &g.mismatches {
                        s.push_str(&format!("MISMATCH {m}\n"));
                    }
                    s.push_str(if g.passed() { "PASS\n" } else { "FAIL\n" });
                    emit(&s);
                }
            }
            ExitCode::from(if g.passed() { EXIT_OK } else { EXIT_ANOMALY })
        }
        Cmd::Scan { max_n, format, parallel } => {
            let results = classify_each(1..=max_n, threads(parallel));
            let s = report::scan_summary(max_n, &results);
            match format {
                Format::Json => emit_json(&report::scan_json(&s)),
                Format::Text => emit(&report::scan_text(&s)),
                Format::Csv => {
                    eprintln!("error: scan has no CSV form");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            ExitCode::from(if s.anomalies.is_empty() { EXIT_OK } else { EXIT_ANOMALY })
        }
        Cmd::Veronese { n, r, format } => {
            if n.is_none() && r.is_none() {
                eprintln!("error: veronese needs --n or --r");
                return ExitCode::from(EXIT_USAGE);
            }
            if format == Format::Csv {
                eprintln!("error: veronese has no CSV form");
                return ExitCode::from(EXIT_USAGE);
            }
            let mut json = serde_json::Map::new();
            let mut text = String::new();
            if let Some(n) = n {
                match doubled_model_dims(n) {
                    Ok(m) => {
                        json.insert("doubled".into(), report::doubled_json(n, &m));
                        text.push_str(&report::doubled_text(n, &m));
                    }
                    Err(e) => return fail(e),
                }
            }
            if let Some(r) = r {
                match scaled_quartic_dims(r) {
                    Ok(m) => {
                        json.insert("scaled_quartic".into(), report::quartic_json(r, &m));
                        text.push_str(&report::quartic_text(r, &m));
                    }
                    Err(e) => return fail(e),
                }
            }
            match format {
                Format::Json => emit_json(&serde_json::Value::Object(json)),
                _ => emit(&format!("{}\n{text}", report::banner())),
            }
            ExitCode::from(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { EXIT_OK });
        }
    };
    run(cli.cmd)
}
