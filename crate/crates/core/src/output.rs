//! CSV rows and gnuplot scripts for scan results.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scan::{Measures, RowStatus, ScanRow};

pub const CSV_HEADER: [&str; 11] = [
    "process",
    "initial",
    "p_mev",
    "theta_rad",
    "min_pt_eig",
    "negativity",
    "log_negativity",
    "entropy",
    "entangled",
    "switching",
    "status",
];

/// 17 significant digits: enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn record(row: &ScanRow) -> [String; 11] {
    let (m, e, l, s, ent, sw) = match row.measures {
        Some(m) => (
            format_float(m.min_pt_eigenvalue),
            format_float(m.negativity),
            format_float(m.log_negativity),
            format_float(m.entropy),
            (m.entangled as u8).to_string(),
            (m.switching as u8).to_string(),
        ),
        None => Default::default(),
    };
    [
        row.process.name().to_string(),
        row.initial.clone(),
        format_float(row.p),
        format_float(row.theta),
        m,
        e,
        l,
        s,
        ent,
        sw,
        row.status.as_str().to_string(),
    ]
}

pub fn write_csv<'a, W: Write>(rows: impl IntoIterator<Item = &'a ScanRow>, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(record(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[ScanRow], path: &Path) -> Result<()> {
    write_csv(rows, BufWriter::new(File::create(path)?))
}

fn parse_f64(field: &str, name: &str) -> Result<f64> {
    field.parse().map_err(|e| Error::Config(format!("column {name}: cannot parse '{field}': {e}")))
}

fn parse_flag(field: &str, name: &str) -> Result<bool> {
    match field {
        "1" => Ok(true),
        "0" => Ok(false),
        _ => Err(Error::Config(format!("column {name}: expected 0 or 1, got '{field}'"))),
    }
}

/// Parse CSV produced by [`write_csv`] back into rows.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ScanRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        let status: RowStatus = f(10).parse()?;
        let measures = if status.has_measures() {
            Some(Measures {
                min_pt_eigenvalue: parse_f64(f(4), CSV_HEADER[4])?,
                negativity: parse_f64(f(5), CSV_HEADER[5])?,
                log_negativity: parse_f64(f(6), CSV_HEADER[6])?,
                entropy: parse_f64(f(7), CSV_HEADER[7])?,
                entangled: parse_flag(f(8), CSV_HEADER[8])?,
                switching: parse_flag(f(9), CSV_HEADER[9])?,
            })
        } else {
            None
        };
        rows.push(ScanRow {
            process: f(0).parse()?,
            initial: f(1).to_string(),
            p: parse_f64(f(2), CSV_HEADER[2])?,
            theta: parse_f64(f(3), CSV_HEADER[3])?,
            status,
            measures,
        });
    }
    Ok(rows)
}

/// Gnuplot commands drawing the logarithmic negativity over `(theta, p)`
/// from `csv_path`, with separable points at zero and excluded rows left out.
pub fn plot_script(rows: &[ScanRow], csv_path: &Path) -> String {
    let title = rows
        .first()
        .map(|r| format!("{} / {}", r.process, r.initial))
        .unwrap_or_else(|| "empty scan".to_string());
    let log_p = rows.len() > 2 && {
        let (lo, hi) = rows.iter().fold((f64::INFINITY, 0.0f64), |(a, b), r| (a.min(r.p), b.max(r.p)));
        hi / lo > 100.0
    };
    let csv = csv_path.display().to_string().replace('\'', "\\'");
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set title '{title}'\n"));
    s.push_str("set xlabel 'theta [rad]'\n");
    s.push_str("set ylabel 'p [MeV]'\n");
    s.push_str("set cblabel 'E_N'\n");
    s.push_str("set cbrange [0:1]\n");
    if log_p {
        s.push_str("set logscale y\n");
    }
    s.push_str("set key off\n");
    s.push_str(&format!(
        "plot '{csv}' skip 1 using 4:3:((strcol(11) eq 'ok' || strcol(11) eq 'nudged') ? $7 : NaN) \\\n    with points pointtype 5 pointsize 0.4 palette\n"
    ));
    s
}

pub fn emit_plot_script(rows: &[ScanRow], csv_path: &Path, script_path: &Path) -> Result<()> {
    std::fs::write(script_path, plot_script(rows, csv_path))?;
    Ok(())
}
