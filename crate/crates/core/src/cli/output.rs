//! CSV, manifest and SVG emitters. Floats are written with `{:?}`, the
//! shortest decimal that round-trips to the same `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::SweepRecord;
use crate::{Error, Result};

/// A named output file held in memory until written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureManifest {
    pub figure: String,
    pub config: serde_json::Value,
    pub files: Vec<ManifestEntry>,
}

impl FigureManifest {
    /// Re-hashes every listed file under `dir` and compares checksums.
    pub fn verify_files(&self, dir: &Path) -> Result<bool> {
        for entry in &self.files {
            let bytes = fs::read(dir.join(&entry.path))?;
            if sha256_hex(&bytes) != entry.sha256 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Header plus rows, LF-terminated.
pub fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row).map_err(csv_error)?;
    }
    w.into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
}

pub const RECORD_COLUMNS: [&str; 13] = [
    "channel",
    "sides",
    "p",
    "q",
    "n",
    "capacity_closed",
    "capacity_general",
    "lambda0",
    "lambda1",
    "lambda2",
    "lambda3",
    "branch",
    "deviation_flag",
];

pub fn record_row(r: &SweepRecord) -> Vec<String> {
    let mut row = vec![
        r.channel.label().to_string(),
        r.sides.label().to_string(),
        fmt_f64(r.p),
        fmt_opt(r.q),
        r.n.to_string(),
        fmt_opt(r.capacity_closed),
        fmt_f64(r.capacity_general),
    ];
    row.extend(r.spectrum.iter().map(|&v| fmt_f64(v)));
    row.push(r.branch_used.map(|b| b.label().to_string()).unwrap_or_default());
    row.push(r.deviation_flag.to_string());
    row
}

pub fn records_csv(records: &[SweepRecord]) -> Result<Vec<u8>> {
    let rows: Vec<Vec<String>> = records.iter().map(record_row).collect();
    csv_bytes(&RECORD_COLUMNS, &rows)
}

/// Writes every artifact into `dir` (created if missing) and returns the
/// manifest entries in artifact order.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<ManifestEntry>> {
    fs::create_dir_all(dir)?;
    let mut entries = Vec::with_capacity(artifacts.len());
    for a in artifacts {
        fs::write(dir.join(&a.name), &a.bytes)?;
        entries.push(ManifestEntry {
            path: a.name.clone(),
            sha256: sha256_hex(&a.bytes),
        });
    }
    Ok(entries)
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn finite_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Polyline chart of several series over a shared x axis.
pub fn line_chart(title: &str, x: &[f64], series: &[(String, Vec<f64>)]) -> String {
    let (x0, x1) = finite_range(x.iter().copied());
    let (y0, y1) = finite_range(series.iter().flat_map(|(_, ys)| ys.iter().copied()));
    let sx = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        WIDTH / 2.0
    );
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-size="10">{x0:.3}</text>"#,
        HEIGHT - MARGIN + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{x1:.3}</text>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="4" y="{}" font-size="10">{y0:.4}</text>"#,
        HEIGHT - MARGIN
    );
    let _ = writeln!(s, r#"<text x="4" y="{}" font-size="10">{y1:.4}</text>"#, MARGIN + 4.0);
    for (k, (name, ys)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let points: Vec<String> = x
            .iter()
            .zip(ys)
            .filter(|(_, y)| y.is_finite())
            .map(|(&xv, &yv)| format!("{:.2},{:.2}", sx(xv), sy(yv)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" fill="{color}">{name}</text>"#,
            WIDTH - MARGIN + 4.0,
            MARGIN + 14.0 * (k as f64 + 1.0)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Heatmap of `z[i][j]` over `xs[i]`, `ys[j]`, shaded from white (minimum)
/// to blue (maximum).
pub fn heatmap(title: &str, xs: &[f64], ys: &[f64], z: &[Vec<f64>]) -> String {
    let (z0, z1) = finite_range(z.iter().flatten().copied());
    let cw = (WIDTH - 2.0 * MARGIN) / xs.len().max(1) as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / ys.len().max(1) as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        WIDTH / 2.0
    );
    for (i, row) in z.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let t = if v.is_finite() { (v - z0) / (z1 - z0) } else { 0.0 };
            let shade = (255.0 * (1.0 - t)).round() as u8;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({shade},{shade},255)"/>"#,
                MARGIN + i as f64 * cw,
                HEIGHT - MARGIN - (j as f64 + 1.0) * ch,
                cw + 0.05,
                ch + 0.05
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-size="10">p</text><text x="10" y="{}" font-size="10">q</text>"#,
        HEIGHT - MARGIN + 14.0,
        HEIGHT / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="10" text-anchor="end">range [{z0:.4}, {z1:.4}]</text>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 14.0
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip_floats() {
        assert_eq!(fmt_f64(0.78), "0.78");
        assert_eq!(fmt_f64(1.0), "1.0");
        assert_eq!(fmt_f64(0.1 + 0.2), "0.30000000000000004");
        for v in [1e-200, 0.6 + 1e-17, -0.26, 123456.789] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_uses_lf() {
        let bytes = csv_bytes(&["a", "b"], &[vec!["1".into(), "2".into()]]).unwrap();
        assert_eq!(bytes, b"a,b\n1,2\n");
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let svg = line_chart("t", &[0.0, 1.0], &[("y".into(), vec![0.0, 1.0])]);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        let svg = heatmap("t", &[0.0, 1.0], &[0.0, 1.0], &[vec![0.0, 1.0], vec![1.0, 2.0]]);
        assert_eq!(svg.matches("<rect").count(), 4);
    }
}
