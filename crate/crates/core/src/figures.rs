//! Figure data: depth proportions among all and among non-degenerate
//! functions, and the log2 fold changes. CSV files are the canonical
//! output; the SVG charts are a quick look only.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::enumeration::CountTable;
use crate::prevalence::{self, format_significant, PrevalenceRecord};

pub const FIG1_CSV: &str = "fig1_depth_all.csv";
pub const FIG2_CSV: &str = "fig2_depth_nondegenerate.csv";
pub const FIG3_CSV: &str = "fig3_delta.csv";
pub const PREVALENCE_CSV: &str = "prevalence.csv";

fn proportion(num: &BigUint, den: &BigUint) -> f64 {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
        .to_f64()
        .unwrap_or(0.0)
}

/// `(n, k, count, denominator)` rows of the depth-among-all-functions data.
pub fn depth_all_rows(max_n: usize, table: &CountTable) -> Vec<(usize, usize, BigUint, BigUint)> {
    (0..=max_n)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .map(|(n, k)| (n, k, table.depth_count(n, k), table.total(n)))
        .collect()
}

/// `(n, k, count, denominator)` rows of the depth-among-non-degenerate data.
pub fn depth_nondegenerate_rows(
    max_n: usize,
    table: &CountTable,
) -> Vec<(usize, usize, BigUint, BigUint)> {
    (0..=max_n)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .map(|(n, k)| (n, k, table.full(n, n, k), table.essential(n, n)))
        .collect()
}

/// `n,k,count,total,proportion`
pub fn fig1_csv(max_n: usize, table: &CountTable) -> String {
    let mut out = String::from("n,k,count,total,proportion\n");
    for (n, k, count, total) in depth_all_rows(max_n, table) {
        let p = format_significant(proportion(&count, &total), 12);
        let _ = writeln!(out, "{n},{k},{count},{total},{p}");
    }
    out
}

/// `n,k,count,nondegenerate,proportion,log10_proportion`; the log column is
/// empty where the proportion is zero.
pub fn fig2_csv(max_n: usize, table: &CountTable) -> String {
    let mut out = String::from("n,k,count,nondegenerate,proportion,log10_proportion\n");
    for (n, k, count, total) in depth_nondegenerate_rows(max_n, table) {
        let p = proportion(&count, &total);
        let log = if count.is_zero() {
            String::new()
        } else {
            format_significant(p.log10(), 12)
        };
        let _ = writeln!(out, "{n},{k},{count},{total},{},{log}", format_significant(p, 12));
    }
    out
}

/// `n,delta_can,delta_ncf`
pub fn fig3_csv(records: &[PrevalenceRecord]) -> String {
    let mut out = String::from("n,delta_can,delta_ncf\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{}",
            r.n,
            format_significant(r.delta_can, 12),
            format_significant(r.delta_ncf, 12)
        );
    }
    out
}

/// Writes the CSV files (and the SVG charts when `svg` is set) into
/// `outdir`, creating it if needed. Returns the paths written.
pub fn write_figures(
    max_n: usize,
    table: &CountTable,
    outdir: &Path,
    svg: bool,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(outdir)?;
    let records = if max_n >= 1 {
        prevalence::prevalence_series(max_n, table)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?
    } else {
        Vec::new()
    };
    let mut files = vec![
        (FIG1_CSV, fig1_csv(max_n, table)),
        (FIG2_CSV, fig2_csv(max_n, table)),
        (FIG3_CSV, fig3_csv(&records)),
        (PREVALENCE_CSV, prevalence::to_csv(&records)),
    ];
    if svg {
        files.push(("fig1_depth_all.svg", depth_chart(
            "Proportion of n-input functions by canalizing depth",
            &depth_all_rows(max_n, table),
            false,
        )));
        files.push(("fig2_depth_nondegenerate.svg", depth_chart(
            "Proportion of non-degenerate n-input functions by canalizing depth (log10)",
            &depth_nondegenerate_rows(max_n, table),
            true,
        )));
        let series = vec![
            ("canalizing".to_string(), records.iter().map(|r| (r.n as f64, r.delta_can)).collect()),
            ("nested canalizing".to_string(), records.iter().map(|r| (r.n as f64, r.delta_ncf)).collect()),
        ];
        files.push(("fig3_delta.svg", line_chart("log2 fold change from ignoring degeneracy", "n", "delta", &series)));
    }
    let mut written = Vec::new();
    for (name, body) in files {
        let path = outdir.join(name);
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

fn depth_chart(title: &str, rows: &[(usize, usize, BigUint, BigUint)], log: bool) -> String {
    let max_k = rows.iter().map(|r| r.1).max().unwrap_or(0);
    let series: Vec<(String, Vec<(f64, f64)>)> = (0..=max_k)
        .map(|k| {
            let points = rows
                .iter()
                .filter(|r| r.1 == k && !(log && r.2.is_zero()))
                .map(|(n, _, c, t)| {
                    let p = proportion(c, t);
                    (*n as f64, if log { p.log10() } else { p })
                })
                .collect();
            (format!("k={k}"), points)
        })
        .collect();
    let y_label = if log { "log10 proportion" } else { "proportion" };
    line_chart(title, "n", y_label, &series)
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// A bare-bones SVG line chart.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let (w, h, margin) = (640.0, 420.0, 60.0);
    let points = series.iter().flat_map(|s| s.1.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    y0 = y0.min(0.0);
    y1 = y1.max(0.0);
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| margin + (x - x0) / (x1 - x0) * (w - 2.0 * margin);
    let sy = |y: f64| h - margin - (y - y0) / (y1 - y0) * (h - 2.0 * margin);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#, w / 2.0, title);
    let _ = writeln!(
        out,
        r#"<line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{m}" y1="{t}" x2="{m}" y2="{b}" stroke="black"/>"#,
        m = margin,
        b = h - margin,
        r = w - margin,
        t = margin
    );
    let _ = writeln!(
        out,
        r##"<line x1="{m}" y1="{z}" x2="{r}" y2="{z}" stroke="#bbb" stroke-dasharray="4"/>"##,
        m = margin,
        r = w - margin,
        z = sy(0.0)
    );
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#, w / 2.0, h - 20.0);
    let _ = writeln!(
        out,
        r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{y_label}</text>"#,
        h / 2.0,
        h / 2.0
    );
    for (label, y) in [(y0, y0), (y1, y1)] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            margin - 4.0,
            sy(y) + 4.0,
            format_significant(label, 3)
        );
    }
    let mut x = x0.ceil();
    while x <= x1 {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{x}</text>"#, sx(x), h - margin + 16.0);
        x += 1.0;
    }
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        if !path.is_empty() {
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                path.join(" ")
            );
        }
        for &(x, y) in pts {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, sx(x), sy(y));
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{name}</text>"#,
            w - margin + 5.0,
            margin + 16.0 * i as f64
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::build_table;

    #[test]
    fn fig1_has_exact_small_rows() {
        let csv = fig1_csv(3, &build_table(3).unwrap());
        assert!(csv.lines().any(|l| l == "3,0,138,256,0.539062500000"));
        assert!(csv.lines().any(|l| l == "0,0,2,2,1.00000000000"));
    }

    #[test]
    fn fig2_leaves_log_of_zero_empty() {
        let csv = fig2_csv(2, &build_table(2).unwrap());
        assert!(csv.lines().any(|l| l == "2,1,0,10,0,"));
        assert!(csv.lines().any(|l| l.starts_with("2,2,8,10,0.800000000000,")));
    }

    #[test]
    fn charts_are_svg() {
        let svg = line_chart("t", "x", "y", &[("a".into(), vec![(1.0, 2.0), (2.0, 3.0)])]);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("polyline"));
    }
}
