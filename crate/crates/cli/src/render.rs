//! Table, JSON and CSV rendering.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;

use polynorm::audit::AuditReport;
use polynorm::bounds::BOUND_KEYS;
use polynorm::exactmath::IntVector;
use polynorm::invariants::KNormality;
use polynorm::polytope::fmt_point;
use polynorm::InvariantReport;

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn csv_opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

pub fn json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn report_table(r: &InvariantReport) -> String {
    let rows: Vec<(&str, String)> = vec![
        ("name", r.name.clone()),
        ("dim", r.dim.to_string()),
        ("num_vertices", r.num_vertices.to_string()),
        ("num_lattice_points", r.num_lattice_points.to_string()),
        ("volume_normalized", r.volume_normalized.to_string()),
        ("degree", r.degree.to_string()),
        ("d_P", r.d_p.to_string()),
        ("nu_P", r.nu_p.to_string()),
        ("m_P", opt(r.m_p)),
        ("k_P", r.k_p.map_or_else(|| "undefined (not very ample)".into(), |k| k.to_string())),
        ("very_ample", r.very_ample.to_string()),
        ("smooth", r.smooth.to_string()),
        ("normal", r.normal.to_string()),
        ("gamma", opt(r.gamma)),
        ("m_prime", opt(r.m_prime)),
        ("regularity", opt(r.regularity)),
        ("eg_rhs", r.eg_rhs.to_string()),
        ("eg_holds", opt(r.eg_holds)),
    ];
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<20} {v}");
    }
    let _ = writeln!(out, "bounds:");
    for (key, b) in &r.bounds {
        let mut tags = if b.proven { "proven" } else { "unproven" }.to_string();
        if b.degenerate {
            tags.push_str(", degenerate");
        }
        let _ = writeln!(out, "  {key:<18} {:>12}  {:<4} {tags}", b.value, b.target.to_string());
    }
    let w = &r.witnesses;
    if let Some(h) = &w.hole {
        let _ = writeln!(out, "hole witness         k={} {}", h.k, fmt_point(&h.point));
    }
    if let Some(s) = &w.sigma_max {
        let parts: Vec<String> = s.certificate.parts.iter().map(|p| fmt_point(p)).collect();
        let _ = writeln!(
            out,
            "sigma_max witness    x={} v={} sigma={} = {}",
            fmt_point(&s.x),
            fmt_point(&s.vertex),
            s.certificate.length,
            if parts.is_empty() { "0".into() } else { parts.join(" + ") }
        );
    }
    if let Some(n) = &w.non_saturation {
        let _ = writeln!(
            out,
            "non-saturation       x={} v={} target={} not generated",
            fmt_point(&n.x),
            fmt_point(&n.vertex),
            fmt_point(&n.target)
        );
    }
    out
}

pub const CSV_SCALAR_COLUMNS: &[&str] = &[
    "name",
    "dim",
    "num_vertices",
    "num_lattice_points",
    "volume_normalized",
    "degree",
    "d_P",
    "nu_P",
    "m_P",
    "k_P",
    "very_ample",
    "smooth",
    "normal",
    "gamma",
    "m_prime",
    "regularity",
];

/// One row per report; bounds flattened to `bounds.<key>` columns, witnesses
/// omitted.
pub fn reports_csv(reports: &[InvariantReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = CSV_SCALAR_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(BOUND_KEYS.iter().map(|k| format!("bounds.{k}")));
    header.extend(["eg_rhs".to_string(), "eg_holds".to_string()]);
    w.write_record(&header)?;
    for r in reports {
        let mut row = vec![
            r.name.clone(),
            r.dim.to_string(),
            r.num_vertices.to_string(),
            r.num_lattice_points.to_string(),
            r.volume_normalized.to_string(),
            r.degree.to_string(),
            r.d_p.to_string(),
            r.nu_p.to_string(),
            csv_opt(r.m_p),
            csv_opt(r.k_p),
            r.very_ample.to_string(),
            r.smooth.to_string(),
            r.normal.to_string(),
            csv_opt(r.gamma),
            csv_opt(r.m_prime),
            csv_opt(r.regularity),
        ];
        row.extend(BOUND_KEYS.iter().map(|k| csv_opt(r.bound(k))));
        row.push(r.eg_rhs.to_string());
        row.push(csv_opt(r.eg_holds));
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn holes_table(name: &str, levels: &[KNormality]) -> String {
    let mut out = format!("{name}\n");
    for l in levels {
        let _ = writeln!(out, "k={}: {} hole(s)", l.k, l.holes.len());
        for h in &l.holes {
            let _ = writeln!(out, "  {}", fmt_point(h));
        }
    }
    if levels.iter().all(|l| l.is_normal) {
        let _ = writeln!(out, "no holes");
    }
    out
}

pub fn holes_csv(levels: &[KNormality]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "point"])?;
    for l in levels {
        for h in &l.holes {
            w.write_record([l.k.to_string(), fmt_point(h)])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn audit_table(name: &str, very_ample: bool, audit: &AuditReport) -> String {
    let mut out = format!("{name}\n");
    if !very_ample {
        let _ = writeln!(out, "not very ample: k_P-dependent checks skipped");
    }
    let width = audit.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    for c in &audit.checks {
        let pad = width - c.name.chars().count();
        let _ = writeln!(out, "{}{}  {:<7}  {}", c.name, " ".repeat(pad), c.verdict.to_string(), c.detail);
    }
    out
}

pub fn audit_csv(audit: &AuditReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["property", "verdict", "theorem", "detail"])?;
    for c in &audit.checks {
        w.write_record([c.name, &c.verdict.to_string(), &c.theorem.to_string(), &c.detail])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn points_csv(points: &[IntVector]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.write_record(p.iter().map(i64::to_string))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
