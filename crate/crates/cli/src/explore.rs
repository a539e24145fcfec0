//! Random search for polytopes that are interesting for the open questions:
//! Eisenbud-Goto violations, `d_P` differing from the dilate-normality
//! threshold, and smooth polytopes that are not normal.
//!
//! Records are stored one JSON object per line and carry the vertex list,
//! so every record can be recomputed from scratch.

use std::fs::{self, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use polynorm::exactmath::IntVector;
use polynorm::invariants;
use polynorm::{full_report, FamilySpec, InvariantReport, Polytope, ReportOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreConfig {
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    pub bound: i64,
    /// Points sampled per polytope.
    pub points: usize,
    pub max_k: u32,
}

impl ExploreConfig {
    pub fn validate(&self) -> Result<()> {
        if !(2..=4).contains(&self.dim) {
            bail!("explore needs --dim in 2..=4, got {}", self.dim);
        }
        if self.points < self.dim + 1 {
            bail!("explore needs --points >= dim+1, got {}", self.points);
        }
        if self.bound < 1 {
            bail!("explore needs --bound >= 1, got {}", self.bound);
        }
        Ok(())
    }

    /// Family spec of sample `i`; sample seeds are `seed + i`.
    pub fn spec(&self, i: usize) -> FamilySpec {
        FamilySpec::Random {
            d: self.dim,
            bound: self.bound,
            count: self.points,
            seed: self.seed.wrapping_add(i as u64),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreFlags {
    pub eg_violation: bool,
    #[serde(rename = "d_P_minimality_gap")]
    pub d_p_minimality_gap: bool,
    pub oda_gap: bool,
}

impl ExploreFlags {
    pub fn any(&self) -> bool {
        self.eg_violation || self.d_p_minimality_gap || self.oda_gap
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(rename = "d_P")]
    pub d_p: u32,
    #[serde(rename = "k_P")]
    pub k_p: Option<u32>,
    /// Least `n` with `kP` normal for every `k >= n`.
    pub dilate_threshold: u32,
    pub very_ample: bool,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreRecord {
    pub spec: String,
    pub vertices: Vec<IntVector>,
    pub flags: ExploreFlags,
    pub summary: Summary,
    pub report: InvariantReport,
}

/// Least `n` such that the dilate `kP` is normal for all `k >= n`. Dilates
/// with `k >= d-1` are always normal, so only `k <= d-2` are tested.
pub fn dilate_threshold(p: &Polytope) -> polynorm::Result<u32> {
    let d = p.dim() as u32;
    for k in (1..d.saturating_sub(1)).rev() {
        let dilate = if k == 1 { p.clone() } else { p.dilate(k)? };
        if !invariants::is_normal(&dilate)? {
            return Ok(k + 1);
        }
    }
    Ok(1)
}

pub fn evaluate(spec: &str, p: &Polytope, max_k: u32) -> polynorm::Result<ExploreRecord> {
    let report = full_report(p, spec, &ReportOptions { max_k })?;
    let threshold = dilate_threshold(p)?;
    let flags = ExploreFlags {
        eg_violation: report.eg_holds == Some(false),
        d_p_minimality_gap: threshold != report.d_p,
        oda_gap: report.smooth && report.k_p.is_some_and(|k| k > 1),
    };
    Ok(ExploreRecord {
        spec: spec.to_string(),
        vertices: p.vertices().to_vec(),
        flags,
        summary: Summary {
            d_p: report.d_p,
            k_p: report.k_p,
            dilate_threshold: threshold,
            very_ample: report.very_ample,
            smooth: report.smooth,
        },
        report,
    })
}

#[derive(Debug, Default)]
pub struct ExploreRun {
    /// All evaluated samples in sample order.
    pub records: Vec<ExploreRecord>,
    pub errors: Vec<(String, String)>,
}

impl ExploreRun {
    pub fn flagged(&self) -> impl Iterator<Item = &ExploreRecord> {
        self.records.iter().filter(|r| r.flags.any())
    }

    pub fn summary_line(&self, cfg: &ExploreConfig) -> String {
        let count = |f: fn(&ExploreFlags) -> bool| self.records.iter().filter(|r| f(&r.flags)).count();
        format!(
            "explored {} samples (dim {}, seed {}): flagged={} eg_violation={} d_P_minimality_gap={} oda_gap={} errors={}",
            self.records.len(),
            cfg.dim,
            cfg.seed,
            self.flagged().count(),
            count(|f| f.eg_violation),
            count(|f| f.d_p_minimality_gap),
            count(|f| f.oda_gap),
            self.errors.len()
        )
    }
}

/// Evaluates all samples in parallel; the output order is the sample order.
pub fn explore(cfg: &ExploreConfig) -> Result<ExploreRun> {
    cfg.validate()?;
    let results: Vec<(String, polynorm::Result<ExploreRecord>)> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let spec = cfg.spec(i);
            let name = spec.to_string();
            let rec = spec.build().and_then(|p| evaluate(&name, &p, cfg.max_k));
            (name, rec)
        })
        .collect();
    let mut run = ExploreRun::default();
    for (name, rec) in results {
        match rec {
            Ok(r) => run.records.push(r),
            Err(e) => run.errors.push((name, e.to_string())),
        }
    }
    Ok(run)
}

/// Appends records to a JSON-lines store.
pub fn append_records<'a>(path: &Path, records: impl IntoIterator<Item = &'a ExploreRecord>) -> Result<usize> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening store {}", path.display()))?;
    let mut out = BufWriter::new(file);
    let mut n = 0;
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
        n += 1;
    }
    out.flush()?;
    Ok(n)
}

pub fn read_store(path: &Path) -> Result<Vec<ExploreRecord>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading store {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("{}:{}", path.display(), i + 1)))
        .collect()
}

/// Recomputes a record from its stored vertices; returns the fields that
/// disagree with the stored copy.
pub fn reverify(rec: &ExploreRecord, max_k: u32) -> Result<Vec<String>> {
    let p = Polytope::from_points(&rec.vertices)?;
    let fresh = evaluate(&rec.spec, &p, max_k)?;
    let mut diffs = Vec::new();
    if fresh.vertices != rec.vertices {
        diffs.push("vertices".to_string());
    }
    if fresh.flags != rec.flags {
        diffs.push(format!("flags: stored {:?}, recomputed {:?}", rec.flags, fresh.flags));
    }
    if fresh.summary != rec.summary {
        diffs.push(format!("summary: stored {:?}, recomputed {:?}", rec.summary, fresh.summary));
    }
    if fresh.report != rec.report {
        diffs.push("report".to_string());
    }
    Ok(diffs)
}

#[derive(Debug, Default)]
pub struct VerifyOutcome {
    pub records: usize,
    pub failures: Vec<(String, String)>,
}

pub fn verify_store(path: &Path, max_k: u32) -> Result<VerifyOutcome> {
    let records = read_store(path)?;
    let checked: Vec<(String, Result<Vec<String>>)> = records
        .par_iter()
        .map(|r| (r.spec.clone(), reverify(r, max_k)))
        .collect();
    let mut out = VerifyOutcome {
        records: records.len(),
        ..Default::default()
    };
    for (spec, res) in checked {
        match res {
            Ok(d) if d.is_empty() => {}
            Ok(d) => out.failures.push((spec, d.join("; "))),
            Err(e) => out.failures.push((spec, format!("{e:#}"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polynorm::catalog;

    fn cfg(dim: usize, count: usize, seed: u64) -> ExploreConfig {
        ExploreConfig {
            dim,
            count,
            seed,
            bound: 2,
            points: dim + 3,
            max_k: 64,
        }
    }

    #[test]
    fn polygons_are_never_flagged() {
        let run = explore(&cfg(2, 20, 5)).unwrap();
        assert_eq!(run.records.len(), 20);
        assert_eq!(run.flagged().count(), 0);
    }

    #[test]
    fn runs_are_deterministic() {
        let a = explore(&cfg(3, 6, 1)).unwrap();
        let b = explore(&cfg(3, 6, 1)).unwrap();
        assert_eq!(a.records, b.records);
    }

    #[test]
    fn dilate_thresholds() {
        assert_eq!(dilate_threshold(&catalog::cube(3).unwrap()).unwrap(), 1);
        assert_eq!(dilate_threshold(&catalog::bruns_gubeladze(4).unwrap()).unwrap(), 2);
        assert_eq!(dilate_threshold(&catalog::reeve_like()).unwrap(), 2);
    }

    #[test]
    fn store_round_trip_and_reverify() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("store.jsonl");
        let p = catalog::bruns_gubeladze(4).unwrap();
        let rec = evaluate("bruns:4", &p, 64).unwrap();
        assert_eq!(append_records(&path, [&rec, &rec]).unwrap(), 2);
        let back = read_store(&path).unwrap();
        assert_eq!(back, vec![rec.clone(), rec.clone()]);
        assert!(verify_store(&path, 64).unwrap().failures.is_empty());

        let mut forged = rec;
        forged.report.k_p = Some(2);
        append_records(&path, [&forged]).unwrap();
        let v = verify_store(&path, 64).unwrap();
        assert_eq!((v.records, v.failures.len()), (3, 1));
    }

    #[test]
    fn dim_is_validated() {
        assert!(explore(&cfg(5, 1, 0)).is_err());
        assert!(explore(&cfg(1, 1, 0)).is_err());
    }
}
