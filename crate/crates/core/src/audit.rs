//! Property suite run against a finished analysis.
//!
//! Every check is an inequality or equivalence that must hold for a correct
//! computation; a failure means a bug, except for the Eisenbud-Goto checks,
//! which are conjectural in general and marked `theorem: false`.

use std::fmt;

use serde::Serialize;

use crate::bounds::{self, Analysis, BoundTarget};
use crate::error::Result;
use crate::invariants;
use crate::polytope::Polytope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub verdict: Verdict,
    pub theorem: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AuditReport {
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, ok: Option<bool>, detail: String) {
        self.push_with(name, true, ok, detail);
    }

    fn push_with(&mut self, name: &'static str, theorem: bool, ok: Option<bool>, detail: String) {
        let verdict = match ok {
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail,
            None => Verdict::Skipped,
        };
        self.checks.push(Check {
            name,
            verdict,
            theorem,
            detail,
        });
    }
}

/// Runs the suite. Volumes are recomputed independently of the report.
pub fn audit(p: &Polytope, analysis: &Analysis) -> Result<AuditReport> {
    let r = &analysis.report;
    let n = r.num_vertices;
    let mut out = AuditReport::default();

    out.push(
        "d_P <= nu_P <= n-1",
        Some(r.d_p <= r.nu_p && (r.nu_p as usize) < n.max(2)),
        format!("d_P={}, nu_P={}, n={n}", r.d_p, r.nu_p),
    );

    let chain = match (r.m_p, r.k_p) {
        (Some(m), Some(k)) => Some(r.d_p <= m && m <= k),
        _ => None,
    };
    out.push(
        "d_P <= m_P <= k_P",
        chain,
        format!("d_P={}, m_P={:?}, k_P={:?}", r.d_p, r.m_p, r.k_p),
    );

    out.push(
        "not normal => m_P >= d_P+1",
        r.m_p.map(|m| r.normal || m > r.d_p),
        format!("normal={}, m_P={:?}, d_P={}", r.normal, r.m_p, r.d_p),
    );

    out.push(
        "normal <=> k_P = 1 <=> d_P = 1",
        Some(r.normal == (r.k_p == Some(1)) && r.normal == (r.d_p == 1)),
        format!("normal={}, k_P={:?}, d_P={}", r.normal, r.k_p, r.d_p),
    );

    let theorem = r.bound("theorem");
    out.push(
        "theorem_bound = k_P <=> normal",
        theorem.zip(r.k_p).map(|(t, k)| (t == k as i128) == r.normal),
        format!("theorem={theorem:?}, k_P={:?}", r.k_p),
    );

    let refined = r.bound("refined");
    let dominance = match (theorem, refined, r.k_p) {
        (Some(t), Some(f), Some(k)) => Some(t >= f && f >= k as i128),
        (Some(t), None, Some(k)) => Some(t >= k as i128),
        _ => None,
    };
    out.push(
        "theorem_bound >= refined_bound >= k_P",
        dominance,
        format!("theorem={theorem:?}, refined={refined:?}, k_P={:?}", r.k_p),
    );

    // Normal levels at or above d_P stay normal.
    let mut propagation = true;
    let mut seen_normal = false;
    for (&k, level) in &analysis.scan.levels {
        if k >= r.d_p {
            if seen_normal && !level.is_normal {
                propagation = false;
            }
            seen_normal |= level.is_normal;
        }
    }
    out.push(
        "k-normal at k >= d_P propagates",
        Some(propagation),
        format!("hole counts {:?}", analysis.scan.hole_counts()),
    );

    let vol_e = invariants::volume_ehrhart(p)?;
    let vol_t = invariants::volume_triangulation(p)?;
    out.push(
        "Ehrhart volume = triangulation volume",
        Some(vol_e == vol_t && vol_e == r.volume_normalized.into()),
        format!("ehrhart={vol_e}, triangulation={vol_t}, report={}", r.volume_normalized),
    );

    // Each coefficient is at most m', so every coefficient sum is at most d*m'.
    let smooth_pair = r.gamma.zip(r.m_prime);
    out.push(
        "gamma <= d*m'",
        smooth_pair.map(|(g, m)| g as usize <= r.dim * m as usize),
        format!("gamma={:?}, m'={:?}", r.gamma, r.m_prime),
    );

    for (name, key) in [("m_P <= d_P*gamma", "m_P_gamma"), ("m_P <= d*d_P^d*Vol", "m_P_volume")] {
        let b = r.bound(key);
        out.push(
            name,
            b.zip(r.m_p).map(|(b, m)| m as i128 <= b),
            format!("m_P={:?}, bound={b:?}", r.m_p),
        );
    }

    out.push(
        "deg <= 1 => normal",
        Some(r.degree > 1 || r.normal),
        format!("deg={}, normal={}", r.degree, r.normal),
    );

    let mut violated = Vec::new();
    let mut evaluated = 0;
    for (key, b) in r.bounds.iter().filter(|(_, b)| b.proven) {
        let truth = match b.target {
            BoundTarget::KP => r.k_p,
            BoundTarget::MP => r.m_p,
            BoundTarget::DP => Some(r.d_p),
            BoundTarget::Reg => r.regularity,
        };
        if let Some(t) = truth {
            evaluated += 1;
            if b.value < t as i128 {
                violated.push(format!("{key}={} < {}={t}", b.value, b.target));
            }
        }
    }
    out.push(
        "proven bounds dominate",
        (evaluated > 0).then_some(violated.is_empty()),
        if violated.is_empty() {
            format!("{evaluated} bounds checked")
        } else {
            violated.join("; ")
        },
    );

    let checks = bounds::d_p_bound_checks(
        r.d_p,
        r.degree,
        r.volume_normalized,
        r.num_lattice_points,
        r.dim,
        p.is_unimodular_simplex(),
    );
    out.push(
        "d_P <= deg",
        checks.below_degree,
        format!("d_P={}, deg={}", r.d_p, r.degree),
    );
    out.push(
        "d_P <= Vol+d+1-|P∩M|",
        Some(checks.below_volume_gap),
        format!("d_P={}, Vol={}, |P∩M|={}", r.d_p, r.volume_normalized, r.num_lattice_points),
    );

    out.push_with(
        "Eisenbud-Goto: k_P <= Vol-|P∩M|+d+1",
        false,
        r.eg_holds,
        format!(
            "k_P={:?}, rhs={}",
            r.k_p,
            bounds::eg_k_rhs(r.volume_normalized, r.num_lattice_points, r.dim)
        ),
    );
    let reg_form = match (r.k_p, r.regularity) {
        (Some(k), Some(reg)) if k <= r.degree => Some(reg as i128 <= r.eg_rhs),
        _ => None,
    };
    out.push(
        "k_P <= deg => reg <= Vol-codim+1",
        reg_form,
        format!("reg={:?}, eg_rhs={}", r.regularity, r.eg_rhs),
    );

    Ok(out)
}
