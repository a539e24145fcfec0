//! Upper bounds on `k_P`, `m_P`, `d_P` and the regularity, and the full
//! per-polytope report that compares them with computed ground truth.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::IntVector;
use crate::invariants::{self, KNormality, NormalityScan};
use crate::polytope::Polytope;
use crate::semigroup::{self, MpOutcome, NonSaturation, SigmaWitness};

/// Integers that JSON consumers may read as doubles: plain numbers inside
/// the 53-bit safe range, decimal strings outside it.
pub mod json_int {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    pub const SAFE: i128 = (1 << 53) - 1;

    pub fn serialize<T, S>(v: &T, s: S) -> Result<S::Ok, S::Error>
    where
        T: Copy + Into<i128>,
        S: Serializer,
    {
        let v: i128 = (*v).into();
        if (-SAFE..=SAFE).contains(&v) {
            s.serialize_i64(v as i64)
        } else {
            s.serialize_str(&v.to_string())
        }
    }

    struct IntVisitor;

    impl Visitor<'_> for IntVisitor {
        type Value = i128;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an integer or a decimal string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<i128, E> {
            Ok(v.into())
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<i128, E> {
            Ok(v.into())
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<i128, E> {
            v.parse().map_err(E::custom)
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: TryFrom<i128>,
        D: Deserializer<'de>,
    {
        let v = d.deserialize_any(IntVisitor)?;
        T::try_from(v).map_err(|_| de::Error::custom(format!("integer {v} out of range")))
    }
}

/// The quantity a bound is an upper bound for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundTarget {
    #[serde(rename = "k_P")]
    KP,
    #[serde(rename = "m_P")]
    MP,
    #[serde(rename = "d_P")]
    DP,
    #[serde(rename = "reg")]
    Reg,
}

impl fmt::Display for BoundTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundTarget::KP => "k_P",
            BoundTarget::MP => "m_P",
            BoundTarget::DP => "d_P",
            BoundTarget::Reg => "reg",
        })
    }
}

/// Every key `full_report` may emit, in a fixed order for tabular output.
pub const BOUND_KEYS: &[&str] = &[
    "theorem",
    "refined",
    "smooth_gamma",
    "smooth_volume",
    "smooth_corollary",
    "m_P_gamma",
    "m_P_volume",
    "mumford_general",
    "mumford_table",
    "sturmfels",
    "sturmfels_k",
    "sturmfels_table",
    "d_P_degree",
    "d_P_volume",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    #[serde(with = "json_int")]
    pub value: i128,
    pub target: BoundTarget,
    /// The inequality is a theorem for this polytope (hypotheses hold and
    /// the formula is not degenerate).
    pub proven: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

impl BoundEntry {
    fn proven(value: i128, target: BoundTarget) -> Self {
        Self {
            value,
            target,
            proven: true,
            degenerate: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleWitness {
    pub k: u32,
    pub point: IntVector,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub hole: Option<HoleWitness>,
    pub sigma_max: Option<SigmaWitness>,
    pub non_saturation: Option<NonSaturation>,
}

/// Everything computed for one polytope. Field order is the stable JSON
/// key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub dim: usize,
    pub num_vertices: usize,
    #[serde(with = "json_int")]
    pub num_lattice_points: u64,
    #[serde(with = "json_int")]
    pub volume_normalized: u64,
    pub degree: u32,
    #[serde(rename = "d_P")]
    pub d_p: u32,
    #[serde(rename = "nu_P")]
    pub nu_p: u32,
    #[serde(rename = "m_P")]
    pub m_p: Option<u32>,
    #[serde(rename = "k_P")]
    pub k_p: Option<u32>,
    pub very_ample: bool,
    pub smooth: bool,
    pub normal: bool,
    pub gamma: Option<u32>,
    pub m_prime: Option<u32>,
    pub regularity: Option<u32>,
    pub bounds: BTreeMap<String, BoundEntry>,
    #[serde(with = "json_int")]
    pub eg_rhs: i128,
    pub eg_holds: Option<bool>,
    pub witnesses: Witnesses,
}

impl InvariantReport {
    pub fn bound(&self, key: &str) -> Option<i128> {
        self.bounds.get(key).map(|b| b.value)
    }

    /// `|P ∩ M| - d - 1`.
    pub fn codim(&self) -> i128 {
        self.num_lattice_points as i128 - self.dim as i128 - 1
    }
}

fn big_to_i128(v: BigInt) -> Result<i128> {
    v.to_i128().ok_or_else(|| Error::Internal(format!("bound {v} exceeds 128 bits")))
}

/// `(m_P - d_P) n + 1`.
pub fn theorem_bound(m_p: u32, d_p: u32, n: usize) -> i128 {
    (m_p as i128 - d_p as i128) * n as i128 + 1
}

/// `(m_P - d_P - 1) n + nu_P + 1`, valid for non-normal polytopes.
pub fn refined_bound(m_p: u32, d_p: u32, nu_p: u32, n: usize) -> i128 {
    (m_p as i128 - d_p as i128 - 1) * n as i128 + nu_p as i128 + 1
}

/// Both corner-scaling branches for smooth polytopes and their minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothBounds {
    /// `d_P (gamma - 1) n + 1`
    pub gamma_branch: i128,
    /// `(d d_P^d Vol - d_P) n + 1`
    pub volume_branch: i128,
    pub corollary_min: i128,
}

pub fn smooth_bounds(d: usize, d_p: u32, gamma: u32, volume: u64, n: usize) -> Result<SmoothBounds> {
    let n = BigInt::from(n);
    let dp = BigInt::from(d_p);
    let gamma_branch = &dp * (BigInt::from(gamma) - 1) * &n + 1;
    let volume_branch = (m_p_volume_bound(d, d_p, volume) - &dp) * &n + 1;
    let gamma_branch = big_to_i128(gamma_branch)?;
    let volume_branch = big_to_i128(volume_branch)?;
    Ok(SmoothBounds {
        gamma_branch,
        volume_branch,
        corollary_min: gamma_branch.min(volume_branch),
    })
}

/// `d * d_P^d * Vol`.
fn m_p_volume_bound(d: usize, d_p: u32, volume: u64) -> BigInt {
    BigInt::from(d) * BigInt::from(d_p).pow(d as u32) * BigInt::from(volume)
}

/// `max{k_P, deg} + 1`.
pub fn regularity(k_p: Option<u32>, degree: u32) -> Result<u32> {
    Ok(k_p.ok_or(Error::KpUndefined)?.max(degree) + 1)
}

/// Bounds from the classical literature in terms of `deg X = Vol` and
/// `codim X = |P ∩ M| - d - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalBounds {
    pub codim: i128,
    pub degenerate: bool,
    /// `(d+1)(Vol-2) + 2`, a bound on reg.
    pub mumford_general: i128,
    /// `(d+1)(Vol-2) + 1`, the k_P form tabulated for the cube.
    pub mumford_table: i128,
    /// `d * Vol * codim`, a bound on reg.
    pub sturmfels: i128,
    /// `|P ∩ M| * Vol * codim - 1`, a bound on k_P.
    pub sturmfels_k: i128,
    /// `2 d Vol codim`, the value tabulated for the Bruns-Gubeladze family.
    pub sturmfels_table: i128,
    /// `Vol - codim + 1`.
    pub eg_rhs: i128,
}

pub fn classical_bounds(d: usize, volume: u64, lattice_points: u64) -> ClassicalBounds {
    let (d, vol, lp) = (d as i128, volume as i128, lattice_points as i128);
    let codim = lp - d - 1;
    ClassicalBounds {
        codim,
        degenerate: codim <= 0,
        mumford_general: (d + 1) * (vol - 2) + 2,
        mumford_table: (d + 1) * (vol - 2) + 1,
        sturmfels: d * vol * codim,
        sturmfels_k: lp * vol * codim - 1,
        sturmfels_table: 2 * d * vol * codim,
        eg_rhs: vol - codim + 1,
    }
}

/// Right-hand side of the combinatorial Eisenbud-Goto inequality,
/// `Vol - |P ∩ M| + d + 1`.
pub fn eg_k_rhs(volume: u64, lattice_points: u64, d: usize) -> i128 {
    volume as i128 - lattice_points as i128 + d as i128 + 1
}

/// `k_P <= Vol - |P ∩ M| + d + 1`.
pub fn eg_check(k_p: u32, volume: u64, lattice_points: u64, d: usize) -> bool {
    k_p as i128 <= eg_k_rhs(volume, lattice_points, d)
}

/// Upper bounds on `d_P`; the degree bound does not apply to unimodular
/// simplices and is `None` there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpChecks {
    pub below_degree: Option<bool>,
    pub below_volume_gap: bool,
}

pub fn d_p_bound_checks(
    d_p: u32,
    degree: u32,
    volume: u64,
    lattice_points: u64,
    d: usize,
    standard_simplex: bool,
) -> DpChecks {
    DpChecks {
        below_degree: (!standard_simplex).then_some(d_p <= degree),
        below_volume_gap: d_p as i128 <= volume as i128 + d as i128 + 1 - lattice_points as i128,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    /// Safety cap on the k_P search.
    pub max_k: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { max_k: 64 }
    }
}

/// A report together with the k-normality levels scanned to build it.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: InvariantReport,
    pub scan: NormalityScan,
}

pub fn full_report(p: &Polytope, name: &str, opts: &ReportOptions) -> Result<InvariantReport> {
    analyze(p, name, opts).map(|a| a.report)
}

pub fn analyze(p: &Polytope, name: &str, opts: &ReportOptions) -> Result<Analysis> {
    let d = p.dim();
    let n = p.num_vertices();
    let lattice_points = p.lattice_points(1).map_err(Error::at("lattice points"))?.len() as u64;

    let d_p = invariants::compute_d_p(p).map_err(Error::at("d_P"))?;
    let nu_p = invariants::compute_nu_p(p).map_err(Error::at("nu_P"))?;
    let mp = semigroup::compute_m_p(p, d_p).map_err(Error::at("m_P"))?;
    let m_p = mp.m_p();

    let levels: Vec<KNormality> = match m_p {
        Some(_) => invariants::compute_k_p(p, m_p, d_p, opts.max_k)
            .map_err(Error::at("k_P"))?
            .levels,
        None => invariants::scan_levels(p, d_p.min(opts.max_k)).map_err(Error::at("k-normality scan"))?,
    };
    let k_p = m_p.map(|_| {
        levels.iter().filter(|r| !r.is_normal).map(|r| r.k + 1).max().unwrap_or(1)
    });

    let degree = invariants::degree(p).map_err(Error::at("degree"))?;
    let vol_e = invariants::volume_ehrhart(p).map_err(Error::at("volume"))?;
    let vol_t = invariants::volume_triangulation(p).map_err(Error::at("volume"))?;
    if vol_e != vol_t {
        return Err(Error::Internal(format!(
            "volume mismatch: Ehrhart {vol_e}, triangulation {vol_t}"
        )));
    }
    let volume = vol_e
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("volume {vol_e} exceeds 64 bits")))?;
    let smooth = invariants::smooth_data(p).map_err(Error::at("smoothness"))?;

    let very_ample = m_p.is_some();
    let normal = k_p == Some(1);
    let regularity = k_p.map(|k| k.max(degree) + 1);

    let mut bounds = BTreeMap::new();
    let classical = classical_bounds(d, volume, lattice_points);
    if let Some(m) = m_p {
        bounds.insert("theorem".into(), BoundEntry::proven(theorem_bound(m, d_p, n), BoundTarget::KP));
        if !normal {
            bounds.insert(
                "refined".into(),
                BoundEntry::proven(refined_bound(m, d_p, nu_p, n), BoundTarget::KP),
            );
        }
    }
    if let Some(g) = smooth.gamma {
        let sb = smooth_bounds(d, d_p, g, volume, n)?;
        bounds.insert("smooth_gamma".into(), BoundEntry::proven(sb.gamma_branch, BoundTarget::KP));
        bounds.insert("smooth_volume".into(), BoundEntry::proven(sb.volume_branch, BoundTarget::KP));
        bounds.insert("smooth_corollary".into(), BoundEntry::proven(sb.corollary_min, BoundTarget::KP));
        bounds.insert("m_P_gamma".into(), BoundEntry::proven(d_p as i128 * g as i128, BoundTarget::MP));
        bounds.insert(
            "m_P_volume".into(),
            BoundEntry::proven(big_to_i128(m_p_volume_bound(d, d_p, volume))?, BoundTarget::MP),
        );
    }
    let classical_entry = |value: i128, target: BoundTarget, hypotheses: bool| BoundEntry {
        value,
        target,
        proven: hypotheses && !classical.degenerate,
        degenerate: classical.degenerate,
    };
    let is_smooth = smooth.is_smooth;
    bounds.insert(
        "mumford_general".into(),
        classical_entry(classical.mumford_general, BoundTarget::Reg, is_smooth),
    );
    bounds.insert(
        "mumford_table".into(),
        classical_entry(classical.mumford_table, BoundTarget::KP, is_smooth),
    );
    bounds.insert("sturmfels".into(), classical_entry(classical.sturmfels, BoundTarget::Reg, true));
    bounds.insert("sturmfels_k".into(), classical_entry(classical.sturmfels_k, BoundTarget::KP, true));
    bounds.insert(
        "sturmfels_table".into(),
        classical_entry(classical.sturmfels_table, BoundTarget::Reg, false),
    );
    let standard_simplex = p.is_unimodular_simplex();
    bounds.insert(
        "d_P_degree".into(),
        BoundEntry {
            value: degree as i128,
            target: BoundTarget::DP,
            proven: !standard_simplex,
            degenerate: false,
        },
    );
    bounds.insert(
        "d_P_volume".into(),
        BoundEntry {
            value: volume as i128 + d as i128 + 1 - lattice_points as i128,
            target: BoundTarget::DP,
            proven: very_ample,
            degenerate: false,
        },
    );

    let hole = levels
        .iter()
        .rev()
        .find(|r| !r.is_normal)
        .map(|r| HoleWitness {
            k: r.k,
            point: r.holes[0].clone(),
        });
    let (sigma_max, non_saturation) = match mp {
        MpOutcome::VeryAmple { witness, .. } => (Some(witness), None),
        MpOutcome::NotVeryAmple { witness } => (None, Some(witness)),
    };

    let report = InvariantReport {
        name: name.to_string(),
        dim: d,
        num_vertices: n,
        num_lattice_points: lattice_points,
        volume_normalized: volume,
        degree,
        d_p,
        nu_p,
        m_p,
        k_p,
        very_ample,
        smooth: smooth.is_smooth,
        normal,
        gamma: smooth.gamma,
        m_prime: smooth.m_prime,
        regularity,
        bounds,
        eg_rhs: classical.eg_rhs,
        eg_holds: k_p.map(|k| eg_check(k, volume, lattice_points, d)),
        witnesses: Witnesses {
            hole,
            sigma_max,
            non_saturation,
        },
    };
    let scan = NormalityScan {
        levels: levels.into_iter().map(|r| (r.k, r)).collect(),
        d_p,
        nu_p,
        k_p,
    };
    Ok(Analysis { report, scan })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn theorem_bound_examples() {
        assert_eq!(theorem_bound(1, 1, 8), 1);
        assert_eq!(theorem_bound(3, 2, 8), 9);
        assert_eq!(theorem_bound(1, 1, 1000), 1);
    }

    #[test]
    fn refined_bound_examples() {
        for s in 4..=9i128 {
            assert_eq!(refined_bound(s as u32 - 1, 2, 2, 8), 8 * s - 29);
        }
        assert_eq!(refined_bound(3, 2, 2, 8), 3);
        for n in 10..14 {
            for nu in 1..n as u32 {
                assert_eq!(refined_bound(3, 2, nu, n), nu as i128 + 1);
            }
        }
    }

    #[test]
    fn smooth_bound_examples() {
        let cube3 = smooth_bounds(3, 1, 3, 6, 8).unwrap();
        assert_eq!(cube3.gamma_branch, 17);
        assert_eq!(cube3.volume_branch, (3 * 6 - 1) * 8 + 1);
        assert_eq!(cube3.corollary_min, 17);
        assert_eq!(smooth_bounds(3, 1, 1, 1, 4).unwrap().gamma_branch, 1);
        assert_eq!(smooth_bounds(2, 1, 2, 2, 4).unwrap().gamma_branch, 5);
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(regularity(Some(3), 2).unwrap(), 4);
        assert_eq!(regularity(Some(1), 2).unwrap(), 3);
        assert_eq!(regularity(Some(3), 3).unwrap(), 4);
        assert_eq!(regularity(None, 3).unwrap_err(), Error::KpUndefined);
    }

    #[test]
    fn classical_examples() {
        for s in 4..=7i128 {
            let c = classical_bounds(3, (s + 6) as u64, 8);
            assert_eq!(c.codim, 4);
            assert_eq!(c.sturmfels, 12 * (s + 6));
            assert_eq!(c.sturmfels_table, 24 * (s + 6));
            assert_eq!(c.eg_rhs, s + 3);
        }
        let cube = classical_bounds(3, 6, 8);
        assert_eq!(cube.eg_rhs, 6 - 8 + 3 + 1 + 1);
        assert_eq!(cube.eg_rhs, 6 - 8 + 3 + 2);
        assert_eq!(cube.mumford_general, 18);
        assert_eq!(cube.mumford_table, 17);
        for d in 2..=5u32 {
            let fact: i128 = (1..=d as i128).product();
            let two_d = 1i128 << d;
            let c = classical_bounds(d as usize, fact as u64, two_d as u64);
            assert_eq!(c.mumford_table, (d as i128 + 1) * (fact - 2) + 1);
            assert_eq!(c.sturmfels_k, two_d * fact * (two_d - d as i128 - 1) - 1);
            assert_eq!(eg_k_rhs(fact as u64, two_d as u64, d as usize), fact - two_d + d as i128 + 1);
        }
        assert!(classical_bounds(2, 1, 3).degenerate);
    }

    #[test]
    fn eg_examples() {
        assert!(eg_check(3, 10, 8, 3));
        assert_eq!(eg_k_rhs(10, 8, 3), 6);
        assert!(eg_check(1, 6, 8, 3));
        assert_eq!(eg_k_rhs(6, 8, 3), 2);
    }

    #[test]
    fn d_p_check_examples() {
        let c = d_p_bound_checks(2, 2, 10, 8, 3, false);
        assert_eq!(c.below_degree, Some(true));
        assert!(c.below_volume_gap);
        assert_eq!(d_p_bound_checks(1, 0, 1, 4, 3, true).below_degree, None);
        assert!(d_p_bound_checks(1, 1, 2, 4, 2, false).below_volume_gap);
    }

    #[test]
    fn bruns_report() {
        let r = full_report(&catalog::bruns_gubeladze(4).unwrap(), "bruns:4", &ReportOptions::default()).unwrap();
        assert_eq!((r.d_p, r.nu_p, r.m_p, r.k_p), (2, 2, Some(3), Some(3)));
        assert_eq!(r.volume_normalized, 10);
        assert_eq!(r.num_lattice_points, 8);
        assert_eq!(r.regularity, Some(4));
        assert!(r.very_ample && !r.normal);
        assert_eq!(r.eg_holds, Some(true));
        assert_eq!(r.bound("refined"), Some(3));
        assert_eq!(r.bound("theorem"), Some(9));
        assert_eq!(r.witnesses.hole, Some(HoleWitness { k: 2, point: vec![1, 1, 3] }));
    }

    #[test]
    fn cube_report() {
        let r = full_report(&catalog::cube(3).unwrap(), "cube:3", &ReportOptions::default()).unwrap();
        assert_eq!((r.d_p, r.m_p, r.k_p), (1, Some(1), Some(1)));
        assert_eq!(r.volume_normalized, 6);
        assert_eq!(r.regularity, Some(3));
        assert!(r.smooth && r.normal);
        assert_eq!(r.gamma, Some(3));
        assert_eq!(r.bound("smooth_gamma"), Some(17));
        assert!(r.witnesses.hole.is_none());
    }

    #[test]
    fn higashitani_report() {
        let a = analyze(&catalog::higashitani(3, 2).unwrap(), "h", &ReportOptions::default()).unwrap();
        let r = &a.report;
        assert_eq!((r.d_p, r.m_p, r.k_p, r.regularity), (2, Some(3), Some(3), Some(4)));
        assert_eq!(a.scan.hole_counts().get(&2), Some(&2));
    }

    #[test]
    fn reeve_report() {
        let r = full_report(&catalog::reeve_like(), "reeve", &ReportOptions::default()).unwrap();
        assert!(!r.very_ample && !r.normal);
        assert_eq!(r.k_p, None);
        assert_eq!(r.regularity, None);
        assert_eq!(r.eg_holds, None);
        let w = r.witnesses.non_saturation.unwrap();
        assert_eq!((w.x, w.vertex), (vec![1, 1, 1], vec![0, 0, 0]));
    }

    #[test]
    fn bound_keys_cover_reports() {
        for p in [catalog::cube(2).unwrap(), catalog::bruns_gubeladze(4).unwrap(), catalog::reeve_like()] {
            let r = full_report(&p, "t", &ReportOptions::default()).unwrap();
            assert!(r.bounds.keys().all(|k| BOUND_KEYS.contains(&k.as_str())));
        }
    }

    #[test]
    fn json_key_order_and_safe_ints() {
        let r = full_report(&catalog::cube(2).unwrap(), "sq", &ReportOptions::default()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let keys = [
            "\"name\"", "\"dim\"", "\"num_vertices\"", "\"num_lattice_points\"", "\"volume_normalized\"",
            "\"degree\"", "\"d_P\"", "\"nu_P\"", "\"m_P\"", "\"k_P\"", "\"very_ample\"", "\"smooth\"",
            "\"normal\"", "\"gamma\"", "\"m_prime\"", "\"regularity\"", "\"bounds\"", "\"eg_rhs\"",
            "\"eg_holds\"", "\"witnesses\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
        let back: InvariantReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);

        let mut big = r.clone();
        big.eg_rhs = json_int::SAFE + 1;
        let s = serde_json::to_string(&big).unwrap();
        assert!(s.contains(&format!("\"eg_rhs\":\"{}\"", json_int::SAFE + 1)));
        let back: InvariantReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.eg_rhs, json_int::SAFE + 1);
    }
}
