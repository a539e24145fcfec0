//! k-normality and the combinatorial invariants built on it: holes, `d_P`,
//! `nu_P`, `k_P`, degree, normalized volume, smoothness, `gamma` and `m'`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{self, IntMatrix, IntVector, Rational, Solution};
use crate::polytope::{add, fmt_point, sub, EdgeFan, Polytope};

/// Outcome of one k-normality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KNormality {
    pub k: u32,
    pub is_normal: bool,
    /// `kP ∩ M` minus the k-fold sumset, lexicographically sorted.
    pub holes: Vec<IntVector>,
}

/// Iterated Minkowski sumsets `R_k = R_{k-1} + (P ∩ M)`.
pub struct Sumsets<'a> {
    polytope: &'a Polytope,
    base: Arc<Vec<IntVector>>,
    current: HashSet<IntVector>,
    level: u32,
}

impl<'a> Sumsets<'a> {
    pub fn new(polytope: &'a Polytope) -> Result<Self> {
        let base = polytope.lattice_points(1)?;
        let current = base.iter().cloned().collect();
        Ok(Self {
            polytope,
            base,
            current,
            level: 1,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.current.contains(x)
    }

    pub fn advance(&mut self) {
        let mut next = HashSet::with_capacity(self.current.len() * 2);
        for a in &self.current {
            for b in self.base.iter() {
                next.insert(add(a, b));
            }
        }
        self.current = next;
        self.level += 1;
    }

    /// Compares the current sumset with the lattice points of `kP`.
    pub fn check(&self) -> Result<KNormality> {
        let k = self.level;
        let target = self.polytope.lattice_points(k)?;
        let holes: Vec<IntVector> = target.iter().filter(|x| !self.current.contains(*x)).cloned().collect();
        Ok(KNormality {
            k,
            is_normal: holes.is_empty(),
            holes,
        })
    }
}

pub fn is_k_normal(p: &Polytope, k: u32) -> Result<(bool, Vec<IntVector>)> {
    if k == 0 {
        return Err(Error::BadDilation(0));
    }
    let mut sums = Sumsets::new(p)?;
    while sums.level() < k {
        sums.advance();
    }
    let r = sums.check()?;
    Ok((r.is_normal, r.holes))
}

/// Every point of `(k+1)P ∩ M` is `s + y` with `s` in `summands` and `y ∈ kP`.
fn sums_cover(p: &Polytope, summands: &[IntVector], k: u32) -> Result<bool> {
    let target = p.lattice_points(k + 1)?;
    Ok(target
        .par_iter()
        .all(|x| summands.iter().any(|s| p.contains(&sub(x, s), k))))
}

/// Smallest `n` with `P∩M + kP∩M = (k+1)P∩M` for every `k >= n`. The
/// equality always holds for `k >= d - 1`, so only `k <= d - 2` is scanned.
pub fn compute_d_p(p: &Polytope) -> Result<u32> {
    let d = p.dim() as u32;
    let points = p.lattice_points(1)?;
    for k in (1..d.saturating_sub(1)).rev() {
        if !sums_cover(p, &points, k)? {
            return Ok(k + 1);
        }
    }
    Ok(1)
}

/// As [`compute_d_p`] with the vertex set in place of `P ∩ M`; equality is
/// guaranteed for `k >= n - 1`.
pub fn compute_nu_p(p: &Polytope) -> Result<u32> {
    let n = p.num_vertices() as u32;
    for k in (1..n.saturating_sub(1)).rev() {
        if !sums_cover(p, p.vertices(), k)? {
            return Ok(k + 1);
        }
    }
    Ok(1)
}

/// `P` is normal (integer decomposition property).
pub fn is_normal(p: &Polytope) -> Result<bool> {
    Ok(compute_d_p(p)? == 1)
}

/// Per-level k-normality results and the derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityScan {
    pub levels: BTreeMap<u32, KNormality>,
    pub d_p: u32,
    pub nu_p: u32,
    /// `None` when the polytope is not very ample.
    pub k_p: Option<u32>,
}

impl NormalityScan {
    pub fn hole_counts(&self) -> BTreeMap<u32, usize> {
        self.levels.iter().map(|(&k, r)| (k, r.holes.len())).collect()
    }
}

/// Result of the `k_P` search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KpSearch {
    pub k_p: u32,
    /// Levels `1..=k*`, `k*` the first normal level at or above `d_P`.
    pub levels: Vec<KNormality>,
}

/// Scans `k = 1, 2, ...` until the first `k* >= d_P` at which `P` is
/// k-normal; every later level is then normal as well. `k_P` is one more
/// than the largest failing level below `k*`.
///
/// `m_p` is `None` for polytopes that are not very ample. The scan never
/// passes `(m_P - d_P) n + 1`; `cap` is an additional safety limit.
pub fn compute_k_p(p: &Polytope, m_p: Option<u32>, d_p: u32, cap: u32) -> Result<KpSearch> {
    let m_p = m_p.ok_or(Error::KpUndefined)?;
    let bound = (m_p.saturating_sub(d_p) as u64) * p.num_vertices() as u64 + 1;
    let mut sums = Sumsets::new(p)?;
    let mut levels = Vec::new();
    loop {
        let k = sums.level();
        if k > cap {
            return Err(Error::SearchCapExceeded { cap });
        }
        if k as u64 > bound.max(d_p as u64) {
            return Err(Error::Internal(format!(
                "no normal level found up to the proven bound {bound}"
            )));
        }
        let r = sums.check()?;
        let done = k >= d_p && r.is_normal;
        levels.push(r);
        if done {
            break;
        }
        sums.advance();
    }
    let k_p = levels.iter().filter(|r| !r.is_normal).map(|r| r.k + 1).max().unwrap_or(1);
    Ok(KpSearch { k_p, levels })
}

/// Levels `1..=up_to` of the sumset scan, regardless of very-ampleness.
pub fn scan_levels(p: &Polytope, up_to: u32) -> Result<Vec<KNormality>> {
    let mut sums = Sumsets::new(p)?;
    let mut out = Vec::new();
    for k in 1..=up_to {
        if k > 1 {
            sums.advance();
        }
        out.push(sums.check()?);
    }
    Ok(out)
}

/// `u = x + units[0] + ... ` with `x ∈ d_P P ∩ M` and `k - d_P` units in `P ∩ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub x: IntVector,
    pub units: Vec<IntVector>,
}

/// Splits `u ∈ kP ∩ M` into a point of `d_P P` plus `k - d_P` lattice points
/// of `P`, peeling off the lexicographically least admissible unit first.
pub fn decompose_point(p: &Polytope, u: &[i64], k: u32, d_p: u32) -> Result<Decomposition> {
    if k < d_p || k == 0 {
        return Err(Error::BadDilation(k));
    }
    if !p.contains(u, k) {
        return Err(Error::NotInDilate { point: fmt_point(u), k });
    }
    let units = p.lattice_points(1)?;
    let mut stack = Vec::new();
    if peel(p, &units, u.to_vec(), k, d_p, &mut stack) {
        let x = stack.pop().expect("base point recorded");
        return Ok(Decomposition { x, units: stack });
    }
    Err(Error::Internal(format!(
        "{} in {k}P has no decomposition over d_P = {d_p}",
        fmt_point(u)
    )))
}

fn peel(p: &Polytope, units: &[IntVector], u: IntVector, k: u32, d_p: u32, stack: &mut Vec<IntVector>) -> bool {
    if k == d_p {
        stack.push(u);
        return true;
    }
    for w in units {
        let rest = sub(&u, w);
        if p.contains(&rest, k - 1) {
            stack.push(w.clone());
            if peel(p, units, rest, k - 1, d_p, stack) {
                return true;
            }
            stack.pop();
        }
    }
    false
}

/// `d` if `P` has interior lattice points, otherwise the least `i >= 0`
/// such that `kP` has no interior lattice points for `1 <= k <= d - i`.
pub fn degree(p: &Polytope) -> Result<u32> {
    let d = p.dim() as u32;
    for k in 1..=d {
        if !p.interior_lattice_points(k)?.is_empty() {
            return Ok(d + 1 - k);
        }
    }
    Ok(0)
}

fn positive_integer(v: Rational, what: &str) -> Result<BigInt> {
    if !v.is_integer() || !v.is_positive() {
        return Err(Error::Internal(format!("{what} produced non-positive-integer volume {v}")));
    }
    Ok(v.to_integer())
}

/// `d!` times the leading coefficient of the Ehrhart polynomial, obtained
/// by Lagrange interpolation of `|kP ∩ M|` at `k = 0..=d`.
pub fn volume_ehrhart(p: &Polytope) -> Result<BigInt> {
    let d = p.dim();
    let mut values = vec![BigInt::one()];
    for k in 1..=d as u32 {
        values.push(BigInt::from(p.lattice_points(k)?.len()));
    }
    let mut lead = Rational::zero();
    for (j, y) in values.iter().enumerate() {
        let mut denom = BigInt::one();
        for i in 0..=d {
            if i != j {
                denom *= BigInt::from(j as i64 - i as i64);
            }
        }
        lead += Rational::new(y.clone(), denom);
    }
    let fact: BigInt = (1..=d as u64).map(BigInt::from).product();
    positive_integer(lead * Rational::from(fact), "Ehrhart interpolation")
}

/// Sum of `|det|` over the simplices of a pulling triangulation.
pub fn volume_triangulation(p: &Polytope) -> Result<BigInt> {
    let verts = p.vertices();
    let mut total = BigInt::zero();
    for s in p.triangulate() {
        let base = &verts[s[0]];
        let rows: Vec<IntVector> = s[1..].iter().map(|&i| sub(&verts[i], base)).collect();
        total += exactmath::det_i64(&rows)?.abs();
    }
    positive_integer(Rational::from(total), "triangulation")
}

/// Edge data and corner scalings of a smooth polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothData {
    pub is_smooth: bool,
    pub fans: Vec<EdgeFan>,
    /// Least `gamma` with `P ⊆ C_{v,gamma}` at every vertex.
    pub gamma: Option<u32>,
    /// Largest single edge coordinate of a lattice point of `P`.
    pub m_prime: Option<u32>,
}

fn fans(p: &Polytope) -> Result<Vec<EdgeFan>> {
    p.vertices().iter().map(|v| p.edge_fan(v)).collect()
}

fn fan_is_unimodular(fan: &EdgeFan, d: usize) -> Result<bool> {
    if fan.edge_directions.len() != d {
        return Ok(false);
    }
    Ok(exactmath::det_i64(&fan.edge_directions)?.abs().is_one())
}

/// Every vertex has exactly `d` edges whose primitive directions form a
/// lattice basis.
pub fn is_smooth(p: &Polytope) -> Result<bool> {
    let d = p.dim();
    for fan in fans(p)? {
        if !fan_is_unimodular(&fan, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates of `u - v` in the edge basis at `v`.
fn edge_coordinates(fan: &EdgeFan, u: &[i64]) -> Result<Vec<i64>> {
    let d = u.len();
    let cols = &fan.edge_directions;
    let rows: Vec<Vec<i64>> = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let a = IntMatrix::from_i64_rows(&rows)?;
    let rhs: Vec<BigInt> = sub(u, &fan.vertex).into_iter().map(BigInt::from).collect();
    match exactmath::solve_rational(&a, &rhs)? {
        Solution::Unique(x) => x
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64().ok_or_else(|| Error::Internal("edge coordinate overflow".into()))
                } else {
                    Err(Error::Internal(format!("non-integral edge coordinate {c}")))
                }
            })
            .collect(),
        _ => Err(Error::Internal("edge directions do not form a basis".into())),
    }
}

pub fn smooth_data(p: &Polytope) -> Result<SmoothData> {
    let d = p.dim();
    let fans = fans(p)?;
    for fan in &fans {
        if !fan_is_unimodular(fan, d)? {
            return Ok(SmoothData {
                is_smooth: false,
                fans,
                gamma: None,
                m_prime: None,
            });
        }
    }
    let mut gamma = 0i64;
    let mut m_prime = 0i64;
    let points = p.lattice_points(1)?;
    for fan in &fans {
        for u in p.vertices() {
            gamma = gamma.max(edge_coordinates(fan, u)?.iter().sum());
        }
        for u in points.iter() {
            let a = edge_coordinates(fan, u)?;
            if a.iter().any(|&c| c < 0) {
                return Err(Error::Internal("lattice point outside its vertex cone".into()));
            }
            m_prime = m_prime.max(a.into_iter().max().unwrap_or(0));
        }
    }
    let to_u32 = |x: i64| u32::try_from(x).map_err(|_| Error::Internal("corner scaling overflow".into()));
    Ok(SmoothData {
        is_smooth: true,
        fans,
        gamma: Some(to_u32(gamma)?),
        m_prime: Some(to_u32(m_prime)?),
    })
}

pub fn gamma(p: &Polytope) -> Result<u32> {
    smooth_data(p)?.gamma.ok_or(Error::NotSmooth)
}

pub fn m_prime(p: &Polytope) -> Result<u32> {
    smooth_data(p)?.m_prime.ok_or(Error::NotSmooth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn square() -> Polytope {
        catalog::cube(2).unwrap()
    }

    fn two_simplex() -> Polytope {
        Polytope::from_points(&[[0, 0], [2, 0], [0, 2]]).unwrap()
    }

    #[test]
    fn bruns_k_normality() {
        let p = catalog::bruns_gubeladze(4).unwrap();
        let (ok, holes) = is_k_normal(&p, 2).unwrap();
        assert!(!ok);
        assert!(holes.contains(&vec![1, 1, 3]));
        assert_eq!(is_k_normal(&p, 3).unwrap(), (true, vec![]));
        assert_eq!(is_k_normal(&square(), 5).unwrap(), (true, vec![]));
    }

    #[test]
    fn d_p_values() {
        assert_eq!(compute_d_p(&catalog::cube(3).unwrap()).unwrap(), 1);
        assert_eq!(compute_d_p(&catalog::bruns_gubeladze(4).unwrap()).unwrap(), 2);
        assert_eq!(compute_d_p(&two_simplex()).unwrap(), 1);
        let hexagon = Polytope::from_points(&[[0, 0], [3, 0], [5, 2], [4, 5], [1, 4], [-1, 2]]).unwrap();
        assert_eq!(compute_d_p(&hexagon).unwrap(), 1);
    }

    #[test]
    fn nu_p_values() {
        assert_eq!(compute_nu_p(&catalog::bruns_gubeladze(4).unwrap()).unwrap(), 2);
        assert_eq!(compute_nu_p(&square()).unwrap(), 1);
        assert_eq!(compute_nu_p(&catalog::standard_simplex(2).unwrap()).unwrap(), 1);
    }

    #[test]
    fn k_p_values() {
        let b4 = catalog::bruns_gubeladze(4).unwrap();
        assert_eq!(compute_k_p(&b4, Some(3), 2, 64).unwrap().k_p, 3);
        let b5 = catalog::bruns_gubeladze(5).unwrap();
        let d5 = compute_d_p(&b5).unwrap();
        assert_eq!(compute_k_p(&b5, Some(4), d5, 64).unwrap().k_p, 4);
        assert_eq!(compute_k_p(&catalog::cube(3).unwrap(), Some(1), 1, 64).unwrap().k_p, 1);
        assert_eq!(compute_k_p(&b4, None, 2, 64).unwrap_err(), Error::KpUndefined);
        assert_eq!(compute_k_p(&b4, Some(3), 2, 2).unwrap_err(), Error::SearchCapExceeded { cap: 2 });
    }

    #[test]
    fn normal_levels_propagate_above_d_p() {
        for p in [
            catalog::bruns_gubeladze(4).unwrap(),
            catalog::higashitani(3, 1).unwrap(),
            catalog::reeve_like(),
        ] {
            let d_p = compute_d_p(&p).unwrap();
            let levels = scan_levels(&p, 5).unwrap();
            for w in levels.windows(2) {
                if w[0].k >= d_p && w[0].is_normal {
                    assert!(w[1].is_normal, "{p}: level {} normal but {} not", w[0].k, w[1].k);
                }
            }
        }
    }

    #[test]
    fn decompositions() {
        let dec = decompose_point(&square(), &[3, 3], 3, 1).unwrap();
        assert_eq!(dec.x, vec![1, 1]);
        assert_eq!(dec.units, vec![vec![1, 1], vec![1, 1]]);
        let b = catalog::bruns_gubeladze(4).unwrap();
        let dec = decompose_point(&b, &[1, 1, 3], 2, 2).unwrap();
        assert_eq!(dec, Decomposition { x: vec![1, 1, 3], units: vec![] });
        let s = catalog::standard_simplex(3).unwrap();
        let dec = decompose_point(&s, &[0, 0, 0], 4, 1).unwrap();
        assert_eq!(dec.x, vec![0, 0, 0]);
        assert_eq!(dec.units, vec![vec![0, 0, 0]; 3]);
        assert!(matches!(decompose_point(&square(), &[3, 0], 2, 1), Err(Error::NotInDilate { .. })));
    }

    #[test]
    fn decompositions_sum_back() {
        let p = catalog::bruns_gubeladze(5).unwrap();
        let d_p = compute_d_p(&p).unwrap();
        for k in d_p..=4 {
            for u in p.lattice_points(k).unwrap().iter() {
                let dec = decompose_point(&p, u, k, d_p).unwrap();
                assert!(p.contains(&dec.x, d_p));
                assert_eq!(dec.units.len() as u32, k - d_p);
                let total = dec.units.iter().fold(dec.x.clone(), |acc, w| add(&acc, w));
                assert_eq!(&total, u);
            }
        }
    }

    #[test]
    fn degrees() {
        for d in 1..=4 {
            assert_eq!(degree(&catalog::standard_simplex(d).unwrap()).unwrap(), 0);
        }
        assert_eq!(degree(&catalog::cube(3).unwrap()).unwrap(), 2);
        // Every vertex has x_1 in {0, 1}, so P has no interior point; 2P does.
        assert_eq!(degree(&catalog::higashitani(3, 2).unwrap()).unwrap(), 2);
    }

    #[test]
    fn volumes() {
        assert_eq!(volume_ehrhart(&catalog::cube(3).unwrap()).unwrap(), BigInt::from(6));
        for s in 4..=5 {
            let p = catalog::bruns_gubeladze(s).unwrap();
            assert_eq!(volume_ehrhart(&p).unwrap(), BigInt::from(s + 6));
            assert_eq!(volume_triangulation(&p).unwrap(), BigInt::from(s + 6));
        }
        for d in 1..=4 {
            let s = catalog::standard_simplex(d).unwrap();
            assert_eq!(volume_ehrhart(&s).unwrap(), BigInt::one());
            assert_eq!(volume_triangulation(&s).unwrap(), BigInt::one());
        }
        assert_eq!(volume_triangulation(&square()).unwrap(), BigInt::from(2));
        assert_eq!(volume_triangulation(&catalog::reeve_like()).unwrap(), BigInt::from(2));
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth(&catalog::cube(3).unwrap()).unwrap());
        assert!(is_smooth(&catalog::standard_simplex(3).unwrap()).unwrap());
        assert!(!is_smooth(&catalog::reeve_like()).unwrap());
        assert!(!is_smooth(&catalog::bruns_gubeladze(4).unwrap()).unwrap());
    }

    #[test]
    fn corner_scalings() {
        assert_eq!(gamma(&square()).unwrap(), 2);
        assert_eq!(gamma(&catalog::cube(3).unwrap()).unwrap(), 3);
        assert_eq!(gamma(&catalog::standard_simplex(3).unwrap()).unwrap(), 1);
        assert_eq!(gamma(&two_simplex()).unwrap(), 2);
        assert_eq!(m_prime(&square()).unwrap(), 1);
        assert_eq!(m_prime(&two_simplex()).unwrap(), 2);
        assert_eq!(m_prime(&catalog::cube(3).unwrap()).unwrap(), 1);
        assert_eq!(gamma(&catalog::reeve_like()).unwrap_err(), Error::NotSmooth);
    }
}
