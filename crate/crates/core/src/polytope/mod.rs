//! Full-dimensional lattice polytopes in exact arithmetic.
//!
//! A [`Polytope`] keeps both representations: the extreme points of its
//! input and the complete list of facet inequalities `normal . x <= offset`
//! with primitive integer normals. Lattice points of dilates are memoized.

pub mod format;
mod union;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use itertools::Itertools;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{self, IntVector};

pub use union::union_if_convex;

/// Largest accepted absolute coordinate of an input point.
pub const COORD_LIMIT: i64 = 1 << 24;
/// Largest accepted dilation factor.
pub const MAX_DILATION: u32 = 1 << 16;

/// Inequality `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: IntVector,
    pub offset: i128,
}

impl HalfSpace {
    #[inline]
    pub fn value(&self, x: &[i64]) -> i128 {
        self.normal
            .iter()
            .zip(x)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    /// `x` satisfies the inequality scaled to the dilate `kP`.
    #[inline]
    pub fn contains(&self, x: &[i64], k: u32) -> bool {
        self.value(x) <= self.offset * k as i128
    }

    #[inline]
    pub fn is_tight(&self, x: &[i64], k: u32) -> bool {
        self.value(x) == self.offset * k as i128
    }
}

/// Primitive edge directions leaving a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFan {
    pub vertex: IntVector,
    pub edge_directions: Vec<IntVector>,
    pub neighbor_vertices: Vec<IntVector>,
}

#[derive(Debug, Default)]
struct LatticeCache(RwLock<HashMap<u32, Arc<Vec<IntVector>>>>);

#[derive(Debug)]
pub struct Polytope {
    vertices: Vec<IntVector>,
    dim: usize,
    facets: Vec<HalfSpace>,
    cache: LatticeCache,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        let cached = self.cache.0.read().expect("lattice cache poisoned").clone();
        Self {
            vertices: self.vertices.clone(),
            dim: self.dim,
            facets: self.facets.clone(),
            cache: LatticeCache(RwLock::new(cached)),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_point(v))?;
        }
        write!(f, "}}")
    }
}

pub fn fmt_point(v: &[i64]) -> String {
    format!("({})", v.iter().join(","))
}

fn validate_points<P: AsRef<[i64]>>(points: &[P]) -> Result<(usize, Vec<IntVector>)> {
    let first = points.first().ok_or(Error::Empty)?;
    let d = first.as_ref().len();
    let mut set = BTreeSet::new();
    for (index, p) in points.iter().enumerate() {
        let p = p.as_ref();
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                index,
                expected: d,
                got: p.len(),
            });
        }
        if let Some(&c) = p.iter().find(|c| c.abs() > COORD_LIMIT) {
            return Err(Error::CoordinateOverflow {
                value: c as i128,
                limit: COORD_LIMIT,
            });
        }
        set.insert(p.to_vec());
    }
    Ok((d, set.into_iter().collect()))
}

/// Affine rank of a point set (rank of differences to the first point).
pub fn affine_rank<P: AsRef<[i64]>>(points: &[P]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let base = base.as_ref();
    let diffs: Vec<IntVector> = points[1..].iter().map(|p| sub(p.as_ref(), base)).collect();
    if diffs.is_empty() {
        return 0;
    }
    exactmath::rank_i64(&diffs)
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(a: &[i64], k: i64) -> IntVector {
    a.iter().map(|x| x * k).collect()
}

/// Facet list of the convex hull of a full-dimensional point set, found by
/// testing every affinely independent `d`-subset for one-sidedness.
pub fn hrep_from_vrep<P: AsRef<[i64]>>(points: &[P]) -> Result<Vec<HalfSpace>> {
    let (d, pts) = validate_points(points)?;
    let rank = affine_rank(&pts);
    if rank < d {
        return Err(Error::NotFullDimensional { rank, ambient: d });
    }
    hull_facets(&pts, d)
}

fn hull_facets(pts: &[IntVector], d: usize) -> Result<Vec<HalfSpace>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut found: Vec<HalfSpace> = Vec::new();
    for combo in (0..pts.len()).combinations(d) {
        let c0 = &pts[combo[0]];
        if found
            .iter()
            .any(|h| combo.iter().all(|&i| h.is_tight(&pts[i], 1)))
        {
            continue;
        }
        let diffs: Vec<IntVector> = combo[1..].iter().map(|&i| sub(&pts[i], c0)).collect();
        let normal = exactmath::cofactor_normal(&diffs, d)?;
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let normal = exactmath::primitive_big(&normal)?;
        let mut small = Vec::with_capacity(d);
        for x in &normal {
            small.push(x.to_i64().ok_or_else(|| Error::CoordinateOverflow {
                value: if x.is_negative() { i128::MIN } else { i128::MAX },
                limit: i64::MAX,
            })?);
        }
        let mut h = HalfSpace {
            offset: 0,
            normal: small,
        };
        let c = h.value(c0);
        let (mut above, mut below) = (false, false);
        for p in pts {
            let v = h.value(p);
            above |= v > c;
            below |= v < c;
            if above && below {
                break;
            }
        }
        match (above, below) {
            (false, _) => h.offset = c,
            (true, false) => {
                h.normal.iter_mut().for_each(|x| *x = -*x);
                h.offset = -c;
            }
            (true, true) => continue,
        }
        found.push(h);
    }
    found.sort();
    found.dedup();
    Ok(found)
}

impl Polytope {
    /// Convex hull of a full-dimensional set of lattice points.
    pub fn from_points<P: AsRef<[i64]>>(points: &[P]) -> Result<Self> {
        let (d, pts) = validate_points(points)?;
        let rank = affine_rank(&pts);
        if rank < d {
            return Err(Error::NotFullDimensional { rank, ambient: d });
        }
        let facets = hull_facets(&pts, d)?;
        let vertices = if d == 0 {
            pts
        } else {
            pts.into_iter()
                .filter(|p| {
                    let tight: Vec<&IntVector> = facets
                        .iter()
                        .filter(|h| h.is_tight(p, 1))
                        .map(|h| &h.normal)
                        .collect();
                    tight.len() >= d && exactmath::rank_i64(&tight) == d
                })
                .collect()
        };
        Ok(Self {
            vertices,
            dim: d,
            facets,
            cache: LatticeCache::default(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn vertex_index(&self, v: &[i64]) -> Option<usize> {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).ok()
    }

    /// `x` lies in `kP`.
    pub fn contains(&self, x: &[i64], k: u32) -> bool {
        x.len() == self.dim && self.facets.iter().all(|h| h.contains(x, k))
    }

    /// `x` lies in the interior of `kP`.
    pub fn contains_interior(&self, x: &[i64], k: u32) -> bool {
        x.len() == self.dim && self.facets.iter().all(|h| h.value(x) < h.offset * k as i128)
    }

    /// Indices of facets tight at `x` (for the dilate `kP`).
    pub fn tight_facets(&self, x: &[i64], k: u32) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.facets[i].is_tight(x, k))
            .collect()
    }

    fn check_dilation(k: u32) -> Result<()> {
        if k == 0 || k > MAX_DILATION {
            return Err(Error::BadDilation(k));
        }
        Ok(())
    }

    /// Lattice points of `kP` in lexicographic order.
    pub fn lattice_points(&self, k: u32) -> Result<Arc<Vec<IntVector>>> {
        Self::check_dilation(k)?;
        if let Some(hit) = self.cache.0.read().expect("lattice cache poisoned").get(&k) {
            return Ok(Arc::clone(hit));
        }
        let pts = Arc::new(self.scan_box(k, |x| self.contains(x, k)));
        let mut cache = self.cache.0.write().expect("lattice cache poisoned");
        Ok(Arc::clone(cache.entry(k).or_insert(pts)))
    }

    pub fn interior_lattice_points(&self, k: u32) -> Result<Vec<IntVector>> {
        Self::check_dilation(k)?;
        Ok(self.scan_box(k, |x| self.contains_interior(x, k)))
    }

    pub fn num_lattice_points(&self) -> usize {
        self.lattice_points(1).map_or(0, |p| p.len())
    }

    fn scan_box(&self, k: u32, keep: impl Fn(&[i64]) -> bool) -> Vec<IntVector> {
        let d = self.dim;
        let k = k as i64;
        let lo: Vec<i64> = (0..d)
            .map(|i| self.vertices.iter().map(|v| v[i] * k).min().unwrap_or(0))
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|i| self.vertices.iter().map(|v| v[i] * k).max().unwrap_or(0))
            .collect();
        let mut out = Vec::new();
        let mut x = lo.clone();
        loop {
            if keep(&x) {
                out.push(x.clone());
            }
            let mut i = d;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i];
            }
        }
    }

    /// Edges at vertex `v`: a vertex `u` is a neighbour iff the facets tight
    /// at both have normals of rank `d - 1`.
    pub fn edge_fan(&self, v: &[i64]) -> Result<EdgeFan> {
        if self.vertex_index(v).is_none() {
            return Err(Error::NotAVertex(fmt_point(v)));
        }
        let at_v = self.tight_facets(v, 1);
        let mut edge_directions = Vec::new();
        let mut neighbor_vertices = Vec::new();
        for u in &self.vertices {
            if u.as_slice() == v {
                continue;
            }
            let common: Vec<&IntVector> = at_v
                .iter()
                .filter(|&&i| self.facets[i].is_tight(u, 1))
                .map(|&i| &self.facets[i].normal)
                .collect();
            let r = if common.is_empty() {
                0
            } else {
                exactmath::rank_i64(&common)
            };
            if r + 1 == self.dim {
                edge_directions.push(exactmath::primitive(&sub(u, v))?);
                neighbor_vertices.push(u.clone());
            }
        }
        Ok(EdgeFan {
            vertex: v.to_vec(),
            edge_directions,
            neighbor_vertices,
        })
    }

    /// `mP`.
    pub fn dilate(&self, m: u32) -> Result<Self> {
        Self::check_dilation(m)?;
        let pts: Vec<IntVector> = self.vertices.iter().map(|v| scale(v, m as i64)).collect();
        Self::from_points(&pts)
    }

    /// Cartesian product `P x Q`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let pts: Vec<IntVector> = self
            .vertices
            .iter()
            .cartesian_product(&other.vertices)
            .map(|(u, w)| u.iter().chain(w).copied().collect())
            .collect();
        Self::from_points(&pts)
    }

    /// Join: `P x {0} x {0}` and `{0} x Q x {1}` in dimension `dim P + dim Q + 1`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.dim, other.dim);
        let mut pts: Vec<IntVector> = Vec::new();
        for u in &self.vertices {
            let mut p = u.clone();
            p.resize(a + b + 1, 0);
            pts.push(p);
        }
        for w in &other.vertices {
            let mut p = vec![0; a];
            p.extend_from_slice(w);
            p.push(1);
            pts.push(p);
        }
        Self::from_points(&pts)
    }

    /// `P` is a lattice simplex of normalized volume one.
    pub fn is_unimodular_simplex(&self) -> bool {
        if self.vertices.len() != self.dim + 1 {
            return false;
        }
        let v0 = &self.vertices[0];
        let diffs: Vec<IntVector> = self.vertices[1..].iter().map(|v| sub(v, v0)).collect();
        exactmath::det_i64(&diffs).is_ok_and(|d| d.abs() == 1.into())
    }

    /// Pulling triangulation: cone from the lexicographically least vertex
    /// over a triangulation of every facet not containing it, recursively.
    /// Simplices are returned as vertex index lists.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        let incidences: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|h| {
                (0..self.vertices.len())
                    .filter(|&i| h.is_tight(&self.vertices[i], 1))
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        pulling(&all, self.dim, &incidences, &|face| {
            let pts: Vec<&IntVector> = face.iter().map(|&i| &self.vertices[i]).collect();
            affine_rank(&pts)
        })
    }
}

/// Pulling triangulation over an abstract face lattice. `face` is a sorted
/// vertex index set of dimension `dim`; `incidences` lists the vertex sets of
/// the ambient facets. Vertex indices must be ordered so the first index of a
/// face is the vertex to pull.
pub(crate) fn pulling(
    face: &[usize],
    dim: usize,
    incidences: &[Vec<usize>],
    affine_rank: &dyn Fn(&[usize]) -> usize,
) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for inc in incidences {
        let sub: Vec<usize> = face.iter().copied().filter(|i| inc.contains(i)).collect();
        if sub.len() < dim || sub.contains(&apex) || seen.contains(&sub) {
            continue;
        }
        if affine_rank(&sub) + 1 != dim {
            continue;
        }
        for mut s in pulling(&sub, dim - 1, incidences, affine_rank) {
            s.push(apex);
            out.push(s);
        }
        seen.insert(sub);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn square() -> Polytope {
        Polytope::from_points(&[[0, 0], [1, 0], [0, 1], [1, 1]]).unwrap()
    }

    fn feasibility_invariants(p: &Polytope) {
        let d = p.dim();
        for h in p.facets() {
            assert_eq!(h.normal.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)), 1);
            let tight: Vec<&IntVector> = p.vertices().iter().filter(|v| h.is_tight(v, 1)).collect();
            assert!(affine_rank(&tight) + 1 >= d, "facet {h:?} is not tight on a ridge-spanning set");
            for v in p.vertices() {
                assert!(h.contains(v, 1));
            }
        }
        let again = Polytope::from_points(p.vertices()).unwrap();
        assert_eq!(again.vertices(), p.vertices());
        assert_eq!(again.facets(), p.facets());
    }

    #[test]
    fn square_with_duplicates() {
        let p = Polytope::from_points(&[[0, 0], [1, 0], [0, 1], [1, 1], [0, 0]]).unwrap();
        assert_eq!(p.num_vertices(), 4);
        assert_eq!(p.facets().len(), 4);
        let expected = vec![
            HalfSpace { normal: vec![-1, 0], offset: 0 },
            HalfSpace { normal: vec![0, -1], offset: 0 },
            HalfSpace { normal: vec![0, 1], offset: 1 },
            HalfSpace { normal: vec![1, 0], offset: 1 },
        ];
        assert_eq!(p.facets(), expected.as_slice());
        feasibility_invariants(&p);
    }

    #[test]
    fn interior_points_are_not_vertices() {
        let p = Polytope::from_points(&[[0, 0], [2, 0], [0, 2], [1, 1], [1, 0], [0, 1]]).unwrap();
        assert_eq!(p.vertices(), &[vec![0, 0], vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn simplex_facets() {
        let s = catalog::standard_simplex(3).unwrap();
        assert_eq!(s.facets().len(), 4);
        assert!(s.facets().contains(&HalfSpace { normal: vec![1, 1, 1], offset: 1 }));
        feasibility_invariants(&s);
    }

    #[test]
    fn bruns_hull() {
        let p = catalog::bruns_gubeladze(4).unwrap();
        assert_eq!(p.num_vertices(), 8);
        assert_eq!(p.dim(), 3);
        feasibility_invariants(&p);
    }

    #[test]
    fn rejects_degenerate_input() {
        let e = Polytope::from_points(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap_err();
        assert_eq!(e, Error::NotFullDimensional { rank: 2, ambient: 3 });
        let empty: [[i64; 2]; 0] = [];
        assert_eq!(Polytope::from_points(&empty).unwrap_err(), Error::Empty);
        assert!(matches!(
            Polytope::from_points(&[vec![0, 0], vec![1]]),
            Err(Error::DimensionMismatch { index: 1, .. })
        ));
        assert!(matches!(
            Polytope::from_points(&[[0], [COORD_LIMIT + 1]]),
            Err(Error::CoordinateOverflow { .. })
        ));
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(square().lattice_points(2).unwrap().len(), 9);
        assert_eq!(catalog::bruns_gubeladze(4).unwrap().lattice_points(1).unwrap().len(), 8);
        assert_eq!(catalog::standard_simplex(2).unwrap().lattice_points(3).unwrap().len(), 10);
        assert_eq!(square().lattice_points(0).unwrap_err(), Error::BadDilation(0));
    }

    #[test]
    fn lattice_points_are_sorted_and_cached() {
        let p = catalog::cube(3).unwrap();
        let a = p.lattice_points(2).unwrap();
        let b = p.lattice_points(2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(a.len(), 27);
    }

    #[test]
    fn interior_points() {
        let c = catalog::cube(3).unwrap();
        assert!(c.interior_lattice_points(1).unwrap().is_empty());
        assert_eq!(c.interior_lattice_points(2).unwrap(), vec![vec![1, 1, 1]]);
        let s = catalog::standard_simplex(3).unwrap();
        assert!(s.interior_lattice_points(3).unwrap().is_empty());
        assert_eq!(s.interior_lattice_points(4).unwrap(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn edge_fans() {
        let sq = square();
        let f = sq.edge_fan(&[0, 0]).unwrap();
        assert_eq!(f.edge_directions, vec![vec![0, 1], vec![1, 0]]);
        let c = catalog::cube(3).unwrap();
        let mut dirs = c.edge_fan(&[0, 0, 0]).unwrap().edge_directions;
        dirs.sort();
        assert_eq!(dirs, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        let t = catalog::standard_simplex(2).unwrap();
        let mut dirs = t.edge_fan(&[1, 0]).unwrap().edge_directions;
        dirs.sort();
        assert_eq!(dirs, vec![vec![-1, 0], vec![-1, 1]]);
        assert!(matches!(sq.edge_fan(&[1, 2]), Err(Error::NotAVertex(_))));
    }

    #[test]
    fn edge_directions_are_primitive() {
        let p = Polytope::from_points(&[[0, 0], [4, 0], [0, 6]]).unwrap();
        let f = p.edge_fan(&[0, 0]).unwrap();
        assert_eq!(f.edge_directions, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(f.neighbor_vertices, vec![vec![0, 6], vec![4, 0]]);
    }

    #[test]
    fn products() {
        let seg = catalog::cube(1).unwrap();
        assert_eq!(seg.product(&seg).unwrap(), square());
        assert_eq!(square().product(&seg).unwrap(), catalog::cube(3).unwrap());
        let point = Polytope::from_points(&[Vec::<i64>::new()]).unwrap();
        let p = square().product(&point).unwrap();
        assert_eq!(p, square());
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn joins() {
        let point = Polytope::from_points(&[Vec::<i64>::new()]).unwrap();
        let seg = point.join(&point).unwrap();
        assert_eq!(seg.vertices(), &[vec![0], vec![1]]);
        let tri = catalog::cube(1).unwrap().join(&point).unwrap();
        assert!(tri.is_unimodular_simplex());
        let j = square().join(&catalog::cube(1).unwrap()).unwrap();
        assert_eq!(j.dim(), 4);
        assert_eq!(j.num_vertices(), 6);
        feasibility_invariants(&j);
    }

    #[test]
    fn product_lattice_points_factor() {
        let pairs = [
            (catalog::standard_simplex(2).unwrap(), catalog::cube(1).unwrap()),
            (square(), catalog::standard_simplex(1).unwrap()),
            (Polytope::from_points(&[[0, 0], [2, 1], [1, 2]]).unwrap(), catalog::cube(1).unwrap()),
        ];
        for (p, q) in &pairs {
            let prod = p.product(q).unwrap();
            for k in 1..=3 {
                let expect: BTreeSet<IntVector> = p
                    .lattice_points(k)
                    .unwrap()
                    .iter()
                    .cartesian_product(q.lattice_points(k).unwrap().iter())
                    .map(|(a, b)| a.iter().chain(b).copied().collect())
                    .collect();
                let got: BTreeSet<IntVector> = prod.lattice_points(k).unwrap().iter().cloned().collect();
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn minkowski_monotonicity() {
        for p in [catalog::bruns_gubeladze(4).unwrap(), catalog::reeve_like(), square()] {
            for k in 1..=3 {
                let next: BTreeSet<IntVector> = p.lattice_points(k + 1).unwrap().iter().cloned().collect();
                for a in p.lattice_points(k).unwrap().iter() {
                    for b in p.lattice_points(1).unwrap().iter() {
                        assert!(next.contains(&add(a, b)));
                    }
                }
            }
            assert!(p.num_lattice_points() >= p.num_vertices());
        }
    }

    #[test]
    fn triangulation_of_square() {
        let t = square().triangulate();
        assert_eq!(t.len(), 2);
    }
}
