//! Convexity test for unions of lattice polytopes.
//!
//! `conv(parts)` always contains the union; the union is convex iff the
//! difference has measure zero, i.e. iff the hull and the union have the
//! same volume. The union's volume comes from inclusion-exclusion over the
//! (rational) intersections of the parts.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{pulling, HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::exactmath::{self, IntMatrix, IntVector, Rational, Solution};

/// `conv(parts)` if the union of `parts` is convex, `None` otherwise.
pub fn union_if_convex(parts: &[Polytope]) -> Result<Option<Polytope>> {
    let first = parts.first().ok_or(Error::Empty)?;
    let d = first.dim();
    for (index, p) in parts.iter().enumerate() {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                index,
                expected: d,
                got: p.dim(),
            });
        }
    }
    let all: Vec<IntVector> = parts.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    let hull = Polytope::from_points(&all)?;
    let hull_volume = rational_volume(&hull.facets, d)?;

    let mut union_volume = Rational::zero();
    for size in 1..=parts.len() {
        for subset in (0..parts.len()).combinations(size) {
            let halfspaces: Vec<HalfSpace> = subset
                .iter()
                .flat_map(|&i| parts[i].facets().iter().cloned())
                .collect();
            let v = rational_volume(&halfspaces, d)?;
            if size % 2 == 1 {
                union_volume += v;
            } else {
                union_volume -= v;
            }
        }
    }
    Ok((hull_volume == union_volume).then_some(hull))
}

/// Normalized volume of `{x : h.normal . x <= h.offset}`; zero when the set
/// is not full-dimensional.
fn rational_volume(halfspaces: &[HalfSpace], d: usize) -> Result<Rational> {
    if d == 0 {
        return Ok(Rational::from(BigInt::from(1)));
    }
    let verts = vertex_enumeration(halfspaces, d)?;
    if verts.len() <= d || exactmath::rank_rational(&differences(&verts, &verts[0])) < d {
        return Ok(Rational::zero());
    }
    let tight = |h: &HalfSpace, x: &[Rational]| evaluate(h, x) == Rational::from(BigInt::from(h.offset));
    let incidences: Vec<Vec<usize>> = halfspaces
        .iter()
        .map(|h| (0..verts.len()).filter(|&i| tight(h, &verts[i])).collect())
        .collect();
    let rank = |face: &[usize]| {
        let pts: Vec<Vec<Rational>> = face.iter().map(|&i| verts[i].clone()).collect();
        exactmath::rank_rational(&differences(&pts, &pts[0]))
    };
    let all: Vec<usize> = (0..verts.len()).collect();
    let mut total = Rational::zero();
    for simplex in pulling(&all, d, &incidences, &rank) {
        let base = &verts[simplex[0]];
        let rows: Vec<Vec<Rational>> = simplex[1..]
            .iter()
            .map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += exactmath::abs_det_rational(&rows)?;
    }
    Ok(total)
}

fn differences(pts: &[Vec<Rational>], base: &[Rational]) -> Vec<Vec<Rational>> {
    pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect()
}

fn evaluate(h: &HalfSpace, x: &[Rational]) -> Rational {
    h.normal
        .iter()
        .zip(x)
        .fold(Rational::zero(), |acc, (&a, b)| acc + Rational::from(BigInt::from(a)) * b)
}

/// Vertices of an H-polytope by solving every `d`-subset of inequalities,
/// returned in lexicographic order.
fn vertex_enumeration(halfspaces: &[HalfSpace], d: usize) -> Result<Vec<Vec<Rational>>> {
    let hs: Vec<&HalfSpace> = halfspaces.iter().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for combo in (0..hs.len()).combinations(d) {
        let a = IntMatrix::from_i64_rows(&combo.iter().map(|&i| hs[i].normal.clone()).collect::<Vec<_>>())?;
        let b: Vec<BigInt> = combo.iter().map(|&i| BigInt::from(hs[i].offset)).collect();
        if let Solution::Unique(x) = exactmath::solve_rational(&a, &b)? {
            let feasible = hs
                .iter()
                .all(|h| !(evaluate(h, &x) - Rational::from(BigInt::from(h.offset))).is_positive());
            if feasible {
                out.insert(x);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[[i64; 2]]) -> Polytope {
        Polytope::from_points(pts).unwrap()
    }

    #[test]
    fn squares_sharing_an_edge() {
        let a = poly(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        let b = poly(&[[1, 0], [2, 0], [1, 1], [2, 1]]);
        let u = union_if_convex(&[a, b]).unwrap().expect("convex union");
        assert_eq!(u, poly(&[[0, 0], [2, 0], [0, 1], [2, 1]]));
    }

    #[test]
    fn squares_sharing_a_vertex() {
        let a = poly(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        let b = poly(&[[1, 1], [2, 1], [1, 2], [2, 2]]);
        assert!(union_if_convex(&[a, b]).unwrap().is_none());
    }

    #[test]
    fn split_triangle() {
        let a = poly(&[[0, 0], [2, 0], [1, 1]]);
        let b = poly(&[[0, 0], [1, 1], [0, 2]]);
        let u = union_if_convex(&[a, b]).unwrap().expect("convex union");
        assert_eq!(u, poly(&[[0, 0], [2, 0], [0, 2]]));
    }

    #[test]
    fn overlapping_parts() {
        let a = poly(&[[0, 0], [2, 0], [0, 2], [2, 2]]);
        let b = poly(&[[1, 0], [3, 0], [1, 2], [3, 2]]);
        assert!(union_if_convex(&[a, b]).unwrap().is_some());
        let c = poly(&[[0, 0], [2, 0], [0, 2]]);
        let e = poly(&[[1, 1], [3, 1], [1, 3]]);
        assert!(union_if_convex(&[c, e]).unwrap().is_none());
    }

    #[test]
    fn dimension_mismatch() {
        let a = poly(&[[0, 0], [1, 0], [0, 1]]);
        let b = Polytope::from_points(&[[0], [1]]).unwrap();
        assert!(matches!(union_if_convex(&[a, b]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rational_volume_of_square() {
        let sq = poly(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        assert_eq!(rational_volume(sq.facets(), 2).unwrap(), Rational::from(BigInt::from(2)));
    }
}
