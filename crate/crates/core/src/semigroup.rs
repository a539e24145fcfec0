//! Vertex semigroups `S_{P,v} = N(P ∩ M - v)`: minimal representation
//! lengths `sigma(x, d_P v)`, the invariant `m_P`, and the very-ampleness
//! decision at `r = d_P`.
//!
//! Searches are breadth-first over partial sums. A partial sum `y` of any
//! representation of a target `t` satisfies `y ∈ C` and `t - y ∈ C`, where
//! `C` is the tangent cone at `v`; since `C` is pointed that lower set is
//! finite, so exhausting it without reaching `t` proves `t ∉ S_{P,v}`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::IntVector;
use crate::polytope::{add, fmt_point, scale, sub, Polytope};

/// Generators of the semigroup at a vertex and the tangent cone there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub vertex: IntVector,
    /// Nonzero elements of `P ∩ M - v`, sorted.
    pub generators: Vec<IntVector>,
    /// Tangent cone as `{y : n . y <= 0}` over these normals.
    pub cone_normals: Vec<IntVector>,
}

impl GeneratorSet {
    pub fn at_vertex(p: &Polytope, v: &[i64]) -> Result<Self> {
        if p.vertex_index(v).is_none() {
            return Err(Error::NotAVertex(fmt_point(v)));
        }
        let mut generators: Vec<IntVector> = p
            .lattice_points(1)?
            .iter()
            .filter(|u| u.as_slice() != v)
            .map(|u| sub(u, v))
            .collect();
        generators.sort();
        let cone_normals = p
            .tight_facets(v, 1)
            .into_iter()
            .map(|i| p.facets()[i].normal.clone())
            .collect();
        Ok(Self {
            vertex: v.to_vec(),
            generators,
            cone_normals,
        })
    }

    /// Generators with the cone they span; `0` must be a vertex of
    /// `conv({0} ∪ generators)`.
    pub fn from_generators(vertex: IntVector, generators: Vec<IntVector>) -> Result<Self> {
        let origin = vec![0; vertex.len()];
        let mut pts = generators.clone();
        pts.push(origin.clone());
        let hull = Polytope::from_points(&pts)?;
        if hull.vertex_index(&origin).is_none() {
            return Err(Error::NotAVertex(fmt_point(&origin)));
        }
        let cone_normals = hull
            .tight_facets(&origin, 1)
            .into_iter()
            .map(|i| hull.facets()[i].normal.clone())
            .collect();
        let mut generators: Vec<IntVector> = generators.into_iter().filter(|g| g != &origin).collect();
        generators.sort();
        generators.dedup();
        Ok(Self {
            vertex,
            generators,
            cone_normals,
        })
    }

    fn cone_values(&self, y: &[i64]) -> Vec<i128> {
        self.cone_normals
            .iter()
            .map(|n| n.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum())
            .collect()
    }

    pub fn in_cone(&self, y: &[i64]) -> bool {
        self.cone_values(y).iter().all(|&v| v <= 0)
    }
}

/// Minimal-length representation `target = parts[0] + parts[1] + ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReprCertificate {
    pub target: IntVector,
    pub parts: Vec<IntVector>,
    pub length: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaOutcome {
    Representable(ReprCertificate),
    Infeasible,
}

impl SigmaOutcome {
    pub fn length(&self) -> Option<u32> {
        match self {
            SigmaOutcome::Representable(c) => Some(c.length),
            SigmaOutcome::Infeasible => None,
        }
    }
}

/// Breadth-first distances from `0` inside `{y : lower_i <= n_i . y <= 0}`.
struct Search<'a> {
    gs: &'a GeneratorSet,
    /// point -> (layer, generator index used to arrive; `u32::MAX` at the root)
    seen: HashMap<IntVector, (u32, u32)>,
}

impl<'a> Search<'a> {
    fn run(gs: &'a GeneratorSet, lower: &[i128], stop_at: Option<&[i64]>) -> Self {
        let d = gs.vertex.len();
        let root = vec![0; d];
        let mut seen = HashMap::new();
        seen.insert(root.clone(), (0, u32::MAX));
        let mut frontier = vec![root];
        let mut layer = 0;
        let inside = |y: &[i64]| {
            gs.cone_values(y)
                .iter()
                .zip(lower)
                .all(|(&v, &lo)| v <= 0 && v >= lo)
        };
        while !frontier.is_empty() {
            if stop_at.is_some_and(|t| seen.contains_key(t)) {
                break;
            }
            layer += 1;
            let mut next = Vec::new();
            for y in &frontier {
                for (gi, g) in gs.generators.iter().enumerate() {
                    let z = add(y, g);
                    if seen.contains_key(&z) || !inside(&z) {
                        continue;
                    }
                    seen.insert(z.clone(), (layer, gi as u32));
                    next.push(z);
                }
            }
            next.sort();
            frontier = next;
        }
        Self { gs, seen }
    }

    fn certificate(&self, target: &[i64]) -> Option<ReprCertificate> {
        let &(length, _) = self.seen.get(target)?;
        let mut parts = Vec::with_capacity(length as usize);
        let mut y = target.to_vec();
        while let Some(&(_, gi)) = self.seen.get(&y) {
            if gi == u32::MAX {
                break;
            }
            let g = &self.gs.generators[gi as usize];
            y = sub(&y, g);
            parts.push(g.clone());
        }
        parts.sort();
        Some(ReprCertificate {
            target: target.to_vec(),
            parts,
            length,
        })
    }
}

/// `sigma` for a single target: the least number of generators summing to it.
pub fn sigma(gs: &GeneratorSet, target: &[i64]) -> SigmaOutcome {
    if target.len() != gs.vertex.len() || !gs.in_cone(target) {
        return SigmaOutcome::Infeasible;
    }
    let lower = gs.cone_values(target);
    let search = Search::run(gs, &lower, Some(target));
    match search.certificate(target) {
        Some(c) => SigmaOutcome::Representable(c),
        None => SigmaOutcome::Infeasible,
    }
}

/// `sigma(x, d_P v)` for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaEntry {
    pub vertex: IntVector,
    pub x: IntVector,
    pub outcome: SigmaOutcome,
}

/// All pairs `(x, v)` with `x ∈ rP ∩ M`, grouped by vertex in vertex order,
/// `x` lexicographic within a vertex. One search per vertex covers every
/// target there.
pub fn sigma_table(p: &Polytope, r: u32) -> Result<Vec<SigmaEntry>> {
    let xs = p.lattice_points(r)?;
    let per_vertex: Vec<Result<Vec<SigmaEntry>>> = p
        .vertices()
        .par_iter()
        .map(|v| {
            let gs = GeneratorSet::at_vertex(p, v)?;
            let base = scale(v, r as i64);
            let targets: Vec<IntVector> = xs.iter().map(|x| sub(x, &base)).collect();
            let mut lower = vec![0i128; gs.cone_normals.len()];
            for t in &targets {
                for (lo, val) in lower.iter_mut().zip(gs.cone_values(t)) {
                    *lo = (*lo).min(val);
                }
            }
            let search = Search::run(&gs, &lower, None);
            Ok(xs
                .iter()
                .zip(&targets)
                .map(|(x, t)| SigmaEntry {
                    vertex: v.clone(),
                    x: x.clone(),
                    outcome: match search.certificate(t) {
                        Some(c) => SigmaOutcome::Representable(c),
                        None => SigmaOutcome::Infeasible,
                    },
                })
                .collect())
        })
        .collect();
    let mut out = Vec::new();
    for chunk in per_vertex {
        out.extend(chunk?);
    }
    Ok(out)
}

/// Pair attaining `m_P`, with its minimal representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaWitness {
    pub x: IntVector,
    pub vertex: IntVector,
    pub certificate: ReprCertificate,
}

/// Pair `(x, v)` with `x - r v` outside the vertex semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSaturation {
    pub x: IntVector,
    pub vertex: IntVector,
    pub target: IntVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MpOutcome {
    VeryAmple { m_p: u32, witness: SigmaWitness },
    NotVeryAmple { witness: NonSaturation },
}

impl MpOutcome {
    pub fn m_p(&self) -> Option<u32> {
        match self {
            MpOutcome::VeryAmple { m_p, .. } => Some(*m_p),
            MpOutcome::NotVeryAmple { .. } => None,
        }
    }
}

/// `m_P = max sigma(x, d_P v)` over `x ∈ d_P P ∩ M` and vertices `v`. The
/// first infeasible pair (vertex order, then `x` order) certifies that `P`
/// is not very ample.
pub fn compute_m_p(p: &Polytope, d_p: u32) -> Result<MpOutcome> {
    let table = sigma_table(p, d_p)?;
    let mut best: Option<SigmaWitness> = None;
    for e in table {
        match e.outcome {
            SigmaOutcome::Infeasible => {
                let target = sub(&e.x, &scale(&e.vertex, d_p as i64));
                return Ok(MpOutcome::NotVeryAmple {
                    witness: NonSaturation {
                        x: e.x,
                        vertex: e.vertex,
                        target,
                    },
                });
            }
            SigmaOutcome::Representable(c) => {
                if best.as_ref().is_none_or(|b| c.length > b.certificate.length) {
                    best = Some(SigmaWitness {
                        x: e.x,
                        vertex: e.vertex,
                        certificate: c,
                    });
                }
            }
        }
    }
    let witness = best.ok_or_else(|| Error::Internal("polytope without lattice points".into()))?;
    Ok(MpOutcome::VeryAmple {
        m_p: witness.certificate.length,
        witness,
    })
}

/// Very ample iff every `x - d_P v` lies in its vertex semigroup.
pub fn very_ample_check(p: &Polytope, d_p: u32) -> Result<(bool, Option<NonSaturation>)> {
    Ok(match compute_m_p(p, d_p)? {
        MpOutcome::VeryAmple { .. } => (true, None),
        MpOutcome::NotVeryAmple { witness } => (false, Some(witness)),
    })
}
