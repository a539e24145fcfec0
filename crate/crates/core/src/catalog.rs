//! Builtin polytope families and seeded random polytopes.
//!
//! Family grammar (shared with the CLI): `cube:d`, `simplex:d`, `bruns:s`,
//! `higashitani:d,h`, `reeve`, `random:d,bound,count,seed`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::IntVector;
use crate::polytope::{affine_rank, Polytope};

const MAX_RESAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cube { d: usize },
    Simplex { d: usize },
    Bruns { s: i64 },
    Higashitani { d: usize, h: i64 },
    Reeve,
    Random { d: usize, bound: i64, count: usize, seed: u64 },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Polytope> {
        match *self {
            FamilySpec::Cube { d } => cube(d),
            FamilySpec::Simplex { d } => standard_simplex(d),
            FamilySpec::Bruns { s } => bruns_gubeladze(s),
            FamilySpec::Higashitani { d, h } => higashitani(d, h),
            FamilySpec::Reeve => Ok(reeve_like()),
            FamilySpec::Random { d, bound, count, seed } => random_polytope(d, bound, count, seed),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cube { d } => write!(f, "cube:{d}"),
            FamilySpec::Simplex { d } => write!(f, "simplex:{d}"),
            FamilySpec::Bruns { s } => write!(f, "bruns:{s}"),
            FamilySpec::Higashitani { d, h } => write!(f, "higashitani:{d},{h}"),
            FamilySpec::Reeve => write!(f, "reeve"),
            FamilySpec::Random { d, bound, count, seed } => write!(f, "random:{d},{bound},{count},{seed}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<&str> = if params.is_empty() {
            Vec::new()
        } else {
            params.split(',').map(str::trim).collect()
        };
        let bad = || Error::Family(s.to_string());
        let num = |i: usize| -> Result<i64> { nums.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let unsigned = |i: usize| -> Result<usize> { usize::try_from(num(i)?).map_err(|_| bad()) };
        let arity = |n: usize| if nums.len() == n { Ok(()) } else { Err(bad()) };
        match family {
            "cube" => arity(1).and_then(|_| Ok(FamilySpec::Cube { d: unsigned(0)? })),
            "simplex" => arity(1).and_then(|_| Ok(FamilySpec::Simplex { d: unsigned(0)? })),
            "bruns" => arity(1).and_then(|_| Ok(FamilySpec::Bruns { s: num(0)? })),
            "higashitani" => {
                arity(2).and_then(|_| Ok(FamilySpec::Higashitani { d: unsigned(0)?, h: num(1)? }))
            }
            "reeve" => arity(0).map(|_| FamilySpec::Reeve),
            "random" => arity(4).and_then(|_| {
                Ok(FamilySpec::Random {
                    d: unsigned(0)?,
                    bound: num(1)?,
                    count: unsigned(2)?,
                    seed: u64::try_from(num(3)?).map_err(|_| bad())?,
                })
            }),
            _ => Err(bad()),
        }
    }
}

fn unit(d: usize, i: usize) -> IntVector {
    let mut e = vec![0; d];
    e[i] = 1;
    e
}

/// Unit cube `[0,1]^d`.
pub fn cube(d: usize) -> Result<Polytope> {
    if d < 1 {
        return Err(Error::Family(format!("cube needs d >= 1, got {d}")));
    }
    let pts: Vec<IntVector> = (0..1u64 << d)
        .map(|mask| (0..d).map(|i| ((mask >> (d - 1 - i)) & 1) as i64).collect())
        .collect();
    Polytope::from_points(&pts)
}

/// `conv{0, e_1, ..., e_d}`.
pub fn standard_simplex(d: usize) -> Result<Polytope> {
    if d < 1 {
        return Err(Error::Family(format!("simplex needs d >= 1, got {d}")));
    }
    let mut pts = vec![vec![0; d]];
    pts.extend((0..d).map(|i| unit(d, i)));
    Polytope::from_points(&pts)
}

/// Gubeladze-Bruns 3-polytope with parameter `s >= 4`: very ample, not normal.
pub fn bruns_gubeladze(s: i64) -> Result<Polytope> {
    if s < 4 {
        return Err(Error::Family(format!("bruns needs s >= 4, got {s}")));
    }
    Polytope::from_points(&[
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, s],
        [1, 1, s + 1],
    ])
}

/// Higashitani's very ample `d`-polytope with `h` holes.
pub fn higashitani(d: usize, h: i64) -> Result<Polytope> {
    if d < 3 || h < 1 {
        return Err(Error::Family(format!("higashitani needs d >= 3 and h >= 1, got d={d}, h={h}")));
    }
    let e = |i: usize| unit(d, i - 1);
    let middle: IntVector = (0..d).map(|i| i64::from(i >= 1 && i < d - 1)).collect();
    let ed = e(d);
    let comb = |a: i64, x: &[i64], b: i64, y: &[i64]| -> IntVector {
        x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
    };
    let e1 = e(1);
    let mut pts = vec![
        vec![0; d],
        ed.clone(),
        middle.clone(),
        comb(h, &middle, h, &ed),
        comb(h - 1, &middle, h, &ed),
        comb(h, &middle, h - 1, &ed),
        comb(1, &e1, 4, &ed),
        comb(1, &e1, 5, &ed),
        comb(1, &e1, 1, &middle),
        comb(1, &comb(1, &e1, 1, &middle), 1, &ed),
    ];
    for i in 2..d {
        pts.push(e(i));
        pts.push(comb(1, &e(i), 1, &ed));
    }
    Polytope::from_points(&pts)
}

/// `conv{0, (1,1,0), (1,0,1), (0,1,1)}`: not very ample.
pub fn reeve_like() -> Polytope {
    Polytope::from_points(&[[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]])
        .expect("fixed full-dimensional tetrahedron")
}

/// Hull of `count` points drawn uniformly from `[0, bound]^d` by a ChaCha8
/// stream seeded with `seed`; resampled until full-dimensional.
pub fn random_polytope(d: usize, bound: i64, count: usize, seed: u64) -> Result<Polytope> {
    if !(1..=6).contains(&d) || bound < 1 || count < d + 1 {
        return Err(Error::Family(format!(
            "random needs 1 <= d <= 6, bound >= 1, count >= d+1; got d={d}, bound={bound}, count={count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESAMPLES {
        let pts: Vec<IntVector> = (0..count)
            .map(|_| (0..d).map(|_| rng.gen_range(0..=bound)).collect())
            .collect();
        if affine_rank(&pts) == d {
            return Polytope::from_points(&pts);
        }
    }
    Err(Error::Family(format!(
        "random:{d},{bound},{count},{seed} stayed degenerate after {MAX_RESAMPLES} resamples"
    )))
}
