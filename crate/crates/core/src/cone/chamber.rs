//! Chambers of a full-dimensional cone cut by a hyperplane arrangement.

use super::linalg::{self, IntVec};
use super::{LatticeVec, PolyCone};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Neg,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Pos,
}

impl Sign {
    pub fn of(x: &BigInt) -> Self {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    fn flip(self) -> Self {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

#[derive(Debug, Clone)]
pub struct Chamber {
    pub signs: Vec<Sign>,
    /// Strictly realizes every sign.
    pub witness: LatticeVec,
    pub cone: PolyCone,
}

/// Enumerates the full-dimensional chambers of `ambient` cut by the
/// hyperplanes `<h, x> = 0`, sorted by sign vector.
///
/// Starts from a chamber next to an interior point of `ambient` and crosses
/// one facet wall at a time.
pub fn chamber_decompose(ambient: &PolyCone, hyperplanes: &[LatticeVec]) -> Result<Vec<Chamber>> {
    let dim = ambient.dim();
    if !ambient.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: ambient.cone_dim(),
            ambient: dim,
        });
    }
    for h in hyperplanes {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: h.dim(),
            });
        }
    }

    let base: Vec<IntVec> = ambient
        .halfspaces()
        .into_iter()
        .map(|h| h.normal.0)
        .collect();
    let mut walls: HashMap<LatticeVec, Vec<usize>> = HashMap::new();
    for (j, h) in hyperplanes.iter().enumerate() {
        walls.entry(h.clone()).or_default().push(j);
        walls.entry(h.neg()).or_default().push(j);
    }

    let build = |signs: &[Sign]| -> PolyCone {
        let mut rows = base.clone();
        for (h, s) in hyperplanes.iter().zip(signs) {
            match s {
                Sign::Pos => rows.push(h.0.clone()),
                Sign::Neg => rows.push(h.neg().0),
                Sign::Zero => {
                    rows.push(h.0.clone());
                    rows.push(h.neg().0);
                }
            }
        }
        PolyCone::from_rows(dim, &rows, &[]).cone
    };

    let start = start_signs(ambient, hyperplanes);
    let mut seen: HashSet<Vec<Sign>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start.clone(), build(&start))]);
    let mut found: BTreeMap<Vec<Sign>, PolyCone> = BTreeMap::new();

    while let Some((signs, cone)) = queue.pop_front() {
        debug_assert!(cone.is_full_dimensional());
        for facet in cone.facets() {
            let Some(js) = walls.get(&facet.normal) else {
                continue;
            };
            for &j in js {
                let mut next = signs.clone();
                next[j] = next[j].flip();
                if !seen.insert(next.clone()) {
                    continue;
                }
                let c = build(&next);
                if c.is_full_dimensional() {
                    queue.push_back((next, c));
                }
            }
        }
        found.insert(signs, cone);
    }

    Ok(found
        .into_iter()
        .map(|(signs, cone)| {
            let witness = cone.interior_point();
            debug_assert!(hyperplanes
                .iter()
                .zip(&signs)
                .all(|(h, s)| Sign::of(&h.dot(&witness.0)) == *s));
            Chamber {
                signs,
                witness,
                cone,
            }
        })
        .collect())
}

/// Signs of an interior point of `ambient`, with ties broken by a
/// perturbation along the moment curve `(1, M, M^2, ...)`.
fn start_signs(ambient: &PolyCone, hyperplanes: &[LatticeVec]) -> Vec<Sign> {
    let w = ambient.interior_point();
    let bound = hyperplanes
        .iter()
        .flat_map(|h| h.0.iter().map(|x| x.abs()))
        .max()
        .unwrap_or_default();
    let m = bound + 1;
    let mut v = Vec::with_capacity(ambient.dim());
    let mut p = BigInt::from(1);
    for _ in 0..ambient.dim() {
        v.push(p.clone());
        p *= &m;
    }
    hyperplanes
        .iter()
        .map(|h| {
            let s = Sign::of(&h.dot(&w.0));
            if s == Sign::Zero {
                Sign::of(&linalg::dot(&h.0, &v))
            } else {
                s
            }
        })
        .collect()
}

/// Outcome of sampling random interior points of the ambient cone.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Census {
    pub samples: usize,
    /// Samples that landed exactly on some hyperplane (discarded).
    pub on_wall: usize,
    /// Sign vectors observed that are not among the listed chambers.
    pub unlisted: Vec<Vec<Sign>>,
    /// Hits per listed chamber, in chamber order.
    pub hits: Vec<usize>,
    /// Of the samples checked by exact cone membership, those lying in no
    /// chamber cone and those lying in more than one.
    pub uncovered: usize,
    pub multiply_covered: usize,
}

/// Samples random positive combinations of the ambient generators and
/// records their sign vectors against `hyperplanes`. The first
/// `membership_checks` samples are also tested against every chamber cone.
pub fn sign_vector_census(
    ambient: &PolyCone,
    hyperplanes: &[LatticeVec],
    chambers: &[Chamber],
    samples: usize,
    membership_checks: usize,
    seed: u64,
) -> Census {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let index: HashMap<&[Sign], usize> = chambers
        .iter()
        .enumerate()
        .map(|(i, c)| (c.signs.as_slice(), i))
        .collect();
    let gens = ambient.generators();
    let mut census = Census {
        samples,
        hits: vec![0; chambers.len()],
        ..Census::default()
    };
    let mut unlisted: HashSet<Vec<Sign>> = HashSet::new();
    for n in 0..samples {
        let mut x = vec![BigInt::zero(); ambient.dim()];
        for g in &gens {
            let w = BigInt::from(rng.gen_range(1..=1_000_000u64));
            for (a, b) in x.iter_mut().zip(&g.0) {
                *a += &w * b;
            }
        }
        let signs: Vec<Sign> = hyperplanes.iter().map(|h| Sign::of(&h.dot(&x))).collect();
        if signs.contains(&Sign::Zero) {
            census.on_wall += 1;
            continue;
        }
        match index.get(signs.as_slice()) {
            Some(&i) => census.hits[i] += 1,
            None => {
                unlisted.insert(signs);
            }
        }
        if n < membership_checks {
            let covering = chambers
                .iter()
                .filter(|c| c.cone.contains_lattice(&x))
                .count();
            match covering {
                0 => census.uncovered += 1,
                1 => {}
                _ => census.multiply_covered += 1,
            }
        }
    }
    census.unlisted = unlisted.into_iter().collect();
    census.unlisted.sort();
    census
}
