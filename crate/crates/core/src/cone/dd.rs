//! Double description conversion from inequalities `A x >= 0` to generators.
//!
//! The lineality space is consumed first: while some lineality direction is
//! not orthogonal to the next inequality, that direction becomes a ray and the
//! rest of the state is sheared onto the hyperplane. After that the classical
//! pointed update runs. Two rays are adjacent when the rows they both
//! saturate have rank `d - |L| - 2`.

use super::linalg::{IntVec, RankOracle};
use super::scalar::{self, Exact, Overflow};
use num_bigint::BigInt;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(bits: usize) -> Self {
        Self {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub(crate) fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    #[cfg(debug_assertions)]
    pub(crate) fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// Output of a conversion: `{x : A x >= 0} = cone(rays) + span(lineality)`.
/// Rays are extreme modulo the lineality space but not yet canonicalized.
#[derive(Debug, Clone)]
pub(crate) struct Generators {
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
    /// Rows saturated by each ray.
    pub incidence: Vec<BitSet>,
}

pub(crate) fn convert(dim: usize, rows: &[IntVec]) -> Generators {
    if let Some(out) = rows_as::<i64>(rows).and_then(|r| run::<i64>(dim, &r).ok()) {
        return out;
    }
    let big: Vec<Vec<BigInt>> = rows.to_vec();
    run::<BigInt>(dim, &big).expect("bigint arithmetic does not overflow")
}

fn rows_as<N: Exact>(rows: &[IntVec]) -> Option<Vec<Vec<N>>> {
    rows.iter()
        .map(|r| r.iter().map(N::from_big).collect::<Option<Vec<N>>>())
        .collect()
}

struct Ray<N> {
    v: Vec<N>,
    /// Processed rows this ray saturates.
    zero: BitSet,
    /// Sign of every row (processed or not) on `v`.
    signs: Vec<Ordering>,
}

fn signs_of<N: Exact>(rows: &[Vec<N>], v: &[N]) -> Result<Vec<Ordering>, Overflow> {
    rows.iter()
        .map(|r| scalar::dot(r, v).map(|x| x.sign()))
        .collect()
}

fn run<N: Exact>(dim: usize, rows: &[Vec<N>]) -> Result<Generators, Overflow> {
    let m = rows.len();
    let mut lineality: Vec<Vec<N>> = (0..dim)
        .map(|i| {
            let mut e = vec![N::zero(); dim];
            e[i] = N::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray<N>> = Vec::new();
    let mut processed = vec![false; m];
    let ranker = RankOracle::new(
        rows.iter()
            .map(|r| r.iter().map(Exact::to_big).collect())
            .collect(),
    );
    // violating rays per row
    let mut violations = vec![0isize; m];

    for _ in 0..m {
        let row = next_row(&violations, &processed);
        let a = &rows[row];

        if let Some(idx) = lineality
            .iter()
            .position(|l| scalar::dot(a, l).map_or(true, |x| x.sign() != Ordering::Equal))
        {
            let mut l0 = lineality.remove(idx);
            let mut c0 = scalar::dot(a, &l0)?;
            if c0.sign() == Ordering::Less {
                l0 = l0.iter().map(|x| x.neg()).collect::<Result<_, _>>()?;
                c0 = c0.neg()?;
            }
            for l in lineality.iter_mut() {
                let v = scalar::dot(a, l)?;
                if v.sign() != Ordering::Equal {
                    *l = scalar::combine(&c0, l, &v, &l0)?;
                }
            }
            for r in rays.iter_mut() {
                let v = scalar::dot(a, &r.v)?;
                if v.sign() != Ordering::Equal {
                    r.v = scalar::combine(&c0, &r.v, &v, &l0)?;
                    tally(&mut violations, &r.signs, -1);
                    r.signs = signs_of(rows, &r.v)?;
                    tally(&mut violations, &r.signs, 1);
                }
                r.zero.insert(row);
            }
            scalar::make_primitive(&mut l0);
            let mut zero = BitSet::new(m);
            for (i, done) in processed.iter().enumerate() {
                if *done {
                    zero.insert(i);
                }
            }
            let signs = signs_of(rows, &l0)?;
            tally(&mut violations, &signs, 1);
            rays.push(Ray { v: l0, zero, signs });
            processed[row] = true;
            continue;
        }

        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            match r.signs[row] {
                Ordering::Greater => pos.push(i),
                Ordering::Less => neg.push(i),
                Ordering::Equal => {}
            }
        }
        if neg.is_empty() {
            for r in rays.iter_mut() {
                if r.signs[row] == Ordering::Equal {
                    r.zero.insert(row);
                }
            }
            processed[row] = true;
            continue;
        }

        let needed = dim.saturating_sub(lineality.len() + 2);
        let mut created = Vec::new();
        let values: Vec<Option<N>> = rays
            .iter()
            .map(|r| {
                (r.signs[row] != Ordering::Equal)
                    .then(|| scalar::dot(a, &r.v))
                    .transpose()
            })
            .collect::<Result<_, _>>()?;
        // negative incidence words packed contiguously for the inner loop
        let width = rays[neg[0]].zero.words.len();
        let packed: Vec<u64> = neg
            .iter()
            .flat_map(|&i| rays[i].zero.words.iter().copied())
            .collect();
        for &p in &pos {
            let pw = &rays[p].zero.words;
            for (k, &n) in neg.iter().enumerate() {
                let nw = &packed[k * width..(k + 1) * width];
                let shared: u32 = pw.iter().zip(nw).map(|(a, b)| (a & b).count_ones()).sum();
                if (shared as usize) < needed {
                    continue;
                }
                let common = rays[p].zero.intersection(&rays[n].zero);
                if !ranker.reaches((0..m).filter(|&i| common.contains(i)), needed) {
                    continue;
                }
                let ap = values[p].as_ref().expect("positive ray has a value");
                let an = values[n].as_ref().expect("negative ray has a value");
                // ap * n - an * p: both coefficients positive, saturates `a`.
                let v = scalar::combine(ap, &rays[n].v, an, &rays[p].v)?;
                #[cfg(debug_assertions)]
                debug_check_adjacent(&rays, p, n, &common);
                let mut zero = common;
                zero.insert(row);
                let signs = signs_of(rows, &v)?;
                tally(&mut violations, &signs, 1);
                created.push(Ray { v, zero, signs });
            }
        }

        let mut kept: Vec<Ray<N>> = Vec::with_capacity(rays.len() + created.len());
        for mut r in rays.into_iter() {
            match r.signs[row] {
                Ordering::Less => tally(&mut violations, &r.signs, -1),
                Ordering::Equal => {
                    r.zero.insert(row);
                    kept.push(r);
                }
                Ordering::Greater => kept.push(r),
            }
        }
        kept.extend(created);
        rays = kept;
        processed[row] = true;
    }

    Ok(Generators {
        incidence: rays.iter().map(|r| r.zero.clone()).collect(),
        rays: rays
            .into_iter()
            .map(|r| r.v.iter().map(Exact::to_big).collect())
            .collect(),
        lineality: lineality
            .into_iter()
            .map(|l| l.iter().map(Exact::to_big).collect())
            .collect(),
    })
}

fn tally(violations: &mut [isize], signs: &[Ordering], delta: isize) {
    for (c, s) in violations.iter_mut().zip(signs) {
        if *s == Ordering::Less {
            *c += delta;
        }
    }
}

/// Unprocessed row with the fewest currently violating rays; ties go to the
/// lowest index.
fn next_row(violations: &[isize], processed: &[bool]) -> usize {
    (0..processed.len())
        .filter(|&j| !processed[j])
        .min_by_key(|&j| (violations[j], j))
        .expect("called with an unprocessed row")
}

/// Combinatorial adjacency: no third ray saturates every common row.
/// Skipped on large ray sets, where the scan dominates.
#[cfg(debug_assertions)]
fn debug_check_adjacent<N>(rays: &[Ray<N>], p: usize, n: usize, common: &BitSet) {
    if rays.len() > 2048 {
        return;
    }
    let blocked = rays
        .iter()
        .enumerate()
        .any(|(i, r)| i != p && i != n && common.is_subset(&r.zero));
    debug_assert!(!blocked, "algebraic and combinatorial adjacency disagree");
}
