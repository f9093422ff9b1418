//! Oracles and instance generators shared by the property and acceptance
//! targets. Nothing here goes through the double description code.

#![allow(dead_code)]

use conekit::blowup::{c_join, kappa, JoinSpec};
use conekit::cone::{LatticeVec, PolyCone, RatVec};
use conekit::picard::{cremona_curve, cremona_divisor, pair, CurveClass, DivisorClass, IndexSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Solves `sum_j x_j cols[j] = target` exactly; `None` when inconsistent or
/// when the columns are dependent.
fn solve_independent(cols: &[&Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let k = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| q(c[r])).collect();
            row.push(q(target[r]));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = BigRational::one() / &m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[pivot_row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| m[c][k].clone()).collect())
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..n {
        let extended: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(i);
                t
            })
            .collect();
        out.extend(extended);
    }
    out
}

/// `target in cone(gens)`, decided by Caratheodory: it is a non-negative
/// combination of some linearly independent subset.
pub fn in_cone(target: &[i64], gens: &[Vec<i64>]) -> bool {
    if target.iter().all(|&x| x == 0) {
        return true;
    }
    let dim = target.len();
    subsets(gens.len(), dim).into_iter().any(|sub| {
        if sub.is_empty() {
            return false;
        }
        let cols: Vec<&Vec<i64>> = sub.iter().map(|&i| &gens[i]).collect();
        solve_independent(&cols, target).is_some_and(|x| x.iter().all(|v| !v.is_negative()))
    })
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    v.iter().map(|x| x / g).collect()
}

/// Extremal rays of `cone(gens)` as primitive vectors, or `None` when the
/// cone contains a line. A generator is extremal iff it is not in the cone
/// of the generators off its ray.
pub fn extremal_oracle(gens: &[Vec<i64>]) -> Option<BTreeSet<Vec<i64>>> {
    let nonzero: Vec<Vec<i64>> = gens
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .map(|g| primitive(g))
        .collect();
    for g in &nonzero {
        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
        if in_cone(&neg, &nonzero) {
            return None;
        }
    }
    let mut out = BTreeSet::new();
    for g in &nonzero {
        let others: Vec<Vec<i64>> = nonzero.iter().filter(|h| *h != g).cloned().collect();
        if !in_cone(g, &others) {
            out.insert(g.clone());
        }
    }
    Some(out)
}

pub fn random_vectors<R: Rng>(rng: &mut R, dim: usize, count: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

pub fn cone_of(dim: usize, gens: &[Vec<i64>]) -> PolyCone {
    let rays: Vec<RatVec> = gens.iter().map(|g| RatVec::from_ints(g)).collect();
    PolyCone::from_rays(dim, &rays).expect("dimensions agree")
}

pub fn lattice_set(v: &[LatticeVec]) -> BTreeSet<Vec<i64>> {
    v.iter()
        .map(|r| {
            r.coords()
                .iter()
                .map(|x| i64::try_from(x.clone()).expect("small"))
                .collect()
        })
        .collect()
}

/// Structural checks every cone must pass. Returns a description of the
/// first failure.
pub fn check_cone(c: &PolyCone) -> Result<(), String> {
    for r in c.generators() {
        for h in c.halfspaces() {
            if h.normal.dot(r.coords()) < BigInt::zero() {
                return Err(format!("ray {r} violates facet {}", h.normal));
            }
        }
    }
    let back = c.dualize().dualize();
    if &back != c {
        return Err(format!("biduality fails: {c:?} vs {back:?}"));
    }
    let again = PolyCone::from_halfspaces(c.dim(), &c.halfspaces()).map_err(|e| e.to_string())?;
    if &again != c {
        return Err("H-description does not round trip".into());
    }
    if c.is_pointed() {
        let rays = c.extremal_rays().map_err(|e| e.to_string())?;
        let rebuilt = PolyCone::from_lattice_rays(c.dim(), &rays).map_err(|e| e.to_string())?;
        if &rebuilt != c {
            return Err("from_rays(extremal_rays) differs".into());
        }
    }
    Ok(())
}

/// Compares `extremal_rays` with the oracle on `cone(gens)`.
pub fn check_extremal(dim: usize, gens: &[Vec<i64>]) -> Result<(), String> {
    let c = cone_of(dim, gens);
    match (extremal_oracle(gens), c.extremal_rays()) {
        (None, Err(_)) => Ok(()),
        (Some(want), Ok(got)) => {
            let got = lattice_set(&got);
            if got == want {
                Ok(())
            } else {
                Err(format!("gens {gens:?}: engine {got:?}, oracle {want:?}"))
            }
        }
        (want, got) => Err(format!(
            "gens {gens:?}: pointedness differs ({want:?} vs {got:?})"
        )),
    }
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=6).into())
}

pub fn random_divisor<R: Rng>(rng: &mut R, n: usize, s: usize) -> DivisorClass {
    DivisorClass::new(
        n,
        random_rational(rng),
        (0..s).map(|_| random_rational(rng)).collect(),
    )
}

pub fn random_curve<R: Rng>(rng: &mut R, n: usize, s: usize) -> CurveClass {
    CurveClass::new(
        n,
        random_rational(rng),
        (0..s).map(|_| random_rational(rng)).collect(),
    )
}

pub fn random_subset<R: Rng>(rng: &mut R, s: usize, size: usize) -> IndexSet {
    let mut all: Vec<usize> = (1..=s).collect();
    all.shuffle(rng);
    IndexSet::new(all[..size].to_vec(), s).expect("valid subset")
}

/// Adjointness, involution on both sides, and invariance of the
/// anticanonical degree, for one Cremona move.
pub fn check_cremona(d: &DivisorClass, c: &CurveClass, gamma: &IndexSet) -> Result<(), String> {
    let e = |x: conekit::Error| x.to_string();
    let d2 = cremona_divisor(d, gamma).map_err(e)?;
    let c2 = cremona_curve(c, gamma).map_err(e)?;
    if pair(&d2, &c2).map_err(e)? != pair(d, c).map_err(e)? {
        return Err(format!("adjointness fails for {d} / {c} / {gamma}"));
    }
    if &cremona_divisor(&d2, gamma).map_err(e)? != d {
        return Err(format!("divisor involution fails for {d} / {gamma}"));
    }
    if &cremona_curve(&c2, gamma).map_err(e)? != c {
        return Err(format!("curve involution fails for {c} / {gamma}"));
    }
    if c2.anticanonical_degree() != c.anticanonical_degree() {
        return Err(format!("anticanonical degree changes for {c} / {gamma}"));
    }
    Ok(())
}

pub fn random_join<R: Rng>(rng: &mut R, n: usize, s: usize) -> JoinSpec {
    loop {
        let t = rng.gen_range(0..=n / 2);
        let size = rng.gen_range(0..=(n - 2 * t).min(s));
        if t == 0 && size == 0 {
            continue;
        }
        return JoinSpec::new(random_subset(rng, s, size), t);
    }
}

/// `pair(D, c_{I,t}) = -kappa(D, (I,t))`.
pub fn check_wall_class(d: &DivisorClass, join: &JoinSpec) -> Result<(), String> {
    let e = |x: conekit::Error| x.to_string();
    let c = c_join(d.n, d.s(), join).map_err(e)?;
    let lhs = pair(d, &c).map_err(e)?;
    let rhs = -kappa(d, join).map_err(e)?;
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{d} / {join}: pair {lhs}, -kappa {rhs}"))
    }
}
