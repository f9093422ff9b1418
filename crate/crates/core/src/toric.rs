//! Complete simplicial fans in rank 3 and the Losev–Manin threefold: its
//! boundary divisors, effective and movable cones, the flop of the curve
//! attached to the wall `(v_1, v_123)`, and the class `gamma = e_1 - e_14`
//! that stops being 1-moving after the flop.

use crate::cone::linalg::{self, Echelon};
use crate::cone::{cone_equal, LatticeVec, PolyCone, RatVec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

const LM_FAN_JSON: &str = include_str!("../data/lm_fan.json");

/// A fan in `Z^3` given by its rays and maximal cones (sorted ray indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<[i64; 3]>,
    labels: Vec<String>,
    max_cones: BTreeSet<Vec<usize>>,
}

/// On-disk form: `{"rays": [[x,y,z], ...], "max_cones": [[i,j,k], ...]}` with
/// optional ray labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanDocument {
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FanValidation {
    pub simplicial: bool,
    /// Every 2-face of a maximal cone lies in exactly two maximal cones.
    pub walls_two_sided: bool,
    /// Maximal cones are connected through shared walls.
    pub connected: bool,
    /// No maximal cone's interior witness lies in another maximal cone.
    pub interiors_disjoint: bool,
}

impl FanValidation {
    pub fn complete(&self) -> bool {
        self.walls_two_sided && self.connected && self.interiors_disjoint
    }

    pub fn ok(&self) -> bool {
        self.simplicial && self.complete()
    }
}

fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl Fan {
    pub fn new(rays: Vec<[i64; 3]>, labels: Vec<String>, max_cones: &[Vec<usize>]) -> Result<Self> {
        if labels.len() != rays.len() {
            return Err(Error::Fan(format!(
                "{} labels for {} rays",
                labels.len(),
                rays.len()
            )));
        }
        let mut cones = BTreeSet::new();
        for c in max_cones {
            if let Some(&i) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::Fan(format!(
                    "cone refers to ray {i}, fan has {}",
                    rays.len()
                )));
            }
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            cones.insert(c);
        }
        Ok(Self {
            rays,
            labels,
            max_cones: cones,
        })
    }

    pub fn from_document(doc: &FanDocument) -> Result<Self> {
        let rays = doc
            .rays
            .iter()
            .map(|r| {
                <[i64; 3]>::try_from(r.as_slice()).map_err(|_| Error::DimensionMismatch {
                    expected: 3,
                    got: r.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = doc
            .labels
            .clone()
            .unwrap_or_else(|| (0..rays.len()).map(|i| i.to_string()).collect());
        Self::new(rays, labels, &doc.max_cones)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FanDocument =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> FanDocument {
        FanDocument {
            rays: self.rays.iter().map(|r| r.to_vec()).collect(),
            max_cones: self.max_cones.iter().cloned().collect(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn rays(&self) -> &[[i64; 3]] {
        &self.rays
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn max_cones(&self) -> impl Iterator<Item = &[usize]> {
        self.max_cones.iter().map(Vec::as_slice)
    }

    pub fn ray_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownRay(label.to_string()))
    }

    fn walls(&self) -> BTreeMap<[usize; 2], Vec<&[usize]>> {
        let mut walls: BTreeMap<[usize; 2], Vec<&[usize]>> = BTreeMap::new();
        for c in &self.max_cones {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    walls.entry([c[i], c[j]]).or_default().push(c);
                }
            }
        }
        walls
    }

    fn cone_of(&self, c: &[usize]) -> PolyCone {
        let rays: Vec<LatticeVec> = c
            .iter()
            .filter_map(|&i| LatticeVec::new(to_big(&self.rays[i])))
            .collect();
        PolyCone::from_lattice_rays(3, &rays).expect("rank 3 rays")
    }

    pub fn validate(&self) -> FanValidation {
        let simplicial = self
            .max_cones
            .iter()
            .all(|c| c.len() == 3 && det3(self.rays[c[0]], self.rays[c[1]], self.rays[c[2]]) != 0);
        let walls = self.walls();
        let walls_two_sided = walls.values().all(|cs| cs.len() == 2);

        let cones: Vec<&Vec<usize>> = self.max_cones.iter().collect();
        let connected = if cones.is_empty() {
            false
        } else {
            let mut seen = vec![false; cones.len()];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(i) = queue.pop_front() {
                for (j, other) in cones.iter().enumerate() {
                    let shared = cones[i].iter().filter(|r| other.contains(r)).count();
                    if !seen[j] && shared == 2 {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            seen.iter().all(|&b| b)
        };

        let polys: Vec<PolyCone> = cones.iter().map(|c| self.cone_of(c)).collect();
        let interiors_disjoint = polys.iter().enumerate().all(|(i, c)| {
            let w = c.interior_point();
            polys
                .iter()
                .enumerate()
                .all(|(j, other)| i == j || !other.contains_lattice(w.coords()))
        });

        FanValidation {
            simplicial,
            walls_two_sided,
            connected,
            interiors_disjoint,
        }
    }

    /// Whether some cone of the fan contains both rays.
    pub fn divisors_meet(&self, a: usize, b: usize) -> Result<bool> {
        for r in [a, b] {
            if r >= self.rays.len() {
                return Err(Error::UnknownRay(r.to_string()));
            }
        }
        Ok(self
            .max_cones
            .iter()
            .any(|c| c.contains(&a) && c.contains(&b)))
    }

    /// The two maximal cones on either side of the wall `(a, b)` and their
    /// remaining rays.
    fn wall_neighbours(&self, a: usize, b: usize) -> Result<(usize, usize)> {
        let key = [a.min(b), a.max(b)];
        let walls = self.walls();
        let cones = walls.get(&key).filter(|cs| cs.len() == 2).ok_or_else(|| {
            Error::Fan(format!("no wall ({}, {})", self.labels[a], self.labels[b]))
        })?;
        let other = |c: &[usize]| *c.iter().find(|&&r| r != a && r != b).expect("3 rays");
        Ok((other(cones[0]), other(cones[1])))
    }

    /// The primitive relation `sum lambda_r v_r = 0` among the rays of the
    /// two cones around the wall `(a, b)`, returned as coefficients for
    /// `[a, b, c, d]` with `c, d` the rays off the wall and positive
    /// coefficients on them.
    pub fn wall_relation(&self, a: usize, b: usize) -> Result<([usize; 4], [i64; 4])> {
        let (c, d) = self.wall_neighbours(a, b)?;
        let ids = [a, b, c, d];
        let mut rows = Echelon::new();
        for axis in 0..3 {
            rows.insert(
                ids.iter()
                    .map(|&i| BigInt::from(self.rays[i][axis]))
                    .collect(),
            );
        }
        let kernel = rows.into_rref().orthogonal_complement(4);
        let [rel] = kernel.rows() else {
            return Err(Error::Fan("wall rays are degenerate".into()));
        };
        let mut rel: Vec<i64> = rel.iter().map(|x| x.to_i64().expect("small")).collect();
        if rel[2] < 0 {
            rel.iter_mut().for_each(|x| *x = -*x);
        }
        if rel[2] <= 0 || rel[3] <= 0 {
            return Err(Error::Fan(
                "cones do not lie on opposite sides of the wall".into(),
            ));
        }
        Ok((ids, [rel[0], rel[1], rel[2], rel[3]]))
    }

    /// Replaces the two cones around the wall `(a, b)` by the other
    /// triangulation of their union. Requires the union to be convex with the
    /// segment between the off-wall rays crossing the wall.
    pub fn flop(&self, a: usize, b: usize) -> Result<Fan> {
        let ([a, b, c, d], rel) = self.wall_relation(a, b)?;
        if rel[0] >= 0 || rel[1] >= 0 {
            return Err(Error::Fan(format!(
                "wall ({}, {}) is not flippable",
                self.labels[a], self.labels[b]
            )));
        }
        let mut cones = self.max_cones.clone();
        for old in [[a, b, c], [a, b, d]] {
            let mut old = old.to_vec();
            old.sort_unstable();
            cones.remove(&old);
        }
        for new in [[a, c, d], [b, c, d]] {
            let mut new = new.to_vec();
            new.sort_unstable();
            cones.insert(new);
        }
        Ok(Fan {
            rays: self.rays.clone(),
            labels: self.labels.clone(),
            max_cones: cones,
        })
    }

    /// Maximal cones in exactly one of the two fans.
    pub fn symmetric_difference(&self, other: &Fan) -> Vec<Vec<usize>> {
        self.max_cones
            .symmetric_difference(&other.max_cones)
            .cloned()
            .collect()
    }
}

/// The fan of the Losev–Manin threefold, read from the bundled data file.
pub fn lm_fan() -> Fan {
    Fan::from_json(LM_FAN_JSON).expect("bundled fan file is valid")
}

/// Coordinates: `H, E_1..E_4, E_12, E_13, E_14, E_23, E_24, E_34`.
pub const LM_RANK: usize = 11;

const PAIRS: [[usize; 2]; 6] = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];

fn pair_slot(i: usize, j: usize) -> Result<usize> {
    let key = [i.min(j), i.max(j)];
    PAIRS
        .iter()
        .position(|p| *p == key)
        .map(|p| 5 + p)
        .ok_or_else(|| Error::UnknownRay(format!("{i}{j}")))
}

fn point_slot(i: usize) -> Result<usize> {
    if (1..=4).contains(&i) {
        Ok(i)
    } else {
        Err(Error::UnknownRay(i.to_string()))
    }
}

fn fmt_lm(f: &mut fmt::Formatter<'_>, c: &[i64; LM_RANK], h: &str, e: &str) -> fmt::Result {
    let names = std::iter::once(h.to_string())
        .chain((1..=4).map(|i| format!("{e}{i}")))
        .chain(PAIRS.iter().map(|[i, j]| format!("{e}{i}{j}")));
    let mut first = true;
    for (x, name) in c.iter().zip(names) {
        if *x == 0 {
            continue;
        }
        let sign = if *x < 0 { "-" } else { "+" };
        if first {
            if *x < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if x.abs() != 1 {
            write!(f, "{}", x.abs())?;
        }
        write!(f, "{name}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A divisor class in the basis `H, E_i, E_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LmDivisorClass(pub [i64; LM_RANK]);

/// A curve class in the basis `h, e_i, e_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LmCurveClass(pub [i64; LM_RANK]);

impl LmDivisorClass {
    pub fn h() -> Self {
        let mut c = [0; LM_RANK];
        c[0] = 1;
        Self(c)
    }

    pub fn e(i: usize) -> Result<Self> {
        let mut c = [0; LM_RANK];
        c[point_slot(i)?] = 1;
        Ok(Self(c))
    }

    pub fn e_pair(i: usize, j: usize) -> Result<Self> {
        let mut c = [0; LM_RANK];
        c[pair_slot(i, j)?] = 1;
        Ok(Self(c))
    }

    /// `E_ijk = H - E_i - E_j - E_k - E_ij - E_ik - E_jk`.
    pub fn e_triple(i: usize, j: usize, k: usize) -> Result<Self> {
        if i == j || j == k || i == k {
            return Err(Error::UnknownRay(format!("{i}{j}{k}")));
        }
        let mut c = Self::h().0;
        for p in [i, j, k] {
            c[point_slot(p)?] -= 1;
        }
        for (p, q) in [(i, j), (i, k), (j, k)] {
            c[pair_slot(p, q)?] -= 1;
        }
        Ok(Self(c))
    }

    pub fn lattice(&self) -> LatticeVec {
        LatticeVec::from_ints(&self.0).expect("nonzero class")
    }

    pub fn from_lattice(v: &LatticeVec) -> Self {
        Self(to_array(v))
    }
}

impl LmCurveClass {
    pub fn h() -> Self {
        let mut c = [0; LM_RANK];
        c[0] = 1;
        Self(c)
    }

    pub fn e(i: usize) -> Result<Self> {
        let mut c = [0; LM_RANK];
        c[point_slot(i)?] = 1;
        Ok(Self(c))
    }

    pub fn e_pair(i: usize, j: usize) -> Result<Self> {
        let mut c = [0; LM_RANK];
        c[pair_slot(i, j)?] = 1;
        Ok(Self(c))
    }

    /// Linear form on divisor coordinates computing the pairing.
    pub fn pairing_vector(&self) -> [i64; LM_RANK] {
        let mut v = self.0;
        v[1..].iter_mut().for_each(|x| *x = -*x);
        v
    }

    pub fn from_pairing_vector(v: &LatticeVec) -> Self {
        let mut c = to_array(v);
        c[1..].iter_mut().for_each(|x| *x = -*x);
        Self(c)
    }

    /// Relabels the points `1..4` by `perm` (`perm[i-1]` is the image of `i`).
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let mut c = [0; LM_RANK];
        c[0] = self.0[0];
        for i in 1..=4 {
            c[perm[i - 1]] = self.0[i];
        }
        for (slot, [i, j]) in PAIRS.iter().enumerate() {
            let to = pair_slot(perm[i - 1], perm[j - 1]).expect("permutation of 1..4");
            c[to] = self.0[5 + slot];
        }
        Self(c)
    }
}

impl std::ops::Add for LmCurveClass {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.0.iter_mut().zip(o.0).for_each(|(a, b)| *a += b);
        self
    }
}

impl std::ops::Sub for LmCurveClass {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self.0.iter_mut().zip(o.0).for_each(|(a, b)| *a -= b);
        self
    }
}

impl std::ops::Mul<LmCurveClass> for i64 {
    type Output = LmCurveClass;
    fn mul(self, mut c: LmCurveClass) -> LmCurveClass {
        c.0.iter_mut().for_each(|a| *a *= self);
        c
    }
}

impl std::ops::Neg for LmCurveClass {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.0.iter_mut().for_each(|a| *a = -*a);
        self
    }
}

fn to_array(v: &LatticeVec) -> [i64; LM_RANK] {
    let mut c = [0; LM_RANK];
    for (x, y) in c.iter_mut().zip(v.coords()) {
        *x = y.to_i64().expect("small coordinates");
    }
    c
}

impl fmt::Display for LmDivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_lm(f, &self.0, "H", "E")
    }
}

impl fmt::Display for LmCurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_lm(f, &self.0, "h", "e")
    }
}

/// `H.h = 1`, `E_i.e_i = E_ij.e_ij = -1`, all other products zero.
pub fn lm_pair(d: &LmDivisorClass, c: &LmCurveClass) -> i64 {
    d.0[0] * c.0[0]
        - d.0[1..]
            .iter()
            .zip(&c.0[1..])
            .map(|(a, b)| a * b)
            .sum::<i64>()
}

/// Class of the boundary divisor of the ray `v_I`, for `I` written as a
/// digit string such as `"1"`, `"12"`, `"123"`.
pub fn ray_divisor_class(pattern: &str) -> Result<LmDivisorClass> {
    let bad = || Error::UnknownRay(pattern.to_string());
    let digits: Vec<usize> = pattern
        .chars()
        .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(bad))
        .collect::<Result<_>>()?;
    let distinct: HashSet<usize> = digits.iter().copied().collect();
    if distinct.len() != digits.len() || digits.iter().any(|d| !(1..=4).contains(d)) {
        return Err(bad());
    }
    match digits.as_slice() {
        [i] => LmDivisorClass::e(*i),
        [i, j] => LmDivisorClass::e_pair(*i, *j),
        [i, j, k] => LmDivisorClass::e_triple(*i, *j, *k),
        _ => Err(bad()),
    }
}

fn ray_classes(fan: &Fan) -> Result<Vec<LatticeVec>> {
    fan.labels()
        .iter()
        .map(|l| ray_divisor_class(l).map(|d| d.lattice()))
        .collect()
}

/// The cone generated by the 14 boundary divisors `E_i, E_ij, E_ijk`.
pub fn effective_cone_lm() -> PolyCone {
    let gens = ray_classes(&lm_fan()).expect("bundled labels are valid");
    PolyCone::from_lattice_rays(LM_RANK, &gens).expect("rank 11 classes")
}

/// `Mov = intersection over rays rho of cone(D_rho' : rho' != rho)`.
pub fn movable_cone_lm() -> PolyCone {
    let gens = ray_classes(&lm_fan()).expect("bundled labels are valid");
    let mut mov = PolyCone::full(LM_RANK);
    for skip in 0..gens.len() {
        let others: Vec<LatticeVec> = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, g)| g.clone())
            .collect();
        let c = PolyCone::from_lattice_rays(LM_RANK, &others).expect("rank 11 classes");
        mov = mov.intersect(&c).expect("same dimension");
    }
    mov
}

/// The curve class of the torus-invariant curve over the wall `(a, b)`: it
/// pairs with `D_rho` to the coefficient of `v_rho` in the wall relation
/// and with every other boundary divisor to zero.
pub fn wall_curve_class(fan: &Fan, a: usize, b: usize) -> Result<LmCurveClass> {
    let (ids, rel) = fan.wall_relation(a, b)?;
    let divisors = fan
        .labels()
        .iter()
        .map(|l| ray_divisor_class(l))
        .collect::<Result<Vec<_>>>()?;
    let q = |x: i64| BigRational::from_integer(x.into());
    let matrix: Vec<Vec<BigRational>> = divisors
        .iter()
        .map(|d| {
            let mut row: Vec<BigRational> = d.0.iter().map(|&x| q(x)).collect();
            row[1..].iter_mut().for_each(|x| *x = -x.clone());
            row
        })
        .collect();
    let rhs: Vec<BigRational> = (0..divisors.len())
        .map(|r| {
            ids.iter()
                .position(|&i| i == r)
                .map_or_else(BigRational::zero, |p| q(rel[p]))
        })
        .collect();
    let x = linalg::solve(&matrix, &rhs)
        .ok_or_else(|| Error::Fan("wall relation has no curve class".into()))?;
    let mut c = [0; LM_RANK];
    for (slot, v) in c.iter_mut().zip(&x) {
        if !v.is_integer() {
            return Err(Error::Fan("wall curve class is not integral".into()));
        }
        *slot = v.to_integer().to_i64().expect("small");
    }
    Ok(LmCurveClass(c))
}

/// Every wall of the fan with its curve class.
pub fn wall_curves(fan: &Fan) -> Result<Vec<([usize; 2], LmCurveClass)>> {
    fan.walls()
        .keys()
        .map(|&[a, b]| wall_curve_class(fan, a, b).map(|c| ([a, b], c)))
        .collect()
}

/// Divisors pairing non-negatively with every torus-invariant curve.
pub fn nef_cone(fan: &Fan) -> Result<PolyCone> {
    let curves: Vec<RatVec> = wall_curves(fan)?
        .iter()
        .map(|(_, c)| RatVec::from_ints(&c.pairing_vector()))
        .collect();
    PolyCone::from_rays(LM_RANK, &curves).map(|c| c.dualize())
}

/// The fan after flopping the curve over the wall `(v_1, v_123)`.
pub fn flop_lm() -> Fan {
    let x = lm_fan();
    let (a, b) = lm_rays(&x, "1", "123");
    x.flop(a, b).expect("the wall (1, 123) is flippable")
}

fn lm_rays(fan: &Fan, a: &str, b: &str) -> (usize, usize) {
    (
        fan.ray_index(a).expect("LM label"),
        fan.ray_index(b).expect("LM label"),
    )
}

/// The flopping curve class on `X` and the class of the new curve on `Y`.
pub fn flopped_curve_class() -> (LmCurveClass, LmCurveClass) {
    let x = lm_fan();
    let y = flop_lm();
    let (a, b) = lm_rays(&x, "1", "123");
    let (c, d) = lm_rays(&y, "12", "13");
    (
        wall_curve_class(&x, a, b).expect("wall of X"),
        wall_curve_class(&y, c, d).expect("wall of Y"),
    )
}

/// `gamma = e_1 - e_14`.
pub fn gamma() -> LmCurveClass {
    LmCurveClass::e(1).expect("index") - LmCurveClass::e_pair(1, 4).expect("index")
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaReport {
    pub gamma: String,
    pub pair_e1: i64,
    pub pair_e123: i64,
    pub meet_in_x: bool,
    pub meet_in_y: bool,
    /// `gamma.E_1 < 0`, `gamma.E_123 > 0`, and `E_1`, `E_123` disjoint on `Y`.
    pub obstruction_holds: bool,
}

pub fn verify_gamma_obstruction() -> GammaReport {
    let x = lm_fan();
    let y = flop_lm();
    let g = gamma();
    let e1 = ray_divisor_class("1").expect("pattern");
    let e123 = ray_divisor_class("123").expect("pattern");
    let (a, b) = lm_rays(&y, "1", "123");
    let pair_e1 = lm_pair(&e1, &g);
    let pair_e123 = lm_pair(&e123, &g);
    let meet_in_x = x.divisors_meet(a, b).expect("known rays");
    let meet_in_y = y.divisors_meet(a, b).expect("known rays");
    GammaReport {
        gamma: g.to_string(),
        pair_e1,
        pair_e123,
        meet_in_x,
        meet_in_y,
        obstruction_holds: pair_e1 < 0 && pair_e123 > 0 && !meet_in_y,
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    let p = [a, b, c, d];
                    if p.iter().collect::<HashSet<_>>().len() == 4 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Closure under relabeling of `e_i - e_ij`, `2e_i - e_ij - e_ik - e_il`,
/// `e_ij`, `h - e_i - e_j + e_ij`, `h - e_i - e_jk`, `h - e_ij - e_ik - e_jk`.
pub fn expected_movable_dual_rays() -> BTreeSet<LmCurveClass> {
    let e = |i| LmCurveClass::e(i).expect("index");
    let ep = |i, j| LmCurveClass::e_pair(i, j).expect("index");
    let h = LmCurveClass::h();
    let reps = [
        e(1) - ep(1, 2),
        2 * e(1) - ep(1, 2) - ep(1, 3) - ep(1, 4),
        ep(1, 2),
        h - e(1) - e(2) + ep(1, 2),
        h - e(1) - ep(2, 3),
        h - ep(1, 2) - ep(1, 3) - ep(2, 3),
    ];
    let perms = permutations4();
    reps.iter()
        .flat_map(|r| perms.iter().map(move |p| r.permuted(*p)))
        .collect()
}

/// Extremal rays of the dual of the movable cone, as curve classes.
pub fn movable_dual_rays(mov: &PolyCone) -> Result<BTreeSet<LmCurveClass>> {
    Ok(mov
        .dualize()
        .extremal_rays()?
        .iter()
        .map(LmCurveClass::from_pairing_vector)
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct LmReport {
    pub rays: usize,
    pub max_cones: usize,
    pub validation: FanValidation,
    pub movable_dual_rays: usize,
    pub movable_dual_matches: bool,
    pub unexpected: Vec<String>,
    pub missing: Vec<String>,
    pub flop_validation: FanValidation,
    pub flopped_class: String,
    pub flopped_image: String,
    pub gamma: GammaReport,
    pub reflop_restores: bool,
}

impl LmReport {
    /// Fan, movable dual, flop with obstruction, and re-flop.
    pub fn checks(&self) -> [(&'static str, bool); 4] {
        [
            (
                "fan validates",
                self.rays == 14 && self.max_cones == 24 && self.validation.ok(),
            ),
            ("movable dual rays", self.movable_dual_matches),
            (
                "flop and gamma obstruction",
                self.flop_validation.ok() && self.gamma.obstruction_holds && self.gamma.meet_in_x,
            ),
            ("re-flop restores the fan", self.reflop_restores),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_lm() -> Result<LmReport> {
    let x = lm_fan();
    let y = flop_lm();
    let mov = movable_cone_lm();
    let got = movable_dual_rays(&mov)?;
    let want = expected_movable_dual_rays();
    let (c, d) = lm_rays(&y, "12", "13");
    let back = y.flop(c, d)?;
    let (class, image) = flopped_curve_class();
    Ok(LmReport {
        rays: x.rays().len(),
        max_cones: x.max_cones().count(),
        validation: x.validate(),
        movable_dual_rays: got.len(),
        movable_dual_matches: got == want,
        unexpected: got.difference(&want).map(ToString::to_string).collect(),
        missing: want.difference(&got).map(ToString::to_string).collect(),
        flop_validation: y.validate(),
        flopped_class: class.to_string(),
        flopped_image: image.to_string(),
        gamma: verify_gamma_obstruction(),
        reflop_restores: back == x,
    })
}

/// `Nef <= Mov <= Eff` for the given fan's nef cone.
pub fn sandwich_holds(fan: &Fan) -> Result<bool> {
    let nef = nef_cone(fan)?;
    let mov = movable_cone_lm();
    let eff = effective_cone_lm();
    Ok(nef.is_subset_of(&mov)? && mov.is_subset_of(&eff)?)
}

/// `dualize(dualize(Mov)) = Mov`.
pub fn movable_biduality() -> Result<bool> {
    let mov = movable_cone_lm();
    cone_equal(&mov.dualize().dualize(), &mov)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_shape() {
        let x = lm_fan();
        assert_eq!(x.rays().len(), 14);
        assert_eq!(x.max_cones().count(), 24);
        let v = x.validate();
        assert!(v.ok(), "{v:?}");
    }

    #[test]
    fn fan_matches_chain_description() {
        let x = lm_fan();
        let idx = |l: String| x.ray_index(&l).unwrap();
        let mut chains = BTreeSet::new();
        for p in permutations4() {
            let [i, j, k, _] = p;
            let sorted = |mut v: Vec<usize>| {
                v.sort_unstable();
                v.iter().map(ToString::to_string).collect::<String>()
            };
            let mut cone = vec![
                idx(i.to_string()),
                idx(sorted(vec![i, j])),
                idx(sorted(vec![i, j, k])),
            ];
            cone.sort_unstable();
            chains.insert(cone);
        }
        let got: BTreeSet<Vec<usize>> = x.max_cones().map(<[usize]>::to_vec).collect();
        assert_eq!(got, chains);
    }

    #[test]
    fn rays_are_subset_sums() {
        // v_I is the sum of v_i over i in I
        let x = lm_fan();
        for (label, ray) in x.labels().iter().zip(x.rays()) {
            let mut sum = [0; 3];
            for ch in label.chars() {
                let r = x.rays()[x.ray_index(&ch.to_string()).unwrap()];
                (0..3).for_each(|a| sum[a] += r[a]);
            }
            assert_eq!(&sum, ray, "{label}");
        }
    }

    #[test]
    fn invalid_fans_are_flagged() {
        let x = lm_fan();
        let mut doc = x.to_document();
        doc.max_cones.pop();
        let v = Fan::from_document(&doc).unwrap().validate();
        assert!(!v.walls_two_sided);
        assert!(!v.complete());

        let flat = Fan::new(
            vec![[1, 0, 0], [0, 1, 0], [1, 1, 0]],
            vec!["a".into(), "b".into(), "c".into()],
            &[vec![0, 1, 2]],
        )
        .unwrap();
        assert!(!flat.validate().simplicial);
        assert!(Fan::new(vec![[1, 0, 0]], vec!["a".into()], &[vec![0, 5, 6]]).is_err());
    }

    #[test]
    fn divisor_classes() {
        assert_eq!(ray_divisor_class("1").unwrap().to_string(), "E1");
        assert_eq!(ray_divisor_class("12").unwrap().to_string(), "E12");
        assert_eq!(
            ray_divisor_class("123").unwrap().to_string(),
            "H - E1 - E2 - E3 - E12 - E13 - E23"
        );
        assert_eq!(
            ray_divisor_class("21").unwrap(),
            ray_divisor_class("12").unwrap()
        );
        for bad in ["", "5", "11", "1234", "x"] {
            assert!(ray_divisor_class(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn diagonal_pairing() {
        let h = LmDivisorClass::h();
        assert_eq!(lm_pair(&h, &LmCurveClass::h()), 1);
        for i in 1..=4 {
            let e = LmDivisorClass::e(i).unwrap();
            assert_eq!(lm_pair(&e, &LmCurveClass::e(i).unwrap()), -1);
            assert_eq!(lm_pair(&e, &LmCurveClass::h()), 0);
        }
        for [i, j] in PAIRS {
            let e = LmDivisorClass::e_pair(i, j).unwrap();
            assert_eq!(lm_pair(&e, &LmCurveClass::e_pair(i, j).unwrap()), -1);
            assert_eq!(lm_pair(&e, &LmCurveClass::e(i).unwrap()), 0);
        }
    }

    #[test]
    fn linear_equivalences_hold() {
        // sum_rho <m, v_rho> D_rho = 0 for every character m
        let x = lm_fan();
        for m in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            let mut total = [0i64; LM_RANK];
            for (label, ray) in x.labels().iter().zip(x.rays()) {
                let w: i64 = (0..3).map(|a| m[a] * ray[a]).sum();
                let d = ray_divisor_class(label).unwrap();
                (0..LM_RANK).for_each(|s| total[s] += w * d.0[s]);
            }
            assert_eq!(total, [0; LM_RANK]);
        }
    }

    #[test]
    fn effective_cone_generators_are_extremal() {
        let eff = effective_cone_lm();
        assert!(eff.is_full_dimensional());
        let rays: BTreeSet<LmDivisorClass> = eff
            .extremal_rays()
            .unwrap()
            .iter()
            .map(LmDivisorClass::from_lattice)
            .collect();
        assert_eq!(rays.len(), 14);
        assert!(rays.contains(&ray_divisor_class("1").unwrap()));
    }

    #[test]
    fn wall_curve_of_the_flopping_wall() {
        let x = lm_fan();
        let (a, b) = lm_rays(&x, "1", "123");
        let c = wall_curve_class(&x, a, b).unwrap();
        assert_eq!(c.to_string(), "e1 - e12 - e13");
    }

    #[test]
    fn flop_is_local_and_involutive() {
        let x = lm_fan();
        let y = flop_lm();
        assert!(y.validate().ok());
        let quad: BTreeSet<usize> = ["1", "12", "13", "123"]
            .iter()
            .map(|l| x.ray_index(l).unwrap())
            .collect();
        let diff = x.symmetric_difference(&y);
        assert_eq!(diff.len(), 4);
        assert!(diff.iter().all(|c| c.iter().all(|r| quad.contains(r))));
        let (c, d) = lm_rays(&y, "12", "13");
        assert!(y.divisors_meet(c, d).unwrap());
        let (a, b) = lm_rays(&y, "1", "123");
        assert!(!y.divisors_meet(a, b).unwrap());
        assert!(x.divisors_meet(a, b).unwrap());
        assert!(x.divisors_meet(a, a).unwrap());
        assert_eq!(y.flop(c, d).unwrap(), x);
    }

    #[test]
    fn flop_errors() {
        let x = lm_fan();
        let (a, b) = lm_rays(&x, "1", "2");
        assert!(matches!(x.flop(a, b), Err(Error::Fan(_))));
        assert!(matches!(x.divisors_meet(0, 99), Err(Error::UnknownRay(_))));
        assert!(matches!(x.ray_index("5"), Err(Error::UnknownRay(_))));
    }

    #[test]
    fn flopped_classes_are_opposite() {
        let (class, image) = flopped_curve_class();
        assert_eq!(class.to_string(), "e1 - e12 - e13");
        assert_eq!(class + image, LmCurveClass([0; LM_RANK]));
    }

    #[test]
    fn gamma_obstruction() {
        let r = verify_gamma_obstruction();
        assert_eq!(r.gamma, "e1 - e14");
        assert_eq!((r.pair_e1, r.pair_e123), (-1, 1));
        assert!(r.meet_in_x && !r.meet_in_y && r.obstruction_holds);
    }

    #[test]
    fn expected_dual_list_has_44_classes() {
        assert_eq!(expected_movable_dual_rays().len(), 44);
    }

    #[test]
    fn permutation_action() {
        let c = LmCurveClass::e(1).unwrap() - LmCurveClass::e_pair(1, 2).unwrap();
        let p = c.permuted([2, 3, 1, 4]);
        assert_eq!(p.to_string(), "e2 - e23");
    }

    #[test]
    fn fan_json_round_trip() {
        let x = lm_fan();
        let text = serde_json::to_string(&x.to_document()).unwrap();
        assert_eq!(Fan::from_json(&text).unwrap(), x);
        assert!(Fan::from_json(r#"{"rays":[[1,0]],"max_cones":[]}"#).is_err());
    }
}
