//! Cones `D_k` (divisors ample in codimension `k`) and the `k`-moving curve
//! generators `C_k` on `X^n_s` for `s <= n + 3`, the strong-duality check
//! between them, the `kappa` hyperplane arrangement and its chambers, and the
//! Weyl-orbit reductions on `X^4_8`.
//!
//! The inequality side is assembled from linear functionals evaluated on the
//! coordinate basis; the curve side from closed-form classes. The two meet
//! only through the pairing, which is what the duality check compares.

use crate::cone::{
    chamber_decompose, cone_equal, Chamber, HalfSpace, LatticeVec, PolyCone, RatVec, Sign,
};
use crate::error::{Error, Result};
use crate::picard::{cremona_curve, weyl_orbit_search, CurveClass, DivisorClass, IndexSet};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// The strict transform of the join of the span of the points in `indices`
/// with the `t`-secant variety of the rational normal curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JoinSpec {
    pub indices: IndexSet,
    pub t: usize,
}

impl JoinSpec {
    pub fn new(indices: IndexSet, t: usize) -> Self {
        Self { indices, t }
    }

    pub fn validate(&self, n: usize, s: usize) -> Result<()> {
        let invalid = |reason| Error::InvalidJoin {
            indices: self.indices.as_slice().to_vec(),
            t: self.t,
            n,
            s,
            reason,
        };
        if 2 * self.t > n {
            return Err(invalid("t exceeds n/2"));
        }
        if self.indices.iter().any(|i| i == 0 || i > s) {
            return Err(invalid("index outside 1..=s"));
        }
        if self.t == 0 && self.indices.is_empty() {
            return Err(invalid("empty join"));
        }
        Ok(())
    }

    /// `t = 0, |I| = 1`: the join is identified with `E_i`.
    pub fn is_exceptional(&self) -> bool {
        self.t == 0 && self.indices.len() == 1
    }

    /// Dimension of the join: `2t + |I| - 1`, except `E_i` for `t = 0, |I| = 1`.
    pub fn dimension(&self, n: usize) -> usize {
        if self.is_exceptional() {
            n - 1
        } else {
            2 * self.t + self.indices.len() - 1
        }
    }
}

impl fmt::Display for JoinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={}, t={}", self.indices, self.t)
    }
}

/// `kappa = -(|I| + (n+1) t - 1) d + sum_{i in I} (t+1) m_i + sum_{i not in I} t m_i`.
/// When positive it is the multiplicity of the join in the base locus of `|D|`.
pub fn kappa(d: &DivisorClass, join: &JoinSpec) -> Result<BigRational> {
    join.validate(d.n, d.s())?;
    let n = d.n as i64;
    let t = join.t as i64;
    let size = join.indices.len() as i64;
    let mut acc = -q(size + (n + 1) * t - 1) * &d.d;
    for (i, m) in d.m.iter().enumerate() {
        let w = if join.indices.contains(i + 1) {
            t + 1
        } else {
            t
        };
        acc += q(w) * m;
    }
    Ok(acc)
}

/// `c_{I,t} = (|I| + (n+1) t - 1) h - sum_{i in I} (t+1) e_i - sum_{i not in I} t e_i`,
/// the curve class dual to the wall `kappa_{I,t} = 0`.
pub fn c_join(n: usize, s: usize, join: &JoinSpec) -> Result<CurveClass> {
    join.validate(n, s)?;
    let t = join.t as i64;
    let delta = join.indices.len() as i64 + (n as i64 + 1) * t - 1;
    let mu: Vec<i64> = (1..=s)
        .map(|i| if join.indices.contains(i) { t + 1 } else { t })
        .collect();
    Ok(CurveClass::from_ints(n, delta, &mu))
}

/// The families of inequalities cutting out `D_k`, and of the dual curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `d >= 0`, dual to `h`.
    Degree,
    /// `m_i <= d`, dual to `h - e_i`.
    PointBound { i: usize },
    /// `-m_i + sum m_j <= n d`, dual to `n h - sum e_j + e_i`.
    Complement { i: usize },
    /// `kappa_{I,t} <= 0`, dual to `c_{I,t}`.
    Join { join: JoinSpec },
    /// `m_i >= 0`, dual to `e_i`.
    Exceptional { i: usize },
}

impl Family {
    /// Roman-numeral family name.
    pub fn group(&self) -> &'static str {
        match self {
            Family::Degree | Family::PointBound { .. } => "I",
            Family::Complement { .. } => "II",
            Family::Join { .. } => "III",
            Family::Exceptional { .. } => "IV",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Degree => write!(f, "I: d >= 0"),
            Family::PointBound { i } => write!(f, "I: m{i} <= d"),
            Family::Complement { i } => write!(f, "II: sum m_j - m{i} <= n d"),
            Family::Join { join } => write!(f, "III: kappa({join}) <= 0"),
            Family::Exceptional { i } => write!(f, "IV: m{i} >= 0"),
        }
    }
}

/// Checks `1 <= s <= n+3`, `0 <= k <= n-1`, `n >= 2`.
pub fn check_range(n: usize, s: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be at least 2")));
    }
    if s == 0 || s > n + 3 {
        return Err(Error::OutOfRange(format!("s = {s} outside 1..={}", n + 3)));
    }
    if k > n - 1 {
        return Err(Error::OutOfRange(format!("k = {k} outside 0..={}", n - 1)));
    }
    Ok(())
}

/// Pairs with `(n, s)` for which `X^n_s` is a Mori dream space.
pub fn is_mori_dream(n: usize, s: usize) -> bool {
    match n {
        0 | 1 => false,
        2 => s <= 8,
        3 => s <= 7,
        4 => s <= 8,
        _ => s <= n + 3,
    }
}

/// Joins whose `kappa <= 0` conditions enter `D_k` (family III_k):
/// `|I| = n - 2t - k + 1`, with `t >= 1` only when `s = n + 3`.
fn joins_for_k(n: usize, s: usize, k: usize) -> Vec<JoinSpec> {
    let t_max = if s == n + 3 { n / 2 } else { 0 };
    let mut out = Vec::new();
    for t in 0..=t_max {
        let size = n as isize - 2 * t as isize - k as isize + 1;
        if size < 0 || size as usize > s || (t == 0 && size == 0) {
            continue;
        }
        for indices in IndexSet::all_of_size(s, size as usize) {
            out.push(JoinSpec::new(indices, t));
        }
    }
    out
}

/// The families present in the system for `(n, s, k)`, in output order.
fn families(n: usize, s: usize, k: usize) -> Vec<Family> {
    let mut out = vec![Family::Degree];
    out.extend((1..=s).map(|i| Family::PointBound { i }));
    if s >= n + 2 {
        out.extend((1..=s).map(|i| Family::Complement { i }));
    }
    out.extend(
        joins_for_k(n, s, k)
            .into_iter()
            .map(|join| Family::Join { join }),
    );
    if k >= 1 {
        out.extend((1..=s).map(|i| Family::Exceptional { i }));
    }
    out
}

/// Coefficient vector of a linear functional on divisor coordinates
/// `(d, m_1, ..., m_s)`, read off by evaluating it on the unit vectors.
fn linear_form(n: usize, s: usize, f: impl Fn(&DivisorClass) -> BigRational) -> RatVec {
    let mut coeffs = Vec::with_capacity(s + 1);
    for j in 0..=s {
        let mut coords = vec![BigRational::zero(); s + 1];
        coords[j] = q(1);
        let d = DivisorClass::from_coords(n, &coords).expect("nonempty coordinates");
        coeffs.push(f(&d));
    }
    RatVec::new(coeffs)
}

fn inequality(n: usize, s: usize, family: &Family) -> RatVec {
    let nq = q(n as i64);
    match family {
        Family::Degree => linear_form(n, s, |d| d.d.clone()),
        Family::PointBound { i } => linear_form(n, s, |d| &d.d - &d.m[i - 1]),
        Family::Complement { i } => linear_form(n, s, |d| {
            let total: BigRational = d.m.iter().sum();
            &nq * &d.d + &d.m[i - 1] - total
        }),
        Family::Join { join } => linear_form(n, s, |d| {
            -kappa(d, join).expect("join validated on construction")
        }),
        Family::Exceptional { i } => linear_form(n, s, |d| d.m[i - 1].clone()),
    }
}

fn curve(n: usize, s: usize, family: &Family) -> CurveClass {
    let ones = |except: Option<usize>| -> Vec<i64> {
        (1..=s).map(|j| i64::from(Some(j) != except)).collect()
    };
    match family {
        Family::Degree => CurveClass::line(n, s),
        Family::PointBound { i } => {
            let mut mu = vec![0; s];
            mu[i - 1] = 1;
            CurveClass::from_ints(n, 1, &mu)
        }
        Family::Complement { i } => CurveClass::from_ints(n, n as i64, &ones(Some(*i))),
        Family::Join { join } => c_join(n, s, join).expect("join validated on construction"),
        Family::Exceptional { i } => {
            CurveClass::exceptional_line(n, s, *i).expect("index in range")
        }
    }
}

/// The labeled inequality system of `D_k` in coordinates `(d, m_1, ..., m_s)`,
/// deduplicated. `k = 0` gives the effective cone.
pub fn dk_halfspaces(n: usize, s: usize, k: usize) -> Result<Vec<HalfSpace>> {
    check_range(n, s, k)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for family in families(n, s, k) {
        let h = HalfSpace::labeled(&inequality(n, s, &family), family.to_string())?;
        if seen.insert(h.normal.clone()) {
            out.push(h);
        }
    }
    Ok(out)
}

/// The (III_k) inequalities alone, labeled.
pub fn join_halfspaces(n: usize, s: usize, k: usize) -> Result<Vec<HalfSpace>> {
    check_range(n, s, k)?;
    joins_for_k(n, s, k)
        .into_iter()
        .map(|join| {
            let family = Family::Join { join };
            HalfSpace::labeled(&inequality(n, s, &family), family.to_string())
        })
        .collect()
}

/// `D_k` as a cone.
pub fn dk_cone(n: usize, s: usize, k: usize) -> Result<PolyCone> {
    PolyCone::from_halfspaces(n_coords(s), &dk_halfspaces(n, s, k)?)
}

fn n_coords(s: usize) -> usize {
    s + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledCurve {
    #[serde(flatten)]
    pub family: Family,
    #[serde(skip)]
    pub class: CurveClass,
}

/// Curve classes claimed to generate the dual of `D_k`, deduplicated.
pub fn ck_generators(n: usize, s: usize, k: usize) -> Result<Vec<LabeledCurve>> {
    check_range(n, s, k)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for family in families(n, s, k) {
        let class = curve(n, s, &family);
        let key = class.pairing_vector().canonical();
        if seen.insert(key) {
            out.push(LabeledCurve { family, class });
        }
    }
    Ok(out)
}

/// The cone generated by `ck_generators`, in pairing coordinates.
pub fn ck_cone(n: usize, s: usize, k: usize) -> Result<PolyCone> {
    let gens: Vec<RatVec> = ck_generators(n, s, k)?
        .iter()
        .map(|g| g.class.pairing_vector())
        .collect();
    PolyCone::from_rays(n_coords(s), &gens)
}

/// Cremona moves carrying `c_{I,t}` on `X^n_{n+3}` to the linear class
/// `c_{I',0}` with `|I'| = |I| + 2t`.
///
/// Each step takes `gamma = I` plus all but the two smallest indices outside
/// `I`; the image is `c_{I ∪ {those two}, t-1}`.
pub fn weyl_reduction_path(n: usize, s: usize, join: &JoinSpec) -> Result<Vec<IndexSet>> {
    if s != n + 3 {
        return Err(Error::OutOfRange(format!(
            "reduction path needs s = n + 3, got s = {s}"
        )));
    }
    join.validate(n, s)?;
    if join.t == 0 {
        return Err(Error::AlreadyLinear);
    }
    if 2 * join.t + join.indices.len() > n + 1 {
        return Err(Error::InvalidJoin {
            indices: join.indices.as_slice().to_vec(),
            t: join.t,
            n,
            s,
            reason: "needs |I| + 2t <= n + 1",
        });
    }
    let mut path = Vec::with_capacity(join.t);
    let mut indices = join.indices.clone();
    for _ in 0..join.t {
        let outside: Vec<usize> = (1..=s).filter(|&i| !indices.contains(i)).collect();
        let mut gamma: Vec<usize> = indices.iter().collect();
        gamma.extend_from_slice(&outside[2..]);
        path.push(IndexSet::new(gamma, s)?);
        let mut grown: Vec<usize> = indices.iter().collect();
        grown.extend_from_slice(&outside[..2]);
        indices = IndexSet::new(grown, s)?;
    }
    Ok(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `cone(C_k) = D_k^dual`.
    Equal,
    /// Every generator lies in `D_k^dual` but the cone is smaller.
    StrictInclusion,
    /// Some generator is outside `D_k^dual`.
    NotContained,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub label: String,
    pub class: String,
    pub coords: Vec<String>,
    /// Whether the class spans an extremal ray of `D_k^dual`.
    pub extremal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: usize,
    pub s: usize,
    pub k: usize,
    pub verdict: Verdict,
    pub halfspaces: Vec<String>,
    /// Extremal rays of `D_k^dual` as curve classes `(delta, mu_1, ..., mu_s)`.
    pub dual_rays: Vec<Vec<String>>,
    pub generators: Vec<GeneratorEntry>,
    /// An extremal ray in the symmetric difference, when the cones differ.
    pub witness: Option<Vec<String>>,
    pub wallclock_ms: Option<u64>,
}

fn curve_coords(n: usize, w: &LatticeVec) -> Vec<String> {
    CurveClass::from_pairing_lattice(n, w)
        .coords()
        .coords()
        .iter()
        .map(ToString::to_string)
        .collect()
}

/// Computes `D_k^dual` from the inequalities and compares it with the cone of
/// the curve generators.
pub fn verify_strong_duality(n: usize, s: usize, k: usize) -> Result<DualityReport> {
    check_range(n, s, k)?;
    let started = Instant::now();
    let halfspaces = dk_halfspaces(n, s, k)?;
    let dual = PolyCone::from_halfspaces(n_coords(s), &halfspaces)?.dualize();
    let gens = ck_generators(n, s, k)?;
    let gen_vecs: Vec<LatticeVec> = gens
        .iter()
        .map(|g| g.class.pairing_vector().canonical().expect("nonzero class"))
        .collect();
    let gen_cone = PolyCone::from_lattice_rays(n_coords(s), &gen_vecs)?;

    // canonical forms make equality structural; containment is only
    // examined to find a witness
    let (verdict, witness) = if dual == gen_cone {
        (Verdict::Equal, None)
    } else if let Some(g) = gen_vecs.iter().find(|g| !dual.contains_lattice(g.coords())) {
        (Verdict::NotContained, Some(g.clone()))
    } else {
        let r = dual
            .generators()
            .into_iter()
            .find(|r| !gen_cone.contains_lattice(r.coords()));
        (Verdict::StrictInclusion, r)
    };
    let dual_rays: HashSet<&LatticeVec> = dual.rays().iter().collect();

    Ok(DualityReport {
        n,
        s,
        k,
        verdict,
        halfspaces: halfspaces
            .iter()
            .map(|h| h.label.clone().unwrap_or_default())
            .collect(),
        dual_rays: dual.rays().iter().map(|r| curve_coords(n, r)).collect(),
        generators: gens
            .iter()
            .zip(&gen_vecs)
            .map(|(g, v)| GeneratorEntry {
                label: g.family.to_string(),
                class: g.class.to_string(),
                coords: curve_coords(n, v),
                extremal: dual_rays.contains(v),
            })
            .collect(),
        witness: witness.map(|w| curve_coords(n, &w)),
        wallclock_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// The walls `kappa_{I,t} = 0` over `0 <= t <= n/2`, `0 <= |I| <= n - 2t`
/// (only `t = 0` when `s < n + 3`), excluding the empty join.
///
/// Normals are oriented so that a positive value means the join lies in the
/// base locus. That is `kappa` itself, except for `E_i` where `kappa = m_i`
/// and the divisor is a fixed component when `m_i < 0`.
pub fn kappa_arrangement(n: usize, s: usize) -> Result<Vec<(JoinSpec, LatticeVec)>> {
    check_range(n, s, 0)?;
    let t_max = if s == n + 3 { n / 2 } else { 0 };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in 0..=t_max {
        for size in 0..=(n - 2 * t).min(s) {
            if t == 0 && size == 0 {
                continue;
            }
            for indices in IndexSet::all_of_size(s, size) {
                let join = JoinSpec::new(indices, t);
                let flip = join.is_exceptional();
                let normal = linear_form(n, s, |d| {
                    let k = kappa(d, &join).expect("valid join");
                    if flip {
                        -k
                    } else {
                        k
                    }
                })
                .canonical()
                .ok_or(Error::ZeroNormal)?;
                if seen.insert(normal.clone()) {
                    out.push((join, normal));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct ChamberSummary {
    pub signs: String,
    pub witness: Vec<String>,
    pub rays: usize,
    /// Largest dimension of a join in the base locus; `None` when there is
    /// none.
    pub base_locus_dim: Option<usize>,
    /// `inside[k]`: the chamber lies in `D_k`.
    pub inside: Vec<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChamberReport {
    pub n: usize,
    pub s: usize,
    pub hyperplanes: usize,
    pub chambers: Vec<ChamberSummary>,
    /// Per `k`: every chamber is wholly inside or wholly outside `D_k`.
    pub single_valued: Vec<bool>,
    /// Per `k`: chambers inside `D_k` are exactly those with base locus of
    /// dimension `< n - k`.
    pub label_matches: Vec<bool>,
    /// Per `k`: the union of the inside chambers is `D_k`.
    pub union_equals: Vec<bool>,
}

impl ChamberReport {
    pub fn consistent(&self) -> bool {
        self.single_valued
            .iter()
            .chain(&self.label_matches)
            .chain(&self.union_equals)
            .all(|&b| b)
    }
}

/// Largest dimension among joins whose oriented sign is positive.
pub fn base_locus_dim(n: usize, joins: &[JoinSpec], signs: &[Sign]) -> Option<usize> {
    joins
        .iter()
        .zip(signs)
        .filter(|(_, s)| **s == Sign::Pos)
        .map(|(j, _)| j.dimension(n))
        .max()
}

/// The effective cone cut by the `kappa` arrangement.
pub fn kappa_chambers(
    n: usize,
    s: usize,
) -> Result<(Vec<JoinSpec>, Vec<LatticeVec>, Vec<Chamber>)> {
    let arrangement = kappa_arrangement(n, s)?;
    let (joins, normals): (Vec<_>, Vec<_>) = arrangement.into_iter().unzip();
    let eff = dk_cone(n, s, 0)?;
    let chambers = chamber_decompose(&eff, &normals)?;
    Ok((joins, normals, chambers))
}

/// Decomposes the effective cone by the `kappa` arrangement and checks each
/// `D_k` against it.
pub fn chamber_consistency(n: usize, s: usize) -> Result<ChamberReport> {
    let (joins, normals, chambers) = kappa_chambers(n, s)?;
    let dim = n_coords(s);
    let dks = (0..n)
        .map(|k| dk_cone(n, s, k))
        .collect::<Result<Vec<_>>>()?;

    let mut summaries = Vec::with_capacity(chambers.len());
    let mut single_valued = vec![true; n];
    let mut label_matches = vec![true; n];
    for c in &chambers {
        let label = base_locus_dim(n, &joins, &c.signs);
        let mut inside = Vec::with_capacity(n);
        for (k, dk) in dks.iter().enumerate() {
            let is_inside = c.cone.is_subset_of(dk)?;
            if !is_inside {
                let overlap = c.cone.intersect(dk)?;
                if overlap.is_full_dimensional() {
                    single_valued[k] = false;
                }
            }
            let expected = label.is_none_or(|l| l < n - k);
            if is_inside != expected {
                label_matches[k] = false;
            }
            inside.push(is_inside);
        }
        summaries.push(ChamberSummary {
            signs: c.signs.iter().map(|s| s.symbol()).collect(),
            witness: c.witness.coords().iter().map(ToString::to_string).collect(),
            rays: c.cone.rays().len(),
            base_locus_dim: label,
            inside,
        });
    }

    let mut union_equals = Vec::with_capacity(n);
    for (k, dk) in dks.iter().enumerate() {
        let mut rays: Vec<LatticeVec> = Vec::new();
        for (c, summary) in chambers.iter().zip(&summaries) {
            if summary.inside[k] {
                rays.extend(c.cone.generators());
            }
        }
        let hull = PolyCone::from_lattice_rays(dim, &rays)?;
        union_equals.push(cone_equal(&hull, dk)?);
    }

    Ok(ChamberReport {
        n,
        s,
        hyperplanes: normals.len(),
        chambers: summaries,
        single_valued,
        label_matches,
        union_equals,
    })
}

/// A Weyl curve class on `X^4_8`, labeled by its family and indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylCurve {
    pub family: &'static str,
    pub indices: Vec<usize>,
    pub class: CurveClass,
}

/// The curve classes of the five Weyl surface families on `X^4_8`:
/// `mu1_{ijk} = 2h - e_i - e_j - e_k`,
/// `mu3_{i,^j} = 5h - sum e_k - e_i + e_j`,
/// `mu6_{ijk} = 8h - 2 sum e_l + e_i + e_j + e_k`,
/// `mu10_{ij} = 11h - 2 sum e_k - e_i - e_j`,
/// `mu15_i = 14h - 3 sum e_j + e_i`.
pub fn x48_weyl_curve_classes() -> Vec<WeylCurve> {
    const N: usize = 4;
    const S: usize = 8;
    let mut out = Vec::new();
    let with = |base: i64, delta: i64, bumps: &[(usize, i64)]| {
        let mut mu = vec![base; S];
        for &(i, b) in bumps {
            mu[i - 1] += b;
        }
        CurveClass::from_ints(N, delta, &mu)
    };
    for set in IndexSet::all_of_size(S, 3) {
        let ix = set.as_slice();
        out.push(WeylCurve {
            family: "mu1",
            indices: ix.to_vec(),
            class: with(0, 2, &[(ix[0], 1), (ix[1], 1), (ix[2], 1)]),
        });
    }
    for i in 1..=S {
        for j in 1..=S {
            if i != j {
                out.push(WeylCurve {
                    family: "mu3",
                    indices: vec![i, j],
                    class: with(1, 5, &[(i, 1), (j, -1)]),
                });
            }
        }
    }
    for set in IndexSet::all_of_size(S, 3) {
        let ix = set.as_slice();
        out.push(WeylCurve {
            family: "mu6",
            indices: ix.to_vec(),
            class: with(2, 8, &[(ix[0], -1), (ix[1], -1), (ix[2], -1)]),
        });
    }
    for set in IndexSet::all_of_size(S, 2) {
        let ix = set.as_slice();
        out.push(WeylCurve {
            family: "mu10",
            indices: ix.to_vec(),
            class: with(2, 11, &[(ix[0], 1), (ix[1], 1)]),
        });
    }
    for i in 1..=S {
        out.push(WeylCurve {
            family: "mu15",
            indices: vec![i],
            class: with(3, 14, &[(i, -1)]),
        });
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitEntry {
    pub family: String,
    pub indices: Vec<usize>,
    pub class: String,
    pub path: Option<Vec<Vec<usize>>>,
    pub endpoint: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub max_depth: usize,
    pub entries: Vec<OrbitEntry>,
}

impl OrbitReport {
    pub fn all_found(&self) -> bool {
        self.entries.iter().all(|e| e.path.is_some())
    }
}

/// Searches, for one representative of each Weyl family on `X^4_8`, a chain
/// of Cremona moves to a conic class `2h - e_i - e_j - e_k`. The endpoint is
/// recomputed by replaying the path.
pub fn verify_x48_orbits(max_depth: usize) -> OrbitReport {
    let reps: [(&str, &[usize]); 5] = [
        ("mu1", &[1, 2, 3]),
        ("mu3", &[1, 8]),
        ("mu6", &[1, 2, 3]),
        ("mu10", &[1, 2]),
        ("mu15", &[1]),
    ];
    let classes = x48_weyl_curve_classes();
    let entries = reps
        .iter()
        .map(|(family, indices)| {
            let w = classes
                .iter()
                .find(|w| w.family == *family && w.indices == *indices)
                .expect("representative is in the list");
            orbit_entry(w, max_depth)
        })
        .collect();
    OrbitReport { max_depth, entries }
}

pub fn orbit_entry(w: &WeylCurve, max_depth: usize) -> OrbitEntry {
    let path = weyl_orbit_search(
        &w.class,
        CurveClass::is_conic_through_three_points,
        max_depth,
    );
    let endpoint = path.as_ref().map(|p| {
        p.iter()
            .try_fold(w.class.clone(), |c, g| cremona_curve(&c, g))
            .expect("moves have n+1 indices")
    });
    OrbitEntry {
        family: w.family.to_string(),
        indices: w.indices.clone(),
        class: w.class.to_string(),
        path: path.map(|p| p.iter().map(|g| g.as_slice().to_vec()).collect()),
        endpoint: endpoint.map(|e| e.to_string()),
    }
}
