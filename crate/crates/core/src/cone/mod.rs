//! Exact rational polyhedral cones.
//!
//! A [`PolyCone`] always carries both representations: extreme rays plus a
//! lineality basis, and irredundant facet inequalities plus an equation basis
//! for the orthogonal complement of its span. Both sides are canonical, so two
//! equal cones built by different routes have identical fields.

mod chamber;
mod dd;
mod json;
pub(crate) mod linalg;
mod scalar;

pub use chamber::{chamber_decompose, sign_vector_census, Census, Chamber, Sign};
pub use json::ConeDocument;

use crate::error::{Error, Result};
use linalg::{Echelon, IntVec, RankOracle};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

/// A vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatVec {
    coords: Vec<BigRational>,
}

impl RatVec {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Primitive integer vector on the same ray; `None` for the zero vector.
    pub fn canonical(&self) -> Option<LatticeVec> {
        linalg::primitive_from_rationals(&self.coords).map(LatticeVec)
    }

    pub fn dot(&self, other: &RatVec) -> BigRational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl From<&LatticeVec> for RatVec {
    fn from(v: &LatticeVec) -> Self {
        RatVec::new(
            v.0.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }
}

/// A primitive integer vector: the canonical form of a nonzero ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVec(pub(crate) Vec<BigInt>);

impl LatticeVec {
    /// Canonicalizes; `None` for the zero vector.
    pub fn new(coords: Vec<BigInt>) -> Option<Self> {
        let mut v = coords;
        linalg::make_primitive(&mut v).then_some(Self(v))
    }

    pub fn from_ints(coords: &[i64]) -> Option<Self> {
        Self::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dot(&self, other: &[BigInt]) -> BigInt {
        linalg::dot(&self.0, other)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The closed half-space `{x : <normal, x> >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: LatticeVec,
    pub label: Option<String>,
}

impl HalfSpace {
    pub fn new(normal: &RatVec) -> Result<Self> {
        let normal = normal.canonical().ok_or(Error::ZeroNormal)?;
        Ok(Self {
            normal,
            label: None,
        })
    }

    pub fn from_ints(normal: &[i64]) -> Result<Self> {
        Self::new(&RatVec::from_ints(normal))
    }

    pub fn labeled(normal: &RatVec, label: impl Into<String>) -> Result<Self> {
        Ok(Self {
            label: Some(label.into()),
            ..Self::new(normal)?
        })
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }
}

/// A closed convex polyhedral cone in `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCone {
    dim: usize,
    rays: Vec<LatticeVec>,
    lineality: Vec<LatticeVec>,
    facets: Vec<HalfSpace>,
    equations: Vec<LatticeVec>,
}

/// Result of an H-to-V conversion that also reports which inputs were dropped.
#[derive(Debug, Clone)]
pub struct Conversion {
    pub cone: PolyCone,
    /// Input indices that are not facets: redundant, duplicated, or implicit
    /// equations.
    pub redundant: Vec<usize>,
}

impl PolyCone {
    /// Cone generated by `rays`; zero vectors are ignored.
    pub fn from_rays(dim: usize, rays: &[RatVec]) -> Result<Self> {
        let rows = rays
            .iter()
            .filter_map(|r| check_dim(dim, r.dim()).map(|_| r.canonical()).transpose())
            .map(|r| r.map(|v| v.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows(dim, &rows, &[]).cone.dualize())
    }

    pub fn from_lattice_rays(dim: usize, rays: &[LatticeVec]) -> Result<Self> {
        let rows = rays
            .iter()
            .map(|r| check_dim(dim, r.dim()).map(|_| r.0.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows(dim, &rows, &[]).cone.dualize())
    }

    pub fn from_halfspaces(dim: usize, facets: &[HalfSpace]) -> Result<Self> {
        Ok(Self::from_halfspaces_report(dim, facets)?.cone)
    }

    pub fn from_halfspaces_report(dim: usize, facets: &[HalfSpace]) -> Result<Conversion> {
        let mut rows = Vec::with_capacity(facets.len());
        let mut labels = Vec::with_capacity(facets.len());
        for h in facets {
            check_dim(dim, h.dim())?;
            if linalg::is_zero(&h.normal.0) {
                return Err(Error::ZeroNormal);
            }
            rows.push(h.normal.0.clone());
            labels.push(h.label.clone());
        }
        Ok(Self::from_rows(dim, &rows, &labels))
    }

    /// The whole space `Q^dim`.
    pub fn full(dim: usize) -> Self {
        Self::from_rows(dim, &[], &[]).cone
    }

    pub(crate) fn from_rows(dim: usize, rows: &[IntVec], labels: &[Option<String>]) -> Conversion {
        let gens = dd::convert(dim, rows);

        let lin = linalg::span_rref(&gens.lineality);
        let mut span = lin.clone();
        for r in &gens.rays {
            if span.rank() == dim {
                break;
            }
            span.insert(r.clone());
        }
        let cone_dim = span.rank();
        let eqs = span.into_rref().orthogonal_complement(dim);

        let mut rays: Vec<LatticeVec> = gens
            .rays
            .iter()
            .map(|r| reduced(&lin, r))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        rays.sort();

        // lineality first, then rays; a row is a facet iff its tight set
        // spans a hyperplane of the cone's span
        let n_lin = gens.lineality.len();
        let oracle = RankOracle::new(gens.lineality.iter().chain(&gens.rays).cloned().collect());
        let mut facets: Vec<HalfSpace> = Vec::new();
        let mut seen: HashSet<LatticeVec> = HashSet::new();
        let mut redundant = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let normal = reduced_opt(&eqs, row);
            let Some(normal) = normal else {
                redundant.push(i);
                continue;
            };
            if seen.contains(&normal) {
                redundant.push(i);
                continue;
            }
            let tight = (0..n_lin).chain(
                gens.incidence
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| z.contains(i))
                    .map(|(j, _)| n_lin + j),
            );
            if !oracle.reaches(tight, cone_dim - 1) {
                redundant.push(i);
                continue;
            }
            seen.insert(normal.clone());
            facets.push(HalfSpace {
                normal,
                label: labels.get(i).cloned().flatten(),
            });
        }
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));

        Conversion {
            cone: PolyCone {
                dim,
                rays,
                lineality: to_lattice(lin),
                facets,
                equations: to_lattice(eqs),
            },
            redundant,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays of the pointed part, reduced modulo the lineality space.
    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVec] {
        &self.lineality
    }

    /// Irredundant facet inequalities, reduced modulo the equations.
    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    /// Basis of the linear forms vanishing on the cone.
    pub fn equations(&self) -> &[LatticeVec] {
        &self.equations
    }

    /// Dimension of the linear span of the cone.
    pub fn cone_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// The complete H-representation: facets plus both signs of every
    /// equation.
    pub fn halfspaces(&self) -> Vec<HalfSpace> {
        let mut out = self.facets.clone();
        for e in &self.equations {
            out.push(HalfSpace {
                normal: e.clone(),
                label: None,
            });
            out.push(HalfSpace {
                normal: e.neg(),
                label: None,
            });
        }
        out
    }

    /// All generators: rays plus both signs of every lineality vector.
    pub fn generators(&self) -> Vec<LatticeVec> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.neg());
        }
        out
    }

    /// Dual cone under the standard dot product.
    pub fn dualize(&self) -> PolyCone {
        PolyCone {
            dim: self.dim,
            rays: self.facets.iter().map(|h| h.normal.clone()).collect(),
            lineality: self.equations.clone(),
            facets: self
                .rays
                .iter()
                .map(|r| HalfSpace {
                    normal: r.clone(),
                    label: None,
                })
                .collect(),
            equations: self.lineality.clone(),
        }
    }

    /// The unique minimal generating set, sorted lexicographically.
    pub fn extremal_rays(&self) -> Result<Vec<LatticeVec>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed(self.lineality.len()));
        }
        Ok(self.rays.clone())
    }

    pub fn contains(&self, v: &RatVec) -> Result<bool> {
        check_dim(self.dim, v.dim())?;
        Ok(match v.canonical() {
            None => true,
            Some(p) => self.contains_lattice(&p.0),
        })
    }

    pub(crate) fn contains_lattice(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|h| !h.normal.dot(v).is_negative())
    }

    /// Whether `v` is in the relative interior.
    pub fn contains_strictly(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|h| h.normal.dot(v).is_positive())
    }

    pub fn is_subset_of(&self, other: &PolyCone) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        Ok(self
            .generators()
            .iter()
            .all(|g| other.contains_lattice(&g.0)))
    }

    pub fn intersect(&self, other: &PolyCone) -> Result<PolyCone> {
        check_dim(self.dim, other.dim)?;
        let mut hs = self.halfspaces();
        hs.extend(other.halfspaces());
        PolyCone::from_halfspaces(self.dim, &hs)
    }

    /// A point in the relative interior: the sum of the extreme rays.
    pub fn interior_point(&self) -> LatticeVec {
        let mut acc = vec![BigInt::zero(); self.dim];
        for r in &self.rays {
            for (a, x) in acc.iter_mut().zip(&r.0) {
                *a += x;
            }
        }
        LatticeVec::new(acc.clone()).unwrap_or(LatticeVec(acc))
    }
}

pub fn cone_equal(a: &PolyCone, b: &PolyCone) -> Result<bool> {
    Ok(a.is_subset_of(b)? && b.is_subset_of(a)?)
}

pub fn cone_subset(a: &PolyCone, b: &PolyCone) -> Result<bool> {
    a.is_subset_of(b)
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

fn reduced(basis: &Echelon, v: &IntVec) -> LatticeVec {
    reduced_opt(basis, v).expect("generator outside the lineality space")
}

fn reduced_opt(basis: &Echelon, v: &IntVec) -> Option<LatticeVec> {
    let mut v = v.clone();
    basis.reduce(&mut v);
    LatticeVec::new(v)
}

fn to_lattice(e: Echelon) -> Vec<LatticeVec> {
    e.rows().iter().map(|r| LatticeVec(r.clone())).collect()
}
