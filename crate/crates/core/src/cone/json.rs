//! Versioned JSON form of a cone. Integers are decimal strings so arbitrary
//! precision survives the round trip.

use super::{HalfSpace, LatticeVec, PolyCone};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const CONE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDocument {
    pub version: u32,
    pub dim: usize,
    #[serde(default)]
    pub rays: Vec<Vec<String>>,
    #[serde(default)]
    pub facets: Vec<Vec<String>>,
    /// One entry per facet.
    #[serde(default)]
    pub labels: Vec<Option<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<Vec<String>>,
}

fn encode(v: &LatticeVec) -> Vec<String> {
    v.coords().iter().map(ToString::to_string).collect()
}

fn decode(dim: usize, raw: &[String]) -> Result<Vec<BigInt>> {
    if raw.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: raw.len(),
        });
    }
    raw.iter()
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Format(format!("bad integer {s:?}: {e}")))
        })
        .collect()
}

impl ConeDocument {
    pub fn from_cone(c: &PolyCone) -> Self {
        Self {
            version: CONE_FORMAT_VERSION,
            dim: c.dim(),
            rays: c.rays().iter().map(encode).collect(),
            facets: c.facets().iter().map(|h| encode(&h.normal)).collect(),
            labels: c.facets().iter().map(|h| h.label.clone()).collect(),
            lineality: c.lineality().iter().map(encode).collect(),
            equations: c.equations().iter().map(encode).collect(),
        }
    }

    /// Rebuilds the cone. Generators win when both sides are present; any
    /// listed facet must then hold on every generator.
    pub fn to_cone(&self) -> Result<PolyCone> {
        if self.version != CONE_FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported cone document version {}",
                self.version
            )));
        }
        let dim = self.dim;
        let rays = self
            .rays
            .iter()
            .map(|r| decode(dim, r))
            .collect::<Result<Vec<_>>>()?;
        let lineality = self
            .lineality
            .iter()
            .map(|r| decode(dim, r))
            .collect::<Result<Vec<_>>>()?;
        let facets = self
            .facets
            .iter()
            .map(|r| decode(dim, r))
            .collect::<Result<Vec<_>>>()?;
        let equations = self
            .equations
            .iter()
            .map(|r| decode(dim, r))
            .collect::<Result<Vec<_>>>()?;

        let mut halfspaces = Vec::new();
        for (i, f) in facets.into_iter().enumerate() {
            let normal = LatticeVec::new(f).ok_or(Error::ZeroNormal)?;
            let label = self.labels.get(i).cloned().flatten();
            halfspaces.push(HalfSpace { normal, label });
        }
        for e in equations {
            let normal = LatticeVec::new(e).ok_or(Error::ZeroNormal)?;
            halfspaces.push(HalfSpace {
                normal: normal.neg(),
                label: None,
            });
            halfspaces.push(HalfSpace {
                normal,
                label: None,
            });
        }

        if rays.is_empty() && lineality.is_empty() {
            return PolyCone::from_halfspaces(dim, &halfspaces);
        }
        let mut gens: Vec<LatticeVec> = rays.into_iter().filter_map(LatticeVec::new).collect();
        for l in lineality.into_iter().filter_map(LatticeVec::new) {
            gens.push(l.neg());
            gens.push(l);
        }
        let cone = PolyCone::from_lattice_rays(dim, &gens)?;
        for h in &halfspaces {
            if let Some(g) = gens.iter().find(|g| h.normal.dot(&g.0) < BigInt::from(0)) {
                return Err(Error::Format(format!(
                    "listed facet {} is violated by generator {}",
                    h.normal, g
                )));
            }
        }
        Ok(cone)
    }
}

impl PolyCone {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ConeDocument::from_cone(self))
            .expect("cone documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ConeDocument =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        doc.to_cone()
    }
}
