//! File formats.
//!
//! * Poc-set: `{"pairs": n, "order": [["h2","h1"], ...]}`; each entry
//!   `[a, b]` states `a <= b`, closed under the involution.
//! * Chain family: `{"chains": ["r","s","t"], "geometry": [{"normal":
//!   ["0","1"], "spacing": 1, "offset": 0}, ...]}` with optional geometry.
//! * Cube complex: the structured export of [`crate::cubing::CubingFile`].
//!
//! Unknown keys (such as a `"name"`) are ignored.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::ChainFamily;
use crate::cubing::{CubeComplex, CubingError, CubingFile};
use crate::euclid::{EuclidError, WallFamily, WallGeometry};
use crate::poc::{Element, FinitePocSet, PocError, RawPocSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unrecognised file: expected a poc-set, chain family or cube complex")]
    UnknownFormat,
    #[error(transparent)]
    Poc(#[from] PocError),
    #[error(transparent)]
    Euclid(#[from] EuclidError),
    #[error(transparent)]
    Cubing(#[from] CubingError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PocSetFile {
    pub pairs: usize,
    #[serde(default)]
    pub order: Vec<[String; 2]>,
}

impl PocSetFile {
    pub fn to_raw(&self) -> Result<RawPocSet, PocError> {
        let order = self
            .order
            .iter()
            .map(|[a, b]| Ok((a.parse::<Element>()?, b.parse::<Element>()?)))
            .collect::<Result<Vec<_>, PocError>>()?;
        Ok(RawPocSet {
            pairs: self.pairs,
            order,
        })
    }

    /// The covering relations of `p`, which regenerate its order.
    pub fn from_pocset(p: &FinitePocSet) -> Self {
        PocSetFile {
            pairs: p.pairs(),
            order: p
                .cover_relations()
                .into_iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        }
    }
}

pub fn load_pocset(json: &str) -> Result<FinitePocSet, IoError> {
    let f: PocSetFile = serde_json::from_str(json)?;
    Ok(FinitePocSet::validate(&f.to_raw()?)?)
}

pub fn pocset_to_json(p: &FinitePocSet) -> String {
    serde_json::to_string_pretty(&PocSetFile::from_pocset(p)).expect("serialisable")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFamilyFile {
    pub chains: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Vec<WallFamily>>,
}

impl ChainFamilyFile {
    pub fn to_family(&self) -> Result<ChainFamily, IoError> {
        let geometry = match &self.geometry {
            None => None,
            Some(fams) => {
                if fams.len() != self.chains.len() {
                    return Err(EuclidError::ChainCountMismatch {
                        families: fams.len(),
                        chains: self.chains.len(),
                    }
                    .into());
                }
                Some(WallGeometry::new(fams.clone())?)
            }
        };
        let mut seen = std::collections::HashSet::new();
        for n in &self.chains {
            if n.is_empty() || n.contains(|c: char| c.is_whitespace() || c == ':') || !seen.insert(n) {
                return Err(IoError::Json(format!("bad or repeated chain name {n:?}")));
            }
        }
        Ok(ChainFamily {
            names: self.chains.clone(),
            geometry,
        })
    }

    pub fn from_family(f: &ChainFamily) -> Self {
        ChainFamilyFile {
            chains: f.names.clone(),
            geometry: f.geometry.as_ref().map(|g| g.families().to_vec()),
        }
    }
}

pub fn load_chain_family(json: &str) -> Result<ChainFamily, IoError> {
    let f: ChainFamilyFile = serde_json::from_str(json)?;
    f.to_family()
}

pub fn chain_family_to_json(f: &ChainFamily) -> String {
    serde_json::to_string_pretty(&ChainFamilyFile::from_family(f)).expect("serialisable")
}

pub fn load_cubing(json: &str) -> Result<CubeComplex, IoError> {
    let f: CubingFile = serde_json::from_str(json)?;
    Ok(CubeComplex::from_file(&f)?)
}

/// Any of the supported inputs.
#[derive(Clone, Debug)]
pub enum Input {
    PocSet(FinitePocSet),
    Chains(ChainFamily),
    Cubing(CubeComplex),
}

/// Detects the format by its keys.
pub fn load_any(json: &str) -> Result<Input, IoError> {
    let v: serde_json::Value = serde_json::from_str(json)?;
    let has = |k: &str| v.get(k).is_some();
    if has("vertices") {
        load_cubing(json).map(Input::Cubing)
    } else if has("chains") {
        load_chain_family(json).map(Input::Chains)
    } else if has("pairs") {
        load_pocset(json).map(Input::PocSet)
    } else {
        Err(IoError::UnknownFormat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{cubing, fixtures};

    #[test]
    fn pocset_roundtrip() {
        for p in [fixtures::line3(), fixtures::square(), fixtures::tripod()] {
            let back = load_pocset(&pocset_to_json(&p)).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn chain_roundtrip() {
        for f in [fixtures::z2(), fixtures::hex(), fixtures::zd(4)] {
            assert_eq!(load_chain_family(&chain_family_to_json(&f)).unwrap(), f);
        }
    }

    #[test]
    fn hex_file_parses() {
        let json = r#"{"chains":["r","s","t"],"geometry":[
            {"normal":["0","1"],"spacing":1,"offset":0},
            {"normal":["-√3/2","-1/2"],"spacing":"1","offset":"0"},
            {"normal":["√3/2","-1/2"],"spacing":1,"offset":0}]}"#;
        assert_eq!(load_chain_family(json).unwrap(), fixtures::hex());
    }

    #[test]
    fn detection() {
        assert!(matches!(load_any(r#"{"pairs":2}"#).unwrap(), Input::PocSet(_)));
        assert!(matches!(load_any(r#"{"chains":["a"]}"#).unwrap(), Input::Chains(_)));
        let c = cubing::build_cubing(&fixtures::square());
        let json = serde_json::to_string(&c.to_file()).unwrap();
        assert!(matches!(load_any(&json).unwrap(), Input::Cubing(_)));
        assert_eq!(load_any("{}").unwrap_err(), IoError::UnknownFormat);
        assert!(matches!(load_any(r#"{"pairs":1,"order":[["h1","h1*"]]}"#), Err(IoError::Poc(_))));
        assert!(matches!(load_any(r#"{"chains":["a","a"]}"#), Err(IoError::Json(_))));
    }
}
