use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteLattice};
use crate::error::{Error, Result};

/// On-disk lattice description: element names plus exactly one of the
/// covering relation or the order relation, each as `[lower, upper]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[String; 2]>>,
}

impl LatticeSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn build(&self) -> Result<FiniteLattice> {
        let pairs = match (&self.covers, &self.leq) {
            (Some(p), None) | (None, Some(p)) => p,
            (Some(_), Some(_)) => {
                return Err(Error::Format(
                    "give exactly one of \"covers\" and \"leq\", not both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Format(
                    "missing \"covers\" or \"leq\" relation".into(),
                ))
            }
        };
        let mut index: HashMap<&str, Elem> = HashMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::Format(format!("duplicate element `{name}`")));
            }
        }
        let lookup = |name: &String| {
            index
                .get(name.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.clone()))
        };
        let pairs = pairs
            .iter()
            .map(|[lo, hi]| Ok((lookup(lo)?, lookup(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteLattice::from_relation(self.name.clone(), self.elements.clone(), &pairs)
    }
}

impl FiniteLattice {
    pub fn from_json(text: &str) -> Result<Self> {
        LatticeSpec::from_json(text)?.build()
    }

    /// Description listing the covering relation.
    pub fn to_spec(&self) -> LatticeSpec {
        LatticeSpec {
            name: self.name.clone(),
            elements: self.names.clone(),
            covers: Some(
                self.covers()
                    .into_iter()
                    .map(|(lo, hi)| [self.names[lo].clone(), self.names[hi].clone()])
                    .collect(),
            ),
            leq: None,
        }
    }
}
