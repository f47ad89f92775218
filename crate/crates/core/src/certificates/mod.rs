//! Covering families on finite ground sets: `ord`, T0 separation, centered
//! subcollections, group assignments `φ`, the Gul'ko poset and the clopen
//! refinements.

mod gulko;
mod refine;

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice, Poset, MAX_POSET_POINTS};
use crate::verdict::Verdict;

pub use gulko::{
    gulko_lt, max_increasing_chain, replay_construction, ChainSearch, GulkoNode, GulkoOrder,
    MAX_MEMBERS,
};
pub use refine::{
    cantor_pair, cantor_unpair, rosenthal_refinement, weakly_sigma_point_finite, wiec_refinement,
    Refinement, RefinementReport,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub id: String,
    pub set: FixedBitSet,
    /// Sorted group indices; a member may belong to several groups.
    pub groups: Vec<usize>,
    /// `W_0 ⊆ W_1 ⊆ … ⊆ W_K = set`, when given.
    pub stages: Option<Vec<FixedBitSet>>,
}

/// A family of subsets of a finite ground set, partitioned into groups
/// `Y_n` (possibly overlapping).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFamily {
    pub ground: Vec<String>,
    pub members: Vec<Member>,
}

/// `φ`, indexed like the members of the family it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAssignment(pub Vec<BTreeSet<usize>>);

impl PhiAssignment {
    pub fn get(&self, member: usize) -> &BTreeSet<usize> {
        &self.0[member]
    }

    /// `{"id": [naturals]}`
    pub fn to_map(&self, family: &CoverFamily) -> BTreeMap<String, Vec<usize>> {
        family
            .members
            .iter()
            .zip(&self.0)
            .map(|(m, v)| (m.id.clone(), v.iter().copied().collect()))
            .collect()
    }

    pub fn from_map(family: &CoverFamily, map: &BTreeMap<String, Vec<usize>>) -> Result<Self> {
        if let Some(extra) = map.keys().find(|k| family.index_of(k).is_none()) {
            return Err(Error::UnknownElement(extra.clone()));
        }
        family
            .members
            .iter()
            .map(|m| {
                let v = map
                    .get(&m.id)
                    .ok_or_else(|| Error::MissingPhi(m.id.clone()))?;
                if v.is_empty() {
                    return Err(Error::EmptyPhiValue(m.id.clone()));
                }
                Ok(v.iter().copied().collect())
            })
            .collect::<Result<Vec<_>>>()
            .map(PhiAssignment)
    }

    pub fn from_json(family: &CoverFamily, text: &str) -> Result<Self> {
        let map: BTreeMap<String, Vec<usize>> =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_map(family, &map)
    }
}

/// Points are written as strings or numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointName {
    Num(u64),
    Text(String),
}

impl PointName {
    fn into_string(self) -> String {
        match self {
            PointName::Num(n) => n.to_string(),
            PointName::Text(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberSpec {
    pub id: String,
    pub set: Vec<PointName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<Vec<PointName>>>,
}

/// Family text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub ground: Vec<PointName>,
    pub members: Vec<MemberSpec>,
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    /// Resolves point names. Entries sharing an id must name the same set;
    /// their groups are merged. Missing groups default to 0.
    pub fn build(self) -> Result<CoverFamily> {
        let ground: Vec<String> = self
            .ground
            .into_iter()
            .map(PointName::into_string)
            .collect();
        let mut seen = BTreeSet::new();
        if let Some(dup) = ground.iter().find(|p| !seen.insert(p.as_str())) {
            return Err(Error::Format(format!("point `{dup}` listed twice")));
        }
        let index: BTreeMap<&str, usize> = ground
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let to_set = |points: Vec<PointName>| -> Result<FixedBitSet> {
            let mut set = FixedBitSet::with_capacity(ground.len());
            for p in points {
                let name = p.into_string();
                let &i = index
                    .get(name.as_str())
                    .ok_or_else(|| Error::UnknownElement(name.clone()))?;
                set.insert(i);
            }
            Ok(set)
        };
        let mut members: Vec<Member> = Vec::new();
        for spec in self.members {
            let set = to_set(spec.set)?;
            let groups = match spec.group {
                None => vec![0],
                Some(GroupSpec::One(n)) => vec![n],
                Some(GroupSpec::Many(ns)) => ns,
            };
            let stages = spec
                .stages
                .map(|st| st.into_iter().map(&to_set).collect::<Result<Vec<_>>>())
                .transpose()?;
            if let Some(existing) = members.iter_mut().find(|m| m.id == spec.id) {
                if existing.set != set {
                    return Err(Error::Format(format!(
                        "member `{}` is listed with two different sets",
                        spec.id
                    )));
                }
                existing.groups.extend(groups);
                existing.groups.sort_unstable();
                existing.groups.dedup();
                if existing.stages.is_none() {
                    existing.stages = stages;
                }
                continue;
            }
            let mut groups = groups;
            groups.sort_unstable();
            groups.dedup();
            if groups.is_empty() {
                return Err(Error::EmptyPhiValue(spec.id));
            }
            members.push(Member {
                id: spec.id,
                set,
                groups,
                stages,
            });
        }
        Ok(CoverFamily { ground, members })
    }
}

impl CoverFamily {
    pub fn from_json(text: &str) -> Result<Self> {
        FamilySpec::from_json(text)?.build()
    }

    pub fn to_spec(&self) -> FamilySpec {
        let names = |set: &FixedBitSet| {
            set.ones()
                .map(|i| PointName::Text(self.ground[i].clone()))
                .collect::<Vec<_>>()
        };
        FamilySpec {
            ground: self.ground.iter().cloned().map(PointName::Text).collect(),
            members: self
                .members
                .iter()
                .map(|m| MemberSpec {
                    id: m.id.clone(),
                    set: names(&m.set),
                    group: Some(match m.groups.as_slice() {
                        &[n] => GroupSpec::One(n),
                        ns => GroupSpec::Many(ns.to_vec()),
                    }),
                    stages: m.stages.as_ref().map(|st| st.iter().map(names).collect()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("families serialize")
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.members.iter().position(|m| m.id == id)
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.ground.iter().position(|p| p == name)
    }

    pub fn sets(&self) -> Vec<FixedBitSet> {
        self.members.iter().map(|m| m.set.clone()).collect()
    }

    /// Indices of the members in `Y_n`.
    pub fn group(&self, n: usize) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i].groups.binary_search(&n).is_ok())
            .collect()
    }

    /// All group indices in use.
    pub fn group_ids(&self) -> BTreeSet<usize> {
        self.members
            .iter()
            .flat_map(|m| m.groups.iter().copied())
            .collect()
    }

    pub fn group_sets(&self, n: usize) -> Vec<FixedBitSet> {
        self.group(n)
            .into_iter()
            .map(|i| self.members[i].set.clone())
            .collect()
    }

    pub fn is_t0_separating(&self) -> Verdict<[usize; 2]> {
        is_t0_separating(self.ground.len(), &self.sets())
    }

    /// Members in `s` (a bitmask of member indices) share a point.
    pub fn is_centered_mask(&self, s: u64) -> bool {
        let mut common = FixedBitSet::with_capacity(self.ground.len());
        common.insert_range(..);
        for i in (0..self.members.len()).filter(|&i| s >> i & 1 == 1) {
            common.intersect_with(&self.members[i].set);
        }
        !common.is_clear()
    }

    /// The ground set as a powerset lattice and each member as an element
    /// of it, so that centeredness can be read in lattice terms.
    pub fn as_lattice_elements(&self) -> Result<(FiniteLattice, Vec<Elem>)> {
        if self.ground.len() > MAX_POSET_POINTS {
            return Err(Error::SizeCap {
                size: self.ground.len(),
                limit: MAX_POSET_POINTS,
            });
        }
        let lattice = Poset::antichain(self.ground.len()).down_set_lattice();
        let ids = self
            .members
            .iter()
            .map(|m| m.set.ones().fold(0usize, |acc, i| acc | 1 << i))
            .collect();
        Ok((lattice, ids))
    }
}

/// `|{V ∈ family : x ∈ V}|`
pub fn ord(x: usize, family: &[FixedBitSet]) -> usize {
    family.iter().filter(|v| v.contains(x)).count()
}

/// Distinct points are told apart by some member. The witness is a pair
/// of point indices.
pub fn is_t0_separating(points: usize, family: &[FixedBitSet]) -> Verdict<[usize; 2]> {
    for x in 0..points {
        for y in x + 1..points {
            if !family.iter().any(|v| v.contains(x) != v.contains(y)) {
                return Verdict::Fails([x, y]);
            }
        }
    }
    Verdict::Holds
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenteredRank {
    /// Size of the largest centered subcollection.
    pub max_centered: usize,
    /// A strictly descending chain of centered subcollections from a
    /// largest one down to a singleton, as member indices.
    pub chain: Vec<Vec<usize>>,
    /// `max_x ord(x, family)`
    pub max_ord: usize,
}

/// Centered subcollections of a finite family are exactly the subsets of
/// `{V : x ∈ V}` for some point `x`, so the largest has size `max ord`.
pub fn centered_poset_rank(points: usize, family: &[FixedBitSet]) -> CenteredRank {
    let best = (0..points).max_by_key(|&x| (ord(x, family), std::cmp::Reverse(x)));
    let top: Vec<usize> = match best {
        Some(x) => (0..family.len())
            .filter(|&i| family[i].contains(x))
            .collect(),
        None => Vec::new(),
    };
    let chain = (1..=top.len())
        .rev()
        .map(|len| top[..len].to_vec())
        .collect();
    let max_ord = best.map_or(0, |x| ord(x, family));
    CenteredRank {
        max_centered: top.len(),
        chain,
        max_ord,
    }
}

/// `φ(u) = {n : u ∈ Y_n}`
pub fn phi_from_witness(family: &CoverFamily) -> PhiAssignment {
    PhiAssignment(
        family
            .members
            .iter()
            .map(|m| m.groups.iter().copied().collect())
            .collect(),
    )
}

/// Regroups the members by `Y_m = {u : m ∈ φ(u)}`.
pub fn witness_from_phi(family: &CoverFamily, phi: &PhiAssignment) -> Result<CoverFamily> {
    if phi.0.len() != family.members.len() {
        let missing = family
            .members
            .get(phi.0.len())
            .map_or("?", |m| m.id.as_str());
        return Err(Error::MissingPhi(missing.to_string()));
    }
    let members = family
        .members
        .iter()
        .zip(&phi.0)
        .map(|(m, v)| {
            if v.is_empty() {
                return Err(Error::EmptyPhiValue(m.id.clone()));
            }
            Ok(Member {
                groups: v.iter().copied().collect(),
                ..m.clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverFamily {
        ground: family.ground.clone(),
        members,
    })
}
