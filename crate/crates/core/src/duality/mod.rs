//! Lattice homomorphisms and the maps they induce between ultrafilter
//! spaces. A homomorphism `h: K → L` induces `ult h: ult L → ult K`, sending
//! `p` to the unique ultrafilter above `h⁻¹(p)`.

mod alexandrov;
mod induced;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::verdict::Verdict;

pub use alexandrov::{alexandrov, Alexandrov};
pub use induced::{
    embedding_from_separation, functor_laws, image_separates, induced_map, induced_map_unchecked,
    is_separative_hom, mbeer_equivalence, surjectivity_from_kernel, FunctorReport, KernelReport,
    MbeerMode, MbeerReport, SeparationImageReport, SpaceMap,
};

/// An element map `source → target`, not yet known to be a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHom<'a> {
    source: &'a FiniteLattice,
    target: &'a FiniteLattice,
    map: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "law", content = "pair")]
pub enum HomFailure {
    Bottom,
    Top,
    Meet([Elem; 2]),
    Join([Elem; 2]),
}

impl<'a> LatticeHom<'a> {
    pub fn new(
        source: &'a FiniteLattice,
        target: &'a FiniteLattice,
        map: Vec<Elem>,
    ) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::Format(format!(
                "map has {} entries for {} source elements",
                map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::Format(format!(
                "image id {bad} is outside the target"
            )));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(lattice: &'a FiniteLattice) -> Self {
        Self {
            source: lattice,
            target: lattice,
            map: lattice.elements().collect(),
        }
    }

    pub fn source(&self) -> &'a FiniteLattice {
        self.source
    }

    pub fn target(&self) -> &'a FiniteLattice {
        self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// `h⁻¹(set)` as a subset of the source.
    pub fn preimage(&self, set: &FixedBitSet) -> FixedBitSet {
        self.source.set_of(
            self.source
                .elements()
                .filter(|&a| set.contains(self.map[a])),
        )
    }

    /// `h[set]` as a subset of the target.
    pub fn image_of(&self, set: &FixedBitSet) -> FixedBitSet {
        self.target.set_of(set.ones().map(|a| self.map[a]))
    }

    pub fn image(&self) -> FixedBitSet {
        self.target.set_of(self.map.iter().copied())
    }

    /// `h⁻¹(0)`
    pub fn kernel(&self) -> FixedBitSet {
        self.preimage(&self.target.set_of([self.target.bottom()]))
    }

    /// `g ∘ h`, defined when the target of `h` is the source of `g`.
    pub fn then(&self, g: &LatticeHom<'a>) -> Result<LatticeHom<'a>> {
        compose(g, self)
    }

    pub fn to_spec(&self) -> HomSpec {
        HomSpec {
            source: self.source.label().to_string(),
            target: self.target.label().to_string(),
            map: self
                .source
                .elements()
                .map(|a| {
                    [
                        self.source.element_name(a).to_string(),
                        self.target.element_name(self.map[a]).to_string(),
                    ]
                })
                .collect(),
        }
    }
}

/// Preservation of 0, 1, meets and joins, with the first offending pair.
pub fn verify_hom(h: &LatticeHom<'_>) -> Verdict<HomFailure> {
    let (k, l) = (h.source, h.target);
    if h.apply(k.bottom()) != l.bottom() {
        return Verdict::Fails(HomFailure::Bottom);
    }
    if h.apply(k.top()) != l.top() {
        return Verdict::Fails(HomFailure::Top);
    }
    for a in k.elements() {
        for b in k.elements().filter(|&b| b > a) {
            if h.apply(k.meet(a, b)) != l.meet(h.apply(a), h.apply(b)) {
                return Verdict::Fails(HomFailure::Meet([a, b]));
            }
            if h.apply(k.join(a, b)) != l.join(h.apply(a), h.apply(b)) {
                return Verdict::Fails(HomFailure::Join([a, b]));
            }
        }
    }
    Verdict::Holds
}

/// `g ∘ h`
pub fn compose<'a>(g: &LatticeHom<'a>, h: &LatticeHom<'a>) -> Result<LatticeHom<'a>> {
    if h.target != g.source {
        return Err(Error::NotComposable);
    }
    Ok(LatticeHom {
        source: h.source,
        target: g.target,
        map: h.map.iter().map(|&y| g.map[y]).collect(),
    })
}

/// Serialized homomorphism: lattices by name, the map as name pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub source: String,
    pub target: String,
    pub map: Vec<[String; 2]>,
}

impl HomSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("hom specs serialize")
    }

    /// Resolves the map against the two lattices. Every source element must
    /// appear exactly once.
    pub fn build<'a>(
        &self,
        source: &'a FiniteLattice,
        target: &'a FiniteLattice,
    ) -> Result<LatticeHom<'a>> {
        let mut map = vec![None; source.len()];
        for [x, y] in &self.map {
            let a = source
                .element(x)
                .ok_or_else(|| Error::UnknownElement(x.clone()))?;
            let b = target
                .element(y)
                .ok_or_else(|| Error::UnknownElement(y.clone()))?;
            if map[a].replace(b).is_some() {
                return Err(Error::Format(format!("element `{x}` is mapped twice")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(a, b)| {
                b.ok_or_else(|| {
                    Error::Format(format!(
                        "element `{}` is not mapped",
                        source.element_name(a)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LatticeHom::new(source, target, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_and_quotient_are_homs() {
        let c3 = corpus::lattice("chain3");
        assert!(verify_hom(&LatticeHom::identity(&c3)).holds());
        let c2 = corpus::lattice("chain2");
        let q = LatticeHom::new(&c3, &c2, vec![0, 0, 1]).unwrap();
        assert!(verify_hom(&q).holds());
    }

    #[test]
    fn atoms_to_middle_is_not_a_hom() {
        let p2 = corpus::lattice("powerset2");
        let c3 = corpus::lattice("chain3");
        let h = LatticeHom::new(&p2, &c3, vec![0, 1, 1, 2]).unwrap();
        assert_eq!(verify_hom(&h), Verdict::Fails(HomFailure::Meet([1, 2])));
    }

    #[test]
    fn composition_checks_endpoints() {
        let c3 = corpus::lattice("chain3");
        let c2 = corpus::lattice("chain2");
        let q = LatticeHom::new(&c3, &c2, vec![0, 0, 1]).unwrap();
        let id3 = LatticeHom::identity(&c3);
        assert_eq!(compose(&q, &id3).unwrap(), q);
        assert_eq!(compose(&id3, &q).unwrap_err(), Error::NotComposable);
        assert_eq!(q.then(&LatticeHom::identity(&c2)).unwrap(), q);
    }

    #[test]
    fn spec_round_trip() {
        let c3 = corpus::lattice("chain3");
        let c2 = corpus::lattice("chain2");
        let q = LatticeHom::new(&c3, &c2, vec![0, 0, 1]).unwrap();
        let spec = HomSpec::from_json(&q.to_spec().to_json()).unwrap();
        assert_eq!(spec.source, "chain3");
        assert_eq!(spec.build(&c3, &c2).unwrap(), q);
        let partial = HomSpec {
            map: spec.map[..2].to_vec(),
            ..spec.clone()
        };
        assert!(matches!(partial.build(&c3, &c2), Err(Error::Format(_))));
        assert_eq!(q.kernel(), c3.set_of([0, 1]));
    }
}
