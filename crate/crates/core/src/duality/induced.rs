use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{compose, verify_hom, LatticeHom};
use crate::error::{Error, Result};
use crate::filter::{
    extend_to_unique_ultrafilter, is_filter, ultra_by_disjointness, unique_ultrafilter_extension,
};
use crate::lattice::{Elem, FiniteLattice, NormalityMode};
use crate::verdict::Verdict;
use crate::wallman::{SpaceKind, WallmanSpace};

/// A map between ultrafilter spaces, stored as point indices.
#[derive(Clone, Debug)]
pub struct SpaceMap<'a> {
    pub source: WallmanSpace<'a>,
    pub target: WallmanSpace<'a>,
    pub point_map: Vec<usize>,
}

impl SpaceMap<'_> {
    /// `f⁻¹(set)` over the source points.
    pub fn preimage(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.source.len());
        out.extend(
            self.point_map
                .iter()
                .enumerate()
                .filter(|(_, &y)| set.contains(y))
                .map(|(x, _)| x),
        );
        out
    }

    /// Preimages of basic closed sets are closed. The witness is the
    /// target-lattice element whose `a⁺` pulls back to a non-closed set.
    pub fn is_continuous(&self) -> Verdict<Elem> {
        Verdict::from_witness(
            self.target
                .lattice()
                .elements()
                .find(|&a| !self.source.is_closed(&self.preimage(self.target.plus(a)))),
        )
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.len());
        hit.extend(self.point_map.iter().copied());
        hit.count_ones(..) == self.target.len()
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.len());
        self.point_map.iter().all(|&y| !hit.put(y))
    }

    pub fn is_identity(&self) -> bool {
        self.point_map.iter().enumerate().all(|(x, &y)| x == y)
    }
}

fn require_hom(h: &LatticeHom<'_>) -> Result<()> {
    if verify_hom(h).holds() {
        Ok(())
    } else {
        Err(Error::NotAHomomorphism)
    }
}

fn require_normal(lattice: &FiniteLattice) -> Result<()> {
    let check = lattice.normality(NormalityMode::Strict)?;
    match check.separation {
        Verdict::Holds => Ok(()),
        Verdict::Fails(w) => Err(Error::NotNormal { witness: Some(w) }),
    }
}

/// `ult h: ult L → ult K` for `h: K → L` between normal lattices, each
/// image computed as `p_F` for `F = h⁻¹(p)` and checked against the census.
pub fn induced_map<'a>(h: &LatticeHom<'a>) -> Result<SpaceMap<'a>> {
    require_hom(h)?;
    require_normal(h.source())?;
    require_normal(h.target())?;
    build_map(h, unique_ultrafilter_extension)
}

/// Same as [`induced_map`] without the normality requirement: each image
/// is the unique ultrafilter above `h⁻¹(p)` if there is exactly one, and
/// [`Error::NonUniqueExtension`] otherwise.
pub fn induced_map_unchecked<'a>(h: &LatticeHom<'a>) -> Result<SpaceMap<'a>> {
    require_hom(h)?;
    build_map(h, extend_to_unique_ultrafilter)
}

fn build_map<'a>(
    h: &LatticeHom<'a>,
    extend: impl Fn(&FiniteLattice, &FixedBitSet) -> Result<crate::filter::FilterSet>,
) -> Result<SpaceMap<'a>> {
    let source = WallmanSpace::build(h.target(), SpaceKind::Ultra)?;
    let target = WallmanSpace::build(h.source(), SpaceKind::Ultra)?;
    let point_map = source
        .points()
        .iter()
        .map(|p| {
            let q = extend(h.source(), &h.preimage(p.members()))?;
            Ok(target
                .index_of(q.members())
                .expect("extensions are ultrafilters"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpaceMap {
        source,
        target,
        point_map,
    })
}

/// `h(a)∧b = 0` gives `c` with `a∧c = 0` and `b ≤ h(c)`. The witness is
/// `[a, b]` with `a` in the source and `b` in the target.
pub fn is_separative_hom(h: &LatticeHom<'_>) -> Verdict<[Elem; 2]> {
    let (k, l) = (h.source(), h.target());
    for a in k.elements() {
        for b in l.elements() {
            if l.meet(h.apply(a), b) != l.bottom() {
                continue;
            }
            let found = k
                .elements()
                .any(|c| k.meet(a, c) == k.bottom() && l.leq(b, h.apply(c)));
            if !found {
                return Verdict::Fails([a, b]);
            }
        }
    }
    Verdict::Holds
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MbeerMode {
    /// Both lattices must be normal and separative.
    #[default]
    Checked,
    /// Evaluate whatever is defined and report the missing hypotheses.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MbeerReport {
    /// Hypotheses that fail, empty in checked mode.
    pub missing_hypotheses: Vec<String>,
    /// (a) `h` is separative.
    pub separative: Verdict<[Elem; 2]>,
    /// (b) `h⁻¹(p)` is an ultrafilter for every ultrafilter `p`. The
    /// witness is a point index of `ult L`.
    pub preimages_ultra: Verdict<usize>,
    /// (c) `(ult h)⁻¹(a⁺) = h(a)⁺` for every `a`; `None` when `ult h` is
    /// undefined because some `h⁻¹(p)` has several extensions.
    pub plus_preserved: Option<Verdict<Elem>>,
}

impl MbeerReport {
    /// The defined conditions agree.
    pub fn equivalent(&self) -> bool {
        let a = self.separative.holds();
        let b = self.preimages_ultra.holds();
        a == b && self.plus_preserved.as_ref().is_none_or(|c| c.holds() == a)
    }
}

/// The three conditions on `h` that coincide for normal separative
/// lattices.
pub fn mbeer_equivalence(h: &LatticeHom<'_>, mode: MbeerMode) -> Result<MbeerReport> {
    require_hom(h)?;
    let mut missing = Vec::new();
    for (side, lattice) in [("source", h.source()), ("target", h.target())] {
        if !lattice.is_normal() {
            missing.push(format!("{side} `{}` is not normal", lattice.label()));
        }
        if !lattice.is_separative().holds() {
            missing.push(format!("{side} `{}` is not separative", lattice.label()));
        }
    }
    if mode == MbeerMode::Checked && !missing.is_empty() {
        return Err(Error::PreconditionFailed(missing.join("; ")));
    }
    let (k, l) = (h.source(), h.target());
    let ult_l = WallmanSpace::build(l, SpaceKind::Ultra)?;
    let preimages_ultra = Verdict::from_witness(ult_l.points().iter().position(|p| {
        let q = h.preimage(p.members());
        !(is_filter(k, &q).holds() && ultra_by_disjointness(k, &q).holds())
    }));
    let plus_preserved = match induced_map_unchecked(h) {
        Ok(f) => Some(Verdict::from_witness(k.elements().find(|&a| {
            &f.preimage(f.target.plus(a)) != f.source.plus(h.apply(a))
        }))),
        Err(Error::NonUniqueExtension { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(MbeerReport {
        missing_hypotheses: missing,
        separative: is_separative_hom(h),
        preimages_ultra,
        plus_preserved,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    /// `ult(g∘h) = ult h ∘ ult g`; the witness is a point of `ult M`.
    pub composition: Verdict<usize>,
    /// `ult id = id` on each of the three lattices.
    pub identities: bool,
}

impl FunctorReport {
    pub fn holds(&self) -> bool {
        self.composition.holds() && self.identities
    }
}

/// Functor laws for `h: K → L` and `g: L → M`.
pub fn functor_laws(g: &LatticeHom<'_>, h: &LatticeHom<'_>) -> Result<FunctorReport> {
    let gh = compose(g, h)?;
    let ult_gh = induced_map(&gh)?;
    let ult_g = induced_map(g)?;
    let ult_h = induced_map(h)?;
    let composition = Verdict::from_witness(
        (0..ult_gh.point_map.len())
            .find(|&p| ult_gh.point_map[p] != ult_h.point_map[ult_g.point_map[p]]),
    );
    let mut identities = true;
    for lattice in [h.source(), h.target(), g.target()] {
        identities &= induced_map(&LatticeHom::identity(lattice))?.is_identity();
    }
    Ok(FunctorReport {
        composition,
        identities,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub kernel: Vec<Elem>,
    pub kernel_trivial: bool,
    pub surjective: bool,
}

impl KernelReport {
    /// A trivial kernel forces a surjection.
    pub fn consistent(&self) -> bool {
        !self.kernel_trivial || self.surjective
    }
}

/// `h⁻¹(0) = {0}` and surjectivity of `ult h`. The converse direction is
/// reported but not required.
pub fn surjectivity_from_kernel(h: &LatticeHom<'_>) -> Result<KernelReport> {
    let f = induced_map(h)?;
    let kernel: Vec<Elem> = h.kernel().ones().collect();
    Ok(KernelReport {
        kernel_trivial: kernel == [h.source().bottom()],
        kernel,
        surjective: f.is_surjective(),
    })
}

/// For disjoint `a, b` of the target some `c` in the image of `h` has
/// `a ≤ c` and `c∧b = 0`. The witness is `[a, b]`.
pub fn image_separates(h: &LatticeHom<'_>) -> Verdict<[Elem; 2]> {
    let l = h.target();
    let image: Vec<Elem> = h.image().ones().collect();
    for a in l.elements() {
        for b in l.elements() {
            if l.meet(a, b) != l.bottom() {
                continue;
            }
            if !image
                .iter()
                .any(|&c| l.leq(a, c) && l.meet(c, b) == l.bottom())
            {
                return Verdict::Fails([a, b]);
            }
        }
    }
    Verdict::Holds
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationImageReport {
    pub image_separates: Verdict<[Elem; 2]>,
    pub injective: bool,
}

impl SeparationImageReport {
    /// A separating image forces an injection.
    pub fn consistent(&self) -> bool {
        !self.image_separates.holds() || self.injective
    }
}

pub fn embedding_from_separation(h: &LatticeHom<'_>) -> Result<SeparationImageReport> {
    let f = induced_map(h)?;
    Ok(SeparationImageReport {
        image_separates: image_separates(h),
        injective: f.is_injective(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_induces_identity() {
        for name in ["chain3", "powerset3", "one_plus_b2"] {
            let l = corpus::lattice(name);
            let f = induced_map(&LatticeHom::identity(&l)).unwrap();
            assert!(f.is_identity() && f.is_continuous().holds(), "{name}");
        }
    }

    #[test]
    fn quotient_of_chain3_picks_the_middle() {
        let c3 = corpus::lattice("chain3");
        let c2 = corpus::lattice("chain2");
        let q = LatticeHom::new(&c3, &c2, vec![0, 0, 1]).unwrap();
        let f = induced_map(&q).unwrap();
        assert_eq!(f.point_map, vec![0]);
        assert_eq!(f.target.labels(), ["↑m"]);
        assert!(f.is_continuous().holds());
        assert_eq!(is_separative_hom(&q), Verdict::Fails([1, 1]));
        let err = mbeer_equivalence(&q, MbeerMode::Checked).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(ref s) if s.contains("not separative")));
        let r = mbeer_equivalence(&q, MbeerMode::Unchecked).unwrap();
        assert!(!r.separative.holds() && !r.preimages_ultra.holds());
        assert_eq!(r.plus_preserved.as_ref().map(|v| v.holds()), Some(false));
        assert!(r.equivalent());
        let k = surjectivity_from_kernel(&q).unwrap();
        assert_eq!(k.kernel, vec![0, 1]);
        assert!(!k.kernel_trivial && k.consistent());
    }

    #[test]
    fn b2_into_b3_maps_three_atoms_onto_two() {
        let b2 = corpus::lattice("powerset2");
        let b3 = corpus::lattice("powerset3");
        // a ↦ a ∪ {2} when 1 ∈ a
        let map = b2
            .elements()
            .map(|a| if a & 2 != 0 { a | 4 } else { a })
            .collect();
        let h = LatticeHom::new(&b2, &b3, map).unwrap();
        let f = induced_map(&h).unwrap();
        assert_eq!(f.point_map, vec![0, 1, 1]);
        assert!(f.is_surjective() && !f.is_injective());
        assert!(is_separative_hom(&h).holds());
        let r = mbeer_equivalence(&h, MbeerMode::Checked).unwrap();
        assert!(r.equivalent() && r.separative.holds());
        assert!(surjectivity_from_kernel(&h).unwrap().kernel_trivial);
        let s = embedding_from_separation(&h).unwrap();
        assert!(!s.image_separates.holds() && s.consistent());
    }

    #[test]
    fn functor_laws_on_embedding_then_swap() {
        let b2 = corpus::lattice("powerset2");
        let b3 = corpus::lattice("powerset3");
        let h = LatticeHom::new(
            &b2,
            &b3,
            (0..4).map(|a| if a & 2 != 0 { a | 4 } else { a }).collect(),
        )
        .unwrap();
        // swap points 0 and 1
        let swap = |a: usize| (a & 4) | (a & 1) << 1 | (a & 2) >> 1;
        let g = LatticeHom::new(&b3, &b3, (0..8).map(swap).collect()).unwrap();
        assert!(verify_hom(&g).holds());
        assert!(functor_laws(&g, &h).unwrap().holds());
        assert_eq!(functor_laws(&h, &g).unwrap_err(), Error::NotComposable);
    }

    #[test]
    fn non_normal_lattices_are_refused() {
        let l = corpus::lattice("fivepoint");
        assert!(matches!(
            induced_map(&LatticeHom::identity(&l)),
            Err(Error::NotNormal { .. })
        ));
        let f = induced_map_unchecked(&LatticeHom::identity(&l)).unwrap();
        assert!(f.is_identity());
        let n5 = corpus::lattice("n5");
        assert!(matches!(
            induced_map(&LatticeHom::identity(&n5)),
            Err(Error::NotDistributive { .. })
        ));
    }
}
