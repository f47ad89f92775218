//! Finite Wallman spaces: prime filters or ultrafilters of a lattice, with
//! the topology whose closed subbase is `a⁺ = {p : a ∈ p}`.
//!
//! The topology is stored as its family of closed sets. Points are indexed
//! in order of the id of their least element.

mod suite;

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::{enumerate_filters, EnumConfig, FilterClass, FilterSet, Strategy};
use crate::lattice::{Elem, FiniteLattice};
use crate::verdict::Verdict;

pub use suite::{
    alexander_check, finite_separative_is_boolean, ultrafilter_generated_by, vbeer_suite,
    AlexanderReport, Clause, ClauseStatus, SuiteReport, ALEXANDER_SUBSET_CAP,
};

/// Largest closed-set family materialized for a space.
pub const MAX_CLOSED_SETS: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Prime,
    Ultra,
}

impl SpaceKind {
    pub fn class(self) -> FilterClass {
        match self {
            SpaceKind::Prime => FilterClass::Prime,
            SpaceKind::Ultra => FilterClass::Ultra,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Prime => "prime",
            SpaceKind::Ultra => "ultra",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WallmanSpace<'a> {
    lattice: &'a FiniteLattice,
    kind: SpaceKind,
    points: Vec<FilterSet>,
    plus: Vec<FixedBitSet>,
    closed: Vec<FixedBitSet>,
}

/// Separation axioms with a pair of point indices for each failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    /// `[x, y]`: no closed set contains exactly one of them.
    pub t0: Verdict<[usize; 2]>,
    /// `[x, y]`: `y ≠ x` lies in the closure of `{x}`.
    pub t1: Verdict<[usize; 2]>,
    /// `[x, y]`: the smallest open neighbourhoods of `x` and `y` meet.
    pub hausdorff: Verdict<[usize; 2]>,
}

impl<'a> WallmanSpace<'a> {
    /// Points from the fast enumeration when the lattice is distributive,
    /// otherwise from brute force.
    pub fn build(lattice: &'a FiniteLattice, kind: SpaceKind) -> Result<Self> {
        let strategy = if lattice.is_distributive().holds() {
            Strategy::Fast
        } else {
            Strategy::Brute
        };
        Self::build_with(lattice, kind, strategy, &EnumConfig::from_env())
    }

    pub fn build_with(
        lattice: &'a FiniteLattice,
        kind: SpaceKind,
        strategy: Strategy,
        config: &EnumConfig,
    ) -> Result<Self> {
        let points = enumerate_filters(lattice, kind.class(), strategy, config)?;
        Self::from_points(lattice, kind, points)
    }

    /// A space over given points, which must be filters of `lattice`.
    pub fn from_points(
        lattice: &'a FiniteLattice,
        kind: SpaceKind,
        points: Vec<FilterSet>,
    ) -> Result<Self> {
        let plus: Vec<FixedBitSet> = lattice
            .elements()
            .map(|a| {
                let mut set = FixedBitSet::with_capacity(points.len());
                set.extend(
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| p.contains(a))
                        .map(|(i, _)| i),
                );
                set
            })
            .collect();
        let closed = closed_sets(points.len(), &plus)?;
        Ok(Self {
            lattice,
            kind,
            points,
            plus,
            closed,
        })
    }

    pub fn lattice(&self) -> &'a FiniteLattice {
        self.lattice
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn points(&self) -> &[FilterSet] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `a⁺` as a set of point indices.
    pub fn plus(&self, a: Elem) -> &FixedBitSet {
        &self.plus[a]
    }

    /// `a⁻ = X ∖ a⁺`
    pub fn minus(&self, a: Elem) -> FixedBitSet {
        let mut set = self.plus[a].clone();
        set.toggle_range(..);
        set
    }

    /// All closed sets, ordered by size then by members.
    pub fn closed_sets(&self) -> &[FixedBitSet] {
        &self.closed
    }

    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        self.closed.binary_search_by(|c| set_order(c, set)).is_ok()
    }

    pub fn full(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        set.insert_range(..);
        set
    }

    /// Index of the point equal to `filter`.
    pub fn index_of(&self, filter: &FixedBitSet) -> Option<usize> {
        self.points.iter().position(|p| p.members() == filter)
    }

    /// `↑name` labels, one per point.
    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|p| p.label(self.lattice)).collect()
    }

    /// Intersection of the closed sets containing `x`.
    pub fn closure_of_point(&self, x: usize) -> FixedBitSet {
        let mut acc = self.full();
        for c in self.closed.iter().filter(|c| c.contains(x)) {
            acc.intersect_with(c);
        }
        acc
    }

    /// Complement of the union of the closed sets avoiding `x`.
    pub fn smallest_neighbourhood(&self, x: usize) -> FixedBitSet {
        let mut avoid = FixedBitSet::with_capacity(self.len());
        for c in self.closed.iter().filter(|c| !c.contains(x)) {
            avoid.union_with(c);
        }
        avoid.toggle_range(..);
        avoid
    }

    pub fn separation_axioms(&self) -> SeparationReport {
        let n = self.len();
        let pairs =
            || (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| [x, y]));
        let t0 = Verdict::from_witness(
            pairs()
                .filter(|[x, y]| x < y)
                .find(|&[x, y]| !self.closed.iter().any(|c| c.contains(x) != c.contains(y))),
        );
        let closures: Vec<FixedBitSet> = (0..n).map(|x| self.closure_of_point(x)).collect();
        let t1 = Verdict::from_witness(pairs().find(|&[x, y]| closures[x].contains(y)));
        let hoods: Vec<FixedBitSet> = (0..n).map(|x| self.smallest_neighbourhood(x)).collect();
        let hausdorff = Verdict::from_witness(
            pairs()
                .filter(|[x, y]| x < y)
                .find(|&[x, y]| !hoods[x].is_disjoint(&hoods[y])),
        );
        SeparationReport { t0, t1, hausdorff }
    }

    /// Every closed set: the closure of `{a⁺}` under finite unions and
    /// intersections equals `{a⁺}` itself.
    pub fn closed_sets_are_basic(&self) -> Verdict<FixedBitSet> {
        let basic: HashSet<&FixedBitSet> = self.plus.iter().collect();
        Verdict::from_witness(self.closed.iter().find(|c| !basic.contains(c)).cloned())
    }

    /// `(a∧b)⁺ = a⁺ ∩ b⁺`, `(a∨b)⁺ = a⁺ ∪ b⁺`, `0⁺ = ∅`, `1⁺ = X`. The witness
    /// is the first offending pair (a single element is repeated).
    pub fn plus_is_homomorphism(&self) -> Verdict<[Elem; 2]> {
        let l = self.lattice;
        if !self.plus[l.bottom()].is_clear() {
            return Verdict::Fails([l.bottom(), l.bottom()]);
        }
        if self.plus[l.top()].count_ones(..) != self.len() {
            return Verdict::Fails([l.top(), l.top()]);
        }
        for a in l.elements() {
            for b in l.elements().filter(|&b| b > a) {
                let mut meet = self.plus[a].clone();
                meet.intersect_with(&self.plus[b]);
                let mut join = self.plus[a].clone();
                join.union_with(&self.plus[b]);
                if meet != self.plus[l.meet(a, b)] || join != self.plus[l.join(a, b)] {
                    return Verdict::Fails([a, b]);
                }
            }
        }
        Verdict::Holds
    }

    pub fn dump(&self) -> SpaceDump {
        let l = self.lattice;
        SpaceDump {
            kind: self.kind,
            points: self
                .points
                .iter()
                .map(|p| l.set_names(p.members()))
                .collect(),
            labels: self.labels(),
            closed_base: l
                .elements()
                .map(|a| BaseEntry {
                    element: l.element_name(a).to_string(),
                    points: self.plus[a].ones().collect(),
                })
                .collect(),
        }
    }
}

/// Serialized space: points as element-name lists and `a⁺` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDump {
    pub kind: SpaceKind,
    pub points: Vec<Vec<String>>,
    pub labels: Vec<String>,
    pub closed_base: Vec<BaseEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseEntry {
    pub element: String,
    pub points: Vec<usize>,
}

fn set_order(a: &FixedBitSet, b: &FixedBitSet) -> std::cmp::Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

/// Finite unions of the base sets, then finite intersections of those,
/// plus `∅` and the whole space.
fn closed_sets(points: usize, base: &[FixedBitSet]) -> Result<Vec<FixedBitSet>> {
    let mut seen: HashSet<FixedBitSet> = base.iter().cloned().collect();
    seen = grow(seen, FixedBitSet::union_with)?;
    seen = grow(seen, FixedBitSet::intersect_with)?;
    let mut empty = FixedBitSet::with_capacity(points);
    seen.insert(empty.clone());
    empty.insert_range(..);
    seen.insert(empty);
    let mut closed: Vec<FixedBitSet> = seen.into_iter().collect();
    closed.sort_by(set_order);
    Ok(closed)
}

fn grow(
    seeds: HashSet<FixedBitSet>,
    op: fn(&mut FixedBitSet, &FixedBitSet),
) -> Result<HashSet<FixedBitSet>> {
    let generators: Vec<FixedBitSet> = seeds.iter().cloned().collect();
    let mut seen = seeds;
    let mut frontier = generators.clone();
    while let Some(x) = frontier.pop() {
        for g in &generators {
            let mut z = x.clone();
            op(&mut z, g);
            if !seen.contains(&z) {
                if seen.len() >= MAX_CLOSED_SETS {
                    return Err(Error::TooLarge {
                        strategy: "topology",
                        size: seen.len() + 1,
                        cap: MAX_CLOSED_SETS,
                    });
                }
                seen.insert(z.clone());
                frontier.push(z);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn powerset3_ultra_is_three_point_discrete() {
        let l = corpus::lattice("powerset3");
        let s = WallmanSpace::build(&l, SpaceKind::Ultra).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.closed_sets().len(), 8);
        let sep = s.separation_axioms();
        assert!(sep.t0.holds() && sep.t1.holds() && sep.hausdorff.holds());
    }

    #[test]
    fn chain3_prime_space_is_sierpinski() {
        let l = corpus::lattice("chain3");
        let s = WallmanSpace::build(&l, SpaceKind::Prime).unwrap();
        assert_eq!(s.labels(), ["↑m", "↑1"]);
        let closed: Vec<Vec<usize>> = s.closed_sets().iter().map(|c| c.ones().collect()).collect();
        assert_eq!(closed, vec![vec![], vec![0], vec![0, 1]]);
        let sep = s.separation_axioms();
        assert!(sep.t0.holds());
        // ↑m lies in the closure of {↑1}.
        assert_eq!(sep.t1, Verdict::Fails([1, 0]));
        assert!(!sep.hausdorff.holds());
    }

    #[test]
    fn fivepoint_ultra_is_discrete() {
        let l = corpus::lattice("fivepoint");
        let s = WallmanSpace::build(&l, SpaceKind::Ultra).unwrap();
        assert_eq!(s.labels(), ["↑a", "↑b"]);
        assert_eq!(s.closed_sets().len(), 4);
        assert!(s.separation_axioms().hausdorff.holds());
    }

    #[test]
    fn plus_map_and_closed_sets() {
        for l in corpus::canonical() {
            if l.is_degenerate() {
                continue;
            }
            let s = WallmanSpace::build(&l, SpaceKind::Prime).unwrap();
            assert!(s.plus_is_homomorphism().holds(), "{}", l.label());
            assert!(s.closed_sets_are_basic().holds(), "{}", l.label());
            for c in s.closed_sets() {
                assert!(s.is_closed(c));
            }
        }
    }

    #[test]
    fn dump_lists_base_by_element() {
        let l = corpus::lattice("chain3");
        let s = WallmanSpace::build(&l, SpaceKind::Prime).unwrap();
        let d = s.dump();
        assert_eq!(d.points, vec![vec!["m", "1"], vec!["1"]]);
        assert_eq!(d.closed_base[1].points, vec![0]);
        assert_eq!(d.closed_base[2].points, vec![0, 1]);
    }
}
