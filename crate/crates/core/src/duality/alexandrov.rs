use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{induced_map_unchecked, is_separative_hom, verify_hom, LatticeHom};
use crate::error::{Error, Result};
use crate::lattice::{BooleanFailure, Elem, FiniteLattice, MAX_ELEMENTS};
use crate::verdict::Verdict;
use crate::wallman::{SpaceKind, WallmanSpace};

/// The Boolean algebra of subsets of `ult L` generated by the sets `a⁺`,
/// with `j(a) = a⁺` and the facts checked about it.
#[derive(Clone, Debug)]
pub struct Alexandrov {
    pub algebra: FiniteLattice,
    /// `j` as element ids of `algebra`.
    pub j: Vec<Elem>,
    /// Labels of the points of `ult L`; algebra elements name subsets of
    /// these by index.
    pub points: Vec<String>,
    pub report: AlexandrovReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexandrovReport {
    pub algebra_size: usize,
    pub boolean: Verdict<BooleanFailure>,
    pub j_is_hom: bool,
    pub j_separative: bool,
    pub lattice_separative: bool,
    /// `j⁻¹(∅)`
    pub kernel: Vec<Elem>,
    pub ult_j_surjective: bool,
    /// `ult j` as point indices: point `x` of `ult B` is `↑{x}`.
    pub ult_j: Vec<usize>,
}

impl AlexandrovReport {
    pub fn holds(&self) -> bool {
        self.boolean.holds() && self.j_is_hom && self.ult_j_surjective
    }
}

impl Alexandrov {
    pub fn hom<'s>(&'s self, lattice: &'s FiniteLattice) -> LatticeHom<'s> {
        LatticeHom::new(lattice, &self.algebra, self.j.clone())
            .expect("j has one image per element")
    }
}

/// Builds the algebra, checks that it is Boolean and that `ult j` maps onto
/// `ult L`.
pub fn alexandrov(lattice: &FiniteLattice) -> Result<Alexandrov> {
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    if let Verdict::Fails(witness) = lattice.is_distributive() {
        return Err(Error::NotDistributive { witness });
    }
    let ult = WallmanSpace::build(lattice, SpaceKind::Ultra)?;
    let sets = set_algebra(ult.len(), lattice.elements().map(|a| ult.plus(a).clone()))?;
    let index = |s: &FixedBitSet| sets.iter().position(|t| t == s).expect("a⁺ is a generator");

    let names = sets
        .iter()
        .map(|s| {
            let parts: Vec<String> = s.ones().map(|x| x.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let up = sets
        .iter()
        .map(|s| {
            let mut row = FixedBitSet::with_capacity(sets.len());
            row.extend((0..sets.len()).filter(|&t| s.is_subset(&sets[t])));
            row
        })
        .collect();
    let algebra = FiniteLattice::from_up_sets_trusted(
        Some(format!("alexandrov({})", lattice.label())),
        names,
        up,
    );
    let j: Vec<Elem> = lattice.elements().map(|a| index(ult.plus(a))).collect();
    let hom = LatticeHom::new(lattice, &algebra, j.clone())?;
    let j_is_hom = verify_hom(&hom).holds();
    let f = induced_map_unchecked(&hom)?;
    let report = AlexandrovReport {
        algebra_size: algebra.len(),
        boolean: algebra.is_boolean(),
        j_is_hom,
        j_separative: is_separative_hom(&hom).holds(),
        lattice_separative: lattice.is_separative().holds(),
        kernel: hom.kernel().ones().collect(),
        ult_j_surjective: f.is_surjective(),
        ult_j: f.point_map.clone(),
    };
    Ok(Alexandrov {
        points: ult.labels(),
        algebra,
        j,
        report,
    })
}

/// Closure of `generators` under complement, union and intersection,
/// sorted by size then members.
fn set_algebra(
    points: usize,
    generators: impl IntoIterator<Item = FixedBitSet>,
) -> Result<Vec<FixedBitSet>> {
    let mut seen: HashSet<FixedBitSet> = generators.into_iter().collect();
    let mut frontier: Vec<FixedBitSet> = seen.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        let mut complement = x.clone();
        complement.toggle_range(..);
        let mut fresh = vec![complement];
        for y in &seen {
            let mut u = x.clone();
            u.union_with(y);
            let mut i = x.clone();
            i.intersect_with(y);
            fresh.push(u);
            fresh.push(i);
        }
        for z in fresh {
            if seen.insert(z.clone()) {
                if seen.len() > MAX_ELEMENTS {
                    return Err(Error::SizeCap {
                        size: seen.len(),
                        limit: MAX_ELEMENTS,
                    });
                }
                frontier.push(z);
            }
        }
    }
    let mut sets: Vec<FixedBitSet> = seen.into_iter().collect();
    sets.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    debug_assert!(sets.first().is_some_and(|s| s.is_clear()));
    debug_assert_eq!(sets.last().map(|s| s.count_ones(..)), Some(points));
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn boolean_input_is_reproduced() {
        let l = corpus::lattice("powerset3");
        let a = alexandrov(&l).unwrap();
        assert_eq!(a.algebra.len(), 8);
        assert!(a.report.holds());
        assert_eq!(a.report.ult_j, vec![0, 1, 2]);
        let mut image = a.j.clone();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 8);
    }

    #[test]
    fn chain3_collapses_to_two() {
        let l = corpus::lattice("chain3");
        let a = alexandrov(&l).unwrap();
        assert_eq!(a.algebra.len(), 2);
        assert_eq!(a.points, ["↑m"]);
        assert!(a.report.holds());
        assert_eq!(a.report.kernel, vec![0]);
        assert!(!a.report.lattice_separative);
    }

    #[test]
    fn fivepoint_gives_powerset_of_two_points() {
        let l = corpus::lattice("fivepoint");
        let a = alexandrov(&l).unwrap();
        assert_eq!(a.algebra.len(), 4);
        assert_eq!(a.report.ult_j, vec![0, 1]);
        assert!(a.report.holds() && a.report.j_separative);
        assert!(verify_hom(&a.hom(&l)).holds());
    }

    #[test]
    fn non_distributive_is_refused() {
        assert!(matches!(
            alexandrov(&corpus::lattice("m3")),
            Err(Error::NotDistributive { .. })
        ));
    }
}
