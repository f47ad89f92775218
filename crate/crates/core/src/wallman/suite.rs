//! Finite shadows of the classical statements about Wallman spaces.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{SpaceKind, WallmanSpace};
use crate::error::{Error, Result};
use crate::filter::{generated_filter, is_filter, ultra_by_disjointness};
use crate::lattice::{Elem, FiniteLattice};

/// How a clause is treated by [`SuiteReport::asserted_hold`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseStatus {
    /// Expected to hold; a failure is a defect.
    Asserted,
    /// Recorded only. Either the implication is not a theorem at finite
    /// scale or the lattice lacks the hypothesis.
    Observed,
}

/// One implication `antecedent ⇒ consequent`. Plain facts have a true
/// antecedent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: ClauseStatus,
    pub antecedent: bool,
    pub consequent: bool,
}

impl Clause {
    pub fn holds(&self) -> bool {
        !self.antecedent || self.consequent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub lattice: String,
    pub distributive: bool,
    pub normal: bool,
    pub separative: bool,
    pub boolean: bool,
    pub prime_points: Vec<String>,
    pub ultra_points: Vec<String>,
    pub clauses: Vec<Clause>,
}

impl SuiteReport {
    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }

    pub fn asserted_hold(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.status == ClauseStatus::Observed || c.holds())
    }

    /// Clauses that do not hold, asserted or not.
    pub fn failures(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.holds()).collect()
    }
}

/// Evaluates every clause on both spaces of `lattice`. Clauses are asserted
/// only for distributive lattices, except the converse of the Hausdorff
/// clause, which is always observed: a finite lattice can have a discrete
/// ultrafilter space without being normal.
pub fn vbeer_suite(lattice: &FiniteLattice) -> Result<SuiteReport> {
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let pf = WallmanSpace::build(lattice, SpaceKind::Prime)?;
    let ult = WallmanSpace::build(lattice, SpaceKind::Ultra)?;
    let report = lattice.report();
    let (distributive, normal, separative, boolean) = (
        report.is_distributive(),
        report.is_normal(),
        report.is_separative(),
        report.is_boolean(),
    );
    let pf_sep = pf.separation_axioms();
    let ult_sep = ult.separation_axioms();
    let same_points = pf.points().len() == ult.points().len()
        && pf
            .points()
            .iter()
            .zip(ult.points())
            .all(|(p, q)| p.members() == q.members());

    let asserted = if distributive {
        ClauseStatus::Asserted
    } else {
        ClauseStatus::Observed
    };
    let clause = |id, statement, status, antecedent, consequent| Clause {
        id,
        statement,
        status,
        antecedent,
        consequent,
    };
    let clauses = vec![
        clause("pf_t0", "Pf is T0", asserted, true, pf_sep.t0.holds()),
        clause(
            "pf_t1_implies_boolean",
            "Pf is T1 ⇒ L is Boolean",
            asserted,
            pf_sep.t1.holds(),
            boolean,
        ),
        clause(
            "boolean_implies_pf_hausdorff",
            "L is Boolean ⇒ Pf is Hausdorff",
            asserted,
            boolean,
            pf_sep.hausdorff.holds(),
        ),
        clause(
            "pf_closed_sets_basic",
            "every closed set of Pf is some a⁺",
            asserted,
            true,
            pf.closed_sets_are_basic().holds(),
        ),
        clause(
            "pf_plus_homomorphism",
            "a ↦ a⁺ is a lattice homomorphism into the subsets of Pf",
            asserted,
            true,
            pf.plus_is_homomorphism().holds(),
        ),
        clause("ult_t1", "ult is T1", asserted, true, ult_sep.t1.holds()),
        clause(
            "normal_implies_ult_hausdorff",
            "L is normal ⇒ ult is Hausdorff",
            asserted,
            normal,
            ult_sep.hausdorff.holds(),
        ),
        clause(
            "ult_hausdorff_implies_normal",
            "ult is Hausdorff ⇒ L is normal",
            ClauseStatus::Observed,
            ult_sep.hausdorff.holds(),
            normal,
        ),
        clause(
            "ult_eq_pf_implies_boolean",
            "ult = Pf ⇒ L is Boolean",
            asserted,
            same_points,
            boolean,
        ),
        clause(
            "boolean_implies_ult_eq_pf",
            "L is Boolean ⇒ ult = Pf",
            asserted,
            boolean,
            same_points,
        ),
        clause(
            "separative_distributive_implies_boolean",
            "L is separative and distributive ⇒ L is Boolean",
            ClauseStatus::Asserted,
            separative && distributive,
            boolean,
        ),
    ];
    Ok(SuiteReport {
        lattice: lattice.label().to_string(),
        distributive,
        normal,
        separative,
        boolean,
        prime_points: pf.labels(),
        ultra_points: ult.labels(),
        clauses,
    })
}

/// `separative ∧ distributive ⇒ Boolean`, evaluated.
pub fn finite_separative_is_boolean(lattice: &FiniteLattice) -> bool {
    !(lattice.is_separative().holds() && lattice.is_distributive().holds())
        || lattice.is_boolean().holds()
}

/// Whether the ultrafilter `p` is generated by `p ∩ G`, for a set `G` that
/// generates the lattice.
pub fn ultrafilter_generated_by(
    lattice: &FiniteLattice,
    generators: &FixedBitSet,
    p: &FixedBitSet,
) -> Result<bool> {
    require_generating(lattice, generators)?;
    if !is_filter(lattice, p).holds() || !ultra_by_disjointness(lattice, p).holds() {
        return Err(Error::NotUltra);
    }
    let mut trace = p.clone();
    trace.intersect_with(generators);
    Ok(generated_filter(lattice, &trace)?.members() == p)
}

/// Upper bound on the centered subsets visited by [`alexander_check`] on
/// each side.
pub const ALEXANDER_SUBSET_CAP: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexanderReport {
    /// Every centered subset of `G` has a common ultrafilter.
    pub generator_side: bool,
    /// Every centered subset of the lattice has a common ultrafilter.
    pub lattice_side: bool,
    pub centered_generator_subsets: usize,
    pub centered_lattice_subsets: usize,
}

impl AlexanderReport {
    pub fn agrees(&self) -> bool {
        self.generator_side == self.lattice_side
    }
}

/// Compactness through a subbase, at finite scale: centered subsets of `G`
/// have points in common iff centered subsets of the whole lattice do.
pub fn alexander_check(
    lattice: &FiniteLattice,
    generators: &FixedBitSet,
) -> Result<AlexanderReport> {
    require_generating(lattice, generators)?;
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let ult = WallmanSpace::build(lattice, SpaceKind::Ultra)?;
    let (generator_side, centered_generator_subsets) =
        centered_subsets_meet(lattice, &ult, &generators.ones().collect::<Vec<_>>())?;
    let (lattice_side, centered_lattice_subsets) =
        centered_subsets_meet(lattice, &ult, &lattice.elements().collect::<Vec<_>>())?;
    Ok(AlexanderReport {
        generator_side,
        lattice_side,
        centered_generator_subsets,
        centered_lattice_subsets,
    })
}

fn require_generating(lattice: &FiniteLattice, generators: &FixedBitSet) -> Result<()> {
    let generated = lattice.generated_sublattice(generators).count_ones(..);
    if generated != lattice.len() {
        return Err(Error::NotGenerating {
            generated,
            size: lattice.len(),
        });
    }
    Ok(())
}

/// Walks all subsets of `pool` whose meet is nonzero, pruning at 0, and
/// checks that the `a⁺` of each such subset share a point. Returns the
/// verdict and the number of subsets visited.
fn centered_subsets_meet(
    lattice: &FiniteLattice,
    ult: &WallmanSpace<'_>,
    pool: &[Elem],
) -> Result<(bool, usize)> {
    let mut visited = 0usize;
    let mut stack: Vec<(usize, Elem, FixedBitSet)> = vec![(0, lattice.top(), ult.full())];
    while let Some((next, meet, common)) = stack.pop() {
        visited += 1;
        if visited > ALEXANDER_SUBSET_CAP {
            return Err(Error::TooLarge {
                strategy: "alexander",
                size: pool.len(),
                cap: ALEXANDER_SUBSET_CAP,
            });
        }
        if common.is_clear() {
            return Ok((false, visited));
        }
        for (i, &g) in pool.iter().enumerate().skip(next) {
            let m = lattice.meet(meet, g);
            if m == lattice.bottom() {
                continue;
            }
            let mut c = common.clone();
            c.intersect_with(ult.plus(g));
            stack.push((i + 1, m, c));
        }
    }
    Ok((true, visited))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn powerset3_passes_everything() {
        let l = corpus::lattice("powerset3");
        let r = vbeer_suite(&l).unwrap();
        assert!(r.failures().is_empty(), "{:?}", r.failures());
        assert_eq!(r.prime_points, r.ultra_points);
    }

    #[test]
    fn chain3_has_more_primes_than_ultrafilters() {
        let l = corpus::lattice("chain3");
        let r = vbeer_suite(&l).unwrap();
        assert!(r.asserted_hold());
        assert_eq!(r.prime_points, ["↑m", "↑1"]);
        assert_eq!(r.ultra_points, ["↑m"]);
        assert!(!r.boolean);
    }

    #[test]
    fn fivepoint_breaks_only_the_observed_converse() {
        let l = corpus::lattice("fivepoint");
        let r = vbeer_suite(&l).unwrap();
        assert!(r.asserted_hold());
        let failures: Vec<&str> = r.failures().iter().map(|c| c.id).collect();
        assert_eq!(failures, ["ult_hausdorff_implies_normal"]);
        assert!(!r.normal);
    }

    #[test]
    fn generated_ultrafilters() {
        let l = corpus::lattice("fivepoint");
        let (a, b) = (l.element("a").unwrap(), l.element("b").unwrap());
        let g = l.set_of([a, b]);
        assert!(ultrafilter_generated_by(&l, &g, l.up_set(a)).unwrap());
        let p3 = corpus::lattice("powerset3");
        let g = p3.set_of([1, 2, 4, 3, 5, 6]);
        for atom in p3.atoms() {
            assert!(ultrafilter_generated_by(&p3, &g, p3.up_set(atom)).unwrap());
        }
        let c3 = corpus::lattice("chain3");
        assert!(matches!(
            ultrafilter_generated_by(&c3, &c3.empty_set(), c3.up_set(1)),
            Err(Error::NotGenerating {
                generated: 2,
                size: 3
            })
        ));
    }

    #[test]
    fn alexander_examples() {
        let p2 = corpus::lattice("powerset2");
        let r = alexander_check(&p2, &p2.set_of(p2.atoms())).unwrap();
        assert!(r.generator_side && r.lattice_side);
        let l = corpus::lattice("fivepoint");
        let g = l.set_of(["a", "b", "c"].map(|n| l.element(n).unwrap()));
        let r = alexander_check(&l, &g).unwrap();
        assert!(r.agrees() && r.generator_side);
        assert_eq!(r.centered_lattice_subsets, 12);
    }
}
