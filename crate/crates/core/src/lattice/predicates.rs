//! Structural predicates: distributive, normal, separative, Boolean.
//!
//! Every predicate returns a [`Verdict`] whose failure witness can be
//! re-checked with the matching `violates_*` function, which evaluates the
//! defining condition directly.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{Elem, FiniteLattice};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// How [`FiniteLattice::normality`] treats a non-distributive input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormalityMode {
    /// Fail with [`Error::NotDistributive`].
    #[default]
    Strict,
    /// Evaluate the separation condition anyway and report both facts.
    Warn,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityCheck {
    /// The disjoint-pair separation condition on its own.
    pub separation: Verdict<[Elem; 2]>,
    pub distributive: bool,
}

impl NormalityCheck {
    /// Normal in the full sense: distributive and separation holds.
    pub fn is_normal(&self) -> bool {
        self.distributive && self.separation.holds()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BooleanFailure {
    NotDistributive([Elem; 3]),
    NoComplement(Elem),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub size: usize,
    pub is_lattice: bool,
    pub distributive: Verdict<[Elem; 3]>,
    pub normal: NormalityCheck,
    pub separative: Verdict<[Elem; 2]>,
    pub boolean: Verdict<BooleanFailure>,
}

impl LatticeReport {
    pub fn is_distributive(&self) -> bool {
        self.distributive.holds()
    }
    pub fn is_normal(&self) -> bool {
        self.normal.is_normal()
    }
    pub fn is_separative(&self) -> bool {
        self.separative.holds()
    }
    pub fn is_boolean(&self) -> bool {
        self.boolean.holds()
    }
}

impl FiniteLattice {
    pub fn report(&self) -> LatticeReport {
        LatticeReport {
            size: self.len(),
            is_lattice: true,
            distributive: self.is_distributive(),
            normal: self
                .normality(NormalityMode::Warn)
                .expect("warn mode does not fail"),
            separative: self.is_separative(),
            boolean: self.is_boolean(),
        }
    }

    /// Atoms: minimal nonzero elements.
    pub fn atoms(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| self.down_count(a) == 2)
            .collect()
    }

    /// Nonzero elements with exactly one lower cover, i.e. not the join of
    /// two strictly smaller elements.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| self.is_join_irreducible(a))
            .collect()
    }

    pub fn is_join_irreducible(&self, a: Elem) -> bool {
        // ↓a ∖ {a} is a down-set; it is principal (one lower cover) exactly
        // when one of its members has a down-set of the same size.
        a != self.bottom()
            && self
                .down_set(a)
                .ones()
                .any(|m| self.down_count(m) + 1 == self.down_count(a))
    }

    /// `j ≤ x∨y` forces `j ≤ x` or `j ≤ y`; equivalently the complement of
    /// `↑j` is a principal ideal.
    pub fn is_join_prime(&self, j: Elem) -> bool {
        self.join_prime_failure(j).is_none()
    }

    /// For a nonzero `j` that is not join-prime, two elements outside `↑j`
    /// whose join lies in `↑j`.
    fn join_prime_failure(&self, j: Elem) -> Option<(Elem, Elem)> {
        if j == self.bottom() {
            return Some((self.bottom(), self.bottom()));
        }
        let outside = self.len() - self.up_count(j);
        let up = self.up_set(j);
        let widest = up
            .zeroes()
            .max_by_key(|&m| (self.down_count(m), std::cmp::Reverse(m)))
            .expect("bottom lies outside ↑j");
        if self.down_count(widest) == outside {
            return None;
        }
        // `widest` is maximal in the complement; anything not below it joins
        // with it to a strictly larger element, which cannot stay outside.
        let other = up
            .zeroes()
            .find(|&b| !self.leq(b, widest))
            .expect("complement is not principal");
        Some((widest, other))
    }

    /// Distributivity, decided through the join-irreducibles: a finite
    /// lattice is distributive iff each of them is join-prime. Runs in
    /// `O(n · |J|)` bitset operations, so it scales to the element cap.
    pub fn is_distributive(&self) -> Verdict<[Elem; 3]> {
        for j in self.join_irreducibles() {
            if let Some((x, y)) = self.join_prime_failure(j) {
                // j∧(x∨y) = j while both j∧x and j∧y sit below j's lower cover.
                return Verdict::Fails([j, x, y]);
            }
        }
        Verdict::Holds
    }

    /// Distributivity by scanning all triples.
    pub fn distributive_by_triples(&self) -> Verdict<[Elem; 3]> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.violates_distributivity([a, b, c]) {
                        return Verdict::Fails([a, b, c]);
                    }
                }
            }
        }
        Verdict::Holds
    }

    pub fn violates_distributivity(&self, [a, b, c]: [Elem; 3]) -> bool {
        self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c))
    }

    /// `{x : x∧b = 0}`
    pub fn disjoint_from(&self, b: Elem) -> FixedBitSet {
        self.set_of(
            self.elements()
                .filter(|&x| self.meet(x, b) == self.bottom()),
        )
    }

    fn maximal_in(&self, set: &FixedBitSet) -> Vec<Elem> {
        set.ones()
            .filter(|&x| self.up_set(x).intersection_count(set) == 1)
            .collect()
    }

    /// The normality check. Distributivity is tested first and reported;
    /// in [`NormalityMode::Strict`] its failure is an error.
    pub fn normality(&self, mode: NormalityMode) -> Result<NormalityCheck> {
        let distributive = self.is_distributive();
        if let (NormalityMode::Strict, Verdict::Fails(witness)) = (mode, &distributive) {
            return Err(Error::NotDistributive { witness: *witness });
        }
        // Enlarging a₁ or b₁ inside their admissible sets only helps, so
        // the search can stay among maximal elements of those sets.
        let maximal_disjoint: Vec<Vec<Elem>> = self
            .elements()
            .map(|b| self.maximal_in(&self.disjoint_from(b)))
            .collect();
        let mut separation = Verdict::Holds;
        'pairs: for a in self.elements() {
            for b in self.elements() {
                if self.meet(a, b) != self.bottom() {
                    continue;
                }
                let found = maximal_disjoint[b].iter().any(|&a1| {
                    maximal_disjoint[a]
                        .iter()
                        .any(|&b1| self.join(a1, b1) == self.top())
                });
                if !found {
                    separation = Verdict::Fails([a, b]);
                    break 'pairs;
                }
            }
        }
        Ok(NormalityCheck {
            separation,
            distributive: distributive.holds(),
        })
    }

    /// Distributive and every disjoint pair separable.
    pub fn is_normal(&self) -> bool {
        self.normality(NormalityMode::Warn)
            .map(|c| c.is_normal())
            .unwrap_or(false)
    }

    /// A disjoint pair `(a, b)` for which no `a₁, b₁` exist.
    pub fn violates_normality(&self, [a, b]: [Elem; 2]) -> bool {
        let bot = self.bottom();
        self.meet(a, b) == bot
            && !self.elements().any(|a1| {
                self.meet(a1, b) == bot
                    && self
                        .elements()
                        .any(|b1| self.meet(a, b1) == bot && self.join(a1, b1) == self.top())
            })
    }

    /// Separativity: `0 < a ≰ b` gives `c > 0` with `c ≤ a` and `c∧b = 0`.
    /// Only atoms need to be tried for `c`, since any admissible `c` sits
    /// above an admissible atom.
    pub fn is_separative(&self) -> Verdict<[Elem; 2]> {
        let atoms = self.atoms();
        for a in self.elements() {
            if a == self.bottom() {
                continue;
            }
            for b in self.elements() {
                if self.leq(a, b) {
                    continue;
                }
                let ok = atoms
                    .iter()
                    .any(|&x| self.leq(x, a) && self.meet(x, b) == self.bottom());
                if !ok {
                    return Verdict::Fails([a, b]);
                }
            }
        }
        Verdict::Holds
    }

    pub fn violates_separativity(&self, [a, b]: [Elem; 2]) -> bool {
        let bot = self.bottom();
        a != bot
            && !self.leq(a, b)
            && !self
                .elements()
                .any(|c| c != bot && self.leq(c, a) && self.meet(c, b) == bot)
    }

    /// Some `b` with `a∧b = 0` and `a∨b = 1`.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        self.elements()
            .find(|&b| self.meet(a, b) == self.bottom() && self.join(a, b) == self.top())
    }

    pub fn is_boolean(&self) -> Verdict<BooleanFailure> {
        if let Verdict::Fails(w) = self.is_distributive() {
            return Verdict::Fails(BooleanFailure::NotDistributive(w));
        }
        match self.elements().find(|&a| self.complement(a).is_none()) {
            Some(a) => Verdict::Fails(BooleanFailure::NoComplement(a)),
            None => Verdict::Holds,
        }
    }
}
