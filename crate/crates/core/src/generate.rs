//! Seeded random fixtures. Every generator draws from a ChaCha8 stream
//! seeded with `seed_from_u64`, consuming only `next_u64`; bounded integers
//! are taken as the high word of `next_u64() * bound`.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::certificates::{CoverFamily, Member, PhiAssignment};
use crate::duality::LatticeHom;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice, Poset, MAX_POSET_POINTS};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// A poset on `0..n` in which `i < j` is only ever related upward, each
    /// pair drawn with probability `num / den` before transitive closure.
    pub fn poset(&mut self, n: usize, num: usize, den: usize) -> Poset {
        let mut pairs = Vec::new();
        for j in 0..n {
            for i in 0..j {
                if self.chance(num, den) {
                    pairs.push((i, j));
                }
            }
        }
        Poset::from_relation(n, &pairs).expect("upward pairs have no cycle")
    }

    /// Down-set lattice of a random poset with `points` points, or of the
    /// one-point poset when `points` is 0.
    pub fn downset(&mut self, points: usize) -> Result<(Poset, FiniteLattice)> {
        if points > MAX_POSET_POINTS {
            return Err(Error::SizeCap {
                size: points,
                limit: MAX_POSET_POINTS,
            });
        }
        let poset = self.poset(points.max(1), 1, 3);
        let lattice = poset.down_set_lattice();
        Ok((poset, lattice))
    }

    /// Monotone map from `target` points to `source` points, drawn point by
    /// point in index order. Falls back to a constant map.
    pub fn monotone_map(&mut self, target: &Poset, source: &Poset) -> Vec<usize> {
        for _ in 0..64 {
            let mut f: Vec<usize> = Vec::with_capacity(target.len());
            let mut stuck = false;
            for y in 0..target.len() {
                let options: Vec<usize> = (0..source.len())
                    .filter(|&p| {
                        (0..y).all(|x| !target.lt(x, y) || f[x] == p || source.lt(f[x], p))
                    })
                    .collect();
                if options.is_empty() {
                    stuck = true;
                    break;
                }
                f.push(options[self.below(options.len())]);
            }
            if !stuck {
                return f;
            }
        }
        let p = self.below(source.len());
        vec![p; target.len()]
    }

    /// Random lattice from a mixed pool: down-set lattices, powersets,
    /// their duals and `1 + L`.
    pub fn lattice(&mut self, max_points: usize) -> FiniteLattice {
        let points = self.range(1, max_points.clamp(1, MAX_POSET_POINTS));
        let base = match self.below(3) {
            0 => FiniteLattice::powerset(points),
            _ => self.downset(points).expect("within cap").1,
        };
        match self.below(4) {
            0 => base.opposite(),
            1 => base.attach_bottom(),
            _ => base,
        }
    }

    /// A cover family on `points` points with up to `members` random
    /// members in groups `0..groups`, some in two groups. Pairs left
    /// unseparated are split by adding singletons; each member gets 1 to 3
    /// increasing stages ending at the member.
    pub fn staged_family(&mut self, points: usize, members: usize, groups: usize) -> CoverFamily {
        let groups = groups.max(1);
        let mut out: Vec<Member> = Vec::new();
        for i in 0..members {
            let mut set = FixedBitSet::with_capacity(points);
            set.extend((0..points).filter(|_| self.chance(1, 2)));
            out.push(self.member(format!("U{i}"), set, groups));
        }
        for x in 0..points {
            for y in x + 1..points {
                let split = out.iter().any(|m| m.set.contains(x) != m.set.contains(y));
                if !split {
                    let mut set = FixedBitSet::with_capacity(points);
                    set.insert(x);
                    let id = format!("S{x}_{y}");
                    out.push(self.member(id, set, groups));
                }
            }
        }
        CoverFamily {
            ground: (0..points).map(|x| x.to_string()).collect(),
            members: out,
        }
    }

    fn member(&mut self, id: String, set: FixedBitSet, groups: usize) -> Member {
        let mut g = BTreeSet::from([self.below(groups)]);
        if self.chance(1, 4) {
            g.insert(self.below(groups));
        }
        let mut stages = vec![set.clone()];
        for _ in 0..self.below(3) {
            let mut smaller = stages[0].clone();
            for x in smaller.clone().ones() {
                if self.chance(1, 2) {
                    smaller.set(x, false);
                }
            }
            stages.insert(0, smaller);
        }
        Member {
            id,
            set,
            groups: g.into_iter().collect(),
            stages: Some(stages),
        }
    }

    /// A small family with a random `φ` over `0..max_group`.
    pub fn phi_family(
        &mut self,
        points: usize,
        members: usize,
        max_group: usize,
    ) -> (CoverFamily, PhiAssignment) {
        let mut family = self.staged_family(points, members, max_group);
        family.members.truncate(members.max(1));
        for m in &mut family.members {
            m.stages = None;
        }
        let phi = family
            .members
            .iter()
            .map(|_| {
                let mut v = BTreeSet::from([self.below(max_group.max(1))]);
                while self.chance(1, 3) {
                    v.insert(self.below(max_group.max(1)));
                }
                v
            })
            .collect();
        (family, PhiAssignment(phi))
    }
}

/// Element ids of a down-set lattice in mask order, as bitmasks.
pub fn downset_masks(poset: &Poset) -> Vec<u64> {
    (0..1u64 << poset.len())
        .filter(|&m| poset.is_down_set(m))
        .collect()
}

/// The lattice map `D ↦ f⁻¹(D)` induced by a monotone point map
/// `f: target poset → source poset`, as element ids.
pub fn downset_hom_map(source: &Poset, target: &Poset, f: &[usize]) -> Vec<Elem> {
    let tmasks = downset_masks(target);
    downset_masks(source)
        .into_iter()
        .map(|d| {
            let pre = (0..target.len())
                .filter(|&y| d >> f[y] & 1 == 1)
                .fold(0u64, |acc, y| acc | 1 << y);
            tmasks
                .binary_search(&pre)
                .expect("monotone maps pull down-sets back to down-sets")
        })
        .collect()
}

/// A random homomorphism between two down-set lattices, built as the dual
/// of a monotone map between their posets.
pub fn random_downset_hom<'a>(
    gen: &mut Gen,
    source: (&Poset, &'a FiniteLattice),
    target: (&Poset, &'a FiniteLattice),
) -> LatticeHom<'a> {
    let f = gen.monotone_map(target.0, source.0);
    let map = downset_hom_map(source.0, target.0, &f);
    LatticeHom::new(source.1, target.1, map).expect("ids come from the target")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::verify_hom;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u64> = (0..4)
            .map({
                let mut g = Gen::new(7);
                move |_| g.next_u64()
            })
            .collect();
        let mut g = Gen::new(7);
        assert_eq!(a, (0..4).map(|_| g.next_u64()).collect::<Vec<_>>());
    }

    #[test]
    fn size_zero_gives_chain2() {
        let (_, l) = Gen::new(3).downset(0).unwrap();
        assert_eq!(l.len(), 2);
        assert!(matches!(
            Gen::new(1).downset(15),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn random_homs_are_homs() {
        let mut g = Gen::new(11);
        for _ in 0..30 {
            let n = g.range(1, 5);
            let m = g.range(1, 5);
            let (p, k) = g.downset(n).unwrap();
            let (q, l) = g.downset(m).unwrap();
            let h = random_downset_hom(&mut g, (&p, &k), (&q, &l));
            assert!(verify_hom(&h).holds());
        }
    }

    #[test]
    fn staged_families_separate_points() {
        let mut g = Gen::new(1);
        let f = g.staged_family(6, 4, 3);
        assert!(f.is_t0_separating().holds());
        for m in &f.members {
            let st = m.stages.as_ref().unwrap();
            assert_eq!(st.last(), Some(&m.set));
            assert!(st.windows(2).all(|w| w[0].is_subset(&w[1])));
        }
    }
}
