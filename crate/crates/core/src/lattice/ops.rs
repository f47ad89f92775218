use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::{Elem, FiniteLattice};

impl FiniteLattice {
    /// The opposite lattice: same elements, order reversed, meet and join
    /// (and bottom and top) exchanged. Element ids are preserved.
    pub fn opposite(&self) -> FiniteLattice {
        FiniteLattice::from_up_sets_trusted(
            self.name.clone(),
            self.names.clone(),
            self.down.clone(),
        )
    }

    /// The smallest sublattice containing `generators` and both bounds,
    /// by closing under meet and join until nothing new appears.
    pub fn generated_sublattice(&self, generators: &FixedBitSet) -> FixedBitSet {
        let mut closed = generators.clone();
        closed.insert(self.bottom());
        closed.insert(self.top());
        let mut members: Vec<Elem> = closed.ones().collect();
        let mut queue: VecDeque<Elem> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            let mut fresh = Vec::new();
            for &y in &members {
                for z in [self.meet(x, y), self.join(x, y)] {
                    if !closed.put(z) {
                        fresh.push(z);
                    }
                }
            }
            for z in fresh {
                members.push(z);
                queue.push_back(z);
            }
        }
        closed
    }

    /// All joins of finite meets of `generators`, plus the bounds. Equals
    /// [`Self::generated_sublattice`] when the lattice is distributive.
    pub fn joins_of_meets(&self, generators: &FixedBitSet) -> FixedBitSet {
        let mut meets = self.set_of([self.top()]);
        grow_closed(&mut meets, generators.ones(), |a, b| self.meet(a, b));
        let mut joins = self.set_of([self.bottom()]);
        grow_closed(&mut joins, meets.ones().collect::<Vec<_>>(), |a, b| {
            self.join(a, b)
        });
        joins
    }

    /// Whether `generators` generate the whole lattice.
    pub fn is_generating(&self, generators: &FixedBitSet) -> bool {
        self.generated_sublattice(generators).count_ones(..) == self.len()
    }

    /// `1 + L`: a fresh element strictly below everything, placed at id 0.
    pub fn attach_bottom(&self) -> FiniteLattice {
        let n = self.len();
        let mut fresh = String::from("s");
        while self.element(&fresh).is_some() {
            fresh.push('\'');
        }
        let mut names = Vec::with_capacity(n + 1);
        names.push(fresh);
        names.extend(self.names.iter().cloned());
        let mut up = Vec::with_capacity(n + 1);
        let mut all = FixedBitSet::with_capacity(n + 1);
        all.insert_range(..);
        up.push(all);
        for row in &self.up {
            let mut shifted = FixedBitSet::with_capacity(n + 1);
            shifted.extend(row.ones().map(|x| x + 1));
            up.push(shifted);
        }
        let name = self.name.as_ref().map(|n| format!("1+{n}"));
        FiniteLattice::from_up_sets_trusted(name, names, up)
    }

    /// The chain `0 < 1 < … < len-1`, named by position.
    pub fn chain(len: usize) -> FiniteLattice {
        assert!(len >= 1, "a chain needs at least one element");
        let names = (0..len).map(|i| i.to_string()).collect();
        let succ: Vec<Vec<Elem>> = (0..len)
            .map(|i| if i + 1 < len { vec![i + 1] } else { vec![] })
            .collect();
        FiniteLattice::from_sorted_covers_trusted(Some(format!("chain{len}")), names, &succ)
    }

    /// The lattice of subsets of `{0, …, k-1}`, elements ordered by bitmask.
    pub fn powerset(k: usize) -> FiniteLattice {
        Poset::antichain(k)
            .down_set_lattice()
            .with_name(format!("powerset{k}"))
    }
}

/// Adds to `set` everything reachable from `seeds` and the current members
/// by the binary operation `op`.
fn grow_closed(
    set: &mut FixedBitSet,
    seeds: impl IntoIterator<Item = Elem>,
    op: impl Fn(Elem, Elem) -> Elem,
) {
    let seeds: Vec<Elem> = seeds.into_iter().collect();
    let mut frontier: Vec<Elem> = set.ones().collect();
    for &s in &seeds {
        if !set.put(s) {
            frontier.push(s);
        }
    }
    while let Some(x) = frontier.pop() {
        for &s in &seeds {
            let z = op(x, s);
            if !set.put(z) {
                frontier.push(z);
            }
        }
    }
}

/// Largest poset accepted by [`Poset::down_set_lattice`]: `2^14` down-sets
/// at most, matching [`super::MAX_ELEMENTS`].
pub const MAX_POSET_POINTS: usize = 14;

/// A finite poset on points `0..n`, stored as the strict down-closure of
/// each point (bit `y` of `below[x]` set iff `y < x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    below: Vec<u64>,
}

impl Poset {
    pub fn antichain(n: usize) -> Self {
        assert!(n <= 64);
        Self { below: vec![0; n] }
    }

    pub fn chain(n: usize) -> Self {
        assert!(n <= 64);
        Self {
            below: (0..n).map(|i| (1u64 << i) - 1).collect(),
        }
    }

    /// Transitive closure of `lower < upper` pairs. Returns `None` if the
    /// relation has a cycle.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Option<Self> {
        assert!(n <= 64);
        let mut below = vec![0u64; n];
        for &(lo, hi) in pairs {
            below[hi] |= 1 << lo;
        }
        for k in 0..n {
            for x in 0..n {
                if below[x] >> k & 1 == 1 {
                    below[x] |= below[k];
                }
            }
        }
        (0..n)
            .all(|x| below[x] >> x & 1 == 0)
            .then_some(Self { below })
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    /// Strict predecessors of `x` as a bitmask.
    pub fn below(&self, x: usize) -> u64 {
        self.below[x]
    }

    pub fn is_down_set(&self, mask: u64) -> bool {
        (0..self.len()).all(|x| mask >> x & 1 == 0 || self.below[x] & !mask == 0)
    }

    /// The distributive lattice of down-sets ordered by inclusion. Element
    /// ids follow increasing bitmask, so the empty set is 0 and ids form a
    /// linear extension of the order.
    pub fn down_set_lattice(&self) -> FiniteLattice {
        let n = self.len();
        assert!(
            n <= MAX_POSET_POINTS,
            "down-set lattice of {n} points exceeds the element cap"
        );
        let masks: Vec<u64> = (0..1u64 << n).filter(|&m| self.is_down_set(m)).collect();
        let mut index = vec![u32::MAX; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        let succ: Vec<Vec<Elem>> = masks
            .iter()
            .map(|&d| {
                (0..n)
                    .filter(|&x| d >> x & 1 == 0 && self.below[x] & !d == 0)
                    .map(|x| index[(d | 1 << x) as usize] as Elem)
                    .collect()
            })
            .collect();
        let names = masks.iter().map(|&m| mask_name(m)).collect();
        FiniteLattice::from_sorted_covers_trusted(None, names, &succ)
    }
}

/// `{}` / `{0,2,3}`
pub fn mask_name(mask: u64) -> String {
    let parts: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_powerset_shapes() {
        let c = FiniteLattice::chain(3);
        assert_eq!(c.len(), 3);
        assert_eq!(c.covers(), vec![(0, 1), (1, 2)]);
        let p = FiniteLattice::powerset(3);
        assert_eq!(p.len(), 8);
        assert_eq!(p.element_name(5), "{0,2}");
        assert_eq!(p.meet(3, 6), 2);
        assert_eq!(p.join(1, 2), 3);
    }

    #[test]
    fn opposite_of_chain_reverses_order() {
        let c = FiniteLattice::chain(3);
        let op = c.opposite();
        assert_eq!(op.bottom(), 2);
        assert_eq!(op.top(), 0);
        assert!(op.leq(2, 1) && op.leq(1, 0));
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn generated_sublattice_examples() {
        let p = FiniteLattice::powerset(3);
        let all = p.full_set();
        assert_eq!(p.generated_sublattice(&all), all);
        let empty = p.empty_set();
        assert_eq!(
            p.generated_sublattice(&empty),
            p.set_of([p.bottom(), p.top()])
        );
        // {0}, {1} generate ∅, {0}, {1}, {0,1} and the top {0,1,2}.
        let m = p.set_of([1, 2]);
        assert_eq!(p.generated_sublattice(&m), p.set_of([0, 1, 2, 3, 7]));
        assert_eq!(p.joins_of_meets(&m), p.set_of([0, 1, 2, 3, 7]));
    }

    #[test]
    fn attach_bottom_to_one_point_gives_two_chain() {
        let one = FiniteLattice::chain(1);
        let two = one.attach_bottom();
        assert_eq!(two.len(), 2);
        assert_eq!(two.element_name(0), "s");
        assert_eq!(two.covers(), vec![(0, 1)]);
    }

    #[test]
    fn attach_bottom_avoids_name_clash() {
        let l = FiniteLattice::from_json(r#"{"elements":["s","t"],"covers":[["s","t"]]}"#).unwrap();
        assert_eq!(l.attach_bottom().element_name(0), "s'");
    }

    #[test]
    fn down_sets_of_small_posets() {
        assert_eq!(Poset::antichain(0).down_set_lattice().len(), 1);
        assert_eq!(Poset::antichain(1).down_set_lattice().len(), 2);
        assert_eq!(Poset::chain(4).down_set_lattice().len(), 5);
        // V shape: 0 < 2, 1 < 2 → ∅, {0}, {1}, {0,1}, {0,1,2}
        let v = Poset::from_relation(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(v.down_set_lattice().len(), 5);
        assert!(Poset::from_relation(2, &[(0, 1), (1, 0)]).is_none());
    }
}
