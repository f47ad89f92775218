//! The poset `P(U, φ, u)` of pairs `(s, k)`, `s` a centered finite set of
//! members, ordered by
//!
//! ```text
//! (s,k) < (t,l)  iff  s ⊆ t, k < l, and every m ∈ φ(u) ∩ {0..k-1}
//!                     is covered by some v ∈ t ∖ s
//! ```
//!
//! where `v` covers `m` when `m ∈ φ(v)` ([`GulkoOrder::Membership`]) or
//! when `φ(v) = {m}` ([`GulkoOrder::Strict`]).

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::{CoverFamily, PhiAssignment};
use crate::error::{Error, Result};

/// Member sets are bitmasks, which bounds the family size.
pub const MAX_MEMBERS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GulkoNode {
    /// Member indices as a bitmask.
    pub s: u64,
    pub k: usize,
}

impl GulkoNode {
    pub fn new(members: impl IntoIterator<Item = usize>, k: usize) -> Self {
        Self {
            s: members.into_iter().fold(0, |acc, i| acc | 1 << i),
            k,
        }
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(|i| self.s >> i & 1 == 1)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GulkoOrder {
    #[default]
    Membership,
    Strict,
}

fn covers(phi_v: &BTreeSet<usize>, m: usize, order: GulkoOrder) -> bool {
    match order {
        GulkoOrder::Membership => phi_v.contains(&m),
        GulkoOrder::Strict => phi_v.len() == 1 && phi_v.contains(&m),
    }
}

fn check_family(family: &CoverFamily, phi: &PhiAssignment, u: usize) -> Result<()> {
    if family.members.len() > MAX_MEMBERS {
        return Err(Error::TooManyMembers(family.members.len()));
    }
    if phi.0.len() != family.members.len() {
        return Err(Error::MissingPhi(
            family
                .members
                .get(phi.0.len())
                .map_or_else(|| "?".to_string(), |m| m.id.clone()),
        ));
    }
    if let Some(i) = phi.0.iter().position(|v| v.is_empty()) {
        return Err(Error::EmptyPhiValue(family.members[i].id.clone()));
    }
    if u >= family.members.len() {
        return Err(Error::PreconditionFailed(format!(
            "no member with index {u}"
        )));
    }
    Ok(())
}

fn valid(family: &CoverFamily, node: GulkoNode) -> bool {
    let n = family.members.len();
    (n == 64 || node.s >> n == 0) && family.is_centered_mask(node.s)
}

/// `a < b` in `P(U, φ, u)`.
pub fn gulko_lt(
    family: &CoverFamily,
    phi: &PhiAssignment,
    u: usize,
    a: GulkoNode,
    b: GulkoNode,
    order: GulkoOrder,
) -> Result<bool> {
    check_family(family, phi, u)?;
    if !valid(family, a) || !valid(family, b) {
        return Err(Error::InvalidNode);
    }
    Ok(lt_unchecked(phi, u, a, b, order))
}

fn lt_unchecked(
    phi: &PhiAssignment,
    u: usize,
    a: GulkoNode,
    b: GulkoNode,
    order: GulkoOrder,
) -> bool {
    if a.s & !b.s != 0 || a.k >= b.k {
        return false;
    }
    let fresh = GulkoNode {
        s: b.s & !a.s,
        k: 0,
    };
    phi.get(u)
        .range(..a.k)
        .all(|&m| fresh.members().any(|v| covers(phi.get(v), m, order)))
}

/// Result of [`max_increasing_chain`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSearch {
    /// Longest chain with no bound on `k`.
    pub rank: usize,
    /// A chain of that length, starting at `(∅, 0)`.
    pub chain: Vec<GulkoNode>,
    pub k_cap: usize,
    /// Longest chain among nodes with `k ≤ k_cap`.
    pub capped_length: usize,
    /// Raising the cap would not lengthen chains.
    pub stabilized: bool,
    /// `|members| + min φ(u) + 2`
    pub bound: usize,
}

/// Longest `<`-increasing chain.
///
/// Two reductions keep the search finite. A chain can always be re-indexed
/// to `k = 0, 1, 2, …`, since lowering `k` only weakens the order
/// condition. And between successors with the same `k` a smaller `t` is at
/// least as good, so only `t = s` (nothing to cover) or `s` plus a cover of
/// the required `m` using at most one member per `m` is tried. The order
/// condition sees `k` only through `φ(u) ∩ k`, which is constant from
/// `max φ(u) + 1` on, so results are memoized on `(s, min(k, max φ(u) + 1))`.
pub fn max_increasing_chain(
    family: &CoverFamily,
    phi: &PhiAssignment,
    u: usize,
    k_cap: usize,
    order: GulkoOrder,
) -> Result<ChainSearch> {
    check_family(family, phi, u)?;
    let phi_u = phi.get(u);
    let saturation = phi_u.last().map_or(0, |&m| m + 1);
    let mut search = Search {
        family,
        phi,
        phi_u,
        order,
        saturation,
        memo: HashMap::new(),
    };
    let rank = search.best(0, 0);
    let mut chain = vec![GulkoNode { s: 0, k: 0 }];
    while chain.len() < rank {
        let last = *chain.last().expect("chain starts non-empty");
        let key = (last.s, last.k.min(saturation));
        let next = search.memo[&key].1.expect("a longer chain continues");
        chain.push(GulkoNode {
            s: next,
            k: last.k + 1,
        });
    }
    let capped_length = rank.min(k_cap + 1);
    Ok(ChainSearch {
        rank,
        chain,
        k_cap,
        capped_length,
        stabilized: capped_length == rank,
        bound: family.members.len() + phi_u.first().copied().unwrap_or(0) + 2,
    })
}

struct Search<'f> {
    family: &'f CoverFamily,
    phi: &'f PhiAssignment,
    phi_u: &'f BTreeSet<usize>,
    order: GulkoOrder,
    saturation: usize,
    /// `(s, min(k, saturation)) → (length from here, best next s)`
    memo: HashMap<(u64, usize), (usize, Option<u64>)>,
}

impl Search<'_> {
    fn best(&mut self, s: u64, k: usize) -> usize {
        let key = (s, k.min(self.saturation));
        if let Some(&(len, _)) = self.memo.get(&key) {
            return len;
        }
        let required: Vec<usize> = self.phi_u.range(..k).copied().collect();
        let mut successors = HashSet::new();
        self.covers_from(s, s, 0, &required, &mut successors);
        let mut best = (1, None);
        let mut ordered: Vec<u64> = successors.into_iter().collect();
        ordered.sort_unstable();
        for t in ordered {
            let len = 1 + self.best(t, k + 1);
            if len > best.0 {
                best = (len, Some(t));
            }
        }
        self.memo.insert(key, best);
        best.0
    }

    /// Centered supersets `t` of `base` in which every `required[i..]` is
    /// covered by a member of `t ∖ base`, adding at most one member per `m`.
    fn covers_from(&self, base: u64, t: u64, i: usize, required: &[usize], out: &mut HashSet<u64>) {
        let Some(&m) = required.get(i) else {
            out.insert(t);
            return;
        };
        let fresh = GulkoNode { s: t & !base, k: 0 };
        if fresh
            .members()
            .any(|v| covers(self.phi.get(v), m, self.order))
        {
            self.covers_from(base, t, i + 1, required, out);
            return;
        }
        for v in 0..self.family.members.len() {
            let grown = t | 1 << v;
            if grown == t || !covers(self.phi.get(v), m, self.order) {
                continue;
            }
            if self.family.is_centered_mask(grown) {
                self.covers_from(base, grown, i + 1, required, out);
            }
        }
    }
}

/// The sequence built in the proof of well-foundedness: start at `(∅, 0)`
/// and at each step raise `k` by one and add, for each `m ∈ φ(u) ∩ k`, the
/// first member of `Y_m` that contains `x` and is not yet in `s`. Stops
/// when some `m` has no such member or after `max_steps` nodes.
pub fn replay_construction(
    family: &CoverFamily,
    phi: &PhiAssignment,
    u: usize,
    x: usize,
    max_steps: usize,
) -> Result<Vec<GulkoNode>> {
    check_family(family, phi, u)?;
    let mut chain = vec![GulkoNode { s: 0, k: 0 }];
    while chain.len() < max_steps {
        let last = *chain.last().expect("chain starts non-empty");
        let k = last.k + 1;
        let mut s = last.s;
        for &m in phi.get(u).range(..k) {
            let pick = (0..family.members.len()).find(|&v| {
                last.s >> v & 1 == 0 && phi.get(v).contains(&m) && family.members[v].set.contains(x)
            });
            match pick {
                Some(v) => s |= 1 << v,
                None => return Ok(chain),
            }
        }
        chain.push(GulkoNode { s, k });
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::super::phi_from_witness;
    use super::*;

    fn fam(text: &str) -> CoverFamily {
        CoverFamily::from_json(text).unwrap()
    }

    #[test]
    fn empty_quantifier_at_k_zero() {
        let f = fam(r#"{"ground":[0],"members":[{"id":"u","set":[0]}]}"#);
        let phi = phi_from_witness(&f);
        let a = GulkoNode::new([], 0);
        let b = GulkoNode::new([0], 1);
        assert!(gulko_lt(&f, &phi, 0, a, b, GulkoOrder::Membership).unwrap());
    }

    #[test]
    fn nothing_new_to_cover_zero() {
        let f = fam(r#"{"ground":[0],"members":[{"id":"u","set":[0]}]}"#);
        let phi = phi_from_witness(&f);
        let a = GulkoNode::new([], 2);
        let b = GulkoNode::new([], 3);
        assert!(!gulko_lt(&f, &phi, 0, a, b, GulkoOrder::Membership).unwrap());
    }

    #[test]
    fn invalid_nodes_are_rejected() {
        let f = fam(r#"{"ground":[0,1],"members":[{"id":"a","set":[0]},{"id":"b","set":[1]}]}"#);
        let phi = phi_from_witness(&f);
        let bad = GulkoNode::new([0, 1], 1);
        assert_eq!(
            gulko_lt(
                &f,
                &phi,
                0,
                GulkoNode::new([], 0),
                bad,
                GulkoOrder::Membership
            ),
            Err(Error::InvalidNode)
        );
    }

    #[test]
    fn single_member_rank_is_three() {
        let f = fam(r#"{"ground":[0],"members":[{"id":"u","set":[0]}]}"#);
        let phi = phi_from_witness(&f);
        let r = max_increasing_chain(&f, &phi, 0, 10, GulkoOrder::Membership).unwrap();
        assert_eq!(r.rank, 3);
        assert_eq!(
            r.chain,
            vec![
                GulkoNode::new([], 0),
                GulkoNode::new([], 1),
                GulkoNode::new([0], 2)
            ]
        );
        assert!(r.stabilized && r.rank <= r.bound);
        let capped = max_increasing_chain(&f, &phi, 0, 1, GulkoOrder::Membership).unwrap();
        assert_eq!(capped.capped_length, 2);
        assert!(!capped.stabilized);
    }

    #[test]
    fn disjoint_members_cannot_both_be_added() {
        let f = fam(r#"{"ground":[0,1],"members":[{"id":"a","set":[0]},{"id":"b","set":[1]}]}"#);
        let phi = phi_from_witness(&f);
        let r = max_increasing_chain(&f, &phi, 0, 20, GulkoOrder::Membership).unwrap();
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn strict_order_needs_singleton_values() {
        let f = fam(
            r#"{"ground":[0],"members":[{"id":"u","set":[0],"group":[0,1]},{"id":"v","set":[0],"group":[0,1]}]}"#,
        );
        let phi = phi_from_witness(&f);
        let a = GulkoNode::new([], 1);
        let b = GulkoNode::new([1], 2);
        assert!(gulko_lt(&f, &phi, 0, a, b, GulkoOrder::Membership).unwrap());
        assert!(!gulko_lt(&f, &phi, 0, a, b, GulkoOrder::Strict).unwrap());
        let strict = max_increasing_chain(&f, &phi, 0, 20, GulkoOrder::Strict).unwrap();
        assert_eq!(strict.rank, 2);
    }

    #[test]
    fn replay_steps_are_increasing() {
        let f = fam(r#"{"ground":["x","y"],"members":[
                {"id":"u","set":["x"],"group":0},
                {"id":"a","set":["x","y"],"group":0},
                {"id":"b","set":["x"],"group":0},
                {"id":"c","set":["y"],"group":0}]}"#);
        let phi = phi_from_witness(&f);
        let x = f.point("x").unwrap();
        let replay = replay_construction(&f, &phi, 0, x, 100).unwrap();
        assert_eq!(replay.len(), 4);
        for w in replay.windows(2) {
            assert!(gulko_lt(&f, &phi, 0, w[0], w[1], GulkoOrder::Membership).unwrap());
        }
        let r = max_increasing_chain(&f, &phi, 0, 100, GulkoOrder::Membership).unwrap();
        assert!(replay.len() <= r.rank);
        assert_eq!(r.rank, 5);
    }
}
