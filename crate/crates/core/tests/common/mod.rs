//! Slow, independent re-implementations used as oracles.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use wallman_core::certificates::{CoverFamily, PhiAssignment};
use wallman_core::generate::Gen;
use wallman_core::{Elem, FiniteLattice};

pub type Set = BTreeSet<Elem>;

pub fn to_set(bits: &FixedBitSet) -> Set {
    bits.ones().collect()
}

/// Every filter, by scanning all subsets of the lattice.
pub fn naive_filters(l: &FiniteLattice) -> Vec<Set> {
    let n = l.len();
    assert!(n <= 16, "subset scan is for small lattices");
    let mut out = Vec::new();
    for mask in 1u32..1 << n {
        let set: Set = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if naive_is_filter(l, &set) {
            out.push(set);
        }
    }
    out
}

pub fn naive_is_filter(l: &FiniteLattice, set: &Set) -> bool {
    if set.contains(&l.bottom()) || !set.contains(&l.top()) {
        return false;
    }
    for &a in set {
        for b in l.elements() {
            if l.leq(a, b) && !set.contains(&b) {
                return false;
            }
        }
        for &b in set {
            if !set.contains(&l.meet(a, b)) {
                return false;
            }
        }
    }
    true
}

pub fn naive_is_prime(l: &FiniteLattice, set: &Set) -> bool {
    l.elements().all(|a| {
        l.elements()
            .all(|b| !set.contains(&l.join(a, b)) || set.contains(&a) || set.contains(&b))
    })
}

/// Filters maximal under inclusion.
pub fn naive_ultrafilters(l: &FiniteLattice) -> Vec<Set> {
    let all = naive_filters(l);
    all.iter()
        .filter(|f| !all.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
        .cloned()
        .collect()
}

pub fn naive_distributive(l: &FiniteLattice) -> bool {
    l.elements().all(|a| {
        l.elements().all(|b| {
            l.elements()
                .all(|c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c)))
        })
    })
}

/// Literal reading of the order on pairs `(s, k)`.
pub fn naive_gulko_lt(
    phi: &[BTreeSet<usize>],
    u: usize,
    (s, k): (&BTreeSet<usize>, usize),
    (t, l): (&BTreeSet<usize>, usize),
    strict: bool,
) -> bool {
    if !s.is_subset(t) || k >= l {
        return false;
    }
    phi[u].iter().filter(|&&m| m < k).all(|&m| {
        t.difference(s).any(|&v| {
            if strict {
                phi[v] == BTreeSet::from([m])
            } else {
                phi[v].contains(&m)
            }
        })
    })
}

pub fn mask_to_set(mask: u64) -> BTreeSet<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn centered(family: &CoverFamily, s: &BTreeSet<usize>) -> bool {
    (0..family.ground.len()).any(|x| s.iter().all(|&v| family.members[v].set.contains(x)))
}

/// Longest increasing chain among all valid nodes with `k ≤ k_max`, by
/// dynamic programming over every node.
pub fn brute_longest_chain(
    family: &CoverFamily,
    phi: &PhiAssignment,
    u: usize,
    k_max: usize,
    strict: bool,
) -> usize {
    let n = family.members.len();
    assert!(n <= 10);
    let sets: Vec<BTreeSet<usize>> = (0..1u64 << n)
        .map(mask_to_set)
        .filter(|s| centered(family, s))
        .collect();
    let mut nodes: Vec<(usize, &BTreeSet<usize>)> = Vec::new();
    for k in 0..=k_max {
        for s in &sets {
            nodes.push((k, s));
        }
    }
    // Nodes are sorted by k, and every edge raises k.
    let mut best = vec![1usize; nodes.len()];
    for j in 0..nodes.len() {
        for i in 0..j {
            if nodes[i].0 < nodes[j].0
                && best[i] + 1 > best[j]
                && naive_gulko_lt(
                    &phi.0,
                    u,
                    (nodes[i].1, nodes[i].0),
                    (nodes[j].1, nodes[j].0),
                    strict,
                )
            {
                best[j] = best[i] + 1;
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// `|{V : x ∈ V}|`, recounted from point lists.
pub fn recount(x: usize, family: &[FixedBitSet]) -> usize {
    let mut count = 0;
    for v in family {
        for y in v.ones() {
            if y == x {
                count += 1;
            }
        }
    }
    count
}

/// A random set that generates the lattice: the join-irreducibles plus a
/// random sample, thinned while it still generates.
pub fn random_generating_set(g: &mut Gen, l: &FiniteLattice) -> FixedBitSet {
    let mut set = l.set_of(l.join_irreducibles());
    for a in l.elements() {
        if g.chance(1, 3) {
            set.insert(a);
        }
    }
    let members: Vec<Elem> = set.ones().collect();
    for a in members {
        if g.chance(1, 2) {
            set.set(a, false);
            if !l.is_generating(&set) {
                set.insert(a);
            }
        }
    }
    set
}

/// Families with an assignment `φ` for the order checks: the shipped
/// families with their group-derived `φ`, then seeded random ones.
pub fn phi_fixtures(random: usize) -> Vec<(String, CoverFamily, PhiAssignment)> {
    use wallman_core::certificates::phi_from_witness;
    use wallman_core::corpus;
    let mut out: Vec<(String, CoverFamily, PhiAssignment)> = corpus::family_names()
        .map(|name| {
            let f = corpus::family(name);
            let phi = phi_from_witness(&f);
            (name.to_string(), f, phi)
        })
        .collect();
    for seed in 0..random as u64 {
        let mut g = Gen::new(seed);
        let points = g.range(1, 4);
        let members = g.range(1, 5);
        let (f, phi) = g.phi_family(points, members, 3);
        out.push((format!("seed{seed}"), f, phi));
    }
    out
}

/// Nodes with `|s| ≤ max_s` and `k ≤ max_k`, centered `s` only.
pub fn nodes(family: &CoverFamily, max_s: usize, max_k: usize) -> Vec<(BTreeSet<usize>, usize)> {
    let n = family.members.len();
    let mut out = Vec::new();
    for mask in 0..1u64 << n {
        let s = mask_to_set(mask);
        if s.len() <= max_s && centered(family, &s) {
            for k in 0..=max_k {
                out.push((s.clone(), k));
            }
        }
    }
    out
}
