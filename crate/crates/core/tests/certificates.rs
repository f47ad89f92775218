mod common;

use std::collections::BTreeSet;

use common::{brute_longest_chain, nodes, phi_fixtures, recount};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use wallman_core::certificates::{
    centered_poset_rank, gulko_lt, is_t0_separating, max_increasing_chain, ord, phi_from_witness,
    replay_construction, rosenthal_refinement, wiec_refinement, witness_from_phi, CoverFamily,
    GulkoNode, GulkoOrder, PhiAssignment,
};
use wallman_core::corpus;
use wallman_core::generate::Gen;

fn node(s: &BTreeSet<usize>, k: usize) -> GulkoNode {
    GulkoNode::new(s.iter().copied(), k)
}

fn strict(order: GulkoOrder) -> bool {
    order == GulkoOrder::Strict
}

#[test]
fn t0_examples() {
    let singletons: Vec<FixedBitSet> = (0..4)
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(4);
            s.insert(x);
            s
        })
        .collect();
    assert!(is_t0_separating(4, &singletons).holds());
    let mut whole = FixedBitSet::with_capacity(3);
    whole.insert_range(..);
    assert!(is_t0_separating(3, &[whole]).witness().is_some());
}

#[test]
fn order_matches_literal_reading() {
    for (name, f, phi) in phi_fixtures(20) {
        let all = nodes(&f, 4, 6);
        for order in [GulkoOrder::Membership, GulkoOrder::Strict] {
            for (s, k) in &all {
                for (t, l) in &all {
                    let fast = gulko_lt(&f, &phi, 0, node(s, *k), node(t, *l), order).unwrap();
                    let slow = common::naive_gulko_lt(&phi.0, 0, (s, *k), (t, *l), strict(order));
                    assert_eq!(fast, slow, "{name} {s:?},{k} {t:?},{l}");
                }
            }
        }
    }
}

#[test]
fn order_is_strict() {
    for (name, f, phi) in phi_fixtures(20) {
        if f.members.len() > 5 {
            continue;
        }
        let all = nodes(&f, 4, 6);
        let n = all.len();
        let lt: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| {
                        common::naive_gulko_lt(
                            &phi.0,
                            0,
                            (&all[i].0, all[i].1),
                            (&all[j].0, all[j].1),
                            false,
                        )
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            assert!(!lt[i].contains(&i), "{name}");
            for &j in &lt[i] {
                for &k in &lt[j] {
                    assert!(lt[i].binary_search(&k).is_ok(), "{name}: {i} {j} {k}");
                }
            }
        }
    }
}

#[test]
fn chain_search_matches_brute_force() {
    for (name, f, phi) in phi_fixtures(20) {
        for u in 0..f.members.len() {
            let max_phi = *phi.get(u).last().unwrap();
            let enough = max_phi + f.members.len() + 1;
            for order in [GulkoOrder::Membership, GulkoOrder::Strict] {
                let brute = brute_longest_chain(&f, &phi, u, enough, strict(order));
                let r = max_increasing_chain(&f, &phi, u, enough, order).unwrap();
                assert_eq!(r.rank, brute, "{name} u={u} {order:?}");
                assert!(r.stabilized && r.capped_length == r.rank);
                assert!(brute <= r.bound, "{name}: bound {} < {brute}", r.bound);
                for w in r.chain.windows(2) {
                    assert!(gulko_lt(&f, &phi, u, w[0], w[1], order).unwrap());
                }
                if order == GulkoOrder::Strict {
                    let loose =
                        max_increasing_chain(&f, &phi, u, enough, GulkoOrder::Membership).unwrap();
                    assert!(r.rank <= loose.rank, "{name} u={u}");
                }
                for cap in 0..3 {
                    let capped = max_increasing_chain(&f, &phi, u, cap, order).unwrap();
                    assert_eq!(
                        capped.capped_length,
                        brute_longest_chain(&f, &phi, u, cap, strict(order))
                    );
                }
            }
        }
    }
}

#[test]
fn replay_is_an_increasing_chain() {
    let f = corpus::family("replay");
    let phi = phi_from_witness(&f);
    let x = f.point("x").unwrap();
    let replay = replay_construction(&f, &phi, 0, x, 64).unwrap();
    for w in replay.windows(2) {
        assert!(gulko_lt(&f, &phi, 0, w[0], w[1], GulkoOrder::Membership).unwrap());
    }
    let last = replay.last().unwrap();
    // Stops once group 0 has no unused member through x.
    let unused = f
        .group(0)
        .into_iter()
        .filter(|&v| last.s >> v & 1 == 0 && f.members[v].set.contains(x));
    assert_eq!(unused.count(), 0);
    let r = max_increasing_chain(&f, &phi, 0, 64, GulkoOrder::Membership).unwrap();
    assert!(replay.len() <= r.rank);
}

#[test]
fn centered_rank_matches_subcollection_scan() {
    for name in corpus::family_names() {
        let f = corpus::family(name);
        let sets = f.sets();
        let mut best = 0;
        for mask in 0..1u64 << sets.len() {
            let chosen: BTreeSet<usize> = common::mask_to_set(mask);
            if chosen.is_empty() || common::centered(&f, &chosen) {
                best = best.max(chosen.len());
            }
        }
        let r = centered_poset_rank(f.ground.len(), &sets);
        assert_eq!(r.max_centered, best, "{name}");
        assert_eq!(r.max_ord, best);
    }
    assert_eq!(centered_poset_rank(3, &[]).max_centered, 0);
}

fn random_phi(g: &mut Gen, f: &CoverFamily) -> PhiAssignment {
    PhiAssignment(
        f.members
            .iter()
            .map(|_| {
                let mut v = BTreeSet::from([g.below(4)]);
                if g.chance(1, 2) {
                    v.insert(g.below(4));
                }
                v
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ord_recounts(seed in any::<u64>()) {
        let f = Gen::new(seed).staged_family(5, 4, 3);
        let sets = f.sets();
        for x in 0..5 {
            prop_assert_eq!(ord(x, &sets), recount(x, &sets));
        }
    }

    #[test]
    fn phi_round_trips(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = g.staged_family(4, 4, 3);
        let regrouped = witness_from_phi(&f, &phi_from_witness(&f)).unwrap();
        prop_assert_eq!(&regrouped, &f);
        let phi = random_phi(&mut g, &f);
        let back = phi_from_witness(&witness_from_phi(&f, &phi).unwrap());
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn refinements_preserve_separation(seed in any::<u64>()) {
        let f = Gen::new(seed).staged_family(5, 4, 3);
        prop_assert!(f.is_t0_separating().holds());
        let stages: usize = f.members.iter().map(|m| m.stages.as_ref().unwrap().len()).sum();
        for r in [wiec_refinement(&f).unwrap(), rosenthal_refinement(&f).unwrap()] {
            prop_assert!(r.report.holds());
            prop_assert!(r.family.is_t0_separating().holds());
            prop_assert_eq!(r.family.members.len(), stages);
            for (&g, &(_, n)) in &r.groups {
                let (w, y) = (r.family.group_sets(g), f.group_sets(n));
                for x in 0..f.ground.len() {
                    prop_assert!(recount(x, &w) <= recount(x, &y));
                }
            }
        }
    }
}

#[test]
fn trivial_stages_reindex_groups() {
    let mut f = corpus::family("x0_filter");
    for m in &mut f.members {
        m.stages = Some(vec![m.set.clone()]);
    }
    let r = wiec_refinement(&f).unwrap();
    assert_eq!(r.family.members.len(), f.members.len());
    for (a, b) in r.family.members.iter().zip(&f.members) {
        assert_eq!(a.set, b.set);
        assert_eq!(a.id, format!("{}#0", b.id));
    }
}
