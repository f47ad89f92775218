use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{centered_poset_rank, ord, CoverFamily, Member};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// `π(a, b) = (a + b)(a + b + 1)/2 + b`
pub fn cantor_pair(a: usize, b: usize) -> usize {
    (a + b) * (a + b + 1) / 2 + b
}

pub fn cantor_unpair(z: usize) -> (usize, usize) {
    // w = floor((sqrt(8z + 1) - 1) / 2), corrected for float error.
    let mut w = ((((8 * z + 1) as f64).sqrt() - 1.0) / 2.0) as usize;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let b = z - w * (w + 1) / 2;
    (w - b, b)
}

/// A refined family together with the checks run on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub family: CoverFamily,
    /// Output group id to `(stage k, input group n)`.
    pub groups: BTreeMap<usize, (usize, usize)>,
    pub report: RefinementReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementReport {
    pub input_t0: Verdict<[usize; 2]>,
    pub output_t0: Verdict<[usize; 2]>,
    /// `ord(x, W_{k,n}) ≤ ord(x, Y_n)`; witness `[x, k, n]`.
    pub ord_transfer: Verdict<[usize; 3]>,
    /// Largest centered subfamily of `W_{k,n}` is no larger than that of
    /// `Y_n`; witness `[k, n]`.
    pub centered_transfer: Verdict<[usize; 2]>,
}

impl RefinementReport {
    /// T0 is preserved and both transfers hold.
    pub fn holds(&self) -> bool {
        (!self.input_t0.holds() || self.output_t0.holds())
            && self.ord_transfer.holds()
            && self.centered_transfer.holds()
    }
}

/// Replaces each member `U ∈ Y_n` by its stages `W_k(U)`, grouped as
/// `W_{k,n}` and numbered `π(k, n)`.
pub fn wiec_refinement(family: &CoverFamily) -> Result<Refinement> {
    refine(family, cantor_pair)
}

/// As [`wiec_refinement`] with groups `W_{n,k}` numbered `π(n, k)`.
pub fn rosenthal_refinement(family: &CoverFamily) -> Result<Refinement> {
    refine(family, |k, n| cantor_pair(n, k))
}

fn stages_of(member: &Member) -> Result<&[FixedBitSet]> {
    let stages = member
        .stages
        .as_deref()
        .ok_or_else(|| Error::MissingStages(member.id.clone()))?;
    let increasing = stages.windows(2).all(|w| w[0].is_subset(&w[1]));
    if stages.is_empty() || !increasing || stages.last() != Some(&member.set) {
        return Err(Error::BadStages(member.id.clone()));
    }
    Ok(stages)
}

fn refine(family: &CoverFamily, number: impl Fn(usize, usize) -> usize) -> Result<Refinement> {
    let mut members = Vec::new();
    let mut groups = BTreeMap::new();
    for m in &family.members {
        for (k, w) in stages_of(m)?.iter().enumerate() {
            let mut ids: Vec<usize> = m
                .groups
                .iter()
                .map(|&n| {
                    let g = number(k, n);
                    groups.insert(g, (k, n));
                    g
                })
                .collect();
            ids.sort_unstable();
            members.push(Member {
                id: format!("{}#{k}", m.id),
                set: w.clone(),
                groups: ids,
                stages: None,
            });
        }
    }
    let out = CoverFamily {
        ground: family.ground.clone(),
        members,
    };
    let report = RefinementReport {
        input_t0: family.is_t0_separating(),
        output_t0: out.is_t0_separating(),
        ord_transfer: ord_transfer(family, &out, &groups),
        centered_transfer: centered_transfer(family, &out, &groups),
    };
    Ok(Refinement {
        family: out,
        groups,
        report,
    })
}

fn ord_transfer(
    input: &CoverFamily,
    output: &CoverFamily,
    groups: &BTreeMap<usize, (usize, usize)>,
) -> Verdict<[usize; 3]> {
    for (&g, &(k, n)) in groups {
        let (w, y) = (output.group_sets(g), input.group_sets(n));
        if let Some(x) = (0..input.ground.len()).find(|&x| ord(x, &w) > ord(x, &y)) {
            return Verdict::Fails([x, k, n]);
        }
    }
    Verdict::Holds
}

fn centered_transfer(
    input: &CoverFamily,
    output: &CoverFamily,
    groups: &BTreeMap<usize, (usize, usize)>,
) -> Verdict<[usize; 2]> {
    let points = input.ground.len();
    for (&g, &(k, n)) in groups {
        let w = centered_poset_rank(points, &output.group_sets(g)).max_centered;
        let y = centered_poset_rank(points, &input.group_sets(n)).max_centered;
        if w > y {
            return Verdict::Fails([k, n]);
        }
    }
    Verdict::Holds
}

/// Every member lies in some group `Y_n` with `ord(x, Y_n) < threshold`,
/// for every point `x`. Counts reaching `threshold` stand in for infinite
/// ones; the default `|members| + 1` is never reached. Witness
/// `[x, member]`.
pub fn weakly_sigma_point_finite(
    family: &CoverFamily,
    threshold: Option<usize>,
) -> Verdict<[usize; 2]> {
    let tau = threshold.unwrap_or(family.members.len() + 1);
    let ords: BTreeMap<usize, Vec<usize>> = family
        .group_ids()
        .into_iter()
        .map(|n| {
            let sets = family.group_sets(n);
            (n, (0..family.ground.len()).map(|x| ord(x, &sets)).collect())
        })
        .collect();
    let bare = |x: usize| {
        family
            .members
            .iter()
            .position(|m| !m.groups.iter().any(|n| ords[n][x] < tau))
    };
    match (0..family.ground.len()).find_map(|x| bare(x).map(|i| [x, i])) {
        Some(w) => Verdict::Fails(w),
        None => Verdict::Holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAGED: &str = r#"{"ground":["p","q","r"],"members":[
        {"id":"a","set":["p","q"],"group":0,"stages":[["p"],["p","q"]]},
        {"id":"b","set":["q","r"],"group":1,"stages":[["r"],["q","r"]]},
        {"id":"c","set":["p"],"group":[0,1],"stages":[["p"]]}]}"#;

    #[test]
    fn pairing_inverts() {
        assert_eq!(cantor_pair(0, 0), 0);
        assert_eq!(cantor_pair(1, 0), 1);
        assert_eq!(cantor_pair(0, 1), 2);
        for z in 0..500 {
            let (a, b) = cantor_unpair(z);
            assert_eq!(cantor_pair(a, b), z);
        }
    }

    #[test]
    fn staged_fixture() {
        let f = CoverFamily::from_json(STAGED).unwrap();
        let r = wiec_refinement(&f).unwrap();
        assert_eq!(r.family.members.len(), 5);
        assert_eq!(r.family.members[1].id, "a#1");
        assert!(r.report.holds() && r.report.output_t0.holds());
        let c = &r.family.members[4];
        assert_eq!(c.groups, vec![cantor_pair(0, 0), cantor_pair(0, 1)]);
        let ros = rosenthal_refinement(&f).unwrap();
        assert_eq!(ros.groups[&cantor_pair(1, 0)], (0, 1));
        assert!(ros.report.holds());
    }

    #[test]
    fn stage_errors() {
        let missing =
            CoverFamily::from_json(r#"{"ground":[0],"members":[{"id":"a","set":[0]}]}"#).unwrap();
        assert_eq!(
            wiec_refinement(&missing).unwrap_err(),
            Error::MissingStages("a".into())
        );
        let short = CoverFamily::from_json(
            r#"{"ground":[0,1],"members":[{"id":"a","set":[0,1],"stages":[[0]]}]}"#,
        )
        .unwrap();
        assert_eq!(
            rosenthal_refinement(&short).unwrap_err(),
            Error::BadStages("a".into())
        );
    }

    #[test]
    fn sigma_threshold() {
        let f = CoverFamily::from_json(STAGED).unwrap();
        assert!(weakly_sigma_point_finite(&f, None).holds());
        assert_eq!(
            weakly_sigma_point_finite(&f, Some(1)),
            Verdict::Fails([0, 0])
        );
    }
}
