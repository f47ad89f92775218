use std::collections::BTreeMap;

use serde_json::json;
use wallman_core::certificates::{
    centered_poset_rank, max_increasing_chain, ord, phi_from_witness, rosenthal_refinement,
    weakly_sigma_point_finite, wiec_refinement, witness_from_phi, CoverFamily, GulkoNode,
    GulkoOrder,
};

use crate::input::{self, CliError};
use crate::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CertCheck {
    T0,
    Ord,
    Rank,
    Phi,
    Refine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Style {
    Wiec,
    Rosenthal,
}

#[derive(Clone, Debug, Default)]
pub struct CertOptions {
    pub phi: Option<String>,
    pub member: Option<String>,
    pub k_cap: Option<usize>,
    pub strict: bool,
    pub threshold: Option<usize>,
}

fn ids(f: &CoverFamily, node: &GulkoNode) -> Vec<String> {
    node.members().map(|i| f.members[i].id.clone()).collect()
}

pub fn cert(
    path: &str,
    what: CertCheck,
    style: Style,
    opts: &CertOptions,
) -> Result<RunReport, CliError> {
    let f = input::family(path)?;
    let mut r = RunReport::new("cert", [path.to_string()]);
    r.check("members", f.members.len());
    r.check("points", f.ground.len());
    match what {
        CertCheck::T0 => {
            let v = f.is_t0_separating();
            let w = v
                .witness()
                .map(|[x, y]| json!([f.ground[*x], f.ground[*y]]));
            r.require("t0_separating", v.holds(), w);
        }
        CertCheck::Ord => {
            let sets = f.sets();
            let mut table = BTreeMap::new();
            for (x, name) in f.ground.iter().enumerate() {
                let by_group: BTreeMap<String, usize> = f
                    .group_ids()
                    .into_iter()
                    .map(|n| (n.to_string(), ord(x, &f.group_sets(n))))
                    .collect();
                table.insert(
                    name.clone(),
                    json!({ "total": ord(x, &sets), "groups": by_group }),
                );
            }
            r.check("ord", table);
            let groups: BTreeMap<String, _> = f
                .group_ids()
                .into_iter()
                .map(|n| {
                    (
                        n.to_string(),
                        centered_poset_rank(f.ground.len(), &f.group_sets(n)),
                    )
                })
                .map(|(n, c)| {
                    (
                        n,
                        json!({ "max_centered": c.max_centered, "max_ord": c.max_ord }),
                    )
                })
                .collect();
            r.check("centered", groups);
        }
        CertCheck::Rank => {
            let phi = match &opts.phi {
                Some(p) => input::phi(p, &f)?,
                None => phi_from_witness(&f),
            };
            let members: Vec<usize> = match &opts.member {
                Some(id) => vec![f
                    .index_of(id)
                    .ok_or_else(|| CliError::Input(format!("no member `{id}`")))?],
                None => (0..f.members.len()).collect(),
            };
            let order = if opts.strict {
                GulkoOrder::Strict
            } else {
                GulkoOrder::Membership
            };
            r.check("order", order);
            let mut out = BTreeMap::new();
            let mut warnings = Vec::new();
            let mut within = true;
            for u in members {
                let cap = opts.k_cap.unwrap_or_else(|| {
                    phi.get(u).last().copied().unwrap_or(0) + f.members.len() + 1
                });
                let s = match max_increasing_chain(&f, &phi, u, cap, order) {
                    Ok(s) => s,
                    Err(e) => return Err(r.fail(e)),
                };
                if !s.stabilized {
                    warnings.push(format!(
                        "k cap {cap} is too small for `{}`",
                        f.members[u].id
                    ));
                }
                within &= s.rank <= s.bound;
                let chain: Vec<_> = s
                    .chain
                    .iter()
                    .map(|n| json!({ "s": ids(&f, n), "k": n.k }))
                    .collect();
                out.insert(
                    f.members[u].id.clone(),
                    json!({
                        "rank": s.rank,
                        "capped_length": s.capped_length,
                        "k_cap": s.k_cap,
                        "stabilized": s.stabilized,
                        "bound": s.bound,
                        "chain": chain,
                    }),
                );
            }
            r.check("chains", out);
            r.check("warnings", warnings);
            r.require("within_bound", within, None);
        }
        CertCheck::Phi => {
            let phi = match &opts.phi {
                Some(p) => input::phi(p, &f)?,
                None => phi_from_witness(&f),
            };
            r.check("phi", phi.to_map(&f));
            let regrouped = match witness_from_phi(&f, &phi) {
                Ok(g) => g,
                Err(e) => return Err(r.fail(e)),
            };
            let groups: BTreeMap<String, Vec<String>> = regrouped
                .group_ids()
                .into_iter()
                .map(|n| {
                    (
                        n.to_string(),
                        regrouped
                            .group(n)
                            .into_iter()
                            .map(|i| f.members[i].id.clone())
                            .collect(),
                    )
                })
                .collect();
            r.check("groups", groups);
            r.require("round_trip", phi_from_witness(&regrouped) == phi, None);
            let v = weakly_sigma_point_finite(&regrouped, opts.threshold);
            let w = v
                .witness()
                .map(|[x, m]| json!([f.ground[*x], f.members[*m].id]));
            r.check("threshold", opts.threshold.unwrap_or(f.members.len() + 1));
            r.require("weakly_sigma_point_finite", v.holds(), w);
        }
        CertCheck::Refine => {
            let refined = match style {
                Style::Wiec => wiec_refinement(&f),
                Style::Rosenthal => rosenthal_refinement(&f),
            };
            let refined = match refined {
                Ok(x) => x,
                Err(e) => return Err(r.fail(e)),
            };
            r.check(
                "style",
                if style == Style::Wiec {
                    "wiec"
                } else {
                    "rosenthal"
                },
            );
            let groups: BTreeMap<String, [usize; 2]> = refined
                .groups
                .iter()
                .map(|(g, &(k, n))| (g.to_string(), [k, n]))
                .collect();
            r.check("groups", groups);
            r.check("family", refined.family.to_spec());
            let rep = &refined.report;
            r.check("input_t0", rep.input_t0.holds());
            r.require(
                "t0_preserved",
                !rep.input_t0.holds() || rep.output_t0.holds(),
                None,
            );
            r.require(
                "ord_transfer",
                rep.ord_transfer.holds(),
                rep.ord_transfer.witness().map(|w| json!(w)),
            );
            r.require(
                "centered_transfer",
                rep.centered_transfer.holds(),
                rep.centered_transfer.witness().map(|w| json!(w)),
            );
        }
    }
    Ok(r)
}
