use std::path::PathBuf;

use serde_json::json;
use wallman_core::duality::{
    embedding_from_separation, functor_laws, induced_map, induced_map_unchecked, is_separative_hom,
    mbeer_equivalence, surjectivity_from_kernel, verify_hom, HomFailure, LatticeHom, MbeerMode,
    SpaceMap,
};
use wallman_core::Verdict;

use crate::input::{self, CliError};
use crate::lattice_cmds::names;
use crate::report::RunReport;

#[derive(Clone, Copy, Debug, Default)]
pub struct HomFlags {
    pub induced: bool,
    pub separative: bool,
    pub mbeer: bool,
    pub laws: bool,
    pub unchecked: bool,
}

fn map_json(f: &SpaceMap<'_>) -> serde_json::Value {
    let (from, to) = (f.source.labels(), f.target.labels());
    json!(f
        .point_map
        .iter()
        .enumerate()
        .map(|(x, &y)| [from[x].clone(), to[y].clone()])
        .collect::<Vec<_>>())
}

pub fn hom(
    path: &str,
    then: Option<&str>,
    dirs: &[PathBuf],
    flags: HomFlags,
) -> Result<RunReport, CliError> {
    let (spec, k, l) = input::hom(path, dirs)?;
    let mut r = RunReport::new("hom", [path.to_string()]);
    let h = match spec.build(&k, &l) {
        Ok(h) => h,
        Err(e) => return Err(CliError::Input(format!("{path}: {e}"))),
    };
    r.check("source", k.label());
    r.check("target", l.label());
    let verdict = verify_hom(&h);
    let witness = verdict.witness().map(|w| match w {
        HomFailure::Bottom => json!("bottom"),
        HomFailure::Top => json!("top"),
        HomFailure::Meet(p) => json!({ "meet": names(&k, p) }),
        HomFailure::Join(p) => json!({ "join": names(&k, p) }),
    });
    r.require("homomorphism", verdict.holds(), witness);
    if !verdict.holds() {
        return Ok(r);
    }
    r.check("kernel", names(&k, &h.kernel().ones().collect::<Vec<_>>()));
    let any = flags.induced || flags.separative || flags.mbeer || flags.laws;
    if flags.induced || !any {
        let f = if flags.unchecked {
            induced_map_unchecked(&h)
        } else {
            induced_map(&h)
        };
        match f {
            Ok(f) => {
                r.check("induced", map_json(&f));
                let cont = f.is_continuous();
                r.require(
                    "continuous",
                    cont.holds(),
                    cont.witness().map(|&a| json!(l.element_name(a))),
                );
            }
            Err(e) => return Err(r.fail(e)),
        }
    }
    if flags.separative {
        let v = is_separative_hom(&h);
        let w = v
            .witness()
            .map(|[a, b]| json!([k.element_name(*a), l.element_name(*b)]));
        r.require("separative", v.holds(), w);
    }
    if flags.mbeer {
        let mode = if flags.unchecked {
            MbeerMode::Unchecked
        } else {
            MbeerMode::Checked
        };
        match mbeer_equivalence(&h, mode) {
            Ok(m) => {
                r.check("missing_hypotheses", &m.missing_hypotheses);
                r.check("a_separative", m.separative.holds());
                r.check("b_preimages_ultra", m.preimages_ultra.holds());
                r.check(
                    "c_plus_preserved",
                    m.plus_preserved.as_ref().map(Verdict::holds),
                );
                r.require("equivalent", m.equivalent(), None);
            }
            Err(e) => return Err(r.fail(e)),
        }
    }
    if flags.laws {
        let second = match then {
            Some(p) => Some(input::hom(p, dirs)?),
            None => None,
        };
        let id = LatticeHom::identity(&l);
        let g = match &second {
            Some((spec2, k2, l2)) => {
                if k2.label() != l.label() {
                    return Err(CliError::Input(format!(
                        "{}: source `{}` is not `{}`",
                        then.unwrap_or(""),
                        k2.label(),
                        l.label()
                    )));
                }
                spec2
                    .build(&l, l2)
                    .map_err(|e| CliError::Input(e.to_string()))?
            }
            None => id,
        };
        let outcome = (|| -> wallman_core::Result<_> {
            Ok((
                functor_laws(&g, &h)?,
                surjectivity_from_kernel(&h)?,
                embedding_from_separation(&h)?,
            ))
        })();
        match outcome {
            Ok((laws, kernel, sep)) => {
                r.require(
                    "composition",
                    laws.composition.holds(),
                    laws.composition.witness().map(|w| json!(w)),
                );
                r.require("identities", laws.identities, None);
                r.check("kernel_trivial", kernel.kernel_trivial);
                r.check("surjective", kernel.surjective);
                r.require(
                    "kernel_trivial_implies_surjective",
                    kernel.consistent(),
                    None,
                );
                r.check("image_separates", sep.image_separates.holds());
                r.check("injective", sep.injective);
                r.require("separating_image_implies_injective", sep.consistent(), None);
            }
            Err(e) => return Err(r.fail(e)),
        }
    }
    Ok(r)
}
