use serde_json::{json, Value};
use wallman_core::duality::alexandrov;
use wallman_core::filter::{cross_check, enumerate_filters, EnumConfig};
use wallman_core::lattice::BooleanFailure;
use wallman_core::wallman::{vbeer_suite, SpaceKind, WallmanSpace};
use wallman_core::{Elem, FilterClass, FiniteLattice, Strategy, Verdict};

use crate::input::{self, CliError};
use crate::report::RunReport;

pub fn names(l: &FiniteLattice, elems: &[Elem]) -> Value {
    json!(elems.iter().map(|&a| l.element_name(a)).collect::<Vec<_>>())
}

fn named<const N: usize>(l: &FiniteLattice, v: &Verdict<[Elem; N]>) -> (bool, Option<Value>) {
    (v.holds(), v.witness().map(|w| names(l, w)))
}

pub const PREDICATES: [&str; 4] = ["distributive", "normal", "separative", "boolean"];

pub fn check(
    path: &str,
    require: &[String],
    dot: bool,
) -> Result<(RunReport, Option<String>), CliError> {
    let l = input::lattice(path)?;
    if dot {
        return Ok((
            RunReport::new("check", [path.to_string()]),
            Some(l.to_dot()),
        ));
    }
    if let Some(bad) = require.iter().find(|p| !PREDICATES.contains(&p.as_str())) {
        return Err(CliError::Input(format!("unknown predicate `{bad}`")));
    }
    let mut r = RunReport::new("check", [path.to_string()]);
    r.check("size", l.len());
    r.check("atoms", names(&l, &l.atoms()));
    r.check("join_irreducibles", l.join_irreducibles().len());
    let rep = r.time("predicates", || l.report());
    let boolean_witness = rep.boolean.witness().map(|w| match w {
        BooleanFailure::NotDistributive(t) => json!({ "not_distributive": names(&l, t) }),
        BooleanFailure::NoComplement(a) => json!({ "no_complement": l.element_name(*a) }),
    });
    let results = [
        ("distributive", named(&l, &rep.distributive)),
        ("normal", named(&l, &rep.normal.separation)),
        ("separative", named(&l, &rep.separative)),
        ("boolean", (rep.boolean.holds(), boolean_witness)),
    ];
    for (name, (holds, witness)) in results {
        if require.iter().any(|p| p == name) {
            r.require(name, holds, witness);
        } else {
            let value = match witness {
                Some(w) => json!({ "holds": holds, "witness": w }),
                None => json!({ "holds": holds }),
            };
            r.check(name, value);
        }
    }
    Ok((r, None))
}

pub fn filters(
    path: &str,
    class: FilterClass,
    strategy: Strategy,
    oracle: bool,
) -> Result<RunReport, CliError> {
    let l = input::lattice(path)?;
    let mut r = RunReport::new("filters", [path.to_string()]);
    r.strategy = Some(strategy.as_str().to_string());
    r.check("class", class.as_str());
    let config = EnumConfig::from_env();
    let found = r.time("enumerate", || {
        if oracle {
            cross_check(&l, class, strategy, &config)
        } else {
            enumerate_filters(&l, class, strategy, &config)
        }
    });
    let found = match found {
        Ok(f) => f,
        Err(e) => return Err(r.fail(e)),
    };
    r.check("count", found.len());
    r.check(
        "filters",
        found.iter().map(|f| f.label(&l)).collect::<Vec<_>>(),
    );
    if oracle {
        r.require("oracle", true, None);
    }
    Ok(r)
}

pub fn space(path: &str, kind: SpaceKind, axioms: bool) -> Result<RunReport, CliError> {
    let l = input::lattice(path)?;
    let mut r = RunReport::new("space", [path.to_string()]);
    let s = match r.time("build", || WallmanSpace::build(&l, kind)) {
        Ok(s) => s,
        Err(e) => return Err(r.fail(e)),
    };
    let dump = s.dump();
    r.check("kind", kind.as_str());
    r.check("points", &dump.labels);
    r.check("closed_sets", s.closed_sets().len());
    r.check("closed_base", &dump.closed_base);
    if axioms {
        let sep = s.separation_axioms();
        let labels = s.labels();
        let pair = |v: &Verdict<[usize; 2]>| {
            let w = v.witness().map(|[x, y]| json!([labels[*x], labels[*y]]));
            match w {
                Some(w) => json!({ "holds": false, "witness": w }),
                None => json!({ "holds": true }),
            }
        };
        r.check("t0", pair(&sep.t0));
        r.check("t1", pair(&sep.t1));
        r.check("hausdorff", pair(&sep.hausdorff));
    }
    Ok(r)
}

pub fn suite(path: &str) -> Result<RunReport, CliError> {
    let l = input::lattice(path)?;
    let mut r = RunReport::new("suite", [path.to_string()]);
    let report = match r.time("suite", || vbeer_suite(&l)) {
        Ok(s) => s,
        Err(e) => return Err(r.fail(e)),
    };
    r.passed = report.asserted_hold();
    r.check("distributive", report.distributive);
    r.check("normal", report.normal);
    r.check("separative", report.separative);
    r.check("boolean", report.boolean);
    r.check("prime_points", &report.prime_points);
    r.check("ultra_points", &report.ultra_points);
    r.check("clauses", &report.clauses);
    Ok(r)
}

pub fn stone(path: &str) -> Result<RunReport, CliError> {
    let l = input::lattice(path)?;
    let mut r = RunReport::new("stone", [path.to_string()]);
    let a = match r.time("construct", || alexandrov(&l)) {
        Ok(a) => a,
        Err(e) => return Err(r.fail(e)),
    };
    let rep = &a.report;
    r.check("points", &a.points);
    r.check("algebra_size", rep.algebra_size);
    r.check(
        "j",
        l.elements()
            .map(|x| {
                (
                    l.element_name(x).to_string(),
                    a.algebra.element_name(a.j[x]).to_string(),
                )
            })
            .collect::<std::collections::BTreeMap<_, _>>(),
    );
    r.check("kernel", names(&l, &rep.kernel));
    r.check("lattice_separative", rep.lattice_separative);
    r.check("j_separative", rep.j_separative);
    r.check("ult_j", &rep.ult_j);
    r.require("algebra_boolean", rep.boolean.holds(), None);
    r.require("j_is_hom", rep.j_is_hom, None);
    r.require("ult_j_surjective", rep.ult_j_surjective, None);
    Ok(r)
}
