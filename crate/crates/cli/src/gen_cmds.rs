use std::fmt::Write as _;
use std::time::Instant;

use serde_json::json;
use wallman_core::filter::{enumerate_filters, EnumConfig};
use wallman_core::generate::{random_downset_hom, Gen};
use wallman_core::lattice::MAX_POSET_POINTS;
use wallman_core::{Error, FilterClass, FiniteLattice, Poset, Strategy};

use crate::input::CliError;
use crate::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    Downset,
    Boolean,
    BooleanHom,
    StagedFamily,
}

/// Largest ground set for generated families.
pub const MAX_FAMILY_POINTS: usize = 32;

fn cap(size: usize, limit: usize) -> Result<(), CliError> {
    if size > limit {
        return Err(CliError::Input(format!(
            "size {size} exceeds the limit {limit}"
        )));
    }
    Ok(())
}

/// A fixture as pretty JSON.
pub fn gen(
    kind: GenKind,
    size: usize,
    target_size: Option<usize>,
    seed: u64,
) -> Result<String, CliError> {
    let mut g = Gen::new(seed);
    let text = match kind {
        GenKind::Downset => {
            cap(size, MAX_POSET_POINTS)?;
            let (_, l) = g
                .downset(size)
                .map_err(|e| CliError::Input(e.to_string()))?;
            l.with_name(format!("downset{size}_s{seed}"))
                .to_spec()
                .to_json()
        }
        GenKind::Boolean => {
            cap(size, MAX_POSET_POINTS)?;
            FiniteLattice::powerset(size).to_spec().to_json()
        }
        GenKind::BooleanHom => {
            let target = target_size.unwrap_or(size);
            cap(size.max(target), MAX_POSET_POINTS)?;
            let (p, q) = (Poset::antichain(size), Poset::antichain(target));
            let (k, l) = (
                FiniteLattice::powerset(size),
                FiniteLattice::powerset(target),
            );
            random_downset_hom(&mut g, (&p, &k), (&q, &l))
                .to_spec()
                .to_json()
        }
        GenKind::StagedFamily => {
            cap(size, MAX_FAMILY_POINTS)?;
            let members = size.div_ceil(2).max(1);
            g.staged_family(size, members, 3).to_json()
        }
    };
    Ok(text + "\n")
}

fn best_ms(repeats: usize, mut f: impl FnMut()) -> f64 {
    (0..repeats.max(1))
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_secs_f64() * 1e3
        })
        .fold(f64::INFINITY, f64::min)
}

/// Brute-force against fast enumeration on seeded down-set lattices of
/// 1..=max_size points. The table is for the pretty view.
pub fn bench(max_size: usize, repeats: usize, seed: u64) -> Result<(RunReport, String), CliError> {
    cap(max_size, MAX_POSET_POINTS)?;
    let mut r = RunReport::new("bench", []);
    r.strategy = Some("brute,fast".into());
    let config = EnumConfig::from_env();
    let mut rows = Vec::new();
    let mut table = String::from("points  elements  class  brute_ms  fast_ms  exhaustive\n");
    let mut agree = true;
    for points in 1..=max_size {
        let mut g = Gen::new(seed.wrapping_add(points as u64));
        let l = g.poset(points, 1, 6).down_set_lattice();
        for class in [FilterClass::Prime, FilterClass::Ultra] {
            let run = |s| enumerate_filters(&l, class, s, &config);
            let brute = run(Strategy::Brute).map_err(|e| CliError::Input(e.to_string()))?;
            let fast = run(Strategy::Fast).map_err(|e| CliError::Input(e.to_string()))?;
            let exhaustive = match run(Strategy::Exhaustive) {
                Ok(found) => {
                    agree &= found == brute;
                    "agrees"
                }
                Err(Error::TooLarge { .. }) => "too_large",
                Err(e) => return Err(CliError::Input(e.to_string())),
            };
            agree &= brute == fast;
            let brute_ms = best_ms(repeats, || {
                let _ = run(Strategy::Brute);
            });
            let fast_ms = best_ms(repeats, || {
                let _ = run(Strategy::Fast);
            });
            let key = format!("{points}_{}", class.as_str());
            r.timings_ms
                .insert(format!("{key}_brute"), (brute_ms * 1e3).round() / 1e3);
            r.timings_ms
                .insert(format!("{key}_fast"), (fast_ms * 1e3).round() / 1e3);
            let _ = writeln!(
                table,
                "{points:>6}  {:>8}  {:<5}  {brute_ms:>8.3}  {fast_ms:>7.3}  {exhaustive}",
                l.len(),
                class.as_str()
            );
            rows.push(json!({
                "points": points,
                "elements": l.len(),
                "class": class.as_str(),
                "filters": brute.len(),
                "equal": brute == fast,
                "exhaustive": exhaustive,
            }));
        }
    }
    r.check("seed", seed);
    r.check("rows", rows);
    r.require("brute_equals_fast", agree, None);
    Ok((r, table))
}
