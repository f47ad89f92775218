use std::fs;
use std::path::{Path, PathBuf};

use wallman_core::certificates::{CoverFamily, PhiAssignment};
use wallman_core::corpus;
use wallman_core::duality::HomSpec;
use wallman_core::FiniteLattice;

use crate::report::RunReport;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    Input(String),
    /// A check could not be carried out or failed with an error; exit
    /// code 1, reported in full.
    Check(Box<RunReport>),
}

impl RunReport {
    pub fn fail(mut self, error: impl ToString) -> CliError {
        self.passed = false;
        self.check("error", error.to_string());
        CliError::Check(Box::new(self))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn input_error(what: &str, e: impl ToString) -> CliError {
    CliError::Input(format!("{what}: {}", e.to_string()))
}

/// A lattice from a JSON file, or else a shipped lattice by name, or else
/// `powersetK` / `chainK`.
pub fn lattice(arg: &str) -> Result<FiniteLattice, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        let l = FiniteLattice::from_json(&text).map_err(|e| input_error(arg, e))?;
        return Ok(match l.name() {
            Some(_) => l,
            None => {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
                l.with_name(stem)
            }
        });
    }
    builtin(arg).ok_or_else(|| CliError::Input(format!("{arg}: no such file or shipped lattice")))
}

fn builtin(name: &str) -> Option<FiniteLattice> {
    if let Some(l) = corpus::by_name(name) {
        return Some(l);
    }
    let size = |prefix: &str| name.strip_prefix(prefix)?.parse::<usize>().ok();
    if let Some(k) = size("powerset").filter(|&k| k <= wallman_core::lattice::MAX_POSET_POINTS) {
        return Some(FiniteLattice::powerset(k));
    }
    if let Some(k) = size("chain").filter(|&k| (1..=4096).contains(&k)) {
        return Some(FiniteLattice::chain(k));
    }
    None
}

/// A hom fixture and its two lattices. Lattice names are looked up as
/// `<dir>/<name>.json`, first next to the hom file, then in a sibling
/// `lattices` directory, then among the built-in lattices.
pub fn hom(
    arg: &str,
    dirs: &[PathBuf],
) -> Result<(HomSpec, FiniteLattice, FiniteLattice), CliError> {
    let path = Path::new(arg);
    let spec = HomSpec::from_json(&read(path)?).map_err(|e| input_error(arg, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut search: Vec<PathBuf> = dirs.to_vec();
    search.push(base.to_path_buf());
    search.push(base.join("../lattices"));
    let resolve = |name: &str| -> Result<FiniteLattice, CliError> {
        for d in &search {
            let candidate = d.join(format!("{name}.json"));
            if candidate.is_file() {
                return lattice(candidate.to_str().unwrap_or(name));
            }
        }
        builtin(name).ok_or_else(|| CliError::Input(format!("{arg}: cannot find lattice `{name}`")))
    };
    let source = resolve(&spec.source)?;
    let target = resolve(&spec.target)?;
    Ok((spec, source, target))
}

pub fn family(arg: &str) -> Result<CoverFamily, CliError> {
    let path = Path::new(arg);
    if !path.is_file() && corpus::family_names().any(|n| n == arg) {
        return Ok(corpus::family(arg));
    }
    CoverFamily::from_json(&read(path)?).map_err(|e| input_error(arg, e))
}

pub fn phi(arg: &str, family: &CoverFamily) -> Result<PhiAssignment, CliError> {
    PhiAssignment::from_json(family, &read(Path::new(arg))?).map_err(|e| input_error(arg, e))
}
