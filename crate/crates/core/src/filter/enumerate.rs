//! Three routes to the filters of a finite lattice.
//!
//! * `Brute` tries every principal filter `↑a` (a filter is determined by
//!   its least element here) and tests the class predicate by definition.
//! * `Fast` reads the answer off the order: for a distributive lattice the
//!   prime filters are `↑j` for join-prime `j`, the ultrafilters `↑a` for
//!   atoms `a`.
//! * `Exhaustive` scans all subsets containing 1 and avoiding 0, and takes
//!   maximality literally. It is a second-level oracle for tiny lattices.

use serde::{Deserialize, Serialize};

use super::{is_filter, prime_by_pairs, ultra_by_disjointness, FilterKind, FilterSet};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterClass {
    All,
    Prime,
    Ultra,
}

impl FilterClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FilterClass::All => "all",
            FilterClass::Prime => "prime",
            FilterClass::Ultra => "ultra",
        }
    }

    fn kind(self) -> FilterKind {
        match self {
            FilterClass::All => FilterKind::Filter,
            FilterClass::Prime => FilterKind::Prime,
            FilterClass::Ultra => FilterKind::Ultra,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Brute,
    Fast,
    Exhaustive,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Brute => "brute",
            Strategy::Fast => "fast",
            Strategy::Exhaustive => "exhaustive",
        }
    }
}

/// Size limits for the slow strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub brute_cap: usize,
    pub exhaustive_cap: usize,
}

impl EnumConfig {
    pub const DEFAULT_BRUTE_CAP: usize = 4096;
    pub const DEFAULT_EXHAUSTIVE_CAP: usize = 18;
    /// Environment variable overriding the exhaustive-scan cap.
    pub const ENV_MAX_BRUTE: &'static str = "WALLMAN_MAX_BRUTE";

    /// Defaults, with the exhaustive cap taken from `WALLMAN_MAX_BRUTE`
    /// when it is set to a number. The cap never exceeds 30 because the
    /// scan indexes subsets by `u32`.
    pub fn from_env() -> Self {
        let exhaustive_cap = std::env::var(Self::ENV_MAX_BRUTE)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.min(30))
            .unwrap_or(Self::DEFAULT_EXHAUSTIVE_CAP);
        Self {
            exhaustive_cap,
            ..Self::default()
        }
    }
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self {
            brute_cap: Self::DEFAULT_BRUTE_CAP,
            exhaustive_cap: Self::DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

/// Filters of the requested class, ordered by least element id.
pub fn enumerate_filters(
    lattice: &FiniteLattice,
    class: FilterClass,
    strategy: Strategy,
    config: &EnumConfig,
) -> Result<Vec<FilterSet>> {
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let mut found = match strategy {
        Strategy::Brute => brute(lattice, class, config)?,
        Strategy::Fast => fast(lattice, class)?,
        Strategy::Exhaustive => exhaustive(lattice, class, config)?,
    };
    found.sort_by_key(|f| f.least(lattice));
    Ok(found)
}

/// Runs the requested strategy and the brute-force oracle and fails with
/// [`Error::OracleMismatch`] unless they return the same filters.
pub fn cross_check(
    lattice: &FiniteLattice,
    class: FilterClass,
    strategy: Strategy,
    config: &EnumConfig,
) -> Result<Vec<FilterSet>> {
    let candidate = enumerate_filters(lattice, class, strategy, config)?;
    let oracle = enumerate_filters(lattice, class, Strategy::Brute, config)?;
    if candidate != oracle {
        return Err(Error::OracleMismatch {
            class: class.as_str(),
            strategy: strategy.as_str(),
        });
    }
    Ok(candidate)
}

fn brute(
    lattice: &FiniteLattice,
    class: FilterClass,
    config: &EnumConfig,
) -> Result<Vec<FilterSet>> {
    if lattice.len() > config.brute_cap {
        return Err(Error::TooLarge {
            strategy: "brute",
            size: lattice.len(),
            cap: config.brute_cap,
        });
    }
    let mut out = Vec::new();
    for a in lattice.elements().filter(|&a| a != lattice.bottom()) {
        let candidate = lattice.up_set(a);
        let keep = is_filter(lattice, candidate).holds()
            && match class {
                FilterClass::All => true,
                FilterClass::Prime => prime_by_pairs(lattice, candidate).holds(),
                FilterClass::Ultra => ultra_by_disjointness(lattice, candidate).holds(),
            };
        if keep {
            out.push(FilterSet::new(candidate.clone(), class.kind()));
        }
    }
    Ok(out)
}

fn fast(lattice: &FiniteLattice, class: FilterClass) -> Result<Vec<FilterSet>> {
    if let crate::Verdict::Fails(witness) = lattice.is_distributive() {
        return Err(Error::NotDistributive { witness });
    }
    let generators: Vec<Elem> = match class {
        FilterClass::All => lattice
            .elements()
            .filter(|&a| a != lattice.bottom())
            .collect(),
        FilterClass::Prime => lattice
            .join_irreducibles()
            .into_iter()
            .filter(|&j| lattice.is_join_prime(j))
            .collect(),
        FilterClass::Ultra => lattice.atoms(),
    };
    Ok(generators
        .into_iter()
        .map(|a| FilterSet::principal(lattice, a, class.kind()))
        .collect())
}

fn exhaustive(
    lattice: &FiniteLattice,
    class: FilterClass,
    config: &EnumConfig,
) -> Result<Vec<FilterSet>> {
    let n = lattice.len();
    if n > config.exhaustive_cap {
        return Err(Error::TooLarge {
            strategy: "exhaustive",
            size: n,
            cap: config.exhaustive_cap,
        });
    }
    let mask_of = |set: &fixedbitset::FixedBitSet| set.ones().fold(0u32, |m, x| m | 1 << x);
    let up: Vec<u32> = lattice
        .elements()
        .map(|a| mask_of(lattice.up_set(a)))
        .collect();
    let (bottom, top) = (lattice.bottom(), lattice.top());
    let free: Vec<Elem> = lattice
        .elements()
        .filter(|&a| a != bottom && a != top)
        .collect();

    let mut filters: Vec<u32> = Vec::new();
    for bits in 0u32..(1u32 << free.len()) {
        let mut set = 1u32 << top;
        for (i, &a) in free.iter().enumerate() {
            if bits >> i & 1 == 1 {
                set |= 1 << a;
            }
        }
        let members = || (0..n).filter(move |&a| set >> a & 1 == 1);
        if members().any(|a| up[a] & !set != 0) {
            continue;
        }
        if members().any(|a| members().any(|b| set >> lattice.meet(a, b) & 1 == 0)) {
            continue;
        }
        filters.push(set);
    }

    let chosen: Vec<u32> = match class {
        FilterClass::All => filters,
        FilterClass::Prime => filters
            .into_iter()
            .filter(|&set| {
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        set >> lattice.join(x, y) & 1 == 0 || set >> x & 1 == 1 || set >> y & 1 == 1
                    })
                })
            })
            .collect(),
        FilterClass::Ultra => filters
            .iter()
            .copied()
            .filter(|&f| !filters.iter().any(|&g| g != f && g & f == f))
            .collect(),
    };
    Ok(chosen
        .into_iter()
        .map(|set| {
            FilterSet::new(
                lattice.set_of((0..n).filter(|&a| set >> a & 1 == 1)),
                class.kind(),
            )
        })
        .collect())
}
