//! Extending filters: the unique ultrafilter above a prime filter in a
//! normal lattice, and prime filters avoiding a given element.

use fixedbitset::FixedBitSet;

use super::{
    enumerate_filters, is_filter, prime_by_pairs, EnumConfig, FilterClass, FilterKind, FilterSet,
    Strategy,
};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::verdict::Verdict;

/// Every ultrafilter containing `filter`, found by scanning the brute-force
/// ultrafilter list. Returned as their least elements (atoms), by id.
pub fn ultrafilter_extensions(lattice: &FiniteLattice, filter: &FixedBitSet) -> Result<Vec<Elem>> {
    let config = EnumConfig::from_env();
    let ultra = enumerate_filters(lattice, FilterClass::Ultra, Strategy::Brute, &config)?;
    Ok(ultra
        .iter()
        .filter(|p| filter.is_subset(p.members()))
        .map(|p| p.least(lattice).expect("ultrafilters are principal"))
        .collect())
}

/// `p_F = {a : a∧b > 0 for every b ∈ F}`.
pub fn p_formula(lattice: &FiniteLattice, filter: &FixedBitSet) -> FixedBitSet {
    let bottom = lattice.bottom();
    lattice.set_of(
        lattice
            .elements()
            .filter(|&a| filter.ones().all(|b| lattice.meet(a, b) != bottom)),
    )
}

/// The single ultrafilter above `filter`, decided by census alone. Used where
/// normality is not available but uniqueness may still hold.
pub fn extend_to_unique_ultrafilter(
    lattice: &FiniteLattice,
    filter: &FixedBitSet,
) -> Result<FilterSet> {
    if !is_filter(lattice, filter).holds() {
        return Err(Error::NotAFilter);
    }
    match ultrafilter_extensions(lattice, filter)?.as_slice() {
        &[atom] => Ok(FilterSet::principal(lattice, atom, FilterKind::Ultra)),
        other => Err(Error::NonUniqueExtension {
            extensions: other.to_vec(),
        }),
    }
}

/// The ultrafilter `p_F` extending a prime filter of a normal lattice.
///
/// Checks run in this order: filter, prime, number of ultrafilters above
/// `F`, normality, and finally agreement of `p_F` with the census. A
/// non-normal lattice with two extensions therefore reports the extensions.
pub fn unique_ultrafilter_extension(
    lattice: &FiniteLattice,
    filter: &FixedBitSet,
) -> Result<FilterSet> {
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    if !is_filter(lattice, filter).holds() {
        return Err(Error::NotAFilter);
    }
    if let Verdict::Fails([x, y]) = prime_by_pairs(lattice, filter) {
        return Err(Error::NotPrime(x, y));
    }
    let census = match ultrafilter_extensions(lattice, filter)?.as_slice() {
        &[atom] => atom,
        other => {
            return Err(Error::NonUniqueExtension {
                extensions: other.to_vec(),
            })
        }
    };
    let normality = lattice.normality(crate::NormalityMode::Warn)?;
    if !normality.is_normal() {
        return Err(Error::NotNormal {
            witness: normality.separation.witness().copied(),
        });
    }
    let formula = p_formula(lattice, filter);
    if &formula != lattice.up_set(census) {
        return Err(Error::ExtensionMismatch {
            formula: lattice
                .least_of(&formula)
                .filter(|&m| lattice.up_set(m) == &formula),
            census,
        });
    }
    Ok(FilterSet::new(formula, FilterKind::Ultra))
}

/// A prime filter containing `filter` and avoiding `a`: a filter maximal
/// among those above `filter` and disjoint from `↓a`. Such filters are
/// `↑x` for minimal `x ≤ min F` with `x ≰ a`; the smallest id wins.
pub fn separate_by_prime(
    lattice: &FiniteLattice,
    filter: &FixedBitSet,
    a: Elem,
) -> Result<FilterSet> {
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    if let Verdict::Fails(witness) = lattice.is_distributive() {
        return Err(Error::NotDistributive { witness });
    }
    if !is_filter(lattice, filter).holds() {
        return Err(Error::NotAFilter);
    }
    if filter.contains(a) {
        return Err(Error::ElementInFilter(a));
    }
    let least = lattice
        .least_of(filter)
        .expect("finite filters are principal");
    let mut admissible = lattice.down_set(least).clone();
    admissible.difference_with(lattice.down_set(a));
    let x = admissible
        .ones()
        .find(|&x| lattice.down_set(x).intersection_count(&admissible) == 1)
        .expect("min F itself is admissible");
    let prime = lattice.up_set(x).clone();
    if let Verdict::Fails([p, q]) = prime_by_pairs(lattice, &prime) {
        return Err(Error::NotPrime(p, q));
    }
    Ok(FilterSet::new(prime, FilterKind::Prime))
}
