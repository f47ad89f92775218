//! The shipped fixture lattices, compiled into the binary.

use crate::certificates::CoverFamily;
use crate::duality::HomSpec;
use crate::lattice::FiniteLattice;

const LATTICES: &[(&str, &str)] = &[
    (
        "chain2",
        include_str!("../../../corpus/lattices/chain2.json"),
    ),
    (
        "chain3",
        include_str!("../../../corpus/lattices/chain3.json"),
    ),
    ("m3", include_str!("../../../corpus/lattices/m3.json")),
    ("n5", include_str!("../../../corpus/lattices/n5.json")),
    (
        "powerset1",
        include_str!("../../../corpus/lattices/powerset1.json"),
    ),
    (
        "powerset2",
        include_str!("../../../corpus/lattices/powerset2.json"),
    ),
    (
        "powerset3",
        include_str!("../../../corpus/lattices/powerset3.json"),
    ),
    (
        "powerset4",
        include_str!("../../../corpus/lattices/powerset4.json"),
    ),
    (
        "fivepoint",
        include_str!("../../../corpus/lattices/fivepoint.json"),
    ),
    (
        "divisor12",
        include_str!("../../../corpus/lattices/divisor12.json"),
    ),
    (
        "one_plus_b2",
        include_str!("../../../corpus/lattices/one_plus_b2.json"),
    ),
];

const HOMS: &[(&str, &str)] = &[
    (
        "chain3_to_chain2",
        include_str!("../../../corpus/homs/chain3_to_chain2.json"),
    ),
    (
        "b2_into_b3",
        include_str!("../../../corpus/homs/b2_into_b3.json"),
    ),
    ("b3_swap", include_str!("../../../corpus/homs/b3_swap.json")),
    (
        "b2_collapse",
        include_str!("../../../corpus/homs/b2_collapse.json"),
    ),
    (
        "powerset2_to_chain3_invalid",
        include_str!("../../../corpus/homs/powerset2_to_chain3_invalid.json"),
    ),
    (
        "fivepoint_to_b2",
        include_str!("../../../corpus/homs/fivepoint_to_b2.json"),
    ),
];

const FAMILIES: &[(&str, &str)] = &[
    (
        "x0_filter",
        include_str!("../../../corpus/families/x0_filter.json"),
    ),
    (
        "staged",
        include_str!("../../../corpus/families/staged.json"),
    ),
    (
        "replay",
        include_str!("../../../corpus/families/replay.json"),
    ),
    (
        "disjoint_pair",
        include_str!("../../../corpus/families/disjoint_pair.json"),
    ),
    (
        "single",
        include_str!("../../../corpus/families/single.json"),
    ),
];

/// Names of the canonical lattices, in a fixed order.
pub fn names() -> impl Iterator<Item = &'static str> {
    LATTICES.iter().map(|(name, _)| *name)
}

/// The canonical lattice called `name`, if there is one.
pub fn by_name(name: &str) -> Option<FiniteLattice> {
    LATTICES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| FiniteLattice::from_json(text).expect("corpus lattices parse"))
}

/// Like [`by_name`] but panics on an unknown name.
pub fn lattice(name: &str) -> FiniteLattice {
    by_name(name).unwrap_or_else(|| panic!("no corpus lattice named {name}"))
}

/// Every canonical lattice.
pub fn canonical() -> Vec<FiniteLattice> {
    names().map(lattice).collect()
}

pub fn hom_names() -> impl Iterator<Item = &'static str> {
    HOMS.iter().map(|(name, _)| *name)
}

/// A shipped homomorphism fixture; resolve it with [`HomSpec::build`].
pub fn hom(name: &str) -> HomSpec {
    let text = HOMS
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no corpus hom named {name}"))
        .1;
    HomSpec::from_json(text).expect("corpus homs parse")
}

pub fn family_names() -> impl Iterator<Item = &'static str> {
    FAMILIES.iter().map(|(name, _)| *name)
}

pub fn family(name: &str) -> CoverFamily {
    let text = FAMILIES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no corpus family named {name}"))
        .1;
    CoverFamily::from_json(text).expect("corpus families parse")
}
