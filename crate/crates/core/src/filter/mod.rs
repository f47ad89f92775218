//! Filters, ideals, prime filters and ultrafilters.
//!
//! A filter avoids 0, contains 1, is upward closed and closed under meets.
//! In a finite lattice every filter is principal (`↑` of its meet), which
//! the enumeration code exploits and also re-checks.

mod enumerate;
mod extension;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Dual, Elem, FiniteLattice, LatticeView};
use crate::verdict::Verdict;

pub use enumerate::{cross_check, enumerate_filters, EnumConfig, FilterClass, Strategy};
pub use extension::{
    extend_to_unique_ultrafilter, p_formula, separate_by_prime, ultrafilter_extensions,
    unique_ultrafilter_extension,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Filter,
    Ideal,
    Prime,
    Ultra,
    Unclassified,
}

impl FilterKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FilterKind::Filter => "filter",
            FilterKind::Ideal => "ideal",
            FilterKind::Prime => "prime",
            FilterKind::Ultra => "ultra",
            FilterKind::Unclassified => "unclassified",
        }
    }
}

/// A set of lattice elements tagged with what it is known to be.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilterSet {
    members: FixedBitSet,
    kind: FilterKind,
}

/// Serialized form: element names in id order plus the kind tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterRecord {
    pub kind: FilterKind,
    pub elements: Vec<String>,
}

impl FilterSet {
    pub fn new(members: FixedBitSet, kind: FilterKind) -> Self {
        Self { members, kind }
    }

    /// `↑a`
    pub fn principal(lattice: &FiniteLattice, a: Elem, kind: FilterKind) -> Self {
        Self::new(lattice.up_set(a).clone(), kind)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn kind(&self) -> FilterKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: FilterKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_subset(&self, other: &FilterSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// The generating element: least member for a filter.
    pub fn least(&self, lattice: &FiniteLattice) -> Option<Elem> {
        lattice.least_of(&self.members)
    }

    /// `↑name` for a principal filter, otherwise the member list.
    pub fn label(&self, lattice: &FiniteLattice) -> String {
        match self.least(lattice) {
            Some(a) if lattice.up_set(a) == &self.members => {
                format!("↑{}", lattice.element_name(a))
            }
            _ => format!("{{{}}}", lattice.set_names(&self.members).join(",")),
        }
    }

    pub fn to_record(&self, lattice: &FiniteLattice) -> FilterRecord {
        FilterRecord {
            kind: self.kind,
            elements: lattice.set_names(&self.members),
        }
    }

    pub fn from_record(lattice: &FiniteLattice, record: &FilterRecord) -> Result<Self> {
        let mut members = lattice.empty_set();
        for name in &record.elements {
            let e = lattice
                .element(name)
                .ok_or_else(|| Error::UnknownElement(name.clone()))?;
            members.insert(e);
        }
        Ok(Self::new(members, record.kind))
    }
}

/// Why a set fails to be a filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterFailure {
    ContainsBottom,
    MissingTop,
    /// `member` is in the set, `above ≥ member` is not.
    NotUpwardClosed {
        member: Elem,
        above: Elem,
    },
    /// `a` and `b` are in the set, their meet is not.
    NotMeetClosed {
        a: Elem,
        b: Elem,
    },
}

/// The defining filter conditions, evaluated in any lattice view.
pub fn is_filter<V: LatticeView>(lattice: &V, set: &FixedBitSet) -> Verdict<FilterFailure> {
    if set.contains(lattice.bottom()) {
        return Verdict::Fails(FilterFailure::ContainsBottom);
    }
    if !set.contains(lattice.top()) {
        return Verdict::Fails(FilterFailure::MissingTop);
    }
    for member in set.ones() {
        if let Some(above) = lattice.up_set(member).ones().find(|&x| !set.contains(x)) {
            return Verdict::Fails(FilterFailure::NotUpwardClosed { member, above });
        }
    }
    for a in set.ones() {
        for b in set.ones().filter(|&b| b > a) {
            if !set.contains(lattice.meet(a, b)) {
                return Verdict::Fails(FilterFailure::NotMeetClosed { a, b });
            }
        }
    }
    Verdict::Holds
}

/// An ideal is a filter of the opposite lattice.
pub fn is_ideal(lattice: &FiniteLattice, set: &FixedBitSet) -> Verdict<FilterFailure> {
    is_filter(&Dual(lattice), set)
}

/// All finite meets of members of `set`, including the empty meet (the top).
pub fn meet_closure(lattice: &FiniteLattice, set: &FixedBitSet) -> FixedBitSet {
    let mut closure = lattice.set_of([lattice.top()]);
    let seeds: Vec<Elem> = set.ones().collect();
    let mut frontier = vec![lattice.top()];
    while let Some(x) = frontier.pop() {
        for &s in &seeds {
            let m = lattice.meet(x, s);
            if !closure.put(m) {
                frontier.push(m);
            }
        }
    }
    closure
}

/// Every finite meet of members is above 0. Evaluated both from the meet
/// closure and from the single meet of the whole (finite) set.
pub fn is_centered(lattice: &FiniteLattice, set: &FixedBitSet) -> bool {
    let by_closure = !meet_closure(lattice, set).contains(lattice.bottom());
    let by_total = lattice.meet_all(set.ones()) != lattice.bottom();
    debug_assert_eq!(by_closure, by_total, "centeredness routes disagree");
    by_closure
}

/// `[M)`: everything above some finite meet of `M`.
pub fn generated_filter(lattice: &FiniteLattice, set: &FixedBitSet) -> Result<FilterSet> {
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    if !is_centered(lattice, set) {
        return Err(Error::NotCentered {
            witness: set.ones().collect(),
        });
    }
    let mut members = lattice.empty_set();
    for m in meet_closure(lattice, set).ones() {
        members.union_with(lattice.up_set(m));
    }
    debug_assert_eq!(&members, lattice.up_set(lattice.meet_all(set.ones())));
    Ok(FilterSet::new(members, FilterKind::Filter))
}

/// `x∨y ∈ F` forces `x ∈ F` or `y ∈ F`. The witness is a pair outside `F`
/// whose join is inside. Cross-checked against "the complement is an
/// ideal".
pub fn is_prime(lattice: &FiniteLattice, set: &FixedBitSet) -> Result<Verdict<[Elem; 2]>> {
    if !is_filter(lattice, set).holds() {
        return Err(Error::NotAFilter);
    }
    let verdict = prime_by_pairs(lattice, set);
    let mut complement = set.clone();
    complement.toggle_range(..);
    debug_assert_eq!(
        verdict.holds(),
        is_ideal(lattice, &complement).holds(),
        "prime-filter routes disagree"
    );
    Ok(verdict)
}

pub(crate) fn prime_by_pairs(lattice: &FiniteLattice, set: &FixedBitSet) -> Verdict<[Elem; 2]> {
    let outside: Vec<Elem> = set.zeroes().collect();
    for (i, &x) in outside.iter().enumerate() {
        for &y in &outside[i..] {
            if set.contains(lattice.join(x, y)) {
                return Verdict::Fails([x, y]);
            }
        }
    }
    Verdict::Holds
}

/// Maximality of a filter: each element outside meets some member in 0.
/// The witness is an outside element compatible with the whole filter.
pub fn is_ultra(lattice: &FiniteLattice, set: &FixedBitSet) -> Result<Verdict<Elem>> {
    if !is_filter(lattice, set).holds() {
        return Err(Error::NotAFilter);
    }
    Ok(ultra_by_disjointness(lattice, set))
}

pub(crate) fn ultra_by_disjointness(lattice: &FiniteLattice, set: &FixedBitSet) -> Verdict<Elem> {
    let bottom = lattice.bottom();
    Verdict::from_witness(
        set.zeroes()
            .find(|&x| !set.ones().any(|b| lattice.meet(x, b) == bottom)),
    )
}

/// The most specific kind the set qualifies for.
pub fn classify(lattice: &FiniteLattice, set: &FixedBitSet) -> FilterKind {
    if is_filter(lattice, set).holds() {
        if ultra_by_disjointness(lattice, set).holds() {
            FilterKind::Ultra
        } else if prime_by_pairs(lattice, set).holds() {
            FilterKind::Prime
        } else {
            FilterKind::Filter
        }
    } else if is_ideal(lattice, set).holds() {
        FilterKind::Ideal
    } else {
        FilterKind::Unclassified
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn fivepoint() -> FiniteLattice {
        corpus::lattice("fivepoint")
    }

    fn el(l: &FiniteLattice, name: &str) -> Elem {
        l.element(name).unwrap()
    }

    #[test]
    fn filter_examples() {
        let c3 = corpus::lattice("chain3");
        let m = el(&c3, "m");
        assert!(is_filter(&c3, c3.up_set(m)).holds());
        assert!(is_filter(&c3, &c3.set_of([c3.top()])).holds());
        let p2 = corpus::lattice("powerset2");
        // {{0}, {1}} is missing {0,1}.
        let s = p2.set_of([el(&p2, "{0}"), el(&p2, "{0,1}")]);
        assert!(is_filter(&p2, &s).holds());
        let s = p2.set_of([el(&p2, "{0}"), el(&p2, "{1}")]);
        assert!(matches!(
            is_filter(&p2, &s),
            Verdict::Fails(FilterFailure::MissingTop)
        ));
        let s = p2.set_of([el(&p2, "{0}"), el(&p2, "{1}"), el(&p2, "{0,1}")]);
        assert_eq!(
            is_filter(&p2, &s),
            Verdict::Fails(FilterFailure::NotMeetClosed { a: 1, b: 2 })
        );
        let s = p2.set_of([el(&p2, "{0}")]);
        assert!(matches!(
            is_filter(&p2, &s),
            Verdict::Fails(FilterFailure::MissingTop)
        ));
    }

    #[test]
    fn ideals_are_filters_of_the_opposite() {
        let c3 = corpus::lattice("chain3");
        let down_m = c3.down_set(el(&c3, "m")).clone();
        assert!(is_ideal(&c3, &down_m).holds());
        assert!(is_filter(&c3.opposite(), &down_m).holds());
        assert!(!is_filter(&c3, &down_m).holds());
    }

    #[test]
    fn centered_examples() {
        let l = fivepoint();
        let (a, b) = (el(&l, "a"), el(&l, "b"));
        assert!(is_centered(&l, &l.set_of([a])));
        assert!(!is_centered(&l, &l.set_of([a, b])));
        assert!(is_centered(&l, &l.empty_set()));
    }

    #[test]
    fn generated_filter_examples() {
        let l = fivepoint();
        let (a, b, c) = (el(&l, "a"), el(&l, "b"), el(&l, "c"));
        let f = generated_filter(&l, &l.set_of([a])).unwrap();
        assert_eq!(f.members(), l.up_set(a));
        let f = generated_filter(&l, &l.set_of([c, l.top()])).unwrap();
        assert_eq!(f.members(), &l.set_of([c, l.top()]));
        assert!(matches!(
            generated_filter(&l, &l.set_of([a, b])),
            Err(Error::NotCentered { .. })
        ));
        let one = FiniteLattice::chain(1);
        assert_eq!(
            generated_filter(&one, &one.empty_set()).unwrap_err(),
            Error::Degenerate
        );
    }

    #[test]
    fn prime_examples() {
        let c3 = corpus::lattice("chain3");
        assert!(is_prime(&c3, c3.up_set(el(&c3, "m"))).unwrap().holds());
        let l = fivepoint();
        let (a, b, c) = (el(&l, "a"), el(&l, "b"), el(&l, "c"));
        assert_eq!(is_prime(&l, l.up_set(c)).unwrap(), Verdict::Fails([a, b]));
        assert!(is_prime(&l, l.up_set(l.top())).unwrap().holds());
        assert_eq!(is_prime(&l, &l.set_of([a])).unwrap_err(), Error::NotAFilter);
    }

    #[test]
    fn classify_kinds() {
        let l = fivepoint();
        let (a, c) = (el(&l, "a"), el(&l, "c"));
        assert_eq!(classify(&l, l.up_set(a)), FilterKind::Ultra);
        assert_eq!(classify(&l, l.up_set(l.top())), FilterKind::Prime);
        assert_eq!(classify(&l, l.up_set(c)), FilterKind::Filter);
        assert_eq!(classify(&l, l.down_set(c)), FilterKind::Ideal);
        assert_eq!(classify(&l, &l.set_of([a])), FilterKind::Unclassified);
    }

    #[test]
    fn record_round_trip() {
        let l = fivepoint();
        let f = FilterSet::principal(&l, el(&l, "a"), FilterKind::Ultra);
        let rec = f.to_record(&l);
        assert_eq!(rec.elements, vec!["a", "c", "1"]);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"kind":"ultra","elements":["a","c","1"]}"#);
        assert_eq!(FilterSet::from_record(&l, &rec).unwrap(), f);
        assert_eq!(f.label(&l), "↑a");
    }
}
