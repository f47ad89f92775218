use thiserror::Error;

use crate::lattice::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Format(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("not a poset: order relation has a cycle through {cycle:?}")]
    NotAPoset { cycle: Vec<String> },

    #[error("not a lattice: `{a}` and `{b}` have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: &'static str,
    },

    #[error("ordered set has no {0} element")]
    NoBounds(&'static str),

    #[error("lattice has {size} elements; the limit is {limit}")]
    SizeCap { size: usize, limit: usize },

    #[error("the one-element lattice has 0 = 1 and carries no proper filters")]
    Degenerate,

    #[error("lattice is not distributive: a∧(b∨c) ≠ (a∧b)∨(a∧c) at {witness:?}")]
    NotDistributive { witness: [Elem; 3] },

    #[error("lattice is not normal{}", pair_suffix(witness))]
    NotNormal { witness: Option<[Elem; 2]> },

    #[error("set is not centered: the meet of {witness:?} is 0")]
    NotCentered { witness: Vec<Elem> },

    #[error("set is not a filter")]
    NotAFilter,

    #[error("filter is not prime: {0}∨{1} lies in it but neither element does")]
    NotPrime(Elem, Elem),

    #[error("set is not an ultrafilter")]
    NotUltra,

    #[error("prime filter has {} ultrafilter extensions, expected exactly one", extensions.len())]
    NonUniqueExtension { extensions: Vec<Elem> },

    #[error("p_F formula gives a filter generated by {formula:?}, census gives {census}")]
    ExtensionMismatch { formula: Option<Elem>, census: Elem },

    #[error("element {0} already belongs to the filter")]
    ElementInFilter(Elem),

    #[error("{strategy} enumeration refuses a lattice of {size} elements (cap {cap})")]
    TooLarge {
        strategy: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("{strategy} enumeration of {class} filters disagrees with the brute-force oracle")]
    OracleMismatch {
        class: &'static str,
        strategy: &'static str,
    },

    #[error("set does not generate the lattice; it generates only {generated} of {size} elements")]
    NotGenerating { generated: usize, size: usize },

    #[error("map is not a lattice homomorphism")]
    NotAHomomorphism,

    #[error(
        "homomorphisms are not composable: target of the first is not the source of the second"
    )]
    NotComposable,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("member `{0}` has no stages")]
    MissingStages(String),

    #[error("member `{0}` has stages that are not increasing or do not exhaust it")]
    BadStages(String),

    #[error("φ assigns the empty set to member `{0}`")]
    EmptyPhiValue(String),

    #[error("φ has no value for member `{0}`")]
    MissingPhi(String),

    #[error("node is not centered: its members have empty intersection")]
    InvalidNode,

    #[error("family has {0} members; chain search supports at most 64")]
    TooManyMembers(usize),
}

fn pair_suffix(witness: &Option<[Elem; 2]>) -> String {
    match witness {
        Some([a, b]) => format!(": disjoint pair [{a}, {b}] cannot be separated"),
        None => String::new(),
    }
}
