use serde::Serialize;

/// Outcome of a decidable predicate. A failure always carries the elements
/// that violate it, so the failure can be re-checked independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }

    /// `Holds` when `witness` is `None`.
    pub fn from_witness(witness: Option<W>) -> Self {
        match witness {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        }
    }
}
