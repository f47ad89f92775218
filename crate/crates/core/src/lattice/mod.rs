//! Finite bounded lattices.
//!
//! A [`FiniteLattice`] stores its order as two families of bitsets: the
//! principal up-set and the principal down-set of every element. Meets and
//! joins are tabulated when the lattice is small enough and otherwise
//! recovered from the order: `↓a ∩ ↓b = ↓(a∧b)`, so the meet is the unique
//! member of the intersection whose own down-set has the same size.

mod format;
mod ops;
mod predicates;
mod view;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use format::LatticeSpec;
pub use ops::{mask_name, Poset, MAX_POSET_POINTS};
pub use predicates::{BooleanFailure, LatticeReport, NormalityCheck, NormalityMode};
pub use view::{Dual, LatticeView};

/// Dense element id, in input order.
pub type Elem = usize;

/// Hard cap on the number of elements. The order is stored as two `n × n`
/// bit matrices, so the cap bounds memory at 64 MiB.
pub const MAX_ELEMENTS: usize = 1 << 14;

/// Meet and join tables are precomputed up to this size.
pub const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug)]
struct Tables {
    meet: Vec<u16>,
    join: Vec<u16>,
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    name: Option<String>,
    names: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    up_count: Vec<u32>,
    down_count: Vec<u32>,
    tables: Option<Tables>,
    bottom: Elem,
    top: Elem,
}

/// Structural equality: same element names, same order. The lattice name is
/// a label and does not take part.
impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.bottom == other.bottom
            && self.top == other.top
            && self.up == other.up
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds a lattice from element names and a generating relation
    /// (covers or the full order; either way the reflexive-transitive
    /// closure is taken). Every pair is checked for a meet and a join.
    pub fn from_relation(
        name: Option<String>,
        names: Vec<String>,
        pairs: &[(Elem, Elem)],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NoBounds("bottom"));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::SizeCap {
                size: n,
                limit: MAX_ELEMENTS,
            });
        }
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in pairs {
            if lo != hi {
                succ[lo].push(hi);
            }
        }
        let order = topological_order(&succ).map_err(|cycle| Error::NotAPoset {
            cycle: cycle.into_iter().map(|e| names[e].clone()).collect(),
        })?;
        let up = close_upward(&succ, &order);
        let mut lattice = Self::assemble(name, names, up)?;
        lattice.validate_and_tabulate()?;
        Ok(lattice)
    }

    /// Builds a lattice from an order already known to be a bounded lattice
    /// (down-set lattices, set algebras, duals). `up[a]` must be the full
    /// principal up-set of `a`.
    pub(crate) fn from_up_sets_trusted(
        name: Option<String>,
        names: Vec<String>,
        up: Vec<FixedBitSet>,
    ) -> Self {
        let mut lattice = Self::assemble(name, names, up).expect("trusted order must be bounded");
        if lattice.len() <= TABLE_LIMIT {
            lattice
                .validate_and_tabulate()
                .expect("trusted order must be a lattice");
        }
        lattice
    }

    /// Same as [`Self::from_up_sets_trusted`], starting from upper covers
    /// listed in a linear extension of the order (`succ[a]` all have ids
    /// greater than `a`).
    pub(crate) fn from_sorted_covers_trusted(
        name: Option<String>,
        names: Vec<String>,
        succ: &[Vec<Elem>],
    ) -> Self {
        let order: Vec<Elem> = (0..names.len()).collect();
        let up = close_upward(succ, &order);
        Self::from_up_sets_trusted(name, names, up)
    }

    fn assemble(name: Option<String>, names: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = names.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let up_count: Vec<u32> = up.iter().map(|s| s.count_ones(..) as u32).collect();
        let down_count: Vec<u32> = down.iter().map(|s| s.count_ones(..) as u32).collect();
        let bottom = (0..n)
            .find(|&a| up_count[a] as usize == n)
            .ok_or(Error::NoBounds("bottom"))?;
        let top = (0..n)
            .find(|&a| down_count[a] as usize == n)
            .ok_or(Error::NoBounds("top"))?;
        Ok(Self {
            name,
            names,
            up,
            down,
            up_count,
            down_count,
            tables: None,
            bottom,
            top,
        })
    }

    /// Checks every pair for an infimum and a supremum; stores the tables
    /// when `n ≤ TABLE_LIMIT`.
    fn validate_and_tabulate(&mut self) -> Result<()> {
        let n = self.len();
        let store = n <= TABLE_LIMIT;
        let mut meet = Vec::new();
        let mut join = Vec::new();
        if store {
            meet = vec![0u16; n * n];
            join = vec![0u16; n * n];
        }
        for a in 0..n {
            for b in a..n {
                let m = greatest_in_intersection(&self.down, &self.down_count, a, b)
                    .ok_or_else(|| self.not_a_lattice(a, b, "infimum"))?;
                let j = greatest_in_intersection(&self.up, &self.up_count, a, b)
                    .ok_or_else(|| self.not_a_lattice(a, b, "supremum"))?;
                if store {
                    meet[a * n + b] = m as u16;
                    meet[b * n + a] = m as u16;
                    join[a * n + b] = j as u16;
                    join[b * n + a] = j as u16;
                }
            }
        }
        if store {
            self.tables = Some(Tables { meet, join });
        }
        Ok(())
    }

    fn not_a_lattice(&self, a: Elem, b: Elem, missing: &'static str) -> Error {
        Error::NotALattice {
            a: self.names[a].clone(),
            b: self.names[b].clone(),
            missing,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("<anonymous>")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// True for the one-point lattice, where `0 = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.bottom == self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    /// `{x : a ≤ x}`
    pub fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a]
    }

    /// `{x : x ≤ a}`
    pub fn down_set(&self, a: Elem) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn up_count(&self, a: Elem) -> usize {
        self.up_count[a] as usize
    }

    pub fn down_count(&self, a: Elem) -> usize {
        self.down_count[a] as usize
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.meet[a * self.len() + b] as Elem,
            None => greatest_in_intersection(&self.down, &self.down_count, a, b)
                .expect("validated lattice has all meets"),
        }
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.join[a * self.len() + b] as Elem,
            None => greatest_in_intersection(&self.up, &self.up_count, a, b)
                .expect("validated lattice has all joins"),
        }
    }

    /// Meet of a finite set; the empty meet is the top.
    pub fn meet_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite set; the empty join is the bottom.
    pub fn join_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// The least element of `set`, if it has one.
    pub fn least_of(&self, set: &FixedBitSet) -> Option<Elem> {
        let size = set.count_ones(..);
        set.ones()
            .find(|&a| self.up_count[a] as usize >= size && set.is_subset(&self.up[a]))
    }

    /// The greatest element of `set`, if it has one.
    pub fn greatest_of(&self, set: &FixedBitSet) -> Option<Elem> {
        let size = set.count_ones(..);
        set.ones()
            .find(|&a| self.down_count[a] as usize >= size && set.is_subset(&self.down[a]))
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn set_of(&self, elems: impl IntoIterator<Item = Elem>) -> FixedBitSet {
        let mut s = self.empty_set();
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_names(&self, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|e| self.names[e].clone()).collect()
    }

    /// Upper covers of `a`: minimal elements strictly above it.
    pub fn upper_covers(&self, a: Elem) -> Vec<Elem> {
        self.up[a]
            .ones()
            .filter(|&c| c != a && self.down[c].intersection_count(&self.up[a]) == 2)
            .collect()
    }

    /// Lower covers of `a`: maximal elements strictly below it.
    pub fn lower_covers(&self, a: Elem) -> Vec<Elem> {
        self.down[a]
            .ones()
            .filter(|&c| c != a && self.up[c].intersection_count(&self.down[a]) == 2)
            .collect()
    }

    /// The covering relation as `(lower, upper)` pairs, sorted.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        self.elements()
            .flat_map(|a| self.upper_covers(a).into_iter().map(move |c| (a, c)))
            .collect()
    }

    /// Checks commutativity, associativity, idempotence and absorption of
    /// the stored operations over all elements. Returns the first violated
    /// law with its elements.
    pub fn check_lattice_laws(&self) -> Option<(&'static str, Vec<Elem>)> {
        let n = self.len();
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Some(("idempotence", vec![a]));
            }
            for b in 0..n {
                let (m, j) = (self.meet(a, b), self.join(a, b));
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return Some(("commutativity", vec![a, b]));
                }
                if self.join(a, m) != a || self.meet(a, j) != a {
                    return Some(("absorption", vec![a, b]));
                }
                for c in 0..n {
                    if self.meet(m, c) != self.meet(a, self.meet(b, c))
                        || self.join(j, c) != self.join(a, self.join(b, c))
                    {
                        return Some(("associativity", vec![a, b, c]));
                    }
                }
            }
        }
        None
    }

    /// Hasse diagram in Graphviz dot syntax.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", self.label());
        for (a, name) in self.names.iter().enumerate() {
            out.push_str(&format!("  n{a} [label=\"{name}\"];\n"));
        }
        for (lo, hi) in self.covers() {
            out.push_str(&format!("  n{lo} -> n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// The unique element of `rows[a] ∩ rows[b]` whose own row equals the
/// intersection, if any. With `rows = down` this is the meet; with
/// `rows = up`, the join.
fn greatest_in_intersection(
    rows: &[FixedBitSet],
    counts: &[u32],
    a: Elem,
    b: Elem,
) -> Option<Elem> {
    // Any m in the intersection has rows[m] inside it by transitivity, so
    // equal size means equality.
    let size = rows[a].intersection_count(&rows[b]) as u32;
    rows[a].intersection(&rows[b]).find(|&m| counts[m] == size)
}

/// Kahn's algorithm; on failure returns the elements of one cycle.
fn topological_order(succ: &[Vec<Elem>]) -> std::result::Result<Vec<Elem>, Vec<Elem>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for outs in succ {
        for &b in outs {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<Elem> = (0..n).rev().filter(|&a| indeg[a] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(a) = stack.pop() {
        order.push(a);
        for &b in &succ[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover vertex has a leftover predecessor; walk backwards
    // until a vertex repeats.
    let mut pred = vec![None; n];
    for (a, outs) in succ.iter().enumerate() {
        if indeg[a] == 0 {
            continue;
        }
        for &b in outs {
            if indeg[b] > 0 {
                pred[b] = Some(a);
            }
        }
    }
    let start = (0..n).find(|&a| indeg[a] > 0).unwrap();
    let mut seen = vec![false; n];
    let mut cur = start;
    while !seen[cur] {
        seen[cur] = true;
        cur = pred[cur].expect("leftover vertex has a leftover predecessor");
    }
    let mut cycle = vec![cur];
    let mut walk = pred[cur].unwrap();
    while walk != cur {
        cycle.push(walk);
        walk = pred[walk].unwrap();
    }
    cycle.reverse();
    Err(cycle)
}

/// Reflexive-transitive closure: processes `order` backwards so each
/// successor's row is complete before it is merged.
fn close_upward(succ: &[Vec<Elem>], order: &[Elem]) -> Vec<FixedBitSet> {
    let n = succ.len();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for &a in order.iter().rev() {
        let mut row = FixedBitSet::with_capacity(n);
        row.insert(a);
        for &b in &succ[a] {
            row.union_with(&up[b]);
        }
        up[a] = row;
    }
    up
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn one_element_lattice_is_accepted() {
        let l = FiniteLattice::from_relation(None, names(&["e"]), &[]).unwrap();
        assert_eq!(l.bottom(), l.top());
        assert!(l.is_degenerate());
        assert_eq!(l.meet(0, 0), 0);
    }

    #[test]
    fn n5_from_covers() {
        // 0 < a < c < 1, 0 < b < 1
        let l = FiniteLattice::from_relation(
            None,
            names(&["0", "a", "b", "c", "1"]),
            &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)],
        )
        .unwrap();
        assert_eq!(l.len(), 5);
        assert!(l.leq(1, 4) && l.leq(0, 3) && !l.leq(2, 3));
        assert_eq!(l.meet(2, 3), 0);
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.join(1, 3), 3);
        assert!(l.check_lattice_laws().is_none());
    }

    #[test]
    fn two_cycle_is_not_a_poset() {
        let err =
            FiniteLattice::from_relation(None, names(&["a", "b"]), &[(0, 1), (1, 0)]).unwrap_err();
        match err {
            Error::NotAPoset { cycle } => {
                assert_eq!(cycle.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_bounds() {
        let err = FiniteLattice::from_relation(None, names(&["a", "b"]), &[]).unwrap_err();
        assert_eq!(err, Error::NoBounds("bottom"));
        let err = FiniteLattice::from_relation(None, names(&["0", "a", "b"]), &[(0, 1), (0, 2)])
            .unwrap_err();
        assert_eq!(err, Error::NoBounds("top"));
    }

    #[test]
    fn missing_join_is_reported_with_pair() {
        // 0 < a,b < c,d < 1 : a and b have two minimal upper bounds.
        let err = FiniteLattice::from_relation(
            None,
            names(&["0", "a", "b", "c", "d", "1"]),
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotALattice { .. }), "{err:?}");
    }

    #[test]
    fn covers_round_trip() {
        let l = FiniteLattice::from_relation(
            None,
            names(&["0", "a", "b", "c", "1"]),
            &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)],
        )
        .unwrap();
        assert_eq!(l.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]);
        let again = FiniteLattice::from_relation(None, l.names().to_vec(), &l.covers()).unwrap();
        assert_eq!(again, l);
    }
}
