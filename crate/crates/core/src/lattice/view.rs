use fixedbitset::FixedBitSet;

use super::{Elem, FiniteLattice};

/// Read access to a bounded lattice. Implemented by [`FiniteLattice`] and
/// by [`Dual`], the opposite lattice viewed in place, so that ideal checks
/// can reuse the filter code without materialising the opposite.
pub trait LatticeView {
    fn size(&self) -> usize;
    fn bottom(&self) -> Elem;
    fn top(&self) -> Elem;
    fn leq(&self, a: Elem, b: Elem) -> bool;
    fn meet(&self, a: Elem, b: Elem) -> Elem;
    fn join(&self, a: Elem, b: Elem) -> Elem;
    fn up_set(&self, a: Elem) -> &FixedBitSet;
}

impl LatticeView for FiniteLattice {
    fn size(&self) -> usize {
        self.len()
    }
    fn bottom(&self) -> Elem {
        FiniteLattice::bottom(self)
    }
    fn top(&self) -> Elem {
        FiniteLattice::top(self)
    }
    fn leq(&self, a: Elem, b: Elem) -> bool {
        FiniteLattice::leq(self, a, b)
    }
    fn meet(&self, a: Elem, b: Elem) -> Elem {
        FiniteLattice::meet(self, a, b)
    }
    fn join(&self, a: Elem, b: Elem) -> Elem {
        FiniteLattice::join(self, a, b)
    }
    fn up_set(&self, a: Elem) -> &FixedBitSet {
        FiniteLattice::up_set(self, a)
    }
}

/// The opposite lattice: order reversed, meet and join exchanged.
#[derive(Clone, Copy, Debug)]
pub struct Dual<'a>(pub &'a FiniteLattice);

impl LatticeView for Dual<'_> {
    fn size(&self) -> usize {
        self.0.len()
    }
    fn bottom(&self) -> Elem {
        self.0.top()
    }
    fn top(&self) -> Elem {
        self.0.bottom()
    }
    fn leq(&self, a: Elem, b: Elem) -> bool {
        self.0.leq(b, a)
    }
    fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.0.join(a, b)
    }
    fn join(&self, a: Elem, b: Elem) -> Elem {
        self.0.meet(a, b)
    }
    fn up_set(&self, a: Elem) -> &FixedBitSet {
        self.0.down_set(a)
    }
}
