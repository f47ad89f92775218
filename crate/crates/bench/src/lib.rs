//! Seeded inputs shared by the criterion benches.

use wallman_core::certificates::{CoverFamily, PhiAssignment};
use wallman_core::generate::Gen;
use wallman_core::FiniteLattice;

/// Down-set lattice of a sparse random poset on `points` points.
pub fn downset_lattice(points: usize, seed: u64) -> FiniteLattice {
    Gen::new(seed).poset(points, 1, 6).down_set_lattice()
}

pub fn phi_family(points: usize, members: usize, seed: u64) -> (CoverFamily, PhiAssignment) {
    Gen::new(seed).phi_family(points, members, 3)
}
