//! Finite lattices and the compact spaces they present.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] : finite bounded lattices, structural predicates and
//!   constructions;
//! * [`filter`] : filters, prime filters and ultrafilters, with a brute-force
//!   and a join-irreducible enumeration route;
//! * [`wallman`] : the spaces of prime filters and ultrafilters, their
//!   separation axioms, and the finite shadows of the classical theorems;
//! * [`duality`] : homomorphisms and the continuous maps they induce;
//! * [`certificates`] : covering families, point-finiteness and the
//!   well-founded poset used to certify Gul'ko compacta;
//! * [`generate`] and [`corpus`] : seeded fixtures.

pub mod certificates;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod filter;
pub mod generate;
pub mod lattice;
pub mod verdict;
pub mod wallman;

pub use error::{Error, Result};
pub use filter::{FilterClass, FilterKind, FilterSet, Strategy};
pub use lattice::{Elem, FiniteLattice, LatticeSpec, Poset};
pub use lattice::{LatticeView, NormalityMode};
pub use verdict::Verdict;
