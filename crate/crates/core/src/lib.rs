//! Computation with finite skew lattices.
//!
//! A skew lattice is a set with two idempotent, associative operations `∧`
//! and `∨` satisfying the absorption laws `x∧(x∨y) = x = (y∨x)∧x` and their
//! duals. This crate represents finite ones by Cayley tables and provides:
//!
//! * [`algebra`]: law verification, natural orders, Green's relations, the
//!   decomposition into rectangular `D`-classes over the lattice reflection
//!   `S/D`, and variety predicates (normal, symmetric, distributive, ...).
//! * [`coset`]: cosets, image sets and coset bijections between comparable
//!   `D`-classes, with runtime cross-checks of the structural theorems.
//! * [`category`]: composition and `×`-products of coset bijections,
//!   categorical / strictly categorical verdicts, the coset category and an
//!   associativity audit of `×`.
//! * [`matrix`]: skew lattices of exact idempotent matrices under `·` and
//!   `∇`, including block standard-form helpers.
//! * [`io`]: text formats, DOT export, reports, fixtures and subalgebra search.

pub mod algebra;
pub mod category;
pub mod coset;
pub mod io;
pub mod matrix;

pub use algebra::{
    CayleyAlgebra, Check, ClassId, DClassStructure, Element, Op, SkewLattice, VerificationReport,
};
