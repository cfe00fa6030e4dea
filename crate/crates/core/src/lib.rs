//! Finite fields, their Frobenius orbits, and the monoid `T_q^m` of canonical
//! subfield-preserving polynomial maps of `F_{q^m}`.
//!
//! `T_q^m` is realized both concretely, as reduced polynomials with
//! coefficients in `F_q` ([`poly`]), and abstractly, as the product over
//! divisors `k | m` of semidirect products `M_[π(k)] ⋉ C_k^π(k)` ([`monoid`]).
//! [`monoid::MonoidElem::delta`] and [`monoid::MonoidElem::delta_inv`] move
//! between the two. [`census`] has exact counts, densities and an exhaustive
//! oracle.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod census;
pub mod error;
pub mod field;
pub mod func;
pub mod monoid;
pub mod orbits;
pub mod poly;

pub use census::{BruteForceCounts, CensusReport, ConvergenceMode, ConvergenceRow};
pub use error::{Error, Result};
pub use field::{find_irreducible, ElemIndex, FFElem, FieldCtx, PrimePoly};
pub use func::FuncTable;
pub use monoid::{Component, IndexMap, MonoidElem, MonoidShape, ShapePart, ShiftVector};
pub use orbits::{pi_count, Coord, OrbitTable};
pub use poly::PolyRep;
