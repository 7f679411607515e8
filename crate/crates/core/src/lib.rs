//! Exact computation with ordered Cu-semigroups.
//!
//! The crate works with three concrete model families (finite tables, `N̄^k`, and
//! monotone `N̄`-chains), checks the axioms O1–O6 on them, computes their cone of
//! functionals as ideal-indexed rational polyhedral cones, takes joins and meets of
//! functionals, and represents the realification `S_R` by values on a finite set of
//! representative functionals. All arithmetic is exact.

pub mod axioms;
pub mod cone;
pub mod dd;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod grid;
pub mod halving;
pub mod lattice;
pub mod lp;
pub mod model;
pub mod real;
pub mod report;
pub mod selftest;
pub mod term;

pub use error::{Error, Result};
pub use ext::{ExtNat, ExtRational, Rational, INF};
pub use model::{CuModel, Element, FiniteTable};
