//! Bounded verification toolkit for universal quadratic sums over the integers.
//!
//! The crate is organised around five areas:
//!
//! * [`forms`]: integral positive-definite ternary forms, exhaustive
//!   representation enumeration, exceptional-set sieves and the Jacobi symbol.
//! * [`tuples`]: sums `x(ax+b)/2 + y(cy+d)/2 + z(ez+f)/2`, completion-of-square
//!   systems and bitset universality sieves.
//! * [`descent`]: form identities as validated rewrite rules, plus drivers that
//!   turn arbitrary representations into ones with odd coordinates.
//! * [`genus`]: reduction, isometry search, automorphism groups, neighbor
//!   closure of class sets and weighted genus averages.
//! * [`verify`]: the fixture database, run reports and the checks behind the CLI.

pub mod arith;
pub mod descent;
pub mod error;
pub mod forms;
pub mod genus;
pub mod sieve;
pub mod tuples;
pub mod verify;

pub use error::{Error, Result};
pub use forms::{RepConstraint, Representation, TernaryForm};
pub use tuples::SumTuple;

/// Library version string; it keys the class-set cache.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
