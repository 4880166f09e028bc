//! Enumeration of parking functions whose reading permutation avoids a set of
//! classical patterns, viewed as labeled Dyck paths.
//!
//! The crate offers two independent counting engines (exhaustive enumeration and a
//! sum over pattern-avoiding permutations), a registry of closed forms and
//! recurrences, the constructive tree bijections, and OEIS comparison tooling.

mod cache;

pub mod bijections;
pub mod cli;
pub mod dyck;
pub mod formulas;
pub mod oeis;
pub mod parking;
pub mod patterns;

pub use dyck::DyckPath;
pub use parking::ParkingFunction;
pub use patterns::{PatternSet, Permutation};
