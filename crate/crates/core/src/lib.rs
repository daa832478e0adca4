//! Graded polynomial identities of subalgebras of `M_n` spanned by matrix
//! units, under elementary gradings induced by tuples of distinct group
//! elements.

pub mod basis;
pub mod cli;
pub mod config;
pub mod cyclo;
pub mod free;
pub mod generic;
pub mod grading;
pub mod group;
pub mod monomial;
pub mod omega;
pub mod tensor;
pub mod verify;

pub use grading::{induce_grading, GradedSubalgebra, GradingError, PartialMap, UnitSet, UnitSpec};
pub use group::{make_group, DegreeLiteral, Group, GroupElement, GroupError, GroupSpec};
