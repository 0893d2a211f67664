//! Erasure codes with two-step local repair.
//!
//! This crate studies linear codes whose erased symbols can be repaired from
//! small local groups, two erasures at a time: the first lost symbol is
//! rebuilt from one light parity check, then the second from another, where
//! the second check may read the freshly repaired symbol. The crate provides
//!
//! * exact linear algebra over prime fields ([`algebra`]),
//! * linear codes with weight hierarchies and core-set searches ([`code`]),
//! * local repair analysis for parity designs ([`locality`]),
//! * minimum-distance upper bounds for such codes ([`bounds`]),
//! * a graph-based family of parity designs meeting the bounds ([`turan`]),
//! * randomized completion of a parity design to a full code over a large
//!   prime field ([`completion`]).
//!
//! Most searches enumerate coordinate subsets, so they are exponential in the
//! block length; [`Limits`] caps the work and operations fail with
//! [`Error::ResourceLimit`] rather than running unbounded.

pub mod algebra;
pub mod bounds;
pub mod code;
pub mod completion;
pub mod error;
pub mod limits;
pub mod locality;
pub mod turan;

pub use algebra::{FieldMatrix, PrimeField, Rref};
pub use code::{CoordSet, GhwProfile, LinearCode};
pub use error::{Error, Result};
pub use limits::Limits;
