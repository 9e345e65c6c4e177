//! Exact-arithmetic engine for the sl3 spider: Kuperberg web evaluation,
//! colored link invariants via cabling, tensor resolutions of simple
//! Uq(sl3)-modules, and the cubical sign-assignment machinery that turns
//! commuting pre-complexes into complexes.
//!
//! Everything is computed over exact rings: Laurent polynomials in a sixth
//! root of `q` with coefficients in `Z[zeta6]` (see [`ring`]), and rational
//! functions in `s = q^{1/2}` (see [`ratfun`]) for module-level linear
//! algebra.

pub mod cube;
pub mod diagram;
pub mod foam;
pub mod invariant;
pub mod linalg;
pub mod partitions;
pub mod ratfun;
pub mod repring;
pub mod resolution;
pub mod ring;
pub mod selftest;
pub mod uq;
pub mod web;

pub use diagram::Diagram;
pub use invariant::{Convention, GradedRanks};
pub use partitions::{AdmissiblePartition, PartitionGraph};
pub use ratfun::RatFun;
pub use repring::RepElem;
pub use ring::Scalar;
pub use uq::{ModuleMap, UqModule};
pub use web::Web;
