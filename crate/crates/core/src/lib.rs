//! Canonical bases of irreducible modules for the quantum groups of types B and D.
//!
//! Vectors live in a tensor product of q-wedge modules whose basis is indexed by
//! tabloids. Global basis vectors of fundamental modules come from divided-power
//! paths, a monomial basis `A(T)` is built from them, and a bar-symmetric
//! unitriangular correction turns `A(T)` into the canonical basis `G(T)`.

pub mod canonical;
pub mod check;
pub mod crystal;
pub mod error;
pub mod laurent;
pub mod lincomb;
pub mod modvec;
pub mod rootdata;
pub mod shapes;
pub mod spinmod;
pub mod wedge;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use rootdata::{AlgebraKind, DominantWeight, Family, Letter, Weight};
