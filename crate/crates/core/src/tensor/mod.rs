//! The tensor algebra over F_p: words, polynomials, derivations and
//! degreewise linear algebra.

mod basis;
mod derivation;
mod echelon;
mod field;
mod poly;
mod subspace;

pub use basis::{Block, Content, GradedGenerator, TensorAlgebra, Word, MAX_GENERATORS};
pub use derivation::Derivation;
pub use echelon::{Echelon, EchelonBuilder};
pub use field::Field;
pub use poly::NCPoly;
pub use subspace::GradedSubspace;

pub(crate) use subspace::{span_degree, start_subspace};
