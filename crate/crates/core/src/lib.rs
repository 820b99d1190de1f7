//! Truncated models of graded Lie algebras inside a tensor algebra over
//! F_p, their enveloping algebras and Bockstein homology, plus p-local
//! valuation arithmetic and relative James-word combinatorics.

pub mod cache;
pub mod error;
pub mod homology;
pub mod james;
pub mod lie;
pub mod plocal;
pub mod report;
pub mod series;
pub mod tensor;

pub use error::{
    ArithError, CacheError, HomologyError, LieError, RunError, SeriesError, TensorError, WordError,
};
pub use plocal::{PLocalRational, PrimeConfig};
pub use series::HilbertSeries;
pub use tensor::{Derivation, GradedGenerator, GradedSubspace, NCPoly, TensorAlgebra, Word};
