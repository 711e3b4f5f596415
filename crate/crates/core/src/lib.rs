//! Exact factor complexity of finitely presented subshifts, their images
//! under non-erasing morphisms, recognizability certificates, and free
//! group basis changes of doubled subshifts.
//!
//! ```
//! use symdyn::catalog;
//!
//! let x = catalog::fibonacci_subshift();
//! let p: Vec<u64> = (1..=5)
//!     .map(|n| x.complexity(n).unwrap().try_into().unwrap())
//!     .collect();
//! assert_eq!(p, [2, 3, 4, 5, 6]);
//! ```

pub mod analysis;
pub mod catalog;
mod decimal;
mod error;
pub mod freegroup;
pub mod morphism;
pub mod recognize;
pub mod subshift;
pub mod words;

pub use analysis::{BoundReport, EntropyProfile};
pub use error::{Error, Result};
pub use freegroup::{DoubledAlphabet, FreeGroupHom, ReducedWord};
pub use morphism::{CanonicalDecomposition, Morphism};
pub use recognize::{Certificate, Witness};
pub use subshift::{ComplexityTable, Presentation};
pub use words::{Alphabet, FactorSet, Letter, Word};
