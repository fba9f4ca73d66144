//! Exact-category computations over concrete finite models, with every
//! structural claim checked by exact arithmetic.
//!
//! The layers, bottom to top:
//!
//! * [`mat`]: dense matrices over Z/p^k with a Smith-style diagonalization
//!   that drives every solver.
//! * [`category`]: objects, morphisms, biproducts and isomorphism
//!   certificates, generic over the model.
//! * [`models`]: the concrete models (quiver representations, finite
//!   cyclic-power modules, and the split structure over either).
//! * [`exact`]: admissible monos and epis, kernel-cokernel pairs, pushouts,
//!   pullbacks and injectivity machinery.
//! * [`schanuel`]: the comparison isomorphism for two presentations with a
//!   common kernel, its iterated form along resolutions, and dimension
//!   bookkeeping built on it.
//! * [`axioms`]: runtime checks that a model really carries an exact
//!   structure, with deliberate mutations to prove the checks can fail.

// Index loops here typically drive several matrices at once.
#![allow(clippy::needless_range_loop)]

pub mod axioms;
pub mod category;
pub mod error;
pub mod exact;
pub mod mat;
pub mod models;
pub mod schanuel;

pub use error::{Error, Result};
