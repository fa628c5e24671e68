//! Exact construction and verification of rational GL(N) R-matrices.
//!
//! Everything is computed in exact rational arithmetic ([`Rat`]) or in
//! truncated Laurent series over it ([`Series`]); there are no floating
//! point tolerances anywhere. The crate is organised bottom-up:
//!
//! * [`algebra`]: scalar rings and operators on `(C^N)^{⊗k}`;
//! * [`gauge`]: the IRF-Vertex gauge matrix `g(z, q)` and related objects;
//! * [`zoo`]: constructors for every R-matrix family;
//! * [`verify`]: randomized exact identity checks;
//! * [`cli`]: the command-line front end used by the `rmatrix` binary.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gauge;
pub mod verify;
pub mod zoo;

pub use algebra::{Rat, Scalar, Series, TensorOperator};
pub use error::{Error, Result};
