//! Constructors for every R-matrix family, each a pure map from exact
//! parameters to a [`TensorOperator`](crate::algebra::TensorOperator).

pub mod appendix;
pub mod basic;
pub mod dynamical;
pub mod family;
pub mod vertex;

pub use appendix::{classical_r, m_explicit, m_zero, r_explicit, r_zero};
pub use basic::{
    constant_vertex, eleven_vertex, o_matrix, permutation, phi, six_vertex, unitarity_factor,
    yang, ConstantVertex,
};
pub use dynamical::{r_dynamical, r_semidynamical, twist, twist_inverse};
pub use family::{Family, Param, Params, Perturbation, Zoo};
pub use vertex::{r_vertex, r_vertex_components, r_vertex_example1, r_vertex_z2zero};
