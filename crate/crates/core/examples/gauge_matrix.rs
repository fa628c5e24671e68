//! The gauge matrix g(z, q), its inverse and its degeneration at z = 0.

use rational_rmatrix::algebra::linalg;
use rational_rmatrix::gauge::{self, DynParams, InverseMethod};
use rational_rmatrix::Rat;

fn main() -> rational_rmatrix::Result<()> {
    let q = DynParams::new(vec![Rat::from_int(3), Rat::from_int(2), Rat::from_int(1)])?;
    let z = Rat::new(1, 2);
    let xi = gauge::xi_matrix(&Rat::from_int(1), &q);
    println!("det Xi(1, q) = {}", linalg::determinant(&xi)?);
    let g = gauge::g_matrix(&z, &q)?;
    let direct = gauge::g_inverse(&z, &q, InverseMethod::Direct)?;
    let closed = gauge::g_inverse(&z, &q, InverseMethod::Symmetric)?;
    println!("closed-form inverse agrees: {}", direct == closed);
    println!("g g^-1 = 1: {}", g.matmul(&closed) == rational_rmatrix::TensorOperator::identity(3, 1));
    println!("rank g(0, q) = {}", linalg::rank(&gauge::g_matrix(&Rat::zero(), &q)?));
    Ok(())
}
