//! Quantum Yang-Baxter equation for the explicit GL(N) matrix at one point.

use rational_rmatrix::zoo::{Family, Params};
use rational_rmatrix::{Rat, TensorOperator};

fn main() -> rational_rmatrix::Result<()> {
    let n = 3;
    let hbar = Rat::new(2, 5);
    let z = [Rat::new(1, 2), Rat::new(-3, 7), Rat::from_int(4)];
    let r = |a: usize, b: usize| -> rational_rmatrix::Result<TensorOperator<Rat>> {
        let p = Params::new().hbar(hbar.clone()).z(&z[a - 1] - &z[b - 1]);
        Family::ExplicitAppendix.build(n, &p)?.embed(&[a, b], 3)
    };
    let (r12, r13, r23) = (r(1, 2)?, r(1, 3)?, r(2, 3)?);
    let lhs = TensorOperator::product([&r12, &r13, &r23]);
    let rhs = TensorOperator::product([&r23, &r13, &r12]);
    println!("N = {n}, {}x{} matrices", lhs.dim(), lhs.dim());
    println!("R12 R13 R23 == R23 R13 R12: {}", lhs == rhs);
    Ok(())
}
