//! Laurent coefficients of the classical r-matrix around z = 0.

use rational_rmatrix::zoo::{self, Family, Params};
use rational_rmatrix::{Rat, Series};

fn main() -> rational_rmatrix::Result<()> {
    let n = 2;
    let z = Series::point(Rat::zero(), -1, 4)?;
    let r = Family::ClassicalExplicit.build(n, &Params::new().z(z))?;
    println!("z^-1 is P12: {}", r.coeff(-1)? == zoo::permutation(n));
    for k in 0..=2 {
        println!("z^{k}:");
        for row in r.coeff(k)?.rows() {
            println!("  {row:?}");
        }
    }
    Ok(())
}
