//! The vertex matrix obtained from the semi-dynamical one by the gauge
//! transformation does not depend on q and agrees with the closed form.

use rational_rmatrix::gauge::DynParams;
use rational_rmatrix::zoo::{self, Family, Params};
use rational_rmatrix::Rat;

fn main() -> rational_rmatrix::Result<()> {
    let (hbar, z1, z2) = (Rat::new(1, 3), Rat::new(5, 4), Rat::new(-2, 3));
    for n in 2..=4 {
        let q1 = DynParams::new((1..=n as i64).map(Rat::from_int).collect())?;
        let q2 = DynParams::new((0..n as i64).map(|k| Rat::new(k * k - 3, 7)).collect())?;
        let a = zoo::r_vertex(&hbar, &z1, &z2, &q1)?;
        let b = zoo::r_vertex(&hbar, &z1, &z2, &q2)?;
        let closed = Family::ExplicitAppendix.build(n, &Params::new().hbar(hbar.clone()).z(&z1 - &z2))?;
        println!("N = {n}: q-independent {}, equals closed form {}", a == b, a == closed);
    }
    Ok(())
}
