//! Lax matrices from the gauge matrix and the trace formula through R.

use rational_rmatrix::gauge::{self, DynParams};
use rational_rmatrix::zoo::{Family, Params};
use rational_rmatrix::Rat;

fn main() -> rational_rmatrix::Result<()> {
    let q = DynParams::new(vec![Rat::from_int(1), Rat::new(-1, 2), Rat::new(7, 3)])?;
    let (eta, z) = (Rat::new(2, 9), Rat::new(5, 6));
    let lambda = [Rat::from_int(2), Rat::new(1, 5), Rat::from_int(-3)];
    let lax = gauge::lax_build(&eta, &z, &q, &lambda)?;
    println!("Ruijsenaars-Schneider Lax matrix:");
    for row in lax.l_rs.rows() {
        println!("  {row:?}");
    }
    let r = Family::VertexGauge.build(3, &Params::new().hbar(eta.clone()).z(z.clone()))?;
    let traced = r.matmul(&lax.s.embed(&[2], 2)?).partial_trace(2)?;
    println!("tr2(R S2) equals the top Lax matrix: {}", traced == lax.l_top);
    Ok(())
}
