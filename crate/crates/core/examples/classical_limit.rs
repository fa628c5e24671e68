//! Expand R^h(z) in h: the h^-1, h^0 and h^1 coefficients are 1, r(z), m(z).

use rational_rmatrix::zoo::{Family, Params};
use rational_rmatrix::{Rat, Series, TensorOperator};

fn main() -> rational_rmatrix::Result<()> {
    let n = 3;
    let z = Rat::new(3, 4);
    let hbar = Series::point(Rat::zero(), -1, 6)?;
    let r = Family::ExplicitAppendix.build(n, &Params::new().hbar(hbar).z(Series::constant(z.clone())))?;
    let at = |f: Family| Family::build::<Rat>(f, n, &Params::new().z(z.clone()));
    println!("h^-1 is identity: {}", r.coeff(-1)? == TensorOperator::identity(n, 2));
    println!("h^0 is classical r: {}", r.coeff(0)? == at(Family::ClassicalExplicit)?);
    println!("h^1 is m: {}", r.coeff(1)? == at(Family::MExplicit)?);
    Ok(())
}
