//! Print the explicit matrix for N = 2 and compare it with the 11-vertex one.

use rational_rmatrix::zoo::{Family, Params};
use rational_rmatrix::Rat;

fn main() -> rational_rmatrix::Result<()> {
    let p = Params::new().hbar(Rat::from_int(1)).z(Rat::from_int(1));
    let r = Family::ExplicitAppendix.build(2, &p)?;
    for row in r.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
        println!("{}", cells.join(" "));
    }
    println!("equals 11-vertex: {}", r == Family::ElevenVertex.build(2, &p)?);
    Ok(())
}
