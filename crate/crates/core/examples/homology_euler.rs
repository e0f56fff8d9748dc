//! Orbihedral Euler characteristics and the homology of a relative pair.
//!
//! ```text
//! cargo run --example homology_euler
//! ```

use evencox::coxeter::GenSet;
use evencox::davis::BallComplex;
use evencox::fixtures;
use evencox::homology::{format_rational, orbihedral_euler, relative_homology};
use evencox::ruins::build_ruin;

fn main() -> evencox::Result<()> {
    for (name, text) in fixtures::ALL {
        let m = fixtures::load(text);
        println!("{name:<7} χ_orb = {}", format_rational(&orbihedral_euler(&m)));
    }
    let b2 = orbihedral_euler(&fixtures::load(fixtures::SYS_B));
    let d = orbihedral_euler(&fixtures::load(fixtures::SYS_D));
    println!("χ_orb(SYS-D) = χ_orb(SYS-B)²: {}", d == &b2 * &b2);

    let m = fixtures::load(fixtures::SYS_B);
    let b = BallComplex::new(&m, 4);
    let r = build_ruin(&b, m.all(), GenSet::singleton(m.generator("t")?))?;
    let h = relative_homology(b.order_complex(&r.omega), b.order_complex(&r.boundary))?;
    println!("H_*(Ω, ∂Ω) in the radius-4 ball: betti {:?}", h.betti);
    Ok(())
}
