//! Nerves of the bundled systems: flagness, face counts and sphere checks.
//!
//! ```text
//! cargo run --example nerve_sphere
//! ```

use evencox::fixtures;
use evencox::homology::homology;
use evencox::nerve::{nerve_of, sphere_check};

fn main() {
    for (name, text) in fixtures::ALL {
        let m = fixtures::load(text);
        let l = nerve_of(&m);
        let n = l.dimension().max(0) as usize;
        let report = sphere_check(&l, n);
        let h = homology(&l.chain_complex());
        println!(
            "{name:<7} f = {:<16} flag = {:<5} S^{n}: {:<4} betti = {:?}{}",
            format!("{:?}", l.f_vector()),
            l.is_flag(),
            if report.passed() { "yes" } else { "no" },
            h.betti,
            report.failed_condition.map(|c| format!("  ({c})")).unwrap_or_default(),
        );
    }

    // Links of a flag 3-sphere are 2-spheres.
    let d = fixtures::load(fixtures::SYS_D);
    let l = nerve_of(&d);
    let v = evencox::coxeter::GenSet::singleton(0);
    let link = l.link(v).expect("vertex of the nerve");
    println!("link of {} in SYS-D: f = {:?}, S^2: {}", d.name(0), link.f_vector(), sphere_check(&link, 2).passed());
}
