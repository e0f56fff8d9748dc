//! A ball truncation of the Davis complex: cells by type, vertex links and the
//! homology of a chamber.
//!
//! ```text
//! cargo run --release --example davis_ball -- [radius]
//! ```

use evencox::davis::BallComplex;
use evencox::fixtures;
use evencox::homology::{homology, ChainComplex};
use evencox::nerve::nerve_of;

fn main() -> evencox::Result<()> {
    let radius = std::env::args().nth(1).map_or(9, |r| r.parse().expect("radius"));
    let m = fixtures::load(fixtures::SYS_D);
    let b = BallComplex::new(&m, radius);
    println!("SYS-D, radius {radius}: {} elements, {} cells, depth {}", b.ball().len(), b.len(), b.depth());
    for (kind, n) in b.cells_by_type().iter().take(12) {
        println!("  {kind:<16} {n}");
    }

    let l = nerve_of(&m);
    let mut safe = 0;
    for w in 0..b.ball().len() as u32 {
        if let Ok(link) = b.vertex_link(w) {
            safe += 1;
            assert_eq!(link.faces(), l.faces(), "link of a safe vertex is the nerve");
        }
    }
    println!("{safe} safe vertices, every link equals the nerve");

    let chamber = b.chamber(0, None);
    let h = homology(&ChainComplex::from_simplices(b.order_complex(&chamber))?);
    println!("chamber K: {} cells, betti {:?}", chamber.len(), h.betti);
    Ok(())
}
