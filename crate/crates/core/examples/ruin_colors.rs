//! The one-letter ruin of the square system: components, collars, colors, the
//! evens intersection and an SVG of the strips.
//!
//! ```text
//! cargo run --example ruin_colors -- [out.svg]
//! ```

use evencox::coxeter::GenSet;
use evencox::davis::BallComplex;
use evencox::fixtures;
use evencox::ruins::{
    build_ruin, collars, color_classes, color_vertices, render_svg, ruin_components, verify_evens_isomorphism,
};

fn main() -> evencox::Result<()> {
    let m = fixtures::load(fixtures::SYS_B);
    let b = BallComplex::new(&m, 5);
    let (t, s) = (m.generator("t")?, m.generator("s")?);

    let r = build_ruin(&b, m.all(), GenSet::singleton(t))?;
    println!("Ω(S,t): {} cells, ∂Ω: {}, Ω̂: {}", r.omega.len(), r.boundary.len(), r.hat.len());
    let comps = ruin_components(&b, t);
    println!("{} components in the ball", comps.len());

    let coloring = color_vertices(&b, t)?;
    println!("{} even and {} odd colors among {} vertices", coloring.even_colors(), coloring.odd_colors(), coloring.vertices().count());
    let cs = collars(&b, t, &comps[0]);
    for (color, idx) in color_classes(&coloring, &cs) {
        let first: Vec<String> = idx.iter().map(|&i| m.format_word(b.ball().element(cs[i].vertices[0]).word())).collect();
        println!("  color {color} ({:?}): collars starting at {}", coloring.parity_of_color(color), first.join(", "));
    }

    let ev = verify_evens_isomorphism(&b, s, t)?;
    println!("collars of e and of {} meet in {} cell(s): {:?}", ev.probes.join(" / "), ev.intersection_cells, ev.intersection_types);

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, render_svg(&b, t)?).map_err(|e| evencox::Error::Io(e.to_string()))?;
        println!("wrote {path}");
    }
    Ok(())
}
