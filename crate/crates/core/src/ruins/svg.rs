use std::collections::VecDeque;
use std::fmt::Write;

use super::{collars, color_intersection, color_vertices, ruin_components, Collar};
use crate::coxeter::{Gen, Parity};
use crate::davis::BallComplex;
use crate::Result;

const STRIP: usize = 120;
const ROW: usize = 18;
const TOP: usize = 40;

/// Collars of the component of `e` in `Ω(S, t)` drawn as vertical strips,
/// neighbours adjacent, even colors shaded, inner boundaries bold.
pub fn render_svg(b: &BallComplex, t: Gen) -> Result<String> {
    let m = b.matrix();
    let coloring = color_vertices(b, t)?;
    let comps = ruin_components(b, t);
    let cs: Vec<Collar> = comps.iter().find(|c| c.coset() == 0).map(|c| collars(b, t, c)).unwrap_or_default();
    let order = strip_order(&cs);

    let rows = cs.iter().map(|c| c.vertices.len()).max().unwrap_or(0);
    let width = STRIP * cs.len().max(1) + 20;
    let height = TOP + ROW * rows + 20;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="10">"#
    );
    let _ = writeln!(out, r#"<title>collars of Omega(S, {})</title>"#, m.name(t));
    for (slot, &i) in order.iter().enumerate() {
        let c = &cs[i];
        let x = 10 + slot * STRIP;
        let parity = coloring.info(c.vertices[0]).map(|v| v.parity).unwrap_or(Parity::Even);
        let color = coloring.color_of(c.vertices[0]).unwrap_or(0);
        let fill = if parity == Parity::Even { "#d0d0d0" } else { "#ffffff" };
        let _ = writeln!(
            out,
            r##"<rect x="{x}" y="{TOP}" width="{STRIP}" height="{}" fill="{fill}" stroke="#808080"/>"##,
            ROW * rows
        );
        if !c.inner.is_empty() {
            for edge in [x, x + STRIP] {
                let _ = writeln!(
                    out,
                    r##"<line x1="{edge}" y1="{TOP}" x2="{edge}" y2="{}" stroke="#000000" stroke-width="3"/>"##,
                    TOP + ROW * rows
                );
            }
        }
        let _ = writeln!(out, r#"<text x="{}" y="{}">color {color}</text>"#, x + 4, TOP - 20);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text>"#,
            x + 4,
            TOP - 6,
            m.format_word(b.ball().element(c.cosets[0]).word())
        );
        for (k, &w) in c.vertices.iter().enumerate() {
            let y = TOP + ROW * k + ROW / 2;
            let _ = writeln!(out, r##"<circle cx="{}" cy="{y}" r="3" fill="#000000"/>"##, x + 10);
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}">{}</text>"#,
                x + 18,
                y + 4,
                m.format_word(b.ball().element(w).word())
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Breadth-first order over collars whose bodies meet, starting at the collar of `e`.
fn strip_order(cs: &[Collar]) -> Vec<usize> {
    let mut seen = vec![false; cs.len()];
    let mut out = Vec::with_capacity(cs.len());
    let start = cs.iter().position(|c| c.vertices.contains(&0)).unwrap_or(0);
    for root in std::iter::once(start).chain(0..cs.len()) {
        if root >= cs.len() || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            out.push(i);
            for j in 0..cs.len() {
                if !seen[j] && !color_intersection(&cs[i].body, &cs[j].body).is_empty() {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn strips_for_the_square() {
        let m = fixtures::load(fixtures::SYS_B);
        let b = BallComplex::new(&m, 4);
        let svg = render_svg(&b, m.generator("t").unwrap()).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("#d0d0d0"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
