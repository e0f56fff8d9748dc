//! `(U, T)`-ruins in ball truncations, boundary collars, and the coloring of a
//! one-letter ruin by `A = ∏_{T ∈ 𝒮_{≥t}} W_T / W_{T−t}`.

mod lemmas;
mod svg;
mod verify;

pub use lemmas::{lemma_ids, run_battery, run_lemma, LemmaReport};
pub use svg::render_svg;
pub use verify::{
    classify_codim1_faces, verify_evens_isomorphism, verify_excision, Codim1Report, EvensReport, ExcisionReport,
    ManifoldReport, WalkPattern,
};

use std::collections::{BTreeMap, HashMap};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::coxeter::{FiniteParabolic, Gen, GenSet, Parity, Word};
use crate::davis::{BallComplex, Cell};
use crate::nerve::{ruin_context, RuinContext};
use crate::{Error, Result};

/// The cell sets `Ω(U,T)`, `∂Ω(U,T)` and `Ω̂(U,T)` inside a ball complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ruin {
    pub u: GenSet,
    pub t: GenSet,
    pub omega: Vec<u32>,
    pub boundary: Vec<u32>,
    pub hat: Vec<u32>,
}

pub fn build_ruin(b: &BallComplex, u: GenSet, t: GenSet) -> Result<Ruin> {
    if !t.is_subset(u) || !b.poset().contains(t) {
        return Err(Error::InvalidRuinType(b.matrix().format_set(t), b.matrix().format_set(u)));
    }
    let mut in_omega = vec![false; b.len()];
    let mut hat = Vec::new();
    for (id, c) in b.cells().iter().enumerate() {
        if !c.kind.is_subset(u) {
            continue;
        }
        if t.is_subset(c.kind) {
            in_omega[id] = true;
            for f in b.faces(id as u32) {
                in_omega[f as usize] = true;
            }
        } else {
            hat.push(id as u32);
        }
    }
    let omega: Vec<u32> = (0..b.len() as u32).filter(|&i| in_omega[i as usize]).collect();
    let boundary = omega.iter().copied().filter(|&i| !t.is_subset(b.cell(i).kind)).collect();
    Ok(Ruin { u, t, omega, boundary, hat })
}

/// Components of a face-closed cell set, joined through shared vertices.
fn components_of(b: &BallComplex, cells: &[u32]) -> Vec<Vec<u32>> {
    let pos: HashMap<u32, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind::<usize>::new(cells.len());
    for (i, &c) in cells.iter().enumerate() {
        if b.cell(c).kind.is_empty() {
            continue;
        }
        for v in b.faces_of_type(c, GenSet::EMPTY) {
            if let Some(&j) = pos.get(&v) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, &c) in cells.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(c);
    }
    let mut out: Vec<Vec<u32>> = groups.into_values().collect();
    for g in &mut out {
        g.sort_unstable();
    }
    out.sort();
    out
}

fn vertex_reps(b: &BallComplex, cells: &[u32]) -> Vec<u32> {
    cells.iter().map(|&c| b.cell(c)).filter(|c| c.kind.is_empty()).map(|c| c.rep).collect()
}

/// A connected component of `Ω(S, t)` within the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuinComponent {
    /// Minimal representatives of the cosets `wW_U` met by the vertices.
    pub cosets: Vec<u32>,
    pub cells: Vec<u32>,
    pub vertices: Vec<u32>,
}

impl RuinComponent {
    pub fn coset(&self) -> u32 {
        self.cosets[0]
    }
}

/// Components of the one-letter ruin `Ω(S, t)` in the ball, ordered by coset.
pub fn ruin_components(b: &BallComplex, t: Gen) -> Vec<RuinComponent> {
    let u = ruin_context(b.matrix(), t).u;
    let ruin = build_ruin(b, b.matrix().all(), GenSet::singleton(t)).expect("singletons are spherical");
    let mut out: Vec<RuinComponent> = components_of(b, &ruin.omega)
        .into_iter()
        .map(|cells| {
            let vertices = vertex_reps(b, &cells);
            let mut cosets: Vec<u32> = vertices.iter().map(|&v| b.ball().coset_min_rep(v, u)).collect();
            cosets.sort_unstable();
            cosets.dedup();
            RuinComponent { cosets, cells, vertices }
        })
        .collect();
    out.sort_by(|a, b| (a.coset(), &a.cells).cmp(&(b.coset(), &b.cells)));
    out
}

/// The coloring map `w ↦ w·ē`, evaluated through `g_UT` on each coordinate.
#[derive(Clone, Debug)]
pub struct ColorMap {
    pub t: Gen,
    pub coordinates: Vec<GenSet>,
    tables: Vec<FiniteParabolic>,
}

/// A color: one minimal coset representative per coordinate, as indices into
/// the corresponding finite group.
pub type ColorTuple = Vec<u32>;

impl ColorMap {
    pub fn new(b: &BallComplex, t: Gen) -> Result<Self> {
        b.matrix().require_even()?;
        let coordinates: Vec<GenSet> = b.poset().above(GenSet::singleton(t)).collect();
        let tables = coordinates
            .iter()
            .map(|&c| FiniteParabolic::new(b.matrix(), c))
            .collect::<Result<_>>()?;
        Ok(ColorMap { t, coordinates, tables })
    }

    /// Color of the element spelled by `word` (any expression, letters in `U`).
    pub fn color(&self, word: &[Gen]) -> ColorTuple {
        self.coordinates
            .iter()
            .zip(&self.tables)
            .map(|(&c, p)| p.coset_min_rep(p.delete_outside(word), c.without(self.t)))
            .collect()
    }

    /// `g_UT(w)` for each coordinate `T`, as indices into `W_T`.
    pub fn images(&self, word: &[Gen]) -> Vec<u32> {
        self.tables.iter().map(|p| p.delete_outside(word)).collect()
    }

    pub fn table(&self, i: usize) -> &FiniteParabolic {
        &self.tables[i]
    }

    pub fn trivial(&self) -> ColorTuple {
        vec![0; self.coordinates.len()]
    }

    /// Coset representatives of a color, as words.
    pub fn words(&self, color: &ColorTuple) -> Vec<Word> {
        color.iter().zip(&self.tables).map(|(&i, p)| p.word(i).clone()).collect()
    }
}

/// Per-vertex data for a one-letter ruin at `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexInfo {
    pub color: usize,
    pub parity: Parity,
    /// Minimal representative of `wW_{U−t}`: the boundary component of `w`.
    pub collar: u32,
}

/// Colors of the ball vertices lying in `W_U`.
#[derive(Clone, Debug)]
pub struct Coloring {
    pub t: Gen,
    pub coordinates: Vec<GenSet>,
    pub palette: Vec<ColorTuple>,
    pub palette_parity: Vec<Parity>,
    info: Vec<Option<VertexInfo>>,
}

impl Coloring {
    pub fn info(&self, w: u32) -> Option<VertexInfo> {
        self.info.get(w as usize).copied().flatten()
    }

    pub fn color_of(&self, w: u32) -> Option<usize> {
        self.info(w).map(|i| i.color)
    }

    pub fn parity_of_color(&self, c: usize) -> Parity {
        self.palette_parity[c]
    }

    /// Colored vertices in ShortLex order.
    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.info.len() as u32).filter(|&w| self.info[w as usize].is_some())
    }

    pub fn even_colors(&self) -> usize {
        self.palette_parity.iter().filter(|&&p| p == Parity::Even).count()
    }

    pub fn odd_colors(&self) -> usize {
        self.palette_parity.len() - self.even_colors()
    }
}

/// Paints every ball vertex of `W_U`. Color ids follow first appearance in
/// ShortLex order, so `ē` is color `0`.
pub fn color_vertices(b: &BallComplex, t: Gen) -> Result<Coloring> {
    let ctx = ruin_context(b.matrix(), t);
    let map = ColorMap::new(b, t)?;
    let mut ids: HashMap<ColorTuple, usize> = HashMap::new();
    let mut palette = Vec::new();
    let mut palette_parity = Vec::new();
    let mut info = vec![None; b.ball().len()];
    for (w, e) in b.ball().elements().iter().enumerate() {
        if !e.support().is_subset(ctx.u) {
            continue;
        }
        let tuple = map.color(e.word());
        let parity = Parity::of(e.count(t));
        let color = *ids.entry(tuple.clone()).or_insert_with(|| {
            palette.push(tuple);
            palette_parity.push(parity);
            palette.len() - 1
        });
        let collar = b.ball().coset_min_rep(w as u32, ctx.u_minus_t());
        info[w] = Some(VertexInfo { color, parity, collar });
    }
    Ok(Coloring { t, coordinates: map.coordinates.clone(), palette, palette_parity, info })
}

/// A boundary component `B` of `∂Ω` with its collar `⋃_{w ∈ B} wK(U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collar {
    pub boundary: Vec<u32>,
    pub vertices: Vec<u32>,
    pub body: Vec<u32>,
    /// Cells of the body whose type contains `t`.
    pub inner: Vec<u32>,
    /// Minimal representatives of the cosets `wW_{U−t}` met by the vertices.
    pub cosets: Vec<u32>,
}

/// Collars of a one-letter ruin component, from the components of its boundary.
pub fn collars(b: &BallComplex, t: Gen, component: &RuinComponent) -> Vec<Collar> {
    let ctx = ruin_context(b.matrix(), t);
    let filter = Some((ctx.u, t));
    let boundary: Vec<u32> = component.cells.iter().copied().filter(|&c| !b.cell(c).kind.contains(t)).collect();
    components_of(b, &boundary)
        .into_iter()
        .map(|cells| {
            let vertices = vertex_reps(b, &cells);
            let mut body: Vec<u32> = vertices.iter().flat_map(|&w| b.chamber(w, filter)).collect();
            body.sort_unstable();
            body.dedup();
            let inner = body.iter().copied().filter(|&c| b.cell(c).kind.contains(t)).collect();
            let mut cosets: Vec<u32> = vertices.iter().map(|&w| b.ball().coset_min_rep(w, ctx.u_minus_t())).collect();
            cosets.sort_unstable();
            cosets.dedup();
            Collar { boundary: cells, vertices, body, inner, cosets }
        })
        .collect()
}

/// Collars grouped by the color of their vertices. Collars whose vertices carry
/// several colors are listed under each.
pub fn color_classes(coloring: &Coloring, collars: &[Collar]) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in collars.iter().enumerate() {
        let mut colors: Vec<usize> = c.vertices.iter().filter_map(|&w| coloring.color_of(w)).collect();
        colors.sort_unstable();
        colors.dedup();
        for col in colors {
            out.entry(col).or_default().push(i);
        }
    }
    out
}

/// Union of the bodies of the given collars.
pub fn union_of_bodies<'a, I: IntoIterator<Item = &'a Collar>>(collars: I) -> Vec<u32> {
    let mut out: Vec<u32> = collars.into_iter().flat_map(|c| c.body.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Intersection of two sorted cell sets.
pub fn color_intersection(f: &[u32], g: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < f.len() && j < g.len() {
        match f[i].cmp(&g[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(f[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Observed relation between boundary components and cosets of `W_{U−t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetPattern {
    pub components: usize,
    pub single_coset_components: usize,
    pub distinct_cosets: usize,
}

pub fn coset_pattern(collars: &[Collar]) -> CosetPattern {
    let mut all: Vec<u32> = collars.iter().flat_map(|c| c.cosets.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    CosetPattern {
        components: collars.len(),
        single_coset_components: collars.iter().filter(|c| c.cosets.len() == 1).count(),
        distinct_cosets: all.len(),
    }
}

/// `(U, t)` context together with the types of `K(U)`.
#[derive(Clone, Debug)]
pub struct OneLetter {
    pub ctx: RuinContext,
    pub chamber_types: Vec<GenSet>,
}

impl OneLetter {
    pub fn new(b: &BallComplex, t: Gen) -> Self {
        let ctx = ruin_context(b.matrix(), t);
        let chamber_types = b.chamber_types(Some((ctx.u, t)));
        OneLetter { ctx, chamber_types }
    }

    /// Cells `mW_V` with `V` a type of `K(U)` and `m ∈ W_U`.
    pub fn chamber_cells<'b>(&'b self, b: &'b BallComplex) -> impl Iterator<Item = (u32, Cell)> + 'b {
        b.cells().iter().enumerate().filter_map(move |(i, &c)| {
            (self.chamber_types.contains(&c.kind) && b.ball().element(c.rep).support().is_subset(self.ctx.u))
                .then_some((i as u32, c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sysb(radius: usize) -> BallComplex {
        BallComplex::new(&fixtures::load(fixtures::SYS_B), radius)
    }

    #[test]
    fn degenerate_ruin() {
        let b = sysb(3);
        let u = b.matrix().all();
        let r = build_ruin(&b, u, GenSet::EMPTY).unwrap();
        assert_eq!(r.omega, b.all_cells());
        assert!(r.boundary.is_empty());
        assert!(build_ruin(&b, u, b.matrix().gen_set(&["t", "r"]).unwrap()).is_err());
    }

    #[test]
    fn strip_ruin_shape() {
        let b = sysb(4);
        let m = b.matrix();
        let t = m.generator("t").unwrap();
        let r = build_ruin(&b, m.all(), GenSet::singleton(t)).unwrap();
        let tops: Vec<String> = r
            .omega
            .iter()
            .filter(|&&c| b.cell(c).kind.len() == 2 && b.cell(c).rep == 0)
            .map(|&c| b.describe(c))
            .collect();
        assert_eq!(tops, vec!["e·W{t,s}", "e·W{t,q}"]);
        for &c in &r.boundary {
            assert!(r.hat.binary_search(&c).is_ok());
        }
    }

    #[test]
    fn colors_of_the_four_cycle() {
        let b = sysb(5);
        let m = b.matrix();
        let t = m.generator("t").unwrap();
        let col = color_vertices(&b, t).unwrap();
        assert_eq!(col.color_of(0), Some(0));
        let idx = |w: &[&str]| {
            let word: Vec<Gen> = w.iter().map(|n| m.generator(n).unwrap()).collect();
            b.ball().index_of_word(&Word(word)).unwrap()
        };
        // Elements without t are painted ē.
        for w in [idx(&["s"]), idx(&["q"]), idx(&["s", "q", "s"])] {
            assert_eq!(col.color_of(w), Some(0));
        }
        assert_ne!(col.color_of(idx(&["t", "s", "t"])), col.color_of(idx(&["t"])));
        assert_eq!(col.info(idx(&["t", "s", "t"])).unwrap().parity, Parity::Even);
        assert!(col.even_colors() >= 2 && col.odd_colors() >= 2);
    }

    #[test]
    fn collars_cover_and_are_monochromatic() {
        let b = sysb(4);
        let t = b.matrix().generator("t").unwrap();
        let comps = ruin_components(&b, t);
        assert_eq!(comps[0].coset(), 0);
        let omega = &comps[0];
        let cs = collars(&b, t, omega);
        let col = color_vertices(&b, t).unwrap();
        for c in &cs {
            let colors: std::collections::BTreeSet<_> = c.vertices.iter().map(|&w| col.color_of(w)).collect();
            assert_eq!(colors.len(), 1);
            assert!(color_intersection(&c.inner, &c.boundary).is_empty());
            assert_eq!(color_intersection(&c.body, &c.boundary), c.boundary);
        }
        assert_eq!(color_intersection(&union_of_bodies(&cs), &omega.cells), omega.cells);
    }

    #[test]
    fn right_angled_has_one_even_and_one_odd_color() {
        let c = fixtures::load(fixtures::SYS_C);
        let b = BallComplex::new(&c, 3);
        for t in 0..c.rank() as Gen {
            let col = color_vertices(&b, t).unwrap();
            assert_eq!((col.even_colors(), col.odd_colors()), (1, 1));
        }
        let z = BallComplex::new(&c, 0);
        assert_eq!(color_vertices(&z, 0).unwrap().palette.len(), 1);
    }
}
