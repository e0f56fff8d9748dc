//! Finite truncations of the Davis complex, as posets of spherical cosets.
//!
//! A coset `wW_T` with minimal representative `w` has elements `w·u`, `u ∈ W_T`,
//! of length `l(w) + l(u)`. It is kept in the radius-`R` truncation iff
//! `l(w) + l(w_T) ≤ R`, `w_T` the longest element of `W_T`, i.e. iff all of its
//! vertices lie in the ball.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::coxeter::{
    cmp_gen_sets, is_spherical, CayleyBall, CoxeterGroup, CoxeterMatrix, Element, FiniteParabolic, Gen, GenSet,
    SphericalPoset,
};
use crate::homology::Simplex;
use crate::nerve::SimplicialComplex;
use crate::{Error, Result};

/// A coset `wW_T` with `T` spherical, stored by its minimal representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SphericalCoset {
    pub rep: Element,
    pub kind: GenSet,
}

impl Ord for SphericalCoset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep.cmp(&other.rep).then_with(|| cmp_gen_sets(&self.kind, &other.kind))
    }
}

impl PartialOrd for SphericalCoset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(coset_min_rep(w, T), T)`.
pub fn canonical_coset(group: &CoxeterGroup, w: &Element, t: GenSet) -> Result<SphericalCoset> {
    if !is_spherical(group.matrix(), t) {
        return Err(Error::NotSpherical(group.matrix().format_set(t)));
    }
    Ok(SphericalCoset { rep: group.coset_min_rep(w, t), kind: t })
}

/// A cell of a ball complex: minimal representative (a ball index) and type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub rep: u32,
    pub kind: GenSet,
}

/// The cells of `W𝒮` whose vertices all lie in the ball of radius `R`.
#[derive(Clone, Debug)]
pub struct BallComplex {
    matrix: CoxeterMatrix,
    poset: SphericalPoset,
    ball: CayleyBall,
    parabolics: HashMap<GenSet, FiniteParabolic>,
    cells: Vec<Cell>,
    index: HashMap<Cell, u32>,
}

impl BallComplex {
    pub fn new(matrix: &CoxeterMatrix, radius: usize) -> Self {
        Self::with_ball(matrix, CayleyBall::new(matrix, radius))
    }

    pub fn with_ball(matrix: &CoxeterMatrix, ball: CayleyBall) -> Self {
        let radius = ball.radius();
        let poset = SphericalPoset::new(matrix);
        let mut parabolics = HashMap::new();
        let mut cells = Vec::new();
        for &t in poset.subsets() {
            let longest = poset.longest_of(t).expect("listed subset");
            if longest > radius {
                continue;
            }
            parabolics.insert(t, FiniteParabolic::new(matrix, t).expect("spherical subset"));
            let last = ball.layer(radius - longest).end;
            for w in 0..last as u32 {
                if ball.right_descents(w).intersection(t).is_empty() {
                    cells.push(Cell { rep: w, kind: t });
                }
            }
        }
        // Sorting by size of type first makes the id order a linear extension of
        // the face order.
        cells.sort_by(|a, b| {
            (a.kind.len(), a.rep)
                .cmp(&(b.kind.len(), b.rep))
                .then_with(|| cmp_gen_sets(&a.kind, &b.kind))
        });
        let index = cells.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        BallComplex { matrix: matrix.clone(), poset, ball, parabolics, cells, index }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn poset(&self) -> &SphericalPoset {
        &self.poset
    }

    pub fn ball(&self) -> &CayleyBall {
        &self.ball
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    /// Longest length of a spherical element.
    pub fn depth(&self) -> usize {
        self.poset.depth()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: u32) -> Cell {
        self.cells[id as usize]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.ball.len()
    }

    pub fn id_of(&self, cell: Cell) -> Option<u32> {
        self.index.get(&cell).copied()
    }

    /// Length of the minimal representative of a cell.
    pub fn rep_len(&self, id: u32) -> usize {
        self.ball.element(self.cells[id as usize].rep).len()
    }

    /// The finite group `W_T` for a type that fits in the ball.
    pub fn parabolic(&self, t: GenSet) -> Option<&FiniteParabolic> {
        self.parabolics.get(&t)
    }

    /// The cell `wW_T` for a ball element `w`, if it lies in the truncation.
    pub fn cell_of(&self, w: u32, t: GenSet) -> Option<u32> {
        self.id_of(Cell { rep: self.ball.coset_min_rep(w, t), kind: t })
    }

    /// The cell `wW_T`, or an error naming the missing coset.
    pub fn require_cell(&self, w: u32, t: GenSet) -> Result<u32> {
        self.cell_of(w, t).ok_or_else(|| {
            Error::MissingCell(format!(
                "{}·W_{}",
                self.matrix.format_word(self.ball.element(w).word()),
                self.matrix.format_set(t)
            ))
        })
    }

    /// Ball indices of the vertices of a cell.
    pub fn vertices(&self, id: u32) -> Vec<u32> {
        let c = self.cells[id as usize];
        if c.kind.is_empty() {
            return vec![c.rep];
        }
        let p = &self.parabolics[&c.kind];
        p.words()
            .iter()
            .map(|u| self.ball.mul_word(c.rep, u).expect("cell vertices lie in the ball"))
            .collect()
    }

    /// Faces of type `v ⊆ T`: one per coset of `W_V` in `W_T`.
    pub fn faces_of_type(&self, id: u32, v: GenSet) -> Vec<u32> {
        let c = self.cells[id as usize];
        debug_assert!(v.is_subset(c.kind));
        if c.kind.is_empty() {
            return vec![id];
        }
        let p = &self.parabolics[&c.kind];
        p.min_reps(v)
            .into_iter()
            .map(|u| {
                let rep = self.ball.mul_word(c.rep, p.word(u)).expect("cell vertices lie in the ball");
                self.index[&Cell { rep, kind: v }]
            })
            .collect()
    }

    /// All proper faces of a cell.
    pub fn faces(&self, id: u32) -> Vec<u32> {
        let t = self.cells[id as usize].kind;
        let mut out: Vec<u32> = t
            .subsets()
            .filter(|&v| v != t)
            .flat_map(|v| self.faces_of_type(id, v))
            .collect();
        out.sort_unstable();
        out
    }

    /// `a ≤ b` in the coset order: `V ⊆ T` and `aW_T = bW_T`.
    pub fn is_face(&self, a: u32, b: u32) -> bool {
        let (ca, cb) = (self.cells[a as usize], self.cells[b as usize]);
        ca.kind.is_subset(cb.kind) && self.ball.coset_min_rep(ca.rep, cb.kind) == cb.rep
    }

    /// Number of cells per type, keyed by the type's generator names.
    pub fn cells_by_type(&self) -> BTreeMap<String, usize> {
        let mut counts: BTreeMap<usize, (String, usize)> = BTreeMap::new();
        for c in &self.cells {
            let pos = self.poset.position(c.kind).expect("cell types are spherical");
            counts.entry(pos).or_insert_with(|| (self.matrix.format_set(c.kind), 0)).1 += 1;
        }
        counts.into_values().collect()
    }

    /// Chains `c₀ < … < c_k` among the given cells, as increasing id lists.
    pub fn order_complex(&self, cells: &[u32]) -> Vec<Simplex> {
        let mut sorted = cells.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let member: HashMap<u32, usize> = sorted.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let below: Vec<Vec<u32>> = sorted
            .iter()
            .map(|&c| self.faces(c).into_iter().filter(|f| member.contains_key(f)).collect())
            .collect();
        let mut chains: Vec<Vec<Simplex>> = Vec::with_capacity(sorted.len());
        for (i, &c) in sorted.iter().enumerate() {
            let mut mine = vec![vec![c]];
            for f in &below[i] {
                for chain in &chains[member[f]] {
                    let mut ext = chain.clone();
                    ext.push(c);
                    mine.push(ext);
                }
            }
            chains.push(mine);
        }
        let mut out: Vec<Simplex> = chains.into_iter().flatten().collect();
        out.sort();
        out
    }

    /// Number of `k`-chains among the given cells, without listing them.
    pub fn order_complex_f_vector(&self, cells: &[u32]) -> Vec<u64> {
        let mut sorted = cells.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let member: HashMap<u32, usize> = sorted.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut counts: Vec<Vec<u64>> = Vec::with_capacity(sorted.len());
        let mut total: Vec<u64> = Vec::new();
        for &c in &sorted {
            let mut mine = vec![1u64];
            for f in self.faces(c) {
                if let Some(&j) = member.get(&f) {
                    for (k, &n) in counts[j].iter().enumerate() {
                        if mine.len() <= k + 1 {
                            mine.resize(k + 2, 0);
                        }
                        mine[k + 1] += n;
                    }
                }
            }
            if total.len() < mine.len() {
                total.resize(mine.len(), 0);
            }
            for (k, &n) in mine.iter().enumerate() {
                total[k] += n;
            }
            counts.push(mine);
        }
        total
    }

    /// Ids of every cell.
    pub fn all_cells(&self) -> Vec<u32> {
        (0..self.cells.len() as u32).collect()
    }

    /// Types of the cells of `K(U)`: subsets of some `T' ∈ 𝒮(U)` containing `t`.
    pub fn chamber_types(&self, filter: Option<(GenSet, Gen)>) -> Vec<GenSet> {
        match filter {
            None => self.poset.subsets().to_vec(),
            Some((u, t)) => {
                let tops: Vec<GenSet> = self.poset.within(u).filter(|x| x.contains(t)).collect();
                self.poset
                    .subsets()
                    .iter()
                    .copied()
                    .filter(|x| tops.iter().any(|top| x.is_subset(*top)))
                    .collect()
            }
        }
    }

    /// The translate `wK` (or `wK(U)` under a `(U, t)` filter), as the cells
    /// `wW_T` present in the truncation.
    pub fn chamber(&self, w: u32, filter: Option<(GenSet, Gen)>) -> Vec<u32> {
        let mut out: Vec<u32> =
            self.chamber_types(filter).into_iter().filter_map(|t| self.cell_of(w, t)).collect();
        out.sort_unstable();
        out
    }

    /// A vertex is safe when every spherical coset through it fits in the ball.
    pub fn is_safe(&self, w: u32) -> bool {
        self.ball.element(w).len() + self.depth() <= self.radius()
    }

    /// Link of a vertex: the types `T` with `wW_T` a cell.
    pub fn vertex_link(&self, w: u32) -> Result<SimplicialComplex> {
        let length = self.ball.element(w).len();
        if !self.is_safe(w) {
            return Err(Error::UnsafeVertex {
                vertex: self.matrix.format_word(self.ball.element(w).word()),
                length,
                depth: self.depth(),
                radius: self.radius(),
            });
        }
        let faces: Vec<GenSet> = self
            .poset
            .subsets()
            .iter()
            .copied()
            .filter(|&t| !t.is_empty() && self.cell_of(w, t).is_some())
            .collect();
        let vertices = faces.iter().fold(GenSet::EMPTY, |acc, f| acc.union(*f));
        Ok(SimplicialComplex::generated_by(vertices, faces))
    }

    /// The cube `{wW_V : V ⊆ T}` of a cell `wW_T`.
    pub fn cube(&self, w: u32, t: GenSet) -> Result<Vec<u32>> {
        self.require_cell(w, t)?;
        let mut out: Vec<u32> = t.subsets().map(|v| self.cell_of(w, v).expect("faces of a cell exist")).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Human-readable name `w·W_T` of a cell.
    pub fn describe(&self, id: u32) -> String {
        let c = self.cells[id as usize];
        format!(
            "{}·W{}",
            self.matrix.format_word(self.ball.element(c.rep).word()),
            self.matrix.format_set(c.kind)
        )
    }
}

pub fn build_ball_complex(matrix: &CoxeterMatrix, radius: usize) -> BallComplex {
    BallComplex::new(matrix, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::{homology, ChainComplex};
    use crate::nerve::nerve_of;

    #[test]
    fn octagon() {
        let a = fixtures::load(fixtures::SYS_A);
        let b = BallComplex::new(&a, 4);
        assert_eq!(b.len(), 8 + 8 + 1);
        let oc = b.order_complex(&b.all_cells());
        let f: Vec<usize> = (1..=3).map(|k| oc.iter().filter(|s| s.len() == k).count()).collect();
        assert_eq!(f, vec![17, 32, 16]);
        assert_eq!(b.order_complex_f_vector(&b.all_cells()), vec![17, 32, 16]);
        let h = homology(&ChainComplex::from_simplices(oc).unwrap());
        assert_eq!(h.betti, vec![1, 0, 0]);
    }

    #[test]
    fn small_radius_truncation() {
        let a = fixtures::load(fixtures::SYS_A);
        let b = BallComplex::new(&a, 1);
        assert_eq!(b.cells_by_type().into_iter().collect::<Vec<_>>(), vec![("{s}".into(), 1), ("{t}".into(), 1), ("{}".into(), 3)]);
        let z = BallComplex::new(&fixtures::load(fixtures::SYS_D), 0);
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn canonical_cosets() {
        let d = fixtures::load(fixtures::SYS_D);
        let g = CoxeterGroup::new(d.clone());
        let t1t2 = g.normal_form(&[0, 4]);
        let c = canonical_coset(&g, &t1t2, d.gen_set(&["t1", "s1"]).unwrap()).unwrap();
        assert_eq!(c.rep, g.generator(4));
        assert!(canonical_coset(&g, &t1t2, d.gen_set(&["t1", "r1"]).unwrap()).is_err());
    }

    #[test]
    fn links_and_cubes() {
        let b = fixtures::load(fixtures::SYS_B);
        let bc = BallComplex::new(&b, 5);
        assert_eq!(bc.vertex_link(0).unwrap(), nerve_of(&b));
        assert_eq!(bc.vertex_link(1).unwrap(), nerve_of(&b));
        assert!(matches!(BallComplex::new(&b, 1).vertex_link(0), Err(Error::UnsafeVertex { .. })));
        let ts = b.gen_set(&["t", "s"]).unwrap();
        assert_eq!(bc.cube(0, ts).unwrap().len(), 4);
        assert_eq!(bc.chamber(0, None).len(), 9);
        let u = b.gen_set(&["t", "s", "q"]).unwrap();
        assert_eq!(bc.chamber_types(Some((u, 0))).len(), 6);
    }

    #[test]
    fn chambers_meet_iff_the_difference_is_spherical() {
        let m = fixtures::load(fixtures::SYS_B);
        let g = CoxeterGroup::new(m.clone());
        let b = BallComplex::new(&m, 3 + BallComplex::new(&m, 0).depth());
        let n = b.ball().layer(3).end as u32;
        let chambers: Vec<Vec<u32>> = (0..n).map(|w| b.chamber(w, None)).collect();
        for w in 0..n {
            let inv = g.inverse(b.ball().element(w));
            for v in 0..n {
                let meet = chambers[w as usize].iter().any(|c| chambers[v as usize].binary_search(c).is_ok());
                let diff = g.multiply(&inv, b.ball().element(v)).support();
                assert_eq!(meet, crate::coxeter::is_spherical(&m, diff), "{w} {v}");
            }
        }
    }

    #[test]
    fn face_counts_match_indices() {
        let a = fixtures::load(fixtures::SYS_A);
        let b = BallComplex::new(&a, 4);
        let top = b.cell_of(0, a.all()).unwrap();
        for v in a.all().subsets().filter(|&v| v != a.all()) {
            let expected = 8 / b.poset().order_of(v).unwrap() as usize;
            assert_eq!(b.faces_of_type(top, v).len(), expected);
        }
        for &f in &b.faces(top) {
            assert!(b.is_face(f, top));
        }
    }
}
