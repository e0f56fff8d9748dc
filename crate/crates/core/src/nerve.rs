//! The nerve `L`, flag and sphere checks, links, and the generator sets attached
//! to a one-letter ruin.

use std::collections::{BTreeMap, HashSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::coxeter::{cmp_gen_sets, CoxeterMatrix, Gen, GenSet, Order, SphericalPoset};
use crate::homology::{homology, ChainComplex};
use crate::{Error, Result};

/// Abstract simplicial complex on a set of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: GenSet,
    faces: Vec<GenSet>,
    lookup: HashSet<GenSet>,
}

impl SimplicialComplex {
    /// Smallest complex containing `faces` (closed under non-empty subsets) plus
    /// every listed vertex.
    pub fn generated_by<I: IntoIterator<Item = GenSet>>(vertices: GenSet, faces: I) -> Self {
        let mut lookup: HashSet<GenSet> = vertices.iter().map(GenSet::singleton).collect();
        for f in faces {
            for sub in f.subsets() {
                if !sub.is_empty() {
                    lookup.insert(sub);
                }
            }
        }
        let vertices = lookup.iter().fold(vertices, |acc, f| acc.union(*f));
        let mut faces: Vec<GenSet> = lookup.iter().copied().collect();
        faces.sort_by(cmp_gen_sets);
        SimplicialComplex { vertices, faces, lookup }
    }

    pub fn vertices(&self) -> GenSet {
        self.vertices
    }

    /// Non-empty faces ordered by size, then input order.
    pub fn faces(&self) -> &[GenSet] {
        &self.faces
    }

    pub fn contains(&self, f: GenSet) -> bool {
        self.lookup.contains(&f)
    }

    /// Maximum face size minus one; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.len() as isize - 1)
    }

    /// Number of faces per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; (self.dimension() + 1).max(0) as usize];
        for f in &self.faces {
            out[f.len() - 1] += 1;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = GenSet> + '_ {
        self.faces.iter().copied().filter(move |f| f.len() == k + 1)
    }

    /// Facets: faces contained in no larger face.
    pub fn facets(&self) -> Vec<GenSet> {
        self.faces
            .iter()
            .copied()
            .filter(|f| !self.vertices.difference(*f).iter().any(|v| self.contains(f.with(v))))
            .collect()
    }

    /// Every set of pairwise adjacent vertices spans a face.
    pub fn is_flag(&self) -> bool {
        // Grow cliques one vertex at a time; a clique that is not a face refutes flagness,
        // and every clique is reached from a smaller face.
        for f in &self.faces {
            for v in self.vertices.difference(*f).iter() {
                if f.iter().all(|u| self.contains(GenSet::from_gens([u, v]))) && !self.contains(f.with(v)) {
                    return false;
                }
            }
        }
        true
    }

    /// `{G : G ∩ F = ∅, G ∪ F ∈ L}`.
    pub fn link(&self, f: GenSet) -> Result<SimplicialComplex> {
        if !self.contains(f) {
            return Err(Error::NotAFace(format!("{:?}", f.iter().collect::<Vec<_>>())));
        }
        let faces: Vec<GenSet> = self
            .faces
            .iter()
            .copied()
            .filter(|g| g.intersection(f).is_empty() && self.contains(g.union(f)))
            .collect();
        let vertices = faces.iter().fold(GenSet::EMPTY, |acc, g| acc.union(*g));
        Ok(SimplicialComplex::generated_by(vertices, faces))
    }

    pub fn is_connected(&self) -> bool {
        let verts: Vec<Gen> = self.vertices.iter().collect();
        if verts.len() <= 1 {
            return true;
        }
        let pos: BTreeMap<Gen, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::<usize>::new(verts.len());
        for e in self.faces_of_dim(1) {
            let mut it = e.iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            uf.union(pos[&a], pos[&b]);
        }
        let root = uf.find(0);
        (1..verts.len()).all(|i| uf.find(i) == root)
    }

    /// Number of `(k+1)`-faces containing each `k`-face.
    fn cofaces(&self, f: GenSet) -> usize {
        self.vertices.difference(f).iter().filter(|&v| self.contains(f.with(v))).count()
    }

    /// Simplicial chain complex, vertices numbered by generator index.
    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::from_simplices(self.faces.iter().map(|f| f.iter().map(u32::from).collect()))
            .expect("face sets are closed")
    }

    /// Join with a complex on disjoint vertices.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        assert!(self.vertices.intersection(other.vertices).is_empty(), "join needs disjoint vertex sets");
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().copied());
        for a in &self.faces {
            for b in &other.faces {
                faces.push(a.union(*b));
            }
        }
        SimplicialComplex::generated_by(self.vertices.union(other.vertices), faces)
    }

    /// Same complex after renaming vertices by `f`.
    pub fn relabel(&self, f: impl Fn(Gen) -> Gen) -> SimplicialComplex {
        let map = |s: GenSet| s.iter().map(&f).collect::<GenSet>();
        SimplicialComplex::generated_by(map(self.vertices), self.faces.iter().map(|&s| map(s)))
    }
}

/// `L = 𝒮_{>∅}`.
pub fn build_nerve(poset: &SphericalPoset) -> SimplicialComplex {
    let vertices = poset.subsets().iter().fold(GenSet::EMPTY, |acc, t| acc.union(*t));
    SimplicialComplex::generated_by(vertices, poset.subsets().iter().copied().filter(|t| !t.is_empty()))
}

pub fn nerve_of(matrix: &CoxeterMatrix) -> SimplicialComplex {
    build_nerve(&SphericalPoset::new(matrix))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of the sphere battery: the first failing condition, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereReport {
    pub dim: usize,
    pub verdict: Verdict,
    pub failed_condition: Option<String>,
}

impl SphereReport {
    fn pass(dim: usize) -> Self {
        SphereReport { dim, verdict: Verdict::Pass, failed_condition: None }
    }

    fn fail(dim: usize, why: String) -> Self {
        SphereReport { dim, verdict: Verdict::Fail, failed_condition: Some(why) }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Combinatorial-manifold and homology-sphere battery for `n ∈ {1, 2, 3}`.
///
/// This recognizes closed combinatorial `n`-manifolds with the homology of
/// `Sⁿ`; for `n ≤ 2` that is exactly the sphere.
pub fn sphere_check(l: &SimplicialComplex, n: usize) -> SphereReport {
    assert!((1..=3).contains(&n), "sphere_check supports n = 1, 2, 3");
    let fail = |why: String| SphereReport::fail(n, why);
    if l.dimension() != n as isize {
        return fail(format!("dimension is {}, expected {n}", l.dimension()));
    }
    if let Some(f) = l.facets().into_iter().find(|f| f.len() != n + 1) {
        return fail(format!("not pure: facet of dimension {}", f.len() - 1));
    }
    if !l.is_connected() {
        return fail("not connected".into());
    }
    if let Some(f) = l.faces_of_dim(n - 1).find(|&f| l.cofaces(f) != 2) {
        return fail(format!("a {}-face lies in {} {}-faces", n - 1, l.cofaces(f), n));
    }
    if n >= 2 {
        for v in l.vertices().iter() {
            let link = l.link(GenSet::singleton(v)).expect("vertex is a face");
            let sub = sphere_check(&link, n - 1);
            if !sub.passed() {
                return fail(format!(
                    "link of vertex {v} is not a {}-sphere: {}",
                    n - 1,
                    sub.failed_condition.unwrap_or_default()
                ));
            }
        }
    }
    let chi = l.euler_characteristic();
    let expected = if n.is_multiple_of(2) { 2 } else { 0 };
    if chi != expected {
        return fail(format!("Euler characteristic {chi}, expected {expected}"));
    }
    if n == 3 {
        let h = homology(&l.chain_complex());
        if h.betti != vec![1, 0, 0, 1] || h.torsion.iter().any(|t| !t.is_empty()) {
            return fail(format!("homology betti {:?} torsion {:?}", h.betti, h.torsion));
        }
    }
    SphereReport::pass(n)
}

/// Generator sets attached to a one-letter ruin at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuinContext {
    pub t: Gen,
    /// `{s : m_st < ∞}`, containing `t`.
    pub u: GenSet,
    /// `{s ∈ U : 2 < m_st < ∞}`.
    pub s_prime: GenSet,
    /// `s ↦ {r : m_rt = m_rs = 2}` for `s ∈ S'`.
    pub u_st: BTreeMap<Gen, GenSet>,
}

impl RuinContext {
    pub fn u_minus_t(&self) -> GenSet {
        self.u.without(self.t)
    }
}

pub fn ruin_context(matrix: &CoxeterMatrix, t: Gen) -> RuinContext {
    let all = matrix.all();
    let u: GenSet = all.iter().filter(|&s| s == t || !matrix.m(s, t).is_infinite()).collect();
    let s_prime: GenSet = u
        .iter()
        .filter(|&s| matches!(matrix.m(s, t), Order::Finite(m) if m > 2))
        .collect();
    let u_st = s_prime
        .iter()
        .map(|s| (s, commuting_with_both(matrix, s, t)))
        .collect();
    RuinContext { t, u, s_prime, u_st }
}

/// `{r : m_rt = m_rs = 2}`.
pub fn commuting_with_both(matrix: &CoxeterMatrix, s: Gen, t: Gen) -> GenSet {
    matrix
        .all()
        .iter()
        .filter(|&r| matrix.m(r, t) == Order::Finite(2) && matrix.m(r, s) == Order::Finite(2))
        .collect()
}
