use std::collections::{BTreeMap, BTreeSet, HashSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::{build_ruin, color_vertices, OneLetter};
use crate::coxeter::{alternating, CoxeterGroup, Element, FiniteParabolic, Gen, GenSet, Order, Word};
use crate::davis::{BallComplex, Cell};
use crate::{Error, Result};

/// Local structure of a ball truncation of a 2-dimensional (or any) Davis complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldReport {
    pub radius: usize,
    pub expected_dimension: usize,
    pub dimension: usize,
    pub top_cells: usize,
    pub pure: bool,
    pub interior_faces: usize,
    pub bad_faces: Vec<String>,
    pub connected: bool,
}

impl ManifoldReport {
    pub fn passed(&self) -> bool {
        self.dimension == self.expected_dimension && self.pure && self.bad_faces.is_empty() && self.connected
    }
}

fn manifold_check(b: &BallComplex) -> ManifoldReport {
    let d = b.poset().dimension();
    let depth = b.depth();
    let r = b.radius();
    let tops: Vec<GenSet> = b.poset().subsets().iter().copied().filter(|t| t.len() == d).collect();
    let interior = |id: u32| b.rep_len(id) + depth <= r;
    let mut pure = true;
    let mut interior_faces = 0;
    let mut bad_faces = Vec::new();
    for (id, c) in b.cells().iter().enumerate() {
        let id = id as u32;
        if !interior(id) {
            continue;
        }
        if !tops.iter().any(|&t| c.kind.is_subset(t) && b.cell_of(c.rep, t).is_some()) {
            pure = false;
        }
        if d > 0 && c.kind.len() == d - 1 {
            interior_faces += 1;
            let n = tops
                .iter()
                .filter(|&&t| c.kind.is_subset(t) && b.cell_of(c.rep, t).is_some())
                .count();
            if n != 2 {
                bad_faces.push(format!("{} lies in {n} top cells", b.describe(id)));
            }
        }
    }
    let mut uf = UnionFind::<u32>::new(b.ball().len());
    for c in b.cells().iter().filter(|c| c.kind.len() == 1) {
        let g = c.kind.iter().next().expect("singleton");
        if let Some(w) = b.ball().mul_gen(c.rep, g) {
            uf.union(c.rep, w);
        }
    }
    let root = uf.find(0);
    let connected = (0..b.ball().len() as u32).all(|w| uf.find(w) == root);
    ManifoldReport {
        radius: r,
        expected_dimension: d,
        dimension: b.cells().iter().map(|c| c.kind.len()).max().unwrap_or(0),
        top_cells: b.cells().iter().filter(|c| c.kind.len() == d).count(),
        pure,
        interior_faces,
        bad_faces,
        connected,
    }
}

/// Intersection of the collars of `e` and of a `t`-even element, compared with
/// `W'K'` and with a ball of `Σ(W', U_st)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvensReport {
    pub t: String,
    pub s: String,
    pub m_st: u32,
    pub u_st: Vec<String>,
    pub radius: usize,
    pub probes: Vec<String>,
    pub cells_checked: usize,
    pub intersection_cells: usize,
    pub intersection_types: BTreeMap<String, usize>,
    pub mismatches: Vec<String>,
    pub subsystem_radius: Option<usize>,
    pub subsystem_cells: usize,
    pub isomorphic: bool,
    pub isomorphism_failure: Option<String>,
    pub manifold: Option<ManifoldReport>,
}

impl EvensReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.isomorphic && self.manifold.as_ref().is_none_or(ManifoldReport::passed)
    }
}

/// The `u` attached to each `t`-even `x ∈ W_{s,t}`: `x` itself when it has a
/// reduced expression ending in `t`, `xs` otherwise.
pub(crate) fn even_probes(group: &CoxeterGroup, s: Gen, t: Gen) -> Result<Vec<Element>> {
    let p = FiniteParabolic::new(group.matrix(), GenSet::from_gens([s, t]))?;
    let m = p.words().last().map_or(0, |w| w.len());
    let mut out = BTreeSet::new();
    for w in p.words() {
        let c = w.count(t);
        if c < 2 || c % 2 == 1 || !w.support().contains(s) {
            continue;
        }
        let ends_in_t = w.last() == Some(&t) || w.len() == m;
        let u = if ends_in_t { group.normal_form(w) } else { group.normal_form(&w.concat(&[s])) };
        out.insert(u);
    }
    Ok(out.into_iter().collect())
}

pub fn verify_evens_isomorphism(b: &BallComplex, s: Gen, t: Gen) -> Result<EvensReport> {
    let m = b.matrix();
    m.require_even()?;
    let one = OneLetter::new(b, t);
    if !one.ctx.s_prime.contains(s) {
        return Err(Error::NotInSPrime(m.name(s).into(), m.name(t).into()));
    }
    let m_st = m.m(s, t).finite().expect("s ∈ S'");
    let u_st = one.ctx.u_st[&s];
    let st = GenSet::from_gens([s, t]);
    let group = CoxeterGroup::new(m.clone());
    let coloring = color_vertices(b, t)?;
    let collar = |w: u32| coloring.info(w).expect("vertex of W_U").collar;

    let mut probes = Vec::new();
    let mut probe_collars = Vec::new();
    for u in even_probes(&group, s, t)? {
        let rep = group.coset_min_rep(&u, one.ctx.u_minus_t());
        if let Some(idx) = b.ball().index_of(&rep) {
            probes.push(group.format(&u));
            probe_collars.push(idx);
        }
    }

    let mut cells_checked = 0;
    let mut mismatches = Vec::new();
    let mut intersection = Vec::new();
    for (id, c) in one.chamber_cells(b) {
        cells_checked += 1;
        let collars: HashSet<u32> = b.vertices(id).into_iter().map(collar).collect();
        let in_wk = st.is_subset(c.kind) && b.ball().element(c.rep).support().is_subset(u_st);
        if in_wk {
            intersection.push(id);
        }
        for (p, &pc) in probes.iter().zip(&probe_collars) {
            let in_both = collars.contains(&0) && collars.contains(&pc);
            if in_both != in_wk {
                mismatches.push(format!(
                    "{}: in D0∩D({p}) = {in_both}, in W'K' = {in_wk}",
                    b.describe(id)
                ));
            }
        }
    }
    let mut intersection_types = BTreeMap::new();
    for &id in &intersection {
        *intersection_types.entry(m.format_set(b.cell(id).kind)).or_insert(0) += 1;
    }

    // Relabel T ↦ T − {s,t} into the special subgroup on U_st.
    let sub_matrix = m.restrict(u_st);
    let local: Vec<Gen> = u_st.iter().collect();
    let to_local = |g: Gen| local.iter().position(|&x| x == g).expect("letter of U_st") as Gen;
    let subsystem_radius = b.radius().checked_sub(m_st as usize);
    let (mut isomorphic, mut isomorphism_failure, mut subsystem_cells, mut manifold) = (true, None, 0, None);
    match subsystem_radius {
        None => {
            if !intersection.is_empty() {
                isomorphic = false;
                isomorphism_failure = Some("non-empty intersection below radius m_st".into());
            }
        }
        Some(r) => {
            let sub = BallComplex::new(&sub_matrix, r);
            subsystem_cells = sub.len();
            let mut image = HashSet::new();
            let mut phi = std::collections::HashMap::new();
            for &id in &intersection {
                let c = b.cell(id);
                let word = Word(b.ball().element(c.rep).word().iter().map(|&g| to_local(g)).collect());
                let kind: GenSet = c.kind.difference(st).iter().map(to_local).collect();
                let target = sub
                    .ball()
                    .index_of_word(&word)
                    .and_then(|rep| sub.id_of(Cell { rep, kind }));
                match target {
                    Some(x) if image.insert(x) => {
                        phi.insert(id, x);
                    }
                    _ => {
                        isomorphic = false;
                        isomorphism_failure.get_or_insert_with(|| format!("{} has no distinct image", b.describe(id)));
                    }
                }
            }
            if isomorphic && image.len() != sub.len() {
                isomorphic = false;
                isomorphism_failure = Some(format!("{} cells map onto {} of {}", intersection.len(), image.len(), sub.len()));
            }
            if isomorphic {
                for (&id, &x) in &phi {
                    let mut mapped: Vec<u32> = b.faces(id).into_iter().filter_map(|f| phi.get(&f).copied()).collect();
                    mapped.sort_unstable();
                    if mapped != sub.faces(x) {
                        isomorphic = false;
                        isomorphism_failure = Some(format!("faces of {} differ", b.describe(id)));
                        break;
                    }
                }
            }
            if sub.poset().dimension() > 0 {
                let depth = sub.depth();
                manifold = Some(manifold_check(&BallComplex::new(&sub_matrix, r.max(depth + 2))));
            }
        }
    }

    Ok(EvensReport {
        t: m.name(t).into(),
        s: m.name(s).into(),
        m_st,
        u_st: m.set_names(u_st),
        radius: b.radius(),
        probes,
        cells_checked,
        intersection_cells: intersection.len(),
        intersection_types,
        mismatches,
        subsystem_radius,
        subsystem_cells,
        isomorphic,
        isomorphism_failure,
        manifold,
    })
}

/// The cell-set identities behind the two excision isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcisionReport {
    pub v: Vec<String>,
    pub t: Vec<String>,
    pub cells_compared: usize,
    pub first: bool,
    /// One entry per `s ∈ T`.
    pub second: Vec<(String, bool)>,
}

impl ExcisionReport {
    pub fn passed(&self) -> bool {
        self.first && self.second.iter().all(|(_, ok)| *ok)
    }
}

fn minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    let drop: HashSet<u32> = b.iter().copied().collect();
    a.iter().copied().filter(|x| !drop.contains(x)).collect()
}

fn sigma(b: &BallComplex, v: GenSet) -> Vec<u32> {
    (0..b.len() as u32).filter(|&i| b.cell(i).kind.is_subset(v)).collect()
}

pub fn verify_excision(b: &BallComplex, v: GenSet, t: GenSet) -> Result<ExcisionReport> {
    let m = b.matrix();
    let ruin = build_ruin(b, v, t)?;
    let sig = sigma(b, v);
    let first = minus(&ruin.omega, &ruin.boundary) == minus(&sig, &ruin.hat);
    let mut second = Vec::new();
    for s in t.iter() {
        let t2 = t.without(s);
        let lhs = minus(&sigma(b, v.without(s)), &build_ruin(b, v.without(s), t2)?.hat);
        let rhs = minus(&ruin.hat, &build_ruin(b, v, t2)?.hat);
        second.push((m.name(s).to_owned(), lhs == rhs));
    }
    Ok(ExcisionReport { v: m.set_names(v), t: m.set_names(t), cells_compared: sig.len(), first, second })
}

/// One shared-face pattern `T' = F ∪ {r}`, `T'' = F ∪ {q}` and its adjacency walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkPattern {
    pub face: Vec<String>,
    pub r: String,
    pub q: String,
    pub m_rq: String,
    pub walk: Vec<String>,
    pub walk_length: usize,
    pub exited: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Codim1Report {
    pub v: Vec<String>,
    pub t: Vec<String>,
    pub radius: usize,
    pub top_types: Vec<String>,
    pub top_cells: usize,
    pub faces_checked: usize,
    pub shared_face_types: Vec<String>,
    pub free_face_types: Vec<String>,
    pub patterns: Vec<WalkPattern>,
    pub failures: Vec<String>,
}

impl Codim1Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.patterns.iter().all(|p| p.m_rq == "inf" && p.exited)
    }
}

/// Labels codimension-one faces of top cells of `Ω(V,T)` as shared or free,
/// and walks each shared pattern out of the ball.
pub fn classify_codim1_faces(b: &BallComplex, v: GenSet, t: GenSet) -> Result<Codim1Report> {
    let m = b.matrix();
    if t.len() != 2 {
        return Err(Error::NotTwoLetter(m.format_set(t)));
    }
    if !t.is_subset(v) || !b.poset().contains(t) {
        return Err(Error::InvalidRuinType(m.format_set(t), m.format_set(v)));
    }
    let poset = b.poset();
    let d = poset.dimension();
    let tops: Vec<GenSet> = poset.within(v).filter(|x| x.len() == d && t.is_subset(*x)).collect();
    let mut report = Codim1Report {
        v: m.set_names(v),
        t: m.set_names(t),
        radius: b.radius(),
        top_types: tops.iter().map(|&x| m.format_set(x)).collect(),
        top_cells: 0,
        faces_checked: 0,
        shared_face_types: Vec::new(),
        free_face_types: Vec::new(),
        patterns: Vec::new(),
        failures: Vec::new(),
    };
    if tops.is_empty() {
        return Ok(report);
    }
    // Shared or free depends only on the type of the face.
    let mut shared: BTreeMap<GenSet, (Gen, Gen)> = BTreeMap::new();
    let mut free = BTreeSet::new();
    for &top in &tops {
        for y in top.iter() {
            let f = top.without(y);
            let in_sigma: Vec<Gen> = m.all().difference(f).iter().filter(|&z| poset.contains(f.with(z))).collect();
            let in_omega: Vec<Gen> =
                in_sigma.iter().copied().filter(|&z| v.contains(z) && t.is_subset(f.with(z))).collect();
            if in_sigma.len() != 2 {
                report.failures.push(format!("face type {} lies in {} top types", m.format_set(f), in_sigma.len()));
            }
            match in_omega.len() {
                1 => {
                    free.insert(f);
                }
                2 => {
                    shared.insert(f, (in_omega[0], in_omega[1]));
                }
                n => report.failures.push(format!("face type {} lies in {n} top types of Ω", m.format_set(f))),
            }
        }
    }
    // Top cells are counted by anchor: `mW_{T'}` with `m` a minimal
    // representative in the ball, whether or not the whole cell fits.
    let ball = b.ball();
    for &top in &tops {
        let p = FiniteParabolic::new(m, top)?;
        let per_cell: usize = top.iter().map(|y| p.min_reps(top.without(y)).len()).sum();
        let anchors = (0..ball.len() as u32).filter(|&w| ball.right_descents(w).intersection(top).is_empty()).count();
        report.top_cells += anchors;
        report.faces_checked += anchors * per_cell;
    }
    report.shared_face_types = shared.keys().map(|&f| m.format_set(f)).collect();
    report.free_face_types = free.iter().map(|&f| m.format_set(f)).collect();

    let group = CoxeterGroup::new(m.clone());
    for (&f, &(r, q)) in &shared {
        let m_rq = m.m(r, q);
        if m_rq != Order::Infinite {
            report.failures.push(format!("m({}, {}) = {m_rq} for shared face {}", m.name(r), m.name(q), m.format_set(f)));
        }
        let (t1, t2) = (f.with(r), f.with(q));
        let mut walk = Vec::new();
        let mut exited = false;
        let mut prev: Option<(Element, GenSet)> = None;
        let limit = 2 * b.radius() + 4;
        for i in 0..limit {
            let elem = if i == 0 { group.identity() } else { group.normal_form(&alternating(q, r, i - 1)) };
            let kind = if i % 2 == 0 { t1 } else { t2 };
            let anchor = group.coset_min_rep(&elem, kind);
            if let Some((pe, pk)) = &prev {
                // Consecutive cells share the face `elem·W_F`.
                if group.coset_min_rep(&elem, *pk) != group.coset_min_rep(pe, *pk) {
                    report.failures.push(format!("walk step {i} is not adjacent"));
                }
            }
            if anchor.len() > b.radius() || i + 1 == limit {
                exited = anchor.len() > b.radius();
                break;
            }
            walk.push(format!("{}·W{}", group.format(&anchor), m.format_set(kind)));
            prev = Some((elem, kind));
        }
        report.patterns.push(WalkPattern {
            face: m.set_names(f),
            r: m.name(r).into(),
            q: m.name(q).into(),
            m_rq: m_rq.to_string(),
            walk_length: walk.len(),
            walk,
            exited,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn four_cycle_collars_meet_in_a_point() {
        let m = fixtures::load(fixtures::SYS_B);
        let b = BallComplex::new(&m, 5);
        let (s, t) = (m.generator("s").unwrap(), m.generator("t").unwrap());
        let r = verify_evens_isomorphism(&b, s, t).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.intersection_cells, 1);
        assert_eq!(r.subsystem_cells, 1);
        assert!(r.manifold.is_none());
        let q = m.generator("q").unwrap();
        assert!(matches!(verify_evens_isomorphism(&b, q, t), Err(Error::NotInSPrime(..))));
    }

    #[test]
    fn probes_follow_the_casework() {
        let m = fixtures::load(fixtures::SYS_B);
        let g = CoxeterGroup::new(m.clone());
        let (s, t) = (m.generator("s").unwrap(), m.generator("t").unwrap());
        let names: Vec<String> = even_probes(&g, s, t).unwrap().iter().map(|u| g.format(u)).collect();
        assert_eq!(names, vec!["t s t", "t s t s"]);
    }

    #[test]
    fn excision_identities() {
        let m = fixtures::load(fixtures::SYS_B);
        let b = BallComplex::new(&m, 4);
        let t = m.generator("t").unwrap();
        assert!(verify_excision(&b, m.all(), GenSet::singleton(t)).unwrap().passed());
        assert!(verify_excision(&b, m.all(), GenSet::EMPTY).unwrap().passed());
        let ts = m.gen_set(&["t", "s"]).unwrap();
        let rep = verify_excision(&b, m.all(), ts).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.second.len(), 2);
        assert!(verify_excision(&b, m.gen_set(&["t", "r"]).unwrap(), ts).is_err());
    }

    #[test]
    fn two_letter_faces_of_the_square() {
        let m = fixtures::load(fixtures::SYS_B);
        let b = BallComplex::new(&m, 4);
        let ts = m.gen_set(&["t", "s"]).unwrap();
        let rep = classify_codim1_faces(&b, m.all(), ts).unwrap();
        // Top cells of Ω(S,{t,s}) are the 2-cells of type {t,s}; both edges are free.
        assert!(rep.patterns.is_empty());
        assert_eq!(rep.free_face_types.len(), 2);
        assert!(classify_codim1_faces(&b, m.all(), GenSet::singleton(0)).is_err());
    }
}
