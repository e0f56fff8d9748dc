use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::{classify_codim1_faces, collars, color_vertices, ruin_components, verify_evens_isomorphism, verify_excision};
use super::{ColorMap, Coloring, OneLetter};
use crate::coxeter::{alternating, braid_closure, CoxeterGroup, Gen, GenSet, Order, Parity};
use crate::davis::BallComplex;
use crate::nerve::{nerve_of, sphere_check};
use crate::{Error, Result};

const MAX_LISTED: usize = 25;

/// Outcome of one lemma check: `{lemma, instances_checked, failures}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub instances_checked: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    fn new(lemma: &str) -> Self {
        LemmaReport { lemma: lemma.into(), instances_checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.instances_checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        } else if self.failures.len() == MAX_LISTED {
            self.failures.push("further failures omitted".into());
        }
    }
}

/// Ids accepted by [`run_lemma`], in battery order.
pub fn lemma_ids() -> &'static [&'static str] {
    &[
        "2.1",
        "2.2",
        "3.1",
        "3.2",
        "3.3",
        "3.4",
        "3.5",
        "3.6",
        "3.7",
        "two-even-colors",
        "3.10",
        "monochromatic",
        "4.1",
        "excision",
    ]
}

/// Runs every check. `gen` restricts the one-letter checks to a single `t`.
pub fn run_battery(b: &BallComplex, gen: Option<Gen>) -> Result<Vec<LemmaReport>> {
    lemma_ids().iter().map(|id| run_lemma(b, id, gen)).collect()
}

pub fn run_lemma(b: &BallComplex, id: &str, gen: Option<Gen>) -> Result<LemmaReport> {
    let ts: Vec<Gen> = match gen {
        Some(t) => vec![t],
        None => b.matrix().all().iter().collect(),
    };
    let mut rep = LemmaReport::new(id);
    match id {
        "2.1" => left_of_t(b, &ts, &mut rep),
        "2.2" => reduction(b, &ts, &mut rep),
        "3.1" => s_prime_relations(b, &ts, &mut rep),
        "3.2" => commute(b, &ts, &mut rep),
        "3.3" => xy_reduced(b, &ts, &mut rep),
        "4.1" => two_letter_faces(b, &ts, &mut rep)?,
        "excision" => excision(b, &ts, &mut rep)?,
        _ => {
            if !lemma_ids().contains(&id) {
                return Err(Error::Usage(format!("unknown lemma `{id}`; expected one of {}", lemma_ids().join(", "))));
            }
            b.matrix().require_even()?;
            for &t in &ts {
                let one = OneLetter::new(b, t);
                let coloring = color_vertices(b, t)?;
                match id {
                    "3.4" => homomorphism(b, t, &one, &mut rep)?,
                    "3.5" => same_color_disjoint(b, &one, &coloring, &mut rep),
                    "3.6" | "3.7" => evens(b, t, &one, id, &mut rep)?,
                    "two-even-colors" => two_even_colors(b, t, &one, &coloring, &mut rep),
                    "3.10" => odd_meets_evens(b, t, &one, &coloring, &mut rep),
                    "monochromatic" => monochromatic(b, t, &one, &coloring, &mut rep),
                    _ => unreachable!("listed id"),
                }
            }
        }
    }
    Ok(rep)
}

fn name_word(b: &BallComplex, w: &[Gen]) -> String {
    b.matrix().format_word(w)
}

/// In `x = wtv` reduced with `w ∈ W_{S−t}` and `r ∈ S(w) − S(v)`, `m_rt ≠ 2`,
/// every `r` precedes every `t` in every reduced expression of `x`.
fn left_of_t(b: &BallComplex, ts: &[Gen], rep: &mut LemmaReport) {
    let m = b.matrix();
    for x in b.ball().elements() {
        let class = braid_closure(m, x.word());
        for &t in ts {
            if !x.support().contains(t) {
                continue;
            }
            let mut seen = HashSet::new();
            for word in &class {
                let i = word.iter().position(|&g| g == t).expect("t in support");
                let sw: GenSet = word[..i].iter().copied().collect();
                let sv: GenSet = word[i + 1..].iter().copied().collect();
                if !seen.insert((sw, sv)) {
                    continue;
                }
                for r in sw.difference(sv).iter().filter(|&r| m.m(r, t) != Order::Finite(2)) {
                    let ok = class.iter().all(|w| {
                        let last_r = w.iter().rposition(|&g| g == r);
                        let first_t = w.iter().position(|&g| g == t);
                        last_r < first_t
                    });
                    rep.check(ok, || {
                        format!("{}: some {} follows a {}", name_word(b, x.word()), m.name(r), m.name(t))
                    });
                }
            }
        }
    }
}

/// `tstw' = wtv` reduced with `S(v) ⊆ U_st ∪ {s,t}` forces `S(w) ⊆ U_st ∪ {s}`.
fn reduction(b: &BallComplex, ts: &[Gen], rep: &mut LemmaReport) {
    let m = b.matrix();
    if m.require_even().is_err() {
        return;
    }
    for &t in ts {
        let ctx = crate::nerve::ruin_context(m, t);
        for (&s, &u_st) in &ctx.u_st {
            let prefix = [t, s, t];
            let allowed_v = u_st.with(s).with(t);
            let allowed_w = u_st.with(s);
            for x in b.ball().elements() {
                if x.len() < 3 {
                    continue;
                }
                let class = braid_closure(m, x.word());
                if !class.iter().any(|w| w.starts_with(&prefix)) {
                    continue;
                }
                let mut seen = HashSet::new();
                for word in class.iter() {
                    let i = word.iter().position(|&g| g == t).expect("starts with t somewhere");
                    let sw: GenSet = word[..i].iter().copied().collect();
                    let sv: GenSet = word[i + 1..].iter().copied().collect();
                    if !sv.is_subset(allowed_v) || !seen.insert((sw, sv)) {
                        continue;
                    }
                    rep.check(sw.is_subset(allowed_w), || {
                        format!(
                            "{} = w t v with S(w) = {} ⊄ {}",
                            name_word(b, x.word()),
                            m.format_set(sw),
                            m.format_set(allowed_w)
                        )
                    });
                }
            }
        }
    }
}

fn flag(b: &BallComplex) -> bool {
    nerve_of(b.matrix()).is_flag()
}

/// Distinct elements of `S'` generate a free product.
fn s_prime_relations(b: &BallComplex, ts: &[Gen], rep: &mut LemmaReport) {
    let m = b.matrix();
    if !flag(b) {
        return;
    }
    for &t in ts {
        let sp: Vec<Gen> = crate::nerve::ruin_context(m, t).s_prime.iter().collect();
        for (i, &s) in sp.iter().enumerate() {
            for &s2 in &sp[i + 1..] {
                rep.check(m.m(s, s2).is_infinite(), || {
                    format!("t = {}: m({}, {}) = {}", m.name(t), m.name(s), m.name(s2), m.m(s, s2))
                });
            }
        }
    }
}

/// For `T ⊇ {s,t}` spherical, `T − {s,t}` commutes with `s` and `t`.
fn commute(b: &BallComplex, ts: &[Gen], rep: &mut LemmaReport) {
    let m = b.matrix();
    if !flag(b) {
        return;
    }
    for &t in ts {
        for s in crate::nerve::ruin_context(m, t).s_prime.iter() {
            let st = GenSet::from_gens([s, t]);
            for big in b.poset().above(st) {
                for u in big.difference(st).iter() {
                    rep.check(m.m(u, t) == Order::Finite(2) && m.m(u, s) == Order::Finite(2), || {
                        format!("{} in {} does not commute with {}, {}", m.name(u), m.format_set(big), m.name(s), m.name(t))
                    });
                }
            }
        }
    }
}

/// `tst…st` (odd length below `m_st`) is `(U−t, U−t)`-reduced.
fn xy_reduced(b: &BallComplex, ts: &[Gen], rep: &mut LemmaReport) {
    let m = b.matrix();
    let group = CoxeterGroup::new(m.clone());
    for &t in ts {
        let ctx = crate::nerve::ruin_context(m, t);
        for s in ctx.s_prime.iter() {
            let mst = m.m(s, t).finite().expect("s ∈ S'") as usize;
            for len in (1..mst.min(8)).step_by(2) {
                let u = group.normal_form(&alternating(t, s, len));
                rep.check(group.is_xy_reduced(&u, ctx.u_minus_t(), ctx.u_minus_t()), || {
                    format!("{} is not (U−t, U−t)-reduced", group.format(&u))
                });
            }
        }
    }
}

/// `g_UT` is a homomorphism and the color does not depend on the expression.
fn homomorphism(b: &BallComplex, t: Gen, one: &OneLetter, rep: &mut LemmaReport) -> Result<()> {
    let map = ColorMap::new(b, t)?;
    let ball = b.ball();
    let r = b.radius();
    let in_u: Vec<u32> =
        (0..ball.len() as u32).filter(|&w| ball.element(w).support().is_subset(one.ctx.u)).collect();
    let images: HashMap<u32, Vec<u32>> = in_u.iter().map(|&w| (w, map.images(ball.element(w).word()))).collect();
    for &x in &in_u {
        let e = ball.element(x);
        if e.len() > 6 {
            continue;
        }
        let c = map.color(e.word());
        for w in braid_closure(b.matrix(), e.word()) {
            rep.check(map.color(&w) == c, || format!("color of {} depends on the expression", name_word(b, &w)));
        }
    }
    for &a in &in_u {
        let la = ball.element(a).len();
        for &c in in_u.iter().take_while(|&&c| la + ball.element(c).len() <= r) {
            let Some(ac) = ball.mul_word(a, ball.element(c).word()) else { continue };
            let lhs = &images[&ac];
            for (i, (&x, &y)) in images[&a].iter().zip(&images[&c]).enumerate() {
                rep.check(lhs[i] == map.table(i).multiply(x, y), || {
                    format!(
                        "g_U{} fails on {} · {}",
                        b.matrix().format_set(map.coordinates[i]),
                        name_word(b, ball.element(a).word()),
                        name_word(b, ball.element(c).word())
                    )
                });
            }
        }
    }
    Ok(())
}

/// Vertices of one chamber cell with equal colors lie in one boundary component.
fn same_color_disjoint(b: &BallComplex, one: &OneLetter, coloring: &Coloring, rep: &mut LemmaReport) {
    for (id, _) in one.chamber_cells(b) {
        let mut by_color: HashMap<usize, u32> = HashMap::new();
        let mut ok = true;
        for w in b.vertices(id) {
            let info = coloring.info(w).expect("vertex of W_U");
            if *by_color.entry(info.color).or_insert(info.collar) != info.collar {
                ok = false;
            }
        }
        rep.check(ok, || format!("{} meets two collars of one color", b.describe(id)));
    }
}

fn evens(b: &BallComplex, t: Gen, one: &OneLetter, id: &str, rep: &mut LemmaReport) -> Result<()> {
    for s in one.ctx.s_prime.iter() {
        let r = verify_evens_isomorphism(b, s, t)?;
        let tag = format!("s = {}, t = {}", r.s, r.t);
        if id == "3.6" {
            rep.instances_checked += r.cells_checked * r.probes.len();
            for msg in r.mismatches {
                rep.fail(format!("{tag}: {msg}"));
            }
        } else {
            rep.check(r.isomorphic, || {
                format!("{tag}: {}", r.isomorphism_failure.clone().unwrap_or_default())
            });
            if let Some(man) = &r.manifold {
                rep.check(man.passed(), || format!("{tag}: truncation of Σ(W', U_st) is not a 2-manifold: {man:?}"));
            }
        }
    }
    Ok(())
}

/// A cell carrying two even colors has exactly one `{s,t}`, `s ∈ S'`, in its
/// type, and its differently colored even vertices differ by a `t`-even element.
fn two_even_colors(b: &BallComplex, t: Gen, one: &OneLetter, coloring: &Coloring, rep: &mut LemmaReport) {
    let m = b.matrix();
    let u = one.ctx.u;
    for (id, c) in b.cells().iter().enumerate() {
        let id = id as u32;
        if !c.kind.is_subset(u) || !b.ball().element(c.rep).support().is_subset(u) {
            continue;
        }
        rep.instances_checked += 1;
        let Some(p) = b.parabolic(c.kind) else { continue };
        let mut firsts: Vec<(usize, u32)> = Vec::new();
        for (local, w) in b.vertices(id).into_iter().enumerate() {
            let info = coloring.info(w).expect("vertex of W_U");
            if info.parity == Parity::Even && !firsts.iter().any(|&(col, _)| col == info.color) {
                firsts.push((info.color, local as u32));
            }
        }
        if firsts.len() < 2 {
            continue;
        }
        let candidates: Vec<Gen> =
            one.ctx.s_prime.iter().filter(|&s| c.kind.contains(s) && c.kind.contains(t)).collect();
        if candidates.len() != 1 {
            rep.fail(format!("{} carries two even colors with {} letters s", b.describe(id), candidates.len()));
            continue;
        }
        let s = candidates[0];
        for (i, &(_, a)) in firsts.iter().enumerate() {
            for &(_, x) in &firsts[i + 1..] {
                let v = p.word(p.multiply(p.inverse(a), x));
                let n = v.count(t);
                let ok = v.support().contains(s) && n >= 2 && n % 2 == 0;
                if !ok {
                    rep.fail(format!("{}: connecting element {} is not t-even", b.describe(id), m.format_word(v)));
                }
            }
        }
    }
}

/// A cell of an odd collar lies in the union of the even collars iff it lies in
/// the inner boundary of the odd collar.
fn odd_meets_evens(b: &BallComplex, t: Gen, one: &OneLetter, coloring: &Coloring, rep: &mut LemmaReport) {
    for (id, c) in one.chamber_cells(b) {
        let infos: Vec<_> = b.vertices(id).into_iter().map(|w| coloring.info(w).expect("vertex of W_U")).collect();
        let even = infos.iter().any(|i| i.parity == Parity::Even);
        let inner = c.kind.contains(t);
        let odd_collars: BTreeSet<u32> = infos.iter().filter(|i| i.parity == Parity::Odd).map(|i| i.collar).collect();
        for _ in odd_collars {
            rep.check(even == inner, || {
                format!("{}: meets evens = {even}, inner = {inner}", b.describe(id))
            });
        }
    }
}

/// `c(wx) = c(w)` for `x ∈ U − t`; observed boundary components carry one
/// color and lie in one coset of `W_{U−t}`.
fn monochromatic(b: &BallComplex, t: Gen, one: &OneLetter, coloring: &Coloring, rep: &mut LemmaReport) {
    let ball = b.ball();
    for w in coloring.vertices() {
        for x in one.ctx.u_minus_t().iter() {
            if let Some(wx) = ball.mul_gen(w, x) {
                rep.check(coloring.color_of(wx) == coloring.color_of(w), || {
                    format!("c({}) ≠ c({} {})", name_word(b, ball.element(wx).word()), name_word(b, ball.element(w).word()), b.matrix().name(x))
                });
            }
        }
    }
    let comps = ruin_components(b, t);
    let Some(home) = comps.iter().find(|c| c.coset() == 0) else { return };
    for collar in collars(b, t, home) {
        let colors: BTreeSet<_> = collar.vertices.iter().map(|&w| coloring.color_of(w)).collect();
        let first = name_word(b, ball.element(collar.vertices[0]).word());
        rep.check(colors.len() == 1, || format!("boundary component of {first} has {} colors", colors.len()));
        rep.check(collar.cosets.len() == 1, || {
            format!("boundary component of {first} meets {} cosets of W_(U−t)", collar.cosets.len())
        });
    }
}

fn two_letter_faces(b: &BallComplex, ts: &[Gen], rep: &mut LemmaReport) -> Result<()> {
    let m = b.matrix();
    // The face classification presumes that Σ is a manifold.
    let l = nerve_of(m);
    if !sphere_check(&l, l.dimension().max(0) as usize).passed() {
        return Ok(());
    }
    let mut done = BTreeSet::new();
    for &t in ts {
        for s in m.all().without(t).iter() {
            let st = GenSet::from_gens([s, t]);
            if !b.poset().contains(st) || !done.insert(st) {
                continue;
            }
            let r = classify_codim1_faces(b, m.all(), st)?;
            rep.instances_checked += r.faces_checked;
            let tag = m.format_set(st);
            for f in &r.failures {
                rep.fail(format!("T = {tag}: {f}"));
            }
            for p in r.patterns.iter().filter(|p| !p.exited) {
                rep.fail(format!("T = {tag}: walk along {}, {} stays in the ball", p.r, p.q));
            }
        }
    }
    Ok(())
}

fn excision(b: &BallComplex, ts: &[Gen], rep: &mut LemmaReport) -> Result<()> {
    let m = b.matrix();
    let all = m.all();
    let mut pairs = BTreeSet::new();
    for &t in ts {
        let single = GenSet::singleton(t);
        pairs.insert((all, single));
        for s in all.without(t).iter() {
            let st = single.with(s);
            if b.poset().contains(st) {
                pairs.insert((all, st));
            }
            pairs.insert((all.without(s), single));
        }
    }
    for (v, t) in pairs {
        let r = verify_excision(b, v, t)?;
        rep.check(r.passed(), || format!("V = {}, T = {}: {r:?}", m.format_set(v), m.format_set(t)));
    }
    Ok(())
}
