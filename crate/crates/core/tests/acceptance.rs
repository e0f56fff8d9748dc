//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines are always printed; exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use evencox::coxeter::{enumerate_ball, CoxeterGroup, CoxeterMatrix, Gen, GenSet};
use evencox::davis::BallComplex;
use evencox::fixtures;
use evencox::homology::{format_rational, homology, orbihedral_euler, relative_homology, ChainComplex, Simplex};
use evencox::nerve::{nerve_of, sphere_check};
use evencox::ruins::{
    build_ruin, classify_codim1_faces, run_battery, run_lemma, verify_evens_isomorphism, verify_excision,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let e = start.elapsed();
    ensure(e <= limit, format!("took {e:.2?}, limit {limit:.0?}"))
}

/// Dihedral group of order `2m` acting on the vertices of an `m`-gon:
/// `s: i ↦ −i`, `t: i ↦ 1 − i`.
fn polygon_perm(word: &[Gen], m: i64) -> Vec<i64> {
    (0..m)
        .map(|mut i| {
            for &g in word.iter().rev() {
                i = if g == 0 { -i } else { 1 - i }.rem_euclid(m);
            }
            i
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (text, m, order) in [(fixtures::SYS_A, 4, 8), (fixtures::I2_6, 6, 12)] {
        let mat = fixtures::load(text);
        let ball = enumerate_ball(&mat, 3 * m as usize);
        ensure(ball.len() == order, format!("ball has {} elements, expected {order}", ball.len()))?;
        let g = CoxeterGroup::new(mat.clone());
        let perms: Vec<Vec<i64>> = ball.elements().iter().map(|e| polygon_perm(e.word(), m)).collect();
        ensure(perms.iter().collect::<BTreeSet<_>>().len() == order, "oracle does not separate elements")?;
        let by_perm: HashMap<&Vec<i64>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for a in ball.elements() {
            for b in ball.elements() {
                let ab = g.multiply(a, b);
                let word: Vec<Gen> = a.word().iter().chain(b.word().iter()).copied().collect();
                let oracle = by_perm[&polygon_perm(&word, m)];
                ensure(ball.elements()[oracle] == ab, format!("{} · {} disagrees", g.format(a), g.format(b)))?;
            }
        }
        notes.push(format!("{order}"));
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("ball sizes {} and {}, {} pair products match the polygon oracle", notes[0], notes[1], 64 + 144))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let b = nerve_of(&fixtures::load(fixtures::SYS_B));
    ensure(sphere_check(&b, 1).passed(), "SYS-B nerve is not a 1-sphere")?;
    let d = nerve_of(&fixtures::load(fixtures::SYS_D));
    ensure(d.is_flag(), "SYS-D nerve is not flag")?;
    let r = sphere_check(&d, 3);
    ensure(r.passed(), format!("SYS-D nerve fails: {:?}", r.failed_condition))?;
    ensure(!nerve_of(&fixtures::load(fixtures::HOLLOW)).is_flag(), "hollow triangle is flag")?;
    within(start, Duration::from_secs(1))?;
    Ok("S¹ for SYS-B, flag S³ for SYS-D, hollow triangle not flag".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let m = fixtures::load(fixtures::SYS_D);
    let l = nerve_of(&m);
    let depth = BallComplex::new(&m, 0).depth();
    let b = BallComplex::new(&m, depth + 1);
    let mut safe = 0;
    for w in 0..b.ball().len() as u32 {
        if let Ok(link) = b.vertex_link(w) {
            safe += 1;
            ensure(link.faces() == l.faces(), format!("link of vertex {w} differs from L"))?;
        }
    }
    ensure(safe > 0, "no safe vertices")?;
    let chamber = b.chamber(0, None);
    let h = homology(&ChainComplex::from_simplices(b.order_complex(&chamber)).map_err(|e| e.to_string())?);
    let mut expected = vec![0; h.betti.len()];
    expected[0] = 1;
    ensure(h.betti == expected && h.torsion.iter().all(Vec::is_empty), format!("chamber betti {:?}", h.betti))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("radius {}: {safe} safe vertices with link = L; chamber betti {:?}", depth + 1, h.betti))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (name, text, radius) in [("SYS-B", fixtures::SYS_B, 5), ("SYS-D", fixtures::SYS_D, 3)] {
        let m = fixtures::load(text);
        let b = BallComplex::new(&m, radius);
        let reports = run_battery(&b, None).map_err(|e| e.to_string())?;
        for r in &reports {
            ensure(r.passed(), format!("{name} lemma {}: {:?}", r.lemma, r.failures.first()))?;
        }
        for id in ["2.1", "2.2", "3.3", "3.5", "3.6", "3.10", "two-even-colors", "excision"] {
            let r = reports.iter().find(|r| r.lemma == id).expect("battery id");
            ensure(r.instances_checked > 0, format!("{name} lemma {id} checked nothing"))?;
        }
        // The excision pairs, spelled out.
        let all = m.all();
        for t in all.iter() {
            let single = GenSet::singleton(t);
            let mut pairs = vec![(all, single)];
            for s in all.without(t).iter() {
                if b.poset().contains(single.with(s)) {
                    pairs.push((all, single.with(s)));
                }
                pairs.push((all.without(s), single));
            }
            for (v, tt) in pairs {
                let rep = verify_excision(&b, v, tt).map_err(|e| e.to_string())?;
                ensure(rep.passed(), format!("{name} excision {rep:?}"))?;
            }
        }
        let total: usize = reports.iter().map(|r| r.instances_checked).sum();
        let vacuous: Vec<&str> =
            reports.iter().filter(|r| r.instances_checked == 0).map(|r| r.lemma.as_str()).collect();
        summary.push(format!(
            "{name} r={radius}: {} checks, {total} instances, vacuous: {}",
            reports.len(),
            if vacuous.is_empty() { "none".to_string() } else { vacuous.join(",") }
        ));
    }
    let d = fixtures::load(fixtures::SYS_D);
    for (id, radius) in [("2.1", 5), ("2.2", 6)] {
        let r = run_lemma(&BallComplex::new(&d, radius), id, None).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.instances_checked > 0, format!("SYS-D r={radius} lemma {id}: {:?}", r.failures.first()))?;
        summary.push(format!("SYS-D r={radius} {id}: {} instances", r.instances_checked));
    }
    let json = std::env::temp_dir().join(format!("evencox-acceptance-{}.json", std::process::id()));
    let status = evencox::cli::run(["evencox", "--json", json.to_str().expect("utf-8 path"), "all", "--radius", "5", "sysb"]);
    let _ = std::fs::remove_file(&json);
    ensure(status == 0, format!("`all` exited with {status}"))?;
    summary.push(format!("{:.1?}", start.elapsed()));
    Ok(summary.join("; "))
}

fn criterion_5() -> Outcome {
    let m = fixtures::load(fixtures::SYS_D);
    let b = BallComplex::new(&m, 6);
    let r = verify_evens_isomorphism(&b, m.generator("s1").unwrap(), m.generator("t1").unwrap())
        .map_err(|e| e.to_string())?;
    ensure(r.mismatches.is_empty(), format!("D0∩D2 ≠ W'K': {:?}", r.mismatches.first()))?;
    ensure(r.isomorphic, format!("not isomorphic: {:?}", r.isomorphism_failure))?;
    ensure(r.intersection_cells > 1, "intersection is trivial")?;
    let man = r.manifold.as_ref().ok_or("no manifold report")?;
    ensure(man.passed() && man.dimension == 2 && man.interior_faces > 0, format!("{man:?}"))?;

    let mb = fixtures::load(fixtures::SYS_B);
    let bb = BallComplex::new(&mb, 5);
    let rb = verify_evens_isomorphism(&bb, mb.generator("s").unwrap(), mb.generator("t").unwrap())
        .map_err(|e| e.to_string())?;
    ensure(rb.passed() && rb.intersection_cells == 1, format!("SYS-B intersection {rb:?}"))?;
    ensure(rb.intersection_types.keys().eq(["{t,s}"]), "SYS-B intersection is not a {s,t} cell")?;
    Ok(format!(
        "SYS-D: {} cells ≅ Σ(W',U_st) ball (r={}), pure 2-dim, {} interior edges in 2 faces; SYS-B: one {{s,t}} cell",
        r.intersection_cells,
        r.subsystem_radius.unwrap_or(0),
        man.interior_faces
    ))
}

fn criterion_6() -> Outcome {
    let m = fixtures::load(fixtures::SYS_D);
    let b = BallComplex::new(&m, 4);
    let t = m.gen_set(&["t1", "s1"]).unwrap();
    let r = classify_codim1_faces(&b, m.all(), t).map_err(|e| e.to_string())?;
    ensure(r.failures.is_empty(), format!("{:?}", r.failures))?;
    ensure(!r.patterns.is_empty(), "no shared-face pattern")?;
    ensure(r.patterns.iter().all(|p| p.m_rq == "inf"), "a shared pattern has finite m_rq")?;
    let best = r.patterns.iter().filter(|p| p.exited).map(|p| p.walk_length).max().unwrap_or(0);
    ensure(best >= 4, format!("longest exiting walk has length {best}"))?;
    Ok(format!(
        "{} shared patterns (m_rq = ∞), {} free face types, walk length {best} before exit",
        r.patterns.len(),
        r.free_face_types.len()
    ))
}

fn criterion_7() -> Outcome {
    let chi = |text: &str| orbihedral_euler(&fixtures::load(text));
    let want = [
        ("SYS-B", fixtures::SYS_B, "-1/4"),
        ("SYS-C", fixtures::SYS_C, "-1/4"),
        ("SYS-D", fixtures::SYS_D, "1/16"),
        ("SYS-E", fixtures::SYS_E, "0"),
    ];
    for (name, text, value) in want {
        let got = format_rational(&chi(text));
        ensure(got == value, format!("{name}: {got}, expected {value}"))?;
    }
    let b = chi(fixtures::SYS_B);
    ensure(chi(fixtures::SYS_D) == &b * &b, "χ(SYS-D) ≠ χ(SYS-B)²")?;
    for (name, text) in fixtures::ALL {
        let m = fixtures::load(text);
        let l = nerve_of(&m);
        if m.is_even() && l.is_flag() && sphere_check(&l, 3).passed() {
            ensure(!chi(text).is_negative(), format!("{name} has negative χ_orb"))?;
        }
    }
    Ok("-1/4, -1/4, 1/16, 0; D = B²; χ_orb ≥ 0 on even flag S³ fixtures".into())
}

/// Rank over ℚ by Gaussian elimination, independent of the SNF code.
fn rational_rank(rows: usize, cols: &[Vec<(u32, i64)>]) -> usize {
    let mut a = vec![vec![BigRational::zero(); cols.len()]; rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            a[i as usize][j] = BigRational::from_integer(v.into());
        }
    }
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][c].clone();
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() * inv.clone();
            for k in c..cols.len() {
                let d = a[rank][k].clone() * f.clone();
                a[r][k] -= d;
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_betti(x: &ChainComplex) -> Vec<usize> {
    let dims = x.dims();
    let ranks: Vec<usize> = (0..=dims.len())
        .map(|k| {
            let m = x.boundary(k);
            rational_rank(m.rows, &m.cols)
        })
        .collect();
    (0..dims.len()).map(|k| dims[k] - ranks[k] - ranks[k + 1]).collect()
}

fn fixture_complexes() -> Vec<(String, Vec<Simplex>)> {
    let mut out = Vec::new();
    for (name, text) in fixtures::ALL {
        let m: CoxeterMatrix = fixtures::load(text);
        let l = nerve_of(&m);
        let simplices: Vec<Simplex> = l
            .faces()
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| f.iter().map(u32::from).collect())
            .collect();
        out.push((format!("nerve {name}"), simplices));
        for radius in [1, 2] {
            let b = BallComplex::new(&m, radius);
            out.push((format!("Σ {name} r={radius}"), b.order_complex(&b.all_cells())));
        }
        let b = BallComplex::new(&m, 4);
        out.push((format!("chamber {name}"), b.order_complex(&b.chamber(0, None))));
    }
    out.retain(|(_, s)| !s.is_empty() && s.len() <= 500);
    out
}

fn criterion_8() -> Outcome {
    let complexes = fixture_complexes();
    for (name, s) in &complexes {
        let x = ChainComplex::from_simplices(s.clone()).map_err(|e| format!("{name}: {e}"))?;
        ensure(x.boundary_squares_to_zero(), format!("{name}: ∂∂ ≠ 0"))?;
        let h = homology(&x);
        ensure(h.betti == oracle_betti(&x), format!("{name}: {:?} vs oracle {:?}", h.betti, oracle_betti(&x)))?;
        let rel = relative_homology(s.clone(), s.clone()).map_err(|e| e.to_string())?;
        ensure(rel.is_zero(), format!("{name}: H(X,X) ≠ 0"))?;
        let abs = relative_homology(s.clone(), Vec::new()).map_err(|e| e.to_string())?;
        ensure(abs == h, format!("{name}: H(X,∅) ≠ H(X)"))?;
    }
    // A relative pair from a ruin.
    let m = fixtures::load(fixtures::SYS_B);
    let b = BallComplex::new(&m, 2);
    let r = build_ruin(&b, m.all(), GenSet::singleton(0)).map_err(|e| e.to_string())?;
    let q = ChainComplex::quotient(b.order_complex(&r.omega), b.order_complex(&r.boundary)).map_err(|e| e.to_string())?;
    ensure(q.boundary_squares_to_zero() && homology(&q).betti == oracle_betti(&q), "ruin pair disagrees")?;
    Ok(format!("{} fixture complexes agree with the ℚ-rank oracle", complexes.len() + 1))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("word engine oracle", criterion_1),
        ("nerve battery", criterion_2),
        ("Davis links", criterion_3),
        ("lemma battery", criterion_4),
        ("evens intersection", criterion_5),
        ("two-letter face structure", criterion_6),
        ("Euler characteristics", criterion_7),
        ("homology solver", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("acceptance {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
