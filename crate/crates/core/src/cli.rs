//! Command-line front end. Every subcommand emits a deterministic JSON
//! [`RunReport`]; exit status is `0` on success, `1` when a check fails and `2`
//! on usage or input errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coxeter::{CoxeterMatrix, Gen, GenSet};
use crate::davis::BallComplex;
use crate::homology::{format_rational, homology, orbihedral_euler, relative_homology, ChainComplex};
use crate::nerve::{nerve_of, sphere_check};
use crate::ruins::{
    build_ruin, collars, color_vertices, coset_pattern, render_svg, ruin_components, run_battery,
    run_lemma, verify_evens_isomorphism, ColorMap, LemmaReport,
};
use crate::{fixtures, Error, Result};

#[derive(Debug, Parser)]
#[command(name = "evencox", version, about = "Nerves, Davis complexes and ruins of even Coxeter systems")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// A `.cox` file, or the name of a bundled fixture (`sysb`, `sysd`, …).
    pub file: String,
}

#[derive(Debug, Args)]
pub struct Radius {
    /// Ball radius; defaults to 4 for rank ≤ 4 and 3 otherwise.
    #[arg(long)]
    pub radius: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Sigma,
    Ruin,
    Pair,
    Nerve,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and summarize a system.
    Validate(Input),
    /// Face counts of the nerve.
    Nerve(Input),
    /// Whether the nerve is a flag complex.
    Flag(Input),
    /// Combinatorial sphere check of the nerve.
    SphereCheck {
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Cells of a ball truncation and the links of its safe vertices.
    Ball {
        #[command(flatten)]
        radius: Radius,
        #[command(flatten)]
        input: Input,
    },
    /// The one-letter ruin at a generator, its collars and colors.
    Ruin {
        #[command(flatten)]
        radius: Radius,
        #[arg(long)]
        gen: Option<String>,
        /// Compare the collars of `e` and of a `t`-even element for this `s`.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Vertex colors of a one-letter ruin.
    Colors {
        #[command(flatten)]
        radius: Radius,
        #[arg(long)]
        gen: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Integer homology of a complex built from the system.
    Homology {
        #[arg(long, value_enum, default_value = "nerve")]
        target: Target,
        #[command(flatten)]
        radius: Radius,
        #[arg(long)]
        gen: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Euler characteristic of the nerve, or of the group with `--orbihedral`.
    Euler {
        #[arg(long)]
        orbihedral: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Run one lemma check, or `all` of them.
    Verify {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        gen: Option<String>,
        #[command(flatten)]
        radius: Radius,
        #[command(flatten)]
        input: Input,
    },
    /// Validation, nerve checks, Euler characteristics and the lemma battery.
    All {
        #[command(flatten)]
        radius: Radius,
        #[command(flatten)]
        input: Input,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Nerve(_) => "nerve",
            Command::Flag(_) => "flag",
            Command::SphereCheck { .. } => "sphere-check",
            Command::Ball { .. } => "ball",
            Command::Ruin { .. } => "ruin",
            Command::Colors { .. } => "colors",
            Command::Homology { .. } => "homology",
            Command::Euler { .. } => "euler",
            Command::Verify { .. } => "verify",
            Command::All { .. } => "all",
        }
    }

    fn input(&self) -> &Input {
        match self {
            Command::Validate(i) | Command::Nerve(i) | Command::Flag(i) => i,
            Command::SphereCheck { input, .. }
            | Command::Ball { input, .. }
            | Command::Ruin { input, .. }
            | Command::Colors { input, .. }
            | Command::Homology { input, .. }
            | Command::Euler { input, .. }
            | Command::Verify { input, .. }
            | Command::All { input, .. } => input,
        }
    }
}

/// One named check with its outcome and details.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(flatten)]
    pub detail: Value,
}

impl Verdict {
    fn new(check: impl Into<String>, pass: bool, detail: Value) -> Self {
        Verdict { check: check.into(), pass, detail }
    }

    fn info(check: impl Into<String>, detail: Value) -> Self {
        Self::new(check, true, detail)
    }

    fn lemma(r: LemmaReport) -> Self {
        let pass = r.passed();
        Verdict::new(format!("lemma {}", r.lemma), pass, json!(r))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub verdicts: Vec<Verdict>,
    /// Wall-clock time per phase; the only non-deterministic field.
    pub timing_ms: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Reads a `.cox` file, falling back to a bundled fixture name.
pub fn read_input(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")));
    }
    let key = arg.to_ascii_lowercase().replace('-', "");
    let key = key.trim_end_matches(".cox");
    fixtures::ALL
        .iter()
        .find(|(name, _)| name.to_ascii_lowercase().replace('-', "") == key)
        .map(|(_, text)| (*text).to_owned())
        .ok_or_else(|| Error::Io(format!("{arg}: no such file or bundled fixture")))
}

pub fn default_radius(matrix: &CoxeterMatrix) -> usize {
    if matrix.rank() <= 4 {
        4
    } else {
        3
    }
}

struct Timer(BTreeMap<String, u64>, Instant);

impl Timer {
    fn new() -> Self {
        Timer(BTreeMap::new(), Instant::now())
    }

    fn lap(&mut self, phase: &str) {
        self.0.insert(phase.into(), self.1.elapsed().as_millis() as u64);
        self.1 = Instant::now();
    }
}

fn generator(m: &CoxeterMatrix, name: &Option<String>) -> Result<Gen> {
    match name {
        Some(n) => m.generator(n),
        None => Ok(0),
    }
}

fn names(m: &CoxeterMatrix, sets: impl IntoIterator<Item = GenSet>) -> Vec<Vec<String>> {
    sets.into_iter().map(|s| m.set_names(s)).collect()
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let text = read_input(&cli.command.input().file)?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let mut timer = Timer::new();
    let m = CoxeterMatrix::parse(&text)?;
    timer.lap("parse");
    let radius = |r: &Radius| r.radius.unwrap_or_else(|| default_radius(&m));
    let mut verdicts = Vec::new();
    match &cli.command {
        Command::Validate(_) => verdicts.push(validate(&m)),
        Command::Nerve(_) => {
            let l = nerve_of(&m);
            verdicts.push(Verdict::info(
                "nerve",
                json!({
                    "dimension": l.dimension(),
                    "f_vector": l.f_vector(),
                    "euler_characteristic": l.euler_characteristic(),
                    "facets": names(&m, l.facets()),
                }),
            ));
        }
        Command::Flag(_) => verdicts.push(Verdict::new("flag", nerve_of(&m).is_flag(), json!({}))),
        Command::SphereCheck { dim, .. } => {
            let l = nerve_of(&m);
            let n = dim.unwrap_or(l.dimension().max(0) as usize);
            let r = sphere_check(&l, n);
            verdicts.push(Verdict::new("sphere-check", r.passed(), json!(r)));
        }
        Command::Ball { radius: r, .. } => verdicts.extend(ball(&m, radius(r), &mut timer)),
        Command::Ruin { radius: r, gen, pair, svg, .. } => {
            let b = BallComplex::new(&m, radius(r));
            timer.lap("ball");
            let t = generator(&m, gen)?;
            verdicts.push(ruin(&b, t)?);
            if let Some(s) = pair {
                let rep = verify_evens_isomorphism(&b, m.generator(s)?, t)?;
                verdicts.push(Verdict::new("evens-isomorphism", rep.passed(), json!(rep)));
            }
            if let Some(path) = svg {
                std::fs::write(path, render_svg(&b, t)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            timer.lap("ruin");
        }
        Command::Colors { radius: r, gen, .. } => {
            let b = BallComplex::new(&m, radius(r));
            timer.lap("ball");
            verdicts.push(colors(&b, generator(&m, gen)?)?);
            timer.lap("colors");
        }
        Command::Homology { target, radius: r, gen, .. } => {
            verdicts.push(homology_of(&m, *target, radius(r), generator(&m, gen)?)?);
            timer.lap("homology");
        }
        Command::Euler { orbihedral, .. } => {
            let mut detail = json!({ "nerve": nerve_of(&m).euler_characteristic() });
            if *orbihedral {
                detail["orbihedral"] = json!(format_rational(&orbihedral_euler(&m)));
            }
            verdicts.push(Verdict::info("euler", detail));
        }
        Command::Verify { lemma, gen, radius: r, .. } => {
            let b = BallComplex::new(&m, radius(r));
            timer.lap("ball");
            let t = gen.as_ref().map(|g| m.generator(g)).transpose()?;
            if lemma == "all" {
                verdicts.extend(run_battery(&b, t)?.into_iter().map(Verdict::lemma));
            } else {
                verdicts.push(Verdict::lemma(run_lemma(&b, lemma, t)?));
            }
            timer.lap("verify");
        }
        Command::All { radius: r, .. } => {
            verdicts.push(validate(&m));
            let l = nerve_of(&m);
            let n = l.dimension().max(0) as usize;
            verdicts.push(Verdict::info(
                "nerve",
                json!({ "flag": l.is_flag(), "sphere_check": sphere_check(&l, n), "f_vector": l.f_vector() }),
            ));
            verdicts.push(Verdict::info(
                "euler",
                json!({
                    "nerve": l.euler_characteristic(),
                    "orbihedral": format_rational(&orbihedral_euler(&m)),
                }),
            ));
            timer.lap("nerve");
            if m.is_even() {
                let b = BallComplex::new(&m, radius(r));
                timer.lap("ball");
                verdicts.extend(run_battery(&b, None)?.into_iter().map(Verdict::lemma));
                timer.lap("verify");
            }
        }
    }
    Ok(RunReport { command: cli.command.name().into(), input_digest: digest, verdicts, timing_ms: timer.0 })
}

fn validate(m: &CoxeterMatrix) -> Verdict {
    let poset = crate::coxeter::SphericalPoset::new(m);
    Verdict::info(
        "validate",
        json!({
            "generators": m.names(),
            "rank": m.rank(),
            "even": m.is_even(),
            "spherical_subsets": poset.len(),
            "dimension": poset.dimension(),
            "depth": poset.depth(),
            "canonical": m.to_cox(),
        }),
    )
}

fn ball(m: &CoxeterMatrix, radius: usize, timer: &mut Timer) -> Vec<Verdict> {
    let b = BallComplex::new(m, radius);
    timer.lap("ball");
    let l = nerve_of(m);
    let mut safe = 0;
    let mut bad = Vec::new();
    for w in 0..b.ball().len() as u32 {
        if let Ok(link) = b.vertex_link(w) {
            safe += 1;
            if link.faces() != l.faces() {
                bad.push(m.format_word(b.ball().element(w).word()));
            }
        }
    }
    timer.lap("links");
    vec![
        Verdict::info(
            "ball",
            json!({
                "radius": radius,
                "elements": b.ball().len(),
                "layer_sizes": b.ball().layer_sizes(),
                "depth": b.depth(),
                "cells": b.len(),
                "cells_by_type": b.cells_by_type(),
            }),
        ),
        Verdict::new("vertex-links", bad.is_empty(), json!({ "safe_vertices": safe, "mismatched": bad })),
    ]
}

fn ruin(b: &BallComplex, t: Gen) -> Result<Verdict> {
    let m = b.matrix();
    let r = build_ruin(b, m.all(), GenSet::singleton(t))?;
    let comps = ruin_components(b, t);
    let home = comps.iter().find(|c| c.coset() == 0).expect("the identity lies in Ω(S,t)");
    let cs = collars(b, t, home);
    let coloring = color_vertices(b, t)?;
    let collar_info: Vec<Value> = cs
        .iter()
        .map(|c| {
            let w = c.vertices[0];
            let info = coloring.info(w).expect("vertex of W_U");
            json!({
                "first_vertex": m.format_word(b.ball().element(w).word()),
                "vertices": c.vertices.len(),
                "boundary_cells": c.boundary.len(),
                "body_cells": c.body.len(),
                "inner_cells": c.inner.len(),
                "color": info.color,
                "parity": info.parity,
            })
        })
        .collect();
    let ctx = crate::nerve::ruin_context(m, t);
    Ok(Verdict::info(
        "ruin",
        json!({
            "t": m.name(t),
            "u": m.set_names(ctx.u),
            "s_prime": m.set_names(ctx.s_prime),
            "radius": b.radius(),
            "omega_cells": r.omega.len(),
            "boundary_cells": r.boundary.len(),
            "hat_cells": r.hat.len(),
            "components": comps.len(),
            "home_component_cells": home.cells.len(),
            "collars": collar_info,
            "coset_pattern": coset_pattern(&cs),
            "even_colors": coloring.even_colors(),
            "odd_colors": coloring.odd_colors(),
        }),
    ))
}

fn colors(b: &BallComplex, t: Gen) -> Result<Verdict> {
    let m = b.matrix();
    let coloring = color_vertices(b, t)?;
    let map = ColorMap::new(b, t)?;
    let palette: Vec<Value> = coloring
        .palette
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "id": i,
                "parity": coloring.parity_of_color(i),
                "cosets": map.words(c).iter().map(|w| m.format_word(w)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let vertices: Vec<Value> = coloring
        .vertices()
        .map(|w| {
            let info = coloring.info(w).expect("colored vertex");
            json!([m.format_word(b.ball().element(w).word()), info.color])
        })
        .collect();
    Ok(Verdict::info(
        "colors",
        json!({
            "t": m.name(t),
            "coordinates": names(m, coloring.coordinates.iter().copied()),
            "even_colors": coloring.even_colors(),
            "odd_colors": coloring.odd_colors(),
            "palette": palette,
            "vertices": vertices,
        }),
    ))
}

fn homology_of(m: &CoxeterMatrix, target: Target, radius: usize, t: Gen) -> Result<Verdict> {
    let (label, result) = match target {
        Target::Nerve => ("nerve", homology(&nerve_of(m).chain_complex())),
        Target::Sigma => {
            let b = BallComplex::new(m, radius);
            ("sigma", homology(&ChainComplex::from_simplices(b.order_complex(&b.all_cells()))?))
        }
        Target::Ruin | Target::Pair => {
            let b = BallComplex::new(m, radius);
            let r = build_ruin(&b, m.all(), GenSet::singleton(t))?;
            let x = b.order_complex(&r.omega);
            if target == Target::Ruin {
                ("ruin", homology(&ChainComplex::from_simplices(x)?))
            } else {
                ("pair", relative_homology(x, b.order_complex(&r.boundary))?)
            }
        }
    };
    Ok(Verdict::info("homology", json!({ "target": label, "radius": radius, "homology": result })))
}

/// Parses `args` (including the program name), runs, and writes the report.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let out = report.to_json();
    match &cli.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{out}"),
    }
    if report.passed() {
        0
    } else {
        1
    }
}
