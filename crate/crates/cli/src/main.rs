//! `dtile`: classify, generate, verify and export dihedral sphere tilings.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dihedral_tiling::combinatorics::{classify, DEFAULT_C_MAX, MAX_GONALITY};
use dihedral_tiling::complex::{verify_combinatorial, Label, TilingComplex};
use dihedral_tiling::format::{to_obj, to_svg, FormatError, TilingFile};
use dihedral_tiling::generators::{self, GeneratorHandle, EARTH_MAP_FACE_COUNT_NOTE};
use dihedral_tiling::realization::{self, Embedding, SporadicKind};
use dihedral_tiling::trig::AngleSolution;
use serde_json::json;

#[derive(Parser)]
#[command(name = "dtile", version, about = "Dihedral tilings of the sphere by regular m-gons and rhombi")]
struct Cli {
    /// Tolerance for vertex sums, edge lengths and angles.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify tilings seeded by degree-3 vertices for one m.
    Classify {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = DEFAULT_C_MAX)]
        c_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build one tiling and write it as JSON.
    Generate {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Polygon size for prisms.
        #[arg(long)]
        m: Option<u32>,
        /// Earth-map parameter.
        #[arg(long)]
        c: Option<u32>,
        /// Prism radius (colatitude of the north polygon).
        #[arg(long)]
        r: Option<f64>,
        /// Embed on the sphere and store coordinates.
        #[arg(long)]
        realize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an OBJ mesh (implies --realize).
        #[arg(long)]
        obj: Option<PathBuf>,
        /// Also write an SVG picture (implies --realize).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a tiling JSON file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// List perfect matchings of the dodecahedron and their fusion classes.
    Matchings {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Prism,
    Earthmap,
    Snub1,
    Snub2,
    Snub3,
    Football,
}

/// Bad arguments or unreadable input; exits with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("writing to stdout"),
            }
        }
    }
}

fn cmd_classify(m: u32, c_max: u32, out: Option<&Path>) -> Result<ExitCode> {
    if !(5..=MAX_GONALITY).contains(&m) {
        return Err(usage(format!("--m must be in 5..={MAX_GONALITY}, got {m}")));
    }
    if c_max < 2 {
        return Err(usage(format!("--c-max must be at least 2, got {c_max}")));
    }
    let report = classify(m, c_max)?;
    for f in report.realized_families() {
        log::info!("m={m}: realized {f:?}");
    }
    emit(out, &serde_json::to_string_pretty(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

struct Generated {
    handle: GeneratorHandle,
    complex: TilingComplex,
    solution: Option<AngleSolution>,
    embedding: Option<Embedding>,
}

fn build(family: FamilyArg, m: Option<u32>, c: Option<u32>, r: Option<f64>, realize: bool) -> Result<Generated> {
    let handle = match family {
        FamilyArg::Prism => GeneratorHandle::Prism { m: m.ok_or_else(|| usage("prism needs --m"))? },
        FamilyArg::Earthmap => GeneratorHandle::EarthMap { c: c.ok_or_else(|| usage("earthmap needs --c"))? },
        FamilyArg::Snub1 => GeneratorHandle::SnubFusion { variant: 1 },
        FamilyArg::Snub2 => GeneratorHandle::SnubFusion { variant: 2 },
        FamilyArg::Snub3 => GeneratorHandle::SnubFusion { variant: 3 },
        FamilyArg::Football => GeneratorHandle::Football,
    };
    let complex = handle.build().map_err(|e| usage(e.to_string()))?;
    let (solution, embedding) = match handle {
        GeneratorHandle::Prism { m } => {
            let r = r.unwrap_or_else(|| realization::prism_radius_midpoint(m));
            let solution = realization::prism_solution(m, r).ok();
            let embedding = if realize {
                Some(realization::embed_prism(m, r).map_err(|e| usage(e.to_string()))?.1)
            } else {
                realization::prism_params(m, r).map_err(|e| usage(e.to_string()))?;
                None
            };
            (solution, embedding)
        }
        GeneratorHandle::EarthMap { c } => {
            eprintln!("note: {EARTH_MAP_FACE_COUNT_NOTE}");
            let s = realization::earth_map_solution(c)?;
            let e = if realize { Some(realization::embed_earth_map(c)?.1) } else { None };
            (Some(s), e)
        }
        GeneratorHandle::SnubFusion { .. } | GeneratorHandle::Football => {
            let kind = if handle == GeneratorHandle::Football { SporadicKind::Football } else { SporadicKind::SnubFusion };
            let s = realization::sporadic_solution(kind)?;
            let e = if realize { Some(realization::embed_generic(&complex, &s)?) } else { None };
            (Some(s), e)
        }
    };
    Ok(Generated { handle, complex, solution, embedding })
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    family: FamilyArg,
    m: Option<u32>,
    c: Option<u32>,
    r: Option<f64>,
    realize: bool,
    out: Option<&Path>,
    obj: Option<&Path>,
    svg: Option<&Path>,
    tol: f64,
) -> Result<ExitCode> {
    let realize = realize || obj.is_some() || svg.is_some();
    let g = build(family, m, c, r, realize)?;
    log::info!("{}: {} faces, {} vertices", g.handle, g.complex.face_count(), g.complex.vertex_count());
    if let (Some(e), Some(s)) = (&g.embedding, &g.solution) {
        let report = realization::verify_geometric(&g.complex, e, s, tol);
        if !report.passed() {
            log::warn!("{}: geometric check failed: {:?}", g.handle, report.failures);
        }
    }
    let file = TilingFile::from_complex(&g.complex, g.embedding.as_ref(), g.solution.as_ref())?;
    emit(out, &file.to_json())?;
    if let Some(e) = &g.embedding {
        if let Some(p) = obj {
            fs::write(p, to_obj(&g.complex, e)).with_context(|| format!("writing {}", p.display()))?;
        }
        if let Some(p) = svg {
            fs::write(p, to_svg(&g.complex, e)).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(input: &Path, tol: f64) -> Result<ExitCode> {
    let text = fs::read_to_string(input).map_err(|e| usage(format!("reading {}: {e}", input.display())))?;
    let file = TilingFile::from_json(&text).map_err(|e| usage(e.to_string()))?;
    let fail = |detail: String| -> Result<ExitCode> {
        emit(None, &json!({ "passed": false, "failures": [detail] }).to_string())?;
        Ok(ExitCode::from(1))
    };
    let t = match file.complex() {
        Ok(t) => t,
        Err(FormatError::Build(e)) => return fail(format!("{e:?}")),
        Err(e) => return Err(usage(e.to_string())),
    };
    let solution = match file.solution() {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let embedding = file.embedding().map_err(|e| usage(e.to_string()))?;

    let mut failures = Vec::new();
    if t.label_count(Label::Beta) != t.label_count(Label::Gamma) {
        failures.push("#β ≠ #γ".to_string());
    }
    let combinatorial = solution.as_ref().map(|s| verify_combinatorial(&t, s, tol));
    if let Some(r) = &combinatorial {
        failures.extend(r.failures.iter().cloned());
    }
    let geometric = match (&embedding, &solution) {
        (Some(e), Some(s)) => Some(realization::verify_geometric(&t, e, s, tol)),
        _ => None,
    };
    if let Some(r) = &geometric {
        failures.extend(r.failures.iter().cloned());
    }
    let report = json!({
        "passed": failures.is_empty(),
        "faces": t.face_count(),
        "vertices": t.vertex_count(),
        "census": t.vertex_census().iter().map(|(v, n)| (v.to_string(), *n)).collect::<std::collections::BTreeMap<_, _>>(),
        "combinatorial": combinatorial,
        "geometric": geometric,
        "failures": failures,
    });
    emit(None, &serde_json::to_string_pretty(&report)?)?;
    Ok(if failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_matchings(out: Option<&Path>) -> Result<ExitCode> {
    let classes = generators::fusion_classes()?;
    let matchings: Vec<_> = classes
        .matchings
        .iter()
        .zip(&classes.variant_of)
        .map(|(m, v)| json!({ "edges": m.edges, "variant": v }))
        .collect();
    let report = json!({
        "count": classes.matchings.len(),
        "classes": classes.codes.len(),
        "class_sizes": classes.class_sizes(),
        "representatives": classes.representatives,
        "matchings": matchings,
    });
    emit(out, &serde_json::to_string_pretty(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    match cli.command {
        Command::Classify { m, c_max, out } => cmd_classify(m, c_max, out.as_deref()),
        Command::Generate { family, m, c, r, realize, out, obj, svg } => {
            cmd_generate(family, m, c, r, realize, out.as_deref(), obj.as_deref(), svg.as_deref(), cli.tol)
        }
        Command::Verify { input } => cmd_verify(&input, cli.tol),
        Command::Matchings { out } => cmd_matchings(out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
