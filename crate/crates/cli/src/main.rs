//! `dessin`: topology of dessins, canonical metrics for finite Möbius groups
//! and the verification suite.

mod input;
mod report;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dessin_core::groups::conjugator_well_defined;
use dessin_core::metrics::{
    self, averaged_metric, chart_compatibility_defect, conjugated_metric, grid_points,
    hermitian_metric, invariance_defect, metric_distance, orbit_triple_metric, round_metric,
    CurvatureSample, MetricError, DEFAULT_SAMPLES, DEFAULT_STEP,
};
use dessin_core::schwarz_christoffel::TriangleMap;
use dessin_core::verify::{self, Scope, VerifyOptions};
use dessin_core::ConformalMetric;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use report::{Diagnostics, GridSummary, GroupSummary, RunReport};

/// A failed run and its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn verification(message: String) -> Self {
        Failure { code: 1, message }
    }

    pub fn input(message: String) -> Self {
        Failure { code: 2, message }
    }

    pub fn cyclic(message: String) -> Self {
        Failure { code: 3, message }
    }

    pub fn genus(message: String) -> Self {
        Failure { code: 4, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "dessin",
    version,
    about = "Dessins d'enfants and canonical metrics on the sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, passport, triangulation and automorphism group of a dessin.
    Info {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = InfoFormat::Text)]
        format: InfoFormat,
    },
    /// Build a canonical metric and emit it on a grid, with a run report.
    Metric(MetricArgs),
    /// Run the property suite and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_scope)]
        scope: Scope,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = InfoFormat::Text)]
        format: InfoFormat,
        /// Scale one generator entry by 1.001 before running.
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// The half-plane to triangle map: vertices, angles and boundary table.
    Sc {
        /// Boundary samples per side.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InfoFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Average,
    Conjugate,
    Hermitian,
    Orbit,
}

impl ConstructionArg {
    fn name(self) -> &'static str {
        match self {
            ConstructionArg::Average => "average",
            ConstructionArg::Conjugate => "conjugate",
            ConstructionArg::Hermitian => "hermitian",
            ConstructionArg::Orbit => "orbit",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridFormat {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct MetricArgs {
    /// Group type tag: C<n>, D<n>, A4, S4 or A5.
    #[arg(long)]
    group: Option<String>,
    /// JSON file of generator matrices [[re,im],[re,im],[re,im],[re,im]].
    #[arg(long)]
    generators: Option<PathBuf>,
    /// Dessin file; must have genus 0.
    #[arg(long)]
    dessin: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ConstructionArg::Conjugate)]
    construction: ConstructionArg,
    /// Grid resolution per chart (n × n points in each of two charts).
    #[arg(long, default_value_t = 40)]
    grid: usize,
    /// Finite-difference step for curvature.
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: f64,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Grid output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report path; defaults to `<out>.report.json`, or stderr without `--out`.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
    format: GridFormat,
    /// Worker threads for grid evaluation; output order does not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info { path, format } => cmd_info(&path, format),
        Command::Metric(args) => cmd_metric(&args),
        Command::Verify {
            scope,
            seed,
            format,
            perturb,
        } => cmd_verify(scope, VerifyOptions { seed, perturb }, format),
        Command::Sc { samples } => cmd_sc(samples),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_info(path: &Path, format: InfoFormat) -> Result<(), Failure> {
    let d = input::read_dessin(path)?;
    let s = report::DessinSummary::of(&d);
    let mut out = String::new();
    match format {
        InfoFormat::Json => {
            out = serde_json::to_string_pretty(&s).expect("summary serializes");
            out.push('\n');
        }
        InfoFormat::Text => {
            let p = &s.passport;
            let _ = writeln!(out, "darts:        {}", s.darts);
            let _ = writeln!(out, "genus:        {}", s.genus);
            let _ = writeln!(out, "degree:       {}", p.degree);
            let _ = writeln!(
                out,
                "passport:     white {:?} black {:?} faces {:?}",
                p.white_degrees, p.black_degrees, p.face_half_degrees
            );
            let _ = writeln!(out, "triangles:    {}", s.triangles);
            let _ = writeln!(out, "butterflies:  {}", s.butterflies);
            let _ = writeln!(out, "|Aut|:        {}", s.automorphism_order);
            let _ = writeln!(out, "group:        {}", s.group_type);
            if s.genus > 0 {
                let _ = writeln!(
                    out,
                    "note:         genus {} surface; the genus-0 metric constructions are unavailable",
                    s.genus
                );
            }
        }
    }
    io::stdout().write_all(out.as_bytes())?;
    Ok(())
}

fn build_metric(
    group: &dessin_core::FiniteMoebiusGroup,
    construction: ConstructionArg,
) -> Result<ConformalMetric, Failure> {
    let res = match construction {
        ConstructionArg::Average => Ok(averaged_metric(group)),
        ConstructionArg::Conjugate => conjugated_metric(group),
        ConstructionArg::Hermitian => Ok(hermitian_metric(group)),
        ConstructionArg::Orbit => orbit_triple_metric(group),
    };
    res.map_err(|e| match e {
        MetricError::CyclicGroupUnsupported(_) => Failure::cyclic(e.to_string()),
        other => Failure::input(other.to_string()),
    })
}

fn evaluate_grid(
    metric: &ConformalMetric,
    n: usize,
    step: f64,
) -> Result<Vec<CurvatureSample>, Failure> {
    grid_points(n)
        .into_par_iter()
        .map(|(chart, w)| metrics::sample_at(metric, chart, w, step))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::input(e.to_string()))
}

/// Seventeen significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn render_grid(samples: &[CurvatureSample], format: GridFormat) -> String {
    let mut out = String::with_capacity(samples.len() * 110);
    match format {
        GridFormat::Csv => {
            out.push_str("re,im,chart,rho,curvature\n");
            for s in samples {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    num(s.coord.re),
                    num(s.coord.im),
                    s.chart,
                    num(s.rho),
                    num(s.curvature)
                );
            }
        }
        GridFormat::Json => {
            out.push_str("[\n");
            for (i, s) in samples.iter().enumerate() {
                let sep = if i + 1 == samples.len() { "" } else { "," };
                let _ = writeln!(
                    out,
                    "  {{\"re\": {}, \"im\": {}, \"chart\": \"{}\", \"rho\": {}, \"curvature\": {}}}{sep}",
                    num(s.coord.re),
                    num(s.coord.im),
                    s.chart,
                    num(s.rho),
                    num(s.curvature)
                );
            }
            out.push_str("]\n");
        }
    }
    out
}

fn cmd_metric(args: &MetricArgs) -> Result<(), Failure> {
    if args.grid == 0 || args.step.is_nan() || args.step <= 0.0 {
        return Err(Failure::input("--grid and --step must be positive".into()));
    }
    let input = input::resolve(
        args.group.as_deref(),
        args.generators.as_deref(),
        args.dessin.as_deref(),
    )?;
    let group = &input.group;
    let metric = build_metric(group, args.construction)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers.unwrap_or(0))
        .build()
        .map_err(|e| Failure::input(e.to_string()))?;
    let samples = pool.install(|| evaluate_grid(&metric, args.grid, args.step))?;

    let curv = metrics::CurvatureReport {
        samples: samples.clone(),
    };
    let round = round_metric();
    let distance_to_round = metric_distance(&metric, &round, DEFAULT_SAMPLES);
    let well_definedness = if args.construction == ConstructionArg::Conjugate {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        Some(
            conjugator_well_defined(group, 3, &mut rng)
                .map_err(|e| Failure::cyclic(e.to_string()))?,
        )
    } else {
        None
    };
    let diagnostics = Diagnostics {
        invariance_defect: invariance_defect(&metric, group, DEFAULT_SAMPLES),
        curvature_min: curv.min(),
        curvature_max: curv.max(),
        curvature_spread: curv.spread(),
        distance_to_round,
        chart_compatibility: chart_compatibility_defect(&metric, 32),
        well_definedness,
    };

    let mut notes = Vec::new();
    if distance_to_round < 1e-9 {
        notes.push("coincides with round sphere".to_string());
    }
    let mut warnings = input.warnings;
    if group.type_tag().is_cyclic() && args.construction == ConstructionArg::Orbit {
        warnings.push("cyclic group: the orbit construction returns the round metric".into());
    }
    if args.construction == ConstructionArg::Orbit {
        notes.push("orbit triples are normalized to 0, 1 and infinity, largest orbit at 0".into());
        notes.push("invariance of the orbit construction is measured, not assumed".into());
    }
    if args.construction == ConstructionArg::Hermitian {
        notes.push(
            "hermitian construction: conformal part of the induced form, averaged over the group"
                .into(),
        );
    }

    let report = RunReport {
        dessin: input.dessin,
        group: GroupSummary {
            type_tag: group.type_tag(),
            order: group.order(),
            in_so3: group.is_in_so3(1e-8),
        },
        construction: args.construction.name(),
        seed: args.seed,
        grid: GridSummary {
            n: args.grid,
            points: samples.len(),
            step: args.step,
            format: match args.format {
                GridFormat::Csv => "csv",
                GridFormat::Json => "json",
            },
        },
        diagnostics,
        notes,
        warnings,
    };
    let grid = render_grid(&samples, args.format);
    let report_json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";

    match &args.out {
        Some(path) => {
            fs::write(path, grid)?;
            let rpath = args.report.clone().unwrap_or_else(|| {
                let mut p = path.clone().into_os_string();
                p.push(".report.json");
                p.into()
            });
            fs::write(rpath, report_json)?;
        }
        None => {
            io::stdout().write_all(grid.as_bytes())?;
            match &args.report {
                Some(rpath) => fs::write(rpath, report_json)?,
                None => io::stderr().write_all(report_json.as_bytes())?,
            }
        }
    }
    Ok(())
}

fn cmd_verify(scope: Scope, opts: VerifyOptions, format: InfoFormat) -> Result<(), Failure> {
    let checks = verify::run(scope, &opts);
    match format {
        InfoFormat::Text => {
            for c in &checks {
                println!("{c}");
            }
        }
        InfoFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&checks).expect("checks serialize")
            );
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(Failure::verification(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundaryRow {
    x: f64,
    side: &'static str,
    w: [f64; 2],
}

#[derive(Serialize)]
struct ScReport {
    scale: [f64; 2],
    vertices: Vec<[f64; 2]>,
    prevertices: [&'static str; 3],
    angles: [f64; 3],
    boundary: Vec<BoundaryRow>,
}

fn cmd_sc(samples: usize) -> Result<(), Failure> {
    let map = TriangleMap::standard();
    let pair = |w: C64| [w.re, w.im];
    let mut boundary = Vec::new();
    let n = samples.max(1);
    // (−∞, −1), (−1, 0), (0, ∞) sampled through x = −1 − s/(1 − s) etc.
    for k in 0..n {
        let s = (k as f64 + 0.5) / n as f64;
        for (side, x) in [
            ("black-center", -1.0 - s / (1.0 - s)),
            ("center-white", -1.0 + s),
            ("white-black", s / (1.0 - s)),
        ] {
            let w = map
                .forward(C64::new(x, 0.0))
                .map_err(|e| Failure::input(e.to_string()))?;
            boundary.push(BoundaryRow {
                x,
                side,
                w: pair(w),
            });
        }
    }
    boundary.sort_by(|a, b| a.x.total_cmp(&b.x));
    let report = ScReport {
        scale: pair(map.scale()),
        vertices: map.vertices().iter().map(|&v| pair(v)).collect(),
        prevertices: ["0", "-1", "inf"],
        angles: map.measured_vertex_angles(),
        boundary,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}
