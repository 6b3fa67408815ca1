//! The `transversal` command line tool: scene files in, JSON reports and
//! SVG pictures out.
//!
//! Exit codes: 0 success (analysis verdict PASS), 2 verdict FAIL,
//! 3 verdict INCONCLUSIVE, 1 for malformed input and every other error.

mod report;
mod scene;
mod svg;

pub use report::{
    circle_summaries, to_json, AnalysisReport, CircleSummary, ComplementSummary, ComponentSummary,
    LabelCounts, Mode, PathReport, ProbeReport, REPORT_VERSION,
};
pub use scene::{CantorBlock, SceneBody, SceneError, SceneFile, ToleranceOverrides, SCENE_VERSION};
pub use svg::render_sphere_svg;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::constructions::{
    curve_clusters, probe_direction_curve, probe_grid, random_disjoint_family, CantorSpec,
    ConstructionError,
};
use crate::convex::UnitVec3;
use crate::path::{connect_to_separators, PathError, SpherePath};
use crate::sphere::{
    build_mesh, classify, report_for_classification, MeshError, Verdict, DEFAULT_AMBIGUOUS_LIMIT,
};
use crate::transversal::Family;

pub const THREADS_ENV: &str = "TRANSVERSAL_THREADS";
const DEFAULT_PROBE_GAP: f64 = 0.05;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("bad direction `{0}`: expected three comma-separated numbers, not all zero")]
    Direction(String),
    #[error("bad probe grid: need finite lo < hi and step > 0")]
    Grid,
    #[error("{THREADS_ENV}=`{0}` is not a positive integer")]
    Threads(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "transversal",
    version,
    about = "Transversal directions of disjoint convex bodies in R^3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the direction sphere and report the component topology.
    Analyze(AnalyzeArgs),
    /// Path of non-transversal directions from a start direction to a separating great circle.
    Path(PathArgs),
    /// Write a generated scene.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Depth along the ruling directions (1, 0, b).
    ProbeCurve(ProbeArgs),
    /// SVG picture of the classified sphere.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct SceneArgs {
    /// Scene file, or `-` for standard input.
    pub scene: PathBuf,
    /// Openness tolerance; defaults to 1e-7 times the scene diameter.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    #[arg(long, default_value_t = 4)]
    pub level: i64,
    #[arg(long, conflicts_with = "undirected")]
    pub directed: bool,
    #[arg(long)]
    pub undirected: bool,
    /// Also write an SVG picture here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Start direction `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    /// Mesh level of the SVG background.
    #[arg(long, default_value_t = 4)]
    pub level: i64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// Three ruled segments and a sampled hyperbola hull.
    Cantor {
        #[arg(long, allow_negative_numbers = true)]
        stage: i64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Random pairwise disjoint polytopes.
    Random {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 2.5, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.001)]
    pub step: f64,
    /// Depth threshold for counting a probe as a hit.
    #[arg(long)]
    pub curve_tolerance: Option<f64>,
    /// Largest parameter gap inside one cluster.
    #[arg(long)]
    pub gap: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    #[arg(long, default_value_t = 4)]
    pub level: i64,
    /// Overlay the path from this direction; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub from: Vec<String>,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Reports go to `stdout` unless `--output` is set.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let mut buffer = Vec::new();
    let result = match thread_pool() {
        Ok(Some(pool)) => pool.install(|| execute(&cli.command, &mut buffer)),
        Ok(None) => execute(&cli.command, &mut buffer),
        Err(e) => Err(e),
    };
    if stdout
        .write_all(&buffer)
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return EXIT_ERROR;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Threads(raw.clone()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|_| CliError::Threads(raw))?;
    Ok(Some(pool))
}

pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn execute(command: &Command, stdout: &mut Vec<u8>) -> Result<i32, CliError> {
    match command {
        Command::Analyze(a) => {
            let scene = read_scene(&a.scene.scene)?;
            let mode = if a.undirected {
                Mode::Undirected
            } else {
                Mode::Directed
            };
            let (report, svg) = analyze(&scene, a.level, a.scene.tolerance, mode, a.svg.is_some())?;
            if let (Some(path), Some(svg)) = (&a.svg, svg) {
                write_file(path, &svg)?;
            }
            emit(stdout, a.scene.output.as_deref(), &to_json(&report))?;
            Ok(exit_code(report.verdict))
        }
        Command::Path(a) => {
            let scene = read_scene(&a.scene.scene)?;
            let family = scene.to_family(a.scene.tolerance)?;
            let from = parse_direction(&a.from)?;
            let path = path_from(&family, from)?;
            if let Some(svg_path) = &a.svg {
                write_file(
                    svg_path,
                    &render(&family, a.level, std::slice::from_ref(&path))?,
                )?;
            }
            emit(
                stdout,
                a.scene.output.as_deref(),
                &to_json(&PathReport::new(&path, &family.separating_circles())),
            )?;
            Ok(EXIT_OK)
        }
        Command::Construct(c) => {
            let (scene, output) = match c {
                ConstructCommand::Cantor {
                    stage,
                    samples,
                    output,
                } => (
                    SceneFile::cantor(&CantorSpec::new(*stage, *samples)?)?,
                    output,
                ),
                ConstructCommand::Random { n, seed, output } => (
                    SceneFile::from_family(&random_disjoint_family(*n, *seed)?),
                    output,
                ),
            };
            emit(stdout, output.as_deref(), &scene.to_json())?;
            Ok(EXIT_OK)
        }
        Command::ProbeCurve(a) => {
            let scene = read_scene(&a.scene.scene)?;
            let report = probe(&scene, a)?;
            emit(stdout, a.scene.output.as_deref(), &to_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Render(a) => {
            let scene = read_scene(&a.scene.scene)?;
            let family = scene.to_family(a.scene.tolerance)?;
            let paths = a
                .from
                .iter()
                .map(|s| path_from(&family, parse_direction(s)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            emit(
                stdout,
                a.scene.output.as_deref(),
                &render(&family, a.level, &paths)?,
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the full analysis of a scene. The SVG is rendered from the same
/// classification when `with_svg` is set.
pub fn analyze(
    scene: &SceneFile,
    level: i64,
    tolerance: Option<f64>,
    mode: Mode,
    with_svg: bool,
) -> Result<(AnalysisReport, Option<String>), CliError> {
    let start = Instant::now();
    let family = scene.to_family(tolerance)?;
    let mesh = Arc::new(build_mesh(level)?);
    let circles = family.separating_circles();
    let result = report_for_classification(classify(&family, &mesh), DEFAULT_AMBIGUOUS_LIMIT);
    let svg = with_svg.then(|| render_sphere_svg(Some(&result.classification), &circles, &[]));
    let report = AnalysisReport::new(
        &result,
        mode,
        family.len(),
        *family.tolerances(),
        &circles,
        start.elapsed().as_secs_f64(),
    );
    Ok((report, svg))
}

pub fn path_from(family: &Family, from: UnitVec3) -> Result<SpherePath, CliError> {
    let circles = family.separating_circles();
    let path = connect_to_separators(family, from, &circles)?;
    path.verify(family, &circles)?;
    Ok(path)
}

pub fn render(family: &Family, level: i64, paths: &[SpherePath]) -> Result<String, CliError> {
    let mesh = Arc::new(build_mesh(level)?);
    let c = classify(family, &mesh);
    Ok(render_sphere_svg(
        Some(&c),
        &family.separating_circles(),
        paths,
    ))
}

/// Curve probe with tolerance and gap resolved from the flags, then the
/// scene's overrides, then its Cantor block, then the defaults.
pub fn probe(scene: &SceneFile, args: &ProbeArgs) -> Result<ProbeReport, CliError> {
    if !(args.lo.is_finite() && args.hi.is_finite() && args.lo < args.hi && args.step > 0.0) {
        return Err(CliError::Grid);
    }
    let family = scene.to_family(args.scene.tolerance)?;
    let cantor = scene.cantor.map(|c| c.spec()).transpose()?;
    let tolerance = args
        .curve_tolerance
        .or(scene.tolerances.tau_curve)
        .or_else(|| {
            cantor
                .as_ref()
                .map(|s| s.curve_tolerance(family.tolerances()))
        })
        .unwrap_or(family.tolerances().tau_curve);
    let gap = args
        .gap
        .or_else(|| cantor.as_ref().map(CantorSpec::cluster_gap))
        .unwrap_or(DEFAULT_PROBE_GAP);
    let samples = probe_direction_curve(&family, &probe_grid(args.lo, args.hi, args.step));
    let clusters = curve_clusters(&samples, tolerance, gap);
    Ok(ProbeReport::new(samples, clusters, tolerance, gap))
}

pub fn parse_direction(s: &str) -> Result<UnitVec3, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Direction(s.into()))?;
    match parts[..] {
        [x, y, z] => UnitVec3::from_xyz(x, y, z).ok_or_else(|| CliError::Direction(s.into())),
        _ => Err(CliError::Direction(s.into())),
    }
}

fn read_scene(path: &Path) -> Result<SceneFile, CliError> {
    let mut text = String::new();
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io)?;
    }
    Ok(SceneFile::from_json(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(stdout: &mut Vec<u8>, output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            stdout.extend_from_slice(text.as_bytes());
            Ok(())
        }
    }
}
