//! The `psembed` command line.
//!
//! Exit codes: 0 success, 2 bad input, 3 non-planar graph, 4 a drawing that
//! fails exact verification.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use psembed_core::book::book_embed;
use psembed_core::graph::{gen_planar, gen_points, Model, PointShape};
use psembed_core::route::Simultaneous;
use psembed_core::stats::{self, StatsError};
use psembed_core::{
    draw_fixed, interleave_empty, rng, simul_embed, verify_drawing, Drawing, PlanarGraph,
    PointConfig, RationalPoint, RouteError,
};
use serde_json::json;
use thiserror::Error;

use crate::format::{
    self, BookFile, DrawingFile, FormatError, GraphFile, MappingFile, PartitionFile, PermsFile, PointsFile,
};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NON_PLANAR: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "psembed", version, about = "Point-set embeddings of planar graphs with few bends")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw one graph on a point set with a fixed vertex mapping.
    Draw(DrawArgs),
    /// Draw several graphs on one point set with a common vertex mapping.
    Simul(SimulArgs),
    /// Generate random inputs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check a drawing exactly against its graph.
    Verify(VerifyArgs),
    /// Run a seeded experiment.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Evaluate the total-bend lower bound for convex point sets.
    Bound(BoundArgs),
}

#[derive(Debug, Args)]
pub struct DrawArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub points: PathBuf,
    /// Vertex to point-index map; identity when omitted.
    #[arg(long)]
    pub mapping: Option<PathBuf>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also write the book embedding used for routing.
    #[arg(long)]
    pub book: Option<PathBuf>,
    /// Draw interval bounds and line positions in the SVG.
    #[arg(long)]
    pub debug: bool,
}

#[derive(Debug, Args)]
pub struct SimulArgs {
    /// One graph file per drawing; repeat the flag.
    #[arg(long, required = true)]
    pub graph: Vec<PathBuf>,
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub outdir: PathBuf,
    #[arg(long)]
    pub debug: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Triangulation,
    Subgraph,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ShapeArg {
    Convex,
    Grid,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Random planar graph.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "triangulation")]
        model: ModelArg,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random distinct rational points.
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "random")]
        shape: ShapeArg,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// The identity followed by `k − 1` uniformly random permutations.
    Perms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub drawing: PathBuf,
    /// Intended point set; the drawing's own vertex list is used when omitted.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long, requires = "points")]
    pub mapping: Option<PathBuf>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum StatsCommand {
    /// Alternating runs and interior extrema of random permutations.
    Runs {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, required_unless_present = "exhaustive")]
        seed: Option<u64>,
        /// Average exactly over all permutations instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Minimum common chain cover size against n, with a power-law fit.
    Chains {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Bends of fixed-mapping drawings of random triangulations.
    Bends {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
}

#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Input(String),
    #[error("graph is not planar")]
    NonPlanar,
    #[error("{0}")]
    Verification(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Format(_) | Failure::Input(_) => EXIT_INPUT,
            Failure::NonPlanar => EXIT_NON_PLANAR,
            Failure::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl From<RouteError> for Failure {
    fn from(e: RouteError) -> Self {
        match e {
            RouteError::NonPlanar => Failure::NonPlanar,
            RouteError::MappingMismatch(_) | RouteError::SizeMismatch => Failure::Input(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<StatsError> for Failure {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::Route(r) => r.into(),
            StatsError::Verification { .. } => Failure::Verification(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Parses `args`, runs the command and returns the exit code. Usage errors
/// are printed by clap and map to the input-error code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}

pub fn run(cmd: &Command) -> Result<i32, Failure> {
    match cmd {
        Command::Draw(a) => draw(a),
        Command::Simul(a) => simul(a),
        Command::Gen(g) => generate(g).map(|()| EXIT_OK),
        Command::Verify(a) => verify(a),
        Command::Stats(s) => run_stats(s).map(|()| EXIT_OK),
        Command::Bound(a) => bound(a).map(|()| EXIT_OK),
    }
}

fn echo(params: &[(&str, String)]) {
    let line: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!("psembed {}", line.join(" "));
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

fn show_opt(p: &Option<PathBuf>, absent: &str) -> String {
    p.as_deref().map(show).unwrap_or_else(|| absent.into())
}

fn read_graph(path: &Path) -> Result<PlanarGraph, Failure> {
    Ok(format::read_json::<GraphFile>(path)?.to_graph()?)
}

fn read_points(path: &Path) -> Result<psembed_core::PointSet, Failure> {
    Ok(format::read_json::<PointsFile>(path)?.to_points()?)
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    Ok(format::write_atomic(path, &format::to_json_string(value)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => Ok(format::write_atomic(p, text)?),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(FormatError::Io { path: "stdout".into(), source: e }.into())
                }
                _ => Ok(()),
            }
        }
    }
}

/// Verifies `d` and reports problems on stderr; true iff it is exact.
fn check(d: &Drawing, g: &PlanarGraph, gamma: &[RationalPoint], label: &str) -> bool {
    match verify_drawing(d, g, gamma) {
        Ok(rep) if rep.ok() => true,
        Ok(rep) => {
            eprintln!("{label}: verification failed: {}", format::report_json(&rep));
            false
        }
        Err(e) => {
            eprintln!("{label}: {e}");
            false
        }
    }
}

fn draw(a: &DrawArgs) -> Result<i32, Failure> {
    echo(&[
        ("command", "draw".into()),
        ("graph", show(&a.graph)),
        ("points", show(&a.points)),
        ("mapping", show_opt(&a.mapping, "identity")),
        ("seed", a.seed.to_string()),
        ("out", show(&a.out)),
        ("svg", show_opt(&a.svg, "none")),
        ("debug", a.debug.to_string()),
    ]);
    let g = read_graph(&a.graph)?;
    let pts = read_points(&a.points)?;
    if pts.len() != g.n() {
        return Err(Failure::Input(format!("{} points for {} vertices", pts.len(), g.n())));
    }
    let gamma = match &a.mapping {
        Some(p) => format::read_json::<MappingFile>(p)?.mapping,
        None => (0..g.n()).collect(),
    };
    let config = PointConfig::new(pts, gamma)?;
    let d = draw_fixed(&g, &config, a.seed)?;
    write_json(&a.out, &DrawingFile::from_drawing(&d))?;
    if let Some(p) = &a.svg {
        format::write_atomic(p, &svg::render(&d, a.debug.then_some(&config.delta)))?;
    }
    if let Some(p) = &a.book {
        write_json(p, &BookFile::from_book(&book_embed(&g, a.seed).map_err(RouteError::from)?))?;
    }
    Ok(if check(&d, &g, &config.vertex_points(), "drawing") { EXIT_OK } else { EXIT_VERIFY })
}

fn simul(a: &SimulArgs) -> Result<i32, Failure> {
    let graphs: Vec<String> = a.graph.iter().map(|p| show(p)).collect();
    echo(&[
        ("command", "simul".into()),
        ("graphs", graphs.join(",")),
        ("points", show(&a.points)),
        ("seed", a.seed.to_string()),
        ("outdir", show(&a.outdir)),
        ("debug", a.debug.to_string()),
    ]);
    let gs = a.graph.iter().map(|p| read_graph(p)).collect::<Result<Vec<_>, _>>()?;
    let pts = read_points(&a.points)?;
    if gs.iter().any(|g| g.n() != pts.len()) {
        return Err(Failure::Input("graph and point set sizes differ".into()));
    }
    let Simultaneous { gamma, drawings, cover } = simul_embed(&gs, &pts, a.seed)?;
    std::fs::create_dir_all(&a.outdir)
        .map_err(|source| FormatError::Io { path: show(&a.outdir), source })?;
    write_json(&a.outdir.join("gamma.json"), &MappingFile { mapping: gamma.clone() })?;
    let partition = interleave_empty(cover);
    write_json(&a.outdir.join("partition.json"), &PartitionFile::from_partition(&partition))?;
    let config = PointConfig::identity(pts.clone());
    let vertex_points: Vec<RationalPoint> = gamma.iter().map(|&i| pts.points()[i].clone()).collect();
    let mut all_ok = true;
    for (j, (d, g)) in drawings.iter().zip(&gs).enumerate() {
        write_json(&a.outdir.join(format!("drawing_{j}.json")), &DrawingFile::from_drawing(d))?;
        format::write_atomic(
            &a.outdir.join(format!("drawing_{j}.svg")),
            &svg::render(d, a.debug.then_some(&config.delta)),
        )?;
        all_ok &= check(d, g, &vertex_points, &format!("drawing {j}"));
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFY })
}

fn generate(cmd: &GenCommand) -> Result<(), Failure> {
    match cmd {
        GenCommand::Graph { n, model, seed, out } => {
            echo(&[
                ("command", "gen graph".into()),
                ("n", n.to_string()),
                ("model", format!("{model:?}").to_lowercase()),
                ("seed", seed.to_string()),
                ("out", show(out)),
            ]);
            if *n == 0 {
                return Err(Failure::Input("n must be positive".into()));
            }
            let model = match model {
                ModelArg::Triangulation => Model::Triangulation,
                ModelArg::Subgraph => Model::Subgraph,
            };
            write_json(out, &GraphFile::from_graph(&gen_planar(*n, model, *seed)))
        }
        GenCommand::Points { n, shape, seed, out } => {
            echo(&[
                ("command", "gen points".into()),
                ("n", n.to_string()),
                ("shape", format!("{shape:?}").to_lowercase()),
                ("seed", seed.to_string()),
                ("out", show(out)),
            ]);
            if *n == 0 {
                return Err(Failure::Input("n must be positive".into()));
            }
            let shape = match shape {
                ShapeArg::Convex => PointShape::Convex,
                ShapeArg::Grid => PointShape::Grid,
                ShapeArg::Random => PointShape::Random,
            };
            write_json(out, &PointsFile::from_points(&gen_points(*n, shape, *seed)))
        }
        GenCommand::Perms { n, k, seed, out } => {
            echo(&[
                ("command", "gen perms".into()),
                ("n", n.to_string()),
                ("k", k.to_string()),
                ("seed", seed.to_string()),
                ("out", show(out)),
            ]);
            let mut g = rng::rng(*seed);
            let mut perms = Vec::with_capacity(*k);
            if *k > 0 {
                perms.push((0..*n).collect());
            }
            for _ in 1..*k {
                perms.push(rng::permutation(*n, &mut g));
            }
            write_json(out, &PermsFile { perms })
        }
    }
}

fn verify(a: &VerifyArgs) -> Result<i32, Failure> {
    echo(&[
        ("command", "verify".into()),
        ("graph", show(&a.graph)),
        ("drawing", show(&a.drawing)),
        ("points", show_opt(&a.points, "drawing")),
        ("mapping", show_opt(&a.mapping, "identity")),
        ("out", show_opt(&a.out, "stdout")),
    ]);
    let g = read_graph(&a.graph)?;
    let d = format::read_json::<DrawingFile>(&a.drawing)?.to_drawing()?;
    let gamma = match &a.points {
        Some(p) => {
            let pts = read_points(p)?;
            let map = match &a.mapping {
                Some(m) => format::read_json::<MappingFile>(m)?.mapping,
                None => (0..pts.len()).collect(),
            };
            PointConfig::new(pts, map)?.vertex_points()
        }
        None => d.vertex_points.clone(),
    };
    if gamma.len() != g.n() {
        return Err(Failure::Input(format!("{} vertex points for {} vertices", gamma.len(), g.n())));
    }
    let rep = verify_drawing(&d, &g, &gamma).map_err(|e| Failure::Verification(e.to_string()))?;
    emit(a.out.as_deref(), &format::to_json_string(&format::report_json(&rep))?)?;
    Ok(if rep.ok() { EXIT_OK } else { EXIT_VERIFY })
}

fn write_report(rep: &stats::ExperimentReport, args: &ReportArgs) -> Result<(), Failure> {
    let text = match args.format {
        OutputFormat::Json => format::to_json_string(&format::experiment_json(rep))?,
        OutputFormat::Csv => format::experiment_csv(rep),
    };
    emit(args.out.as_deref(), &text)
}

fn list(ns: &[usize]) -> String {
    ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

fn run_stats(cmd: &StatsCommand) -> Result<(), Failure> {
    match cmd {
        StatsCommand::Runs { n, trials, seed, exhaustive, report } => {
            if *exhaustive {
                echo(&[("command", "stats runs".into()), ("n", n.to_string()), ("exhaustive", "true".into())]);
                if report.format == OutputFormat::Csv {
                    return Err(Failure::Input("exhaustive mode has no per-trial rows; use --format json".into()));
                }
                let e = stats::runs_exhaustive(*n)?;
                return emit(report.out.as_deref(), &format::to_json_string(&format::exhaustive_json(&e))?);
            }
            let seed = seed.ok_or_else(|| Failure::Input("--seed is required".into()))?;
            echo(&[
                ("command", "stats runs".into()),
                ("n", n.to_string()),
                ("trials", trials.to_string()),
                ("seed", seed.to_string()),
            ]);
            write_report(&stats::runs_experiment(*n, *trials, seed)?, report)
        }
        StatsCommand::Chains { k, n, trials, seed, report } => {
            echo(&[
                ("command", "stats chains".into()),
                ("k", k.to_string()),
                ("n", list(n)),
                ("trials", trials.to_string()),
                ("seed", seed.to_string()),
            ]);
            write_report(&stats::chain_scaling_experiment(*k, n, *trials, *seed)?, report)
        }
        StatsCommand::Bends { n, trials, seed, report } => {
            echo(&[
                ("command", "stats bends".into()),
                ("n", list(n)),
                ("trials", trials.to_string()),
                ("seed", seed.to_string()),
            ]);
            write_report(&stats::bends_experiment(n, *trials, *seed)?, report)
        }
    }
}

fn bound(a: &BoundArgs) -> Result<(), Failure> {
    echo(&[
        ("command", "bound".into()),
        ("n", a.n.to_string()),
        ("k", a.k.to_string()),
        ("c", a.c.to_string()),
        ("delta", a.delta.to_string()),
    ]);
    if a.n == 0 || a.k == 0 {
        return Err(Failure::Input("n and k must be positive".into()));
    }
    let beta = stats::lower_bound_eval(a.n, a.k, a.delta, a.c);
    emit(None, &format::to_json_string(&json!({"n": a.n, "k": a.k, "c": a.c, "delta": a.delta, "beta_min": beta}))?)
}
