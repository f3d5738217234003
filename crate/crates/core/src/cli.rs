//! Command-line front end. Every run prints its result and writes it, together
//! with a `manifest.json`, into `--out-dir`.
//!
//! Exit codes: 0 ok, 1 numerical failure, 2 invalid parameters, 3 unreadable or
//! malformed input, 10 necessary condition violated (or, for `rfk`, the
//! expected minimizer did not win).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::eigen1d::eigen_frac1d;
use crate::error::{Error, Result};
use crate::fraclap::{fraclap_matrix_1d, fraclap_matrix_2d, lambda1, FracLapMatrix};
use crate::grid::{Grid1D, GridFn1D};
use crate::inequalities::{hartman_wintner_check, lyapunov_check, rfk_sweep, InequalityReport, SweepTable};
use crate::kernel::{GreenKernel, KernelParams};
use crate::mask::DomainMask2D;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_VIOLATED: i32 = 10;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "FRACSPEC_THREADS";

#[derive(Debug, Parser, Serialize)]
#[command(name = "fracspec", version, about = "Fractional Green kernels, spectra and inequality checks")]
pub struct Cli {
    /// Directory receiving result files and manifest.json.
    #[arg(long, global = true, default_value = "fracspec-out")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Evaluate K and G at a point, or the supremum of G on the diagonal.
    Kernel(KernelArgs),
    /// Eigenvalues of the 1D fractional operator or the fractional Laplacian.
    #[command(subcommand)]
    Eigen(EigenCommand),
    /// Audit a potential against a necessary condition.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Rayleigh–Faber–Krahn sweep over cross-sections of equal measure.
    Rfk(RfkArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct IntervalArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
}

impl IntervalArgs {
    fn params(&self) -> Result<KernelParams> {
        KernelParams::new(self.alpha, self.a, self.b)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct KernelArgs {
    #[command(flatten)]
    pub interval: IntervalArgs,
    #[arg(long, allow_hyphen_values = true, requires = "t", conflicts_with = "diag_sup")]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "x")]
    pub t: Option<f64>,
    #[arg(long, required_unless_present = "x")]
    pub diag_sup: bool,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum EigenCommand {
    /// Dirichlet eigenvalues of the composed fractional derivative on (a, b).
    Frac1d(Frac1dArgs),
    /// First eigenvalue of the fractional Laplacian on an interval or a mask.
    Fraclap(FraclapArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Frac1dArgs {
    #[command(flatten)]
    pub interval: IntervalArgs,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct FraclapArgs {
    #[arg(long)]
    pub s: f64,
    /// Interval length (1D, centered at 0).
    #[arg(long, conflicts_with = "mask", required_unless_present = "mask")]
    pub length: Option<f64>,
    /// Interior node count for the 1D problem.
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    /// Mask file (2D).
    #[arg(long)]
    pub mask: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum CheckCommand {
    Lyapunov(CheckArgs),
    HartmanWintner(CheckArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    #[command(flatten)]
    pub interval: IntervalArgs,
    #[arg(long)]
    pub lambda1: f64,
    /// CSV with header `x,q`.
    #[arg(long, conflicts_with = "q_const", required_unless_present = "q_const")]
    pub q_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub q_const: Option<f64>,
    /// Uniform sampling nodes for a constant potential.
    #[arg(long, default_value_t = 65_537)]
    pub nodes: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct RfkArgs {
    #[command(flatten)]
    pub interval: IntervalArgs,
    #[arg(long)]
    pub s: f64,
    /// Directory of mask files (`*.mask` or `*.txt`); the file stem is the shape id.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub shapes: Option<PathBuf>,
    /// Comma-separated builtin shapes: disk, square, rect<k>.
    #[arg(long, value_delimiter = ',', requires = "cells")]
    pub builtin: Option<Vec<String>>,
    #[arg(long)]
    pub cells: Option<usize>,
    /// Cell width of builtin shapes.
    #[arg(long, default_value_t = 1.0 / 24.0)]
    pub h: f64,
    /// Nystrom nodes for mu_1.
    #[arg(long, default_value_t = 128)]
    pub n: usize,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub versions: String,
    pub timestamp: String,
    pub outputs: Vec<PathBuf>,
    pub exit_code: i32,
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARAMETER } else { EXIT_OK };
        }
    };
    configure_threads();
    let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, &argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parameter(_) | Error::Domain(_) => EXIT_PARAMETER,
        Error::Io(_) | Error::Format(_) => EXIT_IO,
        Error::Numerical(_) => EXIT_NUMERICAL,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // A second call in the same process (tests) is harmless to ignore.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

struct Output {
    name: &'static str,
    body: String,
    code: i32,
}

fn execute(cli: &Cli, argv: &[String]) -> Result<i32> {
    let (label, out) = match &cli.command {
        Command::Kernel(args) => ("kernel", cmd_kernel(args)?),
        Command::Eigen(EigenCommand::Frac1d(args)) => ("eigen frac1d", cmd_frac1d(args)?),
        Command::Eigen(EigenCommand::Fraclap(args)) => ("eigen fraclap", cmd_fraclap(args)?),
        Command::Check(CheckCommand::Lyapunov(args)) => ("check lyapunov", cmd_check(args, false)?),
        Command::Check(CheckCommand::HartmanWintner(args)) => ("check hartman-wintner", cmd_check(args, true)?),
        Command::Rfk(args) => ("rfk", cmd_rfk(args)?),
    };
    print!("{}", out.body);
    std::fs::create_dir_all(&cli.out_dir)?;
    let path = cli.out_dir.join(out.name);
    std::fs::write(&path, &out.body)?;
    let manifest = RunManifest {
        command: label.to_string(),
        argv: argv.to_vec(),
        parameters: serde_json::to_value(&cli.command).expect("arguments serialize"),
        versions: format!("fracspec {}", env!("CARGO_PKG_VERSION")),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        outputs: vec![path],
        exit_code: out.code,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(cli.out_dir.join("manifest.json"), text + "\n")?;
    Ok(out.code)
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializes") + "\n"
}

fn cmd_kernel(args: &KernelArgs) -> Result<Output> {
    let kernel = GreenKernel::new(args.interval.params()?);
    let body = match (args.x, args.t) {
        (Some(x), Some(t)) => {
            #[derive(Serialize)]
            struct Pair {
                #[serde(rename = "K")]
                k: crate::kernel::KernelEval,
                #[serde(rename = "G")]
                g: crate::kernel::KernelEval,
            }
            json_line(&Pair {
                k: kernel.eval_k(x, t)?,
                g: kernel.eval_g(x, t)?,
            })
        }
        _ => json_line(&kernel.sup_g_diag()),
    };
    Ok(Output {
        name: "kernel.json",
        body,
        code: EXIT_OK,
    })
}

fn cmd_frac1d(args: &Frac1dArgs) -> Result<Output> {
    let r = eigen_frac1d(&args.interval.params()?, args.n, args.k)?;
    let mut body = String::from("index,eigenvalue,residual\n");
    for (i, (mu, res)) in r.eigenvalues.iter().zip(&r.residuals).enumerate() {
        writeln!(body, "{},{},{}", i + 1, mu, res).unwrap();
    }
    Ok(Output {
        name: "eigen.csv",
        body,
        code: EXIT_OK,
    })
}

fn cmd_fraclap(args: &FraclapArgs) -> Result<Output> {
    let m: FracLapMatrix = match (&args.mask, args.length) {
        (Some(path), _) => fraclap_matrix_2d(&DomainMask2D::read(path)?, args.s)?,
        (None, Some(length)) => fraclap_matrix_1d(args.n, args.s, length)?,
        (None, None) => return Err(Error::Parameter("either --length or --mask is required".into())),
    };
    let ep = lambda1(&m)?;
    let body = format!("index,eigenvalue,residual\n1,{},{}\n", ep.lambda, ep.residual);
    if m.low_accuracy {
        eprintln!("warning: single-cell domain, eigenvalue is low accuracy");
    }
    Ok(Output {
        name: "eigen.csv",
        body,
        code: EXIT_OK,
    })
}

#[derive(Debug, Deserialize)]
struct QRow {
    x: f64,
    q: f64,
}

/// Read a potential from a CSV file with header `x,q`.
pub fn read_q_csv(path: &Path) -> Result<GridFn1D> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_error)?;
    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["x", "q"] {
        return Err(Error::Format(format!("expected header `x,q`, got {headers:?}")));
    }
    let mut xs = Vec::new();
    let mut qs = Vec::new();
    for row in reader.deserialize::<QRow>() {
        let row = row.map_err(csv_error)?;
        xs.push(row.x);
        qs.push(row.q);
    }
    let grid = Grid1D::from_nodes(xs).map_err(|e| Error::Format(format!("x column: {e}")))?;
    GridFn1D::new(grid, qs)
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!(),
        }
    } else {
        Error::Format(e.to_string())
    }
}

fn cmd_check(args: &CheckArgs, hartman_wintner: bool) -> Result<Output> {
    let p = args.interval.params()?;
    let q = match (&args.q_file, args.q_const) {
        (Some(path), _) => read_q_csv(path)?,
        (None, Some(c)) => GridFn1D::from_fn(Grid1D::uniform(p.a(), p.b(), args.nodes)?, |_| c),
        (None, None) => return Err(Error::Parameter("either --q-file or --q-const is required".into())),
    };
    let report: InequalityReport = if hartman_wintner {
        hartman_wintner_check(&q, &p, args.lambda1)?
    } else {
        lyapunov_check(&q, &p, args.lambda1)?
    };
    Ok(Output {
        name: "report.json",
        body: report.to_json() + "\n",
        code: if report.satisfied { EXIT_OK } else { EXIT_VIOLATED },
    })
}

fn load_shape_dir(dir: &Path) -> Result<Vec<(String, DomainMask2D)>> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    entries.retain(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("mask" | "txt")));
    entries.sort();
    entries
        .iter()
        .map(|p| {
            let id = p.file_stem().unwrap().to_string_lossy().into_owned();
            Ok((id, DomainMask2D::read(p)?))
        })
        .collect()
}

/// The shape the extremal results predict to win: the disk when present,
/// otherwise the square among quadrilaterals.
pub fn expected_minimizer(ids: &[String]) -> Option<&'static str> {
    if ids.iter().any(|i| i == "disk") {
        Some("disk")
    } else if ids.iter().any(|i| i == "square") {
        Some("square")
    } else {
        None
    }
}

fn cmd_rfk(args: &RfkArgs) -> Result<Output> {
    let p = args.interval.params()?;
    let shapes = match (&args.shapes, &args.builtin) {
        (Some(dir), _) => load_shape_dir(dir)?,
        (None, Some(names)) => {
            let cells = args.cells.ok_or_else(|| Error::Parameter("--cells is required".into()))?;
            names
                .iter()
                .map(|n| Ok((n.clone(), DomainMask2D::builtin(n, cells, args.h)?)))
                .collect::<Result<_>>()?
        }
        (None, None) => return Err(Error::Parameter("either --shapes or --builtin is required".into())),
    };
    let table: SweepTable = rfk_sweep(&shapes, &p, args.s, args.n)?;
    let ids: Vec<String> = shapes.iter().map(|(id, _)| id.clone()).collect();
    let code = match expected_minimizer(&ids) {
        Some(want) if table.minimizer().shape_id != want => {
            eprintln!("expected minimizer {want:?}, got {:?}", table.minimizer().shape_id);
            EXIT_VIOLATED
        }
        _ => EXIT_OK,
    };
    eprintln!("minimizer: {}", table.minimizer().shape_id);
    Ok(Output {
        name: "sweep.csv",
        body: table.to_csv(),
        code,
    })
}
