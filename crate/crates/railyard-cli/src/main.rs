//! Command-line front end: partition functions, correlations, sampling,
//! Kasteleyn verification, Aztec utilities and renderers.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error. Every
//! file output carries a provenance header (spec hash, degree, seed,
//! version) and is byte-deterministic for a fixed invocation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use sha2::{Digest, Sha256};

use railyard::aztec::{
    arctic_classify, arctic_experiment, aztec_spec, creation_rate, creation_rate_definitional,
    epgf_coeffs, AztecParams, BiasedAztec, Phase, Weighting,
};
use railyard::graph::{Covering, Edge, RygSpec, Vertex};
use railyard::kernel::{edge_probability, KernelContext, KernelMethod};
use railyard::partition_fn::{flip_exponent, z_brute, z_hook_q, z_product, z_transfer};
use railyard::sampler::BackwardTable;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "railyard", version, about = "rail yard graph dimer models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpecSource {
    /// spec JSON file ({"l":..,"r":..,"lr":..,"signs":..,"weights":[..]})
    #[arg(long)]
    spec: Option<PathBuf>,
    /// shortcut: Aztec diamond of this size
    #[arg(long)]
    aztec: Option<usize>,
    /// bias for vertical dominoes (rational like 3/2), Aztec mode
    #[arg(long, default_value = "1")]
    lambda: String,
    /// flip weight (rational), Aztec mode
    #[arg(long)]
    q: Option<String>,
}

impl SpecSource {
    fn load(&self) -> Result<Arc<RygSpec>> {
        match (&self.spec, self.aztec) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(RygSpec::from_json(&text)?)
            }
            (None, Some(n)) => {
                let lambda = parse_rational(&self.lambda)?;
                let weighting = match &self.q {
                    None => {
                        if lambda == BigRational::from_integer(1.into()) {
                            Weighting::Uniform
                        } else {
                            Weighting::Biased(lambda)
                        }
                    }
                    Some(q) => Weighting::BiasedQVol(lambda, parse_rational(q)?),
                };
                Ok(aztec_spec(&AztecParams { n, weighting })?)
            }
            _ => bail!("provide exactly one of --spec FILE or --aztec N"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    match railyard::graph::Weight::parse(s)? {
        railyard::graph::Weight::Rational(r) => Ok(r),
        railyard::graph::Weight::Symbolic => bail!("expected a rational, got symbol {}", s),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
    Pgm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Product,
    Transfer,
    Brute,
    Numeric,
    Series,
}

#[derive(Subcommand)]
enum Command {
    /// Partition function: canonical series, q-polynomial, 3-way check
    Zfun {
        #[command(flatten)]
        source: SpecSource,
        /// total-degree truncation
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// print the flip-weight polynomial instead of the multivariate one
        #[arg(long = "hook-q")]
        hook_q: bool,
        /// evaluation method
        #[arg(long, value_enum, default_value = "product")]
        method: Method,
        /// cross-check product, transfer and enumeration; nonzero exit on
        /// mismatch
        #[arg(long)]
        check: bool,
    },
    /// Edge-set probabilities from the correlation kernel
    Corr {
        #[command(flatten)]
        source: SpecSource,
        /// edge list JSON: [[x_even,"y/2",x_odd,"y/2"], ...] or a list of
        /// such lists
        #[arg(long)]
        edges: PathBuf,
        #[arg(long, value_enum, default_value = "numeric")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw pure coverings from the exact sequential sampler
    Sample {
        #[command(flatten)]
        source: SpecSource,
        /// partition-size cap of the backward table
        #[arg(long, default_value_t = 24)]
        degree: u32,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the Kasteleyn orientation and the kernel inverse identities
    Kasteleyn {
        #[command(flatten)]
        source: SpecSource,
        /// window half-height for the identity rows
        #[arg(long, default_value_t = 2)]
        window: i32,
        /// tolerance for the verification exit code
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Aztec-diamond utilities
    Aztec {
        #[command(subcommand)]
        task: AztecTask,
    },
    /// Render a covering (from a file or freshly sampled)
    Render {
        #[command(flatten)]
        source: SpecSource,
        /// covering JSON (as produced by `sample`); fundamental covering
        /// when omitted
        #[arg(long)]
        covering: Option<PathBuf>,
        /// window half-height when reading or building coverings
        #[arg(long, default_value_t = 6)]
        window: i32,
        /// ryg | domino | lozenge
        #[arg(long, default_value = "ryg")]
        view: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AztecTask {
    /// West-going domino probability grid as CSV (x, y, n, lambda, value)
    WestGrid {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Creation rates: closed form and contour route, CSV
    Creation {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge-probability generating function coefficients up to t^order
    Epgf {
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase classifier raster on the scaled diamond
    Classify {
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample coverings and report the empirical liquid region
    Experiment {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn spec_hash(spec: &RygSpec) -> String {
    let mut hasher = Sha256::new();
    hasher.update(spec.to_json().as_bytes());
    let digest = hasher.finalize();
    let hex: String = digest.iter().map(|b| format!("{:02x}", b)).collect();
    hex[..16].to_string()
}

fn provenance(spec: Option<&RygSpec>, degree: Option<u32>, seed: Option<u64>) -> String {
    let mut line = format!("railyard v{}", VERSION);
    if let Some(s) = spec {
        let _ = write!(line, " spec={}", spec_hash(s));
    }
    if let Some(d) = degree {
        let _ = write!(line, " degree={}", d);
    }
    if let Some(s) = seed {
        let _ = write!(line, " seed={}", s);
    }
    line
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", text),
    }
    Ok(())
}

/// Failure of a --check style verification (exit code 1, not 2).
#[derive(Debug)]
struct VerificationFailure(String);

impl std::fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailure {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {:#}", err);
            if err.downcast_ref::<VerificationFailure>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Zfun {
            source,
            degree,
            hook_q,
            method,
            check,
        } => {
            let spec = source.load()?;
            if check {
                let zp = z_product(&spec, degree);
                let zt = z_transfer(&spec, degree);
                let zb = z_brute(&spec, degree)?;
                if zp != zt || zp != zb {
                    return Err(anyhow!(VerificationFailure(format!(
                        "partition function mismatch on {} at degree {}",
                        spec, degree
                    ))));
                }
            }
            let text = if hook_q {
                z_hook_q(&spec, degree).to_string()
            } else {
                match method {
                    Method::Product => z_product(&spec, degree).to_string(),
                    Method::Transfer => z_transfer(&spec, degree).to_string(),
                    Method::Brute => z_brute(&spec, degree)?.to_string(),
                    _ => bail!("--method must be product | transfer | brute"),
                }
            };
            println!("# {}", provenance(Some(&spec), Some(degree), None));
            println!("{}", text);
            // sanity: the q specialization of the product matches hook form
            if check {
                let zq = z_product(&spec, 2 * degree)
                    .specialize_q(&flip_exponent(&spec), degree);
                let zh = z_hook_q(&spec, degree);
                if zq != zh {
                    return Err(anyhow!(VerificationFailure(
                        "flip specialization mismatch".into()
                    )));
                }
            }
            Ok(())
        }
        Command::Corr {
            source,
            edges,
            method,
            out,
        } => {
            let spec = source.load()?;
            let ctx = KernelContext::new(&spec)?;
            let text = std::fs::read_to_string(&edges)
                .with_context(|| format!("reading {}", edges.display()))?;
            let sets = parse_edge_sets(&text)?;
            let mut csv = format!("# {}\n", provenance(Some(&spec), None, None));
            csv.push_str("set,probability,method,error_estimate\n");
            for (idx, set) in sets.iter().enumerate() {
                let (p, label, err) = match method {
                    Method::Numeric => (
                        edge_probability(&ctx, set, KernelMethod::Numeric)?,
                        "numeric",
                        1e-10,
                    ),
                    Method::Series => (
                        edge_probability(&ctx, set, KernelMethod::Series(400))?,
                        "series",
                        1e-9,
                    ),
                    _ => bail!("--method must be numeric | series"),
                };
                let _ = writeln!(csv, "{},{:.12},{},{:.1e}", idx, p, label, err);
            }
            emit(&out, &csv)
        }
        Command::Sample {
            source,
            degree,
            count,
            seed,
            format,
            out,
        } => {
            let spec = source.load()?;
            let table = BackwardTable::build(&spec, degree)
                .map_err(|e| anyhow!("building backward table: {}", e))?;
            match format {
                Format::Json => {
                    let mut text = format!(
                        "# {}\n",
                        provenance(Some(&spec), Some(degree), Some(seed))
                    );
                    for idx in 0..count {
                        let c = table
                            .sample(seed, idx)
                            .map_err(|e| anyhow!("sampling: {}", e))?;
                        let _ = writeln!(text, "{}", c.to_json());
                    }
                    emit(&out, &text)
                }
                Format::Svg => {
                    let base = out.clone().unwrap_or_else(|| PathBuf::from("sample.svg"));
                    for idx in 0..count {
                        let c = table
                            .sample(seed, idx)
                            .map_err(|e| anyhow!("sampling: {}", e))?;
                        let svg = match source.aztec {
                            Some(n) => railyard::render::domino_svg(&c, n),
                            None => railyard::render::covering_svg(&c),
                        };
                        let path = numbered(&base, idx, count);
                        std::fs::write(&path, svg)
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    Ok(())
                }
                _ => bail!("--format must be json | svg for sample"),
            }
        }
        Command::Kasteleyn {
            source,
            window,
            tolerance,
            out,
        } => {
            let spec = source.load()?;
            // orientation check is exhaustive on the window
            for face in railyard::graph::faces_in_window(&spec, window + 1) {
                if !railyard::kasteleyn::verify_orientation(&spec, &face) {
                    return Err(anyhow!(VerificationFailure(format!(
                        "face product violated at column {} height {}/2",
                        face.left_column, face.y2_bottom
                    ))));
                }
            }
            let ctx = KernelContext::new(&spec)?;
            let report = railyard::kasteleyn::verify_inverse(&ctx, window)
                .map_err(|e| anyhow!("inverse verification: {}", e))?;
            emit(&out, &format!("{}\n", report.to_json()))?;
            if report.max_error > tolerance {
                return Err(anyhow!(VerificationFailure(format!(
                    "max inverse error {} above {}",
                    report.max_error, tolerance
                ))));
            }
            Ok(())
        }
        Command::Aztec { task } => run_aztec(task),
        Command::Render {
            source,
            covering,
            window,
            view,
            out,
        } => {
            let spec = source.load()?;
            let c = match covering {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let body = text
                        .lines()
                        .find(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
                        .ok_or_else(|| anyhow!("no covering in {}", path.display()))?;
                    Covering::from_json(&spec, window, body)?
                }
                None => Covering::fundamental(&spec, window),
            };
            let svg = match view.as_str() {
                "ryg" => railyard::render::covering_svg(&c),
                "domino" => {
                    let n = source
                        .aztec
                        .ok_or_else(|| anyhow!("domino view needs --aztec N"))?;
                    railyard::render::domino_svg(&c, n)
                }
                "lozenge" => railyard::render::lozenge_svg(&c),
                other => bail!("unknown view {}", other),
            };
            emit(&out, &svg)
        }
    }
}

fn run_aztec(task: AztecTask) -> Result<()> {
    match task {
        AztecTask::WestGrid { n, lambda, out } => {
            let lam = parse_rational(&lambda)?;
            let ctx = BiasedAztec::new(n, &lam)?;
            let mut csv = format!(
                "# {}\n",
                provenance(Some(ctx.spec()), None, None)
            );
            csv.push_str("x,y,n,lambda,value\n");
            let ni = n as i32;
            for x in -ni..=ni {
                for y in -ni..=ni {
                    if ctx.west_edge(x, y).is_none() {
                        continue;
                    }
                    let p = ctx.west_prob(x, y)?;
                    let _ = writeln!(csv, "{},{},{},{},{:.12}", x, y, n, lambda, p);
                }
            }
            emit(&out, &csv)
        }
        AztecTask::Creation { n, lambda, out } => {
            let lam = parse_rational(&lambda)?;
            let mut csv = String::from("x,y,n,lambda,closed_form,contour_route\n");
            let ni = n as i32;
            for x in -ni..=ni {
                for y in -ni..=ni {
                    if (x + y + ni).rem_euclid(2) != 1 {
                        continue;
                    }
                    let closed = creation_rate(x, y, n, &lam);
                    let numeric = creation_rate_definitional(x, y, n, &lam)?;
                    let _ = writeln!(
                        csv,
                        "{},{},{},{},{:.12},{:.12}",
                        x,
                        y,
                        n,
                        lambda,
                        railyard::series::rat_to_f64(&closed),
                        numeric
                    );
                }
            }
            emit(&out, &csv)
        }
        AztecTask::Epgf { lambda, order, out } => {
            let lam = parse_rational(&lambda)?;
            let coeffs = epgf_coeffs(&lam, order);
            let mut csv = String::from("t_power,u_power,v_power,coefficient\n");
            for (m, layer) in coeffs.iter().enumerate() {
                for ((xu, xv), c) in layer {
                    let _ = writeln!(csv, "{},{},{},{}", m, xu, xv, c);
                }
            }
            emit(&out, &csv)
        }
        AztecTask::Classify {
            resolution,
            format,
            out,
        } => {
            match format {
                Format::Csv => {
                    let mut csv = String::from("tau,chi,phase\n");
                    for i in 0..resolution {
                        let tau = (i as f64 + 0.5) / resolution as f64;
                        for j in 0..resolution {
                            let chi = -1.0 + 2.0 * (j as f64 + 0.5) / resolution as f64;
                            let phase = match arctic_classify(tau, chi) {
                                Phase::Frozen => "frozen",
                                Phase::Liquid => "liquid",
                                Phase::Boundary => "boundary",
                            };
                            let _ = writeln!(csv, "{:.6},{:.6},{}", tau, chi, phase);
                        }
                    }
                    emit(&out, &csv)
                }
                Format::Pgm => {
                    let rows: Vec<Vec<u8>> = (0..resolution)
                        .map(|j| {
                            let chi = -1.0 + 2.0 * (j as f64 + 0.5) / resolution as f64;
                            (0..resolution)
                                .map(|i| {
                                    let tau = (i as f64 + 0.5) / resolution as f64;
                                    match arctic_classify(tau, chi) {
                                        Phase::Frozen => 255u8,
                                        Phase::Liquid => 80,
                                        Phase::Boundary => 0,
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    emit(&out, &railyard::render::pgm(&rows))
                }
                _ => bail!("--format must be csv | pgm for classify"),
            }
        }
        AztecTask::Experiment { n, count, seed, out } => {
            let report = arctic_experiment(n, count, seed)?;
            emit(
                &out,
                &format!("{}\n", serde_json::to_string_pretty(&report)?),
            )
        }
    }
}

fn numbered(base: &std::path::Path, idx: u64, count: u64) -> PathBuf {
    if count == 1 {
        return base.to_path_buf();
    }
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sample".into());
    let ext = base
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "svg".into());
    base.with_file_name(format!("{}-{}.{}", stem, idx, ext))
}

/// Edge lists: either a single list of quadruples or a list of lists.
fn parse_edge_sets(text: &str) -> Result<Vec<Vec<Edge>>> {
    let value: serde_json::Value = serde_json::from_str(text).context("parsing edge JSON")?;
    let to_edge = |v: &serde_json::Value| -> Result<Edge> {
        let arr = v.as_array().ok_or_else(|| anyhow!("edge must be an array"))?;
        if arr.len() != 4 {
            bail!("edge must be [x_even, y_even, x_odd, y_odd]");
        }
        let xe = arr[0].as_i64().ok_or_else(|| anyhow!("bad x_even"))? as i32;
        let xo = arr[2].as_i64().ok_or_else(|| anyhow!("bad x_odd"))? as i32;
        let parse_y = |v: &serde_json::Value| -> Result<i32> {
            match v {
                serde_json::Value::String(s) => railyard::graph::parse_half_int(s)
                    .ok_or_else(|| anyhow!("bad ordinate {}", s)),
                serde_json::Value::Number(n) => Ok((n
                    .as_i64()
                    .ok_or_else(|| anyhow!("bad ordinate {}", n))?
                    * 2) as i32),
                _ => bail!("bad ordinate"),
            }
        };
        Ok(Edge::new(
            Vertex::new(xe, parse_y(&arr[1])?),
            Vertex::new(xo, parse_y(&arr[3])?),
        ))
    };
    let arr = value
        .as_array()
        .ok_or_else(|| anyhow!("edge file must be a JSON array"))?;
    if arr.is_empty() {
        return Ok(vec![]);
    }
    // list of quadruples or list of lists of quadruples
    let nested = arr[0]
        .as_array()
        .map(|inner| inner.first().map(|x| x.is_array()).unwrap_or(false))
        .unwrap_or(false);
    if nested {
        arr.iter()
            .map(|set| {
                set.as_array()
                    .ok_or_else(|| anyhow!("edge set must be an array"))?
                    .iter()
                    .map(to_edge)
                    .collect()
            })
            .collect()
    } else {
        Ok(vec![arr.iter().map(to_edge).collect::<Result<Vec<_>>>()?])
    }
}
