mod commands;
mod render;

use clap::{error::ErrorKind, CommandFactory, Parser, Subcommand, ValueEnum};
use dirichlet_rkhs::{EvalConfig, SpaceId};
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;

pub const THREADS_ENV: &str = "DIRICHLET_RKHS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "dirichlet-rkhs", version, about = "Kernels, Gram certificates and interpolants in Hilbert spaces of Dirichlet series")]
#[command(after_help = "Complex numbers are written re,im. Point files are JSON arrays of [sigma, t] pairs.\n\
    The DIRICHLET_RKHS_THREADS environment variable caps the worker pool.")]
pub struct Cli {
    /// Space tag: h, h2, h_alpha, d_alpha (with --alpha), or h_alpha:<a>, d_alpha:<a>
    #[arg(long, global = true, default_value = "h")]
    space: String,
    /// Weight exponent for h_alpha and d_alpha
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Absolute accuracy target of the zeta evaluators
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Cap on explicitly summed terms
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_terms: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Blaschke–Lagrange construction in h
    Finite,
    /// Minimal-norm kernel combination in the chosen space
    MinNorm,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reproducing kernel k_w(s)
    ///
    /// CSV columns: re,im
    Kernel {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
    /// Normalized Gram matrix of a point sequence and its smallest eigenvalue
    ///
    /// CSV columns: i,j,re,im
    Gram {
        #[arg(long)]
        points: PathBuf,
    },
    /// Separation, Carleson intensity, Blaschke sum and Boas bounds of a sequence
    ///
    /// CSV columns: quantity,value
    Diagnose {
        #[arg(long)]
        points: PathBuf,
        /// Separation threshold of the Shapiro–Shields verdict
        #[arg(long, default_value_t = 0.1)]
        delta_min: f64,
        /// Carleson threshold of the Shapiro–Shields verdict
        #[arg(long, default_value_t = 4.0)]
        carleson_max: f64,
        /// Also split the sequence into parts with Boas bound at least sqrt(M)
        #[arg(long, value_name = "M")]
        gershgorin: Option<f64>,
        /// Also compare Boas bounds with the half-plane counterpart space
        #[arg(long)]
        equivalence: bool,
    },
    /// Interpolate targets at nodes
    ///
    /// CSV columns: j,sigma,t,coef_re,coef_im,residual
    Interpolate {
        #[arg(long)]
        points: PathBuf,
        /// JSON array of [re, im] targets, one per node
        #[arg(long)]
        targets: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::MinNorm)]
        method: Method,
    },
    /// Dirichlet–Blaschke product vanishing at the nodes
    ///
    /// CSV columns: j,prime,sigma,t,derivative_re,derivative_im
    Blaschke {
        #[arg(long)]
        points: PathBuf,
        /// Extra evaluation point (repeatable)
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        at: Vec<Complex64>,
    },
    /// Remainder of the weighted zeta function at s = 1 + 10^-k
    ///
    /// CSV columns: k,sigma,value_re,value_im,remainder_re,remainder_im,remainder_abs
    Asymptotics {
        #[arg(long, default_value_t = 5)]
        k_max: u32,
    },
    /// Embedding ratios of a random polynomial corpus
    ///
    /// Space h gives the critical-line ratio, h_alpha the half-strip ratio.
    /// CSV columns: theta,index,degree,ratio
    Embedding {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 100)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1,10,100")]
        theta: Vec<f64>,
    },
    /// Search for a vertical shift whose kernel correlation reaches a target
    ///
    /// CSV columns: found,tau,correlation,pseudohyperbolic_distance,best_tau,best_correlation,grid_step,evaluations
    Probe {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, default_value_t = 1e4)]
        t_max: f64,
        #[arg(long, default_value_t = 0.9)]
        target: f64,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let (re, im) = text.split_once(',').ok_or_else(|| format!("expected re,im, got {text:?}"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in {text:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in {text:?}"))?;
    Ok(Complex64::new(re, im))
}

fn resolve_space(tag: &str, alpha: Option<f64>) -> Result<SpaceId, String> {
    match (tag, alpha) {
        ("h_alpha", Some(a)) => SpaceId::weighted_dirichlet(a).map_err(|e| e.to_string()),
        ("d_alpha", Some(a)) => SpaceId::bergman_dirichlet(a).map_err(|e| e.to_string()),
        ("h_alpha" | "d_alpha", None) => Err(format!("--space {tag} needs --alpha")),
        (_, Some(_)) if !tag.contains(':') => Err(format!("--alpha has no meaning for --space {tag}")),
        _ => tag.parse().map_err(|e: dirichlet_rkhs::Error| e.to_string()),
    }
}

fn usage_error(kind: ErrorKind, message: String) -> ! {
    Cli::command().error(kind, message).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let space = resolve_space(&cli.space, cli.alpha).unwrap_or_else(|m| usage_error(ErrorKind::InvalidValue, m));
    let cfg = EvalConfig::default()
        .with_tol(cli.tol)
        .and_then(|c| c.with_max_terms(cli.max_terms))
        .unwrap_or_else(|e| usage_error(ErrorKind::InvalidValue, e.to_string()));
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .unwrap_or_else(|| usage_error(ErrorKind::InvalidValue, format!("{THREADS_ENV} must be a positive integer, got {v:?}")));
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    match commands::run(&cli.command, &space, &cfg, cli.format) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let name = err
                .chain()
                .find_map(|e| {
                    if let Some(e) = e.downcast_ref::<dirichlet_rkhs::Error>() {
                        Some(e.name())
                    } else if e.is::<std::io::Error>() {
                        Some("IoError")
                    } else if e.is::<serde_json::Error>() {
                        Some("ParseError")
                    } else {
                        None
                    }
                })
                .unwrap_or("Error");
            let body = serde_json::json!({ "error": name, "message": format!("{err:#}") });
            eprintln!("{body}");
            ExitCode::FAILURE
        }
    }
}
