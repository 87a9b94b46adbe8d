use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use fdwave::coeffs::{build_quadrature, QuadratureRule};
use fdwave::problems::{example_weight, Axis, CirculantKind, SylvesterPrecondKind};
use fdwave::solver1d::{Method1D, Params1D};
use fdwave::solver2d::{Method2D, Params2D};
use fdwave::{Error, SolverOptions};
use serde::Deserialize;

/// A failed command, carrying its exit status.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Core(Error),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Io(_) => 1,
            Failure::Core(e) => match e.root() {
                Error::InvalidParameter { .. } | Error::DimensionMismatch { .. } => 2,
                Error::SizeGate { .. } => 4,
                _ => 3,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(msg) => write!(f, "configuration error: {msg}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

fn config_err(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemId {
    /// 1D manufactured problem with exact solution.
    Example1,
    /// 2D manufactured problem with exact solution.
    Example2,
    /// Constant source on a box; no exact solution.
    Custom,
}

impl ProblemId {
    fn name(self) -> &'static str {
        match self {
            ProblemId::Example1 => "example1",
            ProblemId::Example2 => "example2",
            ProblemId::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand. Each may also be set in the TOML file
/// under the same name as its long flag.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunArgs {
    /// TOML file with default values for any of these flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub problem: Option<ProblemId>,

    /// Spatial intervals (along x in 2D).
    #[arg(long = "M", alias = "m")]
    #[serde(rename = "M", alias = "m")]
    pub m: Option<usize>,

    /// Spatial intervals along y; defaults to M.
    #[arg(long = "M2", alias = "m2")]
    #[serde(rename = "M2", alias = "m2")]
    pub m2: Option<usize>,

    /// Time steps.
    #[arg(long = "N", alias = "n")]
    #[serde(rename = "N", alias = "n")]
    pub n: Option<usize>,

    /// Quadrature parameter; the order interval [1, 2] is split into 2J panels.
    #[arg(long = "J", alias = "j")]
    #[serde(rename = "J", alias = "j")]
    pub j: Option<usize>,

    /// Final time.
    #[arg(long = "T", alias = "t")]
    #[serde(rename = "T", alias = "t")]
    pub t: Option<f64>,

    /// Riesz order (along x in 2D), in (1, 2].
    #[arg(long)]
    pub beta: Option<f64>,

    /// Riesz order along y (2D only), in (1, 2].
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Spatial dimension of the custom problem.
    #[arg(long)]
    pub dim: Option<usize>,

    /// Domain length of the custom problem.
    #[arg(long)]
    pub length: Option<f64>,

    /// Diffusion coefficient of the custom problem.
    #[arg(long)]
    pub diffusion: Option<f64>,

    /// Constant source term of the custom problem.
    #[arg(long)]
    pub source: Option<f64>,

    /// Solver: a full name such as pcg-rchan or glpcg-truncated, or
    /// pcg / gsf-pcg / glpcg combined with --precond.
    #[arg(long)]
    pub method: Option<String>,

    /// rchan, strang, bccb, truncated or none.
    #[arg(long)]
    pub precond: Option<String>,

    /// Band width kept by the truncated preconditioner.
    #[arg(long = "l")]
    pub l: Option<usize>,

    /// Relative residual tolerance of each step.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Iteration cap per step; defaults to 10 times the system order.
    #[arg(long)]
    pub maxit: Option<usize>,

    /// Output file; stdout when absent. A CSV file gets a JSON sibling.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Output format; inferred from the output extension when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Runs averaged for timings.
    #[arg(long)]
    pub repeat: Option<usize>,

    /// Worker threads for sweeps.
    #[arg(long)]
    pub threads: Option<usize>,
}

macro_rules! prefer {
    ($a:ident, $b:ident; $($f:ident),* $(,)?) => {
        RunArgs { config: $a.config, $($f: $a.$f.or($b.$f)),* }
    };
}

impl RunArgs {
    /// Flags win over file values.
    fn over(self, file: RunArgs) -> RunArgs {
        let (a, b) = (self, file);
        prefer!(a, b; problem, m, m2, n, j, t, beta, gamma, dim, length, diffusion, source,
            method, precond, l, tol, maxit, output, format, repeat, threads)
    }
}

/// Flags specific to one subcommand, also accepted in the TOML file.
pub trait Extra: Sized + for<'de> Deserialize<'de> {
    const KEYS: &'static [&'static str];

    /// Fills unset fields from `file`.
    fn over(self, file: Self) -> Self;
}

/// Splits the TOML file into the command extras and the shared settings.
pub fn load<E: Extra>(args: RunArgs, extra: E) -> CliResult<(RunArgs, E)> {
    let Some(path) = args.config.clone() else {
        return Ok((args, extra));
    };
    let text = std::fs::read_to_string(&path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    let mut table: toml::Table = text.parse().map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    let mut extra_table = toml::Table::new();
    for key in E::KEYS {
        if let Some(v) = table.remove(*key) {
            extra_table.insert(key.to_string(), v);
        }
    }
    let file_args: RunArgs =
        table.try_into().map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    let file_extra: E =
        extra_table.try_into().map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    Ok((args.over(file_args), extra.over(file_extra)))
}

/// Fully resolved and validated settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: ProblemId,
    pub dim: usize,
    pub m: usize,
    pub m2: usize,
    pub n: usize,
    pub j: usize,
    pub t_final: f64,
    pub beta: f64,
    pub gamma: f64,
    pub length: f64,
    pub diffusion: f64,
    pub source: f64,
    method: Option<String>,
    precond: Option<String>,
    l: Option<usize>,
    pub opts: SolverOptions,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub repeat: usize,
    pub threads: usize,
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(config_err(format!("{name} must be positive and finite, got {v}")))
    }
}

fn at_least_one(name: &str, v: usize) -> CliResult<usize> {
    if v >= 1 {
        Ok(v)
    } else {
        Err(config_err(format!("{name} must be at least 1")))
    }
}

impl RunConfig {
    /// Applies defaults and checks every range; nothing is allocated for
    /// the solve until this succeeds.
    pub fn resolve(args: RunArgs) -> CliResult<Self> {
        let problem = args.problem.unwrap_or(ProblemId::Example1);
        let dim = match problem {
            ProblemId::Example1 => 1,
            ProblemId::Example2 => 2,
            ProblemId::Custom => args.dim.unwrap_or(1),
        };
        if problem != ProblemId::Custom {
            for (name, set) in [
                ("dim", args.dim.is_some()),
                ("length", args.length.is_some()),
                ("diffusion", args.diffusion.is_some()),
                ("source", args.source.is_some()),
            ] {
                if set {
                    return Err(config_err(format!("--{name} only applies to the custom problem")));
                }
            }
        }
        if !(dim == 1 || dim == 2) {
            return Err(config_err(format!("dim must be 1 or 2, got {dim}")));
        }
        if dim == 1 && (args.m2.is_some() || args.gamma.is_some()) {
            return Err(config_err("M2 and gamma only apply to 2D problems"));
        }
        let (m_default, n_default) = if dim == 1 { (64, 64) } else { (16, 16) };
        let m = args.m.unwrap_or(m_default);
        let beta = args.beta.unwrap_or(1.5);
        let format = match (args.format, &args.output) {
            (Some(f), _) => f,
            (None, Some(p)) if p.extension().is_some_and(|e| e == "json") => Format::Json,
            _ => Format::Csv,
        };
        let mut opts = if dim == 1 { SolverOptions::one_d() } else { SolverOptions::two_d() };
        if let Some(tol) = args.tol {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(config_err(format!("tol must lie in (0, 1), got {tol}")));
            }
            opts.tol = tol;
        }
        if let Some(maxit) = args.maxit {
            opts.maxit = Some(at_least_one("maxit", maxit)?);
        }
        let cfg = RunConfig {
            problem,
            dim,
            m,
            m2: args.m2.unwrap_or(m),
            n: args.n.unwrap_or(n_default),
            j: at_least_one("J", args.j.unwrap_or(50))?,
            t_final: args.t.unwrap_or(1.5),
            beta,
            gamma: args.gamma.unwrap_or(beta),
            length: positive("length", args.length.unwrap_or(1.0))?,
            diffusion: positive("diffusion", args.diffusion.unwrap_or(1.0))?,
            source: args.source.unwrap_or(1.0),
            method: args.method,
            precond: args.precond,
            l: args.l,
            opts,
            output: args.output,
            format,
            repeat: at_least_one("repeat", args.repeat.unwrap_or(1))?,
            threads: at_least_one("threads", args.threads.unwrap_or(1))?,
        };
        if !cfg.source.is_finite() {
            return Err(config_err("source must be finite"));
        }
        if dim == 1 {
            cfg.params_1d().validate()?;
        } else {
            cfg.params_2d().validate()?;
        }
        if problem != ProblemId::Custom {
            // The manufactured sources need strictly fractional orders.
            for (name, v) in [("beta", cfg.beta), ("gamma", cfg.gamma)] {
                if v >= 2.0 {
                    return Err(config_err(format!("{name} must lie in (1, 2) for {}, got {v}", problem.name())));
                }
            }
        }
        Ok(cfg)
    }

    pub fn problem_name(&self) -> &'static str {
        self.problem.name()
    }

    pub fn has_exact(&self) -> bool {
        self.problem != ProblemId::Custom
    }

    pub fn params_1d(&self) -> Params1D {
        Params1D { m: self.m, n: self.n, length: self.length, t_final: self.t_final, diffusion: self.diffusion, beta: self.beta }
    }

    pub fn params_2d(&self) -> Params2D {
        Params2D {
            m1: self.m,
            m2: self.m2,
            n: self.n,
            length_x: self.length,
            length_y: self.length,
            t_final: self.t_final,
            diffusion_x: self.diffusion,
            diffusion_y: self.diffusion,
            beta: self.beta,
            gamma: self.gamma,
        }
    }

    /// Trapezoid rule for the order weight `Γ(5 - α)`, shared by all problems.
    pub fn rule(&self) -> CliResult<QuadratureRule> {
        Ok(build_quadrature(self.j, example_weight)?)
    }

    /// The same settings with a different method string.
    pub fn with_method(&self, method: &str) -> Self {
        RunConfig { method: Some(method.to_string()), ..self.clone() }
    }

    pub fn method_1d(&self) -> CliResult<Method1D> {
        if self.l.is_some() {
            return Err(config_err("--l only applies to glpcg-truncated"));
        }
        let base = self.method.as_deref().unwrap_or("pcg");
        let name = match base {
            "pcg" | "gsf-pcg" => {
                let p = self.precond.as_deref().unwrap_or("rchan");
                let kind: CirculantKind = p.parse()?;
                format!("{base}-{kind}")
            }
            _ => {
                if self.precond.is_some() {
                    return Err(config_err(format!("--precond does not combine with method `{base}`")));
                }
                base.to_string()
            }
        };
        Ok(name.parse()?)
    }

    pub fn method_2d(&self) -> CliResult<Method2D> {
        let base = self.method.as_deref().unwrap_or("glpcg");
        let method = if base == "glpcg" {
            match self.precond.as_deref().unwrap_or("truncated").parse()? {
                SylvesterPrecondKind::Bccb => Method2D::GlPcgBccb,
                SylvesterPrecondKind::Truncated(l) => Method2D::GlPcgTruncated(l),
            }
        } else {
            if self.precond.is_some() {
                return Err(config_err(format!("--precond does not combine with method `{base}`")));
            }
            base.parse()?
        };
        match (method, self.l) {
            (_, None) => Ok(method),
            (Method2D::GlPcgTruncated(None), Some(l)) => Ok(Method2D::GlPcgTruncated(Some(l))),
            (Method2D::GlPcgTruncated(Some(a)), Some(b)) if a == b => Ok(method),
            _ => Err(config_err("--l only applies to glpcg-truncated and must match any width in the method name")),
        }
    }

    /// Preconditioner for the spectrum command; `none` or absent gives
    /// the original spectrum only.
    pub fn spectrum_precond_1d(&self) -> CliResult<Option<CirculantKind>> {
        if self.l.is_some() {
            return Err(config_err("--l only applies to the truncated preconditioner"));
        }
        match self.precond.as_deref() {
            None | Some("none") => Ok(None),
            Some(p) => Ok(Some(p.parse()?)),
        }
    }

    pub fn spectrum_precond_2d(&self) -> CliResult<Option<SylvesterPrecondKind>> {
        let kind = match self.precond.as_deref() {
            None | Some("none") => None,
            Some(p) => Some(p.parse()?),
        };
        match (kind, self.l) {
            (kind, None) => Ok(kind),
            (Some(SylvesterPrecondKind::Truncated(None)), Some(l)) => Ok(Some(SylvesterPrecondKind::Truncated(Some(l)))),
            _ => Err(config_err("--l only applies to the truncated preconditioner")),
        }
    }
}

/// Output destination with the path of the JSON sibling of a CSV file.
pub fn sibling_json(path: &Path) -> PathBuf {
    path.with_extension("json")
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvergenceArgs {
    /// Refined parameter: space (M), time (N) or distributed (J).
    #[arg(long)]
    pub axis: Option<String>,

    /// Comma-separated refinement levels, e.g. 16,32,64.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<usize>>,
}

impl Extra for ConvergenceArgs {
    const KEYS: &'static [&'static str] = &["axis", "levels"];

    fn over(self, file: Self) -> Self {
        ConvergenceArgs { axis: self.axis.or(file.axis), levels: self.levels.or(file.levels) }
    }
}

impl ConvergenceArgs {
    pub fn resolve(&self) -> CliResult<(Axis, Vec<usize>)> {
        let axis: Axis = self.axis.as_deref().unwrap_or("space").parse()?;
        let levels = self.levels.clone().ok_or_else(|| config_err("--levels is required"))?;
        if levels.is_empty() {
            return Err(config_err("--levels needs at least one value"));
        }
        Ok((axis, levels))
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchArgs {
    /// Comma-separated method names; a default trio when absent.
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<String>>,
}

impl Extra for BenchArgs {
    const KEYS: &'static [&'static str] = &["methods"];

    fn over(self, file: Self) -> Self {
        BenchArgs { methods: self.methods.or(file.methods) }
    }
}

/// Subcommands without extra flags.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct NoExtra {}

impl Extra for NoExtra {
    const KEYS: &'static [&'static str] = &[];

    fn over(self, _: Self) -> Self {
        self
    }
}
