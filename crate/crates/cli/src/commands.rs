use fdwave::problems::{
    convergence_table_1d, convergence_table_2d, rate_rows, rchan_lower_bound, solve_example1, solve_example2, spectrum_1d,
    spectrum_2d, Axis, CirculantKind, ConvergenceRow, Example1, Example1Config, Example2, Example2Config,
};
use fdwave::solver1d::{assemble_scheme, march_1d, march_1d_with, Method1D};
use fdwave::solver2d::{assemble_scheme_2d, march_2d, march_2d_with, Method2D};
use fdwave::SolveReport;
use serde_json::{json, Value};

use crate::config::{CliResult, Failure, ProblemId, RunConfig};
use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Method {
    One(Method1D),
    Two(Method2D),
}

impl Method {
    fn of(cfg: &RunConfig) -> CliResult<Self> {
        Ok(if cfg.dim == 1 { Method::One(cfg.method_1d()?) } else { Method::Two(cfg.method_2d()?) })
    }

    fn name(self) -> String {
        match self {
            Method::One(m) => m.to_string(),
            Method::Two(m) => m.to_string(),
        }
    }

    fn is_dense(self) -> bool {
        matches!(self, Method::One(Method1D::DenseDirect) | Method::Two(Method2D::DenseDirect))
    }
}

/// A march plus the max-norm error at each level `n = 0..=N` when the
/// problem has an exact solution.
struct Run {
    report: SolveReport,
    errors: Option<Vec<f64>>,
}

impl Run {
    fn max_error(&self) -> Option<f64> {
        self.errors.as_ref().map(|e| e.iter().copied().fold(0.0, f64::max))
    }
}

fn run_once(cfg: &RunConfig, method: Method) -> CliResult<Run> {
    let rule = cfg.rule()?;
    let mut errors = Vec::with_capacity(cfg.n + 1);
    let report = match method {
        Method::One(m) => {
            let scheme = assemble_scheme(cfg.params_1d(), &rule)?;
            if cfg.problem == ProblemId::Custom {
                let c = cfg.source;
                march_1d(&scheme, &|_, _| c, m, &cfg.opts)?
            } else {
                let problem = Example1::new(cfg.beta)?;
                let nodes = scheme.interior_nodes();
                march_1d_with(&scheme, &|x, t| problem.source(x, t), m, &cfg.opts, |n, u| {
                    let t = scheme.time(n);
                    errors.push(nodes.iter().zip(u).map(|(&x, v)| (problem.exact(x, t) - v).abs()).fold(0.0, f64::max));
                })?
            }
        }
        Method::Two(m) => {
            let scheme = assemble_scheme_2d(cfg.params_2d(), &rule)?;
            if cfg.problem == ProblemId::Custom {
                let c = cfg.source;
                march_2d(&scheme, &move |_: f64, _: f64, _: f64| c, m, &cfg.opts)?
            } else {
                let problem = Example2::new(cfg.beta, cfg.gamma)?;
                let (xs, ys) = (scheme.nodes_x(), scheme.nodes_y());
                march_2d_with(&scheme, &problem, m, &cfg.opts, |n, u| {
                    let t = scheme.time(n);
                    let mut worst = 0.0f64;
                    for (j, &y) in ys.iter().enumerate() {
                        for (i, &x) in xs.iter().enumerate() {
                            worst = worst.max((problem.exact(x, y, t) - u[i + j * xs.len()]).abs());
                        }
                    }
                    errors.push(worst);
                })?
            }
        }
    };
    let errors = cfg.has_exact().then_some(errors);
    Ok(Run { report, errors })
}

/// Runs `repeat` times and returns the last run with the mean wall time.
fn run_repeated(cfg: &RunConfig, method: Method) -> CliResult<(Run, f64)> {
    let mut total = 0.0;
    let mut last = None;
    for _ in 0..cfg.repeat {
        let run = run_once(cfg, method)?;
        total += run.report.wall_time;
        last = Some(run);
    }
    Ok((last.expect("repeat is at least 1"), total / cfg.repeat as f64))
}

fn base_metadata(table: &mut Table, cfg: &RunConfig) {
    table.meta("problem", cfg.problem_name());
    table.meta("dim", cfg.dim);
    table.meta("M", cfg.m);
    if cfg.dim == 2 {
        table.meta("M2", cfg.m2);
    }
    table.meta("N", cfg.n);
    table.meta("J", cfg.j);
    table.meta("T", cfg.t_final);
    table.meta("beta", cfg.beta);
    if cfg.dim == 2 {
        table.meta("gamma", cfg.gamma);
    }
    if cfg.problem == ProblemId::Custom {
        table.meta("length", cfg.length);
        table.meta("diffusion", cfg.diffusion);
        table.meta("source", cfg.source);
    }
    table.meta("tol", cfg.opts.tol);
    table.meta("repeat", cfg.repeat);
}

fn opt_json(v: Option<f64>) -> Value {
    v.map_or(Value::Null, |x| json!(x))
}

pub fn solve(cfg: &RunConfig) -> CliResult<Table> {
    let method = Method::of(cfg)?;
    let (run, wall) = run_repeated(cfg, method)?;
    let rep = &run.report;
    let mut columns = vec!["step", "time", "iterations", "step_time"];
    if run.errors.is_some() {
        columns.push("error");
    }
    let mut table = Table::new("solve", &columns);
    base_metadata(&mut table, cfg);
    table.meta("method", method.name());
    table.meta("avg_iters", rep.avg_iters);
    table.meta("setup_iters", rep.setup_iters.map_or(Value::Null, |v| json!(v)));
    table.meta("setup_time", rep.setup_time);
    table.meta("wall_time", wall);
    table.meta("max_error", opt_json(run.max_error()));
    let tau = cfg.t_final / cfg.n as f64;
    for (k, (&iters, &time)) in rep.per_step_iters.iter().zip(&rep.step_times).enumerate() {
        let n = k + 1;
        let t = if n == cfg.n { cfg.t_final } else { n as f64 * tau };
        let mut row = vec![Cell::Int(n), Cell::Num(t), Cell::Int(iters), Cell::Num(time)];
        if let Some(errors) = &run.errors {
            row.push(Cell::Num(errors[n]));
        }
        table.push(row);
    }
    eprintln!(
        "{} {}: avg iterations {:.2}{}, wall {:.3} s{}",
        cfg.problem_name(),
        method.name(),
        rep.avg_iters,
        rep.setup_iters.map_or(String::new(), |k| format!(" (setup {k})")),
        wall,
        run.max_error().map_or(String::new(), |e| format!(", max error {e:.6e}"))
    );
    Ok(table)
}

pub fn convergence(cfg: &RunConfig, axis: Axis, levels: &[usize]) -> CliResult<Table> {
    if !cfg.has_exact() {
        return Err(Failure::Config("convergence needs a problem with an exact solution".into()));
    }
    let method = Method::of(cfg)?;
    let rows: Vec<ConvergenceRow> = match method {
        Method::One(m) => {
            let mut base = Example1Config::new(cfg.m, cfg.n, cfg.j, cfg.t_final, cfg.beta).with_method(m);
            base.opts = cfg.opts;
            if levels.len() == 1 {
                rate_rows(levels, &[solve_example1(&base.refined(axis, levels[0]))?.max_error])?
            } else {
                convergence_table_1d(&base, axis, levels, cfg.threads)?
            }
        }
        Method::Two(m) => {
            let mut base = Example2Config::new(cfg.m, cfg.n, cfg.j, cfg.t_final, cfg.beta, cfg.gamma).with_method(m);
            base.m2 = cfg.m2;
            base.opts = cfg.opts;
            if levels.len() == 1 {
                rate_rows(levels, &[solve_example2(&base.refined(axis, levels[0]))?.max_error])?
            } else {
                convergence_table_2d(&base, axis, levels, cfg.threads)?
            }
        }
    };
    let mut table = Table::new("convergence", &[axis.parameter(), "error", "rate"]);
    base_metadata(&mut table, cfg);
    table.meta("method", method.name());
    table.meta("axis", axis.name());
    table.meta(
        "rounding_level",
        rows.iter().filter(|r| r.at_rounding_level).map(|r| r.level).collect::<Vec<_>>(),
    );
    for r in &rows {
        table.push(vec![Cell::Int(r.level), Cell::Num(r.error), r.rate.into()]);
        eprintln!("{} = {:>6}  error {:.6e}  rate {}", axis.parameter(), r.level, r.error, r.rate.map_or("-".into(), |v| format!("{v:.4}")));
    }
    Ok(table)
}

pub fn spectrum(cfg: &RunConfig) -> CliResult<Table> {
    let rule = cfg.rule()?;
    let mut meta: Vec<(&str, Value)> = Vec::new();
    let (pair, precond_name) = if cfg.dim == 1 {
        let kind = cfg.spectrum_precond_1d()?;
        let scheme = assemble_scheme(cfg.params_1d(), &rule)?;
        let pair = spectrum_1d(&scheme, kind)?;
        meta.push(("mu0", json!(scheme.mu0())));
        if kind == Some(CirculantKind::RChan) {
            meta.push(("rchan_lower_bound", json!(rchan_lower_bound(&scheme))));
        }
        (pair, kind.map(|k| k.to_string()))
    } else {
        let kind = cfg.spectrum_precond_2d()?;
        let scheme = assemble_scheme_2d(cfg.params_2d(), &rule)?;
        let pair = spectrum_2d(&scheme, kind)?;
        meta.push(("mu0", json!(scheme.mu0())));
        (pair, kind.map(|k| k.to_string()))
    };
    let columns: &[&str] = if pair.preconditioned.is_some() { &["original", "preconditioned"] } else { &["original"] };
    let mut table = Table::new("spectrum", columns);
    base_metadata(&mut table, cfg);
    table.meta("preconditioner", precond_name.map_or(Value::Null, Value::from));
    table.meta("order", pair.original.len());
    for (k, v) in meta {
        table.meta(k, v);
    }
    for (i, &v) in pair.original.iter().enumerate() {
        let mut row = vec![Cell::Num(v)];
        if let Some(p) = &pair.preconditioned {
            row.push(Cell::Num(p[i]));
        }
        table.push(row);
    }
    let range = |v: &[f64]| format!("[{:.6e}, {:.6e}]", v[0], v[v.len() - 1]);
    eprintln!("order {}: original {}", pair.original.len(), range(&pair.original));
    if let Some(p) = &pair.preconditioned {
        eprintln!("preconditioned {}", range(p));
    }
    Ok(table)
}

pub fn bench(cfg: &RunConfig, methods: Option<&[String]>) -> CliResult<Table> {
    let defaults: Vec<String> = if cfg.dim == 1 {
        ["dense-direct", "pcg-rchan", "gsf-pcg-rchan"].map(String::from).to_vec()
    } else {
        ["dense-direct", "glpcg-bccb", "glpcg-truncated"].map(String::from).to_vec()
    };
    let names = methods.unwrap_or(&defaults);
    if names.is_empty() {
        return Err(Failure::Config("--methods needs at least one name".into()));
    }
    let methods: Vec<Method> = names.iter().map(|n| Method::of(&cfg.with_method(n))).collect::<CliResult<_>>()?;

    let mut results = Vec::with_capacity(methods.len());
    for &m in &methods {
        let (run, wall) = run_repeated(cfg, m)?;
        eprintln!("{:<22} cpu {:>10.4} s  iter {:>6.2}", m.name(), wall, run.report.avg_iters);
        results.push((m, run, wall));
    }
    let dense_time = results.iter().find(|(m, ..)| m.is_dense()).map(|(_, _, t)| *t);
    let mut columns = vec!["method", "cpu", "iter"];
    if dense_time.is_some() {
        columns.push("speedup");
    }
    if cfg.has_exact() {
        columns.push("max_error");
    }
    let mut table = Table::new("bench", &columns);
    base_metadata(&mut table, cfg);
    for (m, run, wall) in &results {
        let mut row = vec![Cell::Text(m.name()), Cell::Num(*wall), Cell::Num(run.report.avg_iters)];
        if let Some(d) = dense_time {
            row.push(Cell::Num(d / wall));
        }
        if cfg.has_exact() {
            row.push(run.max_error().into());
        }
        table.push(row);
    }
    Ok(table)
}
