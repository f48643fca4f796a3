use robin_core::disk::{dirichlet_eigenpair, robin_sector_spectrum, DiskGeometry};
use robin_core::expansion::build_series;
use robin_core::experiments::{
    self, coercivity_study, concentration_study, convergence_study, default_delta_range, parse_delta_range,
    residual_study, surface_limit_study, GridSpec, LogLogFit, SweepSpec,
};
use robin_core::radial::{assemble, ElementOrder};
use robin_core::report::{write_csv, Cell, Table};
use robin_core::{Error, Result};

use crate::{Command, Common, OrderArg};

const DIRICHLET_TOL: f64 = 1e-8;
const ROBIN_TOL: f64 = 1e-7;

impl Common {
    fn geometry(&self) -> Result<DiskGeometry> {
        DiskGeometry::new(self.radius)
    }

    fn grid(&self) -> Result<GridSpec> {
        if !(0.0..1.0).contains(&self.layer) {
            return Err(Error::InvalidParameter(format!("--layer {} must lie in [0, 1)", self.layer)));
        }
        Ok(GridSpec {
            elements: self.elements,
            order: match self.element_order {
                OrderArg::Linear => ElementOrder::Linear,
                OrderArg::Quadratic => ElementOrder::Quadratic,
            },
            layer_fraction: (self.layer > 0.0).then_some(self.layer),
        })
    }

    fn sweep(&self, m: u32, n: u32, order: usize, deltas: Vec<f64>) -> Result<SweepSpec> {
        let mut s = SweepSpec::new(m, n, order, deltas);
        s.geometry = self.geometry()?;
        s.rho = experiments::DEFAULT_RHO_FRACTION * self.radius;
        s.grid = self.grid()?;
        Ok(s)
    }
}

fn header(name: &str, common: &Common) {
    let order = match common.element_order {
        OrderArg::Linear => "linear",
        OrderArg::Quadratic => "quadratic",
    };
    println!("# robinlab {name}");
    println!("# radius R = {}", common.radius);
    if common.layer > 0.0 {
        println!(
            "# grid: {} {order} elements, half of them in the boundary layer of width {} R",
            common.elements, common.layer
        );
    } else {
        println!("# grid: {} {order} elements, uniform", common.elements);
    }
    let alphas: Vec<String> = experiments::DEFAULT_ALPHAS.iter().map(|a| a.to_string()).collect();
    println!(
        "# defaults: rho = {} R, alpha sweep {{{}}}, residual alpha = {}, theta floor = {}",
        experiments::DEFAULT_RHO_FRACTION,
        alphas.join(", "),
        experiments::DEFAULT_RESIDUAL_ALPHA,
        experiments::THETA_FLOOR
    );
}

fn emit(table: &Table, common: &Common) -> Result<()> {
    print!("{}", table.to_text());
    if let Some(path) = &common.output {
        write_csv(table, path)?;
        println!("# wrote {}", path.display());
    }
    Ok(())
}

fn check(label: &str, ok: bool) -> bool {
    println!("# check {label}: {}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn show_fit(label: &str, fit: &LogLogFit) {
    println!(
        "# {label}: slope = {:.4}, intercept = {:.4}, R^2 = {:.6}",
        fit.slope, fit.intercept, fit.quality
    );
}

fn deltas_or(text: Option<&str>, default: &str) -> Result<Vec<f64>> {
    parse_delta_range(text.unwrap_or(default))
}

pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Dirichlet { m, count, common } => {
            header("dirichlet", &common);
            let geo = common.geometry()?;
            let pencil = assemble(m, common.grid()?.build(geo)?)?;
            let discrete = pencil.solve_dirichlet_discrete(count)?;
            let mut t = Table::new(&["m", "n", "lambda_analytic", "lambda_discrete", "rel_error"]);
            let mut worst = 0.0f64;
            for (i, d) in discrete.iter().enumerate() {
                let n = i as u32 + 1;
                let exact = dirichlet_eigenpair(m, n, geo)?.lambda;
                let rel = ((d.lambda - exact) / exact).abs();
                worst = worst.max(rel);
                t.push(vec![m.into(), n.into(), exact.into(), d.lambda.into(), rel.into()]);
            }
            emit(&t, &common)?;
            Ok(check(&format!("relative error {worst:.3e} <= {DIRICHLET_TOL:e}"), worst <= DIRICHLET_TOL))
        }
        Command::Robin { m, delta, count, common } => {
            header("robin", &common);
            let geo = common.geometry()?;
            let exact = robin_sector_spectrum(m, geo, delta, count)?;
            let pencil = assemble(m, common.grid()?.build(geo)?)?.with_delta(delta)?;
            let discrete = pencil.solve_robin_discrete(count)?;
            let mut t = Table::new(&["m", "delta", "branch", "lambda_analytic", "lambda_discrete", "rel_error"]);
            let mut worst = 0.0f64;
            let mut labels = true;
            for (e, d) in exact.iter().zip(&discrete) {
                let rel = ((d.lambda - e.lambda) / e.lambda).abs();
                worst = worst.max(rel);
                labels &= e.branch == d.branch;
                t.push(vec![
                    m.into(),
                    delta.into(),
                    e.branch.label().into(),
                    e.lambda.into(),
                    d.lambda.into(),
                    rel.into(),
                ]);
            }
            emit(&t, &common)?;
            let a = check(&format!("relative error {worst:.3e} <= {ROBIN_TOL:e}"), worst <= ROBIN_TOL);
            let b = check("branch labels agree", labels);
            Ok(a && b)
        }
        Command::Surface { m, delta, deltas, common } => {
            header("surface", &common);
            let list = match delta {
                Some(d) => vec![d],
                None => deltas_or(deltas.as_deref(), default_delta_range("surface", 0))?,
            };
            let report = surface_limit_study(common.geometry()?, &m, &list)?;
            emit(&report.table(), &common)?;
            for f in &report.fits {
                if let Some(fit) = &f.fit {
                    show_fit(&format!("m = {}: |delta^2 lambda + 1| vs delta", f.m), fit);
                }
                println!(
                    "# m = {}: max |delta^2 lambda + 1| R/delta = {:.4}, monotone approach: {}",
                    f.m, f.constant, f.monotone
                );
            }
            Ok(check(
                &format!(
                    "|delta^2 lambda + 1| <= {} delta/R and slope 1 +/- 0.25",
                    experiments::SURFACE_BOUND
                ),
                report.passed(),
            ))
        }
        Command::Expand { m, n, order, common } => {
            header("expand", &common);
            let series = build_series(m, n, common.grid()?.build(common.geometry()?)?, order)?;
            let mut t = Table::new(&["k", "lambda_k", "flux_k", "multiplier"]);
            for k in 0..=order {
                let mult = match series.multipliers()[k] {
                    Some(x) => Cell::Float(x),
                    None => Cell::Text(String::new()),
                };
                t.push(vec![(k as u32).into(), series.lambdas()[k].into(), series.fluxes()[k].into(), mult]);
            }
            emit(&t, &common)?;
            if order >= 1 {
                println!("# lambda_1 / lambda_0 = {:.6}", series.lambdas()[1] / series.lambdas()[0]);
            }
            let worst = (1..=order).map(|k| series.overlap_with_seed(k).abs()).fold(0.0, f64::max);
            let norm = (series.overlap_with_seed(0) - 1.0).abs();
            Ok(check(
                &format!("normalization {norm:.1e}, orthogonality {worst:.1e} <= 1e-10"),
                norm <= 1e-10 && worst <= 1e-10,
            ))
        }
        Command::Converge { m, n, order, deltas, common } => {
            header("converge", &common);
            let list = deltas_or(deltas.as_deref(), default_delta_range("converge", order))?;
            let report = convergence_study(&common.sweep(m, n, order, list)?)?;
            emit(&report.table(), &common)?;
            show_fit("log|error| vs log delta", &report.fit);
            println!(
                "# floor {:.3e}, {} rows below {} x floor excluded",
                report.floor,
                report.excluded,
                experiments::FLOOR_FACTOR
            );
            Ok(check(
                &format!(
                    "slope {} +/- {} with R^2 >= {}",
                    report.expected_slope(),
                    report.tolerance,
                    experiments::MIN_FIT_QUALITY
                ),
                report.passed(),
            ))
        }
        Command::Residual { m, n, order, deltas, alpha, common } => {
            header("residual", &common);
            let list = deltas_or(deltas.as_deref(), default_delta_range("residual", order))?;
            let mut spec = common.sweep(m, n, order, list)?;
            spec.alpha = alpha;
            let report = residual_study(&spec)?;
            emit(&report.table(), &common)?;
            show_fit("log dual_norm vs log delta", &report.fit);
            let a = check(&format!("slope >= {}", report.minimum_slope()), report.fit.slope >= report.minimum_slope());
            let b = check("dual norm decreasing with delta", report.decreasing());
            Ok(a && b)
        }
        Command::Concentrate { m, n, deltas, rho, common } => {
            header("concentrate", &common);
            let list = deltas_or(deltas.as_deref(), default_delta_range("concentrate", 0))?;
            let mut spec = common.sweep(m, n, 0, list)?;
            if let Some(r) = rho {
                spec.rho = r;
            }
            let report = concentration_study(&spec)?;
            emit(&report.table(), &common)?;
            println!(
                "# eta = {:.6} (Dirichlet limit {:.6}); columns l2_gamma and l2_K are squared norms over h1",
                report.eta, report.dirichlet_mass
            );
            show_fit("accumulating l2_gamma vs delta", &report.gamma_fit);
            let a = check(
                "eta > 0.9 x Dirichlet-limit mass",
                report.eta > 0.0 && report.eta >= 0.9 * report.dirichlet_mass,
            );
            let b = check("boundary mass slope >= 0.9", report.gamma_fit.slope >= 0.9);
            let c = check("surface l2_K decreasing", report.surface_decreasing());
            let d = check("surface l2_K <= 1e-12 for delta <= 0.01", report.surface_small());
            Ok(a && b && c && d)
        }
        Command::Coercivity { m, alphas, deltas, common } => {
            header("coercivity", &common);
            let alphas = alphas.unwrap_or_else(|| experiments::DEFAULT_ALPHAS.to_vec());
            let list = match deltas {
                Some(text) => parse_delta_range(&text)?,
                None => experiments::COERCIVITY_DELTAS.to_vec(),
            };
            let report = coercivity_study(common.geometry()?, common.grid()?, m, &alphas, &list)?;
            emit(&report.table(), &common)?;
            println!("# alpha* = {}, theta = {:.6}", report.alpha_star, report.theta);
            let a = check("theta_min nondecreasing in alpha", report.monotone_in_alpha);
            let b = check("coercive column found", report.theta > 0.0);
            Ok(a && b)
        }
    }
}
