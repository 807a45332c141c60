//! `rdexact`: sample, verify and simulate exact solutions of reaction–diffusion equations.

mod figures;
mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rdexact::catalog::{families, family, hat, phi_chain, pole_inventory, tilde, FamilyEntry, Params, Sampler, Window};
use rdexact::elliptic::{complete_elliptic_k, EllipticModulus};
use rdexact::simulate::{
    centred_config, compare_exact, integrate, measure_velocity, predicted_velocity, SimConfig, VelocityConvention,
};
use rdexact::verify::{chain_samples, closed_form_cross_check, ode_residual, pde_residual, proposition_suite, Grid2D};
use serde_json::json;

use output::{gnuplot_script, grid_csv, json_bytes, num, write_atomic, RunManifest};

#[derive(Parser)]
#[command(name = "rdexact", version, about = "Exact solutions of reaction-diffusion equations and their numerical verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every family with its formula, equation and default parameters (JSON).
    List,
    /// Sample a family on a grid as CSV `x,t,u,defined`.
    Sample {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long, requires = "out")]
        gnuplot: bool,
    },
    /// PDE residual with convergence order under grid refinement.
    Verify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Stencil order, 2 or 4.
        #[arg(long, default_value_t = 4)]
        order: u8,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ODE and first-integral checks for one chain element, plus the proposition suite.
    OdeCheck {
        #[arg(long)]
        chain_index: usize,
        /// plain, tilde or hat
        #[arg(long, default_value = "plain")]
        kind: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Integrate the family's equation from its own data and compare with it.
    Simulate {
        #[command(flatten)]
        fam: FamilyArgs,
        /// x0,x1,n_x,t0,t1 (defaults to a window centred on the front)
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value_t = 11)]
        checkpoints: usize,
        #[arg(long, default_value_t = 0.9)]
        safety: f64,
        #[arg(long, default_value_t = 4)]
        space_order: u8,
        /// Level whose crossing is tracked for the velocity.
        #[arg(long, allow_hyphen_values = true)]
        level: Option<f64>,
        #[arg(long, default_value = "simulate-out")]
        out_dir: PathBuf,
    },
    /// Measured versus predicted front velocity (all reference cases if no family is given).
    Velocity {
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "param", short = 'p', value_name = "NAME=VALUE", allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        level: Option<f64>,
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        #[arg(long, default_value_t = 2.0)]
        duration: f64,
        #[arg(long)]
        json: bool,
    },
    /// First-integral constants and pole inventory along the chain.
    Chain {
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Plot data for a reference figure.
    Figures {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        id: Vec<u8>,
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
        #[arg(long)]
        gnuplot: bool,
    },
    /// Closed forms as usually printed against the chain-generated solutions.
    CrossCheck {
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long = "param", short = 'p', value_name = "NAME=VALUE", allow_hyphen_values = true)]
    params: Vec<String>,
}

#[derive(Args)]
struct GridArgs {
    /// x0,x1 (defaults to the family window)
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// t0,t1
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    nt: Option<usize>,
}

fn parse_params(raw: &[String]) -> Result<Params> {
    raw.iter()
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("parameter `{kv}` is not NAME=VALUE"))?;
            let v: f64 = v.trim().parse().with_context(|| format!("parameter `{k}`: `{v}` is not a number"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn parse_list(raw: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = raw
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("{what}: expected {n} comma-separated numbers, got `{raw}`"))?;
    if v.len() != n {
        bail!("{what}: expected {n} comma-separated numbers, got `{raw}`");
    }
    Ok(v)
}

fn lookup(fam: &FamilyArgs) -> Result<(FamilyEntry, Params, Sampler)> {
    let entry = family(&fam.family)?;
    let params = parse_params(&fam.params)?;
    let sampler = entry.build(&params)?;
    Ok((entry, params, sampler))
}

fn grid_from(entry: &FamilyEntry, params: &Params, g: &GridArgs) -> Result<Grid2D> {
    let w = entry.window(params)?;
    let x = g.x.as_deref().map(|s| parse_list(s, 2, "--x")).transpose()?.map_or(w.x, |v| [v[0], v[1]]);
    let t = g.t.as_deref().map(|s| parse_list(s, 2, "--t")).transpose()?.map_or(w.t, |v| [v[0], v[1]]);
    Ok(Grid2D::new(x, g.nx.unwrap_or(w.n_x), t, g.nt.unwrap_or(w.n_t))?)
}

fn grid_of(w: &Window) -> Result<Grid2D> {
    Ok(Grid2D::new(w.x, w.n_x, w.t, w.n_t)?)
}

fn stdout_or(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::List => {
            let infos: Vec<_> = families().iter().map(|f| f.info()).collect();
            stdout_or(None, &json_bytes("list", &infos)?)
        }
        Command::Sample { fam, grid, out, gnuplot } => {
            let (entry, params, s) = lookup(&fam)?;
            let g = grid_from(&entry, &params, &grid)?;
            let (csv, defined) = grid_csv(&s, &g);
            if defined < 1.0 {
                eprintln!("warning: {} undefined on {:.1}% of the grid ({})", s.family_id, 100.0 * (1.0 - defined), s.domain_note);
            }
            stdout_or(out.as_deref(), csv.as_bytes())?;
            if let (true, Some(out)) = (gnuplot, out.as_ref()) {
                let name = out.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                let [xl, tl] = s.variables;
                write_atomic(&out.with_extension("gp"), gnuplot_script(&name, &s.family_id, xl, tl).as_bytes())?;
            }
            Ok(())
        }
        Command::Verify { fam, grid, order, out } => {
            let (entry, params, s) = lookup(&fam)?;
            let g = grid_from(&entry, &params, &grid)?;
            let r = pde_residual(&s, &s.equation, &g, order)?;
            eprintln!("{} against {}", s.family_id, s.equation.formula());
            eprintln!("  {:>11} {:>11} {:>11} {:>11} {:>8}", "h_x", "h_t", "max", "rms", "defined");
            for l in &r.levels {
                eprintln!("  {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e} {:>8.3}", l.h_x, l.h_t, l.max_abs, l.l2, l.defined_fraction);
            }
            let order_text = r.order_estimate.map_or("n/a".to_string(), |p| format!("{p:.2}"));
            let verdict = if r.converges(3.5, 1e-6) { "converges" } else { "does not converge" };
            eprintln!("  observed order {order_text}, finest max {:.3e}: {verdict}", r.max_abs);
            let body = json!({ "sampler": s.meta(), "report": r });
            stdout_or(out.as_deref(), &json_bytes("verify", &body)?)
        }
        Command::OdeCheck { chain_index, kind, samples, seed } => {
            let state = match kind.as_str() {
                "plain" => phi_chain(chain_index),
                "tilde" => tilde(chain_index)?,
                "hat" => hat(chain_index)?,
                other => bail!("unknown chain kind `{other}`; valid: plain, tilde, hat"),
            };
            let ys = chain_samples(&state, samples, seed);
            let report = ode_residual(&state, &ys)?;
            let table = proposition_suite();
            eprintln!("{}: c = {:+}, first integral {:.6} (sampled {:.6}), max ODE deviation {:.2e}", report.label, state.c_sign, state.first_integral, report.c_estimate, report.second_order_max);
            for row in &table.rows {
                let status = if !row.applicable { "n/a " } else if row.passed { "ok  " } else { "FAIL" };
                eprintln!("  prop {} n={} {status} dev {:.2e}  {}", row.proposition, row.index, row.max_deviation, row.check);
            }
            stdout_or(None, &json_bytes("ode-check", &json!({ "ode": report, "propositions": table }))?)
        }
        Command::Simulate { fam, window, checkpoints, safety, space_order, level, out_dir } => {
            let (_, params, s) = lookup(&fam)?;
            let mut cfg = match window {
                Some(w) => {
                    let v = parse_list(&w, 5, "--window")?;
                    SimConfig::uniform([v[0], v[1]], v[2] as usize, [v[3], v[4]], checkpoints)
                }
                None => {
                    let speed = predicted_velocity(&s).map_or(0.0, |p| p.velocity);
                    centred_config(speed, 2.0, 0.05, 15.0, checkpoints)
                }
            };
            cfg.safety = safety;
            cfg.space_order = space_order;
            let hist = integrate(&s.equation, &s, &cfg)?;
            // without an explicit level, track the midpoint between the boundary states
            let level = level.or_else(|| {
                let u0 = hist.fields.first()?;
                let mid = 0.5 * (u0.first()? + u0.last()?);
                ((u0.first()? - u0.last()?).abs() > 1e-3).then_some(mid)
            });
            let report = compare_exact(&hist, &s, level)?;
            let mut manifest = RunManifest::new("simulate", json!({ "family": s.family_id, "params": params, "config": cfg, "level": level }));
            for (k, u) in hist.fields.iter().enumerate() {
                let mut csv = String::from("x,u\n");
                for (x, v) in hist.x.iter().zip(u) {
                    let _ = writeln!(csv, "{},{}", num(*x), num(*v));
                }
                manifest.emit(out_dir.join(format!("checkpoint_{k:03}.csv")), csv.as_bytes())?;
            }
            let body = json!({ "sampler": s.meta(), "config": cfg, "times": hist.times, "steps": hist.steps, "report": report });
            manifest.emit(out_dir.join("report.json"), &json_bytes("simulate", &body)?)?;
            let path = manifest.finish(&out_dir)?;
            eprintln!("{}: max error {:.3e} over {} steps", s.family_id, report.max_error, hist.steps);
            if let Some(v) = report.measured_velocity {
                eprintln!("  velocity {v:.6} (r2 {:.8})", report.velocity_fit_r2.unwrap_or(f64::NAN));
            } else if let Some(note) = &report.velocity_note {
                eprintln!("  no velocity: {note}");
            }
            eprintln!("  wrote {}", path.display());
            Ok(())
        }
        Command::Velocity { family: fam, params, level, h, duration, json: as_json } => {
            let cases: Vec<Sampler> = match fam {
                Some(id) => vec![family(&id)?.build(&parse_params(&params)?)?],
                None => reference_velocity_cases()?,
            };
            let mut rows = Vec::new();
            let mut table = format!(
                "{:<26} {:<28} {:>11} {:>11} {:>9} {:>10}  {}\n",
                "family", "params", "predicted", "measured", "rel.err", "r2", "method"
            );
            for s in &cases {
                let p = predicted_velocity(s).ok_or_else(|| anyhow!("no velocity prediction for {}", s.family_id))?;
                let cfg = centred_config(p.velocity, duration, h, 15.0, 11);
                let params: Vec<String> =
                    s.params.iter().filter(|(k, _)| k.as_str() != "reflect_y").map(|(k, v)| format!("{k}={v}")).collect();
                match measure_velocity(s, &cfg, level) {
                    Ok(m) => {
                        let note = if m.convention == VelocityConvention::SpeedOnly { " (speeds)" } else { "" };
                        let _ = writeln!(
                            table,
                            "{:<26} {:<28} {:>11.6} {:>11.6} {:>9.2e} {:>10.8}  {}{note}",
                            s.family_id,
                            params.join(" "),
                            m.predicted,
                            m.measured,
                            m.relative_error,
                            m.r2,
                            m.method
                        );
                        rows.push(json!({ "params": s.params, "measurement": m }));
                    }
                    Err(e) => {
                        let _ = writeln!(table, "{:<26} {:<28} {:>11.6} {:>11} error: {e}", s.family_id, params.join(" "), p.velocity, "-");
                        rows.push(json!({ "family_id": s.family_id, "params": s.params, "error": e.to_string() }));
                    }
                }
            }
            if as_json {
                stdout_or(None, &json_bytes("velocity", &rows)?)
            } else {
                print!("{table}");
                Ok(())
            }
        }
        Command::Chain { depth, json: as_json } => {
            let period = 4.0 * complete_elliptic_k(EllipticModulus::lemniscatic())?;
            let mut rows = Vec::new();
            let mut table = format!("{:>3} {:>12} {:>8} {:>8}  poles on (0, 4K)\n", "n", "C_n", "tilde", "hat");
            for n in 0..=depth {
                let s = phi_chain(n);
                let poles = pole_inventory(&s, 1e-3, period - 1e-3, 4000);
                let (has_tilde, has_hat) = (tilde(n).is_ok(), hat(n).is_ok());
                let shown: Vec<String> = poles.iter().map(|p| format!("{p:.6}")).collect();
                let _ = writeln!(table, "{n:>3} {:>12} {:>8} {:>8}  {}", s.c_n, has_tilde, has_hat, shown.join(" "));
                rows.push(json!({ "n": n, "c_n": s.c_n, "first_integral": s.first_integral, "tilde": has_tilde, "hat": has_hat, "poles": poles }));
            }
            if as_json {
                stdout_or(None, &json_bytes("chain", &json!({ "period": period, "rows": rows }))?)
            } else {
                print!("{table}");
                Ok(())
            }
        }
        Command::Figures { id, out_dir, gnuplot } => {
            let ids: Vec<u8> = if id.is_empty() { figures::IDS.collect() } else { id };
            let mut manifest = RunManifest::new("figures", json!({ "ids": ids }));
            let mut summary = Vec::new();
            for id in ids {
                let fig = figures::figure(id).ok_or_else(|| anyhow!("no figure {id}"))?;
                let s = family(fig.family)?.build(&fig.params())?;
                let g = grid_of(&fig.window)?;
                let (csv, defined) = grid_csv(&s, &g);
                let name = format!("figure{id}.csv");
                manifest.emit(out_dir.join(&name), csv.as_bytes())?;
                if gnuplot {
                    let [xl, tl] = s.variables;
                    manifest.emit(out_dir.join(format!("figure{id}.gp")), gnuplot_script(&name, fig.title, xl, tl).as_bytes())?;
                }
                let r = pde_residual(&s, &s.equation, &grid_of(&fig.residual_window()?)?, 4)?;
                eprintln!(
                    "figure {id}: {} defined {:.3}, residual order {} max {:.2e}",
                    fig.title,
                    defined,
                    r.order_estimate.map_or("n/a".into(), |p| format!("{p:.2}")),
                    r.max_abs
                );
                summary.push(json!({
                    "id": fig.id, "title": fig.title, "family": fig.family, "params": fig.params(), "window": fig.window,
                    "defined_fraction": defined, "residual_order": r.order_estimate, "residual_max": r.max_abs,
                }));
            }
            manifest.emit(out_dir.join("figures.json"), &json_bytes("figures", &summary)?)?;
            manifest.finish(&out_dir)?;
            Ok(())
        }
        Command::CrossCheck { points, seed } => {
            let rows = closed_form_cross_check(points, seed);
            for r in &rows {
                let factor = if (r.ratio_median - 1.0).abs() > 1e-6 && r.ratio_spread < 1e-6 {
                    format!(" constant factor {:.6}", r.ratio_median)
                } else {
                    String::new()
                };
                eprintln!("{:<9} {:<9} {} max dev {:.2e}{factor}", r.name, r.form, if r.passed { "ok  " } else { "FAIL" }, r.max_deviation);
            }
            stdout_or(None, &json_bytes("cross-check", &rows)?)
        }
    }
}

/// Plane waves on the KPP line, Fisher and the generalized Fisher family.
fn reference_velocity_cases() -> Result<Vec<Sampler>> {
    let build = |id: &str, p: &[(&str, f64)]| -> Result<Sampler> {
        Ok(family(id)?.build(&p.iter().map(|(k, v)| (k.to_string(), *v)).collect())?)
    };
    let mut out = vec![build("fisher/u1", &[])?];
    for c1 in [-2.0, -1.0, 1.0, 2.0] {
        out.push(build("generalized_fisher/tanh", &[("c1", c1)])?);
    }
    for (n, c1) in [(2.0, -1.0), (3.0, -1.0), (2.0, -2.0)] {
        out.push(build("plane_wave", &[("n", n), ("c1", c1)])?);
    }
    out.push(build("bell", &[("epsilon", 0.3)])?);
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
