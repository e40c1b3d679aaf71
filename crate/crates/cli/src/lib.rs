//! Command-line front end: runs one configuration document and writes a CSV
//! table to `--output` or stdout. Diagnostics go to stderr only.

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use entangle_core::experiments::{analytic_concurrence_reference, free_evolution_curve, sweep_p, sweep_tau};
use entangle_core::io::{parse_config, Cell, Mode, ResultTable, RunConfig};
use entangle_core::pmp::{gradient_check_with, optimize, ControlGrid, GradientCheckOptions};
use entangle_core::quantum::{concurrence_real, propagate, real_embedding, GeneratorSet};

/// Largest relative error accepted by the `gradcheck` mode.
pub const GRADCHECK_THRESHOLD: f64 = 1e-4;

/// Process exit codes. The numeric values are part of the interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    ConfigError = 1,
    SolverAbort = 2,
    GradcheckFailed = 3,
}

#[derive(Debug, Parser)]
#[command(name = "entangle", version, about = "Optimal local control of two-qubit entanglement")]
pub struct Cli {
    /// Run configuration (`key = value` lines).
    #[arg(long)]
    pub config: PathBuf,

    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Overrides `rng_seed` from the config.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Suppress progress and summary lines on stderr.
    #[arg(long)]
    pub quiet: bool,

    /// Test hook: scales the adjoint gradient by `1 + FACTOR` in gradcheck.
    #[arg(long, hide = true, value_name = "FACTOR", default_value_t = 0.0)]
    pub corrupt_gradient: f64,
}

struct Outcome {
    table: ResultTable,
    status: Status,
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Status {
    macro_rules! diag {
        ($($arg:tt)*) => {
            if !cli.quiet {
                let _ = writeln!(stderr, $($arg)*);
            }
        };
    }

    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot read {}: {e}", cli.config.display());
            return Status::ConfigError;
        }
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return Status::ConfigError;
        }
    };
    if let Some(seed) = cli.seed {
        config.rng_seed = seed;
    }

    let gen = GeneratorSet::heisenberg();
    let result = match config.mode {
        Mode::Optimize => cmd_optimize(&config, &gen, stderr, cli.quiet),
        Mode::SweepTau | Mode::SweepP => cmd_sweep(&config, &gen, stderr, cli.quiet),
        Mode::Gradcheck => cmd_gradcheck(&config, &gen, cli.corrupt_gradient, stderr, cli.quiet),
        Mode::Baseline => cmd_baseline(&config, &gen),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: solver aborted: {e}");
            return Status::SolverAbort;
        }
    };

    let written = match &cli.output {
        Some(path) => std::fs::File::create(path)
            .map_err(|e| e.to_string())
            .and_then(|f| outcome.table.write_csv(std::io::BufWriter::new(f)).map_err(|e| e.to_string())),
        None => outcome.table.write_csv(&mut *stdout).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return Status::ConfigError;
    }
    if let Some(path) = &cli.output {
        diag!("wrote {}", path.display());
    }
    outcome.status
}

fn cmd_optimize(
    config: &RunConfig,
    gen: &GeneratorSet,
    stderr: &mut dyn Write,
    quiet: bool,
) -> entangle_core::Result<Outcome> {
    let tau = config.tau.expect("validated");
    let psi0 = config.initial_state()?;
    let x0 = real_embedding(&psi0);
    let report = optimize(&x0, gen, tau, &config.solver_config())?;
    let controls = &report.optimal_controls;
    let states = propagate(&x0, controls, gen)?;

    let mut table = ResultTable::new(&["t", "u1", "u2", "concurrence", "norm"]);
    for (k, x) in states.iter().enumerate() {
        table.push(vec![
            Cell::Float(controls.time(k)),
            Cell::Float(controls.u1()[k]),
            Cell::Float(controls.u2()[k]),
            Cell::Float(concurrence_real(x)),
            Cell::Float(x.norm()),
        ]);
    }
    if !quiet {
        let _ = writeln!(
            stderr,
            "C(tau)={:.6} I(tau)={:.6} J={:.6} iterations={} converged={}",
            report.final_concurrence, report.energy_cost, report.total_cost, report.iterations, report.converged
        );
    }
    Ok(Outcome {
        table,
        status: Status::Success,
    })
}

fn cmd_sweep(
    config: &RunConfig,
    gen: &GeneratorSet,
    stderr: &mut dyn Write,
    quiet: bool,
) -> entangle_core::Result<Outcome> {
    let spec = config.sweep_spec();
    let points = spec.tau_grid.len() * spec.alpha_values.len() * spec.p_values.len();
    if !quiet {
        let _ = writeln!(stderr, "{}: {points} optimization(s)", config.mode.as_str());
    }
    let records = match config.mode {
        Mode::SweepP => sweep_p(&spec, gen)?,
        _ => sweep_tau(&spec, gen)?,
    };
    let failures: Vec<_> = records.iter().filter(|r| r.failed()).collect();
    if !quiet {
        let converged = records.iter().filter(|r| r.converged).count();
        let _ = writeln!(
            stderr,
            "done: {converged}/{points} converged, {} failed",
            failures.len()
        );
        for r in &failures {
            let _ = writeln!(
                stderr,
                "  failed tau={} alpha={} p={}: {}",
                r.tau,
                r.alpha,
                r.p_initial,
                r.failure.as_deref().unwrap_or("")
            );
        }
    }
    Ok(Outcome {
        table: ResultTable::sweep(&records),
        status: Status::Success,
    })
}

fn cmd_gradcheck(
    config: &RunConfig,
    gen: &GeneratorSet,
    corruption: f64,
    stderr: &mut dyn Write,
    quiet: bool,
) -> entangle_core::Result<Outcome> {
    let tau = config.tau.expect("validated");
    let x0 = real_embedding(&config.initial_state()?);
    let probe = ControlGrid::random_smooth(tau, config.n_steps, 1.0, config.rng_seed)?;
    let options = GradientCheckOptions {
        corruption,
        ..GradientCheckOptions::default()
    };
    let report = gradient_check_with(&x0, gen, &config.solver_config(), &probe, &options)?;
    let passed = report.max_relative_error < GRADCHECK_THRESHOLD;
    let mut table = ResultTable::new(&["n_steps", "samples", "max_relative_error", "threshold", "passed"]);
    table.push(vec![
        Cell::Int(config.n_steps as u64),
        Cell::Int(report.samples.len() as u64),
        Cell::Float(report.max_relative_error),
        Cell::Float(GRADCHECK_THRESHOLD),
        Cell::Bool(passed),
    ]);
    if !quiet {
        let _ = writeln!(
            stderr,
            "gradcheck: max relative error {:.3e} ({})",
            report.max_relative_error,
            if passed { "pass" } else { "FAIL" }
        );
    }
    Ok(Outcome {
        table,
        status: if passed { Status::Success } else { Status::GradcheckFailed },
    })
}

fn cmd_baseline(config: &RunConfig, gen: &GeneratorSet) -> entangle_core::Result<Outcome> {
    let tau = config.tau.expect("validated");
    let p0 = config.p_initial.unwrap_or(0.0);
    let curve = free_evolution_curve(&config.initial_state()?, tau, config.n_steps, gen)?;
    let mut table = ResultTable::new(&["t", "concurrence_free", "concurrence_analytic"]);
    for (t, c) in curve {
        table.push(vec![
            Cell::Float(t),
            Cell::Float(c),
            Cell::Float(analytic_concurrence_reference(t, config.h_max, p0)),
        ]);
    }
    Ok(Outcome {
        table,
        status: Status::Success,
    })
}
