//! Flat `key = value` run configuration.
//!
//! ```text
//! # Fig. 3 style run
//! mode = optimize
//! tau = 4
//! alpha = 0.1
//! p_initial = 0
//! phi_state = up_z
//! chi_state = down_z
//! ```
//!
//! Grids are comma-separated lists or inclusive `start:step:stop` ranges.
//! Qubit states are named axis states (`up_x` … `down_z`) or
//! `bloch(theta, phi)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::experiments::{SweepSpec, HEISENBERG_H_MAX};
use crate::pmp::{SolverConfig, UpdateStrategy};
use crate::quantum::{schmidt_state, QubitState, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Optimize,
    SweepTau,
    SweepP,
    Gradcheck,
    Baseline,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Optimize => "optimize",
            Mode::SweepTau => "sweep_tau",
            Mode::SweepP => "sweep_p",
            Mode::Gradcheck => "gradcheck",
            Mode::Baseline => "baseline",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "optimize" => Mode::Optimize,
            "sweep_tau" => Mode::SweepTau,
            "sweep_p" => Mode::SweepP,
            "gradcheck" => Mode::Gradcheck,
            "baseline" => Mode::Baseline,
            _ => return None,
        })
    }
}

/// Textual description of a single-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    UpX,
    DownX,
    UpY,
    DownY,
    UpZ,
    DownZ,
    Bloch { theta: f64, phi: f64 },
}

impl StateSpec {
    pub fn to_qubit(&self) -> QubitState {
        match *self {
            StateSpec::UpX => QubitState::up_x(),
            StateSpec::DownX => QubitState::down_x(),
            StateSpec::UpY => QubitState::up_y(),
            StateSpec::DownY => QubitState::down_y(),
            StateSpec::UpZ => QubitState::up_z(),
            StateSpec::DownZ => QubitState::down_z(),
            StateSpec::Bloch { theta, phi } => QubitState::bloch(theta, phi),
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "up_x" => StateSpec::UpX,
            "down_x" => StateSpec::DownX,
            "up_y" => StateSpec::UpY,
            "down_y" => StateSpec::DownY,
            "up_z" => StateSpec::UpZ,
            "down_z" => StateSpec::DownZ,
            _ => {
                let inner = s.strip_prefix("bloch(")?.strip_suffix(')')?;
                let (theta, phi) = inner.split_once(',')?;
                let theta: f64 = theta.trim().parse().ok()?;
                let phi: f64 = phi.trim().parse().ok()?;
                if !(theta.is_finite() && phi.is_finite()) {
                    return None;
                }
                StateSpec::Bloch { theta, phi }
            }
        })
    }
}

impl std::str::FromStr for StateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StateSpec::parse(s.trim()).ok_or_else(|| format!("unknown state `{s}`"))
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::UpX => f.write_str("up_x"),
            StateSpec::DownX => f.write_str("down_x"),
            StateSpec::UpY => f.write_str("up_y"),
            StateSpec::DownY => f.write_str("down_y"),
            StateSpec::UpZ => f.write_str("up_z"),
            StateSpec::DownZ => f.write_str("down_z"),
            StateSpec::Bloch { theta, phi } => write!(f, "bloch({theta:?}, {phi:?})"),
        }
    }
}

/// One problem found while parsing a document.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigViolation {
    Syntax { line: usize, text: String },
    UnknownKey { key: String },
    DuplicateKey { key: String },
    MissingKey { key: &'static str },
    TypeMismatch { key: String, expected: &'static str, found: String },
    OutOfRange { key: String, reason: String },
}

impl ConfigViolation {
    /// The offending key, if the violation is attached to one.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigViolation::Syntax { .. } => None,
            ConfigViolation::UnknownKey { key }
            | ConfigViolation::DuplicateKey { key }
            | ConfigViolation::TypeMismatch { key, .. }
            | ConfigViolation::OutOfRange { key, .. } => Some(key),
            ConfigViolation::MissingKey { key } => Some(key),
        }
    }
}

impl fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigViolation::Syntax { line, text } => write!(f, "line {line}: expected `key = value`, got `{text}`"),
            ConfigViolation::UnknownKey { key } => write!(f, "unknown key `{key}`"),
            ConfigViolation::DuplicateKey { key } => write!(f, "key `{key}` given more than once"),
            ConfigViolation::MissingKey { key } => write!(f, "missing required key `{key}`"),
            ConfigViolation::TypeMismatch { key, expected, found } => {
                write!(f, "key `{key}`: expected {expected}, got `{found}`")
            }
            ConfigViolation::OutOfRange { key, reason } => write!(f, "key `{key}`: {reason}"),
        }
    }
}

/// Every violation found in a document, in document order.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub violations: Vec<ConfigViolation>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration ({} problem(s))", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

const KEYS: &[&str] = &[
    "mode",
    "tau",
    "alpha",
    "p_initial",
    "phi_state",
    "chi_state",
    "n_steps",
    "max_iterations",
    "gradient_tolerance",
    "initial_step",
    "epsilon_smoothing",
    "rng_seed",
    "trial_control_amplitude",
    "tau_grid",
    "alpha_values",
    "p_values",
    "h_max",
    "update_strategy",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub tau: Option<f64>,
    pub alpha: Option<f64>,
    pub p_initial: Option<f64>,
    pub phi_state: StateSpec,
    pub chi_state: StateSpec,
    pub n_steps: usize,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub initial_step: f64,
    pub epsilon_smoothing: f64,
    pub rng_seed: u64,
    pub trial_control_amplitude: f64,
    pub tau_grid: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub h_max: f64,
    pub update_strategy: UpdateStrategy,
}

/// τ ∈ [0.05, 6] in steps of 0.05.
pub fn default_tau_grid() -> Vec<f64> {
    (1..=120).map(|k| k as f64 * 0.05).collect()
}

impl RunConfig {
    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            alpha: self.alpha.unwrap_or(0.0),
            n_steps: self.n_steps,
            max_iterations: self.max_iterations,
            gradient_tolerance: self.gradient_tolerance,
            initial_step: self.initial_step,
            epsilon_smoothing: self.epsilon_smoothing,
            rng_seed: self.rng_seed,
            trial_control_amplitude: self.trial_control_amplitude,
            update: self.update_strategy,
        }
    }

    /// The sweep grid for `sweep_tau` (P fixed at `p_initial`) or `sweep_p`
    /// (α fixed at `alpha`); both vary τ over `tau_grid`.
    pub fn sweep_spec(&self) -> SweepSpec {
        let (alpha_values, p_values) = match self.mode {
            Mode::SweepP => (vec![self.alpha.unwrap_or(0.0)], self.p_values.clone()),
            _ => (self.alpha_values.clone(), vec![self.p_initial.unwrap_or(0.0)]),
        };
        SweepSpec {
            tau_grid: self.tau_grid.clone(),
            alpha_values,
            p_values,
            initial_phi: self.phi_state.to_qubit(),
            initial_chi: self.chi_state.to_qubit(),
            solver: self.solver_config(),
            h_max: self.h_max,
        }
    }

    pub fn initial_state(&self) -> crate::Result<StateVector> {
        schmidt_state(
            self.p_initial.unwrap_or(0.0),
            &self.phi_state.to_qubit(),
            &self.chi_state.to_qubit(),
        )
    }

    /// Writes every set key in canonical form; parsing the result yields an
    /// equal config.
    pub fn to_document(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        put("mode", self.mode.as_str().to_string());
        if let Some(t) = self.tau {
            put("tau", format!("{t:?}"));
        }
        if let Some(a) = self.alpha {
            put("alpha", format!("{a:?}"));
        }
        if let Some(p) = self.p_initial {
            put("p_initial", format!("{p:?}"));
        }
        put("phi_state", self.phi_state.to_string());
        put("chi_state", self.chi_state.to_string());
        put("n_steps", self.n_steps.to_string());
        put("max_iterations", self.max_iterations.to_string());
        put("gradient_tolerance", format!("{:?}", self.gradient_tolerance));
        put("initial_step", format!("{:?}", self.initial_step));
        put("epsilon_smoothing", format!("{:?}", self.epsilon_smoothing));
        put("rng_seed", self.rng_seed.to_string());
        put("trial_control_amplitude", format!("{:?}", self.trial_control_amplitude));
        put("tau_grid", list(&self.tau_grid));
        put("alpha_values", list(&self.alpha_values));
        put("p_values", list(&self.p_values));
        put("h_max", format!("{:?}", self.h_max));
        let strategy = match self.update_strategy {
            UpdateStrategy::Descent => "descent",
            UpdateStrategy::ExactMin => "exact_min",
        };
        put("update_strategy", strategy.to_string());
        out
    }
}

struct Parser {
    entries: BTreeMap<String, String>,
    violations: Vec<ConfigViolation>,
}

impl Parser {
    fn take(&mut self, key: &'static str) -> Option<String> {
        self.entries.remove(key)
    }

    fn mismatch(&mut self, key: &str, expected: &'static str, found: &str) {
        self.violations.push(ConfigViolation::TypeMismatch {
            key: key.to_string(),
            expected,
            found: found.to_string(),
        });
    }

    fn range(&mut self, key: &str, reason: impl Into<String>) {
        self.violations.push(ConfigViolation::OutOfRange {
            key: key.to_string(),
            reason: reason.into(),
        });
    }

    fn float(&mut self, key: &'static str, check: fn(f64) -> bool, rule: &str) -> Option<f64> {
        let raw = self.take(key)?;
        match raw.parse::<f64>() {
            Ok(v) if check(v) => Some(v),
            Ok(v) => {
                self.range(key, format!("{v} violates {rule}"));
                None
            }
            Err(_) => {
                self.mismatch(key, "a number", &raw);
                None
            }
        }
    }

    fn integer<T: std::str::FromStr>(&mut self, key: &'static str) -> Option<T> {
        let raw = self.take(key)?;
        match raw.parse::<T>() {
            Ok(v) => Some(v),
            Err(_) => {
                self.mismatch(key, "a non-negative integer", &raw);
                None
            }
        }
    }

    fn grid(&mut self, key: &'static str, check: fn(f64) -> bool, rule: &str) -> Option<Vec<f64>> {
        let raw = self.take(key)?;
        let Some(values) = parse_grid(&raw) else {
            self.mismatch(key, "a comma-separated list or start:step:stop range", &raw);
            return None;
        };
        if values.is_empty() {
            self.range(key, "grid is empty");
            return None;
        }
        if let Some(v) = values.iter().find(|v| !check(**v)) {
            self.range(key, format!("{v} violates {rule}"));
            return None;
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            self.range(key, "grid must be strictly increasing");
            return None;
        }
        Some(values)
    }

    fn state(&mut self, key: &'static str) -> Option<StateSpec> {
        let raw = self.take(key)?;
        let parsed = StateSpec::parse(&raw);
        if parsed.is_none() {
            self.mismatch(key, "up_x|down_x|up_y|down_y|up_z|down_z|bloch(theta, phi)", &raw);
        }
        parsed
    }
}

fn parse_grid(raw: &str) -> Option<Vec<f64>> {
    let parts: Vec<&str> = raw.split(':').map(str::trim).collect();
    if parts.len() == 3 {
        let [start, step, stop] = [parts[0], parts[1], parts[2]].map(|p| p.parse::<f64>().ok());
        let (start, step, stop) = (start?, step?, stop?);
        if !(step > 0.0 && start.is_finite() && stop.is_finite()) || stop < start {
            return None;
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        return Some((0..=count).map(|k| start + k as f64 * step).collect());
    }
    if parts.len() != 1 {
        return None;
    }
    raw.split(',')
        .map(|s| s.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect()
}

fn positive(v: f64) -> bool {
    v > 0.0 && v.is_finite()
}

fn non_negative(v: f64) -> bool {
    v >= 0.0 && v.is_finite()
}

fn unit_interval(v: f64) -> bool {
    (0.0..=1.0).contains(&v)
}

/// Parses and validates a configuration document, reporting every
/// violation rather than stopping at the first.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut p = Parser {
        entries: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (idx, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            p.violations.push(ConfigViolation::Syntax {
                line: idx + 1,
                text: content.to_string(),
            });
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            p.violations.push(ConfigViolation::UnknownKey { key: key.to_string() });
        } else if p.entries.insert(key.to_string(), value.to_string()).is_some() {
            p.violations.push(ConfigViolation::DuplicateKey { key: key.to_string() });
        }
    }

    let defaults = SolverConfig::default();
    let mode = p.take("mode").and_then(|raw| {
        let m = Mode::parse(&raw);
        if m.is_none() {
            p.mismatch("mode", "optimize|sweep_tau|sweep_p|gradcheck|baseline", &raw);
        }
        m
    });
    let mode_given = mode.is_some();
    let tau = p.float("tau", positive, "tau > 0");
    let alpha = p.float("alpha", non_negative, "alpha >= 0");
    let p_initial = p.float("p_initial", unit_interval, "0 <= p_initial <= 1");
    let phi_state = p.state("phi_state");
    let chi_state = p.state("chi_state");
    let n_steps = p.integer::<usize>("n_steps");
    if let Some(n) = n_steps.filter(|&n| n < 2) {
        p.range("n_steps", format!("{n} violates n_steps >= 2"));
    }
    let max_iterations = p.integer::<usize>("max_iterations");
    let gradient_tolerance = p.float("gradient_tolerance", positive, "gradient_tolerance > 0");
    let initial_step = p.float("initial_step", positive, "initial_step > 0");
    let epsilon_smoothing = p.float("epsilon_smoothing", positive, "epsilon_smoothing > 0");
    let rng_seed = p.integer::<u64>("rng_seed");
    let trial_control_amplitude = p.float(
        "trial_control_amplitude",
        non_negative,
        "trial_control_amplitude >= 0",
    );
    let tau_grid = p.grid("tau_grid", positive, "tau > 0");
    let alpha_values = p.grid("alpha_values", non_negative, "alpha >= 0");
    let p_values = p.grid("p_values", unit_interval, "0 <= P <= 1");
    let h_max = p.float("h_max", positive, "h_max > 0");
    let update_strategy = p.take("update_strategy").and_then(|raw| match raw.as_str() {
        "descent" => Some(UpdateStrategy::Descent),
        "exact_min" => Some(UpdateStrategy::ExactMin),
        _ => {
            p.mismatch("update_strategy", "descent|exact_min", &raw);
            None
        }
    });

    // Required keys, checked against what was present in the document
    // (a present-but-invalid key already has its own violation).
    let present = |k: &str| text_has_key(text, k);
    let mut required: Vec<&'static str> = vec!["mode", "phi_state", "chi_state"];
    if let Some(m) = mode {
        match m {
            Mode::Optimize | Mode::Gradcheck => required.extend(["tau", "alpha", "p_initial"]),
            Mode::Baseline => required.extend(["tau", "p_initial"]),
            Mode::SweepTau => required.push("p_initial"),
            Mode::SweepP => required.push("alpha"),
        }
    }
    for key in required {
        if !present(key) && !(key == "mode" && mode_given) {
            p.violations.push(ConfigViolation::MissingKey { key });
        }
    }
    if update_strategy == Some(UpdateStrategy::ExactMin) {
        let zero_alpha = match mode {
            Some(Mode::SweepTau) => alpha_values.as_ref().is_some_and(|v| v.contains(&0.0)),
            _ => alpha == Some(0.0),
        };
        if zero_alpha {
            p.range("update_strategy", "exact_min requires alpha > 0");
        }
    }

    if !p.violations.is_empty() {
        return Err(ConfigError {
            violations: p.violations,
        });
    }
    Ok(RunConfig {
        mode: mode.expect("checked"),
        tau,
        alpha,
        p_initial,
        phi_state: phi_state.expect("checked"),
        chi_state: chi_state.expect("checked"),
        n_steps: n_steps.unwrap_or(defaults.n_steps),
        max_iterations: max_iterations.unwrap_or(defaults.max_iterations),
        gradient_tolerance: gradient_tolerance.unwrap_or(defaults.gradient_tolerance),
        initial_step: initial_step.unwrap_or(defaults.initial_step),
        epsilon_smoothing: epsilon_smoothing.unwrap_or(defaults.epsilon_smoothing),
        rng_seed: rng_seed.unwrap_or(defaults.rng_seed),
        trial_control_amplitude: trial_control_amplitude.unwrap_or(defaults.trial_control_amplitude),
        tau_grid: tau_grid.unwrap_or_else(default_tau_grid),
        alpha_values: alpha_values.unwrap_or_else(|| vec![1e-3, 1e-2, 1e-1]),
        p_values: p_values.unwrap_or_else(|| vec![0.0, 0.1, 0.25, 0.4]),
        h_max: h_max.unwrap_or(HEISENBERG_H_MAX),
        update_strategy: update_strategy.unwrap_or_default(),
    })
}

fn text_has_key(text: &str, key: &str) -> bool {
    text.lines().any(|line| {
        let content = line.split('#').next().unwrap_or("");
        content.split_once('=').is_some_and(|(k, _)| k.trim() == key)
    })
}
