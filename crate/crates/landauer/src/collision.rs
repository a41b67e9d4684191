//! Protocol engines: the single-reservoir collision stream and its
//! M-reservoir generalization, producing a trajectory of per-step ledgers.
//!
//! One step of the single-reservoir cycle, starting from the correlated
//! window rho_{S R_n}:
//!   (i)   record the pre-collision window,
//!   (ii)  apply the system-ancilla partial swap U(J),
//!   (iii) evaluate the ledger,
//!   (iv)  attach the fresh thermal ancilla R_{n+1}, apply the
//!         intracollision V(Omega) on (R_n, R_{n+1}), trace out R_n.
//! Stage (iv) is skipped on the last step. The M-reservoir engine runs the
//! same cycle with sequential system collisions in ascending reservoir
//! order, all intracollisions after all system collisions of the step.

use serde::Serialize;

use crate::quantum::{
    apply_gate, attach, partial_swap, partial_trace, thermal_qubit, DensityMatrix, Label,
    QubitHamiltonian,
};
use crate::thermo::{evaluate_ledger, heat_decomposition, LandauerLedger};
use crate::Error;

/// Largest register the engines will build: system + M ancillas + one fresh
/// ancilla during the shift stage.
const MAX_RESERVOIRS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Single,
    Multi { reservoirs: usize },
}

/// Full configuration of one collision run. Temperatures are in units of
/// omega with k_B = 1; strengths are dimensionless angles in [0, pi/2].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub t_system: f64,
    pub t_reservoirs: Vec<f64>,
    pub j: f64,
    pub omega_strength: f64,
    pub n_collisions: usize,
    pub omega: f64,
}

pub const DEFAULT_COLLISIONS: usize = 60;

impl RunConfig {
    pub fn single(t_system: f64, t_reservoir: f64, j: f64, omega_strength: f64) -> Self {
        RunConfig {
            mode: Mode::Single,
            t_system,
            t_reservoirs: vec![t_reservoir],
            j,
            omega_strength,
            n_collisions: DEFAULT_COLLISIONS,
            omega: 1.0,
        }
    }

    pub fn multi(t_system: f64, t_reservoirs: Vec<f64>, j: f64, omega_strength: f64) -> Self {
        RunConfig {
            mode: Mode::Multi { reservoirs: t_reservoirs.len() },
            t_system,
            t_reservoirs,
            j,
            omega_strength,
            n_collisions: DEFAULT_COLLISIONS,
            omega: 1.0,
        }
    }

    pub fn with_collisions(mut self, n: usize) -> Self {
        self.n_collisions = n;
        self
    }

    pub fn reservoir_count(&self) -> usize {
        match self.mode {
            Mode::Single => 1,
            Mode::Multi { reservoirs } => reservoirs,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        if !(0.0..=half_pi).contains(&self.j) {
            return Err(Error::Config(format!("J = {} outside [0, pi/2]", self.j)));
        }
        if !(0.0..=half_pi).contains(&self.omega_strength) {
            return Err(Error::Config(format!(
                "Omega = {} outside [0, pi/2]",
                self.omega_strength
            )));
        }
        if !(self.t_system > 0.0 && self.t_system.is_finite()) {
            return Err(Error::Config(format!("T_system = {} must be positive", self.t_system)));
        }
        for (m, &t) in self.t_reservoirs.iter().enumerate() {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!(
                    "reservoir temperature {m} = {t} must be positive"
                )));
            }
        }
        let m = self.reservoir_count();
        if self.t_reservoirs.len() != m {
            return Err(Error::Config(format!(
                "{} reservoir temperatures given, {m} expected",
                self.t_reservoirs.len()
            )));
        }
        if m == 0 || m > MAX_RESERVOIRS {
            return Err(Error::Config(format!("reservoir count {m} outside 1..={MAX_RESERVOIRS}")));
        }
        if self.n_collisions == 0 {
            return Err(Error::Config("n_collisions must be positive".into()));
        }
        if self.omega <= 0.0 || !self.omega.is_finite() {
            return Err(Error::Config(format!("omega = {} must be positive", self.omega)));
        }
        Ok(())
    }
}

/// Ordered per-step ledgers plus the configuration that produced them.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub config: RunConfig,
    pub records: Vec<LandauerLedger>,
    pub violation_intervals: Vec<(usize, usize)>,
}

impl Trajectory {
    pub fn max_abs_residual(&self) -> f64 {
        self.records.iter().map(|r| r.residual().abs()).fold(0.0, f64::max)
    }

    /// Collision indices n where the total dissipated heat changes sign
    /// relative to the previous step.
    pub fn heat_sign_change_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for w in self.records.windows(2) {
            let (a, b) = (w[0].heat_total(), w[1].heat_total());
            if a != 0.0 && b != 0.0 && a.signum() != b.signum() {
                out.push(w[1].n);
            }
        }
        out
    }
}

/// Maximal contiguous 1-based index ranges where the violation flag is set.
pub fn find_violation_intervals(records: &[LandauerLedger]) -> Vec<(usize, usize)> {
    let mut intervals = Vec::new();
    let mut start: Option<usize> = None;
    for rec in records {
        match (rec.violated, start) {
            (true, None) => start = Some(rec.n),
            (false, Some(s)) => {
                intervals.push((s, rec.n - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        intervals.push((s, records.last().expect("non-empty records").n));
    }
    intervals
}

/// Which stage of the collision cycle a snapshot was taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Window rho_{S R_n ...} before the system collisions of step n.
    PreCollision,
    /// Window immediately after the system collisions of step n.
    PostCollision,
    /// Window after the intracollision shift, holding the next step's
    /// correlated pre-state.
    PostShift,
}

/// State snapshot handed to a run observer.
pub struct Snapshot<'a> {
    pub n: usize,
    pub stage: Stage,
    pub state: &'a DensityMatrix,
}

fn ancilla(reservoir: usize, collision: usize) -> Label {
    Label::Ancilla { reservoir, collision }
}

/// Runs the configured protocol, dispatching on mode.
pub fn run(config: &RunConfig) -> Result<Trajectory, Error> {
    run_with_observer(config, &mut |_| {})
}

/// Same as [`run`], invoking `observer` with the window state at every
/// stage of every step.
pub fn run_with_observer(
    config: &RunConfig,
    observer: &mut dyn FnMut(&Snapshot),
) -> Result<Trajectory, Error> {
    config.validate()?;
    match config.mode {
        Mode::Single => run_single_impl(config, observer),
        Mode::Multi { .. } => run_multi_impl(config, observer),
    }
}

/// Single-reservoir stream.
pub fn run_single(config: &RunConfig) -> Result<Trajectory, Error> {
    config.validate()?;
    if config.mode != Mode::Single {
        return Err(Error::Config("run_single requires single mode".into()));
    }
    run_single_impl(config, &mut |_| {})
}

/// M-reservoir stream.
pub fn run_multi(config: &RunConfig) -> Result<Trajectory, Error> {
    config.validate()?;
    if !matches!(config.mode, Mode::Multi { .. }) {
        return Err(Error::Config("run_multi requires multi mode".into()));
    }
    run_multi_impl(config, &mut |_| {})
}

fn run_single_impl(
    config: &RunConfig,
    observer: &mut dyn FnMut(&Snapshot),
) -> Result<Trajectory, Error> {
    let h = QubitHamiltonian::new(config.omega);
    let beta_s = 1.0 / config.t_system;
    let beta_r = 1.0 / config.t_reservoirs[0];
    let u = partial_swap(config.j)?;
    let v = partial_swap(config.omega_strength)?;
    let n_steps = config.n_collisions;

    let system = thermal_qubit(beta_s, h, Label::System)?;
    let mut window = attach(&system, &thermal_qubit(beta_r, h, ancilla(0, 1))?)?;

    let mut records = Vec::with_capacity(n_steps);
    for n in 1..=n_steps {
        let r = ancilla(0, n);
        observer(&Snapshot { n, stage: Stage::PreCollision, state: &window });

        let post = apply_gate(&window, &u, Label::System, r)?;
        observer(&Snapshot { n, stage: Stage::PostCollision, state: &post });

        let mut ledger = evaluate_ledger(&window, &post, Label::System, &[r], &[h], n)?;
        let (dia, coh) = heat_decomposition(&window, config.j, config.omega)?;
        ledger.heat_dia = dia;
        ledger.heat_coh = coh;
        records.push(ledger);

        if n < n_steps {
            let fresh = thermal_qubit(beta_r, h, ancilla(0, n + 1))?;
            let wide = apply_gate(&attach(&post, &fresh)?, &v, r, ancilla(0, n + 1))?;
            window = partial_trace(&wide, &[r])?;
            observer(&Snapshot { n, stage: Stage::PostShift, state: &window });
        }
    }

    let violation_intervals = find_violation_intervals(&records);
    Ok(Trajectory { config: config.clone(), records, violation_intervals })
}

fn run_multi_impl(
    config: &RunConfig,
    observer: &mut dyn FnMut(&Snapshot),
) -> Result<Trajectory, Error> {
    let m_count = config.reservoir_count();
    let h = QubitHamiltonian::new(config.omega);
    let hamiltonians = vec![h; m_count];
    let beta_s = 1.0 / config.t_system;
    let betas: Vec<f64> = config.t_reservoirs.iter().map(|t| 1.0 / t).collect();
    let u = partial_swap(config.j)?;
    let v = partial_swap(config.omega_strength)?;
    let n_steps = config.n_collisions;

    let mut window = thermal_qubit(beta_s, h, Label::System)?;
    for m in 0..m_count {
        window = attach(&window, &thermal_qubit(betas[m], h, ancilla(m, 1))?)?;
    }

    let mut records = Vec::with_capacity(n_steps);
    for n in 1..=n_steps {
        let res_labels: Vec<Label> = (0..m_count).map(|m| ancilla(m, n)).collect();
        observer(&Snapshot { n, stage: Stage::PreCollision, state: &window });

        // System collisions in ascending reservoir order; the heat split of
        // each sub-collision is read off the (S, R^(m)) marginal just before
        // that sub-collision acts.
        let mut cur = window.clone();
        let mut heat_dia = 0.0;
        let mut heat_coh = 0.0;
        for &r in &res_labels {
            let pair = pair_marginal(&cur, r)?;
            let (dia, coh) = heat_decomposition(&pair, config.j, config.omega)?;
            heat_dia += dia;
            heat_coh += coh;
            cur = apply_gate(&cur, &u, Label::System, r)?;
        }
        let post = cur;
        observer(&Snapshot { n, stage: Stage::PostCollision, state: &post });

        let mut ledger =
            evaluate_ledger(&window, &post, Label::System, &res_labels, &hamiltonians, n)?;
        ledger.heat_dia = heat_dia;
        ledger.heat_coh = heat_coh;
        records.push(ledger);

        if n < n_steps {
            // Shift each reservoir in turn: attach the fresh ancilla, run
            // the intracollision, drop the old ancilla. Keeps the register
            // at no more than 2 + M qubits.
            let mut shifted = post;
            for m in 0..m_count {
                let old = ancilla(m, n);
                let fresh_label = ancilla(m, n + 1);
                let fresh = thermal_qubit(betas[m], h, fresh_label)?;
                let wide = apply_gate(&attach(&shifted, &fresh)?, &v, old, fresh_label)?;
                shifted = partial_trace(&wide, &[old])?;
            }
            window = shifted;
            observer(&Snapshot { n, stage: Stage::PostShift, state: &window });
        }
    }

    let violation_intervals = find_violation_intervals(&records);
    Ok(Trajectory { config: config.clone(), records, violation_intervals })
}

/// Two-qubit marginal on (S, r), tracing out every other label.
fn pair_marginal(state: &DensityMatrix, r: Label) -> Result<DensityMatrix, Error> {
    let others: Vec<Label> = state
        .labels()
        .iter()
        .copied()
        .filter(|&l| l != Label::System && l != r)
        .collect();
    if others.is_empty() {
        return Ok(state.clone());
    }
    partial_trace(state, &others)
}
