//! Collision-model simulator for open-quantum-system thermodynamics:
//! partial-swap collision streams against one or many thermal reservoirs,
//! with a per-step ledger of entropy change, entropy production, mutual
//! information and heat, and detection of the steps where dissipated heat
//! (in units of k_B T) drops below the information erased from the system.
//!
//! The library is organized bottom-up:
//! - [`linalg`]: dense complex matrices, Jacobi eigensolver, spectral
//!   functions (dimension <= 64);
//! - [`quantum`]: labeled qubit registers, thermal states, partial-swap
//!   gates, partial trace;
//! - [`thermo`]: entropies, heat, inverse temperatures, the per-step
//!   ledger evaluator;
//! - [`collision`]: the single- and multi-reservoir protocol engines;
//! - [`cli`]: config-file parsing, sweep execution with CSV/JSON output,
//!   and the violation report.
//!
//! See the crate examples for runnable entry points into each capability.

pub mod cli;
pub mod collision;
pub mod linalg;
pub mod quantum;
pub mod thermo;

pub use collision::{run, run_multi, run_single, RunConfig, Trajectory};
pub use quantum::{DensityMatrix, Label, PartialSwapGate, QubitHamiltonian};
pub use thermo::LandauerLedger;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("capacity exceeded: requested dimension {requested}, cap {cap}")]
    Capacity { requested: usize, cap: usize },
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("spectral function undefined at eigenvalue {eigenvalue}")]
    Domain { eigenvalue: f64 },
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("label collision: {0}")]
    LabelCollision(String),
    #[error("interaction strength {0} outside [0, pi/2]")]
    StrengthOutOfRange(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("relative-entropy reference is rank-deficient (min eigenvalue {min_eigenvalue:.3e})")]
    RankDeficient { min_eigenvalue: f64 },
    #[error("state is not of thermal form (off-diagonal magnitude {offdiag:.3e})")]
    NonThermalForm { offdiag: f64 },
    #[error("population at boundary (p0={p0}, p1={p1}): inverse temperature diverges")]
    InfiniteBeta { p0: f64, p1: f64 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("ledger identity failure at step {n}: |residual| = {residual:.3e}")]
    LedgerIdentity { n: usize, residual: f64 },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed summary: {0}")]
    MalformedSummary(String),
}

impl Error {
    /// Process exit code for the batch front end: 1 validation, 2 ledger
    /// identity failure, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LedgerIdentity { .. } => 2,
            Error::Io(_) => 3,
            _ => 1,
        }
    }
}
