//! Partition entropy, transfer-matrix pressure for cylinder potentials,
//! exact Gibbs states on small tori and freezing checks.

mod entropy;
mod sweep;
mod torus;
mod transfer;

pub use entropy::{
    conditional_entropy, entropy_identities, joint_entropy, partition_entropy, psi, IdentityCheck,
    JointPartition,
};
pub use sweep::{
    beta_sweep, boundary_check, concat_phi_frequency, lift_entropy_check, mu_f_check, parse_betas,
    potential_sweep, sig, sweep_csv, sweep_header, tower_potential, FreezingCheck, Sweep, SweepRow,
    SWEEP_HEADER,
};
pub use torus::{exact_gibbs_torus_2d, torus_energy, torus_pattern, TorusResult, TORUS_LIMIT};
pub use transfer::{transfer_pressure, PotentialSpec, TransferOptions, TransferResult};

use crate::tower::TowerError;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ThermoError {
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("negative probability {0}")]
    Negative(f64),
    #[error("joint distribution must be a non-empty rectangle")]
    Shape,
    #[error("{0}")]
    Spec(String),
    #[error("transfer matrix has {states} states, above the limit {limit}")]
    TooManyStates { states: usize, limit: usize },
    #[error("truncation m = {m} is out of range (need m >= 2 and 3^(m-1) <= {limit})")]
    Truncation { m: usize, limit: usize },
    #[error("{q}^({n}x{n}) torus configurations exceed the limit {limit}")]
    TorusTooLarge { q: usize, n: usize, limit: u64 },
    #[error("transfer matrix is not primitive ({})", period_text(.period))]
    NotPrimitive { period: Option<usize> },
    #[error("eigenvector iteration did not converge in {iterations} steps")]
    NoConvergence { iterations: usize },
    #[error(transparent)]
    Tower(#[from] TowerError),
}

fn period_text(p: &Option<usize>) -> String {
    match p {
        Some(d) => format!("period {d}"),
        None => "reducible".into(),
    }
}
