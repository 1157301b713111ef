use std::fmt::Display;

use zerotemp_core::planar::PlanarError;
use zerotemp_core::symbolic::SymbolicError;
use zerotemp_core::thermo::ThermoError;
use zerotemp_core::tower::TowerError;
use zerotemp_core::turing::TuringError;

/// What a subcommand produced: the payload goes to `--out` or stdout,
/// notes always go to stdout after it.
#[derive(Debug, Default)]
pub struct Report {
    pub payload: String,
    pub notes: Vec<String>,
    pub ok: bool,
}

impl Report {
    pub fn new(payload: String) -> Self {
        Report {
            payload,
            notes: Vec::new(),
            ok: true,
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Record a named check; a failing one makes the run fail.
    pub fn check(&mut self, name: impl Display, holds: bool) {
        self.notes
            .push(format!("{name}: {}", if holds { "ok" } else { "FAIL" }));
        self.ok &= holds;
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verify(String),
    Resource(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verify(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verify(m) | Failure::Resource(m) => m,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<SymbolicError> for Failure {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::BudgetExceeded { .. } => Failure::Resource(e.to_string()),
            SymbolicError::NoRadius { .. } => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<TowerError> for Failure {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::MemoryBound { .. } | TowerError::ScheduleOverflow { .. } => {
                Failure::Resource(e.to_string())
            }
            TowerError::Symbolic(s) => s.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ThermoError> for Failure {
    fn from(e: ThermoError) -> Self {
        match e {
            ThermoError::TooManyStates { .. }
            | ThermoError::Truncation { .. }
            | ThermoError::TorusTooLarge { .. }
            | ThermoError::NoConvergence { .. } => Failure::Resource(e.to_string()),
            ThermoError::NotPrimitive { .. } => Failure::Verify(e.to_string()),
            ThermoError::Tower(t) => t.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<PlanarError> for Failure {
    fn from(e: PlanarError) -> Self {
        match e {
            PlanarError::Tower(t) => t.into(),
            PlanarError::Symbolic(s) => s.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<TuringError> for Failure {
    fn from(e: TuringError) -> Self {
        match e {
            TuringError::HeadEscaped { .. } | TuringError::TooLarge { .. } => {
                Failure::Resource(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn json(v: &impl serde::Serialize) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}
