//! Deterministic Turing machines, enumerators, space-time diagrams and their 3x2 tile encoding.

mod diagram;
mod machine;
mod run;
mod tiles;

pub use diagram::{
    cell_alphabet, config_row, head_window, parse_diagram, render_diagram, space_time_diagram, Cell,
};
pub use machine::{builtin, MachineSpec, Move, Rule, TuringMachine, BUILTIN_MACHINES};
pub use run::{enumerate, run_bounded, step, Enumeration, Halt, MachineConfig, Outcome, Step};
pub use tiles::{
    check_diagram, compile_tileset, mutation_check, rule_families, tile_pattern, DiagramCheck,
    MutationReport, Tile, Tileset,
};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum TuringError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown {0}")]
    Unknown(String),
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("`{0}` is not an input symbol")]
    NotInput(String),
    #[error("head left the window at step {step} (position {head})")]
    HeadEscaped { step: usize, head: i64 },
    #[error("diagram must be a full rectangle at least 3 wide and 2 tall")]
    GridShape,
    #[error("complement has {size} patterns, more than the limit {limit}")]
    TooLarge { size: u128, limit: u128 },
}
