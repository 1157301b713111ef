//! The recursive word tower on `{0, 1, 2}`: parameters, words, frequencies,
//! overlaps and the forbidden words of the limit subshift.

mod forbidden;
mod freq;
mod overlap;
mod schedule;
mod words;

pub use forbidden::{
    enumeration_cost, forbidden_oracle, forbidden_oracle_at, forbidden_up_to, forbidden_words,
    junction_words, minimal_forbidden, Cost, ForbiddenLevel, TowerSource,
};
pub use freq::{closed_form_frequency, frequency, frequency_checks, FrequencyCheck, Side};
pub use overlap::{overlaps, verify_overlap_lemmas, LemmaCheck, OverlapReport};
pub use schedule::{schedule, schedule_step, ScheduleJson, ScheduleLevel, MAX_EXPONENT};
pub use words::{
    build_tower, max_zero_density, parse_word, ratio_string, word_string, zero_frequency,
    BuildLimits, Level, LevelJson, TowerJson, TowerParams, Word, WordTower, ALPHABET,
};

use crate::symbolic::SymbolicError;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("invalid tower parameters: {0}")]
    InvalidParams(String),
    #[error("level {k} needs words of length {len}, above the limit {max_len}")]
    MemoryBound { k: u32, len: String, max_len: usize },
    #[error("schedule value beta_{k} is too large to represent")]
    ScheduleOverflow { k: u32 },
    #[error("level {k} requested but the tower has depth {depth}")]
    NoLevel { k: u32, depth: u32 },
    #[error("length {n} exceeds the longest tower word ({max_len}); build a deeper tower")]
    TooShallow { n: usize, max_len: usize },
    #[error("n must be positive")]
    ZeroLength,
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
