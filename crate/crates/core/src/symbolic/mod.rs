//! Patterns on Z and Z², forbidden sets, admissibility, concatenated languages.

mod admissibility;
mod alphabet;
mod concat;
pub mod format;
mod pattern;

use std::collections::BTreeSet;
use std::hash::Hash;

pub use admissibility::{
    central_offset, globally_admissible_within, language, locally_admissible,
    reconstruction_radius, Admissibility, SearchLimits, DEFAULT_NODE_BUDGET,
};
pub use alphabet::{Alphabet, Words};
pub use concat::{concat_language, concat_language_brute, concat_words};
pub use pattern::{occurrences, Dim, Pattern, Point};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("alphabet contains a duplicated symbol")]
    DuplicateSymbol,
    #[error("point {0} assigned twice")]
    DuplicatePoint(Point),
    #[error("pattern dimensions disagree")]
    DimensionMismatch,
    #[error("grid rows have different lengths")]
    RaggedGrid,
    #[error("dictionary members must all have size {expected}, found {found}")]
    DictionarySize { expected: usize, found: usize },
    #[error("concatenated language of a size-{size} dictionary only covers n <= {}, got n = {n}", 2 * size)]
    WindowTooLong { size: usize, n: usize },
    #[error("radius {radius} is smaller than the pattern size {size}")]
    RadiusTooSmall { radius: usize, size: usize },
    #[error("search exhausted its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("no radius up to {max} reconstructs blocks of size {n}")]
    NoRadius { n: usize, max: usize },
    #[error("n must be positive")]
    ZeroLength,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("forbidden-pattern source failed: {0}")]
    Source(String),
}

/// Finite set of forbidden patterns, stored with normalized supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet<S> {
    patterns: Vec<Pattern<S>>,
    max_size: usize,
}

impl<S: Clone + Eq + Ord> ForbiddenSet<S> {
    pub fn new(patterns: impl IntoIterator<Item = Pattern<S>>) -> Self {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for p in patterns {
            let p = p.normalized();
            let key: Vec<(Point, S)> = p.cells().map(|(q, s)| (q, s.clone())).collect();
            if seen.insert(key) {
                out.push(p);
            }
        }
        let max_size = out.iter().map(Pattern::size).max().unwrap_or(0);
        ForbiddenSet {
            patterns: out,
            max_size,
        }
    }

    pub fn empty() -> Self {
        ForbiddenSet {
            patterns: Vec::new(),
            max_size: 0,
        }
    }

    /// Forbidden 1D words.
    pub fn words<W: IntoIterator<Item = S>>(words: impl IntoIterator<Item = W>) -> Self {
        Self::new(words.into_iter().map(Pattern::word))
    }

    pub fn patterns(&self) -> &[Pattern<S>] {
        &self.patterns
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn extended(&self, more: impl IntoIterator<Item = Pattern<S>>) -> Self {
        Self::new(self.patterns.iter().cloned().chain(more))
    }
}

/// A set of square patterns of a common size and dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary<S> {
    size: usize,
    dim: Dim,
    members: Vec<Pattern<S>>,
}

impl<S: Clone + Eq + Ord> Dictionary<S> {
    pub fn new(
        size: usize,
        dim: Dim,
        members: impl IntoIterator<Item = Pattern<S>>,
    ) -> Result<Self, SymbolicError> {
        let mut out: Vec<Pattern<S>> = Vec::new();
        for m in members {
            if m.dim() != dim {
                return Err(SymbolicError::DimensionMismatch);
            }
            let full = match dim {
                Dim::One => m.len() == size && m.width() == size,
                Dim::Two => m.len() == size * size && m.width() == size && m.height() == size,
            };
            if !full {
                return Err(SymbolicError::DictionarySize {
                    expected: size,
                    found: m.size(),
                });
            }
            let m = m.normalized();
            if !out.contains(&m) {
                out.push(m);
            }
        }
        Ok(Dictionary {
            size,
            dim,
            members: out,
        })
    }

    pub fn from_words<W: IntoIterator<Item = S>>(
        words: impl IntoIterator<Item = W>,
    ) -> Result<Self, SymbolicError> {
        let pats: Vec<Pattern<S>> = words.into_iter().map(Pattern::word).collect();
        let size = pats.first().map_or(0, Pattern::len);
        Self::new(size, Dim::One, pats)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn members(&self) -> &[Pattern<S>] {
        &self.members
    }

    /// Members of a 1D dictionary as plain symbol vectors.
    pub fn words(&self) -> Vec<Vec<S>> {
        self.members.iter().map(Pattern::symbols).collect()
    }
}

/// Source of forbidden patterns for effectively closed subshifts: yields
/// every forbidden pattern up to a given size, deterministically.
pub trait ForbiddenSource<S> {
    fn forbidden_up_to(&self, max_size: usize) -> Result<ForbiddenSet<S>, String>;
}

pub enum Forbidden<S> {
    Finite(ForbiddenSet<S>),
    Generated(Box<dyn ForbiddenSource<S>>),
}

/// A subshift given by an alphabet and forbidden patterns.
pub struct SubshiftSpec<S> {
    pub alphabet: Alphabet<S>,
    pub forbidden: Forbidden<S>,
    pub dim: Dim,
}

impl<S: Clone + Eq + Ord + Hash> SubshiftSpec<S> {
    pub fn sft(alphabet: Alphabet<S>, forbidden: ForbiddenSet<S>, dim: Dim) -> Self {
        SubshiftSpec {
            alphabet,
            forbidden: Forbidden::Finite(forbidden),
            dim,
        }
    }

    pub fn effective(alphabet: Alphabet<S>, source: Box<dyn ForbiddenSource<S>>) -> Self {
        SubshiftSpec {
            alphabet,
            forbidden: Forbidden::Generated(source),
            dim: Dim::One,
        }
    }

    /// Forbidden patterns relevant inside a window of side `side`.
    pub fn forbidden_for_window(&self, side: usize) -> Result<ForbiddenSet<S>, SymbolicError> {
        match &self.forbidden {
            Forbidden::Finite(f) => Ok(f.clone()),
            Forbidden::Generated(g) => g.forbidden_up_to(side).map_err(SymbolicError::Source),
        }
    }
}
