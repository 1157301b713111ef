use std::path::PathBuf;

use clap::{Args, Subcommand};
use zerotemp_core::symbolic::format::{parse_patterns, write_patterns};
use zerotemp_core::symbolic::{
    language, reconstruction_radius, Alphabet, Dim, ForbiddenSet, SearchLimits, SubshiftSpec,
    DEFAULT_NODE_BUDGET,
};

use crate::report::{usage, Failure, Report};

#[derive(Args, Debug, Clone)]
pub struct SftArgs {
    /// Symbols, comma separated, or a run of single characters such as `012`
    #[arg(long)]
    pub alphabet: String,
    /// Forbidden-pattern file (one pattern per line; `rows=r;cols=c;` blocks for 2D)
    #[arg(long)]
    pub forbidden: PathBuf,
    /// Lattice dimension (default: 2 if the file holds any 2D pattern)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dim: Option<u8>,
    /// Search node budget before giving up with a resource error
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

struct Sft {
    alphabet: Alphabet<String>,
    forbidden: ForbiddenSet<String>,
    dim: Dim,
    limits: SearchLimits,
}

impl SftArgs {
    fn load(&self) -> Result<Sft, Failure> {
        let symbols: Vec<String> = if self.alphabet.contains(',') {
            self.alphabet
                .split(',')
                .map(|s| s.trim().to_owned())
                .collect()
        } else {
            self.alphabet.chars().map(String::from).collect()
        };
        let alphabet = Alphabet::new(symbols)?;
        let patterns = parse_patterns(&std::fs::read_to_string(&self.forbidden)?)?;
        if let Some((_, s)) = patterns
            .iter()
            .flat_map(|p| p.cells())
            .find(|(_, s)| !alphabet.contains(s))
        {
            return Err(usage(format!(
                "forbidden pattern uses `{s}`, which is not in the alphabet"
            )));
        }
        let has_2d = patterns.iter().any(|p| p.dim() == Dim::Two);
        let dim = match (self.dim, has_2d) {
            (Some(1), true) => return Err(usage("--dim 1 with 2D forbidden patterns")),
            (Some(1), false) => Dim::One,
            (Some(_), _) | (None, true) => Dim::Two,
            (None, false) => Dim::One,
        };
        // 1D words forbid horizontal occurrences in a 2D lattice
        let forbidden = ForbiddenSet::new(patterns.into_iter().map(|p| match (dim, p.dim()) {
            (Dim::Two, Dim::One) => {
                let row = p.symbols();
                zerotemp_core::symbolic::Pattern::grid(&[row]).expect("one row")
            }
            _ => p,
        }));
        Ok(Sft {
            alphabet,
            forbidden,
            dim,
            limits: SearchLimits {
                node_budget: self.budget,
            },
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum CoreCmd {
    /// Globally admissible patterns of side n, judged inside a box of side 2R
    Language {
        #[command(flatten)]
        sft: SftArgs,
        #[arg(long)]
        n: usize,
        /// Extension radius R (default: n)
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Smallest radius at which local admissibility certifies global admissibility
    Reconstruct {
        #[command(flatten)]
        sft: SftArgs,
        #[arg(long)]
        n: usize,
        /// Largest radius to try
        #[arg(long)]
        rmax: usize,
        /// Radius of the box used as the stand-in for global admissibility (default: 2 * rmax)
        #[arg(long)]
        global_radius: Option<usize>,
    },
}

pub fn run(cmd: &CoreCmd) -> Result<Report, Failure> {
    match cmd {
        CoreCmd::Language { sft, n, radius } => {
            let s = sft.load()?;
            let limits = s.limits;
            let spec = SubshiftSpec::sft(s.alphabet, s.forbidden, s.dim);
            let lang = language(&spec, *n, radius.unwrap_or(*n), limits)?;
            let mut r = Report::new(write_patterns(&lang));
            r.note(format!("count: {}", lang.len()));
            Ok(r)
        }
        CoreCmd::Reconstruct {
            sft,
            n,
            rmax,
            global_radius,
        } => {
            let s = sft.load()?;
            let g = global_radius.unwrap_or(2 * rmax);
            let radius =
                reconstruction_radius(&s.alphabet, &s.forbidden, s.dim, *n, *rmax, g, s.limits)?;
            let mut r = Report::new(format!("radius: {radius}\n"));
            r.note(format!("block size {n}, global box radius {g}"));
            Ok(r)
        }
    }
}
