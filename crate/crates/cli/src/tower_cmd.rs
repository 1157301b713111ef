use std::collections::BTreeSet;

use clap::{Args, Subcommand};
use zerotemp_core::tower::{
    build_tower, forbidden_oracle, forbidden_up_to, frequency_checks, minimal_forbidden, schedule,
    verify_overlap_lemmas, word_string, BuildLimits, TowerParams, WordTower,
};

use crate::report::{json, usage, Failure, Report};

#[derive(Args, Debug, Clone)]
pub struct TowerArgs {
    /// Block counts N_1,N_2,... of the toy tower
    #[arg(long = "N", id = "N", value_delimiter = ',')]
    pub n: Option<Vec<u64>>,
    /// Primed block counts N'_1,N'_2,...
    #[arg(long = "Nprime", id = "Nprime", value_delimiter = ',')]
    pub n_prime: Option<Vec<u64>>,
    /// Number of levels (defaults to the length of --N)
    #[arg(long)]
    pub depth: Option<u32>,
    /// Take block counts from the growth schedule instead of --N/--Nprime
    #[arg(long)]
    pub schedule: bool,
    /// Refuse to build words longer than this
    #[arg(long, default_value_t = 1 << 24)]
    pub max_len: usize,
}

impl TowerArgs {
    pub fn params(&self, default_n: &[u64], default_np: &[u64]) -> Result<TowerParams, Failure> {
        if self.schedule {
            if self.n.is_some() || self.n_prime.is_some() {
                return Err(usage("--schedule takes no --N/--Nprime"));
            }
            return Ok(TowerParams::schedule(self.depth.unwrap_or(1)));
        }
        let mut n = self.n.clone().unwrap_or_else(|| default_n.to_vec());
        let mut np = self.n_prime.clone().unwrap_or_else(|| default_np.to_vec());
        if let Some(d) = self.depth {
            let d = d as usize;
            if d > n.len() || d > np.len() {
                return Err(usage(format!(
                    "--depth {d} needs at least {d} entries in --N and --Nprime"
                )));
            }
            n.truncate(d);
            np.truncate(d);
        }
        Ok(TowerParams::toy(n, np)?)
    }

    pub fn build(&self, default_n: &[u64], default_np: &[u64]) -> Result<WordTower, Failure> {
        let params = self.params(default_n, default_np)?;
        Ok(build_tower(
            &params,
            BuildLimits {
                max_len: self.max_len,
            },
        )?)
    }
}

pub const TOY: [u64; 3] = [4, 4, 4];

#[derive(Subcommand, Debug)]
pub enum TowerCmd {
    /// Build the word tower and print it as JSON
    Build {
        #[command(flatten)]
        tower: TowerArgs,
    },
    /// Enumerate forbidden words of every length up to --n
    Forbidden {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        n: usize,
        /// Compare against brute-force scanning of two-block concatenations
        #[arg(long)]
        check_oracle: bool,
        /// Print only minimal forbidden words
        #[arg(long)]
        minimal: bool,
    },
    /// Check the frequency recursion and closed form, exactly
    Freq {
        #[command(flatten)]
        tower: TowerArgs,
        /// Single level (default: every level from 1)
        #[arg(long)]
        k: Option<u32>,
    },
    /// Exhaustive overlap checks on the level words
    Overlaps {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Big-integer growth schedule from the seed level
    Schedule {
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
}

pub fn run(cmd: &TowerCmd) -> Result<Report, Failure> {
    match cmd {
        TowerCmd::Build { tower } => {
            let t = tower.build(&TOY, &TOY)?;
            let mut r = Report::new(json(&t.to_json())?);
            r.note(format!("levels: {}", t.depth()));
            for v in t.params.violations()? {
                r.note(format!("flagged: {v}"));
            }
            Ok(r)
        }
        TowerCmd::Forbidden {
            tower,
            n,
            check_oracle,
            minimal,
        } => forbidden(&tower.build(&TOY, &TOY)?, *n, *check_oracle, *minimal),
        TowerCmd::Freq { tower, k } => {
            let t = tower.build(&TOY, &TOY)?;
            let mut r = Report::new(String::new());
            for k in levels(&t, *k)? {
                for c in frequency_checks(&t, k)? {
                    r.payload.push_str(&format!(
                        "k={} {}: {} vs {} {}\n",
                        c.k,
                        c.relation,
                        c.lhs,
                        c.rhs,
                        if c.holds { "ok" } else { "FAIL" }
                    ));
                    r.ok &= c.holds;
                }
            }
            Ok(r)
        }
        TowerCmd::Overlaps { tower, k } => {
            let t = tower.build(&TOY, &TOY)?;
            let mut r = Report::new(String::new());
            for k in levels(&t, *k)? {
                for c in verify_overlap_lemmas(&t, k)?.checks {
                    r.payload.push_str(&format!(
                        "k={k} ({}) {}: {}\n",
                        c.label,
                        c.statement,
                        if c.holds { "ok" } else { "FAIL" }
                    ));
                    for ce in c.counterexamples.iter().take(5) {
                        r.payload.push_str(&format!("  counterexample: {ce}\n"));
                    }
                    r.ok &= c.holds;
                }
            }
            Ok(r)
        }
        TowerCmd::Schedule { depth } => {
            let levels = schedule(*depth)?;
            let mut r = Report::new(json(
                &levels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
            )?);
            for l in &levels {
                for v in l.violations() {
                    r.note(format!("flagged at level {}: {v}", l.k));
                }
            }
            Ok(r)
        }
    }
}

fn levels(t: &WordTower, k: Option<u32>) -> Result<Vec<u32>, Failure> {
    match k {
        Some(0) => Err(usage("level checks start at k = 1")),
        Some(k) => {
            t.level(k)?;
            Ok(vec![k])
        }
        None => Ok((1..=t.depth()).collect()),
    }
}

fn forbidden(
    t: &WordTower,
    n: usize,
    check_oracle: bool,
    minimal: bool,
) -> Result<Report, Failure> {
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    let levels = forbidden_up_to(t, n)?;
    let sets: Vec<Vec<Vec<u8>>> = if minimal {
        minimal_forbidden(&levels)
    } else {
        levels.iter().map(|l| l.words.clone()).collect()
    };
    let mut r = Report::new(String::new());
    for (lvl, words) in levels.iter().zip(&sets) {
        r.payload.push_str(&format!(
            "# n={} level={} count={}\n",
            lvl.n,
            lvl.k,
            words.len()
        ));
        for w in words {
            r.payload.push_str(&word_string(w));
            r.payload.push('\n');
        }
    }
    let total: u64 = levels.iter().map(|l| l.cost.total()).sum();
    r.note(format!(
        "enumeration cost (candidates + comparisons): {total}"
    ));
    if check_oracle {
        for lvl in &levels {
            let oracle: BTreeSet<Vec<u8>> = forbidden_oracle(t, lvl.n)?.into_iter().collect();
            let ours: BTreeSet<Vec<u8>> = lvl.words.iter().cloned().collect();
            r.check(format!("oracle n={}", lvl.n), oracle == ours);
        }
    }
    Ok(r)
}
