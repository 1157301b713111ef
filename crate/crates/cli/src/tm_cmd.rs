use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use zerotemp_core::symbolic::format::write_pattern;
use zerotemp_core::turing::{
    builtin, check_diagram, compile_tileset, enumerate, head_window, mutation_check, parse_diagram,
    render_diagram, run_bounded, space_time_diagram, tile_pattern, Outcome, TuringMachine,
    BUILTIN_MACHINES,
};

use crate::report::{usage, Failure, Report};

#[derive(Args, Debug, Clone)]
pub struct MachineArgs {
    /// Built-in machine: anbn_dec or anbn_enum
    #[arg(long, conflicts_with = "machine_file")]
    pub machine: Option<String>,
    /// Machine description file
    #[arg(long)]
    pub machine_file: Option<PathBuf>,
}

impl MachineArgs {
    fn load(&self) -> Result<TuringMachine, Failure> {
        match (&self.machine, &self.machine_file) {
            (Some(name), _) => builtin(name).ok_or_else(|| {
                usage(format!(
                    "unknown machine `{name}` (built-in: {})",
                    BUILTIN_MACHINES.join(", ")
                ))
            }),
            (None, Some(path)) => Ok(TuringMachine::parse(&std::fs::read_to_string(path)?)?),
            (None, None) => Err(usage("one of --machine or --machine-file is required")),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum TmCmd {
    /// Run on one input, or on every input word up to a length
    Run {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, default_value = "")]
        input: String,
        /// Run on every word over the input alphabet of length 1..=L instead
        #[arg(long, value_name = "L", conflicts_with = "input")]
        all_words: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Space-time diagram in the 2D pattern format, row 0 at the bottom
    Diagram {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Tape cells LO:HI (default: the cells the head visits, plus one on each side)
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Words printed by an enumerator started on a blank tape
    Enumerate {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Size of the 3x2 window tileset
    Tiles {
        #[command(flatten)]
        machine: MachineArgs,
        /// Print every allowed window
        #[arg(long)]
        list: bool,
    },
    /// Check a diagram against the tileset
    Check {
        #[command(flatten)]
        machine: MachineArgs,
        /// Diagram file (default: generate one from --input and --steps)
        #[arg(long)]
        diagram: Option<PathBuf>,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Also require every single-cell change off the edge columns to be rejected
        #[arg(long)]
        mutations: bool,
    },
}

pub fn run(cmd: &TmCmd) -> Result<Report, Failure> {
    match cmd {
        TmCmd::Run {
            machine,
            input,
            all_words,
            fuel,
        } => {
            let m = machine.load()?;
            match all_words {
                None => {
                    let (outcome, c) = run_bounded(&m, &m.encode_chars(input)?, *fuel);
                    let mut r = Report::new(format!(
                        "outcome: {}\nsteps: {}\n",
                        outcome_name(outcome),
                        c.steps
                    ));
                    r.note(format!("input: {input:?}"));
                    Ok(r)
                }
                Some(len) => {
                    let mut r = Report::new(String::new());
                    let mut counts = [0usize; 4];
                    let mut words = vec![vec![]];
                    for _ in 0..*len {
                        words = words
                            .iter()
                            .flat_map(|w: &Vec<usize>| {
                                m.input_symbols().iter().map(move |&s| {
                                    let mut v = w.clone();
                                    v.push(s);
                                    v
                                })
                            })
                            .collect();
                        for w in &words {
                            let (outcome, _) = run_bounded(&m, w, *fuel);
                            counts[outcome as usize] += 1;
                            if outcome == Outcome::Accept {
                                r.payload.push_str(&spell(&m, w));
                                r.payload.push('\n');
                            }
                        }
                    }
                    r.note(format!(
                        "accepted {} rejected {} stuck {} timed out {}",
                        counts[0], counts[1], counts[2], counts[3]
                    ));
                    Ok(r)
                }
            }
        }
        TmCmd::Diagram {
            machine,
            input,
            steps,
            window,
        } => {
            let m = machine.load()?;
            let input = m.encode_chars(input)?;
            let window = match window {
                Some(w) => parse_window(w)?,
                None => head_window(&m, &input, *steps),
            };
            let d = space_time_diagram(&m, &input, *steps, window)?;
            let mut r = Report::new(write_pattern(&render_diagram(&m, &d)));
            r.note(format!("rows: {} columns: {}", d.height(), d.width()));
            Ok(r)
        }
        TmCmd::Enumerate { machine, fuel } => {
            let m = machine.load()?;
            let e = enumerate(&m, *fuel);
            let mut r = Report::new(e.words.iter().map(|w| spell(&m, w) + "\n").collect());
            r.note(format!(
                "printed {} words in {} steps{}",
                e.words.len(),
                e.steps,
                if e.fuel_exhausted {
                    " (fuel exhausted)"
                } else {
                    ""
                }
            ));
            Ok(r)
        }
        TmCmd::Tiles { machine, list } => {
            let m = machine.load()?;
            let ts = compile_tileset(&m);
            let mut r = Report::new(format!(
                "cell values: {}\nallowed windows: {}\nforbidden windows: {}\n",
                ts.cell_alphabet().len(),
                ts.len(),
                ts.complement_size()
            ));
            if *list {
                let mut tiles: Vec<_> = ts.allowed().iter().collect();
                tiles.sort();
                for t in tiles {
                    r.payload
                        .push_str(&write_pattern(&render_diagram(&m, &tile_pattern(t))));
                }
            }
            Ok(r)
        }
        TmCmd::Check {
            machine,
            diagram,
            input,
            steps,
            mutations,
        } => {
            let m = machine.load()?;
            let d = match diagram {
                Some(path) => parse_diagram(&m, &std::fs::read_to_string(path)?)?,
                None => {
                    let input = m.encode_chars(input)?;
                    space_time_diagram(&m, &input, *steps, head_window(&m, &input, *steps))?
                }
            };
            let ts = compile_tileset(&m);
            let check = check_diagram(&ts, &d)?;
            let mut r = Report::new(String::new());
            for p in &check.violations {
                r.payload
                    .push_str(&format!("rejected window at x={} y={}\n", p.x, p.y));
            }
            r.check(format!("{}x{} diagram", d.width(), d.height()), check.ok());
            if *mutations {
                let rep = mutation_check(&ts, &d)?;
                for (p, c) in rep.accepted.iter().take(20) {
                    r.payload.push_str(&format!(
                        "accepted mutation at x={} y={} to {}\n",
                        p.x,
                        p.y,
                        c.render(&m)
                    ));
                }
                r.check(
                    format!(
                        "{} single-cell mutations, {} accepted",
                        rep.tried,
                        rep.accepted.len()
                    ),
                    rep.accepted.is_empty(),
                );
            }
            Ok(r)
        }
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Accept => "accept",
        Outcome::Reject => "reject",
        Outcome::Stuck => "stuck",
        Outcome::Timeout => "timeout",
    }
}

fn spell(m: &TuringMachine, w: &[usize]) -> String {
    w.iter().map(|&s| m.tape_symbols()[s].as_str()).collect()
}

fn parse_window(s: &str) -> Result<RangeInclusive<i64>, Failure> {
    let bad = || usage(format!("--window expects LO:HI, got `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (i64, i64) = (
        lo.parse().map_err(|_| bad())?,
        hi.parse().map_err(|_| bad())?,
    );
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}
