use std::ops::RangeInclusive;

use super::run::{step, MachineConfig, Step};
use super::{TuringError, TuringMachine};
use crate::symbolic::Pattern;

/// A space-time diagram cell: a plain tape symbol, or the head's (state, symbol) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Sym(usize),
    Head(usize, usize),
}

impl Cell {
    pub fn symbol(self) -> usize {
        match self {
            Cell::Sym(s) | Cell::Head(_, s) => s,
        }
    }

    pub fn render(self, m: &TuringMachine) -> String {
        match self {
            Cell::Sym(s) => m.tape_symbols()[s].clone(),
            Cell::Head(q, s) => format!("({},{})", m.states()[q], m.tape_symbols()[s]),
        }
    }

    /// Inverse of [`Cell::render`].
    pub fn parse(m: &TuringMachine, token: &str) -> Result<Cell, TuringError> {
        let sym = |t: &str| {
            m.symbol_index(t)
                .ok_or_else(|| TuringError::Unknown(format!("tape symbol `{t}`")))
        };
        match token.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            Some(inner) => {
                // state names may not contain commas, symbols may
                let (q, s) = inner
                    .split_once(',')
                    .ok_or_else(|| TuringError::Unknown(format!("cell `{token}`")))?;
                let q = m
                    .state_index(q)
                    .ok_or_else(|| TuringError::Unknown(format!("state `{q}`")))?;
                Ok(Cell::Head(q, sym(s)?))
            }
            None => Ok(Cell::Sym(sym(token)?)),
        }
    }
}

/// Read a diagram written by [`render_diagram`] in the 2D pattern format.
pub fn parse_diagram(m: &TuringMachine, text: &str) -> Result<Pattern<Cell>, TuringError> {
    let parsed = crate::symbolic::format::parse_patterns(text).map_err(|e| TuringError::Parse {
        line: 0,
        msg: e.to_string(),
    })?;
    let [p] = &parsed[..] else {
        return Err(TuringError::Parse {
            line: 0,
            msg: format!("expected one diagram, found {}", parsed.len()),
        });
    };
    let rows = p.rows().ok_or(TuringError::GridShape)?;
    let cells: Result<Vec<Vec<Cell>>, _> = rows
        .iter()
        .map(|r| r.iter().map(|t| Cell::parse(m, t)).collect())
        .collect();
    Pattern::grid(&cells?).map_err(|_| TuringError::GridShape)
}

/// Tape cells visited by the head during the first `steps` steps, widened by one on each side.
pub fn head_window(m: &TuringMachine, input: &[usize], steps: usize) -> RangeInclusive<i64> {
    let mut c = MachineConfig::initial(m, input);
    let (mut lo, mut hi) = (c.head.min(0), c.head.max(input.len() as i64 - 1));
    for _ in 0..steps {
        match step(m, &c) {
            Step::Running(next) => c = next,
            Step::Halted(_, last) => {
                c = last;
                lo = lo.min(c.head);
                hi = hi.max(c.head);
                break;
            }
        }
        lo = lo.min(c.head);
        hi = hi.max(c.head);
    }
    lo - 1..=hi + 1
}

/// Every cell value over the machine's states and tape symbols.
pub fn cell_alphabet(m: &TuringMachine) -> Vec<Cell> {
    let t = m.tape_symbols().len();
    let mut out: Vec<Cell> = (0..t).map(Cell::Sym).collect();
    for q in 0..m.states().len() {
        out.extend((0..t).map(|s| Cell::Head(q, s)));
    }
    out
}

pub fn config_row(m: &TuringMachine, c: &MachineConfig, window: &RangeInclusive<i64>) -> Vec<Cell> {
    window
        .clone()
        .map(|x| {
            let s = c.read(m, x);
            if x == c.head {
                Cell::Head(c.state, s)
            } else {
                Cell::Sym(s)
            }
        })
        .collect()
}

/// Rows 0..=T of the run restricted to tape cells `window`; row 0 is the
/// initial configuration and sits at the bottom of the returned pattern.
///
/// A halting run stops early: the row after an accepting or rejecting
/// transition is the last one, and a stuck configuration is the last row.
pub fn space_time_diagram(
    m: &TuringMachine,
    input: &[usize],
    steps: usize,
    window: RangeInclusive<i64>,
) -> Result<Pattern<Cell>, TuringError> {
    let mut c = MachineConfig::initial(m, input);
    let mut rows = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        if !window.contains(&c.head) {
            return Err(TuringError::HeadEscaped {
                step: t,
                head: c.head,
            });
        }
        rows.push(config_row(m, &c, &window));
        if t == steps {
            break;
        }
        match step(m, &c) {
            Step::Running(next) => c = next,
            Step::Halted(_, last) => {
                if last.steps > c.steps {
                    if !window.contains(&last.head) {
                        return Err(TuringError::HeadEscaped {
                            step: t + 1,
                            head: last.head,
                        });
                    }
                    rows.push(config_row(m, &last, &window));
                }
                break;
            }
        }
    }
    Ok(Pattern::grid(&rows).expect("rows share the window width"))
}

/// Text form of a diagram: the 2D pattern format with composite cells as `(q,sym)`.
pub fn render_diagram(m: &TuringMachine, d: &Pattern<Cell>) -> Pattern<String> {
    d.map(|c| c.render(m))
}
