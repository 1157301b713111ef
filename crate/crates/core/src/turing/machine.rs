use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::TuringError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    pub fn offset(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Right => 1,
        }
    }
}

/// Right-hand side of a transition, with states and symbols as indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub next: usize,
    pub write: usize,
    pub dir: Move,
}

/// Deterministic single-tape machine with a partial transition table.
///
/// States and tape symbols are referred to by index into `states` and `tape`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    tape: Vec<String>,
    input: Vec<usize>,
    blank: usize,
    start: usize,
    accept: usize,
    reject: usize,
    print: BTreeSet<(usize, usize)>,
    delta: HashMap<(usize, usize), Rule>,
}

/// Machine description by name, as read from a machine file.
#[derive(Debug, Clone, Default)]
pub struct MachineSpec {
    pub states: Vec<String>,
    pub input: Vec<String>,
    pub tape: Vec<String>,
    pub blank: String,
    pub start: String,
    pub accept: String,
    pub reject: String,
    pub print: Vec<(String, String)>,
    pub delta: Vec<(String, String, String, String, Move)>,
}

impl TuringMachine {
    pub fn new(spec: MachineSpec) -> Result<Self, TuringError> {
        let index =
            |names: &[String], kind: &'static str| -> Result<HashMap<String, usize>, TuringError> {
                let mut map = HashMap::new();
                for (i, n) in names.iter().enumerate() {
                    if map.insert(n.clone(), i).is_some() {
                        return Err(TuringError::Invalid(format!("duplicate {kind} `{n}`")));
                    }
                }
                Ok(map)
            };
        let qi = index(&spec.states, "state")?;
        let ti = index(&spec.tape, "tape symbol")?;
        let state = |n: &str| {
            qi.get(n)
                .copied()
                .ok_or_else(|| TuringError::Unknown(format!("state `{n}`")))
        };
        let sym = |n: &str| {
            ti.get(n)
                .copied()
                .ok_or_else(|| TuringError::Unknown(format!("symbol `{n}`")))
        };

        let blank = sym(&spec.blank)?;
        let mut input = Vec::new();
        for a in &spec.input {
            let i = sym(a)?;
            if i == blank {
                return Err(TuringError::Invalid(
                    "input alphabet contains the blank".into(),
                ));
            }
            input.push(i);
        }
        let (start, accept, reject) = (
            state(&spec.start)?,
            state(&spec.accept)?,
            state(&spec.reject)?,
        );
        if accept == reject {
            return Err(TuringError::Invalid(
                "accept and reject states coincide".into(),
            ));
        }
        let mut print = BTreeSet::new();
        for (q, s) in &spec.print {
            print.insert((state(q)?, sym(s)?));
        }
        let mut delta = HashMap::new();
        for (q, x, q2, y, dir) in &spec.delta {
            let key = (state(q)?, sym(x)?);
            if key.0 == accept || key.0 == reject {
                return Err(TuringError::Invalid(format!(
                    "transition out of halting state `{q}`"
                )));
            }
            let rule = Rule {
                next: state(q2)?,
                write: sym(y)?,
                dir: *dir,
            };
            if delta.insert(key, rule).is_some() {
                return Err(TuringError::Invalid(format!(
                    "two transitions for ({q}, {x})"
                )));
            }
        }
        Ok(TuringMachine {
            states: spec.states,
            tape: spec.tape,
            input,
            blank,
            start,
            accept,
            reject,
            print,
            delta,
        })
    }

    pub fn parse(text: &str) -> Result<Self, TuringError> {
        let mut spec = MachineSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            // `#` is a comment marker; `♯` (U+266F) is a different character.
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| TuringError::Parse { line: i + 1, msg };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| err(format!("expected `key: value`, got `{line}`")))?;
            let words: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            let single = |what: &str| -> Result<String, TuringError> {
                match words.as_slice() {
                    [w] => Ok(w.clone()),
                    _ => Err(err(format!("`{what}` takes exactly one name"))),
                }
            };
            match key.trim() {
                "states" => spec.states.extend(words.iter().cloned()),
                "input" => spec.input.extend(words.iter().cloned()),
                "tape" => spec.tape.extend(words.iter().cloned()),
                "blank" => spec.blank = single("blank")?,
                "start" => spec.start = single("start")?,
                "accept" => spec.accept = single("accept")?,
                "reject" => spec.reject = single("reject")?,
                "print" => match words.as_slice() {
                    [q, s] => spec.print.push((q.clone(), s.clone())),
                    _ => return Err(err("`print` takes a state and a symbol".into())),
                },
                "delta" => match words.as_slice() {
                    [q, x, arrow, q2, y, d] if arrow == "->" => {
                        let dir = match d.as_str() {
                            "+1" | "1" => Move::Right,
                            "-1" => Move::Left,
                            _ => return Err(err(format!("direction must be +1 or -1, got `{d}`"))),
                        };
                        spec.delta
                            .push((q.clone(), x.clone(), q2.clone(), y.clone(), dir));
                    }
                    _ => return Err(err("expected `delta: q sym -> q' sym' +1|-1`".into())),
                },
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        TuringMachine::new(spec)
    }

    /// Machine file text; `parse(to_text())` reproduces the machine.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "states: {}", self.states.join(" "));
        let input: Vec<&str> = self.input.iter().map(|&i| self.tape[i].as_str()).collect();
        let _ = writeln!(s, "input: {}", input.join(" "));
        let _ = writeln!(s, "tape: {}", self.tape.join(" "));
        let _ = writeln!(s, "blank: {}", self.tape[self.blank]);
        let _ = writeln!(s, "start: {}", self.states[self.start]);
        let _ = writeln!(s, "accept: {}", self.states[self.accept]);
        let _ = writeln!(s, "reject: {}", self.states[self.reject]);
        for &(q, x) in &self.print {
            let _ = writeln!(s, "print: {} {}", self.states[q], self.tape[x]);
        }
        for ((q, x), r) in self.rules() {
            let d = if r.dir == Move::Right { "+1" } else { "-1" };
            let _ = writeln!(
                s,
                "delta: {} {} -> {} {} {}",
                self.states[q], self.tape[x], self.states[r.next], self.tape[r.write], d
            );
        }
        s
    }

    /// Transitions sorted by (state, symbol) index.
    pub fn rules(&self) -> Vec<((usize, usize), Rule)> {
        let mut v: Vec<_> = self.delta.iter().map(|(k, r)| (*k, *r)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn rule(&self, state: usize, symbol: usize) -> Option<Rule> {
        self.delta.get(&(state, symbol)).copied()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn tape_symbols(&self) -> &[String] {
        &self.tape
    }

    pub fn input_symbols(&self) -> &[usize] {
        &self.input
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn reject(&self) -> usize {
        self.reject
    }

    pub fn print_events(&self) -> &BTreeSet<(usize, usize)> {
        &self.print
    }

    pub fn is_halting(&self, state: usize) -> bool {
        state == self.accept || state == self.reject
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.tape.iter().position(|s| s == name)
    }

    /// Map input symbol names to tape indices, rejecting anything outside the input alphabet.
    pub fn encode_input<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<usize>, TuringError> {
        word.iter()
            .map(|s| {
                let s = s.as_ref();
                self.symbol_index(s)
                    .filter(|i| self.input.contains(i))
                    .ok_or_else(|| TuringError::NotInput(s.to_owned()))
            })
            .collect()
    }

    /// Input word given as a string of one-character symbols.
    pub fn encode_chars(&self, word: &str) -> Result<Vec<usize>, TuringError> {
        let syms: Vec<String> = word.chars().map(String::from).collect();
        self.encode_input(&syms)
    }
}

const ANBN_DEC: &str = include_str!("machines/anbn_dec.tm");
const ANBN_ENUM: &str = include_str!("machines/anbn_enum.tm");

pub const BUILTIN_MACHINES: [&str; 2] = ["anbn_dec", "anbn_enum"];

/// The two shipped example machines: `anbn_dec` and `anbn_enum`.
pub fn builtin(name: &str) -> Option<TuringMachine> {
    let text = match name {
        "anbn_dec" => ANBN_DEC,
        "anbn_enum" => ANBN_ENUM,
        _ => return None,
    };
    Some(TuringMachine::parse(text).expect("built-in machine files are valid"))
}
