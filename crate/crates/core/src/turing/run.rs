use std::collections::BTreeMap;

use super::TuringMachine;

/// Snapshot of a running machine. Cells missing from `tape` hold the blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineConfig {
    pub tape: BTreeMap<i64, usize>,
    pub head: i64,
    pub state: usize,
    pub steps: u64,
}

impl MachineConfig {
    /// Input written from cell 0 rightwards, head on cell 0 in the start state.
    pub fn initial(m: &TuringMachine, input: &[usize]) -> Self {
        let tape = input
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != m.blank())
            .map(|(i, &s)| (i as i64, s))
            .collect();
        MachineConfig {
            tape,
            head: 0,
            state: m.start(),
            steps: 0,
        }
    }

    pub fn read(&self, m: &TuringMachine, pos: i64) -> usize {
        self.tape.get(&pos).copied().unwrap_or(m.blank())
    }

    fn write(&mut self, m: &TuringMachine, pos: i64, sym: usize) {
        if sym == m.blank() {
            self.tape.remove(&pos);
        } else {
            self.tape.insert(pos, sym);
        }
    }

    /// Leftmost and rightmost non-blank cells.
    pub fn extent(&self) -> Option<(i64, i64)> {
        Some((*self.tape.keys().next()?, *self.tape.keys().next_back()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halt {
    Accept,
    Reject,
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Running(MachineConfig),
    /// For `Stuck` the configuration is the one that had no applicable rule.
    Halted(Halt, MachineConfig),
}

/// Apply the transition table once.
pub fn step(m: &TuringMachine, c: &MachineConfig) -> Step {
    if c.state == m.accept() {
        return Step::Halted(Halt::Accept, c.clone());
    }
    if c.state == m.reject() {
        return Step::Halted(Halt::Reject, c.clone());
    }
    let Some(rule) = m.rule(c.state, c.read(m, c.head)) else {
        return Step::Halted(Halt::Stuck, c.clone());
    };
    let mut next = c.clone();
    next.write(m, c.head, rule.write);
    next.head += rule.dir.offset();
    next.state = rule.next;
    next.steps += 1;
    if rule.next == m.accept() {
        Step::Halted(Halt::Accept, next)
    } else if rule.next == m.reject() {
        Step::Halted(Halt::Reject, next)
    } else {
        Step::Running(next)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Accept,
    Reject,
    Stuck,
    Timeout,
}

impl From<Halt> for Outcome {
    fn from(h: Halt) -> Self {
        match h {
            Halt::Accept => Outcome::Accept,
            Halt::Reject => Outcome::Reject,
            Halt::Stuck => Outcome::Stuck,
        }
    }
}

/// Run for at most `fuel` steps on an encoded input (see [`TuringMachine::encode_input`]).
pub fn run_bounded(m: &TuringMachine, input: &[usize], fuel: u64) -> (Outcome, MachineConfig) {
    let mut c = MachineConfig::initial(m, input);
    for _ in 0..fuel {
        match step(m, &c) {
            Step::Running(next) => c = next,
            Step::Halted(h, last) => return (h.into(), last),
        }
    }
    // A start state that is already halting, or a stuck start, still counts with zero fuel.
    match step(m, &c) {
        Step::Halted(h, last) if last.steps == c.steps => (h.into(), last),
        _ => (Outcome::Timeout, c),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Printed words as tape-symbol indices.
    pub words: Vec<Vec<usize>>,
    /// True when the run stopped because fuel ran out rather than by halting.
    pub fuel_exhausted: bool,
    pub steps: u64,
}

/// Run from a blank tape, printing whenever the (state, scanned symbol) pair is a print event.
///
/// A print emits the non-blank extent of the tape with every symbol outside
/// the input alphabet removed.
pub fn enumerate(m: &TuringMachine, fuel: u64) -> Enumeration {
    let mut c = MachineConfig::initial(m, &[]);
    let mut words = Vec::new();
    let emit = |c: &MachineConfig, words: &mut Vec<Vec<usize>>| {
        if m.print_events().contains(&(c.state, c.read(m, c.head))) {
            words.push(printed_word(m, c));
        }
    };
    emit(&c, &mut words);
    for _ in 0..fuel {
        match step(m, &c) {
            Step::Running(next) => {
                c = next;
                emit(&c, &mut words);
            }
            Step::Halted(_, last) => {
                return Enumeration {
                    words,
                    fuel_exhausted: false,
                    steps: last.steps,
                }
            }
        }
    }
    Enumeration {
        words,
        fuel_exhausted: true,
        steps: c.steps,
    }
}

fn printed_word(m: &TuringMachine, c: &MachineConfig) -> Vec<usize> {
    c.tape
        .values()
        .copied()
        .filter(|s| m.input_symbols().contains(s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;

    fn names(m: &TuringMachine, w: &[usize]) -> String {
        w.iter().map(|&s| m.tape_symbols()[s].as_str()).collect()
    }

    #[test]
    fn decider_first_step() {
        let m = builtin("anbn_dec").unwrap();
        let c = MachineConfig::initial(&m, &m.encode_chars("ab").unwrap());
        let Step::Running(n) = step(&m, &c) else {
            panic!("should keep running")
        };
        assert_eq!(m.states()[n.state], "q1");
        assert_eq!(n.head, 1);
        assert_eq!(n.read(&m, 0), m.blank());

        let c = MachineConfig::initial(&m, &m.encode_chars("ba").unwrap());
        assert!(matches!(step(&m, &c), Step::Halted(Halt::Reject, _)));
    }

    #[test]
    fn undefined_rule_is_stuck() {
        let m = builtin("anbn_dec").unwrap();
        let (out, c) = run_bounded(&m, &[], 10);
        assert_eq!(out, Outcome::Stuck);
        assert_eq!(c.steps, 0);
        assert_eq!(run_bounded(&m, &[], 0).0, Outcome::Stuck);
    }

    #[test]
    fn decider_examples() {
        let m = builtin("anbn_dec").unwrap();
        let run = |w: &str| run_bounded(&m, &m.encode_chars(w).unwrap(), 10_000).0;
        assert_eq!(run("aabb"), Outcome::Accept);
        assert_eq!(run("aab"), Outcome::Reject);
        assert_eq!(run("ba"), Outcome::Reject);
        assert_eq!(run("abab"), Outcome::Reject);
        assert_eq!(
            run_bounded(&m, &m.encode_chars("aabb").unwrap(), 3).0,
            Outcome::Timeout
        );
    }

    #[test]
    fn enumerator_prints_in_order() {
        let m = builtin("anbn_enum").unwrap();
        let e = enumerate(&m, 500);
        assert!(e.fuel_exhausted);
        let printed: Vec<String> = e.words.iter().map(|w| names(&m, w)).collect();
        assert_eq!(&printed[..3], ["ab", "aabb", "aaabbb"]);
        for (i, w) in printed.iter().enumerate() {
            assert_eq!(*w, format!("{}{}", "a".repeat(i + 1), "b".repeat(i + 1)));
        }
    }
}
