use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::symbolic::{Dim, ForbiddenSet, Pattern, Point};

/// Letters after recoloring: each `0` splits into two copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lifted {
    ZeroA,
    ZeroB,
    One,
    Two,
}

pub const LIFTED: [Lifted; 4] = [Lifted::ZeroA, Lifted::ZeroB, Lifted::One, Lifted::Two];

impl Lifted {
    pub fn collapse(self) -> u8 {
        match self {
            Lifted::ZeroA | Lifted::ZeroB => 0,
            Lifted::One => 1,
            Lifted::Two => 2,
        }
    }
}

impl fmt::Display for Lifted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lifted::ZeroA => "0'",
            Lifted::ZeroB => "0''",
            Lifted::One => "1",
            Lifted::Two => "2",
        })
    }
}

/// `h` copies of `w` stacked vertically.
pub fn duplicate_extension<S: Clone + Eq>(w: &[S], h: usize) -> Pattern<S> {
    assert!(h >= 1, "height must be positive");
    Pattern::grid(&vec![w.to_vec(); h]).expect("equal rows")
}

pub fn collapse(p: &Pattern<Lifted>) -> Pattern<u8> {
    p.map(|s| s.collapse())
}

pub fn lift_count(p: &Pattern<u8>) -> BigUint {
    let zeros = p.cells().filter(|(_, &s)| s == 0).count();
    BigUint::one() << zeros
}

/// Every recoloring of `p`, one per subset of its zero cells.
pub fn lifts(p: &Pattern<u8>) -> Lifts {
    let base: Vec<(Point, u8)> = p.cells().map(|(q, &s)| (q, s)).collect();
    let zeros = base.iter().filter(|(_, s)| *s == 0).count();
    Lifts {
        dim: p.dim(),
        base,
        choice: vec![false; zeros],
        done: false,
    }
}

pub struct Lifts {
    dim: Dim,
    base: Vec<(Point, u8)>,
    choice: Vec<bool>,
    done: bool,
}

impl Iterator for Lifts {
    type Item = Pattern<Lifted>;

    fn next(&mut self) -> Option<Pattern<Lifted>> {
        if self.done {
            return None;
        }
        let mut z = 0;
        let cells = self.base.iter().map(|&(q, s)| {
            let l = match s {
                0 => {
                    z += 1;
                    if self.choice[z - 1] {
                        Lifted::ZeroB
                    } else {
                        Lifted::ZeroA
                    }
                }
                1 => Lifted::One,
                _ => Lifted::Two,
            };
            (q, l)
        });
        let out =
            Pattern::from_cells(self.dim, cells.collect::<Vec<_>>()).expect("distinct points");
        match self.choice.iter().rposition(|&b| !b) {
            Some(i) => {
                self.choice[i] = true;
                self.choice[i + 1..].iter_mut().for_each(|b| *b = false);
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Vertical dominoes whose two letters differ after `key`; forbidding them
/// forces every column to be constant up to `key`.
pub fn vertical_alignment_forbidden_by<S: Clone + Ord, K: PartialEq>(
    alphabet: &[S],
    key: impl Fn(&S) -> K,
) -> ForbiddenSet<S> {
    let mut out = Vec::new();
    for lo in alphabet {
        for hi in alphabet {
            if key(lo) != key(hi) {
                let cells = [
                    (Point::new(0, 0), lo.clone()),
                    (Point::new(0, 1), hi.clone()),
                ];
                out.push(Pattern::from_cells(Dim::Two, cells).expect("two points"));
            }
        }
    }
    ForbiddenSet::new(out)
}

/// Columns constant: all vertical dominoes with two different letters.
pub fn vertical_alignment_forbidden<S: Clone + Ord>(alphabet: &[S]) -> ForbiddenSet<S> {
    vertical_alignment_forbidden_by(alphabet, |s| s.clone())
}

/// Over the recolored letters, columns need only be constant after collapsing.
pub fn lifted_alignment_forbidden() -> ForbiddenSet<Lifted> {
    vertical_alignment_forbidden_by(&LIFTED, |s| s.collapse())
}
