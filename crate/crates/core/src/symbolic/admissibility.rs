use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use super::{
    occurrences, Alphabet, Dim, ForbiddenSet, Pattern, Point, SubshiftSpec, SymbolicError,
};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Yes,
    No,
    BoundExceeded,
}

/// True iff no member of `forbidden` occurs in `w`. Members larger than `w`
/// simply never occur.
pub fn locally_admissible<S: Clone + Eq + Ord>(
    w: &Pattern<S>,
    forbidden: &ForbiddenSet<S>,
) -> bool {
    forbidden
        .patterns()
        .iter()
        .all(|f| occurrences(f, w).is_empty())
}

/// Offset of a centred block of side `n` inside a box of side `side`.
pub fn central_offset(side: usize, n: usize) -> usize {
    (side - n) / 2
}

/// Does `w`, centred in a box of side `2R`, extend to a locally admissible
/// filling of the whole box?
pub fn globally_admissible_within<S: Clone + Eq + Ord + Hash>(
    alphabet: &Alphabet<S>,
    forbidden: &ForbiddenSet<S>,
    w: &Pattern<S>,
    radius: usize,
    limits: SearchLimits,
) -> Result<Admissibility, SymbolicError> {
    let size = w.size();
    if radius < size {
        return Err(SymbolicError::RadiusTooSmall { radius, size });
    }
    let side = 2 * radius;
    let mut search = BoxSearch::new(alphabet, forbidden, w.dim(), side, limits);
    let Some((lo, _)) = w.bounds() else {
        return Ok(match search.run_first() {
            Flow::Stop => Admissibility::Yes,
            Flow::Continue => Admissibility::No,
            Flow::Exceeded => Admissibility::BoundExceeded,
        });
    };
    let off = central_offset(side, size) as i64;
    let origin = match w.dim() {
        Dim::One => Point::along(off),
        Dim::Two => Point::new(off, off),
    };
    for (p, s) in w.cells() {
        let Some(sym) = alphabet.index_of(s) else {
            return Ok(Admissibility::No);
        };
        search.fix(p - lo + origin, sym);
    }
    Ok(match search.run_first() {
        Flow::Stop => Admissibility::Yes,
        Flow::Continue => Admissibility::No,
        Flow::Exceeded => Admissibility::BoundExceeded,
    })
}

/// Size-`n` patterns that extend to the box of side `2R`, in enumeration order.
pub fn language<S: Clone + Eq + Ord + Hash>(
    spec: &SubshiftSpec<S>,
    n: usize,
    radius: usize,
    limits: SearchLimits,
) -> Result<BTreeSet<Pattern<S>>, SymbolicError> {
    if n == 0 {
        return Err(SymbolicError::ZeroLength);
    }
    let forbidden = spec.forbidden_for_window(2 * radius)?;
    let mut candidates = Vec::new();
    let mut search = BoxSearch::new(&spec.alphabet, &forbidden, spec.dim, n, limits);
    if let Flow::Exceeded = search.enumerate(&mut |cells| {
        candidates.push(cells.to_vec());
        true
    }) {
        return Err(SymbolicError::BudgetExceeded {
            budget: limits.node_budget,
        });
    }
    let mut out = BTreeSet::new();
    for cells in candidates {
        let p = index_pattern(&spec.alphabet, spec.dim, n, &cells);
        match globally_admissible_within(&spec.alphabet, &forbidden, &p, radius, limits)? {
            Admissibility::Yes => {
                out.insert(p);
            }
            Admissibility::No => {}
            Admissibility::BoundExceeded => {
                return Err(SymbolicError::BudgetExceeded {
                    budget: limits.node_budget,
                })
            }
        }
    }
    Ok(out)
}

/// Smallest `R` in `n..=r_max` such that the central size-`n` block of every
/// locally admissible pattern of side `2R` is globally admissible, where
/// "globally" is judged by extension to a box of side `2 * global_radius`.
pub fn reconstruction_radius<S: Clone + Eq + Ord + Hash>(
    alphabet: &Alphabet<S>,
    forbidden: &ForbiddenSet<S>,
    dim: Dim,
    n: usize,
    r_max: usize,
    global_radius: usize,
    limits: SearchLimits,
) -> Result<usize, SymbolicError> {
    if n == 0 {
        return Err(SymbolicError::ZeroLength);
    }
    let mut verdicts: HashMap<Vec<usize>, bool> = HashMap::new();
    for radius in n..=r_max {
        let side = 2 * radius;
        let off = central_offset(side, n);
        let mut blocks: HashSet<Vec<usize>> = HashSet::new();
        let mut search = BoxSearch::new(alphabet, forbidden, dim, side, limits);
        let flow = search.enumerate(&mut |cells| {
            blocks.insert(extract_block(dim, side, off, n, cells));
            true
        });
        if let Flow::Exceeded = flow {
            return Err(SymbolicError::BudgetExceeded {
                budget: limits.node_budget,
            });
        }
        let mut all_good = true;
        for block in blocks {
            let good = match verdicts.get(&block) {
                Some(&v) => v,
                None => {
                    let p = index_pattern(alphabet, dim, n, &block);
                    let v = match globally_admissible_within(
                        alphabet,
                        forbidden,
                        &p,
                        global_radius,
                        limits,
                    )? {
                        Admissibility::Yes => true,
                        Admissibility::No => false,
                        Admissibility::BoundExceeded => {
                            return Err(SymbolicError::BudgetExceeded {
                                budget: limits.node_budget,
                            })
                        }
                    };
                    verdicts.insert(block, v);
                    v
                }
            };
            if !good {
                all_good = false;
                break;
            }
        }
        if all_good {
            return Ok(radius);
        }
    }
    Err(SymbolicError::NoRadius { n, max: r_max })
}

fn extract_block(dim: Dim, side: usize, off: usize, n: usize, cells: &[usize]) -> Vec<usize> {
    match dim {
        Dim::One => cells[off..off + n].to_vec(),
        Dim::Two => {
            let mut out = Vec::with_capacity(n * n);
            for y in off..off + n {
                out.extend_from_slice(&cells[y * side + off..y * side + off + n]);
            }
            out
        }
    }
}

fn index_pattern<S: Clone + Eq + Hash>(
    alphabet: &Alphabet<S>,
    dim: Dim,
    n: usize,
    cells: &[usize],
) -> Pattern<S> {
    let syms = alphabet.symbols();
    match dim {
        Dim::One => Pattern::word(cells.iter().map(|&i| syms[i].clone())),
        Dim::Two => {
            let rows: Vec<Vec<S>> = cells
                .chunks(n)
                .map(|r| r.iter().map(|&i| syms[i].clone()).collect())
                .collect();
            Pattern::grid(&rows).expect("square chunks")
        }
    }
}

enum Flow {
    Continue,
    Stop,
    Exceeded,
}

/// Row-major backtracking over the cells of a box with forward checks: each
/// placement of a forbidden pattern is tested as soon as its last cell is set.
struct BoxSearch {
    side: usize,
    dim: Dim,
    alphabet_len: usize,
    values: Vec<Option<usize>>,
    placements: Vec<Vec<(usize, usize)>>,
    budget: u64,
    nodes: u64,
}

impl BoxSearch {
    fn new<S: Clone + Eq + Ord + Hash>(
        alphabet: &Alphabet<S>,
        forbidden: &ForbiddenSet<S>,
        dim: Dim,
        side: usize,
        limits: SearchLimits,
    ) -> Self {
        let ncells = match dim {
            Dim::One => side,
            Dim::Two => side * side,
        };
        let mut placements = Vec::new();
        for f in forbidden.patterns() {
            if f.dim() != dim {
                continue;
            }
            let Some(cells) = f
                .cells()
                .map(|(p, s)| alphabet.index_of(s).map(|i| (p, i)))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let (w, h) = (f.width(), if dim == Dim::Two { f.height() } else { 1 });
            let (h_side, v_side) = (side, if dim == Dim::Two { side } else { 1 });
            if w > h_side || h > v_side {
                continue;
            }
            for oy in 0..=(v_side - h) {
                for ox in 0..=(h_side - w) {
                    placements.push(
                        cells
                            .iter()
                            .map(|(p, s)| ((p.y as usize + oy) * side + p.x as usize + ox, *s))
                            .collect(),
                    );
                }
            }
        }
        BoxSearch {
            side,
            dim,
            alphabet_len: alphabet.len(),
            values: vec![None; ncells],
            placements,
            budget: limits.node_budget,
            nodes: 0,
        }
    }

    fn fix(&mut self, p: Point, sym: usize) {
        let idx = match self.dim {
            Dim::One => p.x as usize,
            Dim::Two => p.y as usize * self.side + p.x as usize,
        };
        self.values[idx] = Some(sym);
    }

    fn matches(values: &[Option<usize>], placement: &[(usize, usize)]) -> bool {
        placement.iter().all(|&(c, s)| values[c] == Some(s))
    }

    /// Free cells in row-major order and, per position, the placements completed there.
    fn plan(&self) -> Option<(Vec<usize>, Vec<Vec<usize>>)> {
        let order: Vec<usize> = (0..self.values.len())
            .filter(|&c| self.values[c].is_none())
            .collect();
        let mut rank = vec![usize::MAX; self.values.len()];
        for (r, &c) in order.iter().enumerate() {
            rank[c] = r;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (i, pl) in self.placements.iter().enumerate() {
            let last = pl
                .iter()
                .map(|&(c, _)| rank[c])
                .filter(|&r| r != usize::MAX)
                .max();
            match last {
                Some(r) => checks[r].push(i),
                None => {
                    if Self::matches(&self.values, pl) {
                        return None;
                    }
                }
            }
        }
        Some((order, checks))
    }

    fn run_first(&mut self) -> Flow {
        self.enumerate(&mut |_| false)
    }

    /// Visit every locally admissible completion; the callback returns `false` to stop.
    fn enumerate(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        let Some((order, checks)) = self.plan() else {
            return Flow::Continue;
        };
        self.dfs(0, &order, &checks, visit)
    }

    fn dfs(
        &mut self,
        pos: usize,
        order: &[usize],
        checks: &[Vec<usize>],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Flow {
        if pos == order.len() {
            let full: Vec<usize> = self.values.iter().map(|v| v.expect("complete")).collect();
            return if visit(&full) {
                Flow::Continue
            } else {
                Flow::Stop
            };
        }
        let cell = order[pos];
        for s in 0..self.alphabet_len {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.values[cell] = None;
                return Flow::Exceeded;
            }
            self.values[cell] = Some(s);
            let ok = checks[pos]
                .iter()
                .all(|&i| !Self::matches(&self.values, &self.placements[i]));
            if ok {
                match self.dfs(pos + 1, order, checks, visit) {
                    Flow::Continue => {}
                    other => {
                        self.values[cell] = None;
                        return other;
                    }
                }
            }
        }
        self.values[cell] = None;
        Flow::Continue
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet<char> {
        Alphabet::from_chars("01").unwrap()
    }

    fn w(s: &str) -> Pattern<char> {
        Pattern::word(s.chars())
    }

    #[test]
    fn local_check_examples() {
        let f = ForbiddenSet::words(["00".chars()]);
        assert!(locally_admissible(&w("0101"), &f));
        assert!(!locally_admissible(&w("1001"), &f));
        assert!(locally_admissible(&w("0"), &f));
    }

    #[test]
    fn global_check_examples() {
        let golden = ForbiddenSet::words(["11".chars()]);
        let l = SearchLimits::default();
        assert_eq!(
            globally_admissible_within(&bin(), &golden, &w("11"), 2, l).unwrap(),
            Admissibility::No
        );
        assert_eq!(
            globally_admissible_within(&bin(), &golden, &w("1010"), 4, l).unwrap(),
            Admissibility::Yes
        );
        assert_eq!(
            globally_admissible_within(&bin(), &ForbiddenSet::empty(), &w("1111"), 4, l).unwrap(),
            Admissibility::Yes
        );
        assert!(matches!(
            globally_admissible_within(&bin(), &golden, &w("1010"), 3, l),
            Err(SymbolicError::RadiusTooSmall { .. })
        ));
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let golden = ForbiddenSet::words(["11".chars()]);
        let tiny = SearchLimits { node_budget: 3 };
        assert_eq!(
            globally_admissible_within(&bin(), &golden, &w("10"), 8, tiny).unwrap(),
            Admissibility::BoundExceeded
        );
    }

    #[test]
    fn dead_end_words_are_not_global() {
        // "1" can never be followed by anything: words ending in 1 do not extend to the right.
        let f = ForbiddenSet::words(["10".chars(), "11".chars()]);
        let l = SearchLimits::default();
        assert_eq!(
            globally_admissible_within(&bin(), &f, &w("01"), 3, l).unwrap(),
            Admissibility::No
        );
        assert_eq!(
            globally_admissible_within(&bin(), &f, &w("00"), 3, l).unwrap(),
            Admissibility::Yes
        );
    }

    #[test]
    fn two_dimensional_alignment() {
        // vertical pairs must agree
        let v = ForbiddenSet::new([
            Pattern::grid(&[vec!['0'], vec!['1']]).unwrap(),
            Pattern::grid(&[vec!['1'], vec!['0']]).unwrap(),
        ]);
        let spec = SubshiftSpec::sft(bin(), v, Dim::Two);
        let lang = language(&spec, 2, 2, SearchLimits::default()).unwrap();
        assert_eq!(lang.len(), 4);
    }
}
