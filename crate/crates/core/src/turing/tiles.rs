use std::collections::HashSet;

use super::diagram::{cell_alphabet, Cell};
use super::machine::{Move, Rule};
use super::{TuringError, TuringMachine};
use crate::symbolic::{ForbiddenSet, Pattern, Point};

/// A 3x2 window: bottom row (time t) then top row (time t+1), left to right.
pub type Tile = [Cell; 6];

/// The allowed 3x2 windows of a machine's space-time diagrams.
#[derive(Debug, Clone)]
pub struct Tileset {
    allowed: HashSet<Tile>,
    cells: Vec<Cell>,
}

/// The four window families generated by one transition `(q, x) -> rule`.
pub fn rule_families(m: &TuringMachine, q: usize, x: usize, rule: Rule) -> [Vec<Tile>; 4] {
    use Cell::{Head, Sym};
    let t = m.tape_symbols().len();
    let (q2, y) = (rule.next, rule.write);
    let here = Head(q, x);
    let mut fam: [Vec<Tile>; 4] = Default::default();
    for a in 0..t {
        for b in 0..t {
            let (a, b) = (Sym(a), Sym(b));
            match rule.dir {
                Move::Right => {
                    fam[0].push([a, here, b, a, Sym(y), Head(q2, b.symbol())]);
                    fam[1].push([here, a, b, Sym(y), Head(q2, a.symbol()), b]);
                    fam[3].push([a, b, here, a, b, Sym(y)]);
                }
                Move::Left => {
                    fam[0].push([a, here, b, Head(q2, a.symbol()), Sym(y), b]);
                    fam[1].push([a, b, here, a, Head(q2, b.symbol()), Sym(y)]);
                    fam[3].push([here, a, b, Sym(y), a, b]);
                }
            }
            for c in 0..t {
                let c = Sym(c);
                // the head arrives from outside the window
                fam[2].push(match rule.dir {
                    Move::Right => [a, b, c, Head(q2, a.symbol()), b, c],
                    Move::Left => [a, b, c, a, b, Head(q2, c.symbol())],
                });
            }
        }
    }
    fam
}

pub fn compile_tileset(m: &TuringMachine) -> Tileset {
    let t = m.tape_symbols().len();
    let mut allowed = HashSet::new();
    for a in 0..t {
        for b in 0..t {
            for c in 0..t {
                let row = [Cell::Sym(a), Cell::Sym(b), Cell::Sym(c)];
                allowed.insert([row[0], row[1], row[2], row[0], row[1], row[2]]);
            }
        }
    }
    for ((q, x), rule) in m.rules() {
        for fam in rule_families(m, q, x, rule) {
            allowed.extend(fam);
        }
    }
    Tileset {
        allowed,
        cells: cell_alphabet(m),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramCheck {
    /// Lower-left corners of rejected windows, relative to the grid's lower-left cell.
    pub violations: Vec<Point>,
}

impl DiagramCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Tileset {
    pub fn allows(&self, tile: &Tile) -> bool {
        self.allowed.contains(tile)
    }

    pub fn allowed(&self) -> &HashSet<Tile> {
        &self.allowed
    }

    pub fn len(&self) -> usize {
        self.allowed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }

    pub fn cell_alphabet(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of forbidden 3x2 windows, i.e. the size of the complement.
    pub fn complement_size(&self) -> u128 {
        (self.cells.len() as u128).pow(6) - self.allowed.len() as u128
    }

    /// Materialize the complement as a forbidden set, refusing when it exceeds `limit` patterns.
    pub fn forbidden_set(&self, limit: u128) -> Result<ForbiddenSet<Cell>, TuringError> {
        let size = self.complement_size();
        if size > limit {
            return Err(TuringError::TooLarge { size, limit });
        }
        let k = self.cells.len();
        let mut out = Vec::new();
        let mut idx = [0usize; 6];
        loop {
            let tile: Tile = std::array::from_fn(|i| self.cells[idx[i]]);
            if !self.allowed.contains(&tile) {
                out.push(tile_pattern(&tile));
            }
            let mut i = 6;
            loop {
                if i == 0 {
                    return Ok(ForbiddenSet::new(out));
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < k {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
}

pub fn tile_pattern(tile: &Tile) -> Pattern<Cell> {
    Pattern::grid(&[tile[..3].to_vec(), tile[3..].to_vec()]).expect("3x2")
}

/// Check every 3x2 window of a rectangular grid against the tileset.
pub fn check_diagram(tiles: &Tileset, grid: &Pattern<Cell>) -> Result<DiagramCheck, TuringError> {
    let rows = grid.rows().ok_or(TuringError::GridShape)?;
    let (h, w) = (rows.len(), rows.first().map_or(0, Vec::len));
    if w < 3 || h < 2 {
        return Err(TuringError::GridShape);
    }
    let mut violations = Vec::new();
    for y in 0..h - 1 {
        for x in 0..w - 2 {
            let (b, t) = (&rows[y], &rows[y + 1]);
            let tile = [b[x], b[x + 1], b[x + 2], t[x], t[x + 1], t[x + 2]];
            if !tiles.allows(&tile) {
                violations.push(Point::new(x as i64, y as i64));
            }
        }
    }
    Ok(DiagramCheck { violations })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationReport {
    pub tried: usize,
    /// Mutations that still pass every window.
    pub accepted: Vec<(Point, Cell)>,
}

/// Replace each cell in columns `1..w-1` by every other cell value and
/// recheck the windows covering it. Edge columns are skipped: a window only
/// sees them from one side, so some edge changes are locally undetectable.
pub fn mutation_check(
    tiles: &Tileset,
    grid: &Pattern<Cell>,
) -> Result<MutationReport, TuringError> {
    let mut rows = grid.rows().ok_or(TuringError::GridShape)?;
    let (h, w) = (rows.len(), rows.first().map_or(0, Vec::len));
    if w < 3 || h < 2 {
        return Err(TuringError::GridShape);
    }
    let window_ok = |rows: &[Vec<Cell>], x: usize, y: usize| {
        let (b, t) = (&rows[y], &rows[y + 1]);
        tiles.allows(&[b[x], b[x + 1], b[x + 2], t[x], t[x + 1], t[x + 2]])
    };
    let mut report = MutationReport {
        tried: 0,
        accepted: Vec::new(),
    };
    for y in 0..h {
        for x in 1..w - 1 {
            let orig = rows[y][x];
            for &c in tiles.cell_alphabet() {
                if c == orig {
                    continue;
                }
                rows[y][x] = c;
                report.tried += 1;
                let ys = y.saturating_sub(1)..=y.min(h - 2);
                let xs = x.saturating_sub(2)..=x.min(w - 3);
                if ys
                    .clone()
                    .all(|yy| xs.clone().all(|xx| window_ok(&rows, xx, yy)))
                {
                    report.accepted.push((Point::new(x as i64, y as i64), c));
                }
            }
            rows[y][x] = orig;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{builtin, space_time_diagram, MachineSpec};
    use super::*;

    #[test]
    fn one_rule_gives_four_families() {
        let m = builtin("anbn_enum").unwrap();
        let q = m.state_index("q||").unwrap();
        let a = m.symbol_index("a").unwrap();
        let fams = rule_families(&m, q, a, m.rule(q, a).unwrap());
        let t = m.tape_symbols().len();
        assert_eq!(
            fams.each_ref().map(|f| f.len()),
            [t * t, t * t, t * t * t, t * t]
        );
        let qa = m.state_index("qa+").unwrap();
        assert!(fams[0].contains(&[
            Cell::Sym(0),
            Cell::Head(q, a),
            Cell::Sym(1),
            Cell::Sym(0),
            Cell::Sym(a),
            Cell::Head(qa, 1)
        ]));
    }

    #[test]
    fn empty_table_allows_only_headless_windows() {
        let spec = MachineSpec {
            states: vec!["s".into(), "y".into(), "n".into()],
            input: vec!["a".into()],
            tape: vec!["a".into(), "_".into()],
            blank: "_".into(),
            start: "s".into(),
            accept: "y".into(),
            reject: "n".into(),
            ..Default::default()
        };
        let m = TuringMachine::new(spec).unwrap();
        let ts = compile_tileset(&m);
        assert_eq!(ts.len(), 8);
        assert!(ts
            .allowed()
            .iter()
            .all(|t| t.iter().all(|c| matches!(c, Cell::Sym(_)))));
        assert_eq!(ts.complement_size(), 8u128.pow(6) - 8);
        assert!(ts.forbidden_set(10).is_err());
    }

    #[test]
    fn generated_diagrams_pass() {
        let m = builtin("anbn_enum").unwrap();
        let ts = compile_tileset(&m);
        let d = space_time_diagram(&m, &[], 23, -2..=8).unwrap();
        assert!(check_diagram(&ts, &d).unwrap().ok());
        let muts = mutation_check(&ts, &d).unwrap();
        assert!(muts.tried > 0);
        assert_eq!(muts.accepted, []);
        let blank = Pattern::grid(&vec![vec![Cell::Sym(m.blank()); 5]; 4]).unwrap();
        assert!(check_diagram(&ts, &blank).unwrap().ok());
    }
}
