use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SymbolicError;

/// A lattice point. One-dimensional patterns keep `y == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub const fn along(x: i64) -> Self {
        Point { x, y: 0 }
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dim {
    One,
    Two,
}

/// A finite-support assignment of symbols to lattice points.
///
/// Words are patterns on `1..=len` along the x axis; square and rectangular
/// grids use `1..=cols` by `1..=rows`, with `y` growing upward.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pattern<S> {
    dim: Dim,
    cells: BTreeMap<Point, S>,
}

impl<S: Clone + Eq> Pattern<S> {
    pub fn from_cells(
        dim: Dim,
        cells: impl IntoIterator<Item = (Point, S)>,
    ) -> Result<Self, SymbolicError> {
        let mut map = BTreeMap::new();
        for (p, s) in cells {
            if dim == Dim::One && p.y != 0 {
                return Err(SymbolicError::DimensionMismatch);
            }
            if map.insert(p, s).is_some() {
                return Err(SymbolicError::DuplicatePoint(p));
            }
        }
        Ok(Pattern { dim, cells: map })
    }

    /// A word with support `1..=len`.
    pub fn word(symbols: impl IntoIterator<Item = S>) -> Self {
        let cells = symbols
            .into_iter()
            .enumerate()
            .map(|(i, s)| (Point::along(i as i64 + 1), s))
            .collect();
        Pattern {
            dim: Dim::One,
            cells,
        }
    }

    /// A 2D grid; `rows[0]` is the bottom row (`y = 1`). All rows must share a length.
    pub fn grid(rows: &[Vec<S>]) -> Result<Self, SymbolicError> {
        let width = rows.first().map_or(0, Vec::len);
        let mut cells = BTreeMap::new();
        for (j, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(SymbolicError::RaggedGrid);
            }
            for (i, s) in row.iter().enumerate() {
                cells.insert(Point::new(i as i64 + 1, j as i64 + 1), s.clone());
            }
        }
        Ok(Pattern {
            dim: Dim::Two,
            cells,
        })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, p: Point) -> Option<&S> {
        self.cells.get(&p)
    }

    pub fn cells(&self) -> impl Iterator<Item = (Point, &S)> {
        self.cells.iter().map(|(p, s)| (*p, s))
    }

    pub fn support(&self) -> BTreeSet<Point> {
        self.cells.keys().copied().collect()
    }

    /// Lower-left and upper-right corners of the support's bounding box.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let mut it = self.cells.keys();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for p in it {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        Some((lo, hi))
    }

    /// Side length of the bounding box (the larger of width and height).
    pub fn size(&self) -> usize {
        self.bounds()
            .map(|(lo, hi)| ((hi.x - lo.x).max(hi.y - lo.y) + 1) as usize)
            .unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.bounds()
            .map(|(lo, hi)| (hi.x - lo.x + 1) as usize)
            .unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.bounds()
            .map(|(lo, hi)| (hi.y - lo.y + 1) as usize)
            .unwrap_or(0)
    }

    /// `σ^u`: the result has support `S - u` and value `p(v + u)` at `v`.
    pub fn shift(&self, u: Point) -> Self {
        Pattern {
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .map(|(p, s)| (*p - u, s.clone()))
                .collect(),
        }
    }

    /// Translate so the bounding box starts at the origin.
    pub fn normalized(&self) -> Self {
        match self.bounds() {
            Some((lo, _)) => self.shift(lo),
            None => self.clone(),
        }
    }

    /// True when every cell of `self` appears with the same symbol in `other`.
    pub fn is_subpattern_of(&self, other: &Pattern<S>) -> bool {
        self.cells
            .iter()
            .all(|(p, s)| other.cells.get(p) == Some(s))
    }

    pub fn restrict(&self, keep: impl Fn(Point) -> bool) -> Self {
        Pattern {
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .filter(|(p, _)| keep(**p))
                .map(|(p, s)| (*p, s.clone()))
                .collect(),
        }
    }

    /// Symbols of a 1D pattern in increasing x order.
    pub fn symbols(&self) -> Vec<S> {
        self.cells.values().cloned().collect()
    }

    /// Rows of a rectangular 2D pattern, bottom row first. `None` if the support has holes.
    pub fn rows(&self) -> Option<Vec<Vec<S>>> {
        let (lo, hi) = self.bounds()?;
        let mut rows = Vec::with_capacity((hi.y - lo.y + 1) as usize);
        for y in lo.y..=hi.y {
            let mut row = Vec::with_capacity((hi.x - lo.x + 1) as usize);
            for x in lo.x..=hi.x {
                row.push(self.cells.get(&Point::new(x, y))?.clone());
            }
            rows.push(row);
        }
        Some(rows)
    }

    pub fn map<T: Clone + Eq>(&self, f: impl Fn(&S) -> T) -> Pattern<T> {
        Pattern {
            dim: self.dim,
            cells: self.cells.iter().map(|(p, s)| (*p, f(s))).collect(),
        }
    }
}

/// All offsets `u` such that `q(v + u) = p(v)` for every `v` in the support of `p`.
pub fn occurrences<S: Clone + Eq>(p: &Pattern<S>, q: &Pattern<S>) -> BTreeSet<Point> {
    let mut found = BTreeSet::new();
    if p.dim != q.dim {
        return found;
    }
    let Some((&anchor, anchor_sym)) = p.cells.iter().next() else {
        return found;
    };
    for (&c, s) in &q.cells {
        if s != anchor_sym {
            continue;
        }
        let u = c - anchor;
        if p.cells
            .iter()
            .all(|(v, sym)| q.cells.get(&(*v + u)) == Some(sym))
        {
            found.insert(u);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Pattern<char> {
        Pattern::word(s.chars())
    }

    #[test]
    fn shift_identity_and_unit() {
        let p = w("01");
        assert_eq!(p.shift(Point::ORIGIN), p);
        let s = p.shift(Point::along(1));
        assert_eq!(s.get(Point::along(0)), Some(&'0'));
        assert_eq!(s.get(Point::along(1)), Some(&'1'));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn occurrences_in_words() {
        let found: Vec<_> = occurrences(&w("01"), &w("0101")).into_iter().collect();
        assert_eq!(found, vec![Point::along(0), Point::along(2)]);
        assert!(occurrences(&w("00"), &w("0101")).is_empty());
    }

    #[test]
    fn grid_rows_round_trip() {
        let rows = vec![vec!['a', 'b'], vec!['c', 'd'], vec!['e', 'f']];
        let g = Pattern::grid(&rows).unwrap();
        assert_eq!(g.width(), 2);
        assert_eq!(g.height(), 3);
        assert_eq!(g.size(), 3);
        assert_eq!(g.rows().unwrap(), rows);
        assert!(Pattern::grid(&[vec!['a'], vec!['b', 'c']]).is_err());
    }

    #[test]
    fn one_dimensional_rejects_y() {
        let r = Pattern::from_cells(Dim::One, [(Point::new(0, 1), 'a')]);
        assert!(matches!(r, Err(SymbolicError::DimensionMismatch)));
    }
}
