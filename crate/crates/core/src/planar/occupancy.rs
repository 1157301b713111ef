use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::PlanarError;
use crate::symbolic::{concat_words, Pattern};
use crate::tower::{frequency, ratio_string, Side, Word, WordTower};

/// Offsets and cells are `(x, y)` with `0 <= x, y < n`, `y` growing upward.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyReport {
    pub k: u32,
    pub n: usize,
    pub len_prime: usize,
    /// Offsets of vertically aligned `2 l'_k` squares whose row lies in the two-block language of `L_k`.
    pub i: BTreeSet<Cell>,
    /// Offsets of vertically aligned `l'_k` squares reading a primed A word.
    pub i_a: BTreeSet<Cell>,
    pub i_b: BTreeSet<Cell>,
    pub j_a: BTreeSet<Cell>,
    pub j_b: BTreeSet<Cell>,
    /// Zero cells of `j_a` and `j_b`.
    pub k_a: BTreeSet<Cell>,
    pub k_b: BTreeSet<Cell>,
}

fn square_rows(p: &Pattern<u8>) -> Result<Vec<Vec<u8>>, PlanarError> {
    let rows = p.rows().ok_or(PlanarError::NotSquare)?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PlanarError::NotSquare);
    }
    Ok(rows)
}

/// `up[y][x]`: how many cells starting at `(x, y)` going up repeat the letter at `(x, y)`.
fn vertical_runs(rows: &[Vec<u8>]) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut up = vec![vec![1; n]; n];
    for y in (0..n.saturating_sub(1)).rev() {
        for x in 0..n {
            if rows[y][x] == rows[y + 1][x] {
                up[y][x] = up[y + 1][x] + 1;
            }
        }
    }
    up
}

fn aligned_offsets(
    rows: &[Vec<u8>],
    up: &[Vec<usize>],
    side: usize,
    ok: impl Fn(&[u8]) -> bool,
) -> BTreeSet<Cell> {
    let n = rows.len();
    let mut out = BTreeSet::new();
    for x in 0..=n - side {
        for y in 0..=n - side {
            if up[y][x..x + side].iter().all(|&h| h >= side) && ok(&rows[y][x..x + side]) {
                out.insert((x, y));
            }
        }
    }
    out
}

fn cover(offsets: &BTreeSet<Cell>, side: usize, n: usize) -> BTreeSet<Cell> {
    let mut hit = vec![vec![false; n]; n];
    for &(x, y) in offsets {
        for row in &mut hit[y..y + side] {
            row[x..x + side].iter_mut().for_each(|c| *c = true);
        }
    }
    let mut out = BTreeSet::new();
    for (y, row) in hit.iter().enumerate() {
        for (x, &h) in row.iter().enumerate() {
            if h {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Occupancy sets of a square pattern over `{0, 1, 2}` at tower level `k >= 1`.
pub fn occupancy(
    p: &Pattern<u8>,
    tower: &WordTower,
    k: u32,
) -> Result<OccupancyReport, PlanarError> {
    let rows = square_rows(p)?;
    let n = rows.len();
    let level = tower.level(k)?;
    if k == 0 {
        return Err(PlanarError::LevelZero);
    }
    let lp = level.len_prime();
    if n <= 2 * lp {
        return Err(PlanarError::TooSmall {
            n,
            need: 2 * lp + 1,
        });
    }
    let up = vertical_runs(&rows);
    let lang: HashSet<Word> = concat_words(&level.language(), 2 * lp)?
        .into_iter()
        .collect();
    let primed_a: HashSet<Word> = level.tilde_a_prime().into_iter().collect();
    let primed_b: HashSet<Word> = level.tilde_b_prime().into_iter().collect();

    let i = aligned_offsets(&rows, &up, 2 * lp, |w| lang.contains(w));
    let i_a = aligned_offsets(&rows, &up, lp, |w| primed_a.contains(w));
    let i_b = aligned_offsets(&rows, &up, lp, |w| primed_b.contains(w));
    let j_a = cover(&i_a, lp, n);
    let j_b = cover(&i_b, lp, n);
    let zero = |c: &&Cell| rows[c.1][c.0] == 0;
    let k_a = j_a.iter().filter(zero).copied().collect();
    let k_b = j_b.iter().filter(zero).copied().collect();
    Ok(OccupancyReport {
        k,
        n,
        len_prime: lp,
        i,
        i_a,
        i_b,
        j_a,
        j_b,
        k_a,
        k_b,
    })
}

impl OccupancyReport {
    pub fn disjoint(&self) -> bool {
        self.j_a.is_disjoint(&self.j_b)
    }

    /// Cell reached from offset `u` by the diagonal step `(l'_k, l'_k)` in one-based coordinates.
    pub fn tau_target(&self, u: Cell) -> Cell {
        (u.0 + self.len_prime - 1, u.1 + self.len_prime - 1)
    }

    /// Offsets `u` in `I` whose diagonal target is covered by neither `J^A` nor `J^B`.
    pub fn uncovered_targets(&self) -> Vec<Cell> {
        self.i
            .iter()
            .copied()
            .filter(|&u| {
                let t = self.tau_target(u);
                !self.j_a.contains(&t) && !self.j_b.contains(&t)
            })
            .collect()
    }

    /// Shift every set by `-(dx, dy)`, dropping entries that leave the grid.
    pub fn translated(&self, dx: usize, dy: usize, n: usize) -> OccupancyReport {
        let shift = |s: &BTreeSet<Cell>| {
            s.iter()
                .filter(|c| c.0 >= dx && c.1 >= dy && c.0 - dx < n && c.1 - dy < n)
                .map(|c| (c.0 - dx, c.1 - dy))
                .collect()
        };
        OccupancyReport {
            k: self.k,
            n,
            len_prime: self.len_prime,
            i: shift(&self.i),
            i_a: shift(&self.i_a),
            i_b: shift(&self.i_b),
            j_a: shift(&self.j_a),
            j_b: shift(&self.j_b),
            k_a: shift(&self.k_a),
            k_b: shift(&self.k_b),
        }
    }

    pub fn to_json(&self) -> OccupancyJson {
        let list = |s: &BTreeSet<Cell>| s.iter().map(|&(x, y)| [x, y]).collect();
        OccupancyJson {
            k: self.k,
            n: self.n,
            len_prime: self.len_prime,
            i: list(&self.i),
            i_a: list(&self.i_a),
            i_b: list(&self.i_b),
            card_i: self.i.len().to_string(),
            card_j_a: self.j_a.len().to_string(),
            card_j_b: self.j_b.len().to_string(),
            card_k_a: self.k_a.len().to_string(),
            card_k_b: self.k_b.len().to_string(),
            disjoint: self.disjoint(),
            uncovered_targets: list(&self.uncovered_targets().into_iter().collect()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OccupancyJson {
    pub k: u32,
    pub n: usize,
    pub len_prime: usize,
    pub i: Vec<[usize; 2]>,
    pub i_a: Vec<[usize; 2]>,
    pub i_b: Vec<[usize; 2]>,
    pub card_i: String,
    pub card_j_a: String,
    pub card_j_b: String,
    pub card_k_a: String,
    pub card_k_b: String,
    pub disjoint: bool,
    pub uncovered_targets: Vec<[usize; 2]>,
}

/// One zero-count inequality: `count <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroBound {
    pub side: Side,
    pub count: usize,
    pub bound: BigRational,
}

impl ZeroBound {
    pub fn holds(&self) -> bool {
        BigRational::from_integer(BigInt::from(self.count)) <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroBounds {
    /// The side whose words are powers at level `k` (B at even `k`).
    pub power: ZeroBound,
    /// The side carrying marker runs (A at even `k`).
    pub marker: ZeroBound,
}

impl ZeroBounds {
    pub fn holds(&self) -> bool {
        self.power.holds() && self.marker.holds()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let one = |b: &ZeroBound| {
            serde_json::json!({
                "side": b.side,
                "count": b.count.to_string(),
                "bound": ratio_string(&b.bound),
                "holds": b.holds(),
            })
        };
        serde_json::json!({ "power": one(&self.power), "marker": one(&self.marker) })
    }
}

/// Zero counts in the occupied cells against the frequencies one level down:
/// at even `k`, `|K^B| <= (1 - 1/N_{k-1})^{-1} |J^B| f^B_{k-1}` and
/// `|K^A| <= (2/N'_k) |J^A| f^A_{k-1}`; odd `k` swaps A and B.
pub fn check_zero_bounds(
    report: &OccupancyReport,
    tower: &WordTower,
) -> Result<ZeroBounds, PlanarError> {
    let k = report.k;
    let level = tower.level(k)?;
    let n_prev = tower.block_counts()[k as usize - 1];
    let (power, marker) = if k.is_multiple_of(2) {
        (Side::B, Side::A)
    } else {
        (Side::A, Side::B)
    };
    let int = |v: u64| BigRational::from_integer(BigInt::from(v));
    let sets = |s: Side| match s {
        Side::A => (&report.j_a, &report.k_a),
        Side::B => (&report.j_b, &report.k_b),
    };
    let (j_pow, k_pow) = sets(power);
    let (j_mark, k_mark) = sets(marker);
    let slack = (BigRational::one() - int(n_prev).recip()).recip();
    let power_bound = slack * int(j_pow.len() as u64) * frequency(tower, k - 1, power, false)?;
    let marker_bound = int(2) / int(level.n_prime)
        * int(j_mark.len() as u64)
        * frequency(tower, k - 1, marker, false)?;
    Ok(ZeroBounds {
        power: ZeroBound {
            side: power,
            count: k_pow.len(),
            bound: power_bound,
        },
        marker: ZeroBound {
            side: marker,
            count: k_mark.len(),
            bound: marker_bound,
        },
    })
}
