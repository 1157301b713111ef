use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use super::occupancy::Cell;
use super::PlanarError;

pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit mantissa").ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoveringBound {
    /// `ln(card E) / n^2`.
    pub lhs: f64,
    /// `ln|A~| / l + ln(C) / l^2 + eps ln|A^|`.
    pub rhs: f64,
    pub holds: bool,
}

/// Compare the growth of a covering set `E` of `n x n` patterns with the
/// block-counting estimate built from windows of side `l`.
pub fn covering_entropy_bound(
    n: usize,
    ell: usize,
    eps: f64,
    card_e: &BigUint,
    card_alphabets: (usize, usize),
    complexity: &BigUint,
) -> Result<CoveringBound, PlanarError> {
    if !(n > 2 * ell && ell > 1) {
        return Err(PlanarError::Covering(format!(
            "need n > 2l > 2, got n = {n}, l = {ell}"
        )));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(PlanarError::Covering(format!("eps = {eps} outside [0, 1]")));
    }
    let (tilde, hat) = card_alphabets;
    let lhs = ln_big(card_e) / (n * n) as f64;
    let l = ell as f64;
    let rhs = (tilde as f64).ln() / l + ln_big(complexity) / (l * l) + eps * (hat as f64).ln();
    Ok(CoveringBound {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Number of `n x n` patterns over `q` letters whose `2l` windows at every
/// offset of `s` are vertically aligned. Cells tied together inside some
/// window must agree, every other cell is free.
pub fn aligned_cover_count(
    n: usize,
    ell: usize,
    s: &[Cell],
    q: usize,
) -> Result<BigUint, PlanarError> {
    let side = 2 * ell;
    if side > n {
        return Err(PlanarError::TooSmall { n, need: side });
    }
    if let Some(u) = s.iter().find(|u| u.0 > n - side || u.1 > n - side) {
        return Err(PlanarError::Covering(format!(
            "offset {u:?} outside [0, {}]^2",
            n - side
        )));
    }
    let mut uf = UnionFind((0..n * n).collect());
    for &(ux, uy) in s {
        for x in ux..ux + side {
            for y in uy..uy + side - 1 {
                uf.union(y * n + x, (y + 1) * n + x);
            }
        }
    }
    let classes = (0..n * n).filter(|&i| uf.find(i) == i).count();
    Ok(BigUint::from(q).pow(classes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_offsets_force_constant_columns() {
        let s: Vec<Cell> = (0..=4).flat_map(|x| (0..=4).map(move |y| (x, y))).collect();
        assert_eq!(
            aligned_cover_count(8, 2, &s, 2).unwrap(),
            BigUint::from(256u32)
        );
        assert_eq!(
            aligned_cover_count(8, 2, &[], 3).unwrap(),
            BigUint::from(3u32).pow(64u32)
        );
        let eps = 1.0 - 25.0 / 64.0;
        let b = covering_entropy_bound(
            8,
            2,
            eps,
            &BigUint::from(256u32),
            (2, 2),
            &BigUint::from(1u32),
        )
        .unwrap();
        assert!(b.holds);
    }

    #[test]
    fn eps_one_is_trivial() {
        let all = BigUint::from(4u32).pow(81u32);
        let b = covering_entropy_bound(9, 2, 1.0, &all, (3, 4), &BigUint::from(1u32)).unwrap();
        assert!(b.holds);
        assert!(covering_entropy_bound(4, 2, 0.5, &all, (3, 4), &BigUint::from(1u32)).is_err());
    }

    #[test]
    fn big_logs() {
        let x = BigUint::from(3u32).pow(5000u32);
        assert!((ln_big(&x) - 5000.0 * 3f64.ln()).abs() < 1e-6);
    }
}
