use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::words::{max_zero_density, ratio_string, WordTower};
use super::TowerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    B,
}

/// Largest frequency of `0` over `Ã_k`, `B̃_k` or their primed versions.
pub fn frequency(
    tower: &WordTower,
    k: u32,
    side: Side,
    primed: bool,
) -> Result<BigRational, TowerError> {
    let l = tower.level(k)?;
    let words = match (side, primed) {
        (Side::A, false) => l.tilde_a().to_vec(),
        (Side::B, false) => l.tilde_b().to_vec(),
        (Side::A, true) => l.tilde_a_prime(),
        (Side::B, true) => l.tilde_b_prime(),
    };
    max_zero_density(&words).ok_or(TowerError::NoLevel {
        k,
        depth: tower.depth(),
    })
}

fn two_over(n: u64) -> BigRational {
    BigRational::new(BigInt::from(2), BigInt::from(n))
}

/// Product formula in the block counts `N_0 = 2, N_1, ..., N_k`.
pub fn closed_form_frequency(counts: &[u64], k: u32, side: Side) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let k = k as usize;
    let (terms, index): (usize, fn(usize) -> usize) = match (k % 2 == 1, side) {
        (true, Side::A) => (k.div_ceil(2), |i| 2 * i - 2),
        (true, Side::B) => (k.div_ceil(2), |i| 2 * i - 1),
        (false, Side::A) => (k / 2, |i| 2 * i),
        (false, Side::B) => (k / 2, |i| 2 * i - 1),
    };
    (1..=terms).fold(half, |acc, i| acc * two_over(counts[index(i)]))
}

#[derive(Debug, Clone, Serialize)]
pub struct FrequencyCheck {
    pub k: u32,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

fn check(k: u32, relation: &str, lhs: BigRational, rhs: BigRational) -> FrequencyCheck {
    FrequencyCheck {
        k,
        relation: relation.to_string(),
        holds: lhs == rhs,
        lhs: ratio_string(&lhs),
        rhs: ratio_string(&rhs),
    }
}

/// One-step recursions and closed forms at level `k >= 1`, each compared as exact rationals.
pub fn frequency_checks(tower: &WordTower, k: u32) -> Result<Vec<FrequencyCheck>, TowerError> {
    let l = tower.level(k)?;
    let f = |kk, side, primed| frequency(tower, kk, side, primed);
    let counts = tower.block_counts();
    let (n, np) = (l.n, l.n_prime);
    // odd levels repeat a, even levels repeat b
    let (kept, shrunk) = if k % 2 == 1 {
        (Side::A, Side::B)
    } else {
        (Side::B, Side::A)
    };
    let name = |s: Side| match s {
        Side::A => "A",
        Side::B => "B",
    };
    let (kn, sn) = (name(kept), name(shrunk));
    let mut out = vec![
        check(
            k,
            &format!("f^{kn}_k = f^{kn}_(k-1)"),
            f(k, kept, false)?,
            f(k - 1, kept, false)?,
        ),
        check(
            k,
            &format!("f'^{kn}_k = f^{kn}_(k-1)"),
            f(k, kept, true)?,
            f(k - 1, kept, false)?,
        ),
        check(
            k,
            &format!("f^{sn}_k = (2/N_k) f^{sn}_(k-1)"),
            f(k, shrunk, false)?,
            two_over(n) * f(k - 1, shrunk, false)?,
        ),
        check(
            k,
            &format!("f'^{sn}_k = f^{sn}_(k-1) / N'_k"),
            f(k, shrunk, true)?,
            f(k - 1, shrunk, false)? / BigRational::from_integer(BigInt::from(np)),
        ),
    ];
    for side in [Side::A, Side::B] {
        out.push(check(
            k,
            &format!("f^{}_k closed form", name(side)),
            f(k, side, false)?,
            closed_form_frequency(&counts, k, side),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::words::{build_tower, BuildLimits, TowerParams};
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn toy_frequencies() {
        let t = build_tower(
            &TowerParams::toy(vec![4, 8], vec![4, 4]).unwrap(),
            BuildLimits::default(),
        )
        .unwrap();
        assert_eq!(frequency(&t, 0, Side::A, false).unwrap(), r(1, 2));
        assert_eq!(frequency(&t, 1, Side::B, false).unwrap(), r(1, 4));
        assert_eq!(frequency(&t, 1, Side::B, true).unwrap(), r(1, 8));
        assert_eq!(frequency(&t, 2, Side::A, false).unwrap(), r(1, 8));
        assert_eq!(
            closed_form_frequency(&t.block_counts(), 2, Side::A),
            r(1, 8)
        );
        for k in 1..=2 {
            assert!(frequency_checks(&t, k).unwrap().iter().all(|c| c.holds));
        }
    }
}
