use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::TowerError;

/// Largest power of two `schedule_step` will materialize for `beta_k`.
pub const MAX_EXPONENT: u64 = 1 << 22;

/// One level of the recursive parameter sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleLevel {
    pub k: u32,
    pub len: BigUint,
    pub beta: BigUint,
    pub rho_a: BigUint,
    pub rho_b: BigUint,
    /// `N'_k`, `l'_k` and `N_k`; zero at level 0 where they are undefined.
    pub n_prime: BigUint,
    pub len_prime: BigUint,
    pub n: BigUint,
}

impl ScheduleLevel {
    pub fn seed() -> Self {
        ScheduleLevel {
            k: 0,
            len: BigUint::from(2u32),
            beta: BigUint::zero(),
            rho_a: BigUint::one(),
            rho_b: BigUint::one(),
            n_prime: BigUint::zero(),
            len_prime: BigUint::zero(),
            n: BigUint::zero(),
        }
    }

    /// Standing assumption of the construction that the recursion itself does not enforce.
    pub fn n_prime_below_four(&self) -> bool {
        self.k > 0 && self.n_prime < BigUint::from(4u32)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.n_prime_below_four() {
            v.push(format!("N'_{} = {} < 4", self.k, self.n_prime));
        }
        if self.k > 0 && !self.n.is_multiple_of(&self.n_prime) {
            v.push(format!("N'_{} does not divide N_{}", self.k, self.k));
        }
        v
    }

    pub fn to_json(&self) -> ScheduleJson {
        ScheduleJson {
            k: self.k,
            len: self.len.to_string(),
            beta: self.beta.to_string(),
            rho_a: self.rho_a.to_string(),
            rho_b: self.rho_b.to_string(),
            n_prime: self.n_prime.to_string(),
            len_prime: self.len_prime.to_string(),
            n: self.n.to_string(),
            violations: self.violations(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScheduleJson {
    pub k: u32,
    pub len: String,
    pub beta: String,
    pub rho_a: String,
    pub rho_b: String,
    pub n_prime: String,
    pub len_prime: String,
    pub n: String,
    pub violations: Vec<String>,
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    a.div_ceil(b)
}

/// Advance from level `k - 1` to level `k`. Even levels use the formulas
/// below directly; odd levels swap the roles of the A and B counts.
pub fn schedule_step(prev: &ScheduleLevel, k: u32) -> Result<ScheduleLevel, TowerError> {
    assert!(
        k >= 1 && prev.k + 1 == k,
        "schedule_step must advance one level"
    );
    let kk = BigUint::from(k);
    let (same, other) = if k.is_multiple_of(2) {
        (&prev.rho_a, &prev.rho_b)
    } else {
        (&prev.rho_b, &prev.rho_a)
    };
    let n_prime = ceil_div(&(&kk * same), other);
    let len_prime = &n_prime * &prev.len;
    let exp = u64::try_from(&kk * &len_prime)
        .ok()
        .filter(|&e| e <= MAX_EXPONENT)
        .ok_or(TowerError::ScheduleOverflow { k })?;
    let pow = BigUint::one() << exp;
    let beta = ceil_div(&(&prev.len * &prev.len * pow), &(other * other));
    let n = &n_prime * ceil_div(&(&kk * &beta), &(&n_prime * other));
    let len = &n * &prev.len;
    let doubled = same * 2u32;
    let grown = &n * other;
    let (rho_a, rho_b) = if k.is_multiple_of(2) {
        (doubled, grown)
    } else {
        (grown, doubled)
    };
    Ok(ScheduleLevel {
        k,
        len,
        beta,
        rho_a,
        rho_b,
        n_prime,
        len_prime,
        n,
    })
}

/// Levels `0..=depth` from the seed.
pub fn schedule(depth: u32) -> Result<Vec<ScheduleLevel>, TowerError> {
    let mut out = vec![ScheduleLevel::seed()];
    for k in 1..=depth {
        let next = schedule_step(out.last().expect("seeded"), k)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn first_level() {
        let s = schedule(1).unwrap();
        let l1 = &s[1];
        assert_eq!(
            (
                &l1.n_prime,
                &l1.len_prime,
                &l1.beta,
                &l1.n,
                &l1.len,
                &l1.rho_a,
                &l1.rho_b
            ),
            (
                &big(1),
                &big(2),
                &big(16),
                &big(16),
                &big(32),
                &big(16),
                &big(2)
            )
        );
        assert!(l1.n_prime_below_four());
        assert_eq!(l1.violations().len(), 1);
    }

    #[test]
    fn second_level_is_exact() {
        let s = schedule(2).unwrap();
        let l2 = &s[2];
        assert_eq!(l2.n_prime, big(16));
        assert_eq!(l2.len_prime, big(512));
        assert_eq!(l2.beta, (big(1024) << 1024usize).div_ceil(&big(4)));
        assert_eq!(l2.beta, big(1) << 1032usize);
        assert_eq!(l2.n, big(1) << 1032usize);
        assert!(!l2.n_prime_below_four());
        assert_eq!(
            schedule(3).unwrap_err(),
            TowerError::ScheduleOverflow { k: 3 }
        );
    }
}
