use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::schedule::{schedule, schedule_step, ScheduleLevel};
use super::TowerError;

/// Words over `{0, 1, 2}` stored as the digit values.
pub type Word = Vec<u8>;

pub const ALPHABET: [u8; 3] = [0, 1, 2];

pub fn word_string(w: &[u8]) -> String {
    w.iter().map(|&d| char::from(b'0' + d)).collect()
}

pub fn parse_word(s: &str) -> Result<Word, TowerError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(TowerError::InvalidParams(format!(
                "`{c}` is not one of 0, 1, 2"
            ))),
        })
        .collect()
}

fn zeros(w: &[u8]) -> u64 {
    w.iter().filter(|&&d| d == 0).count() as u64
}

fn repeat(block: &[u8], times: usize) -> Word {
    block.repeat(times)
}

fn run(sym: u8, len: usize) -> Word {
    vec![sym; len]
}

fn cat(parts: &[&[u8]]) -> Word {
    parts.concat()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerParams {
    /// Small hand-picked block counts `N_1..N_K` and `N'_1..N'_K`.
    Toy { n: Vec<u64>, n_prime: Vec<u64> },
    /// Block counts taken from the recursive schedule, up to `depth`.
    Schedule { depth: u32 },
}

impl TowerParams {
    /// Toy parameters must satisfy `N'_k >= 4` and `N'_k | N_k`.
    pub fn toy(n: Vec<u64>, n_prime: Vec<u64>) -> Result<Self, TowerError> {
        if n.len() != n_prime.len() {
            return Err(TowerError::InvalidParams(format!(
                "{} block counts but {} primed counts",
                n.len(),
                n_prime.len()
            )));
        }
        for (i, (&nk, &pk)) in n.iter().zip(&n_prime).enumerate() {
            let k = i + 1;
            if pk < 4 {
                return Err(TowerParams::bad(format!(
                    "N'_{k} = {pk} must be at least 4"
                )));
            }
            if nk % pk != 0 {
                return Err(TowerParams::bad(format!(
                    "N'_{k} = {pk} does not divide N_{k} = {nk}"
                )));
            }
        }
        Ok(TowerParams::Toy { n, n_prime })
    }

    fn bad(msg: String) -> TowerError {
        TowerError::InvalidParams(msg)
    }

    pub fn schedule(depth: u32) -> Self {
        TowerParams::Schedule { depth }
    }

    pub fn depth(&self) -> u32 {
        match self {
            TowerParams::Toy { n, .. } => n.len() as u32,
            TowerParams::Schedule { depth } => *depth,
        }
    }

    /// Schedule levels in schedule mode, each carrying its own violations.
    pub fn schedule_levels(&self) -> Result<Option<Vec<ScheduleLevel>>, TowerError> {
        match self {
            TowerParams::Schedule { depth } => schedule(*depth).map(Some),
            TowerParams::Toy { .. } => Ok(None),
        }
    }

    pub fn violations(&self) -> Result<Vec<String>, TowerError> {
        Ok(self
            .schedule_levels()?
            .map(|s| s.iter().flat_map(ScheduleLevel::violations).collect())
            .unwrap_or_default())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildLimits {
    /// Longest word the builder will materialize.
    pub max_len: usize,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits { max_len: 1 << 24 }
    }
}

/// Level `k` of the tower: the words `a_k`, `b_k` and the primed words built from level `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub k: u32,
    /// `N_k` and `N'_k`; zero at level 0.
    pub n: u64,
    pub n_prime: u64,
    pub a: Word,
    pub b: Word,
    /// Non-marker words of the primed A side: `a'` alone at odd levels, `a'` and `a''` at even ones.
    pub a_prime: Vec<Word>,
    pub b_prime: Vec<Word>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn len_prime(&self) -> usize {
        self.a_prime.first().map_or(0, Vec::len)
    }

    pub fn ones(&self) -> Word {
        run(1, self.len())
    }

    pub fn twos(&self) -> Word {
        run(2, self.len())
    }

    /// `L_k = {a_k, b_k, 1_k, 2_k}` in that order.
    pub fn language(&self) -> [Word; 4] {
        [self.a.clone(), self.b.clone(), self.ones(), self.twos()]
    }

    pub fn tilde_a(&self) -> [Word; 2] {
        [self.a.clone(), self.ones()]
    }

    pub fn tilde_b(&self) -> [Word; 2] {
        [self.b.clone(), self.twos()]
    }

    /// Primed A side including the marker word `1^{l'_k}`. Empty at level 0.
    pub fn tilde_a_prime(&self) -> Vec<Word> {
        self.with_marker(&self.a_prime, 1)
    }

    pub fn tilde_b_prime(&self) -> Vec<Word> {
        self.with_marker(&self.b_prime, 2)
    }

    fn with_marker(&self, words: &[Word], sym: u8) -> Vec<Word> {
        if words.is_empty() {
            return Vec::new();
        }
        let mut out = words.to_vec();
        out.push(run(sym, self.len_prime()));
        out
    }

    pub fn rho_a(&self) -> u64 {
        zeros(&self.a)
    }

    pub fn rho_b(&self) -> u64 {
        zeros(&self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTower {
    pub params: TowerParams,
    pub levels: Vec<Level>,
}

fn level_zero() -> Level {
    Level {
        k: 0,
        n: 0,
        n_prime: 0,
        a: vec![0, 1],
        b: vec![0, 2],
        a_prime: Vec::new(),
        b_prime: Vec::new(),
    }
}

fn next_level(prev: &Level, k: u32, n: usize, n_prime: usize) -> Level {
    let len = prev.len();
    let (a, b) = (&prev.a[..], &prev.b[..]);
    let mid = n.saturating_sub(2) * len;
    let gap = n_prime.saturating_sub(1) * len;
    if k % 2 == 1 {
        Level {
            k,
            n: n as u64,
            n_prime: n_prime as u64,
            a: repeat(a, n),
            b: cat(&[b, &run(2, mid), b]),
            a_prime: vec![repeat(a, n_prime)],
            b_prime: vec![cat(&[b, &run(2, gap)]), cat(&[&run(2, gap), b])],
        }
    } else {
        Level {
            k,
            n: n as u64,
            n_prime: n_prime as u64,
            a: cat(&[a, &run(1, mid), a]),
            b: repeat(b, n),
            a_prime: vec![cat(&[a, &run(1, gap)]), cat(&[&run(1, gap), a])],
            b_prime: vec![repeat(b, n_prime)],
        }
    }
}

/// Build levels `0..=K`. Fails with the offending level when a word would
/// exceed `limits.max_len`.
pub fn build_tower(params: &TowerParams, limits: BuildLimits) -> Result<WordTower, TowerError> {
    let counts: Vec<(u64, u64)> = match params {
        TowerParams::Toy { n, n_prime } => n.iter().copied().zip(n_prime.iter().copied()).collect(),
        TowerParams::Schedule { depth } => {
            let mut out = Vec::new();
            let mut prev = ScheduleLevel::seed();
            for k in 1..=*depth {
                let lvl = schedule_step(&prev, k)?;
                let fits = lvl.len.to_usize().filter(|&l| l <= limits.max_len);
                let (Some(_), Some(n), Some(np)) = (fits, lvl.n.to_u64(), lvl.n_prime.to_u64())
                else {
                    return Err(TowerError::MemoryBound {
                        k: lvl.k,
                        len: lvl.len.to_string(),
                        max_len: limits.max_len,
                    });
                };
                out.push((n, np));
                prev = lvl;
            }
            out
        }
    };
    let mut levels = vec![level_zero()];
    for (i, &(n, np)) in counts.iter().enumerate() {
        let k = i as u32 + 1;
        let prev = levels.last().expect("level 0 present");
        let len = (n as u128) * prev.len() as u128;
        if len > limits.max_len as u128 {
            return Err(TowerError::MemoryBound {
                k,
                len: len.to_string(),
                max_len: limits.max_len,
            });
        }
        let next = next_level(prev, k, n as usize, np as usize);
        levels.push(next);
    }
    Ok(WordTower {
        params: params.clone(),
        levels,
    })
}

impl WordTower {
    pub fn depth(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, k: u32) -> Result<&Level, TowerError> {
        self.levels.get(k as usize).ok_or(TowerError::NoLevel {
            k,
            depth: self.depth(),
        })
    }

    /// Block counts `N_0..N_K` with the convention `N_0 = 2`.
    pub fn block_counts(&self) -> Vec<u64> {
        let mut out = vec![2];
        out.extend(self.levels[1..].iter().map(|l| l.n));
        out
    }

    /// Smallest level whose words are at least `n` long.
    pub fn level_for_length(&self, n: usize) -> Option<u32> {
        self.levels
            .iter()
            .position(|l| l.len() >= n)
            .map(|k| k as u32)
    }

    pub fn to_json(&self) -> TowerJson {
        TowerJson {
            violations: self.params.violations().unwrap_or_default(),
            mode: match self.params {
                TowerParams::Toy { .. } => "toy",
                TowerParams::Schedule { .. } => "schedule",
            },
            levels: self.levels.iter().map(LevelJson::from).collect(),
        }
    }
}

pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Share of `0` letters in a non-empty word.
pub fn zero_frequency(w: &[u8]) -> BigRational {
    ratio(zeros(w), w.len() as u64)
}

/// Largest density of zeros over a set of words of a common length.
pub fn max_zero_density(words: &[Word]) -> Option<BigRational> {
    words.iter().map(|w| zero_frequency(w)).max()
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerJson {
    pub mode: &'static str,
    pub violations: Vec<String>,
    pub levels: Vec<LevelJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelJson {
    pub k: u32,
    pub n: String,
    pub n_prime: String,
    pub len: String,
    pub len_prime: String,
    pub a: String,
    pub b: String,
    pub a_prime: Vec<String>,
    pub b_prime: Vec<String>,
    pub rho_a: String,
    pub rho_b: String,
    pub f_a: String,
    pub f_b: String,
    pub f_prime_a: Option<String>,
    pub f_prime_b: Option<String>,
}

impl From<&Level> for LevelJson {
    fn from(l: &Level) -> Self {
        let strings = |ws: &[Word]| ws.iter().map(|w| word_string(w)).collect();
        let dens = |ws: &[Word]| max_zero_density(ws).map(|r| ratio_string(&r));
        LevelJson {
            k: l.k,
            n: l.n.to_string(),
            n_prime: l.n_prime.to_string(),
            len: l.len().to_string(),
            len_prime: l.len_prime().to_string(),
            a: word_string(&l.a),
            b: word_string(&l.b),
            a_prime: strings(&l.a_prime),
            b_prime: strings(&l.b_prime),
            rho_a: l.rho_a().to_string(),
            rho_b: l.rho_b().to_string(),
            f_a: ratio_string(&max_zero_density(&l.tilde_a()).expect("two words")),
            f_b: ratio_string(&max_zero_density(&l.tilde_b()).expect("two words")),
            f_prime_a: dens(&l.tilde_a_prime()),
            f_prime_b: dens(&l.tilde_b_prime()),
        }
    }
}
