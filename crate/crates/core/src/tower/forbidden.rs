use std::collections::HashSet;

use serde::Serialize;

use super::words::{Word, WordTower, ALPHABET};
use super::TowerError;
use crate::symbolic::{
    concat_language_brute, Alphabet, Dictionary, ForbiddenSet, ForbiddenSource, Pattern,
};

/// Work done while enumerating one length.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Cost {
    /// Candidate words tested.
    pub candidates: u64,
    /// Letter comparisons spent in subword tests.
    pub comparisons: u64,
}

impl Cost {
    pub fn total(&self) -> u64 {
        self.candidates + self.comparisons
    }
}

impl std::ops::Add for Cost {
    type Output = Cost;

    fn add(self, o: Cost) -> Cost {
        Cost {
            candidates: self.candidates + o.candidates,
            comparisons: self.comparisons + o.comparisons,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenLevel {
    pub n: usize,
    /// Smallest tower level with words of length at least `n`.
    pub k: u32,
    /// Length of the terminal and initial segments glued at the junction.
    pub segment: usize,
    /// Forbidden words of length `n` in counter order.
    pub words: Vec<Word>,
    pub cost: Cost,
}

/// The concatenations `w1 w2` (terminal segment of `w1`, initial segment of
/// `w2`, both in `L_k`) that every allowed length-`n` word must sit inside.
///
/// With `(p - 1) l_{k-1} < n <= p l_{k-1}` a segment spans `p + 1` blocks of
/// level `k - 1`, capped at the whole word. At level 0 the segments are the
/// words themselves.
pub fn junction_words(tower: &WordTower, n: usize) -> Result<(u32, usize, Vec<Word>), TowerError> {
    if n == 0 {
        return Err(TowerError::ZeroLength);
    }
    let k = tower.level_for_length(n).ok_or(TowerError::TooShallow {
        n,
        max_len: tower.levels.last().map_or(0, |l| l.len()),
    })?;
    let l = tower.level(k)?;
    let segment = if k == 0 {
        l.len()
    } else {
        let lp = tower.level(k - 1)?.len();
        let p = n.div_ceil(lp);
        ((p + 1).min(l.n as usize)) * lp
    };
    let lang = l.language();
    let mut out = Vec::with_capacity(16);
    for w1 in &lang {
        for w2 in &lang {
            let mut w = w1[w1.len() - segment..].to_vec();
            w.extend_from_slice(&w2[..segment]);
            out.push(w);
        }
    }
    Ok((k, segment, out))
}

fn contains_counted(hay: &[u8], needle: &[u8], comparisons: &mut u64) -> bool {
    if needle.len() > hay.len() {
        return false;
    }
    for start in 0..=hay.len() - needle.len() {
        let mut i = 0;
        loop {
            *comparisons += 1;
            if hay[start + i] != needle[i] {
                break;
            }
            i += 1;
            if i == needle.len() {
                return true;
            }
        }
    }
    false
}

/// Forbidden words of length `n`: every candidate of a base-3 counter that
/// is not a subword of any junction word.
pub fn forbidden_words(tower: &WordTower, n: usize) -> Result<ForbiddenLevel, TowerError> {
    let (k, segment, junctions) = junction_words(tower, n)?;
    let mut cost = Cost::default();
    let mut words = Vec::new();
    let mut digits = vec![0u8; n];
    loop {
        cost.candidates += 1;
        let allowed = junctions
            .iter()
            .any(|j| contains_counted(j, &digits, &mut cost.comparisons));
        if !allowed {
            words.push(digits.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(ForbiddenLevel {
                    n,
                    k,
                    segment,
                    words,
                    cost,
                });
            }
            i -= 1;
            digits[i] += 1;
            if (digits[i] as usize) < ALPHABET.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Lengths `1..=n_max` in increasing order.
pub fn forbidden_up_to(tower: &WordTower, n_max: usize) -> Result<Vec<ForbiddenLevel>, TowerError> {
    (1..=n_max).map(|n| forbidden_words(tower, n)).collect()
}

/// Instrumented cost of enumerating the forbidden words of length `n`.
pub fn enumeration_cost(tower: &WordTower, n: usize) -> Result<Cost, TowerError> {
    Ok(forbidden_words(tower, n)?.cost)
}

/// Brute force at a chosen level: words of length `n` that occur in none of
/// the `|L_k|^2` concatenations. Needs `n <= l_k`.
pub fn forbidden_oracle_at(tower: &WordTower, n: usize, k: u32) -> Result<Vec<Word>, TowerError> {
    let l = tower.level(k)?;
    if n == 0 {
        return Err(TowerError::ZeroLength);
    }
    if n > l.len() {
        return Err(TowerError::TooShallow {
            n,
            max_len: l.len(),
        });
    }
    let dict = Dictionary::from_words(l.language())?;
    let seen: HashSet<Word> = concat_language_brute(&dict, n)?
        .iter()
        .map(Pattern::symbols)
        .collect();
    let alphabet = Alphabet::new(ALPHABET).expect("three distinct letters");
    Ok(alphabet.words(n).filter(|w| !seen.contains(w)).collect())
}

/// Brute force at the smallest level long enough for `n`.
pub fn forbidden_oracle(tower: &WordTower, n: usize) -> Result<Vec<Word>, TowerError> {
    let k = tower.level_for_length(n).ok_or(TowerError::TooShallow {
        n,
        max_len: tower.levels.last().map_or(0, |l| l.len()),
    })?;
    forbidden_oracle_at(tower, n, k)
}

/// Keep only forbidden words with no forbidden proper subword.
///
/// A word containing a forbidden word is itself forbidden, so it is enough to
/// look at the two subwords of length `n - 1`.
pub fn minimal_forbidden(levels: &[ForbiddenLevel]) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = Vec::with_capacity(levels.len());
    let mut prev: HashSet<&[u8]> = HashSet::new();
    for lvl in levels {
        let keep = lvl
            .words
            .iter()
            .filter(|w| {
                w.len() == 1 || (!prev.contains(&w[..w.len() - 1]) && !prev.contains(&w[1..]))
            })
            .cloned()
            .collect();
        out.push(keep);
        prev = lvl.words.iter().map(Vec::as_slice).collect();
    }
    out
}

/// Forbidden-word generator backed by a tower, for effective subshift specs.
pub struct TowerSource {
    pub tower: WordTower,
    /// Emit only minimal forbidden words.
    pub minimal: bool,
}

impl ForbiddenSource<u8> for TowerSource {
    fn forbidden_up_to(&self, max_size: usize) -> Result<ForbiddenSet<u8>, String> {
        let levels = forbidden_up_to(&self.tower, max_size).map_err(|e| e.to_string())?;
        let words: Vec<Vec<Word>> = if self.minimal {
            minimal_forbidden(&levels)
        } else {
            levels.into_iter().map(|l| l.words).collect()
        };
        Ok(ForbiddenSet::words(words.into_iter().flatten()))
    }
}
