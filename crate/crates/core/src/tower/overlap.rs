use std::collections::BTreeSet;

use serde::Serialize;

use super::words::{word_string, Word, WordTower};
use super::TowerError;

/// Lengths `0 < s < min(|u|, |v|)` where the last `s` letters of `u` equal the first `s` letters of `v`.
pub fn overlaps(u: &[u8], v: &[u8]) -> BTreeSet<usize> {
    (1..u.len().min(v.len()))
        .filter(|&s| u[u.len() - s..] == v[..s])
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    /// `a` to `d`, matching the order of [`verify_overlap_lemmas`].
    pub label: char,
    pub statement: String,
    pub holds: bool,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapReport {
    pub k: u32,
    pub checks: Vec<LemmaCheck>,
}

impl OverlapReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, label: char) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.label == label)
    }
}

fn lemma(label: char, statement: String, counterexamples: Vec<String>) -> LemmaCheck {
    LemmaCheck {
        label,
        statement,
        holds: counterexamples.is_empty(),
        counterexamples,
    }
}

fn names(k: u32) -> (&'static str, &'static str) {
    // (the word made of a marker run, the pure power) at this level's parity
    if k.is_multiple_of(2) {
        ("a", "b")
    } else {
        ("b", "a")
    }
}

/// Check the overlap structure of level `k`:
///
/// * `a`: no word of the A side overlaps a word of the B side, plain or primed.
/// * `b`: the marker word (`a_k` at even `k`, `b_k` at odd `k`) only
///   self-overlaps at shifts of at least `(N_k - 1) l_{k-1}`.
/// * `c`: the power word self-overlaps on whole blocks of level `k - 1`, or
///   with a remainder of at most `l_{k-2}`.
/// * `d`: the two primed marker words never self-overlap, `x'` then `x''`
///   overlap only inside the marker run, and `x''` then `x'` overlap only
///   as level `k - 1` words do.
pub fn verify_overlap_lemmas(tower: &WordTower, k: u32) -> Result<OverlapReport, TowerError> {
    let l = tower.level(k)?;
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    let pairs = |xs: &[Word], ys: &[Word], bad: &mut Vec<String>| {
        for x in xs {
            for y in ys {
                for (u, v) in [(x, y), (y, x)] {
                    for s in overlaps(u, v) {
                        bad.push(format!(
                            "{} / {} overlap by {s}",
                            word_string(u),
                            word_string(v)
                        ));
                    }
                }
            }
        }
    };
    pairs(&l.tilde_a(), &l.tilde_b(), &mut bad);
    pairs(&l.tilde_a_prime(), &l.tilde_b_prime(), &mut bad);
    checks.push(lemma(
        'a',
        format!("A and B words of level {k} do not overlap"),
        bad,
    ));

    if k == 0 {
        return Ok(OverlapReport { k, checks });
    }
    let prev = tower.level(k - 1)?;
    let (lp, n) = (prev.len(), l.n as usize);
    let (mk, pw) = names(k);
    let (marker, power) = if k.is_multiple_of(2) {
        (&l.a, &l.b)
    } else {
        (&l.b, &l.a)
    };

    let min_shift = n.saturating_sub(1) * lp;
    let bad = overlaps(marker, marker)
        .into_iter()
        .filter(|&s| l.len() - s < min_shift)
        .map(|s| {
            format!(
                "{mk}_{k} self-overlap of length {s} (shift {})",
                l.len() - s
            )
        })
        .collect();
    checks.push(lemma(
        'b',
        format!("{mk}_{k} self-overlaps shift by at least {min_shift}"),
        bad,
    ));

    let tail = if k >= 2 { tower.level(k - 2)?.len() } else { 0 };
    let bad = overlaps(power, power)
        .into_iter()
        .filter(|&s| s % lp != 0 && s % lp > tail)
        .map(|s| format!("{pw}_{k} self-overlap of length {s}"))
        .collect();
    checks.push(lemma(
        'c',
        format!("{pw}_{k} self-overlaps are multiples of {lp} plus at most {tail}"),
        bad,
    ));

    let (first, second) = match k % 2 {
        0 => (&l.a_prime[0], &l.a_prime[1]),
        _ => (&l.b_prime[0], &l.b_prime[1]),
    };
    let base = if k.is_multiple_of(2) { &prev.a } else { &prev.b };
    let gap = (l.n_prime as usize).saturating_sub(1) * lp;
    let base_self = overlaps(base, base);
    let mut bad = Vec::new();
    for (w, tag) in [(first, "'"), (second, "''")] {
        bad.extend(
            overlaps(w, w)
                .into_iter()
                .map(|s| format!("{mk}{tag} self-overlap of length {s}")),
        );
    }
    bad.extend(
        overlaps(first, second)
            .into_iter()
            .filter(|&s| s > gap)
            .map(|s| format!("{mk}' then {mk}'' overlap of length {s} beyond the marker run")),
    );
    bad.extend(
        overlaps(second, first)
            .into_iter()
            .filter(|&s| s != lp && !base_self.contains(&s))
            .map(|s| {
                format!(
                    "{mk}'' then {mk}' overlap of length {s} unlike {mk}_{}",
                    k - 1
                )
            }),
    );
    checks.push(lemma(
        'd',
        format!("primed words {mk}', {mk}'' at level {k}"),
        bad,
    ));

    Ok(OverlapReport { k, checks })
}

#[cfg(test)]
mod tests {
    use super::super::words::{build_tower, BuildLimits, TowerParams};
    use super::*;

    #[test]
    fn overlap_examples() {
        let t = build_tower(
            &TowerParams::toy(vec![4, 4], vec![4, 4]).unwrap(),
            BuildLimits::default(),
        )
        .unwrap();
        assert!(overlaps(&[0, 1], &[0, 1]).is_empty());
        let a1 = &t.level(1).unwrap().a;
        assert_eq!(overlaps(a1, a1), BTreeSet::from([2, 4, 6]));
        for l in &t.levels {
            assert!(overlaps(&l.a, &l.b).is_empty());
            assert!(overlaps(&l.b, &l.a).is_empty());
        }
    }

    #[test]
    fn lemma_lines_on_toy_tower() {
        let t = build_tower(
            &TowerParams::toy(vec![4, 4, 4], vec![4, 4, 4]).unwrap(),
            BuildLimits::default(),
        )
        .unwrap();
        for k in 0..=3 {
            let r = verify_overlap_lemmas(&t, k).unwrap();
            for label in ['a', 'b', 'c'] {
                if let Some(c) = r.check(label) {
                    assert!(c.holds, "k={k} {label}: {:?}", c.counterexamples);
                }
            }
        }
        // the doubly primed marker word ends and starts with a marker letter
        let d = verify_overlap_lemmas(&t, 2).unwrap();
        let d = d.check('d').unwrap();
        assert!(!d.holds);
        assert_eq!(d.counterexamples, ["a'' self-overlap of length 1"]);
    }
}
