use std::collections::BTreeSet;

use super::{Dictionary, Dim, Pattern, SymbolicError};

/// Length-`n` subwords of two-block concatenations `w1 w2` of a 1D dictionary.
pub fn concat_language<S: Clone + Eq + Ord>(
    dict: &Dictionary<S>,
    n: usize,
) -> Result<BTreeSet<Pattern<S>>, SymbolicError> {
    if dict.dim() != Dim::One {
        return Err(SymbolicError::DimensionMismatch);
    }
    Ok(concat_words(&dict.words(), n)?
        .into_iter()
        .map(Pattern::word)
        .collect())
}

/// Word-level version of [`concat_language`].
///
/// A window either sits inside one block or straddles the junction, and in
/// the second case it is any suffix of one block followed by any prefix of
/// another, so the two halves can be collected independently.
pub fn concat_words<S: Clone + Ord>(
    words: &[Vec<S>],
    n: usize,
) -> Result<BTreeSet<Vec<S>>, SymbolicError> {
    let size = check_window(words, n)?;
    let mut out = BTreeSet::new();
    if words.is_empty() {
        return Ok(out);
    }
    if n <= size {
        for w in words {
            for win in w.windows(n) {
                out.insert(win.to_vec());
            }
        }
    }
    for left in n.saturating_sub(size).max(1)..n.min(size + 1) {
        let right = n - left;
        let suffixes: BTreeSet<&[S]> = words.iter().map(|w| &w[size - left..]).collect();
        let prefixes: BTreeSet<&[S]> = words.iter().map(|w| &w[..right]).collect();
        for s in &suffixes {
            for p in &prefixes {
                let mut v = s.to_vec();
                v.extend_from_slice(p);
                out.insert(v);
            }
        }
    }
    Ok(out)
}

/// Reference implementation: scan every window of every one of the `|L|^2`
/// concatenations.
pub fn concat_language_brute<S: Clone + Eq + Ord>(
    dict: &Dictionary<S>,
    n: usize,
) -> Result<BTreeSet<Pattern<S>>, SymbolicError> {
    if dict.dim() != Dim::One {
        return Err(SymbolicError::DimensionMismatch);
    }
    let words = dict.words();
    check_window(&words, n)?;
    let mut out = BTreeSet::new();
    for w1 in &words {
        for w2 in &words {
            let joined: Vec<S> = w1.iter().chain(w2).cloned().collect();
            for i in 0..=joined.len() - n {
                out.insert(Pattern::word(joined[i..i + n].iter().cloned()));
            }
        }
    }
    Ok(out)
}

fn check_window<S>(words: &[Vec<S>], n: usize) -> Result<usize, SymbolicError> {
    let size = words.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(SymbolicError::ZeroLength);
    }
    if n > 2 * size {
        return Err(SymbolicError::WindowTooLong { size, n });
    }
    Ok(size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(set: &BTreeSet<Vec<char>>) -> Vec<String> {
        set.iter().map(|w| w.iter().collect()).collect()
    }

    fn dict(words: &[&str]) -> Vec<Vec<char>> {
        words.iter().map(|w| w.chars().collect()).collect()
    }

    #[test]
    fn level_zero_pairs() {
        let l = dict(&["01", "11", "02", "22"]);
        let got = strings(&concat_words(&l, 2).unwrap());
        assert_eq!(got, ["01", "02", "10", "11", "12", "20", "21", "22"]);
    }

    #[test]
    fn single_word_dictionary() {
        let got = strings(&concat_words(&dict(&["ab"]), 2).unwrap());
        assert_eq!(got, ["ab", "ba"]);
    }

    #[test]
    fn full_length_is_all_pairs() {
        let l = dict(&["011", "220"]);
        let got = strings(&concat_words(&l, 6).unwrap());
        assert_eq!(got, ["011011", "011220", "220011", "220220"]);
    }

    #[test]
    fn too_long_is_rejected() {
        assert!(matches!(
            concat_words(&dict(&["01"]), 5),
            Err(SymbolicError::WindowTooLong { size: 2, n: 5 })
        ));
    }

    #[test]
    fn matches_brute_force() {
        let words = ["0120", "1111", "2010"];
        let d = Dictionary::from_words(words.iter().map(|w| w.chars())).unwrap();
        for n in 1..=8 {
            assert_eq!(
                concat_language(&d, n).unwrap(),
                concat_language_brute(&d, n).unwrap(),
                "n = {n}"
            );
        }
    }
}
