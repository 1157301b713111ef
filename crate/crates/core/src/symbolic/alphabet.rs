use std::collections::HashMap;
use std::hash::Hash;

use super::SymbolicError;

/// Finite ordered alphabet. The order drives every enumeration in the crate.
#[derive(Debug, Clone)]
pub struct Alphabet<S> {
    symbols: Vec<S>,
    index: HashMap<S, usize>,
}

impl<S: PartialEq> PartialEq for Alphabet<S> {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl<S: Eq> Eq for Alphabet<S> {}

impl<S: Clone + Eq + Hash> Alphabet<S> {
    pub fn new(symbols: impl IntoIterator<Item = S>) -> Result<Self, SymbolicError> {
        let symbols: Vec<S> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(SymbolicError::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(SymbolicError::DuplicateSymbol);
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub fn index_of(&self, s: &S) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &S) -> bool {
        self.index.contains_key(s)
    }

    /// All words of length `n` in lexicographic order induced by the alphabet order.
    pub fn words(&self, n: usize) -> Words<'_, S> {
        Words {
            alphabet: self,
            digits: vec![0; n],
            done: false,
        }
    }
}

impl Alphabet<char> {
    pub fn from_chars(s: &str) -> Result<Self, SymbolicError> {
        Alphabet::new(s.chars())
    }
}

/// Base-|A| counter over words of a fixed length.
pub struct Words<'a, S> {
    alphabet: &'a Alphabet<S>,
    digits: Vec<usize>,
    done: bool,
}

impl<S: Clone> Iterator for Words<'_, S> {
    type Item = Vec<S>;

    fn next(&mut self) -> Option<Vec<S>> {
        if self.done {
            return None;
        }
        let word = self
            .digits
            .iter()
            .map(|&d| self.alphabet.symbols[d].clone())
            .collect();
        let base = self.alphabet.symbols.len();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < base {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicates() {
        assert!(matches!(
            Alphabet::<char>::new([]),
            Err(SymbolicError::EmptyAlphabet)
        ));
        assert!(matches!(
            Alphabet::from_chars("aba"),
            Err(SymbolicError::DuplicateSymbol)
        ));
    }

    #[test]
    fn words_follow_alphabet_order() {
        let a = Alphabet::from_chars("ba").unwrap();
        let all: Vec<String> = a.words(2).map(|w| w.into_iter().collect()).collect();
        assert_eq!(all, ["bb", "ba", "ab", "aa"]);
        assert_eq!(a.words(0).count(), 1);
    }
}
