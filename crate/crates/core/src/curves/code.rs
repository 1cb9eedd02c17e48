use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CurveError;

/// Double-occurrence word of an open plane curve, labels `1..=n` in
/// first-appearance order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct OpenGaussCode {
    word: Vec<u32>,
}

impl OpenGaussCode {
    pub fn trivial() -> Self {
        Self { word: Vec::new() }
    }

    /// Validates the double-occurrence property and normalizes labels.
    pub fn new<T: Eq + std::hash::Hash + Clone + fmt::Debug>(
        word: &[T],
    ) -> Result<Self, CurveError> {
        let mut counts: HashMap<&T, usize> = HashMap::new();
        for l in word {
            *counts.entry(l).or_default() += 1;
        }
        // report the first offending label in word order
        for l in word {
            let k = counts[l];
            if k != 2 {
                return Err(CurveError::NotDoubleOccurrence {
                    label: format!("{l:?}").trim_matches('"').to_string(),
                    count: k,
                });
            }
        }
        let mut rename: HashMap<&T, u32> = HashMap::new();
        let word = word
            .iter()
            .map(|l| {
                let next = rename.len() as u32 + 1;
                *rename.entry(l).or_insert(next)
            })
            .collect();
        Ok(Self { word })
    }

    /// Whitespace-separated labels; empty input is the trivial curve.
    pub fn parse(text: &str) -> Result<Self, CurveError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        Self::new(&tokens)
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// c(γ).
    pub fn crossing_count(&self) -> usize {
        self.word.len() / 2
    }

    /// Word positions `(first, second)` of each label, indexed by `label - 1`.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let n = self.crossing_count();
        let mut pos = vec![(usize::MAX, usize::MAX); n];
        for (i, &l) in self.word.iter().enumerate() {
            let slot = &mut pos[l as usize - 1];
            if slot.0 == usize::MAX {
                slot.0 = i;
            } else {
                slot.1 = i;
            }
        }
        pos
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let rev: Vec<u32> = self.word.iter().rev().copied().collect();
        Self::new(&rev).expect("reversal keeps double occurrence")
    }

    /// Lexicographically least of the word and its reversal.
    pub fn canonical(&self) -> Self {
        let rev = self.reversed();
        if rev.word < self.word {
            rev
        } else {
            self.clone()
        }
    }

    /// Concatenation with the labels of `other` shifted past ours.
    pub fn concat(&self, other: &Self) -> Self {
        let shift = self.crossing_count() as u32;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|l| l + shift));
        Self { word }
    }

    /// Splits the word at every cut point whose two sides share no label.
    pub fn decompose(&self) -> CurveDecomposition {
        let mut cuts = Vec::new();
        let pos = self.positions();
        // a cut after index k is valid iff no label has first <= k < second
        let mut open = 0i64;
        let mut delta = vec![0i64; self.word.len() + 1];
        for &(a, b) in &pos {
            delta[a] += 1;
            delta[b] -= 1;
        }
        for (k, d) in delta
            .iter()
            .enumerate()
            .take(self.word.len().saturating_sub(1))
        {
            open += d;
            if open == 0 {
                cuts.push(k + 1);
            }
        }
        if cuts.is_empty() {
            return CurveDecomposition {
                factors: vec![self.clone()],
            };
        }
        let mut factors = Vec::with_capacity(cuts.len() + 1);
        let mut start = 0;
        for end in cuts.into_iter().chain(std::iter::once(self.word.len())) {
            factors.push(Self::new(&self.word[start..end]).expect("block is closed under labels"));
            start = end;
        }
        CurveDecomposition { factors }
    }

    pub fn is_prime(&self) -> bool {
        self.decompose().is_prime()
    }
}

impl TryFrom<Vec<u32>> for OpenGaussCode {
    type Error = CurveError;
    fn try_from(word: Vec<u32>) -> Result<Self, CurveError> {
        Self::new(&word)
    }
}

impl From<OpenGaussCode> for Vec<u32> {
    fn from(code: OpenGaussCode) -> Vec<u32> {
        code.word
    }
}

/// Space-separated labels, e.g. `1 2 1 2`; the trivial curve renders as `-`.
impl fmt::Display for OpenGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("-");
        }
        for (i, l) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Factors of a curve under connected sum, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDecomposition {
    pub factors: Vec<OpenGaussCode>,
}

impl CurveDecomposition {
    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1
    }

    /// Relabeled concatenation of the factors.
    pub fn recompose(&self) -> OpenGaussCode {
        self.factors
            .iter()
            .fold(OpenGaussCode::trivial(), |acc, f| acc.concat(f))
    }
}
