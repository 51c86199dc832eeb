//! The free monoid on a finite alphabet, its deg-lex order, and noncommutative
//! polynomials over a coefficient ring.

mod poly;
mod tensor;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{is_identifier, CoeffError};

pub use poly::{leading, monicize, nc_arith, NcOp, NcPoly};
pub use tensor::{Tensor3, TensorElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("leading coefficient {0} is not invertible")]
    NonInvertibleLeading(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("invalid generator name `{0}`")]
    BadGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Generator names in precedence order: earlier names are larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(AlgebraError::BadGenerator(n.to_string()));
            }
            if out.iter().any(|m| m == n) {
                return Err(AlgebraError::DuplicateGenerator(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Alphabet { names: out })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn letter(&self, name: &str) -> Option<Word> {
        self.index(name).map(|i| Word::new(vec![i]))
    }

    /// Every word of exactly `len` letters, in increasing order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let n = self.names.len() as u32;
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..n).map(move |i| {
                        let mut l = w.letters().to_vec();
                        l.push(i);
                        Word::new(l)
                    })
                })
                .collect();
        }
        out.sort();
        out
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = self.name(letters[i]);
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

/// A word of the free monoid, stored as alphabet indices.
///
/// `Ord` is deg-lex: longer words are larger, equal lengths compare left to right
/// with the smaller index being the larger letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a · self · b`.
    pub fn wrap(&self, a: &Word, b: &Word) -> Word {
        let mut v = Vec::with_capacity(a.0.len() + self.0.len() + b.0.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&b.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Starting positions of `pat` inside `self`, leftmost first.
    pub fn occurrences(&self, pat: &Word) -> Vec<usize> {
        if pat.0.len() > self.0.len() {
            return Vec::new();
        }
        (0..=self.0.len() - pat.0.len())
            .filter(|&i| self.0[i..i + pat.0.len()] == pat.0[..])
            .collect()
    }

    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - pat.0.len()).find(|&i| self.0[i..i + pat.0.len()] == pat.0[..])
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }

    pub fn is_valid_for(&self, alphabet: &Alphabet) -> bool {
        self.0.iter().all(|&i| (i as usize) < alphabet.len())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{}", i)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Deg-lex comparison of two words over `alphabet`.
pub fn deglex_cmp(u: &Word, v: &Word, alphabet: &Alphabet) -> Ordering {
    debug_assert!(u.is_valid_for(alphabet) && v.is_valid_for(alphabet));
    u.cmp(v)
}
