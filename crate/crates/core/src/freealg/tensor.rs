use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::coeffs::Scalar;

use super::{Alphabet, Word};

/// An element of H ⊗ H for the free algebra H, as a sparse map on word pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> Option<&Scalar> {
        self.terms.get(&(left.clone(), right.clone()))
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), -c);
        }
        out
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                out.add_term(a.concat(c), b.concat(d), x * y);
            }
        }
        out
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, ((l, r), c)) in self.terms().enumerate() {
            let negative = c.looks_negative();
            let abs = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{}*", abs));
            }
            out.push_str(&format!(
                "{} (x) {}",
                alphabet.render_word(l),
                alphabet.render_word(r)
            ));
        }
        out
    }
}

/// An element of H ⊗ H ⊗ H.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor3 {
    terms: BTreeMap<(Word, Word, Word), Scalar>,
}

impl Tensor3 {
    pub fn zero() -> Self {
        Tensor3::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Word, x: Scalar) {
        if x.is_zero() {
            return;
        }
        match self.terms.entry((a, b, c)) {
            Entry::Vacant(e) => {
                e.insert(x);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &x;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}
