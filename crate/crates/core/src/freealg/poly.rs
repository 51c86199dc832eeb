use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::coeffs::{Coeff, Scalar};

use super::{AlgebraError, Alphabet, Word};

/// A finite sum of words with nonzero coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by deg-lex order, so the leading word is
/// the last key and iteration via [`NcPoly::terms`] runs in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly<C> {
    terms: BTreeMap<Word, C>,
}

impl<C> Default for NcPoly<C> {
    fn default() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> NcPoly<C> {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn monomial(w: Word, c: C) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn constant(c: C) -> Self {
        NcPoly::monomial(Word::empty(), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Terms in descending deg-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading_word().map(Word::len)
    }

    /// Everything except the leading term.
    pub fn tail(&self) -> NcPoly<C> {
        let mut terms = self.terms.clone();
        terms.pop_last();
        NcPoly { terms }
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly<C>) -> NcPoly<C> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPoly<C> {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &NcPoly<C>) -> NcPoly<C> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &NcPoly<C>) -> NcPoly<C> {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, c: &C) -> NcPoly<C> {
        NcPoly::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a.mul(c))))
    }

    pub fn scale(&self, s: &Scalar) -> NcPoly<C> {
        NcPoly::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a.scale(s))))
    }

    /// `c · u · self · v`.
    pub fn wrap(&self, c: &C, u: &Word, v: &Word) -> NcPoly<C> {
        NcPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, a)| (w.wrap(u, v), c.mul(a))),
        )
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> NcPoly<C> {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// Coefficients reduced modulo an ideal of the coefficient ring.
    pub fn reduce_coeffs(&self, ideal: &C::Ideal) -> NcPoly<C> {
        self.map_coeffs(|c| c.reduce(ideal))
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&Word::empty())
    }

    pub fn is_valid_for(&self, alphabet: &Alphabet) -> bool {
        self.terms.keys().all(|w| w.is_valid_for(alphabet))
    }

    /// Text form: terms descending, `*` between factors, `^` for repeated letters.
    pub fn render(&self, alphabet: &Alphabet, central_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let negative = c.looks_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = if abs.is_atomic() {
                abs.render(central_names)
            } else {
                format!("({})", abs.render(central_names))
            };
            if w.is_empty() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&alphabet.render_word(w));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&alphabet.render_word(w));
            }
        }
        out
    }
}

/// Leading word and coefficient.
pub fn leading<C: Coeff>(f: &NcPoly<C>) -> Result<(Word, C), AlgebraError> {
    f.leading()
        .map(|(w, c)| (w.clone(), c.clone()))
        .ok_or(AlgebraError::ZeroPolynomial)
}

/// Divides by the leading coefficient, which must be a unit.
pub fn monicize<C: Coeff>(f: &NcPoly<C>) -> Result<NcPoly<C>, AlgebraError> {
    let (_, lc) = leading(f)?;
    if lc.is_one() {
        return Ok(f.clone());
    }
    let inv = lc
        .unit_inverse()
        .ok_or_else(|| AlgebraError::NonInvertibleLeading(format!("{:?}", lc)))?;
    Ok(f.scale_by(&inv))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NcOp {
    Add,
    Sub,
    Mul,
    ScalarMul(Scalar),
}

/// Checked arithmetic on field-coefficient polynomials over one alphabet.
pub fn nc_arith(
    alphabet: &Alphabet,
    f: &NcPoly<Scalar>,
    g: &NcPoly<Scalar>,
    op: &NcOp,
) -> Result<NcPoly<Scalar>, AlgebraError> {
    if !f.is_valid_for(alphabet) || !g.is_valid_for(alphabet) {
        return Err(AlgebraError::AlphabetMismatch);
    }
    let mut fields = f.terms.values().chain(g.terms.values()).map(Scalar::field);
    if let Some(first) = fields.next() {
        if let Some(other) = fields.find(|k| *k != first) {
            return Err(crate::coeffs::CoeffError::FieldMismatch(first, other).into());
        }
        if let NcOp::ScalarMul(s) = op {
            if !first.contains(s) {
                return Err(crate::coeffs::CoeffError::FieldMismatch(first, s.field()).into());
            }
        }
    }
    Ok(match op {
        NcOp::Add => f.add(g),
        NcOp::Sub => f.sub(g),
        NcOp::Mul => f.mul(g),
        NcOp::ScalarMul(s) => f.scale(s),
    })
}
