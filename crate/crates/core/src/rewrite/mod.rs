//! Rewriting with monic relations: normal forms, reduction traces, compositions,
//! the Gröbner-Shirshov criterion and degree-bounded Shirshov completion.

mod complete;
mod compose;
mod reduce;

use thiserror::Error;

use crate::coeffs::{CentralPoly, Coeff, FieldDescriptor};
use crate::freealg::{monicize, AlgebraError, Alphabet, NcPoly, Word};

pub use complete::{complete, CompletionAction, CompletionLogEntry, CompletionOptions, CompletionResult, CompletionStatus};
pub use compose::{composition_element, find_compositions, is_gs_basis, is_gs_basis_up_to, Composition, CompositionKind, GsCertificate};
pub use reduce::{
    irreducible_words, normal_form, normal_form_with, trace_reduce, trace_reduce_with, ReductionStep,
    ReductionTrace, Strategy,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("relation `{0}` is zero")]
    ZeroRule(String),
    #[error("relation `{0}` has a constant leading term")]
    ConstantRule(String),
    #[error("leading coefficient of {element} is not invertible")]
    NonInvertibleLeading { element: String },
    #[error("the relations generate the unit ideal")]
    Inconsistent,
    #[error("degree bound {bound} is below the largest relation degree {needed}")]
    DegreeBoundTooSmall { bound: usize, needed: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A named monic relation `lead − (lead − poly)`, used as the rewrite rule
/// `lead(poly) → lead(poly) − poly`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule<C> {
    pub name: String,
    pub poly: NcPoly<C>,
}

impl<C: Coeff> Rule<C> {
    pub fn lead(&self) -> &Word {
        self.poly.leading_word().expect("rules are nonzero")
    }
}

/// An ordered list of monic rules over one alphabet and coefficient ring.
///
/// For the central ring, `ideal` holds the relations discovered among the central
/// variables; coefficients are reduced against it during rewriting.
#[derive(Clone, Debug)]
pub struct RewriteSystem<C: Coeff> {
    alphabet: Alphabet,
    field: FieldDescriptor,
    central_names: Vec<String>,
    rules: Vec<Rule<C>>,
    ideal: C::Ideal,
}

impl<C: Coeff> RewriteSystem<C> {
    /// Monicizes each relation; rejects zero, constant and non-monicizable relations.
    pub fn new(
        alphabet: Alphabet,
        field: FieldDescriptor,
        central_names: Vec<String>,
        relations: impl IntoIterator<Item = (String, NcPoly<C>)>,
    ) -> Result<Self, RewriteError> {
        let mut sys = RewriteSystem {
            alphabet,
            field,
            central_names,
            rules: Vec::new(),
            ideal: C::Ideal::default(),
        };
        for (name, poly) in relations {
            let rule = sys.make_rule(name, &poly)?;
            sys.rules.push(rule);
        }
        Ok(sys)
    }

    fn make_rule(&self, name: String, poly: &NcPoly<C>) -> Result<Rule<C>, RewriteError> {
        let Some(lead) = poly.leading_word() else {
            return Err(RewriteError::ZeroRule(name));
        };
        if lead.is_empty() {
            return Err(RewriteError::ConstantRule(name));
        }
        let poly = monicize(poly).map_err(|e| match e {
            AlgebraError::NonInvertibleLeading(_) => RewriteError::NonInvertibleLeading {
                element: self.render(poly),
            },
            other => other.into(),
        })?;
        Ok(Rule { name, poly })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn central_names(&self) -> &[String] {
        &self.central_names
    }

    pub fn rules(&self) -> &[Rule<C>] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<&Rule<C>> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn rule_index(&self, name: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.name == name)
    }

    pub fn ideal(&self) -> &C::Ideal {
        &self.ideal
    }

    /// Generators of the discovered relation ideal among central variables.
    pub fn central_relations(&self) -> Vec<CentralPoly> {
        C::ideal_generators(&self.ideal)
    }

    pub fn max_degree(&self) -> usize {
        self.rules.iter().map(|r| r.lead().len()).max().unwrap_or(0)
    }

    pub fn render(&self, f: &NcPoly<C>) -> String {
        f.render(&self.alphabet, &self.central_names)
    }

    pub fn render_word(&self, w: &Word) -> String {
        self.alphabet.render_word(w)
    }

    /// Rule polynomials sorted by leading word, names dropped; used to compare systems.
    pub fn canonical_rules(&self) -> Vec<NcPoly<C>> {
        let mut polys: Vec<NcPoly<C>> = self.rules.iter().map(|r| r.poly.clone()).collect();
        polys.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
        polys
    }

    /// Adds a central relation to the ideal and reduces every rule's coefficients.
    pub(crate) fn absorb_central(&mut self, rel: &C) -> Result<bool, RewriteError> {
        if !C::CENTRAL {
            return Err(RewriteError::Inconsistent);
        }
        let grew = C::absorb(&mut self.ideal, rel);
        if C::ideal_is_unit(&self.ideal) {
            return Err(RewriteError::Inconsistent);
        }
        if grew {
            for r in &mut self.rules {
                r.poly = r.poly.reduce_coeffs(&self.ideal);
            }
        }
        Ok(grew)
    }

    pub(crate) fn rules_mut(&mut self) -> &mut Vec<Rule<C>> {
        &mut self.rules
    }

    pub(crate) fn monic_rule(&self, name: String, poly: &NcPoly<C>) -> Result<Rule<C>, RewriteError> {
        self.make_rule(name, poly)
    }

    /// Seeds the central ideal (for systems built with known relations among the z's).
    pub fn with_central_relations(mut self, rels: &[C]) -> Result<Self, RewriteError> {
        for r in rels {
            self.absorb_central(r)?;
        }
        Ok(self)
    }
}
