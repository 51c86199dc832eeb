//! Exact coefficient arithmetic: base fields and the free commutative ring on
//! central variables.

mod central;
mod ratfun;
mod scalar;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use central::{CMonomial, CentralIdeal, CentralPoly};
pub use ratfun::{RatFn, UPoly};
pub use scalar::{field_ops, is_prime, FieldDescriptor, FieldOp, FieldOpResult, Scalar};

pub(crate) use scalar::is_identifier;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldDescriptor, FieldDescriptor),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter name `{0}`")]
    BadParameter(String),
    #[error("no value assigned to central variable #{0}")]
    MissingAssignment(u32),
}

/// A coefficient ring for noncommutative polynomials.
///
/// Implemented by [`Scalar`] (a field) and [`CentralPoly`] (the free commutative
/// ring on central variables, optionally taken modulo an ideal).
pub trait Coeff: Clone + PartialEq + Eq + Hash + Debug + Send + Sync {
    /// Relations the coefficients are reduced against; trivial for a field.
    type Ideal: Clone + Debug + Default + Send + Sync;
    /// True for the central-variable ring, where pure-coefficient relations can be
    /// recorded in the ideal; false for a field, where such a relation is fatal.
    const CENTRAL: bool;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    /// Multiplicative inverse when the element is a unit.
    fn unit_inverse(&self) -> Option<Self>;
    /// Canonical representative modulo the ideal.
    fn reduce(&self, ideal: &Self::Ideal) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    /// Adds a pure-coefficient relation to the ideal; returns whether it grew.
    fn absorb(ideal: &mut Self::Ideal, rel: &Self) -> bool;
    fn ideal_is_unit(ideal: &Self::Ideal) -> bool;
    fn ideal_generators(ideal: &Self::Ideal) -> Vec<CentralPoly>;
    fn looks_negative(&self) -> bool;
    /// Printable without surrounding parentheses when used as a prefix factor.
    fn is_atomic(&self) -> bool;
    fn render(&self, central_names: &[String]) -> String;
}

impl Coeff for Scalar {
    type Ideal = ();
    const CENTRAL: bool = false;

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn reduce(&self, _: &()) -> Self {
        self.clone()
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn absorb(_: &mut (), rel: &Self) -> bool {
        // a nonzero scalar relation makes the whole algebra trivial
        !rel.is_zero()
    }
    fn ideal_is_unit(_: &()) -> bool {
        false
    }
    fn ideal_generators(_: &()) -> Vec<CentralPoly> {
        Vec::new()
    }
    fn looks_negative(&self) -> bool {
        Scalar::looks_negative(self)
    }
    fn is_atomic(&self) -> bool {
        Scalar::is_atomic(self)
    }
    fn render(&self, _: &[String]) -> String {
        self.to_string()
    }
}

impl Coeff for CentralPoly {
    type Ideal = CentralIdeal;
    const CENTRAL: bool = true;

    fn is_zero(&self) -> bool {
        CentralPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(Scalar::is_one)
    }
    fn add(&self, other: &Self) -> Self {
        CentralPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CentralPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CentralPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        CentralPoly::neg(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        CentralPoly::constant(s)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.as_constant()?.inv().map(CentralPoly::constant)
    }
    fn reduce(&self, ideal: &CentralIdeal) -> Self {
        ideal.reduce(self)
    }
    fn scale(&self, s: &Scalar) -> Self {
        CentralPoly::scale(self, s)
    }
    fn absorb(ideal: &mut CentralIdeal, rel: &Self) -> bool {
        ideal.insert(rel.clone())
    }
    fn ideal_is_unit(ideal: &CentralIdeal) -> bool {
        ideal.is_unit()
    }
    fn ideal_generators(ideal: &CentralIdeal) -> Vec<CentralPoly> {
        ideal.generators().to_vec()
    }
    fn looks_negative(&self) -> bool {
        self.len() == 1 && self.leading().is_some_and(|(_, c)| c.looks_negative())
    }
    fn is_atomic(&self) -> bool {
        self.len() == 1 && self.leading().is_some_and(|(_, c)| c.is_atomic())
    }
    fn render(&self, central_names: &[String]) -> String {
        CentralPoly::render(self, central_names)
    }
}

#[cfg(test)]
mod props;
