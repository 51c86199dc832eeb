use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ratfun::{big, RatFn, UPoly};
use super::CoeffError;

/// The base field of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldDescriptor {
    Rationals,
    PrimeField { p: u64 },
    /// ℚ(param), one transcendental parameter.
    RationalFunctions { param: String },
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self, CoeffError> {
        if is_prime(p) {
            Ok(FieldDescriptor::PrimeField { p })
        } else {
            Err(CoeffError::NotPrime(p))
        }
    }

    pub fn rational_functions(param: &str) -> Result<Self, CoeffError> {
        if !is_identifier(param) {
            return Err(CoeffError::BadParameter(param.to_string()));
        }
        Ok(FieldDescriptor::RationalFunctions {
            param: param.to_string(),
        })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::PrimeField { p } => *p,
            _ => 0,
        }
    }

    pub fn param(&self) -> Option<&str> {
        match self {
            FieldDescriptor::RationalFunctions { param } => Some(param),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::PrimeField { p } => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: *p,
                }
            }
            FieldDescriptor::RationalFunctions { param } => Scalar::Function(RatFn::constant(
                Arc::from(param.as_str()),
                BigRational::from_integer(n.clone()),
            )),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes in the field.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, CoeffError> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        num.checked_div(&den)
    }

    /// The generic parameter `q` of a rational-function field.
    pub fn parameter(&self) -> Option<Scalar> {
        self.param()
            .map(|p| Scalar::Function(RatFn::param(Arc::from(p))))
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldDescriptor::Rationals, Scalar::Rational(_)) => true,
            (FieldDescriptor::PrimeField { p }, Scalar::Modular { modulus, .. }) => p == modulus,
            (FieldDescriptor::RationalFunctions { param }, Scalar::Function(f)) => {
                &**f.var() == param.as_str()
            }
            _ => false,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField { p } => write!(f, "GF({})", p),
            FieldDescriptor::RationalFunctions { param } => write!(f, "Q({})", param),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of one of the supported base fields, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// Least nonnegative residue modulo a prime.
    Modular { value: u64, modulus: u64 },
    Function(RatFn),
}

/// Which field-level operation [`field_ops`] should perform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldOpResult {
    Value(Scalar),
    Bool(bool),
}

/// Checked dispatch over the field operations; unary operations ignore `b`.
pub fn field_ops(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<FieldOpResult, CoeffError> {
    use FieldOpResult::*;
    Ok(match op {
        FieldOp::Add => Value(a.checked_add(b)?),
        FieldOp::Sub => Value(a.checked_sub(b)?),
        FieldOp::Mul => Value(a.checked_mul(b)?),
        FieldOp::Div => Value(a.checked_div(b)?),
        FieldOp::Neg => Value(-a),
        FieldOp::Inv => Value(a.inv().ok_or(CoeffError::DivisionByZero)?),
        FieldOp::Eq => {
            a.same_field(b)?;
            Bool(a == b)
        }
    })
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    // extended Euclid on signed values
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::Function(f) => f.is_one(),
        }
    }

    /// Negative for display purposes (never true for residues).
    pub fn looks_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
            Scalar::Function(f) => f.looks_negative(),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rationals,
            Scalar::Modular { modulus, .. } => FieldDescriptor::PrimeField { p: *modulus },
            Scalar::Function(f) => FieldDescriptor::RationalFunctions {
                param: f.var().to_string(),
            },
        }
    }

    pub fn same_field(&self, other: &Scalar) -> Result<(), CoeffError> {
        let ok = match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Modular { modulus: p, .. }, Scalar::Modular { modulus: m, .. }) => p == m,
            (Scalar::Function(f), Scalar::Function(g)) => f.var() == g.var(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(CoeffError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (Scalar::Function(a), Scalar::Function(b)) => Scalar::Function(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (Scalar::Function(a), Scalar::Function(b)) => Scalar::Function(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        self.same_field(other)?;
        let inv = other.inv().ok_or(CoeffError::DivisionByZero)?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) if !r.is_zero() => Some(Scalar::Rational(r.recip())),
            Scalar::Modular { value, modulus } if *value != 0 => Some(Scalar::Modular {
                value: mod_inverse(*value, *modulus)?,
                modulus: *modulus,
            }),
            Scalar::Function(f) => f.inv().map(Scalar::Function),
            _ => None,
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar, CoeffError> {
        let base = if e < 0 {
            self.inv().ok_or(CoeffError::DivisionByZero)?
        } else {
            self.clone()
        };
        let mut acc = self.one_like();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        Ok(acc)
    }

    /// The scalar as a rational number, if it is one (rationals, constant rational functions).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Function(f) => f.as_constant(),
            Scalar::Modular { .. } => None,
        }
    }

    /// Whether printing this scalar as a coefficient prefix needs no grouping.
    pub(crate) fn is_atomic(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer(),
            Scalar::Modular { .. } => true,
            Scalar::Function(f) => {
                f.denominator().is_one()
                    && f.numerator().coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
                    && f.numerator().leading().is_none_or(|c| c.is_integer())
            }
        }
    }

    pub fn rational_function(var: &str, num: &[i64], den: &[i64]) -> Option<Scalar> {
        let p = |cs: &[i64]| UPoly::from_coeffs(cs.iter().map(|&c| big(c)).collect());
        RatFn::new(Arc::from(var), p(num), p(den)).map(Scalar::Function)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", r),
            Scalar::Modular { value, .. } => write!(f, "{}", value),
            Scalar::Function(g) => write!(f, "{}", g),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Function(f) => Scalar::Function(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// The operator impls panic on mixed fields; every polynomial holds coefficients of a
// single field, so a mismatch there is a programming error. Use the `checked_*`
// methods at trust boundaries.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}
