//! Univariate polynomials and rational functions over the rationals.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over ℚ, coefficients stored low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(BigRational::one())
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
            })
            .collect();
        UPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let factor = &rem[top] * &lc_inv;
            if !factor.is_zero() {
                let shift = top - dd;
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] -= &factor * c;
                }
                quot[shift] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => UPoly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub(crate) fn fmt_with(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}*", abs)?;
                    }
                    if k == 1 {
                        write!(f, "{}", var)?;
                    } else {
                        write!(f, "{}^{}", var, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reduced ratio of univariate rational polynomials in one named parameter.
///
/// Numerator and denominator are coprime and the denominator is monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    var: Arc<str>,
    num: UPoly,
    den: UPoly,
}

impl RatFn {
    pub fn constant(var: Arc<str>, c: BigRational) -> Self {
        RatFn {
            var,
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    /// The parameter itself.
    pub fn param(var: Arc<str>) -> Self {
        RatFn {
            var,
            num: UPoly::monomial(1),
            den: UPoly::one(),
        }
    }

    /// Builds `num / den` in lowest terms; `None` when `den` is zero.
    pub fn new(var: Arc<str>, num: UPoly, den: UPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFn {
                var,
                num,
                den: UPoly::one(),
            });
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lc = den.leading().expect("nonzero denominator").recip();
        Some(RatFn {
            var,
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn var(&self) -> &Arc<str> {
        &self.var
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Sign of the numerator's leading coefficient, used only for display.
    pub fn looks_negative(&self) -> bool {
        self.num.leading().is_some_and(Signed::is_negative)
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.den == other.den {
            return RatFn::new(self.var.clone(), self.num.add(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFn::new(self.var.clone(), num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            var: self.var.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        if self.den.is_one() && other.den.is_one() {
            return RatFn {
                var: self.var.clone(),
                num: self.num.mul(&other.num),
                den: UPoly::one(),
            };
        }
        RatFn::new(
            self.var.clone(),
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn inv(&self) -> Option<RatFn> {
        RatFn::new(self.var.clone(), self.den.clone(), self.num.clone())
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Parenthesize anything that is not a single integer-coefficient term so the
        // output reparses unambiguously as a coefficient prefix.
        let simple = |p: &UPoly| {
            p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
                && p.leading().is_none_or(|c| c.is_integer())
        };
        let part = |f: &mut fmt::Formatter<'_>, p: &UPoly| -> fmt::Result {
            if simple(p) {
                p.fmt_with(&self.var, f)
            } else {
                write!(f, "(")?;
                p.fmt_with(&self.var, f)?;
                write!(f, ")")
            }
        };
        if self.den.is_one() {
            return self.num.fmt_with(&self.var, f);
        }
        part(f, &self.num)?;
        write!(f, "/")?;
        part(f, &self.den)
    }
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<str> {
        Arc::from("q")
    }

    fn poly(cs: &[i64]) -> UPoly {
        UPoly::from_coeffs(cs.iter().map(|&c| big(c)).collect())
    }

    #[test]
    fn gcd_cancellation() {
        // (q^2 - 1)/(q - 1) = q + 1
        let f = RatFn::new(q(), poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(f, RatFn::new(q(), poly(&[1, 1]), UPoly::one()).unwrap());
        assert!(f.denominator().is_one());
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFn::new(q(), poly(&[1]), poly(&[0, 2])).unwrap();
        assert_eq!(f.denominator(), &poly(&[0, 1]));
        assert_eq!(f.numerator(), &UPoly::constant(BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFn::new(q(), poly(&[1]), UPoly::zero()).is_none());
        assert!(RatFn::constant(q(), big(0)).inv().is_none());
    }

    #[test]
    fn display_forms() {
        let f = RatFn::new(q(), poly(&[-1, 0, 0, 0, 1]), poly(&[0, 0, 1])).unwrap();
        assert_eq!(f.to_string(), "(q^4 - 1)/q^2");
        assert_eq!(RatFn::param(q()).to_string(), "q");
        assert_eq!(RatFn::constant(q(), big(-3)).to_string(), "-3");
    }
}
