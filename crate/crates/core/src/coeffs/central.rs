//! Commutative polynomials in the central variables, and ideals of them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{CoeffError, Scalar};

/// A commutative monomial: `(variable, exponent)` pairs sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CMonomial(Vec<(u32, u32)>);

impl CMonomial {
    pub fn one() -> Self {
        CMonomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        CMonomial(vec![(v, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in exps {
            *map.entry(v).or_default() += e;
        }
        CMonomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &CMonomial) -> CMonomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    out.push((va, ea));
                    i += 1;
                }
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (_, Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        CMonomial(out)
    }

    fn exponent(&self, v: u32) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &CMonomial) -> Option<CMonomial> {
        let mut out = Vec::new();
        for &(v, e) in &other.0 {
            if self.exponent(v) < e {
                return None;
            }
        }
        for &(v, e) in &self.0 {
            let rest = e - other.exponent(v);
            if rest > 0 {
                out.push((v, rest));
            }
        }
        Some(CMonomial(out))
    }

    pub fn lcm(&self, other: &CMonomial) -> CMonomial {
        let mut map: BTreeMap<u32, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            let slot = map.entry(v).or_default();
            *slot = (*slot).max(e);
        }
        CMonomial(map.into_iter().collect())
    }

    fn render(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|&(v, e)| {
                let name = names
                    .get(v as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("z{}", v));
                if e == 1 {
                    name
                } else {
                    format!("{}^{}", name, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Graded lexicographic order with variable 0 largest.
impl Ord for CMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va != vb {
                            // the side carrying the smaller variable index has the larger exponent there
                            return if va < vb { Ordering::Greater } else { Ordering::Less };
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for CMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the free commutative ring on the central variables.
///
/// Variables are indices into a name table held by the surrounding context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CentralPoly {
    terms: BTreeMap<CMonomial, Scalar>,
}

impl CentralPoly {
    pub fn zero() -> Self {
        CentralPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        CentralPoly::term(CMonomial::one(), c)
    }

    pub fn var(v: u32, one: Scalar) -> Self {
        CentralPoly::term(CMonomial::var(v), one)
    }

    pub fn term(m: CMonomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CentralPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CMonomial, Scalar)>) -> Self {
        let mut out = CentralPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&CMonomial, &Scalar)> {
        self.terms.iter()
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

    /// The scalar value when the polynomial is a constant (zero counts only if a field is known).
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.len() {
            1 => self.terms.get(&CMonomial::one()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&CMonomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|&(v, _)| v))
            .max()
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|&(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: CMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &CentralPoly) -> CentralPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> CentralPoly {
        CentralPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &CentralPoly) -> CentralPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CentralPoly) -> CentralPoly {
        let mut out = CentralPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CentralPoly {
        if c.is_zero() {
            return CentralPoly::zero();
        }
        CentralPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &CMonomial, c: &Scalar) -> CentralPoly {
        if c.is_zero() {
            return CentralPoly::zero();
        }
        CentralPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> CentralPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => CentralPoly::zero(),
        }
    }

    /// Substitutes a scalar for every variable and folds the result.
    ///
    /// `zero` supplies the field when the polynomial itself is zero.
    pub fn evaluate(
        &self,
        assignment: &HashMap<u32, Scalar>,
        zero: &Scalar,
    ) -> Result<Scalar, CoeffError> {
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.exponents() {
                let val = assignment
                    .get(&v)
                    .ok_or(CoeffError::MissingAssignment(v))?;
                t = t.checked_mul(&val.pow(e as i64)?)?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Substitutes polynomials for variables.
    pub fn substitute(&self, images: &HashMap<u32, CentralPoly>) -> CentralPoly {
        let mut out = CentralPoly::zero();
        for (m, c) in &self.terms {
            let mut t = CentralPoly::constant(c.clone());
            for &(v, e) in m.exponents() {
                let img = images
                    .get(&v)
                    .cloned()
                    .unwrap_or_else(|| CentralPoly::var(v, c.one_like()));
                for _ in 0..e {
                    t = t.mul(&img);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Renames variable indices.
    pub fn reindex(&self, map: impl Fn(u32) -> u32) -> CentralPoly {
        CentralPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                CMonomial::from_exponents(m.exponents().iter().map(|&(v, e)| (map(v), e))),
                c.clone(),
            )
        }))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.looks_negative();
            let abs = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    if abs.is_atomic() {
                        out.push_str(&format!("{}*", abs));
                    } else {
                        out.push_str(&format!("({})*", abs));
                    }
                }
                out.push_str(&m.render(names));
            }
        }
        out
    }
}

impl fmt::Display for CentralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

/// An ideal of the central ring, kept as a reduced Gröbner basis under graded lex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CentralIdeal {
    basis: Vec<CentralPoly>,
}

impl CentralIdeal {
    pub fn new() -> Self {
        CentralIdeal::default()
    }

    pub fn from_generators(gens: impl IntoIterator<Item = CentralPoly>) -> Self {
        let mut ideal = CentralIdeal::new();
        for g in gens {
            ideal.insert(g);
        }
        ideal
    }

    /// The reduced Gröbner basis, monic, sorted by increasing leading monomial.
    pub fn generators(&self) -> &[CentralPoly] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis
            .iter()
            .any(|g| g.leading().is_some_and(|(m, _)| m.is_one()))
    }

    pub fn contains(&self, f: &CentralPoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// Full reduction modulo the basis.
    pub fn reduce(&self, f: &CentralPoly) -> CentralPoly {
        if self.basis.is_empty() || f.is_zero() {
            return f.clone();
        }
        let mut work = f.clone();
        let mut rem = CentralPoly::zero();
        while let Some((m, c)) = work.terms.pop_last() {
            let hit = self.basis.iter().find_map(|g| {
                let (lm, _) = g.leading()?;
                m.div(lm).map(|q| (g, q))
            });
            match hit {
                Some((g, q)) => {
                    // g is monic: subtract c*q*g, whose leading term cancels (m, c)
                    for (gm, gc) in g.terms.iter().rev().skip(1) {
                        work.add_term(gm.mul(&q), -&(&c * gc));
                    }
                }
                None => {
                    rem.terms.insert(m, c);
                }
            }
        }
        rem
    }

    /// Adds a generator and restores a reduced Gröbner basis (Buchberger).
    ///
    /// Returns whether the ideal grew.
    pub fn insert(&mut self, f: CentralPoly) -> bool {
        let r = self.reduce(&f);
        if r.is_zero() {
            return false;
        }
        let mut basis = self.basis.clone();
        basis.push(r.monic());
        let mut pairs: Vec<(usize, usize)> = (0..basis.len() - 1)
            .map(|i| (i, basis.len() - 1))
            .collect();
        while let Some((i, j)) = pairs.pop() {
            let (mi, ci) = basis[i].leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let (mj, cj) = basis[j].leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let l = mi.lcm(&mj);
            // coprime leading monomials give a trivial S-polynomial
            if l.degree() == mi.degree() + mj.degree() {
                continue;
            }
            let si = basis[i].mul_term(&l.div(&mi).unwrap(), &ci.inv().unwrap());
            let sj = basis[j].mul_term(&l.div(&mj).unwrap(), &cj.inv().unwrap());
            let s = si.sub(&sj);
            let tmp = CentralIdeal {
                basis: basis.clone(),
            };
            let r = tmp.reduce(&s);
            if !r.is_zero() {
                basis.push(r.monic());
                let n = basis.len() - 1;
                pairs.extend((0..n).map(|k| (k, n)));
            }
        }
        self.basis = interreduce(basis);
        true
    }
}

fn interreduce(mut basis: Vec<CentralPoly>) -> Vec<CentralPoly> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let mut kept: Vec<CentralPoly> = Vec::new();
    for g in basis {
        let lm = g.leading().unwrap().0.clone();
        if kept
            .iter()
            .any(|k| lm.div(k.leading().unwrap().0).is_some())
        {
            continue;
        }
        kept.push(g);
    }
    let mut out: Vec<CentralPoly> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others = CentralIdeal {
            basis: kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect(),
        };
        let (lm, lc) = kept[i].leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let tail = CentralPoly {
            terms: kept[i]
                .terms
                .iter()
                .filter(|(m, _)| **m != lm)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        };
        out.push(CentralPoly::term(lm, lc).add(&others.reduce(&tail)).monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::FieldDescriptor;

    fn z(v: u32) -> CentralPoly {
        CentralPoly::var(v, FieldDescriptor::Rationals.one())
    }

    fn c(n: i64) -> CentralPoly {
        CentralPoly::constant(FieldDescriptor::Rationals.from_int(n))
    }

    #[test]
    fn commutative_expansion() {
        let f = z(0).add(&z(1)).mul(&z(0));
        let expected = CentralPoly::from_terms([
            (CMonomial::from_exponents([(0, 2)]), FieldDescriptor::Rationals.one()),
            (CMonomial::from_exponents([(0, 1), (1, 1)]), FieldDescriptor::Rationals.one()),
        ]);
        assert_eq!(f, expected);
        assert_eq!(z(1).mul(&z(0)), z(0).mul(&z(1)));
    }

    #[test]
    fn evaluate_at_zero() {
        let f = z(0).mul(&z(0)).add(&c(3));
        let q = FieldDescriptor::Rationals;
        let omega = HashMap::from([(0, q.zero())]);
        assert_eq!(f.evaluate(&omega, &q.zero()).unwrap(), q.from_int(3));
    }

    #[test]
    fn evaluate_missing_variable() {
        let q = FieldDescriptor::Rationals;
        assert_eq!(
            z(2).evaluate(&HashMap::new(), &q.zero()),
            Err(CoeffError::MissingAssignment(2))
        );
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let f = z(0).sub(&z(0));
        assert!(f.is_zero());
        assert_eq!(f.len(), 0);
    }

    #[test]
    fn ideal_reduction_and_buchberger() {
        // (z0^2 - z1, z0*z1 - 1) contains z1^2 - z0
        let f = z(0).mul(&z(0)).sub(&z(1));
        let g = z(0).mul(&z(1)).sub(&c(1));
        let ideal = CentralIdeal::from_generators([f, g]);
        assert!(ideal.contains(&z(1).mul(&z(1)).sub(&z(0))));
        assert!(!ideal.contains(&z(0).sub(&c(1))));
        assert!(!ideal.is_unit());
    }

    #[test]
    fn linear_generator_normalized() {
        let ideal = CentralIdeal::from_generators([z(2).scale(&FieldDescriptor::Rationals.from_int(2))]);
        assert_eq!(ideal.generators(), &[z(2)]);
        assert!(ideal.reduce(&z(2).mul(&z(0))).is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let a = CMonomial::from_exponents([(0, 1)]);
        let b = CMonomial::from_exponents([(1, 1)]);
        let ab = CMonomial::from_exponents([(0, 1), (1, 1)]);
        let bb = CMonomial::from_exponents([(1, 2)]);
        assert!(a > b);
        assert!(ab > bb);
        assert!(bb > a);
    }
}
