//! Builders for the standard presentations: Askey-Wilson (two forms), the
//! anticommutator spin algebra, Bannai-Ito, enveloping algebras of Lie algebras and
//! restricted enveloping algebras. Also Lie structure validation and the cocycle
//! ideal of the versal central extension.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::centrify::{CentrifyError, Presentation};
use crate::coeffs::{CMonomial, CentralPoly, FieldDescriptor, Scalar};
use crate::freealg::{Alphabet, NcPoly, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("bad parameter: {0}")]
    Param(String),
    #[error("preset `{preset}` needs field {needed}, got {got}")]
    Field {
        preset: String,
        needed: String,
        got: String,
    },
    #[error("invalid Lie data: {0}")]
    Lie(String),
    #[error(transparent)]
    Centrify(#[from] CentrifyError),
}

/// The p-map on basis vectors of a restricted Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PStructure {
    pub p: u64,
    /// `X_i^[p]` as coordinate vectors in the basis.
    pub images: Vec<Vec<Scalar>>,
}

/// A finite-dimensional Lie algebra by structure constants, optionally restricted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    pub name: String,
    field: FieldDescriptor,
    basis: Vec<String>,
    /// `[X_i, X_j]` for `i < j`; missing pairs bracket to zero.
    brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
    pstructure: Option<PStructure>,
    chi: Option<Vec<Scalar>>,
}

impl LieData {
    pub fn new<S: AsRef<str>>(name: &str, field: FieldDescriptor, basis: &[S]) -> Result<Self, PresetError> {
        let basis: Vec<String> = basis.iter().map(|s| s.as_ref().to_string()).collect();
        Alphabet::new(&basis).map_err(|e| PresetError::Lie(e.to_string()))?;
        Ok(LieData {
            name: name.to_string(),
            field,
            basis,
            brackets: BTreeMap::new(),
            pstructure: None,
            chi: None,
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<(), PresetError> {
        if v.len() != self.dim() {
            return Err(PresetError::Lie(format!("vector of length {} in dimension {}", v.len(), self.dim())));
        }
        if v.iter().any(|c| !self.field.contains(c)) {
            return Err(PresetError::Lie(format!("coefficient outside {}", self.field)));
        }
        Ok(())
    }

    /// Sets `[X_i, X_j] = v`; the pair may be given in either order.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Scalar>) -> Result<(), PresetError> {
        self.check_vector(&v)?;
        if i == j {
            if v.iter().all(Scalar::is_zero) {
                return Ok(());
            }
            return Err(PresetError::Lie(format!("[{0},{0}] must vanish", self.basis[i])));
        }
        let (key, v) = if i < j {
            ((i, j), v)
        } else {
            ((j, i), v.iter().map(|c| -c).collect())
        };
        if v.iter().all(Scalar::is_zero) {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, v);
        }
        Ok(())
    }

    pub fn set_pstructure(&mut self, p: u64, images: Vec<Vec<Scalar>>) -> Result<(), PresetError> {
        if self.field.characteristic() != p {
            return Err(PresetError::Field {
                preset: self.name.clone(),
                needed: format!("GF({})", p),
                got: self.field.to_string(),
            });
        }
        if images.len() != self.dim() {
            return Err(PresetError::Lie("one p-power image per basis vector is required".into()));
        }
        for v in &images {
            self.check_vector(v)?;
        }
        self.pstructure = Some(PStructure { p, images });
        Ok(())
    }

    pub fn set_chi(&mut self, chi: Vec<Scalar>) -> Result<(), PresetError> {
        self.check_vector(&chi)?;
        self.chi = Some(chi);
        Ok(())
    }

    pub fn pstructure(&self) -> Option<&PStructure> {
        self.pstructure.as_ref()
    }

    pub fn chi(&self) -> Option<&[Scalar]> {
        self.chi.as_deref()
    }

    /// `[X_i, X_j]` for any `i, j`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.zero_vector(),
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| self.zero_vector()),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|c| -c).collect())
                .unwrap_or_else(|| self.zero_vector()),
        }
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// Stored brackets `[X_i, X_j]` with `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Scalar>)> {
        self.brackets.iter()
    }

    /// Linear combination of basis names, as a degree-one polynomial.
    pub fn vector_poly(&self, v: &[Scalar]) -> NcPoly<Scalar> {
        NcPoly::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (Word::new(vec![i as u32]), c.clone())),
        )
    }

    pub fn render_vector(&self, v: &[Scalar]) -> String {
        let alphabet = Alphabet::new(&self.basis).expect("validated basis");
        self.vector_poly(v).render(&alphabet, &[])
    }
}

fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiFailure {
    pub triple: [String; 3],
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictednessFailure {
    pub x: String,
    pub y: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub jacobi: Vec<JacobiFailure>,
    pub restrictedness: Vec<RestrictednessFailure>,
}

impl LieReport {
    pub fn passed(&self) -> bool {
        self.jacobi.is_empty() && self.restrictedness.is_empty()
    }
}

/// Checks Jacobi on every basis triple and, for restricted data,
/// `[x^[p], y] = (ad x)^p (y)` on every basis pair.
pub fn lie_validate(d: &LieData) -> LieReport {
    let n = d.dim();
    let mut jacobi = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (d.basis_vector(i), d.basis_vector(j), d.basis_vector(k));
                let s = add_vec(
                    &add_vec(&d.bracket(&d.bracket(&x, &y), &z), &d.bracket(&d.bracket(&y, &z), &x)),
                    &d.bracket(&d.bracket(&z, &x), &y),
                );
                if s.iter().any(|c| !c.is_zero()) {
                    jacobi.push(JacobiFailure {
                        triple: [d.basis[i].clone(), d.basis[j].clone(), d.basis[k].clone()],
                        value: d.render_vector(&s),
                    });
                }
            }
        }
    }
    let mut restrictedness = Vec::new();
    if let Some(ps) = &d.pstructure {
        for i in 0..n {
            for j in 0..n {
                let lhs = d.bracket(&ps.images[i], &d.basis_vector(j));
                let x = d.basis_vector(i);
                let mut rhs = d.basis_vector(j);
                for _ in 0..ps.p {
                    rhs = d.bracket(&x, &rhs);
                }
                if lhs != rhs {
                    restrictedness.push(RestrictednessFailure {
                        x: d.basis[i].clone(),
                        y: d.basis[j].clone(),
                        lhs: d.render_vector(&lhs),
                        rhs: d.render_vector(&rhs),
                    });
                }
            }
        }
    }
    LieReport { jacobi, restrictedness }
}

/// Name of the enveloping relation for the pair `(i, j)`, e.g. `R_ef`.
pub fn uea_relation_name(d: &LieData, i: usize, j: usize) -> String {
    format!("R_{}{}", d.basis[i], d.basis[j])
}

/// Central variable names `z_ij` for `i < j`, in the order used by [`cocycle_ideal`].
pub fn cocycle_variable_names(d: &LieData) -> Vec<String> {
    let n = d.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(format!("z_{}{}", d.basis[i], d.basis[j]));
        }
    }
    out
}

fn pair_index(n: usize, i: usize, j: usize) -> u32 {
    // position of (i, j), i < j, in row-major order over the strict upper triangle
    (i * n - i * (i + 1) / 2 + (j - i - 1)) as u32
}

/// `λ(u, v) = Σ_{a<b} (u_a v_b − u_b v_a) z_ab`.
fn lambda(d: &LieData, u: &[Scalar], v: &[Scalar]) -> CentralPoly {
    let n = d.dim();
    let mut out = CentralPoly::zero();
    for a in 0..n {
        for b in a + 1..n {
            let c = &(&u[a] * &v[b]) - &(&u[b] * &v[a]);
            if !c.is_zero() {
                out = out.add(&CentralPoly::term(CMonomial::var(pair_index(n, a, b)), c));
            }
        }
    }
    out
}

/// The 2-cocycle conditions on an antisymmetric form `λ(X_i, X_j) = z_ij`:
/// `λ([X_i,X_j],X_k) + λ([X_j,X_k],X_i) + λ([X_k,X_i],X_j)` for every `i < j < k`,
/// zero forms omitted.
pub fn cocycle_ideal(d: &LieData) -> Vec<CentralPoly> {
    let n = d.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (d.basis_vector(i), d.basis_vector(j), d.basis_vector(k));
                let form = lambda(d, &d.bracket(&x, &y), &z)
                    .add(&lambda(d, &d.bracket(&y, &z), &x))
                    .add(&lambda(d, &d.bracket(&z, &x), &y));
                if !form.is_zero() {
                    out.push(form);
                }
            }
        }
    }
    out
}

struct Builder {
    field: FieldDescriptor,
    alphabet: Alphabet,
}

impl Builder {
    fn new(field: FieldDescriptor, names: &[&str]) -> Self {
        Builder {
            field,
            alphabet: Alphabet::new(names).expect("preset alphabet"),
        }
    }

    fn word(&self, letters: &str) -> Word {
        Word::new(
            letters
                .chars()
                .map(|c| self.alphabet.index(&c.to_string()).expect("preset letter"))
                .collect(),
        )
    }

    /// Terms given as `(coefficient, word)`, word letters as single characters.
    fn poly(&self, terms: &[(Scalar, &str)]) -> NcPoly<Scalar> {
        let mut f = NcPoly::zero();
        for (c, w) in terms {
            f.add_term(self.word(w), c.clone());
        }
        f
    }

    fn finish(
        self,
        name: &str,
        relations: Vec<(&str, NcPoly<Scalar>)>,
        central_all: bool,
    ) -> Result<Presentation, PresetError> {
        let names: Vec<String> = if central_all {
            relations.iter().map(|(n, _)| n.to_string()).collect()
        } else {
            Vec::new()
        };
        Ok(Presentation::new(
            name,
            self.field,
            self.alphabet,
            relations.into_iter().map(|(n, r)| (n.to_string(), r)).collect(),
            names,
        )?)
    }
}

fn q_field(preset: &str, field: &FieldDescriptor) -> Result<Scalar, PresetError> {
    field.parameter().ok_or_else(|| PresetError::Field {
        preset: preset.to_string(),
        needed: "a rational function field Q(q)".into(),
        got: field.to_string(),
    })
}

fn check_params(preset: &str, field: &FieldDescriptor, params: &[&Scalar]) -> Result<(), PresetError> {
    for p in params {
        if !field.contains(p) {
            return Err(PresetError::Param(format!("{} parameter {} is not in {}", preset, p, field)));
        }
    }
    Ok(())
}

/// The five structure constants `(b, c0, c1, d0, d1)` of the first Askey-Wilson form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aw1Params {
    pub b: Scalar,
    pub c0: Scalar,
    pub c1: Scalar,
    pub d0: Scalar,
    pub d1: Scalar,
}

/// Askey-Wilson algebra in generators `X > Y > Z` over `Q(q)`:
/// `R_X = qYZ − q⁻¹ZY − bY − c0 X − d0`, `R_Y = qZX − q⁻¹XZ − bX − c1 Y − d1`,
/// `R_Z = qXY − q⁻¹YX − Z`.
pub fn aw1(field: &FieldDescriptor, s: &Aw1Params) -> Result<Presentation, PresetError> {
    let q = q_field("aw1", field)?;
    check_params("aw1", field, &[&s.b, &s.c0, &s.c1, &s.d0, &s.d1])?;
    let qi = q.inv().expect("q is invertible");
    let one = field.one();
    let b = Builder::new(field.clone(), &["X", "Y", "Z"]);
    let rx = b.poly(&[
        (q.clone(), "YZ"),
        (-&qi, "ZY"),
        (-&s.b, "Y"),
        (-&s.c0, "X"),
        (-&s.d0, ""),
    ]);
    let ry = b.poly(&[
        (q.clone(), "ZX"),
        (-&qi, "XZ"),
        (-&s.b, "X"),
        (-&s.c1, "Y"),
        (-&s.d1, ""),
    ]);
    let rz = b.poly(&[(q, "XY"), (-&qi, "YX"), (-&one, "Z")]);
    b.finish("aw1", vec![("R_X", rx), ("R_Y", ry), ("R_Z", rz)], true)
}

/// Cyclic Askey-Wilson form in `A > B > C` over `Q(q)`:
/// `R_A = A + (qBC − q⁻¹CB)/(q² − q⁻²) − a/(q + q⁻¹)` and cyclically.
pub fn aw2(field: &FieldDescriptor, a: &Scalar, bb: &Scalar, c: &Scalar) -> Result<Presentation, PresetError> {
    let q = q_field("aw2", field)?;
    check_params("aw2", field, &[a, bb, c])?;
    let qi = q.inv().expect("q is invertible");
    let one = field.one();
    let skew = (&(&q * &q) - &(&qi * &qi)).inv().expect("q^2 - q^-2 is nonzero");
    let shift = (&q + &qi).inv().expect("q + q^-1 is nonzero");
    let hi = &q * &skew;
    let lo = -&(&qi * &skew);
    let b = Builder::new(field.clone(), &["A", "B", "C"]);
    let rel = |gen: &str, fwd: &str, bwd: &str, k: &Scalar| {
        b.poly(&[
            (one.clone(), gen),
            (hi.clone(), fwd),
            (lo.clone(), bwd),
            (-&(k * &shift), ""),
        ])
    };
    let ra = rel("A", "BC", "CB", a);
    let rb = rel("B", "CA", "AC", bb);
    let rc = rel("C", "AB", "BA", c);
    b.finish("aw2", vec![("R_A", ra), ("R_B", rb), ("R_C", rc)], true)
}

/// Anticommutator spin algebra: `R_X = YZ + ZY − X` and cyclically, `X > Y > Z`.
pub fn anticommutator_spin(field: &FieldDescriptor) -> Result<Presentation, PresetError> {
    let one = field.one();
    let m = -&one;
    let b = Builder::new(field.clone(), &["X", "Y", "Z"]);
    let rx = b.poly(&[(one.clone(), "YZ"), (one.clone(), "ZY"), (m.clone(), "X")]);
    let ry = b.poly(&[(one.clone(), "XZ"), (one.clone(), "ZX"), (m.clone(), "Y")]);
    let rz = b.poly(&[(one.clone(), "XY"), (one.clone(), "YX"), (m, "Z")]);
    b.finish("as", vec![("R_X", rx), ("R_Y", ry), ("R_Z", rz)], true)
}

/// Bannai-Ito algebra `BI^ω`: the spin relations shifted by `ω = (ω1, ω2, ω3)`.
pub fn bannai_ito(field: &FieldDescriptor, omega: &[Scalar; 3]) -> Result<Presentation, PresetError> {
    check_params("bi", field, &omega.iter().collect::<Vec<_>>())?;
    let spin = anticommutator_spin(field)?;
    let relations = spin
        .relations()
        .iter()
        .zip(omega)
        .map(|((n, r), w)| {
            let mut r = r.clone();
            r.add_term(Word::empty(), -w);
            (n.clone(), r)
        })
        .collect();
    Ok(Presentation::new("bi", field.clone(), spin.alphabet().clone(), relations, Vec::new())?)
}

fn lie_alphabet(d: &LieData) -> Alphabet {
    Alphabet::new(d.basis()).expect("validated basis")
}

fn uea_relations(d: &LieData) -> Vec<(String, NcPoly<Scalar>)> {
    let n = d.dim();
    let one = d.field().one();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = NcPoly::monomial(Word::new(vec![i as u32, j as u32]), one.clone());
            r.add_term(Word::new(vec![j as u32, i as u32]), -&one);
            r = r.sub(&d.vector_poly(&d.basis_bracket(i, j)));
            out.push((uea_relation_name(d, i, j), r));
        }
    }
    out
}

fn require_valid(d: &LieData) -> Result<(), PresetError> {
    let report = lie_validate(d);
    if let Some(f) = report.jacobi.first() {
        return Err(PresetError::Lie(format!(
            "Jacobi fails on ({}, {}, {}): {}",
            f.triple[0], f.triple[1], f.triple[2], f.value
        )));
    }
    if let Some(f) = report.restrictedness.first() {
        return Err(PresetError::Lie(format!(
            "restrictedness fails on ({}, {}): {} vs {}",
            f.x, f.y, f.lhs, f.rhs
        )));
    }
    Ok(())
}

/// Enveloping algebra: `R_ij = X_i X_j − X_j X_i − [X_i, X_j]` for `i < j`,
/// basis order giving precedence. All relations are designated central.
pub fn uea(d: &LieData) -> Result<Presentation, PresetError> {
    require_valid(d)?;
    let relations = uea_relations(d);
    let central = relations.iter().map(|(n, _)| n.clone()).collect();
    Ok(Presentation::new(
        format!("uea-{}", d.name),
        d.field().clone(),
        lie_alphabet(d),
        relations,
        central,
    )?)
}

/// Restricted enveloping algebra: the enveloping relations followed by
/// `R_i = X_i^p − X_i^[p] − χ(X_i)^p`; the latter form the central subset.
pub fn ruea(d: &LieData) -> Result<Presentation, PresetError> {
    require_valid(d)?;
    let ps = d
        .pstructure()
        .ok_or_else(|| PresetError::Lie("restricted preset needs a p-structure".into()))?;
    let zero = d.zero_vector();
    let chi = d.chi().map(|c| c.to_vec()).unwrap_or(zero);
    let mut relations = uea_relations(d);
    let mut central = Vec::new();
    for (i, chi_i) in chi.iter().enumerate() {
        let mut r = NcPoly::monomial(Word::new(vec![i as u32; ps.p as usize]), d.field().one());
        r = r.sub(&d.vector_poly(&ps.images[i]));
        let c = chi_i.pow(ps.p as i64).expect("nonnegative power");
        r.add_term(Word::empty(), -&c);
        let name = format!("R_{}", d.basis()[i]);
        central.push(name.clone());
        relations.push((name, r));
    }
    Ok(Presentation::new(
        format!("ruea-{}", d.name),
        d.field().clone(),
        lie_alphabet(d),
        relations,
        central,
    )?)
}

fn vec_of(field: &FieldDescriptor, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_int(x)).collect()
}

/// `sl2` in the basis `e, f, h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
pub fn sl2(field: &FieldDescriptor) -> LieData {
    let mut d = LieData::new("sl2", field.clone(), &["e", "f", "h"]).expect("basis");
    d.set_bracket(0, 1, vec_of(field, &[0, 0, 1])).expect("sl2");
    d.set_bracket(2, 0, vec_of(field, &[2, 0, 0])).expect("sl2");
    d.set_bracket(2, 1, vec_of(field, &[0, -2, 0])).expect("sl2");
    d
}

/// `[x,y] = y`, `[x,z] = z`, `[y,z] = 0`.
pub fn solvable3(field: &FieldDescriptor) -> LieData {
    let mut d = LieData::new("solvable", field.clone(), &["x", "y", "z"]).expect("basis");
    d.set_bracket(0, 1, vec_of(field, &[0, 1, 0])).expect("solvable");
    d.set_bracket(0, 2, vec_of(field, &[0, 0, 1])).expect("solvable");
    d
}

/// Three-dimensional abelian Lie algebra on `x, y, z`.
pub fn abelian3(field: &FieldDescriptor) -> LieData {
    LieData::new("abelian", field.clone(), &["x", "y", "z"]).expect("basis")
}

/// `sl2` over GF(3) with `e^[3] = 0`, `f^[3] = 0`, `h^[3] = h` and `χ = 0`.
pub fn restricted_sl2() -> LieData {
    let field = FieldDescriptor::prime(3).expect("3 is prime");
    let mut d = sl2(&field);
    d.name = "sl2".into();
    d.set_pstructure(3, vec![vec_of(&field, &[0, 0, 0]), vec_of(&field, &[0, 0, 0]), vec_of(&field, &[0, 0, 1])])
        .expect("p-structure");
    d.set_chi(vec_of(&field, &[0, 0, 0])).expect("chi");
    d
}

/// Names accepted by [`build_named`].
pub const PRESET_NAMES: &[&str] = &[
    "as",
    "aw1",
    "aw2",
    "bi",
    "uea-sl2",
    "uea-solvable",
    "uea-abelian",
    "ruea-sl2",
];

/// The field a named preset is built over unless overridden.
pub fn default_field(name: &str) -> FieldDescriptor {
    match name {
        "aw1" | "aw2" => FieldDescriptor::rational_functions("q").expect("q"),
        "ruea-sl2" => FieldDescriptor::prime(3).expect("3 is prime"),
        _ => FieldDescriptor::Rationals,
    }
}

/// Builds a preset by name. Parameters default to zero; `field` overrides the
/// preset's default field where that makes sense.
pub fn build_named(
    name: &str,
    params: &HashMap<String, Scalar>,
    field: Option<&FieldDescriptor>,
) -> Result<Presentation, PresetError> {
    let field = field.cloned().unwrap_or_else(|| default_field(name));
    let allowed: &[&str] = match name {
        "aw1" => &["b", "c0", "c1", "d0", "d1"],
        "aw2" => &["a", "b", "c"],
        "bi" => &["omega1", "omega2", "omega3"],
        _ => &[],
    };
    for k in params.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(PresetError::Param(format!("preset `{}` has no parameter `{}`", name, k)));
        }
    }
    let get = |k: &str| params.get(k).cloned().unwrap_or_else(|| field.zero());
    match name {
        "as" => anticommutator_spin(&field),
        "aw1" => aw1(
            &field,
            &Aw1Params {
                b: get("b"),
                c0: get("c0"),
                c1: get("c1"),
                d0: get("d0"),
                d1: get("d1"),
            },
        ),
        "aw2" => aw2(&field, &get("a"), &get("b"), &get("c")),
        "bi" => bannai_ito(&field, &[get("omega1"), get("omega2"), get("omega3")]),
        "uea-sl2" => uea(&sl2(&field)),
        "uea-solvable" => uea(&solvable3(&field)),
        "uea-abelian" => uea(&abelian3(&field)),
        "ruea-sl2" => {
            if field.characteristic() != 3 {
                return Err(PresetError::Field {
                    preset: name.into(),
                    needed: "GF(3)".into(),
                    got: field.to_string(),
                });
            }
            ruea(&restricted_sl2())
        }
        _ => Err(PresetError::UnknownPreset(name.to_string())),
    }
}

/// Lie data behind a named enveloping preset, if any.
pub fn named_lie_data(name: &str, field: Option<&FieldDescriptor>) -> Option<LieData> {
    let q = FieldDescriptor::Rationals;
    let f = field.unwrap_or(&q);
    match name {
        "uea-sl2" => Some(sl2(f)),
        "uea-solvable" => Some(solvable3(f)),
        "uea-abelian" => Some(abelian3(f)),
        "ruea-sl2" => Some(restricted_sl2()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(p: &Presentation) -> Vec<String> {
        p.relations().iter().map(|(_, r)| p.render_relation(r)).collect()
    }

    #[test]
    fn spin_relations() {
        let p = anticommutator_spin(&FieldDescriptor::Rationals).unwrap();
        assert_eq!(render(&p), ["Y*Z + Z*Y - X", "X*Z + Z*X - Y", "X*Y + Y*X - Z"]);
        assert_eq!(p.central().len(), 3);
    }

    #[test]
    fn sl2_enveloping_relations() {
        let p = uea(&sl2(&FieldDescriptor::Rationals)).unwrap();
        assert_eq!(render(&p), ["e*f - f*e - h", "e*h - h*e + 2*e", "f*h - h*f - 2*f"]);
        assert_eq!(p.relation_names(), ["R_ef", "R_eh", "R_fh"]);
    }

    #[test]
    fn aw2_skew_coefficient() {
        let f = FieldDescriptor::rational_functions("q").unwrap();
        let z = f.zero();
        let p = aw2(&f, &z, &z, &z).unwrap();
        let q = f.parameter().unwrap();
        let expected = (&(&q * &q) - &(&q * &q).inv().unwrap()).inv().unwrap();
        let r = p.relation("R_A").unwrap();
        let bc = Word::new(vec![1, 2]);
        assert_eq!(r.coeff(&bc).unwrap(), &(&q * &expected));
        assert_eq!(r.constant_term(), None);
    }

    #[test]
    fn validation() {
        let q = FieldDescriptor::Rationals;
        assert!(lie_validate(&sl2(&q)).passed());
        assert!(lie_validate(&restricted_sl2()).passed());

        let mut bad = LieData::new("bad", q.clone(), &["x", "y", "z"]).unwrap();
        bad.set_bracket(0, 1, vec_of(&q, &[0, 0, 1])).unwrap();
        bad.set_bracket(1, 2, vec_of(&q, &[1, 0, 0])).unwrap();
        bad.set_bracket(2, 0, vec_of(&q, &[1, 0, 0])).unwrap();
        let report = lie_validate(&bad);
        assert_eq!(report.jacobi.len(), 1);
        assert_eq!(report.jacobi[0].triple, ["x", "y", "z"]);
        assert!(uea(&bad).is_err());
    }

    #[test]
    fn wrong_p_map_is_reported() {
        let field = FieldDescriptor::prime(3).unwrap();
        let mut d = sl2(&field);
        d.set_pstructure(3, vec![vec_of(&field, &[0, 0, 0]); 3]).unwrap();
        assert!(!lie_validate(&d).restrictedness.is_empty());
    }

    #[test]
    fn cocycles() {
        let q = FieldDescriptor::Rationals;
        assert!(cocycle_ideal(&sl2(&q)).is_empty());
        assert!(cocycle_ideal(&abelian3(&q)).is_empty());
        let sol = solvable3(&q);
        let ideal = cocycle_ideal(&sol);
        let names = cocycle_variable_names(&sol);
        assert_eq!(names, ["z_xy", "z_xz", "z_yz"]);
        assert_eq!(ideal.len(), 1);
        assert_eq!(ideal[0].render(&names), "2*z_yz");
    }

    #[test]
    fn restricted_relations() {
        let p = ruea(&restricted_sl2()).unwrap();
        assert_eq!(p.central(), ["R_e", "R_f", "R_h"]);
        assert_eq!(p.render_relation(p.relation("R_h").unwrap()), "h^3 + 2*h");
    }

    #[test]
    fn named_presets_build_twice_identically() {
        for name in PRESET_NAMES {
            let a = build_named(name, &HashMap::new(), None).unwrap();
            let b = build_named(name, &HashMap::new(), None).unwrap();
            assert_eq!(a, b);
        }
        assert!(build_named("nope", &HashMap::new(), None).is_err());
        assert!(build_named("aw2", &HashMap::new(), Some(&FieldDescriptor::Rationals)).is_err());
    }
}
