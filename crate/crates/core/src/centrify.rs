//! Centrification of presentations, the presentation over the central subalgebra,
//! obstacle elements and flatness certificates.
//!
//! For a presentation `K<X_i | R_j>` and a subset `J0` of relations, the partial
//! centrification replaces each `R_j` (`j ∈ J0`) by the commutators `[X_i, R_j]`.
//! The same algebra is presented over the commutative ring `Z = K[z_j]` by the
//! relations `R_j − z_j`. Rewriting works with monic rules, so the central image of
//! a relation with leading coefficient `λ` is `z_j / λ`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{CentralPoly, CoeffError, FieldDescriptor, Scalar};
use crate::freealg::{leading, Alphabet, NcPoly, Word};
use crate::rewrite::{
    complete, composition_element, find_compositions, is_gs_basis, trace_reduce, trace_reduce_with,
    CompletionLogEntry, CompletionOptions, CompletionStatus, Composition, GsCertificate, ReductionTrace,
    RewriteError, RewriteSystem, Strategy,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentrifyError {
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("duplicate relation name `{0}`")]
    DuplicateRelation(String),
    #[error("relation `{0}` is zero")]
    ZeroRelation(String),
    #[error("relation `{0}` uses letters outside the alphabet or coefficients outside the field")]
    ForeignRelation(String),
    #[error("central variable name `{0}` clashes with an existing symbol")]
    NameClash(String),
    #[error("the base presentation is not a Gröbner-Shirshov basis: {composition} leaves {remainder}")]
    BaseNotGs { composition: String, remainder: String },
    #[error("no value assigned to `{0}`")]
    MissingAssignment(String),
    #[error("the assignment does not annihilate the central relation {0}")]
    InconsistentSpecialization(String),
    #[error("the obstacle identity failed to verify for {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Generators, named relations over the base field, and a designated central subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    field: FieldDescriptor,
    alphabet: Alphabet,
    relations: Vec<(String, NcPoly<Scalar>)>,
    central: Vec<String>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        field: FieldDescriptor,
        alphabet: Alphabet,
        relations: Vec<(String, NcPoly<Scalar>)>,
        central: Vec<String>,
    ) -> Result<Self, CentrifyError> {
        for (i, (n, r)) in relations.iter().enumerate() {
            if relations[..i].iter().any(|(m, _)| m == n) {
                return Err(CentrifyError::DuplicateRelation(n.clone()));
            }
            if r.is_zero() {
                return Err(CentrifyError::ZeroRelation(n.clone()));
            }
            if !r.is_valid_for(&alphabet) || r.terms().any(|(_, c)| !field.contains(c)) {
                return Err(CentrifyError::ForeignRelation(n.clone()));
            }
        }
        let mut p = Presentation {
            name: name.into(),
            field,
            alphabet,
            relations,
            central: Vec::new(),
        };
        p.central = p.resolve_subset(&central)?;
        Ok(p)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[(String, NcPoly<Scalar>)] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&NcPoly<Scalar>> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    /// The designated central subset, in relation order.
    pub fn central(&self) -> &[String] {
        &self.central
    }

    pub fn relation_names(&self) -> Vec<String> {
        self.relations.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Validates a subset of relation names and returns it in relation order.
    pub fn resolve_subset(&self, names: &[String]) -> Result<Vec<String>, CentrifyError> {
        for n in names {
            if self.relation(n).is_none() {
                return Err(CentrifyError::UnknownRelation(n.clone()));
            }
        }
        Ok(self
            .relations
            .iter()
            .filter(|(n, _)| names.contains(n))
            .map(|(n, _)| n.clone())
            .collect())
    }

    pub fn with_central(mut self, names: &[String]) -> Result<Self, CentrifyError> {
        self.central = self.resolve_subset(names)?;
        Ok(self)
    }

    /// Monic rewrite system on all relations, in relation order.
    pub fn rewrite_system(&self) -> Result<RewriteSystem<Scalar>, RewriteError> {
        RewriteSystem::new(
            self.alphabet.clone(),
            self.field.clone(),
            Vec::new(),
            self.relations.iter().cloned(),
        )
    }

    pub fn render_relation(&self, r: &NcPoly<Scalar>) -> String {
        r.render(&self.alphabet, &[])
    }

    /// Relations sorted by name with each polynomial in canonical sparse form.
    pub fn canonical_relations(&self) -> Vec<(String, NcPoly<Scalar>)> {
        let mut rels = self.relations.clone();
        rels.sort_by(|a, b| a.0.cmp(&b.0));
        rels
    }
}

/// The partial centrification: `[X_i, R_j]` for `j ∈ J0`, the other relations unchanged.
///
/// Commutators are monicized; those that vanish identically are dropped.
pub fn centrify(p: &Presentation, j0: &[String]) -> Result<Presentation, CentrifyError> {
    let j0 = p.resolve_subset(j0)?;
    let mut relations = Vec::new();
    for (name, r) in p.relations() {
        if !j0.contains(name) {
            continue;
        }
        for (i, gen) in p.alphabet().names().iter().enumerate() {
            let x = NcPoly::monomial(Word::new(vec![i as u32]), p.field().one());
            let comm = x.mul(r).sub(&r.mul(&x));
            if comm.is_zero() {
                continue;
            }
            let comm = crate::freealg::monicize(&comm).expect("field coefficients");
            relations.push((format!("comm({},{})", gen, name), comm));
        }
    }
    for (name, r) in p.relations() {
        if !j0.contains(name) {
            relations.push((name.clone(), r.clone()));
        }
    }
    Presentation::new(
        format!("{}_c", p.name),
        p.field().clone(),
        p.alphabet().clone(),
        relations,
        Vec::new(),
    )
}

/// Name of the central variable attached to a relation: `R_X` gives `z_X`.
pub fn central_variable_name(relation: &str) -> String {
    let stem = relation.strip_prefix("R_").unwrap_or(relation);
    let cleaned: String = stem
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    format!("z_{}", cleaned.trim_matches('_'))
}

/// The algebra over `Z = K[z_j : j ∈ J0]` with relations `R_j − z_j` (`j ∈ J0`) and
/// `R_j` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPresentation {
    base: Presentation,
    j0: Vec<String>,
    central_names: Vec<String>,
    relations: Vec<(String, NcPoly<CentralPoly>)>,
    ideal: Vec<CentralPoly>,
}

pub fn z_presentation(p: &Presentation, j0: &[String]) -> Result<ZPresentation, CentrifyError> {
    let j0 = p.resolve_subset(j0)?;
    let central_names: Vec<String> = j0.iter().map(|n| central_variable_name(n)).collect();
    for (i, z) in central_names.iter().enumerate() {
        if p.alphabet().index(z).is_some()
            || p.field().param() == Some(z.as_str())
            || central_names[..i].contains(z)
        {
            return Err(CentrifyError::NameClash(z.clone()));
        }
    }
    let one = p.field().one();
    let relations = p
        .relations()
        .iter()
        .map(|(name, r)| {
            let mut lifted = r.map_coeffs(|c| CentralPoly::constant(c.clone()));
            if let Some(v) = j0.iter().position(|n| n == name) {
                lifted.add_term(Word::empty(), CentralPoly::var(v as u32, -&one));
            }
            (name.clone(), lifted)
        })
        .collect();
    Ok(ZPresentation {
        base: p.clone(),
        j0,
        central_names,
        relations,
        ideal: Vec::new(),
    })
}

impl ZPresentation {
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn central_subset(&self) -> &[String] {
        &self.j0
    }

    pub fn central_names(&self) -> &[String] {
        &self.central_names
    }

    pub fn relations(&self) -> &[(String, NcPoly<CentralPoly>)] {
        &self.relations
    }

    pub fn ideal(&self) -> &[CentralPoly] {
        &self.ideal
    }

    pub fn with_ideal(mut self, ideal: Vec<CentralPoly>) -> Self {
        self.ideal = ideal;
        self
    }

    pub fn central_index(&self, z: &str) -> Option<u32> {
        self.central_names.iter().position(|n| n == z).map(|i| i as u32)
    }

    pub fn render(&self, f: &NcPoly<CentralPoly>) -> String {
        f.render(self.base.alphabet(), &self.central_names)
    }

    pub fn render_central(&self, f: &CentralPoly) -> String {
        f.render(&self.central_names)
    }

    pub fn base_system(&self) -> Result<RewriteSystem<Scalar>, RewriteError> {
        self.base.rewrite_system()
    }

    /// Monic rules `(R_j − z_j)/λ_j`, seeded with the known central ideal.
    pub fn z_system(&self) -> Result<RewriteSystem<CentralPoly>, RewriteError> {
        RewriteSystem::new(
            self.base.alphabet().clone(),
            self.base.field().clone(),
            self.central_names.clone(),
            self.relations.iter().cloned(),
        )?
        .with_central_relations(&self.ideal)
    }

    /// `z_j / λ_j` for relations in `J0`, zero otherwise.
    pub fn central_image(&self, relation: &str) -> CentralPoly {
        let Some(v) = self.j0.iter().position(|n| n == relation) else {
            return CentralPoly::zero();
        };
        let r = self.base.relation(relation).expect("known relation");
        let (_, lc) = leading(r).expect("nonzero relation");
        CentralPoly::var(v as u32, lc.inv().expect("nonzero leading coefficient"))
    }
}

/// An obstacle element together with the base reduction it was assembled from.
#[derive(Clone, Debug)]
pub struct Obstacle {
    pub composition: Composition,
    pub element: NcPoly<CentralPoly>,
    pub trace: ReductionTrace<Scalar>,
}

fn lift(c: &Scalar) -> CentralPoly {
    CentralPoly::constant(c.clone())
}

/// The canonical obstacle of `comp` (deterministic base reduction).
pub fn obstacle(zp: &ZPresentation, comp: &Composition) -> Result<Obstacle, CentrifyError> {
    obstacle_with(zp, comp, Strategy::Deterministic)
}

/// The obstacle built from the base reduction chosen by `strategy`.
///
/// The defining identity
/// `(R_j − z_j)∘(R_k − z_k) = Σ β u (R_l − z_l) v + Obs` is checked before returning.
pub fn obstacle_with(
    zp: &ZPresentation,
    comp: &Composition,
    strategy: Strategy,
) -> Result<Obstacle, CentrifyError> {
    let base = zp.base_system()?;
    let zsys = zp.z_system()?;
    let abc = comp.ambiguity();
    let elem = composition_element(&base, comp);
    let trace = trace_reduce_with(&elem, &base, &abc, strategy);
    if !trace.remainder.is_zero() {
        return Err(CentrifyError::BaseNotGs {
            composition: comp.describe(&base),
            remainder: base.render(&trace.remainder),
        });
    }
    let image = |rule: usize| zp.central_image(&base.rules()[rule].name);
    let ((uj, vj), (uk, vk)) = comp.flanks();
    let mut obs: NcPoly<CentralPoly> = NcPoly::zero();
    obs.add_term(uk.concat(&vk), image(comp.k));
    obs.add_term(uj.concat(&vj), image(comp.j).neg());
    for s in &trace.steps {
        obs.add_term(s.left.concat(&s.right), lift(&s.coeff).mul(&image(s.rule)));
    }
    let obs = obs.reduce_coeffs(zsys.ideal());

    // (R_j − z_j)∘(R_k − z_k) against Σ β u (R_l − z_l) v + Obs
    let lhs = composition_element(&zsys, comp).reduce_coeffs(zsys.ideal());
    let mut rhs = obs.clone();
    for s in &trace.steps {
        rhs = rhs.add(&zsys.rules()[s.rule].poly.wrap(&lift(&s.coeff), &s.left, &s.right));
    }
    if lhs != rhs.reduce_coeffs(zsys.ideal()) {
        return Err(CentrifyError::IdentityFailed(comp.describe(&base)));
    }
    Ok(Obstacle {
        composition: comp.clone(),
        element: obs,
        trace,
    })
}

/// Re-checks the defining identity of an obstacle by expansion.
pub fn verify_obstacle_identity(zp: &ZPresentation, obs: &Obstacle) -> Result<bool, CentrifyError> {
    let zsys = zp.z_system()?;
    let lhs = composition_element(&zsys, &obs.composition).reduce_coeffs(zsys.ideal());
    let mut rhs = obs.element.clone();
    for s in &obs.trace.steps {
        rhs = rhs.add(&zsys.rules()[s.rule].poly.wrap(&lift(&s.coeff), &s.left, &s.right));
    }
    Ok(lhs == rhs.reduce_coeffs(zsys.ideal()))
}

/// One composition's outcome in a flatness check.
#[derive(Clone, Debug)]
pub struct ObstacleCheck {
    pub obstacle: Obstacle,
    /// Reduction of the obstacle by the `R_l − z_l` rules below the ambiguity.
    pub reduction: ReductionTrace<CentralPoly>,
    /// `None` for the canonical trace, otherwise the seed of the alternative that worked.
    pub alternative: Option<u64>,
}

impl ObstacleCheck {
    pub fn reduces_to_zero(&self) -> bool {
        self.reduction.remainder.is_zero()
    }
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum PropVerdict {
    Flat,
    Witness {
        obstacle: Obstacle,
        remainder: NcPoly<CentralPoly>,
    },
}

#[derive(Clone, Debug)]
pub struct PropCertificate {
    pub verdict: PropVerdict,
    pub checks: Vec<ObstacleCheck>,
}

impl PropCertificate {
    pub fn is_flat(&self) -> bool {
        matches!(self.verdict, PropVerdict::Flat)
    }
}

pub const DEFAULT_SEARCH_BUDGET: u64 = 16;

/// Flatness certificate from obstacles: the presentation over `Z` is a
/// Gröbner-Shirshov basis iff every composition has an obstacle that rewrites to
/// zero by the `R_l − z_l` below its ambiguity.
///
/// The canonical obstacle is tried first, then up to `search_budget` obstacles from
/// randomized base reductions.
pub fn check_prop_gsbasis(zp: &ZPresentation, search_budget: u64) -> Result<PropCertificate, CentrifyError> {
    let base = zp.base_system()?;
    if let GsCertificate::NotBasis { witness, remainder } = is_gs_basis(&base) {
        return Err(CentrifyError::BaseNotGs {
            composition: witness.describe(&base),
            remainder: base.render(&remainder),
        });
    }
    let zsys = zp.z_system()?;
    let mut checks = Vec::new();
    for comp in find_compositions(&base) {
        let abc = comp.ambiguity();
        let canonical = obstacle(zp, &comp)?;
        let reduction = trace_reduce(&canonical.element, &zsys, &abc);
        if reduction.remainder.is_zero() {
            checks.push(ObstacleCheck {
                obstacle: canonical,
                reduction,
                alternative: None,
            });
            continue;
        }
        let mut found = None;
        for seed in 1..=search_budget {
            let alt = obstacle_with(zp, &comp, Strategy::Random(seed))?;
            let red = trace_reduce(&alt.element, &zsys, &abc);
            if red.remainder.is_zero() {
                found = Some(ObstacleCheck {
                    obstacle: alt,
                    reduction: red,
                    alternative: Some(seed),
                });
                break;
            }
        }
        match found {
            Some(check) => checks.push(check),
            None => {
                let remainder = reduction.remainder.clone();
                checks.push(ObstacleCheck {
                    obstacle: canonical.clone(),
                    reduction,
                    alternative: None,
                });
                return Ok(PropCertificate {
                    verdict: PropVerdict::Witness {
                        obstacle: canonical,
                        remainder,
                    },
                    checks,
                });
            }
        }
    }
    Ok(PropCertificate {
        verdict: PropVerdict::Flat,
        checks,
    })
}

/// Relations among the central generators found by completion up to a degree bound.
#[derive(Clone, Debug)]
pub struct CentralRelations {
    pub relations: Vec<CentralPoly>,
    pub status: CompletionStatus,
    pub system: RewriteSystem<CentralPoly>,
    pub log: Vec<CompletionLogEntry>,
}

pub fn central_relations(zp: &ZPresentation, max_degree: usize) -> Result<CentralRelations, CentrifyError> {
    central_relations_with(zp, &CompletionOptions::new(max_degree))
}

pub fn central_relations_with(
    zp: &ZPresentation,
    opts: &CompletionOptions,
) -> Result<CentralRelations, CentrifyError> {
    let result = complete(&zp.z_system()?, opts)?;
    Ok(CentralRelations {
        relations: result.system.central_relations(),
        status: result.status,
        system: result.system,
        log: result.log,
    })
}

/// Substitutes scalar values for the central variables.
pub fn specialize(zp: &ZPresentation, omega: &HashMap<String, Scalar>) -> Result<Presentation, CentrifyError> {
    let field = zp.base().field();
    let mut assignment = HashMap::new();
    for (i, z) in zp.central_names().iter().enumerate() {
        let v = omega
            .get(z)
            .ok_or_else(|| CentrifyError::MissingAssignment(z.clone()))?;
        if !field.contains(v) {
            return Err(CoeffError::FieldMismatch(field.clone(), v.field()).into());
        }
        assignment.insert(i as u32, v.clone());
    }
    let zero = field.zero();
    for rel in zp.ideal() {
        if !rel.evaluate(&assignment, &zero)?.is_zero() {
            return Err(CentrifyError::InconsistentSpecialization(zp.render_central(rel)));
        }
    }
    let mut relations = Vec::new();
    for (name, r) in zp.relations() {
        let mut out: NcPoly<Scalar> = NcPoly::zero();
        for (w, c) in r.terms() {
            out.add_term(w.clone(), c.evaluate(&assignment, &zero)?);
        }
        if out.is_zero() {
            return Err(CentrifyError::ZeroRelation(name.clone()));
        }
        relations.push((name.clone(), out));
    }
    Presentation::new(
        zp.base().name.clone(),
        field.clone(),
        zp.base().alphabet().clone(),
        relations,
        Vec::new(),
    )
}

/// Serializable summary of an obstacle.
#[derive(Clone, Debug, Serialize)]
pub struct ObstacleRecord {
    pub composition: String,
    pub j: String,
    pub k: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub element: String,
    pub trace: Vec<String>,
    pub identity_verified: bool,
}

impl ObstacleRecord {
    pub fn new(zp: &ZPresentation, base: &RewriteSystem<Scalar>, obs: &Obstacle, verified: bool) -> Self {
        let w = |x: &Word| {
            if x.is_empty() {
                "ε".to_string()
            } else {
                base.render_word(x)
            }
        };
        ObstacleRecord {
            composition: obs.composition.describe(base),
            j: obs.composition.j_name.clone(),
            k: obs.composition.k_name.clone(),
            a: w(&obs.composition.a),
            b: w(&obs.composition.b),
            c: w(&obs.composition.c),
            element: zp.render(&obs.element),
            trace: obs.trace.render_steps(base),
            identity_verified: verified,
        }
    }
}

#[cfg(test)]
#[path = "centrify_tests.rs"]
mod tests;
