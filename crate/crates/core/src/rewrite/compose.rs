use serde::Serialize;

use crate::coeffs::Coeff;
use crate::freealg::{NcPoly, Word};

use super::{trace_reduce, RewriteSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionKind {
    /// `lead(R_j) = ab`, `lead(R_k) = bc`, element `R_j·c − a·R_k`.
    Overlap,
    /// `lead(R_j) = abc` with `b = lead(R_k)`, element `R_j − a·R_k·c`.
    Inclusion,
}

/// An ambiguity between two rules of a system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    pub j: usize,
    pub k: usize,
    pub j_name: String,
    pub k_name: String,
    pub a: Word,
    pub b: Word,
    pub c: Word,
    pub kind: CompositionKind,
}

impl Composition {
    /// The ambiguous word `abc`, which bounds every admissible reduction step.
    pub fn ambiguity(&self) -> Word {
        self.b.wrap(&self.a, &self.c)
    }

    /// Outer words `((u_j, v_j), (u_k, v_k))` with element `u_j R_j v_j − u_k R_k v_k`.
    pub fn flanks(&self) -> ((Word, Word), (Word, Word)) {
        match self.kind {
            CompositionKind::Overlap => (
                (Word::empty(), self.c.clone()),
                (self.a.clone(), Word::empty()),
            ),
            CompositionKind::Inclusion => (
                (Word::empty(), Word::empty()),
                (self.a.clone(), self.c.clone()),
            ),
        }
    }

    pub fn describe<C: Coeff>(&self, sys: &RewriteSystem<C>) -> String {
        let w = |x: &Word| {
            if x.is_empty() {
                "ε".to_string()
            } else {
                sys.render_word(x)
            }
        };
        format!(
            "{} ∘_{} {} (a={}, b={}, c={}, {})",
            self.j_name,
            w(&self.b),
            self.k_name,
            w(&self.a),
            w(&self.b),
            w(&self.c),
            match self.kind {
                CompositionKind::Overlap => "overlap",
                CompositionKind::Inclusion => "inclusion",
            }
        )
    }
}

/// Every overlap and inclusion ambiguity, sorted by `(|abc|, abc, names, |b|)`.
pub fn find_compositions<C: Coeff>(sys: &RewriteSystem<C>) -> Vec<Composition> {
    let rules = sys.rules();
    let mut out = Vec::new();
    for (j, rj) in rules.iter().enumerate() {
        let lj = rj.lead().letters();
        for (k, rk) in rules.iter().enumerate() {
            let lk = rk.lead().letters();
            // overlaps: proper nonempty suffix of lj equal to a proper prefix of lk
            for blen in 1..lj.len().min(lk.len()) {
                if lj[lj.len() - blen..] == lk[..blen] {
                    out.push(Composition {
                        j,
                        k,
                        j_name: rj.name.clone(),
                        k_name: rk.name.clone(),
                        a: Word::new(lj[..lj.len() - blen].to_vec()),
                        b: Word::new(lk[..blen].to_vec()),
                        c: Word::new(lk[blen..].to_vec()),
                        kind: CompositionKind::Overlap,
                    });
                }
            }
            if j == k || lk.len() > lj.len() || (lk.len() == lj.len() && j > k) {
                continue;
            }
            for pos in rj.lead().occurrences(rk.lead()) {
                out.push(Composition {
                    j,
                    k,
                    j_name: rj.name.clone(),
                    k_name: rk.name.clone(),
                    a: Word::new(lj[..pos].to_vec()),
                    b: rk.lead().clone(),
                    c: Word::new(lj[pos + lk.len()..].to_vec()),
                    kind: CompositionKind::Inclusion,
                });
            }
        }
    }
    out.sort_by(|x, y| {
        let (ax, ay) = (x.ambiguity(), y.ambiguity());
        ax.cmp(&ay)
            .then_with(|| x.j_name.cmp(&y.j_name))
            .then_with(|| x.k_name.cmp(&y.k_name))
            .then_with(|| x.b.len().cmp(&y.b.len()))
            .then_with(|| x.a.len().cmp(&y.a.len()))
    });
    out
}

/// `u_j R_j v_j − u_k R_k v_k` for the composition.
pub fn composition_element<C: Coeff>(sys: &RewriteSystem<C>, comp: &Composition) -> NcPoly<C> {
    let ((uj, vj), (uk, vk)) = comp.flanks();
    let rj = &sys.rules()[comp.j].poly;
    let rk = &sys.rules()[comp.k].poly;
    let one = rj.leading().expect("nonzero rule").1.clone();
    rj.wrap(&one, &uj, &vj).sub(&rk.wrap(&one, &uk, &vk))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GsCertificate<C> {
    Basis,
    NotBasis {
        witness: Composition,
        remainder: NcPoly<C>,
    },
}

impl<C> GsCertificate<C> {
    pub fn is_basis(&self) -> bool {
        matches!(self, GsCertificate::Basis)
    }
}

/// Diamond-lemma check: every composition trace-reduces to zero below its ambiguity.
pub fn is_gs_basis<C: Coeff>(sys: &RewriteSystem<C>) -> GsCertificate<C> {
    is_gs_basis_up_to(sys, None)
}

/// As [`is_gs_basis`], ignoring compositions whose ambiguity is longer than `max_degree`.
pub fn is_gs_basis_up_to<C: Coeff>(sys: &RewriteSystem<C>, max_degree: Option<usize>) -> GsCertificate<C> {
    for comp in find_compositions(sys) {
        let abc = comp.ambiguity();
        if max_degree.is_some_and(|d| abc.len() > d) {
            continue;
        }
        let elem = composition_element(sys, &comp);
        let trace = trace_reduce(&elem, sys, &abc);
        if !trace.remainder.is_zero() {
            return GsCertificate::NotBasis {
                witness: comp,
                remainder: trace.remainder,
            };
        }
    }
    GsCertificate::Basis
}
