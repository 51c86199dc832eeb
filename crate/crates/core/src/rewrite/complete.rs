use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::coeffs::Coeff;
use crate::freealg::{NcPoly, Word};

use super::{composition_element, find_compositions, normal_form, Composition, RewriteError, RewriteSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompletionStatus {
    Complete,
    /// Some composition or some needed rule exceeded the degree bound.
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompletionAction {
    Zero,
    NewRule,
    Central,
    Truncated,
}

/// One processed composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionLogEntry {
    pub j: String,
    pub k: String,
    pub abc: String,
    pub remainder: String,
    pub action: CompletionAction,
}

#[derive(Clone, Debug)]
pub struct CompletionOptions {
    pub max_degree: usize,
    /// Stop with `Truncated` once the system holds more rules than this.
    pub max_rules: Option<usize>,
}

impl CompletionOptions {
    pub fn new(max_degree: usize) -> Self {
        CompletionOptions {
            max_degree,
            max_rules: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompletionResult<C: Coeff> {
    pub system: RewriteSystem<C>,
    pub status: CompletionStatus,
    pub log: Vec<CompletionLogEntry>,
}

type CompositionKey<C> = (NcPoly<C>, NcPoly<C>, Word, Word, Word);

fn key<C: Coeff>(sys: &RewriteSystem<C>, comp: &Composition) -> CompositionKey<C> {
    (
        sys.rules()[comp.j].poly.clone(),
        sys.rules()[comp.k].poly.clone(),
        comp.a.clone(),
        comp.b.clone(),
        comp.c.clone(),
    )
}

/// Shirshov completion up to `max_degree`.
///
/// Compositions are processed in [`find_compositions`] order. A nonzero remainder
/// becomes a new monic rule (followed by inter-reduction), or, when its leading word
/// is empty, a new central relation. The first change restarts the scan, so the
/// result does not depend on anything but the input.
pub fn complete<C: Coeff>(
    sys: &RewriteSystem<C>,
    opts: &CompletionOptions,
) -> Result<CompletionResult<C>, RewriteError> {
    let needed = sys.max_degree();
    if opts.max_degree < needed {
        return Err(RewriteError::DegreeBoundTooSmall {
            bound: opts.max_degree,
            needed,
        });
    }
    let mut sys = sys.clone();
    let mut counter = 0usize;
    interreduce(&mut sys, &mut counter)?;
    let mut log = Vec::new();
    let mut resolved: HashSet<CompositionKey<C>> = HashSet::new();
    let mut skipped: HashSet<CompositionKey<C>> = HashSet::new();
    let status = 'outer: loop {
        if opts.max_rules.is_some_and(|m| sys.rules().len() > m) {
            break CompletionStatus::Truncated;
        }
        let mut truncated = false;
        for comp in find_compositions(&sys) {
            let k = key(&sys, &comp);
            if resolved.contains(&k) {
                continue;
            }
            if skipped.contains(&k) {
                truncated = true;
                continue;
            }
            let abc = comp.ambiguity();
            let entry = |remainder: String, action| CompletionLogEntry {
                j: comp.j_name.clone(),
                k: comp.k_name.clone(),
                abc: sys.render_word(&abc),
                remainder,
                action,
            };
            if abc.len() > opts.max_degree {
                log.push(entry(String::new(), CompletionAction::Truncated));
                skipped.insert(k);
                truncated = true;
                continue;
            }
            let rem = normal_form(&composition_element(&sys, &comp), &sys);
            let Some(lead) = rem.leading_word() else {
                log.push(entry("0".to_string(), CompletionAction::Zero));
                resolved.insert(k);
                continue;
            };
            if lead.len() > opts.max_degree {
                log.push(entry(sys.render(&rem), CompletionAction::Truncated));
                skipped.insert(k);
                truncated = true;
                continue;
            }
            let action = if lead.is_empty() {
                CompletionAction::Central
            } else {
                CompletionAction::NewRule
            };
            log.push(entry(sys.render(&rem), action));
            resolved.insert(k);
            adjoin(&mut sys, None, rem, &mut counter)?;
            continue 'outer;
        }
        break if truncated {
            CompletionStatus::Truncated
        } else {
            CompletionStatus::Complete
        };
    };
    Ok(CompletionResult {
        system: sys,
        status,
        log,
    })
}

fn fresh_name<C: Coeff>(sys: &RewriteSystem<C>, counter: &mut usize) -> String {
    loop {
        *counter += 1;
        let name = format!("gs_{}", counter);
        if sys.rule(&name).is_none() {
            return name;
        }
    }
}

/// Adds `f` to the system and inter-reduces: rules whose leading word becomes
/// reducible are re-inserted, and all tails are brought to normal form.
pub(crate) fn adjoin<C: Coeff>(
    sys: &mut RewriteSystem<C>,
    name: Option<String>,
    f: NcPoly<C>,
    counter: &mut usize,
) -> Result<(), RewriteError> {
    let mut queue: VecDeque<(Option<String>, NcPoly<C>)> = VecDeque::new();
    queue.push_back((name, f));
    while let Some((name, g)) = queue.pop_front() {
        let g = normal_form(&g, sys);
        let Some((lead, lc)) = g.leading().map(|(w, c)| (w.clone(), c.clone())) else {
            continue;
        };
        if lead.is_empty() {
            sys.absorb_central(&lc)?;
            normalize_tails(sys);
            continue;
        }
        let name = name.unwrap_or_else(|| fresh_name(sys, counter));
        let rule = sys.monic_rule(name, &g)?;
        let rules = sys.rules_mut();
        let mut i = 0;
        while i < rules.len() {
            if rules[i].lead().contains(&lead) {
                let old = rules.remove(i);
                queue.push_back((Some(old.name), old.poly));
            } else {
                i += 1;
            }
        }
        rules.push(rule);
        normalize_tails(sys);
    }
    Ok(())
}

/// Removes rules whose leading word is reducible by another rule and re-adjoins
/// them, so that the input system is reduced before any composition is formed.
fn interreduce<C: Coeff>(sys: &mut RewriteSystem<C>, counter: &mut usize) -> Result<(), RewriteError> {
    loop {
        let rules = sys.rules();
        let redundant = (0..rules.len()).find(|&i| {
            rules.iter().enumerate().any(|(k, r)| {
                k != i && rules[i].lead().contains(r.lead()) && (rules[i].lead() != r.lead() || k < i)
            })
        });
        let Some(i) = redundant else { break };
        let old = sys.rules_mut().remove(i);
        adjoin(sys, Some(old.name), old.poly, counter)?;
    }
    normalize_tails(sys);
    Ok(())
}

fn normalize_tails<C: Coeff>(sys: &mut RewriteSystem<C>) {
    for i in 0..sys.rules().len() {
        let poly = &sys.rules()[i].poly;
        let (lead, lc) = poly.leading().map(|(w, c)| (w.clone(), c.clone())).unwrap();
        let tail = normal_form(&poly.tail(), sys);
        let mut new = tail;
        new.add_term(lead, lc);
        sys.rules_mut()[i].poly = new;
    }
}
