use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::coeffs::Coeff;
use crate::freealg::{NcPoly, Word};

use super::RewriteSystem;

/// How the next rewrite is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Greatest reducible word first; lowest rule index; leftmost occurrence.
    Deterministic,
    /// Uniformly random reducible word, rule and occurrence, from a seeded generator.
    Random(u64),
}

/// One rewrite `coeff · left · R_rule · right` subtracted from the working element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep<C> {
    pub coeff: C,
    pub left: Word,
    pub rule: usize,
    pub rule_name: String,
    pub right: Word,
}

/// `input = Σ coeff · left · R · right + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace<C> {
    pub input: NcPoly<C>,
    pub steps: Vec<ReductionStep<C>>,
    pub remainder: NcPoly<C>,
}

impl<C: Coeff> ReductionTrace<C> {
    /// `Σ coeff · left · R · right`, expanded.
    pub fn expand(&self, sys: &RewriteSystem<C>) -> NcPoly<C> {
        let mut acc = NcPoly::zero();
        for s in &self.steps {
            acc = acc.add(&sys.rules()[s.rule].poly.wrap(&s.coeff, &s.left, &s.right));
        }
        acc.reduce_coeffs(sys.ideal())
    }

    /// Checks the trace identity by symbolic expansion.
    pub fn verify(&self, sys: &RewriteSystem<C>) -> bool {
        let lhs = self.input.reduce_coeffs(sys.ideal());
        let rhs = self.expand(sys).add(&self.remainder).reduce_coeffs(sys.ideal());
        lhs == rhs
    }

    /// Largest word `left · lead(R) · right` touched by the trace.
    pub fn max_rewritten_word(&self, sys: &RewriteSystem<C>) -> Option<Word> {
        self.steps
            .iter()
            .map(|s| sys.rules()[s.rule].lead().wrap(&s.left, &s.right))
            .max()
    }

    pub fn render_steps(&self, sys: &RewriteSystem<C>) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| {
                let mut c = s.coeff.render(sys.central_names());
                if !s.coeff.is_atomic() {
                    c = format!("({})", c);
                }
                if !s.coeff.looks_negative() {
                    c.insert(0, '+');
                }
                let word = |w: &Word| {
                    if w.is_empty() {
                        "ε".to_string()
                    } else {
                        sys.render_word(w)
                    }
                };
                format!("({}, {}, {}, {})", c, word(&s.left), s.rule_name, word(&s.right))
            })
            .collect()
    }
}

struct Reducer<'a, C: Coeff> {
    sys: &'a RewriteSystem<C>,
    work: BTreeMap<Word, C>,
    rem: BTreeMap<Word, C>,
    steps: Vec<ReductionStep<C>>,
    record: bool,
}

impl<'a, C: Coeff> Reducer<'a, C> {
    fn new(sys: &'a RewriteSystem<C>, f: &NcPoly<C>, record: bool) -> Self {
        let mut r = Reducer {
            sys,
            work: BTreeMap::new(),
            rem: BTreeMap::new(),
            steps: Vec::new(),
            record,
        };
        for (w, c) in f.terms() {
            r.add(w.clone(), c.clone());
        }
        r
    }

    fn add(&mut self, w: Word, c: C) {
        let mut c = c.reduce(self.sys.ideal());
        if c.is_zero() {
            return;
        }
        // a word already set aside as irreducible rejoins the working set
        if let Some(prev) = self.rem.remove(&w) {
            c = c.add(&prev).reduce(self.sys.ideal());
        }
        if let Some(prev) = self.work.remove(&w) {
            c = c.add(&prev).reduce(self.sys.ideal());
        }
        if !c.is_zero() {
            self.work.insert(w, c);
        }
    }

    fn first_match(&self, w: &Word) -> Option<(usize, usize)> {
        self.sys
            .rules()
            .iter()
            .enumerate()
            .find_map(|(i, r)| w.find(r.lead()).map(|p| (i, p)))
    }

    fn all_matches(&self, w: &Word) -> Vec<(usize, usize)> {
        self.sys
            .rules()
            .iter()
            .enumerate()
            .flat_map(|(i, r)| w.occurrences(r.lead()).into_iter().map(move |p| (i, p)))
            .collect()
    }

    fn rewrite(&mut self, w: Word, c: C, rule: usize, pos: usize) {
        let r = &self.sys.rules()[rule];
        let lead_len = r.lead().len();
        let left = w.slice(0, pos);
        let right = w.slice(pos + lead_len, w.len());
        let tail: Vec<(Word, C)> = r
            .poly
            .terms()
            .skip(1)
            .map(|(tw, tc)| (tw.wrap(&left, &right), c.mul(tc).neg()))
            .collect();
        if self.record {
            self.steps.push(ReductionStep {
                coeff: c,
                left,
                rule,
                rule_name: r.name.clone(),
                right,
            });
        }
        for (tw, tc) in tail {
            self.add(tw, tc);
        }
    }

    fn run(mut self, bound: Option<&Word>, strategy: Strategy) -> (Vec<ReductionStep<C>>, NcPoly<C>) {
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            Strategy::Deterministic => None,
        };
        loop {
            let picked = match rng.as_mut() {
                None => self.work.pop_last(),
                Some(rng) => {
                    if self.work.is_empty() {
                        None
                    } else {
                        let idx = rng.gen_range(0..self.work.len());
                        let key = self.work.keys().nth(idx).cloned().unwrap();
                        self.work.remove_entry(&key)
                    }
                }
            };
            let Some((w, c)) = picked else { break };
            if bound.is_some_and(|b| &w >= b) {
                self.rem.insert(w, c);
                continue;
            }
            let m = match rng.as_mut() {
                None => self.first_match(&w),
                Some(rng) => {
                    let all = self.all_matches(&w);
                    if all.is_empty() {
                        None
                    } else {
                        Some(all[rng.gen_range(0..all.len())])
                    }
                }
            };
            match m {
                Some((rule, pos)) => self.rewrite(w, c, rule, pos),
                None => {
                    self.rem.insert(w, c);
                }
            }
        }
        (self.steps, NcPoly::from_terms(self.rem))
    }
}

/// Rewrites `f` until no word contains a leading word of `sys`.
pub fn normal_form<C: Coeff>(f: &NcPoly<C>, sys: &RewriteSystem<C>) -> NcPoly<C> {
    normal_form_with(f, sys, Strategy::Deterministic)
}

pub fn normal_form_with<C: Coeff>(f: &NcPoly<C>, sys: &RewriteSystem<C>, strategy: Strategy) -> NcPoly<C> {
    Reducer::new(sys, f, false).run(None, strategy).1
}

/// Like [`normal_form`] but records every step; words `≥ bound` are left untouched.
pub fn trace_reduce<C: Coeff>(f: &NcPoly<C>, sys: &RewriteSystem<C>, bound: &Word) -> ReductionTrace<C> {
    trace_reduce_with(f, sys, bound, Strategy::Deterministic)
}

pub fn trace_reduce_with<C: Coeff>(
    f: &NcPoly<C>,
    sys: &RewriteSystem<C>,
    bound: &Word,
    strategy: Strategy,
) -> ReductionTrace<C> {
    let (steps, remainder) = Reducer::new(sys, f, true).run(Some(bound), strategy);
    ReductionTrace {
        input: f.clone(),
        steps,
        remainder,
    }
}

/// All words of length `≤ max_len` containing no leading word, in increasing order.
pub fn irreducible_words<C: Coeff>(sys: &RewriteSystem<C>, max_len: usize) -> Vec<Word> {
    let leads: Vec<&Word> = sys.rules().iter().map(|r| r.lead()).collect();
    let n = sys.alphabet().len() as u32;
    let mut layer = vec![Word::empty()];
    let mut out = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..n {
                let mut letters = w.letters().to_vec();
                letters.push(x);
                let cand = Word::new(letters);
                // only suffixes can newly contain a leading word
                let ok = leads.iter().all(|l| {
                    l.len() > cand.len() || cand.letters()[cand.len() - l.len()..] != l.letters()[..]
                });
                if ok {
                    next.push(cand);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    out.sort();
    out
}
