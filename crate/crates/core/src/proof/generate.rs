//! Bounded forward generation of derivations, used for end-to-end checks
//! and the empty-context scan.

use std::collections::HashSet;

use super::{box_image, unary_conclusion, Derivation, RuleId, Sequent, SystemId};
use crate::syntax::Formula;

const MAX_FORMULA_DEPTH: usize = 4;

fn derive_unary(rule: RuleId, premise: &Sequent, seeds: &[Formula]) -> Vec<Sequent> {
    let gamma = &premise.assumptions;
    let a = &premise.conclusion;
    match rule {
        RuleId::Weaken => seeds
            .iter()
            .filter(|s| !gamma.contains(*s))
            .map(|s| {
                let mut wider = gamma.clone();
                wider.insert(s.clone());
                Sequent {
                    assumptions: wider,
                    conclusion: a.clone(),
                }
            })
            .collect(),
        RuleId::BoxIDeontic => vec![Sequent {
            assumptions: box_image(gamma),
            conclusion: Formula::boxed(a.clone()),
        }],
        RuleId::BoxI1Epistemic => {
            let mut assumptions = box_image(gamma);
            assumptions.insert(Formula::excluded_middle(a.clone()));
            vec![Sequent {
                assumptions,
                conclusion: Formula::boxed(a.clone()),
            }]
        }
        RuleId::BoxIPrimeS4 | RuleId::BoxI1PrimeS4 => {
            if gamma.iter().all(|f| f.as_box().is_some()) {
                vec![Sequent {
                    assumptions: gamma.clone(),
                    conclusion: Formula::boxed(a.clone()),
                }]
            } else {
                Vec::new()
            }
        }
        _ => match unary_conclusion(rule, a) {
            Ok(f) => vec![Sequent {
                assumptions: gamma.clone(),
                conclusion: f,
            }],
            Err(_) => Vec::new(),
        },
    }
}

/// Derivations reachable in `rounds` forward steps from the leaves
/// `{A} ⊢ A` (A in `seeds`), using every rule of `sys` except `OrE`.
/// Each distinct conclusion sequent is kept once; conclusions deeper than
/// four connectives are dropped, and generation stops after `limit` trees.
pub fn bounded_derivations(sys: SystemId, seeds: &[Formula], rounds: usize, limit: usize) -> Vec<Derivation> {
    let mut seen: HashSet<Sequent> = HashSet::new();
    let mut all: Vec<Derivation> = Vec::new();
    for a in seeds {
        let d = Derivation::assume([a.clone()], a.clone());
        if all.len() < limit && seen.insert(d.conclusion.clone()) {
            all.push(d);
        }
    }
    let rules = sys.rules();
    for _ in 0..rounds {
        let frontier = all.len();
        let mut fresh = Vec::new();
        let mut emit = |d: Derivation, fresh: &mut Vec<Derivation>| {
            if frontier + fresh.len() < limit
                && d.conclusion.conclusion.depth() <= MAX_FORMULA_DEPTH
                && seen.insert(d.conclusion.clone())
            {
                fresh.push(d);
            }
        };
        for &rule in &rules {
            match rule.arity() {
                1 => {
                    for d in &all[..frontier] {
                        for s in derive_unary(rule, &d.conclusion, seeds) {
                            emit(Derivation::new(rule, vec![d.clone()], s), &mut fresh);
                        }
                    }
                }
                2 => {
                    for l in &all[..frontier] {
                        for r in &all[..frontier] {
                            let gamma = l.conclusion.assumptions.union(&r.conclusion.assumptions).cloned();
                            let (lf, rf) = (&l.conclusion.conclusion, &r.conclusion.conclusion);
                            match rule {
                                RuleId::AndI => {
                                    let s = Sequent::new(gamma, Formula::and(lf.clone(), rf.clone()));
                                    emit(Derivation::new(rule, vec![l.clone(), r.clone()], s), &mut fresh);
                                }
                                RuleId::Efq if rf.as_not() == Some(lf) => {
                                    let gamma: Vec<Formula> = gamma.collect();
                                    for b in seeds {
                                        let s = Sequent::new(gamma.iter().cloned(), b.clone());
                                        emit(Derivation::new(rule, vec![l.clone(), r.clone()], s), &mut fresh);
                                    }
                                }
                                _ => {}
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        if fresh.is_empty() {
            break;
        }
        all.extend(fresh);
    }
    all
}

/// Conclusions with an empty context found by [`bounded_derivations`].
/// Weak Kleene has no tautologies, so this is expected to be empty.
pub fn theorems_within(sys: SystemId, seeds: &[Formula], rounds: usize, limit: usize) -> Vec<Sequent> {
    bounded_derivations(sys, seeds, rounds, limit)
        .into_iter()
        .filter(|d| d.conclusion.assumptions.is_empty())
        .map(|d| d.conclusion)
        .collect()
}
