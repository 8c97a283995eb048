//! Concrete instantiations of rule schemas over a finite formula pool.

use std::collections::BTreeSet;

use super::{box_image, or_elim_discharges, unary_conclusion, RuleId, Sequent};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
}

/// All subsets of `pool` with at most `cap` elements, smallest first.
pub fn subsets_up_to(pool: &[Formula], cap: usize) -> Vec<BTreeSet<Formula>> {
    fn extend(pool: &[Formula], start: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            current.push(i);
            out.push(current.clone());
            extend(pool, i + 1, left - 1, current, out);
            current.pop();
        }
    }
    let mut index_sets = vec![Vec::new()];
    extend(pool, 0, cap, &mut Vec::new(), &mut index_sets);
    index_sets.sort_by_key(Vec::len);
    index_sets
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| pool[i].clone()).collect())
        .collect()
}

fn with(gamma: &BTreeSet<Formula>, extra: Formula) -> BTreeSet<Formula> {
    let mut s = gamma.clone();
    s.insert(extra);
    s
}

fn seq(gamma: &BTreeSet<Formula>, f: Formula) -> Sequent {
    Sequent {
        assumptions: gamma.clone(),
        conclusion: f,
    }
}

/// Premise formula of a one-premise rule built from metavariables `a`, `b`.
/// `None` for rules with a different premise pattern.
fn unary_premise(rule: RuleId, a: &Formula, b: &Formula) -> Option<Formula> {
    let not = |f: &Formula| Formula::not(f.clone());
    Some(match rule {
        RuleId::NotNotI => a.clone(),
        RuleId::NotNotE => not(&not(a)),
        RuleId::OrI1 => Formula::and(not(a), b.clone()),
        RuleId::OrI2 => Formula::and(a.clone(), not(b)),
        RuleId::OrI3 | RuleId::AndE1 | RuleId::AndE2 => Formula::and(a.clone(), b.clone()),
        RuleId::NegOrI => Formula::and(not(a), not(b)),
        RuleId::NegOrE => not(&Formula::or(a.clone(), b.clone())),
        RuleId::NegAndI => Formula::or(not(a), not(b)),
        RuleId::NegAndE => not(&Formula::and(a.clone(), b.clone())),
        RuleId::NegBoxIDeontic => Formula::boxed(Formula::excluded_middle(a.clone())),
        RuleId::NegBoxEDeontic | RuleId::NegBoxEEpistemic => {
            Formula::excluded_middle(Formula::boxed(a.clone()))
        }
        RuleId::BoxES4 => Formula::boxed(a.clone()),
        RuleId::BoxI2Epistemic | RuleId::NegBoxIEpistemic => Formula::excluded_middle(a.clone()),
        _ => return None,
    })
}

fn uses_b(rule: RuleId) -> bool {
    matches!(
        rule,
        RuleId::OrI1
            | RuleId::OrI2
            | RuleId::OrI3
            | RuleId::AndE1
            | RuleId::AndE2
            | RuleId::NegOrI
            | RuleId::NegOrE
            | RuleId::NegAndI
            | RuleId::NegAndE
    )
}

/// Every instance of `rule` whose metavariables A, B, C range over `pool`
/// and whose context Γ ranges over subsets of `pool` of size at most
/// `gamma_cap`. Multi-premise rules share one context across premises.
pub fn rule_instances(rule: RuleId, pool: &[Formula], gamma_cap: usize) -> std::vec::IntoIter<RuleInstance> {
    let gammas = subsets_up_to(pool, gamma_cap);
    let mut out = Vec::new();
    let mut push = |premises: Vec<Sequent>, conclusion: Sequent| {
        out.push(RuleInstance {
            rule,
            premises,
            conclusion,
        })
    };
    match rule {
        RuleId::Assume => {
            for g in &gammas {
                for a in g {
                    push(Vec::new(), seq(g, a.clone()));
                }
            }
        }
        RuleId::Weaken => {
            for g in &gammas {
                for delta in &gammas {
                    for a in pool {
                        let wider: BTreeSet<Formula> = g.union(delta).cloned().collect();
                        push(vec![seq(g, a.clone())], seq(&wider, a.clone()));
                    }
                }
            }
        }
        RuleId::Efq => {
            for g in &gammas {
                for a in pool {
                    for b in pool {
                        push(
                            vec![seq(g, a.clone()), seq(g, Formula::not(a.clone()))],
                            seq(g, b.clone()),
                        );
                    }
                }
            }
        }
        RuleId::AndI => {
            for g in &gammas {
                for a in pool {
                    for b in pool {
                        push(
                            vec![seq(g, a.clone()), seq(g, b.clone())],
                            seq(g, Formula::and(a.clone(), b.clone())),
                        );
                    }
                }
            }
        }
        RuleId::OrE => {
            for g in &gammas {
                for a in pool {
                    for b in pool {
                        let discharged = or_elim_discharges(a, b);
                        for c in pool {
                            let mut premises = vec![seq(g, Formula::or(a.clone(), b.clone()))];
                            premises.extend(discharged.iter().map(|d| seq(&with(g, d.clone()), c.clone())));
                            push(premises, seq(g, c.clone()));
                        }
                    }
                }
            }
        }
        RuleId::BoxIDeontic => {
            for g in &gammas {
                for a in pool {
                    push(vec![seq(g, a.clone())], seq(&box_image(g), Formula::boxed(a.clone())));
                }
            }
        }
        RuleId::BoxI1Epistemic => {
            for g in &gammas {
                for a in pool {
                    let concl = with(&box_image(g), Formula::excluded_middle(a.clone()));
                    push(vec![seq(g, a.clone())], seq(&concl, Formula::boxed(a.clone())));
                }
            }
        }
        RuleId::BoxIPrimeS4 | RuleId::BoxI1PrimeS4 => {
            for g in &gammas {
                let boxed = box_image(g);
                for a in pool {
                    push(vec![seq(&boxed, a.clone())], seq(&boxed, Formula::boxed(a.clone())));
                }
            }
        }
        _ => {
            let bs: Vec<&Formula> = if uses_b(rule) { pool.iter().collect() } else { pool.iter().take(1).collect() };
            for g in &gammas {
                for a in pool {
                    for &b in &bs {
                        let premise = unary_premise(rule, a, b).expect("single-premise rule");
                        let conclusion = unary_conclusion(rule, &premise).expect("premise built from the schema");
                        push(vec![seq(g, premise)], seq(g, conclusion));
                    }
                }
            }
        }
    }
    out.into_iter()
}
