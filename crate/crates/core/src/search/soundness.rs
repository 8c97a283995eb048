use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{enumerate_formulas, enumerate_models, Bounds};
use crate::arena::{FormulaArena, FormulaId};
use crate::kripke::{KripkeModel3, ModelClass};
use crate::proof::{rule_instances, RuleId, RuleInstance, Sequent, SystemId};
use crate::semantics::{table3, BoxClause, Table};
use crate::truthval::TruthValue3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessOptions {
    /// Metavariables range over all formulas up to this depth.
    pub pool_depth: usize,
    /// Context size cap for rules that keep their context.
    pub gamma_cap: usize,
    /// Context size cap for the box-introduction rules, which rewrite it.
    pub box_gamma_cap: usize,
    /// Violating instances kept per rule.
    pub max_examples: usize,
    /// Restrict the sweep to these rules; `None` runs every rule of the system.
    pub rules: Option<Vec<RuleId>>,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            pool_depth: 1,
            gamma_cap: 1,
            box_gamma_cap: 2,
            max_examples: 3,
            rules: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessViolation {
    pub instance: RuleInstance,
    pub model: KripkeModel3,
    pub world: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: RuleId,
    pub instances: usize,
    pub violations: u64,
    pub examples: Vec<SoundnessViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessReport {
    pub system: SystemId,
    pub model_class: ModelClass,
    pub models: u64,
    pub rules: Vec<RuleReport>,
}

impl SoundnessReport {
    pub fn total_violations(&self) -> u64 {
        self.rules.iter().map(|r| r.violations).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0
    }

    pub fn rule(&self, rule: RuleId) -> Option<&RuleReport> {
        self.rules.iter().find(|r| r.rule == rule)
    }
}

/// The model class a system is meant to be sound for.
pub fn system_class(sys: SystemId) -> ModelClass {
    match sys {
        SystemId::SysI => ModelClass::All,
        SystemId::SysII => ModelClass::ClassII,
        SystemId::SysIS4 => ModelClass::S4,
        SystemId::SysIIS4 => ModelClass::S4AndClassII,
    }
}

impl Bounds {
    /// These bounds restricted to the class `sys` is meant for.
    pub fn for_system(&self, sys: SystemId) -> Bounds {
        self.with_class(system_class(sys))
    }
}

struct CompiledSequent {
    gamma: Vec<FormulaId>,
    conclusion: FormulaId,
}

impl CompiledSequent {
    fn new(arena: &mut FormulaArena, s: &Sequent) -> Self {
        CompiledSequent {
            gamma: s.assumptions.iter().map(|f| arena.intern(f)).collect(),
            conclusion: arena.intern(&s.conclusion),
        }
    }

    fn holds(&self, table: &Table<TruthValue3>, w: usize) -> bool {
        table.get(self.conclusion, w) == TruthValue3::T
            || self.gamma.iter().any(|&g| table.get(g, w) != TruthValue3::T)
    }
}

struct Compiled {
    rule: usize,
    index: usize,
    local: bool,
    premises: Vec<CompiledSequent>,
    conclusion: CompiledSequent,
}

impl Compiled {
    /// First world witnessing a failure of this instance in the model.
    fn violation(&self, table: &Table<TruthValue3>, worlds: usize) -> Option<usize> {
        if self.local {
            (0..worlds).find(|&w| self.premises.iter().all(|p| p.holds(table, w)) && !self.conclusion.holds(table, w))
        } else {
            let premises_valid = self.premises.iter().all(|p| (0..worlds).all(|w| p.holds(table, w)));
            if premises_valid {
                (0..worlds).find(|&w| !self.conclusion.holds(table, w))
            } else {
                None
            }
        }
    }
}

// (model index, instance index, world, model)
type Example = (u64, usize, usize, KripkeModel3);

#[derive(Default)]
struct Tally {
    violations: Vec<u64>,
    examples: Vec<Vec<Example>>,
}

impl Tally {
    fn new(rules: usize) -> Self {
        Tally {
            violations: vec![0; rules],
            examples: vec![Vec::new(); rules],
        }
    }

    fn keep(examples: &mut Vec<Example>, cap: usize) {
        examples.sort_by_key(|e| (e.0, e.1, e.2));
        examples.truncate(cap);
    }

    fn merge(mut self, other: Tally, cap: usize) -> Tally {
        if self.violations.is_empty() {
            return other;
        }
        if other.violations.is_empty() {
            return self;
        }
        for (i, (v, ex)) in other.violations.into_iter().zip(other.examples).enumerate() {
            self.violations[i] += v;
            self.examples[i].extend(ex);
            Tally::keep(&mut self.examples[i], cap);
        }
        self
    }
}

/// Checks every instance of every rule of `sys` against every pointed model
/// within `b` (restricted to `b.model_class`), using the box clause of the
/// system's semantics.
///
/// Rules that keep their context are checked world by world: wherever all
/// premise sequents hold, the conclusion sequent must hold. The
/// box-introduction rules are checked per model: if the premise sequent
/// holds at every world, the conclusion must too.
///
/// Passing a class the system is not meant for is allowed; that is how the
/// sweep shows a rule failing outside its class.
pub fn rule_soundness_report(sys: SystemId, b: &Bounds, opts: &HarnessOptions) -> SoundnessReport {
    let clause = if sys.is_epistemic() {
        BoxClause::Epistemic
    } else {
        BoxClause::Deontic
    };
    let rules: Vec<RuleId> = match &opts.rules {
        Some(rs) => rs.clone(),
        None => sys.rules(),
    };
    let pool = enumerate_formulas(&b.atoms, opts.pool_depth, true);

    let mut arena = FormulaArena::new();
    for a in &b.atoms {
        arena.intern(&crate::syntax::Formula::Atom(a.clone()));
    }
    let mut instances: Vec<Vec<RuleInstance>> = Vec::with_capacity(rules.len());
    let mut compiled = Vec::new();
    for (r, &rule) in rules.iter().enumerate() {
        let cap = if rule.is_local() { opts.gamma_cap } else { opts.box_gamma_cap };
        let list: Vec<RuleInstance> = rule_instances(rule, &pool, cap).collect();
        for (index, inst) in list.iter().enumerate() {
            compiled.push(Compiled {
                rule: r,
                index,
                local: rule.is_local(),
                premises: inst.premises.iter().map(|p| CompiledSequent::new(&mut arena, p)).collect(),
                conclusion: CompiledSequent::new(&mut arena, &inst.conclusion),
            });
        }
        instances.push(list);
    }

    let cap = opts.max_examples;
    let (models, tally) = enumerate_models(b)
        .enumerate()
        .par_bridge()
        .fold(
            || (0u64, Tally::new(rules.len())),
            |(count, mut tally), (mi, m)| {
                let table = table3(&m, &arena, clause).expect("pool atoms are in the bounds");
                for c in &compiled {
                    if let Some(w) = c.violation(&table, m.world_count()) {
                        tally.violations[c.rule] += 1;
                        let ex = &mut tally.examples[c.rule];
                        ex.push((mi as u64, c.index, w, m.clone()));
                        if ex.len() > 4 * cap.max(1) {
                            Tally::keep(ex, cap);
                        }
                    }
                }
                (count + 1, tally)
            },
        )
        .reduce(|| (0, Tally::default()), |(c1, t1), (c2, t2)| (c1 + c2, t1.merge(t2, cap)));
    let mut tally = if tally.violations.is_empty() {
        Tally::new(rules.len())
    } else {
        tally
    };

    let mut by_rule: BTreeMap<usize, RuleReport> = BTreeMap::new();
    for (r, &rule) in rules.iter().enumerate() {
        Tally::keep(&mut tally.examples[r], cap);
        let examples = std::mem::take(&mut tally.examples[r])
            .into_iter()
            .map(|(_, index, w, model)| SoundnessViolation {
                instance: instances[r][index].clone(),
                world: model.worlds()[w].clone(),
                model,
            })
            .collect();
        by_rule.insert(
            r,
            RuleReport {
                rule,
                instances: instances[r].len(),
                violations: tally.violations[r],
                examples,
            },
        );
    }
    SoundnessReport {
        system: sys,
        model_class: b.model_class,
        models,
        rules: by_rule.into_values().collect(),
    }
}
