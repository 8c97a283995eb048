use rayon::prelude::*;

use super::{enumerate_formulas, enumerate_models, Bounds};
use crate::arena::FormulaArena;
use crate::kripke::{is_class_ii, lift_choices, lift_model, KripkeModel3, KripkeModel4, ModelClass};
use crate::semantics::{table3, table4, BoxClause, FourVariant};
use crate::syntax::Formula;
use crate::truthval::{compress, TruthValue3, TruthValue4};

const MAX_EXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub variant: FourVariant,
    pub model: KripkeModel3,
    pub lifted: KripkeModel4,
    pub world: String,
    pub formula: Formula,
    pub three_valued: TruthValue3,
    pub four_valued: TruthValue4,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub models: u64,
    pub lifts: u64,
    /// Formula-world comparisons made, both variants together.
    pub checks: u64,
    pub mismatch_count: u64,
    /// The first few mismatches in enumeration order.
    pub mismatches: Vec<Mismatch>,
}

impl CorrespondenceReport {
    pub fn is_clean(&self) -> bool {
        self.mismatch_count == 0
    }

    fn merge(mut self, other: CorrespondenceReport) -> Self {
        self.models += other.models;
        self.lifts += other.lifts;
        self.checks += other.checks;
        self.mismatch_count += other.mismatch_count;
        self.mismatches.extend(other.mismatches);
        self
    }
}

fn formula_arena(atoms: &[String], max_depth: usize) -> (Vec<Formula>, FormulaArena, Vec<usize>) {
    let formulas = enumerate_formulas(atoms, max_depth, true);
    let mut arena = FormulaArena::new();
    let ids = formulas.iter().map(|f| arena.intern(f)).collect();
    (formulas, arena, ids)
}

/// Compares the three-valued semantics with the compressed four-valued
/// simulation for every model within `b` (ignoring `b.model_class`), every
/// lift of it, every world and every formula up to `max_depth`. Semantics I
/// is compared on all models, semantics II on class-II models only.
pub fn correspondence_check(b: &Bounds, max_depth: usize) -> CorrespondenceReport {
    let (formulas, arena, ids) = formula_arena(&b.atoms, max_depth);
    let all = b.with_class(ModelClass::All);
    let mut report = enumerate_models(&all)
        .enumerate()
        .par_bridge()
        .map(|(mi, m)| {
            let mut r = CorrespondenceReport {
                models: 1,
                ..Default::default()
            };
            let mut found = Vec::new();
            let mut variants = vec![(FourVariant::FourI, BoxClause::Deontic)];
            if is_class_ii(&m) {
                variants.push((FourVariant::FourII, BoxClause::Epistemic));
            }
            let expected: Vec<_> = variants
                .iter()
                .map(|&(_, clause)| table3(&m, &arena, clause).expect("atoms are declared"))
                .collect();
            for choice in lift_choices(&m) {
                r.lifts += 1;
                let lifted = lift_model(&m, &choice).expect("choices come from the preimage");
                for (&(variant, clause), three) in variants.iter().zip(&expected) {
                    let four = table4(&lifted, &arena, clause).expect("atoms are declared");
                    for (fi, &id) in ids.iter().enumerate() {
                        for w in 0..m.world_count() {
                            r.checks += 1;
                            let (t, f) = (three.get(id, w), four.get(id, w));
                            if compress(f) != t {
                                r.mismatch_count += 1;
                                if found.len() < MAX_EXAMPLES {
                                    found.push((mi, fi, w, variant, lifted.clone(), t, f));
                                }
                            }
                        }
                    }
                }
            }
            r.mismatches = found
                .into_iter()
                .map(|(_, fi, w, variant, lifted, t, f)| Mismatch {
                    variant,
                    model: m.clone(),
                    lifted,
                    world: m.worlds()[w].clone(),
                    formula: formulas[fi].clone(),
                    three_valued: t,
                    four_valued: f,
                })
                .collect();
            (mi, r)
        })
        .fold(Vec::new, |mut acc, item| {
            acc.push(item);
            acc
        })
        .reduce(Vec::new, |mut a, b| {
            a.extend(b);
            a
        });
    report.sort_by_key(|(mi, _)| *mi);
    let mut merged = report
        .into_iter()
        .map(|(_, r)| r)
        .fold(CorrespondenceReport::default(), CorrespondenceReport::merge);
    merged.mismatches.truncate(MAX_EXAMPLES);
    merged
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceViolation {
    pub model: KripkeModel3,
    pub formula: Formula,
    pub world: String,
    pub successor: String,
    pub value: TruthValue3,
}

/// Checks that under semantics II a formula that is not U at a world stays
/// not U at every successor, over every class-II model within `b` and every
/// formula up to `max_depth`.
pub fn persistence_check(b: &Bounds, max_depth: usize) -> Vec<PersistenceViolation> {
    let (formulas, arena, ids) = formula_arena(&b.atoms, max_depth);
    let class = if b.model_class.requires_s4() {
        ModelClass::S4AndClassII
    } else {
        ModelClass::ClassII
    };
    let bounds = b.with_class(class);
    let mut found: Vec<(usize, PersistenceViolation)> = enumerate_models(&bounds)
        .enumerate()
        .par_bridge()
        .flat_map_iter(|(mi, m)| {
            let table = table3(&m, &arena, BoxClause::Epistemic).expect("atoms are declared");
            let mut out = Vec::new();
            for (fi, &id) in ids.iter().enumerate() {
                for &(s, t) in m.relation() {
                    let value = table.get(id, s);
                    if value != TruthValue3::U && table.get(id, t) == TruthValue3::U {
                        out.push((
                            mi,
                            PersistenceViolation {
                                model: m.clone(),
                                formula: formulas[fi].clone(),
                                world: m.worlds()[s].clone(),
                                successor: m.worlds()[t].clone(),
                                value,
                            },
                        ));
                    }
                }
            }
            out
        })
        .collect();
    found.sort_by_key(|(mi, _)| *mi);
    found.into_iter().map(|(_, v)| v).collect()
}
