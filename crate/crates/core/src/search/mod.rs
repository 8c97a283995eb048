//! Bounded exhaustive search over small models and formulas: enumeration,
//! countermodels, and the rule-soundness, correspondence and persistence
//! sweeps.
//!
//! Nothing here decides validity. A search that finds no countermodel only
//! says so for the bounds it was given.

mod correspondence;
mod soundness;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::arena::FormulaArena;
use crate::kripke::{is_s4_relation, KripkeModel, KripkeModel3, ModelClass};
use crate::semantics::{table3, BoxClause, SemanticsId};
use crate::syntax::{collect_atoms, Formula};
use crate::truthval::TruthValue3;

pub use correspondence::{correspondence_check, persistence_check, CorrespondenceReport, Mismatch, PersistenceViolation};
pub use soundness::{rule_soundness_report, system_class, HarnessOptions, RuleReport, SoundnessReport, SoundnessViolation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub max_worlds: usize,
    pub atoms: Vec<String>,
    pub max_depth: usize,
    pub model_class: ModelClass,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_worlds: 2,
            atoms: vec!["p".into(), "q".into()],
            max_depth: 2,
            model_class: ModelClass::All,
        }
    }
}

impl Bounds {
    pub fn new(max_worlds: usize, atoms: &[&str], max_depth: usize, model_class: ModelClass) -> Self {
        Bounds {
            max_worlds,
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            max_depth,
            model_class,
        }
    }

    pub fn with_class(&self, model_class: ModelClass) -> Self {
        Bounds {
            model_class,
            ..self.clone()
        }
    }

    /// Number of unfiltered models: the sum over n ≤ max_worlds of
    /// 2^(n²) · 3^(n·k). `None` on overflow.
    pub fn enumeration_size(&self) -> Option<u128> {
        let k = self.atoms.len() as u32;
        (1..=self.max_worlds as u32).try_fold(0u128, |acc, n| {
            let relations = 2u128.checked_pow(n.checked_mul(n)?)?;
            let valuations = 3u128.checked_pow(n.checked_mul(k)?)?;
            acc.checked_add(relations.checked_mul(valuations)?)
        })
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "worlds <= {}, atoms {{{}}}, depth <= {}, class {:?}",
            self.max_worlds,
            self.atoms.join(", "),
            self.max_depth,
            self.model_class
        )
    }
}

/// Values in enumeration order: classical values first.
const VALUE_ORDER: [TruthValue3; 3] = [TruthValue3::T, TruthValue3::F, TruthValue3::U];

/// Every model over worlds `w0..w(n-1)` for `1 <= n <= max_worlds`, every
/// relation and every total valuation over `b.atoms`, restricted to
/// `b.model_class`.
///
/// Order: by world count, then relation bitmask (pair `(i, j)` is bit
/// `i·n + j`), then valuation counter with the `(w0, first atom)` digit
/// least significant and digits ordered T, F, U.
pub fn enumerate_models(b: &Bounds) -> impl Iterator<Item = KripkeModel3> + '_ {
    (1..=b.max_worlds).flat_map(move |n| enumerate_with_worlds(n, b))
}

fn enumerate_with_worlds(n: usize, b: &Bounds) -> impl Iterator<Item = KripkeModel3> + '_ {
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let cells = n * b.atoms.len();
    let valuations = 3u64.pow(cells as u32);
    (0u64..1 << (n * n))
        .map(move |mask| -> BTreeSet<(usize, usize)> {
            (0..n * n).filter(|bit| mask >> bit & 1 == 1).map(|bit| (bit / n, bit % n)).collect()
        })
        .filter(move |rel| !b.model_class.requires_s4() || is_s4_relation(n, rel))
        .flat_map(move |relation| {
            let worlds = worlds.clone();
            (0..valuations).filter_map(move |mut code| {
                let mut valuation = vec![Vec::with_capacity(b.atoms.len()); n];
                for row in valuation.iter_mut() {
                    for _ in 0..b.atoms.len() {
                        row.push(VALUE_ORDER[(code % 3) as usize]);
                        code /= 3;
                    }
                }
                let m = KripkeModel::assemble(worlds.clone(), relation.clone(), b.atoms.clone(), valuation);
                b.model_class.admits(&m).then_some(m)
            })
        })
}

/// All formulas over `atoms` with nesting depth at most `max_depth`, each
/// exactly once. Grouped by depth; within a depth the order is `~`, `&`,
/// `|`, then `[]` (when `modal`).
pub fn enumerate_formulas(atoms: &[String], max_depth: usize, modal: bool) -> Vec<Formula> {
    let mut all: Vec<Formula> = atoms.iter().map(|a| Formula::Atom(a.clone())).collect();
    let mut last_start = 0;
    for _ in 0..max_depth {
        let (prev, newest) = (all.len(), last_start);
        let fresh_children = newest..prev;
        let mut next = Vec::new();
        for i in fresh_children.clone() {
            next.push(Formula::not(all[i].clone()));
        }
        for ctor in [Formula::and as fn(Formula, Formula) -> Formula, Formula::or] {
            for i in 0..prev {
                for j in 0..prev {
                    if fresh_children.contains(&i) || fresh_children.contains(&j) {
                        next.push(ctor(all[i].clone(), all[j].clone()));
                    }
                }
            }
        }
        if modal {
            for i in fresh_children {
                next.push(Formula::boxed(all[i].clone()));
            }
        }
        last_start = prev;
        all.extend(next);
    }
    all
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("countermodel search supports wk, I and II, not {0:?}")]
    UnsupportedSemantics(SemanticsId),
    #[error("'[]' cannot be evaluated under weak Kleene")]
    ModalUnderWeakKleene,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: KripkeModel3,
    pub world: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountermodelResult {
    Found(Countermodel),
    /// Inconclusive: nothing found within the searched bounds.
    NoneWithinBounds,
}

impl CountermodelResult {
    pub fn found(&self) -> Option<&Countermodel> {
        match self {
            CountermodelResult::Found(c) => Some(c),
            CountermodelResult::NoneWithinBounds => None,
        }
    }
}

/// The model class actually searched for `sem`: weak Kleene needs nothing,
/// semantics II is only defined on class-II models.
pub fn effective_class(sem: SemanticsId, class: ModelClass) -> ModelClass {
    match (sem, class) {
        (SemanticsId::SemII, ModelClass::All) => ModelClass::ClassII,
        (SemanticsId::SemII, ModelClass::S4) => ModelClass::S4AndClassII,
        (_, class) => class,
    }
}

/// Searches for a pointed model where every member of `gamma` is T and
/// `goal` is not. Returns the first one in enumeration order, which has the
/// fewest worlds. Atoms of the formulas are added to `b.atoms` when missing.
///
/// Under weak Kleene only single-world models without edges are searched.
pub fn find_countermodel(
    gamma: &[Formula],
    goal: &Formula,
    sem: SemanticsId,
    b: &Bounds,
) -> Result<CountermodelResult, SearchError> {
    let clause = match sem {
        SemanticsId::WK => {
            if gamma.iter().chain([goal]).any(Formula::is_modal) {
                return Err(SearchError::ModalUnderWeakKleene);
            }
            BoxClause::Deontic
        }
        SemanticsId::SemI => BoxClause::Deontic,
        SemanticsId::SemII => BoxClause::Epistemic,
        other => return Err(SearchError::UnsupportedSemantics(other)),
    };
    let mut atoms: BTreeSet<String> = BTreeSet::new();
    for f in gamma.iter().chain([goal]) {
        collect_atoms(f, &mut atoms);
    }
    let mut bounds = b.clone();
    let declared: HashSet<String> = bounds.atoms.iter().cloned().collect();
    bounds.atoms.extend(atoms.into_iter().filter(|a| !declared.contains(a)));
    bounds.model_class = effective_class(sem, b.model_class);
    if sem == SemanticsId::WK {
        bounds.max_worlds = bounds.max_worlds.min(1);
    }

    let mut arena = FormulaArena::new();
    let gamma_ids: Vec<usize> = gamma.iter().map(|f| arena.intern(f)).collect();
    let goal_id = arena.intern(goal);
    for m in enumerate_models(&bounds) {
        if sem == SemanticsId::WK && !m.relation().is_empty() {
            continue;
        }
        let table = table3(&m, &arena, clause).expect("bounds cover every atom");
        for w in 0..m.world_count() {
            let premises_hold = gamma_ids.iter().all(|&g| table.get(g, w) == TruthValue3::T);
            if premises_hold && table.get(goal_id, w) != TruthValue3::T {
                let world = m.worlds()[w].clone();
                return Ok(CountermodelResult::Found(Countermodel { model: m, world }));
            }
        }
    }
    Ok(CountermodelResult::NoneWithinBounds)
}

/// Box-free formulas up to `max_depth` that are not U under the all-U
/// valuation. Weak Kleene has no tautologies, so this must be empty.
pub fn all_u_exceptions(atoms: &[String], max_depth: usize) -> Vec<Formula> {
    let formulas = enumerate_formulas(atoms, max_depth, false);
    let mut arena = FormulaArena::new();
    let ids: Vec<usize> = formulas.iter().map(|f| arena.intern(f)).collect();
    let m = KripkeModel::assemble(
        vec!["w0".to_string()],
        BTreeSet::new(),
        atoms.to_vec(),
        vec![vec![TruthValue3::U; atoms.len()]],
    );
    let table = table3(&m, &arena, BoxClause::Deontic).expect("atoms are declared");
    formulas
        .into_iter()
        .zip(ids)
        .filter(|&(_, id)| table.get(id, 0) != TruthValue3::U)
        .map(|(f, _)| f)
        .collect()
}
