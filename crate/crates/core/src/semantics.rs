//! Evaluators: weak Kleene over a single valuation, the two three-valued
//! modal semantics, and their four-valued counterparts.
//!
//! Deontic box (`SemI`): `[]A` is T when A is T at every successor, U when
//! some successor gives U, F otherwise.
//!
//! Epistemic box (`SemII`): `[]A` is U when A is U at the current world,
//! T when additionally A is T at every successor, F otherwise. Only defined
//! on models where understanding persists along the relation (class II).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arena::{FormulaArena, FormulaId, Node};
use crate::kripke::{compress_model, validate_class_ii, ClassIIViolation, KripkeModel, KripkeModel3, KripkeModel4};
use crate::syntax::Formula;
use crate::truthval::{fv_and, fv_not, fv_or, wk_and, wk_not, wk_or, TruthValue3, TruthValue4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsId {
    WK,
    SemI,
    SemII,
    FourI,
    FourII,
}

impl SemanticsId {
    pub fn is_four_valued(self) -> bool {
        matches!(self, SemanticsId::FourI | SemanticsId::FourII)
    }
}

impl FromStr for SemanticsId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wk" => Ok(SemanticsId::WK),
            "I" | "i" => Ok(SemanticsId::SemI),
            "II" | "ii" => Ok(SemanticsId::SemII),
            "4I" | "4i" => Ok(SemanticsId::FourI),
            "4II" | "4ii" => Ok(SemanticsId::FourII),
            other => Err(format!("unknown semantics {other:?} (expected wk, I, II, 4I or 4II)")),
        }
    }
}

/// Which box clause a three-valued evaluation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxClause {
    Deontic,
    Epistemic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("'[]' is not part of the propositional language")]
    ModalFormula,
    #[error("no truth value for atom {0:?}")]
    MissingAtom(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("semantics II needs a class-II model; {} violation(s), first: {}", .0.len(), .0[0])]
    NotClassII(Vec<ClassIIViolation>),
    #[error("{0:?} needs a {1}-valued model")]
    WrongModel(SemanticsId, &'static str),
}

/// Values of every arena formula at every world, laid out `[formula][world]`.
#[derive(Debug, Clone)]
pub struct Table<V> {
    worlds: usize,
    values: Vec<V>,
}

impl<V: Copy> Table<V> {
    pub fn get(&self, id: FormulaId, world: usize) -> V {
        self.values[id * self.worlds + world]
    }

    pub fn row(&self, id: FormulaId) -> &[V] {
        &self.values[id * self.worlds..(id + 1) * self.worlds]
    }
}

fn atom_mapping<V: Copy>(m: &KripkeModel<V>, arena: &FormulaArena) -> Result<Vec<usize>, EvalError> {
    arena
        .atoms()
        .iter()
        .map(|a| m.atom_id(a).ok_or_else(|| EvalError::MissingAtom(a.clone())))
        .collect()
}

/// Evaluates every formula in `arena` at every world of `m`.
///
/// No frame condition is checked here; callers that need class II check it
/// first. Searches use this directly to probe rules outside their class.
pub fn table3(m: &KripkeModel3, arena: &FormulaArena, clause: BoxClause) -> Result<Table<TruthValue3>, EvalError> {
    let atoms = atom_mapping(m, arena)?;
    let n = m.world_count();
    let mut values: Vec<TruthValue3> = Vec::with_capacity(arena.len() * n);
    for node in arena.nodes() {
        for w in 0..n {
            let at = |id: FormulaId| values[id * n + w];
            let v = match *node {
                Node::Atom(a) => m.value(w, atoms[a]),
                Node::Not(a) => wk_not(at(a)),
                Node::And(a, b) => wk_and(at(a), at(b)),
                Node::Or(a, b) => wk_or(at(a), at(b)),
                Node::Box(a) => {
                    let succ = m.successors(w).iter().map(|&t| values[a * n + t]);
                    match clause {
                        BoxClause::Deontic => deontic_box(succ),
                        BoxClause::Epistemic => epistemic_box(at(a), succ),
                    }
                }
            };
            values.push(v);
        }
    }
    Ok(Table { worlds: n, values })
}

fn deontic_box(successors: impl Iterator<Item = TruthValue3>) -> TruthValue3 {
    let mut all_true = true;
    for v in successors {
        match v {
            TruthValue3::U => return TruthValue3::U,
            TruthValue3::F => all_true = false,
            TruthValue3::T => {}
        }
    }
    if all_true {
        TruthValue3::T
    } else {
        TruthValue3::F
    }
}

fn epistemic_box(here: TruthValue3, mut successors: impl Iterator<Item = TruthValue3>) -> TruthValue3 {
    if here == TruthValue3::U {
        TruthValue3::U
    } else if successors.all(|v| v == TruthValue3::T) {
        TruthValue3::T
    } else {
        TruthValue3::F
    }
}

/// Four-valued counterpart of [`table3`]. The first coordinate of `[]A` is
/// classical over successors in both variants; the second is taken over
/// successors (`Deontic`) or at the current world (`Epistemic`).
pub fn table4(m: &KripkeModel4, arena: &FormulaArena, clause: BoxClause) -> Result<Table<TruthValue4>, EvalError> {
    let atoms = atom_mapping(m, arena)?;
    let n = m.world_count();
    let mut values: Vec<TruthValue4> = Vec::with_capacity(arena.len() * n);
    for node in arena.nodes() {
        for w in 0..n {
            let at = |id: FormulaId| values[id * n + w];
            let v = match *node {
                Node::Atom(a) => m.value(w, atoms[a]),
                Node::Not(a) => fv_not(at(a)),
                Node::And(a, b) => fv_and(at(a), at(b)),
                Node::Or(a, b) => fv_or(at(a), at(b)),
                Node::Box(a) => {
                    let succ = m.successors(w);
                    let first = succ.iter().all(|&t| values[a * n + t].first());
                    let second = match clause {
                        BoxClause::Deontic => succ.iter().all(|&t| values[a * n + t].second()),
                        BoxClause::Epistemic => at(a).second(),
                    };
                    TruthValue4::from_bits(first, second)
                }
            };
            values.push(v);
        }
    }
    Ok(Table { worlds: n, values })
}

fn world<V: Copy>(m: &KripkeModel<V>, name: &str) -> Result<usize, EvalError> {
    m.world_id(name).ok_or_else(|| EvalError::UnknownWorld(name.to_string()))
}

fn single(f: &Formula) -> (FormulaArena, FormulaId) {
    let mut arena = FormulaArena::new();
    let id = arena.intern(f);
    (arena, id)
}

fn wk_rec(v: &BTreeMap<String, TruthValue3>, f: &Formula) -> Result<TruthValue3, EvalError> {
    Ok(match f {
        Formula::Atom(name) => *v.get(name).ok_or_else(|| EvalError::MissingAtom(name.clone()))?,
        Formula::Not(a) => wk_not(wk_rec(v, a)?),
        Formula::And(a, b) => wk_and(wk_rec(v, a)?, wk_rec(v, b)?),
        Formula::Or(a, b) => wk_or(wk_rec(v, a)?, wk_rec(v, b)?),
        Formula::Box(_) => return Err(EvalError::ModalFormula),
    })
}

/// Weak Kleene value of a box-free formula under a propositional valuation.
pub fn eval_wk(v: &BTreeMap<String, TruthValue3>, f: &Formula) -> Result<TruthValue3, EvalError> {
    if f.is_modal() {
        return Err(EvalError::ModalFormula);
    }
    wk_rec(v, f)
}

pub fn eval_i(m: &KripkeModel3, s: &str, f: &Formula) -> Result<TruthValue3, EvalError> {
    let s = world(m, s)?;
    let (arena, id) = single(f);
    Ok(table3(m, &arena, BoxClause::Deontic)?.get(id, s))
}

/// Refuses models outside class II and reports why.
pub fn eval_ii(m: &KripkeModel3, s: &str, f: &Formula) -> Result<TruthValue3, EvalError> {
    let s = world(m, s)?;
    let violations = validate_class_ii(m);
    if !violations.is_empty() {
        return Err(EvalError::NotClassII(violations));
    }
    let (arena, id) = single(f);
    Ok(table3(m, &arena, BoxClause::Epistemic)?.get(id, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourVariant {
    FourI,
    FourII,
}

pub fn eval_4v(m: &KripkeModel4, s: &str, f: &Formula, which: FourVariant) -> Result<TruthValue4, EvalError> {
    let s = world(m, s)?;
    let clause = match which {
        FourVariant::FourI => BoxClause::Deontic,
        FourVariant::FourII => {
            let violations = validate_class_ii(&compress_model(m));
            if !violations.is_empty() {
                return Err(EvalError::NotClassII(violations));
            }
            BoxClause::Epistemic
        }
    };
    let (arena, id) = single(f);
    Ok(table4(m, &arena, clause)?.get(id, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Three(TruthValue3),
    Four(TruthValue4),
}

impl Value {
    /// The designated values are T and (T1, T2).
    pub fn is_designated(self) -> bool {
        matches!(self, Value::Three(TruthValue3::T) | Value::Four(TruthValue4::T1T2))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Three(v) => v.fmt(f),
            Value::Four(v) => v.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum ModelRef<'a> {
    Three(&'a KripkeModel3),
    Four(&'a KripkeModel4),
}

/// Dispatches to the evaluator named by `sem`. Weak Kleene reads the
/// valuation of world `s` alone and rejects `[]`.
pub fn evaluate(m: ModelRef<'_>, s: &str, f: &Formula, sem: SemanticsId) -> Result<Value, EvalError> {
    match (sem, m) {
        (SemanticsId::WK, ModelRef::Three(m)) => {
            let w = world(m, s)?;
            let v = m.atoms().iter().cloned().zip(m.valuation()[w].iter().copied()).collect();
            eval_wk(&v, f).map(Value::Three)
        }
        (SemanticsId::SemI, ModelRef::Three(m)) => eval_i(m, s, f).map(Value::Three),
        (SemanticsId::SemII, ModelRef::Three(m)) => eval_ii(m, s, f).map(Value::Three),
        (SemanticsId::FourI, ModelRef::Four(m)) => eval_4v(m, s, f, FourVariant::FourI).map(Value::Four),
        (SemanticsId::FourII, ModelRef::Four(m)) => eval_4v(m, s, f, FourVariant::FourII).map(Value::Four),
        (sem, _) if sem.is_four_valued() => Err(EvalError::WrongModel(sem, "four")),
        (sem, _) => Err(EvalError::WrongModel(sem, "three")),
    }
}

pub fn holds(m: ModelRef<'_>, s: &str, f: &Formula, sem: SemanticsId) -> Result<bool, EvalError> {
    evaluate(m, s, f, sem).map(Value::is_designated)
}
