//! Finite Kripke models with three- or four-valued valuations, frame checks
//! for the epistemic class and S4, lifting to four values, and the JSON
//! model file format.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::syntax::is_atom_name;
use crate::truthval::{compress, lifts, TruthValue3, TruthValue4};

/// A finite Kripke model. Worlds and atoms are addressed by index; their
/// names keep declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel<V> {
    worlds: Vec<String>,
    atoms: Vec<String>,
    relation: BTreeSet<(usize, usize)>,
    successors: Vec<Vec<usize>>,
    // valuation[world][atom]
    valuation: Vec<Vec<V>>,
}

pub type KripkeModel3 = KripkeModel<TruthValue3>;
pub type KripkeModel4 = KripkeModel<TruthValue4>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("duplicate world id {0:?}")]
    DuplicateWorld(String),
    #[error("duplicate atom {0:?}")]
    DuplicateAtom(String),
    #[error("{0:?} is not a valid atom name")]
    InvalidAtom(String),
    #[error("relation entry {index} refers to undeclared world {world:?}")]
    UnknownWorldInRelation { index: usize, world: String },
    #[error("valuation lists undeclared world {0:?}")]
    UnknownWorldInValuation(String),
    #[error("valuation for world {world:?} lists undeclared atom {atom:?}")]
    UnknownAtomInValuation { world: String, atom: String },
    #[error("valuation is missing V({world}, {atom})")]
    MissingValuation { world: String, atom: String },
    #[error("V({world}, {atom}) has unknown truth value {value:?}")]
    BadTruthValue {
        world: String,
        atom: String,
        value: String,
    },
    #[error("world index {0} out of range")]
    WorldIndex(usize),
    #[error("valuation matrix has the wrong shape")]
    Shape,
    #[error("malformed model document at {location}: {message}")]
    Document { location: String, message: String },
}

impl<V: Copy> KripkeModel<V> {
    /// Builds a model from names, a relation over world names and a total
    /// valuation given as `valuation[world][atom]` in declaration order.
    pub fn new(
        worlds: Vec<String>,
        relation: &[(String, String)],
        atoms: Vec<String>,
        valuation: Vec<Vec<V>>,
    ) -> Result<Self, ModelError> {
        let index = world_index(&worlds)?;
        let mut pairs = BTreeSet::new();
        for (i, (s, t)) in relation.iter().enumerate() {
            let lookup = |w: &String| {
                index.get(w.as_str()).copied().ok_or_else(|| ModelError::UnknownWorldInRelation {
                    index: i,
                    world: w.clone(),
                })
            };
            pairs.insert((lookup(s)?, lookup(t)?));
        }
        Self::from_indices(worlds, pairs, atoms, valuation)
    }

    pub fn from_indices(
        worlds: Vec<String>,
        relation: BTreeSet<(usize, usize)>,
        atoms: Vec<String>,
        valuation: Vec<Vec<V>>,
    ) -> Result<Self, ModelError> {
        world_index(&worlds)?;
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !is_atom_name(a) {
                return Err(ModelError::InvalidAtom(a.clone()));
            }
            if !seen.insert(a.as_str()) {
                return Err(ModelError::DuplicateAtom(a.clone()));
            }
        }
        if let Some(&(s, t)) = relation.iter().find(|(s, t)| *s >= worlds.len() || *t >= worlds.len()) {
            return Err(ModelError::WorldIndex(s.max(t)));
        }
        if valuation.len() != worlds.len() || valuation.iter().any(|row| row.len() != atoms.len()) {
            return Err(ModelError::Shape);
        }
        Ok(Self::assemble(worlds, relation, atoms, valuation))
    }

    // Callers guarantee the invariants.
    pub(crate) fn assemble(
        worlds: Vec<String>,
        relation: BTreeSet<(usize, usize)>,
        atoms: Vec<String>,
        valuation: Vec<Vec<V>>,
    ) -> Self {
        let mut successors = vec![Vec::new(); worlds.len()];
        for &(s, t) in &relation {
            successors[s].push(t);
        }
        KripkeModel {
            worlds,
            atoms,
            relation,
            successors,
            valuation,
        }
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    pub fn successors(&self, world: usize) -> &[usize] {
        &self.successors[world]
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world_id(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn atom_id(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn value(&self, world: usize, atom: usize) -> V {
        self.valuation[world][atom]
    }

    pub fn value_of(&self, world: &str, atom: &str) -> Option<V> {
        Some(self.valuation[self.world_id(world)?][self.atom_id(atom)?])
    }

    pub fn valuation(&self) -> &[Vec<V>] {
        &self.valuation
    }

    pub fn related(&self, from: usize, to: usize) -> bool {
        self.relation.contains(&(from, to))
    }

    /// Relation pairs as world names, in index order.
    pub fn relation_names(&self) -> Vec<(String, String)> {
        self.relation
            .iter()
            .map(|&(s, t)| (self.worlds[s].clone(), self.worlds[t].clone()))
            .collect()
    }
}

fn world_index(worlds: &[String]) -> Result<HashMap<&str, usize>, ModelError> {
    if worlds.is_empty() {
        return Err(ModelError::NoWorlds);
    }
    let mut index = HashMap::new();
    for (i, w) in worlds.iter().enumerate() {
        if index.insert(w.as_str(), i).is_some() {
            return Err(ModelError::DuplicateWorld(w.clone()));
        }
    }
    Ok(index)
}

/// A world where an atom is U but a predecessor already had a classical value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassIIViolation {
    pub world: String,
    pub atom: String,
    pub predecessor: String,
}

impl fmt::Display for ClassIIViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V({}, {}) = U but predecessor {} has a classical value",
            self.world, self.atom, self.predecessor
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum S4Violation {
    MissingReflexive { world: String },
    MissingTransitive { from: String, via: String, to: String },
}

impl fmt::Display for S4Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S4Violation::MissingReflexive { world } => write!(f, "missing reflexive pair ({world}, {world})"),
            S4Violation::MissingTransitive { from, via, to } => {
                write!(f, "missing transitive pair ({from}, {to}) via {via}")
            }
        }
    }
}

/// Checks that U at a world forces U at every predecessor, for every atom.
pub fn validate_class_ii(m: &KripkeModel3) -> Vec<ClassIIViolation> {
    let mut violations = Vec::new();
    for &(t, s) in m.relation() {
        for (p, atom) in m.atoms().iter().enumerate() {
            if m.value(s, p) == TruthValue3::U && m.value(t, p) != TruthValue3::U {
                violations.push(ClassIIViolation {
                    world: m.worlds[s].clone(),
                    atom: atom.clone(),
                    predecessor: m.worlds[t].clone(),
                });
            }
        }
    }
    violations.sort();
    violations
}

pub(crate) fn is_class_ii(m: &KripkeModel3) -> bool {
    m.relation().iter().all(|&(t, s)| {
        (0..m.atoms.len()).all(|p| m.value(s, p) != TruthValue3::U || m.value(t, p) == TruthValue3::U)
    })
}

pub fn validate_s4<V: Copy>(m: &KripkeModel<V>) -> Vec<S4Violation> {
    let mut violations = Vec::new();
    for w in 0..m.world_count() {
        if !m.related(w, w) {
            violations.push(S4Violation::MissingReflexive {
                world: m.worlds[w].clone(),
            });
        }
    }
    for &(s, t) in m.relation() {
        for &u in m.successors(t) {
            if !m.related(s, u) {
                violations.push(S4Violation::MissingTransitive {
                    from: m.worlds[s].clone(),
                    via: m.worlds[t].clone(),
                    to: m.worlds[u].clone(),
                });
            }
        }
    }
    violations.sort();
    violations.dedup();
    violations
}

pub(crate) fn is_s4_relation(n: usize, relation: &BTreeSet<(usize, usize)>) -> bool {
    (0..n).all(|w| relation.contains(&(w, w)))
        && relation.iter().all(|&(s, t)| {
            relation
                .range((t, 0)..(t + 1, 0))
                .all(|&(_, u)| relation.contains(&(s, u)))
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelClass {
    All,
    ClassII,
    S4,
    S4AndClassII,
}

impl ModelClass {
    pub fn requires_class_ii(self) -> bool {
        matches!(self, ModelClass::ClassII | ModelClass::S4AndClassII)
    }

    pub fn requires_s4(self) -> bool {
        matches!(self, ModelClass::S4 | ModelClass::S4AndClassII)
    }

    pub fn admits(self, m: &KripkeModel3) -> bool {
        (!self.requires_s4() || is_s4_relation(m.world_count(), m.relation()))
            && (!self.requires_class_ii() || is_class_ii(m))
    }
}

impl FromStr for ModelClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(ModelClass::All),
            "ii" => Ok(ModelClass::ClassII),
            "s4" => Ok(ModelClass::S4),
            "s4-ii" | "ii-s4" => Ok(ModelClass::S4AndClassII),
            other => Err(format!("unknown model class {other:?} (expected all, ii, s4 or s4-ii)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("lift choice {chosen} for ({world}, {atom}) does not compress to {value}")]
    OutsidePreimage {
        world: String,
        atom: String,
        value: TruthValue3,
        chosen: TruthValue4,
    },
    #[error("lift choice matrix has the wrong shape")]
    Shape,
}

/// Replaces every three-valued entry by the chosen four-valued one;
/// `choice[world][atom]` must compress back to the original value.
pub fn lift_model(m: &KripkeModel3, choice: &[Vec<TruthValue4>]) -> Result<KripkeModel4, LiftError> {
    if choice.len() != m.world_count() || choice.iter().any(|row| row.len() != m.atoms.len()) {
        return Err(LiftError::Shape);
    }
    for (w, row) in choice.iter().enumerate() {
        for (p, &chosen) in row.iter().enumerate() {
            let value = m.value(w, p);
            if compress(chosen) != value {
                return Err(LiftError::OutsidePreimage {
                    world: m.worlds[w].clone(),
                    atom: m.atoms[p].clone(),
                    value,
                    chosen,
                });
            }
        }
    }
    Ok(KripkeModel::assemble(
        m.worlds.clone(),
        m.relation.clone(),
        m.atoms.clone(),
        choice.to_vec(),
    ))
}

/// Every lift choice for `m`: the product of [`lifts`] over all entries.
pub fn lift_choices(m: &KripkeModel3) -> impl Iterator<Item = Vec<Vec<TruthValue4>>> + '_ {
    let undetermined: Vec<(usize, usize)> = (0..m.world_count())
        .flat_map(|w| (0..m.atoms.len()).map(move |p| (w, p)))
        .filter(|&(w, p)| lifts(m.value(w, p)).len() > 1)
        .collect();
    let base: Vec<Vec<TruthValue4>> = m
        .valuation
        .iter()
        .map(|row| row.iter().map(|&v| lifts(v)[0]).collect())
        .collect();
    (0u64..1 << undetermined.len()).map(move |bits| {
        let mut choice = base.clone();
        for (i, &(w, p)) in undetermined.iter().enumerate() {
            choice[w][p] = lifts(m.value(w, p))[((bits >> i) & 1) as usize];
        }
        choice
    })
}

pub fn compress_model(m: &KripkeModel4) -> KripkeModel3 {
    let valuation = m
        .valuation
        .iter()
        .map(|row| row.iter().map(|&v| compress(v)).collect())
        .collect();
    KripkeModel::assemble(m.worlds.clone(), m.relation.clone(), m.atoms.clone(), valuation)
}

fn doc_err(location: impl Into<String>, message: impl Into<String>) -> ModelError {
    ModelError::Document {
        location: location.into(),
        message: message.into(),
    }
}

fn string_list(doc: &Map<String, Value>, key: &str) -> Result<Vec<String>, ModelError> {
    let items = doc
        .get(key)
        .ok_or_else(|| doc_err(key, "missing field"))?
        .as_array()
        .ok_or_else(|| doc_err(key, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| doc_err(format!("{key}[{i}]"), "expected a string"))
        })
        .collect()
}

/// Parses a model document:
/// `{"worlds": [..], "relation": [[s, t], ..], "atoms": [..], "valuation": {world: {atom: value}}}`.
pub fn load_model_generic<V: Copy + FromStr>(text: &str) -> Result<KripkeModel<V>, ModelError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| doc_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let doc = doc.as_object().ok_or_else(|| doc_err("top level", "expected an object"))?;
    let worlds = string_list(doc, "worlds")?;
    let atoms = string_list(doc, "atoms")?;
    let index = world_index(&worlds)?;

    let rel = doc
        .get("relation")
        .ok_or_else(|| doc_err("relation", "missing field"))?
        .as_array()
        .ok_or_else(|| doc_err("relation", "expected an array"))?;
    let mut relation = Vec::with_capacity(rel.len());
    for (i, pair) in rel.iter().enumerate() {
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| doc_err(format!("relation[{i}]"), "expected a pair of world ids"))?;
        let name = |v: &Value| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| doc_err(format!("relation[{i}]"), "world ids must be strings"))
        };
        relation.push((name(&pair[0])?, name(&pair[1])?));
    }

    let val = doc
        .get("valuation")
        .ok_or_else(|| doc_err("valuation", "missing field"))?
        .as_object()
        .ok_or_else(|| doc_err("valuation", "expected an object"))?;
    for (w, row) in val {
        if !index.contains_key(w.as_str()) {
            return Err(ModelError::UnknownWorldInValuation(w.clone()));
        }
        let row = row
            .as_object()
            .ok_or_else(|| doc_err(format!("valuation.{w}"), "expected an object"))?;
        if let Some(a) = row.keys().find(|a| !atoms.contains(a)) {
            return Err(ModelError::UnknownAtomInValuation {
                world: w.clone(),
                atom: a.clone(),
            });
        }
    }
    let mut valuation = Vec::with_capacity(worlds.len());
    for w in &worlds {
        let row = val.get(w).and_then(Value::as_object);
        let mut values = Vec::with_capacity(atoms.len());
        for a in &atoms {
            let missing = || ModelError::MissingValuation {
                world: w.clone(),
                atom: a.clone(),
            };
            let raw = row.and_then(|r| r.get(a)).ok_or_else(missing)?;
            let bad = || ModelError::BadTruthValue {
                world: w.clone(),
                atom: a.clone(),
                value: raw.to_string(),
            };
            let value = raw.as_str().ok_or_else(bad)?.parse::<V>().map_err(|_| bad())?;
            values.push(value);
        }
        valuation.push(values);
    }
    KripkeModel::new(worlds, &relation, atoms, valuation)
}

pub fn load_model(text: &str) -> Result<KripkeModel3, ModelError> {
    load_model_generic(text)
}

pub fn load_model4(text: &str) -> Result<KripkeModel4, ModelError> {
    load_model_generic(text)
}

pub fn model_to_json<V: Copy + fmt::Display>(m: &KripkeModel<V>) -> Value {
    let mut valuation = Map::new();
    for (w, name) in m.worlds.iter().enumerate() {
        let row: Map<String, Value> = m
            .atoms
            .iter()
            .enumerate()
            .map(|(p, a)| (a.clone(), Value::String(m.value(w, p).to_string())))
            .collect();
        valuation.insert(name.clone(), Value::Object(row));
    }
    json!({
        "worlds": m.worlds,
        "relation": m.relation_names().into_iter().map(|(s, t)| vec![s, t]).collect::<Vec<_>>(),
        "atoms": m.atoms,
        "valuation": valuation,
    })
}

/// Canonical pretty-printed document: worlds and atoms in declaration
/// order, relation pairs sorted by world index.
pub fn save_model<V: Copy + fmt::Display>(m: &KripkeModel<V>) -> String {
    let mut text = serde_json::to_string_pretty(&model_to_json(m)).expect("model serializes");
    text.push('\n');
    text
}
