//! Natural deduction for the deontic system (I), the epistemic system (II)
//! and their S4 variants, presented as trees of sequents `Γ ⊢ A`.
//!
//! Each node names the rule it claims to instantiate. The checker verifies
//! every node independently against its premises' conclusions and reports
//! all failures with their tree address.

mod file;
pub mod samples;
mod generate;
mod instances;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{render, Formula};

pub use file::{derivation_to_json, load_derivation, save_derivation, ProofFileError};
pub use generate::{bounded_derivations, theorems_within};
pub use instances::{rule_instances, subsets_up_to, RuleInstance};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub assumptions: BTreeSet<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(assumptions: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Self {
        Sequent {
            assumptions: assumptions.into_iter().collect(),
            conclusion,
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gamma: Vec<String> = self.assumptions.iter().map(render).collect();
        write!(f, "{{{}}} |- {}", gamma.join(", "), render(&self.conclusion))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Assume,
    Weaken,
    Efq,
    NotNotI,
    NotNotE,
    OrI1,
    OrI2,
    OrI3,
    OrE,
    AndI,
    AndE1,
    AndE2,
    NegOrI,
    NegOrE,
    NegAndI,
    NegAndE,
    /// `Γ ⊢ A` gives `□Γ ⊢ □A`.
    BoxIDeontic,
    /// `□(A | ~A)` gives `□A | ~□A`.
    NegBoxIDeontic,
    NegBoxEDeontic,
    /// `□Γ ⊢ A` gives `□Γ ⊢ □A` (deontic S4).
    BoxIPrimeS4,
    BoxES4,
    /// `Γ ⊢ A` gives `{A | ~A} ∪ □Γ ⊢ □A`.
    BoxI1Epistemic,
    /// `A | ~A` gives `□(A | ~A)`.
    BoxI2Epistemic,
    /// `A | ~A` gives `□A | ~□A`.
    NegBoxIEpistemic,
    NegBoxEEpistemic,
    /// `□Γ ⊢ A` gives `□Γ ⊢ □A` (epistemic S4).
    BoxI1PrimeS4,
}

impl RuleId {
    pub const ALL: [RuleId; 26] = [
        RuleId::Assume,
        RuleId::Weaken,
        RuleId::Efq,
        RuleId::NotNotI,
        RuleId::NotNotE,
        RuleId::OrI1,
        RuleId::OrI2,
        RuleId::OrI3,
        RuleId::OrE,
        RuleId::AndI,
        RuleId::AndE1,
        RuleId::AndE2,
        RuleId::NegOrI,
        RuleId::NegOrE,
        RuleId::NegAndI,
        RuleId::NegAndE,
        RuleId::BoxIDeontic,
        RuleId::NegBoxIDeontic,
        RuleId::NegBoxEDeontic,
        RuleId::BoxIPrimeS4,
        RuleId::BoxES4,
        RuleId::BoxI1Epistemic,
        RuleId::BoxI2Epistemic,
        RuleId::NegBoxIEpistemic,
        RuleId::NegBoxEEpistemic,
        RuleId::BoxI1PrimeS4,
    ];

    /// Name used in proof files.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Assume => "Assume",
            RuleId::Weaken => "Weaken",
            RuleId::Efq => "EFQ",
            RuleId::NotNotI => "NotNotI",
            RuleId::NotNotE => "NotNotE",
            RuleId::OrI1 => "OrI1",
            RuleId::OrI2 => "OrI2",
            RuleId::OrI3 => "OrI3",
            RuleId::OrE => "OrE",
            RuleId::AndI => "AndI",
            RuleId::AndE1 => "AndE1",
            RuleId::AndE2 => "AndE2",
            RuleId::NegOrI => "NegOrI",
            RuleId::NegOrE => "NegOrE",
            RuleId::NegAndI => "NegAndI",
            RuleId::NegAndE => "NegAndE",
            RuleId::BoxIDeontic => "BoxI_I",
            RuleId::NegBoxIDeontic => "NegBoxI_I",
            RuleId::NegBoxEDeontic => "NegBoxE_I",
            RuleId::BoxIPrimeS4 => "BoxIprime_S4",
            RuleId::BoxES4 => "BoxE_S4",
            RuleId::BoxI1Epistemic => "BoxI1_II",
            RuleId::BoxI2Epistemic => "BoxI2_II",
            RuleId::NegBoxIEpistemic => "NegBoxI_II",
            RuleId::NegBoxEEpistemic => "NegBoxE_II",
            RuleId::BoxI1PrimeS4 => "BoxI1prime_S4",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RuleId::Assume => 0,
            RuleId::Efq | RuleId::AndI => 2,
            RuleId::OrE => 4,
            _ => 1,
        }
    }

    /// The box-introduction rules transform a whole sequent: they preserve
    /// validity in a model, not truth at a single world.
    pub fn is_local(self) -> bool {
        !matches!(
            self,
            RuleId::BoxIDeontic | RuleId::BoxIPrimeS4 | RuleId::BoxI1Epistemic | RuleId::BoxI1PrimeS4
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemId {
    SysI,
    SysII,
    SysIS4,
    SysIIS4,
}

const SHARED_RULES: [RuleId; 16] = [
    RuleId::Assume,
    RuleId::Weaken,
    RuleId::Efq,
    RuleId::NotNotI,
    RuleId::NotNotE,
    RuleId::OrI1,
    RuleId::OrI2,
    RuleId::OrI3,
    RuleId::OrE,
    RuleId::AndI,
    RuleId::AndE1,
    RuleId::AndE2,
    RuleId::NegOrI,
    RuleId::NegOrE,
    RuleId::NegAndI,
    RuleId::NegAndE,
];

impl SystemId {
    pub const ALL: [SystemId; 4] = [SystemId::SysI, SystemId::SysII, SystemId::SysIS4, SystemId::SysIIS4];

    pub fn name(self) -> &'static str {
        match self {
            SystemId::SysI => "I",
            SystemId::SysII => "II",
            SystemId::SysIS4 => "I-s4",
            SystemId::SysIIS4 => "II-s4",
        }
    }

    fn modal_rules(self) -> &'static [RuleId] {
        match self {
            SystemId::SysI => &[RuleId::BoxIDeontic, RuleId::NegBoxIDeontic, RuleId::NegBoxEDeontic],
            SystemId::SysIS4 => &[
                RuleId::BoxIPrimeS4,
                RuleId::BoxES4,
                RuleId::NegBoxIDeontic,
                RuleId::NegBoxEDeontic,
            ],
            SystemId::SysII => &[
                RuleId::BoxI1Epistemic,
                RuleId::BoxI2Epistemic,
                RuleId::NegBoxIEpistemic,
                RuleId::NegBoxEEpistemic,
            ],
            SystemId::SysIIS4 => &[
                RuleId::BoxI1PrimeS4,
                RuleId::BoxES4,
                RuleId::BoxI2Epistemic,
                RuleId::NegBoxIEpistemic,
                RuleId::NegBoxEEpistemic,
            ],
        }
    }

    /// Every rule usable in this system, shared propositional rules first.
    pub fn rules(self) -> Vec<RuleId> {
        SHARED_RULES.iter().chain(self.modal_rules()).copied().collect()
    }

    pub fn allows(self, rule: RuleId) -> bool {
        SHARED_RULES.contains(&rule) || self.modal_rules().contains(&rule)
    }

    pub fn is_epistemic(self) -> bool {
        matches!(self, SystemId::SysII | SystemId::SysIIS4)
    }

    pub fn is_s4(self) -> bool {
        matches!(self, SystemId::SysIS4 | SystemId::SysIIS4)
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemId::ALL
            .into_iter()
            .find(|sys| sys.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown system {s:?} (expected I, II, I-s4 or II-s4)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: RuleId,
    pub premises: Vec<Derivation>,
    pub conclusion: Sequent,
}

impl Derivation {
    pub fn new(rule: RuleId, premises: Vec<Derivation>, conclusion: Sequent) -> Self {
        Derivation {
            rule,
            premises,
            conclusion,
        }
    }

    pub fn assume(assumptions: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Self {
        Derivation::new(RuleId::Assume, Vec::new(), Sequent::new(assumptions, conclusion))
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Node at a tree address, if present.
    pub fn node(&self, address: &[usize]) -> Option<&Derivation> {
        match address.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.premises.get(i)?.node(rest),
        }
    }

    pub fn node_mut(&mut self, address: &[usize]) -> Option<&mut Derivation> {
        match address.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.premises.get_mut(i)?.node_mut(rest),
        }
    }

    /// All node addresses in pre-order.
    pub fn addresses(&self) -> Vec<NodeAddress> {
        fn walk(d: &Derivation, path: &mut Vec<usize>, out: &mut Vec<NodeAddress>) {
            out.push(NodeAddress(path.clone()));
            for (i, p) in d.premises.iter().enumerate() {
                path.push(i);
                walk(p, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Path from the root: the i-th entry picks the i-th premise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeAddress(pub Vec<usize>);

impl fmt::Display for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{address} ({rule}): {message}")]
pub struct CheckError {
    pub address: NodeAddress,
    pub rule: RuleId,
    pub message: String,
}

pub fn box_image<'a>(gamma: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Formula> {
    gamma.into_iter().map(|b| Formula::boxed(b.clone())).collect()
}

/// Checks every node of `d` against the rules of `sys`.
pub fn check(d: &Derivation, sys: SystemId) -> Result<(), Vec<CheckError>> {
    let mut errors = Vec::new();
    check_tree(d, sys, &mut Vec::new(), &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn check_tree(d: &Derivation, sys: SystemId, path: &mut Vec<usize>, errors: &mut Vec<CheckError>) {
    let fail = |message: String| CheckError {
        address: NodeAddress(path.clone()),
        rule: d.rule,
        message,
    };
    if !sys.allows(d.rule) {
        errors.push(fail(format!("rule {} is not part of system {}", d.rule, sys)));
    } else if d.premises.len() != d.rule.arity() {
        errors.push(fail(format!(
            "expected {} premise(s), found {}",
            d.rule.arity(),
            d.premises.len()
        )));
    } else {
        let premises: Vec<&Sequent> = d.premises.iter().map(|p| &p.conclusion).collect();
        if let Err(message) = check_step(d.rule, &premises, &d.conclusion) {
            errors.push(fail(message));
        }
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_tree(p, sys, path, errors);
        path.pop();
    }
}

fn union<'a>(sets: impl IntoIterator<Item = &'a BTreeSet<Formula>>) -> BTreeSet<Formula> {
    sets.into_iter().flatten().cloned().collect()
}

fn expect_formula(what: &str, found: &Formula, expected: &Formula) -> Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("{what} should be {} but is {}", render(expected), render(found)))
    }
}

fn expect_assumptions(found: &BTreeSet<Formula>, expected: &BTreeSet<Formula>) -> Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        let show = |s: &BTreeSet<Formula>| s.iter().map(render).collect::<Vec<_>>().join(", ");
        Err(format!(
            "assumptions should be {{{}}} but are {{{}}}",
            show(expected),
            show(found)
        ))
    }
}

fn shape<'a, T>(what: &str, f: &'a Formula, view: impl Fn(&'a Formula) -> Option<T>, form: &str) -> Result<T, String> {
    view(f).ok_or_else(|| format!("{what} {} does not have the form {form}", render(f)))
}

/// The shape of a one-premise propositional or modal rule: returns the
/// conclusion formula demanded by the premise formula.
pub(crate) fn unary_conclusion(rule: RuleId, premise: &Formula) -> Result<Formula, String> {
    let p = "premise";
    Ok(match rule {
        RuleId::NotNotI => Formula::not(Formula::not(premise.clone())),
        RuleId::NotNotE => shape(p, premise, |f| f.as_not()?.as_not(), "~~A")?.clone(),
        RuleId::OrI1 => {
            let (na, b) = shape(p, premise, Formula::as_and, "~A & B")?;
            let a = shape(p, na, Formula::as_not, "~A & B")?;
            Formula::or(a.clone(), b.clone())
        }
        RuleId::OrI2 => {
            let (a, nb) = shape(p, premise, Formula::as_and, "A & ~B")?;
            let b = shape(p, nb, Formula::as_not, "A & ~B")?;
            Formula::or(a.clone(), b.clone())
        }
        RuleId::OrI3 => {
            let (a, b) = shape(p, premise, Formula::as_and, "A & B")?;
            Formula::or(a.clone(), b.clone())
        }
        RuleId::AndE1 => shape(p, premise, Formula::as_and, "A & B")?.0.clone(),
        RuleId::AndE2 => shape(p, premise, Formula::as_and, "A & B")?.1.clone(),
        RuleId::NegOrI => {
            let (na, nb) = shape(p, premise, Formula::as_and, "~A & ~B")?;
            let a = shape(p, na, Formula::as_not, "~A & ~B")?;
            let b = shape(p, nb, Formula::as_not, "~A & ~B")?;
            Formula::not(Formula::or(a.clone(), b.clone()))
        }
        RuleId::NegOrE => {
            let (a, b) = shape(p, premise, |f| f.as_not()?.as_or(), "~(A | B)")?;
            Formula::and(Formula::not(a.clone()), Formula::not(b.clone()))
        }
        RuleId::NegAndI => {
            let (na, nb) = shape(p, premise, Formula::as_or, "~A | ~B")?;
            let a = shape(p, na, Formula::as_not, "~A | ~B")?;
            let b = shape(p, nb, Formula::as_not, "~A | ~B")?;
            Formula::not(Formula::and(a.clone(), b.clone()))
        }
        RuleId::NegAndE => {
            let (a, b) = shape(p, premise, |f| f.as_not()?.as_and(), "~(A & B)")?;
            Formula::or(Formula::not(a.clone()), Formula::not(b.clone()))
        }
        RuleId::NegBoxIDeontic => {
            let a = shape(p, premise, |f| f.as_box()?.as_excluded_middle(), "[](A | ~A)")?;
            Formula::excluded_middle(Formula::boxed(a.clone()))
        }
        RuleId::NegBoxEDeontic => {
            let a = shape(p, premise, |f| f.as_excluded_middle()?.as_box(), "[]A | ~[]A")?;
            Formula::boxed(Formula::excluded_middle(a.clone()))
        }
        RuleId::BoxES4 => shape(p, premise, Formula::as_box, "[]A")?.clone(),
        RuleId::BoxI2Epistemic => {
            shape(p, premise, Formula::as_excluded_middle, "A | ~A")?;
            Formula::boxed(premise.clone())
        }
        RuleId::NegBoxIEpistemic => {
            let a = shape(p, premise, Formula::as_excluded_middle, "A | ~A")?;
            Formula::excluded_middle(Formula::boxed(a.clone()))
        }
        RuleId::NegBoxEEpistemic => {
            let a = shape(p, premise, |f| f.as_excluded_middle()?.as_box(), "[]A | ~[]A")?;
            Formula::excluded_middle(a.clone())
        }
        other => return Err(format!("{other} is not a single-premise formula rule")),
    })
}

/// The discharged assumptions of the three minor premises of `OrE`.
pub(crate) fn or_elim_discharges(a: &Formula, b: &Formula) -> [Formula; 3] {
    [
        Formula::and(a.clone(), b.clone()),
        Formula::and(a.clone(), Formula::not(b.clone())),
        Formula::and(Formula::not(a.clone()), b.clone()),
    ]
}

/// Verifies one inference step; `premises` are the premise conclusions.
pub fn check_step(rule: RuleId, premises: &[&Sequent], conclusion: &Sequent) -> Result<(), String> {
    if premises.len() != rule.arity() {
        return Err(format!("expected {} premise(s), found {}", rule.arity(), premises.len()));
    }
    let concl = &conclusion.conclusion;
    match rule {
        RuleId::Assume => {
            if conclusion.assumptions.contains(concl) {
                Ok(())
            } else {
                Err(format!("{} is not among the assumptions", render(concl)))
            }
        }
        RuleId::Weaken => {
            let prem = premises[0];
            expect_formula("conclusion", concl, &prem.conclusion)?;
            if prem.assumptions.is_subset(&conclusion.assumptions) {
                Ok(())
            } else {
                Err("weakening may only add assumptions".to_string())
            }
        }
        RuleId::Efq => {
            let (pos, neg) = (premises[0], premises[1]);
            expect_formula(
                "second premise",
                &neg.conclusion,
                &Formula::not(pos.conclusion.clone()),
            )?;
            expect_assumptions(&conclusion.assumptions, &union([&pos.assumptions, &neg.assumptions]))
        }
        RuleId::AndI => {
            let (l, r) = (premises[0], premises[1]);
            expect_formula(
                "conclusion",
                concl,
                &Formula::and(l.conclusion.clone(), r.conclusion.clone()),
            )?;
            expect_assumptions(&conclusion.assumptions, &union([&l.assumptions, &r.assumptions]))
        }
        RuleId::OrE => {
            let major = premises[0];
            let (a, b) = shape("major premise", &major.conclusion, Formula::as_or, "A | B")?;
            let discharged = or_elim_discharges(a, b);
            let mut expected = major.assumptions.clone();
            for (minor, d) in premises[1..].iter().zip(&discharged) {
                expect_formula("minor premise", &minor.conclusion, concl)?;
                expected.extend(minor.assumptions.iter().filter(|f| *f != d).cloned());
            }
            expect_assumptions(&conclusion.assumptions, &expected)
        }
        RuleId::BoxIDeontic => {
            let prem = premises[0];
            expect_formula("conclusion", concl, &Formula::boxed(prem.conclusion.clone()))?;
            expect_assumptions(&conclusion.assumptions, &box_image(&prem.assumptions))
        }
        RuleId::BoxI1Epistemic => {
            let prem = premises[0];
            expect_formula("conclusion", concl, &Formula::boxed(prem.conclusion.clone()))?;
            let mut expected = box_image(&prem.assumptions);
            expected.insert(Formula::excluded_middle(prem.conclusion.clone()));
            expect_assumptions(&conclusion.assumptions, &expected)
        }
        RuleId::BoxIPrimeS4 | RuleId::BoxI1PrimeS4 => {
            let prem = premises[0];
            if let Some(f) = prem.assumptions.iter().find(|f| f.as_box().is_none()) {
                return Err(format!("assumption {} is not of the form []B", render(f)));
            }
            expect_formula("conclusion", concl, &Formula::boxed(prem.conclusion.clone()))?;
            expect_assumptions(&conclusion.assumptions, &prem.assumptions)
        }
        _ => {
            let prem = premises[0];
            let expected = unary_conclusion(rule, &prem.conclusion)?;
            expect_formula("conclusion", concl, &expected)?;
            expect_assumptions(&conclusion.assumptions, &prem.assumptions)
        }
    }
}

#[cfg(test)]
mod tests;
