//! Small hand-built derivations used as golden examples.

use super::{Derivation, RuleId, Sequent};
use crate::syntax::Formula;

fn p() -> Formula {
    Formula::atom("p")
}

fn q() -> Formula {
    Formula::atom("q")
}

/// `{p} ⊢ p | ~p`: Assume, NotNotI, AndI, then OrI2 with A = p, B = ~p.
pub fn excluded_middle_from_p() -> Derivation {
    let assume = Derivation::assume([p()], p());
    let nn = Formula::not(Formula::not(p()));
    let notnot = Derivation::new(RuleId::NotNotI, vec![assume.clone()], Sequent::new([p()], nn.clone()));
    let conj = Formula::and(p(), nn);
    let and = Derivation::new(RuleId::AndI, vec![assume, notnot], Sequent::new([p()], conj));
    Derivation::new(RuleId::OrI2, vec![and], Sequent::new([p()], Formula::excluded_middle(p())))
}

/// `{p, ~p} ⊢ q` by EFQ.
pub fn explosion() -> Derivation {
    let np = Formula::not(p());
    Derivation::new(
        RuleId::Efq,
        vec![Derivation::assume([p()], p()), Derivation::assume([np.clone()], np.clone())],
        Sequent::new([p(), np], q()),
    )
}

/// `{[]p, []q} ⊢ [](p & q)`: conjunction under the deontic box.
pub fn box_conjunction() -> Derivation {
    let and = Derivation::new(
        RuleId::AndI,
        vec![Derivation::assume([p()], p()), Derivation::assume([q()], q())],
        Sequent::new([p(), q()], Formula::and(p(), q())),
    );
    Derivation::new(
        RuleId::BoxIDeontic,
        vec![and],
        Sequent::new([Formula::boxed(p()), Formula::boxed(q())], Formula::boxed(Formula::and(p(), q()))),
    )
}

/// `{p | q} ⊢ q | p`: disjunction elimination with all three cases discharged.
pub fn or_commutes() -> Derivation {
    let (a, b) = (p(), q());
    let goal = Formula::or(b.clone(), a.clone());
    let major = Derivation::assume([Formula::or(a.clone(), b.clone())], Formula::or(a.clone(), b.clone()));

    // [p & q]: swap to q & p, then OrI3.
    let both = Formula::and(a.clone(), b.clone());
    let h = Derivation::assume([both.clone()], both.clone());
    let e2 = Derivation::new(RuleId::AndE2, vec![h.clone()], Sequent::new([both.clone()], b.clone()));
    let e1 = Derivation::new(RuleId::AndE1, vec![h], Sequent::new([both.clone()], a.clone()));
    let swapped = Derivation::new(
        RuleId::AndI,
        vec![e2, e1],
        Sequent::new([both.clone()], Formula::and(b.clone(), a.clone())),
    );
    let case1 = Derivation::new(RuleId::OrI3, vec![swapped], Sequent::new([both], goal.clone()));

    // [p & ~q]: ~q & p, then OrI1.
    let left = Formula::and(a.clone(), Formula::not(b.clone()));
    let h = Derivation::assume([left.clone()], left.clone());
    let e2 = Derivation::new(RuleId::AndE2, vec![h.clone()], Sequent::new([left.clone()], Formula::not(b.clone())));
    let e1 = Derivation::new(RuleId::AndE1, vec![h], Sequent::new([left.clone()], a.clone()));
    let swapped = Derivation::new(
        RuleId::AndI,
        vec![e2, e1],
        Sequent::new([left.clone()], Formula::and(Formula::not(b.clone()), a.clone())),
    );
    let case2 = Derivation::new(RuleId::OrI1, vec![swapped], Sequent::new([left], goal.clone()));

    // [~p & q]: q & ~p, then OrI2.
    let right = Formula::and(Formula::not(a.clone()), b.clone());
    let h = Derivation::assume([right.clone()], right.clone());
    let e2 = Derivation::new(RuleId::AndE2, vec![h.clone()], Sequent::new([right.clone()], b.clone()));
    let e1 = Derivation::new(RuleId::AndE1, vec![h], Sequent::new([right.clone()], Formula::not(a.clone())));
    let swapped = Derivation::new(
        RuleId::AndI,
        vec![e2, e1],
        Sequent::new([right.clone()], Formula::and(b.clone(), Formula::not(a.clone()))),
    );
    let case3 = Derivation::new(RuleId::OrI2, vec![swapped], Sequent::new([right], goal.clone()));

    Derivation::new(
        RuleId::OrE,
        vec![major, case1, case2, case3],
        Sequent::new([Formula::or(a, b)], goal),
    )
}

/// `{p | ~p} ⊢ [](p | ~p)` in the epistemic system: understanding persists.
pub fn understanding_persists() -> Derivation {
    let em = Formula::excluded_middle(p());
    Derivation::new(
        RuleId::BoxI2Epistemic,
        vec![Derivation::assume([em.clone()], em.clone())],
        Sequent::new([em.clone()], Formula::boxed(em)),
    )
}
