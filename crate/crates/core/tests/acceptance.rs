//! Acceptance suite. Each test prints one `PASS`/`FAIL` line before
//! asserting, so `cargo test --test acceptance -- --nocapture` gives a
//! readable summary.

use std::time::{Duration, Instant};

use tvml::kripke::ModelClass;
use tvml::proof::{bounded_derivations, check, samples, Derivation, NodeAddress, RuleId, Sequent, SystemId};
use tvml::search::{
    all_u_exceptions, correspondence_check, enumerate_formulas, find_countermodel, persistence_check,
    rule_soundness_report, Bounds, CountermodelResult, HarnessOptions,
};
use tvml::semantics::SemanticsId;
use tvml::syntax::{parse, Formula};
use tvml::truthval::{compress, fv_apply, wk_and, wk_apply, wk_not, wk_or, Connective, TruthValue3, TruthValue4};

fn report(n: u32, name: &str, ok: bool, elapsed: Duration, limit: Duration, detail: &str) {
    let ok = ok && elapsed <= limit;
    println!(
        "[{}] {n:>2} {name}: {detail} ({:.2}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "{name}: {detail}");
}

fn tv(c: char) -> TruthValue3 {
    match c {
        'T' => TruthValue3::T,
        'U' => TruthValue3::U,
        'F' => TruthValue3::F,
        _ => unreachable!(),
    }
}

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn bounds(class: ModelClass) -> Bounds {
    Bounds::new(2, &["p", "q"], 2, class)
}

#[test]
fn truth_tables() {
    let start = Instant::now();
    // Rows are the left operand, columns the right, both in order T U F.
    let conj = ["TUF", "UUU", "FUF"];
    let disj = ["TUT", "UUU", "TUF"];
    let neg = "FUT";
    let order = ['T', 'U', 'F'];
    let mut checked = 0;
    let mut wrong = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        checked += 1;
        if wk_not(tv(a)) != tv(neg.as_bytes()[i] as char) {
            wrong.push(format!("~{a}"));
        }
        for (j, &b) in order.iter().enumerate() {
            checked += 2;
            if wk_and(tv(a), tv(b)) != tv(conj[i].as_bytes()[j] as char) {
                wrong.push(format!("{a}&{b}"));
            }
            if wk_or(tv(a), tv(b)) != tv(disj[i].as_bytes()[j] as char) {
                wrong.push(format!("{a}|{b}"));
            }
        }
    }
    let ok = checked == 21 && wrong.is_empty();
    report(1, "truth tables", ok, start.elapsed(), Duration::from_secs(1), &format!("{checked} entries, wrong: {wrong:?}"));
}

/// Independent two-bit model of the four values: (classical bit, understood bit).
fn bits(v: TruthValue4) -> (bool, bool) {
    match v {
        TruthValue4::T1T2 => (true, true),
        TruthValue4::T1F2 => (true, false),
        TruthValue4::F1T2 => (false, true),
        _ => (false, false),
    }
}

fn oracle_compress(v: TruthValue4) -> TruthValue3 {
    match bits(v) {
        (_, false) => TruthValue3::U,
        (true, true) => TruthValue3::T,
        (false, true) => TruthValue3::F,
    }
}

#[test]
fn compression_is_a_homomorphism() {
    let start = Instant::now();
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for c in Connective::ALL {
        for a in TruthValue4::ALL {
            let seconds: Vec<Option<TruthValue4>> = if c.arity() == 1 {
                vec![None]
            } else {
                TruthValue4::ALL.iter().copied().map(Some).collect()
            };
            for b in seconds {
                cases += 1;
                let lhs = compress(fv_apply(c, a, b).unwrap());
                let rhs = wk_apply(c, compress(a), b.map(compress)).unwrap();
                let (a1, a2) = bits(a);
                let (b1, b2) = b.map(bits).unwrap_or((false, true));
                let lifted = match c {
                    Connective::Neg => (!a1, a2),
                    Connective::Conj => (a1 && b1, a2 && b2),
                    Connective::Disj => (a1 || b1, a2 && b2),
                };
                let by_hand = oracle_compress(match lifted {
                    (true, true) => TruthValue4::T1T2,
                    (true, false) => TruthValue4::T1F2,
                    (false, true) => TruthValue4::F1T2,
                    (false, false) => TruthValue4::F1F2,
                });
                if lhs != rhs || lhs != by_hand || compress(a) != oracle_compress(a) {
                    mismatches.push(format!("{c:?} {a:?} {b:?}"));
                }
            }
        }
    }
    let ok = cases == 36 && mismatches.is_empty();
    report(2, "homomorphism", ok, start.elapsed(), Duration::from_secs(1), &format!("{cases} cases, mismatches: {mismatches:?}"));
}

#[test]
fn no_tautology() {
    let start = Instant::now();
    let atoms = vec!["p".to_string(), "q".to_string()];
    let count = enumerate_formulas(&atoms, 3, false).len();
    let exceptions = all_u_exceptions(&atoms, 3);
    report(
        3,
        "no tautology",
        exceptions.is_empty(),
        start.elapsed(),
        Duration::from_secs(10),
        &format!("{count} formulas, {} exceptions", exceptions.len()),
    );
}

fn soundness_line(sys: SystemId, class: ModelClass) -> (bool, String) {
    let r = rule_soundness_report(sys, &bounds(class), &HarnessOptions::default());
    let instances: usize = r.rules.iter().map(|x| x.instances).sum();
    let bad: Vec<String> = r
        .rules
        .iter()
        .filter(|x| x.violations > 0)
        .map(|x| format!("{}={}", x.rule.name(), x.violations))
        .collect();
    (
        r.is_clean() && r.models > 0,
        format!("{} over {:?}: {} models, {} instances, violations {:?}", sys.name(), class, r.models, instances, bad),
    )
}

#[test]
fn deontic_system_is_sound() {
    let start = Instant::now();
    let (ok, detail) = soundness_line(SystemId::SysI, ModelClass::All);
    report(4, "soundness I", ok, start.elapsed(), Duration::from_secs(300), &detail);
}

#[test]
fn epistemic_system_is_sound() {
    let start = Instant::now();
    let (ok, detail) = soundness_line(SystemId::SysII, ModelClass::ClassII);
    let misuse = rule_soundness_report(
        SystemId::SysII,
        &bounds(ModelClass::All),
        &HarnessOptions {
            rules: Some(vec![RuleId::BoxI2Epistemic]),
            ..Default::default()
        },
    );
    let caught = misuse.total_violations();
    report(
        5,
        "soundness II",
        ok && caught > 0,
        start.elapsed(),
        Duration::from_secs(300),
        &format!("{detail}; misuse over All caught {caught}"),
    );
}

#[test]
fn s4_variants_are_sound() {
    let start = Instant::now();
    let (ok1, d1) = soundness_line(SystemId::SysIS4, ModelClass::S4);
    let (ok2, d2) = soundness_line(SystemId::SysIIS4, ModelClass::S4AndClassII);
    report(6, "soundness S4", ok1 && ok2, start.elapsed(), Duration::from_secs(300), &format!("{d1}; {d2}"));
}

#[test]
fn four_valued_correspondence() {
    let start = Instant::now();
    let r = correspondence_check(&bounds(ModelClass::All), 2);
    report(
        7,
        "correspondence",
        r.is_clean() && r.checks > 0,
        start.elapsed(),
        Duration::from_secs(300),
        &format!("{} models, {} lifts, {} checks, {} mismatches", r.models, r.lifts, r.checks, r.mismatch_count),
    );
}

#[test]
fn understanding_persists() {
    let start = Instant::now();
    let v = persistence_check(&bounds(ModelClass::ClassII), 2);
    report(8, "persistence", v.is_empty(), start.elapsed(), Duration::from_secs(300), &format!("{} violations", v.len()));
}

fn perturb(g: &Formula) -> Formula {
    match g {
        Formula::Atom(a) if a == "p" => Formula::atom("q"),
        Formula::Atom(_) => Formula::atom("p"),
        other => Formula::not(other.clone()),
    }
}

/// Single-node mutations of `d`, alternating rule swaps and formula edits
/// over its nodes in address order.
fn mutations(d: &Derivation, wanted: usize) -> Vec<(NodeAddress, Derivation)> {
    let addresses = d.addresses();
    let mut out = Vec::new();
    for round in 0..30 {
        for addr in &addresses {
            let node = d.node(&addr.0).unwrap();
            let mut m = d.clone();
            let target = m.node_mut(&addr.0).unwrap();
            match round % 3 {
                0 => {
                    let others: Vec<RuleId> = RuleId::ALL.iter().copied().filter(|&r| r != node.rule).collect();
                    target.rule = others[(round / 3 * 7 + addr.0.len()) % others.len()];
                }
                // EFQ licenses any conclusion, so editing it is not a mutation.
                1 if node.rule == RuleId::Efq => continue,
                1 => target.conclusion.conclusion = perturb(&node.conclusion.conclusion),
                _ => {
                    if round / 3 > 0 {
                        continue;
                    }
                    target.conclusion = Sequent::new(
                        node.conclusion.assumptions.iter().map(perturb),
                        node.conclusion.conclusion.clone(),
                    );
                    if target.conclusion == node.conclusion {
                        continue;
                    }
                }
            }
            if out.iter().any(|(_, seen)| *seen == m) {
                continue;
            }
            out.push((addr.clone(), m));
            if out.len() == wanted {
                return out;
            }
        }
    }
    out
}

#[test]
fn proof_checker_goldens() {
    let start = Instant::now();
    let goldens = [
        ("excluded middle", samples::excluded_middle_from_p()),
        ("explosion", samples::explosion()),
        ("box introduction", samples::box_conjunction()),
    ];
    let mut problems = Vec::new();
    let mut rejected = 0;
    for (name, d) in &goldens {
        if let Err(e) = check(d, SystemId::SysI) {
            problems.push(format!("{name} rejected: {e:?}"));
        }
        let muts = mutations(d, 20);
        if muts.len() != 20 {
            problems.push(format!("{name}: only {} mutations", muts.len()));
        }
        for (addr, m) in muts {
            match check(&m, SystemId::SysI) {
                Ok(()) => problems.push(format!("{name}: mutation at {addr} accepted")),
                Err(errors) => {
                    let near = errors
                        .iter()
                        .any(|e| e.address == addr || addr.0.starts_with(&e.address.0));
                    if near {
                        rejected += 1;
                    } else {
                        problems.push(format!("{name}: mutation at {addr} blamed {:?}", errors[0].address));
                    }
                }
            }
        }
    }
    report(
        9,
        "proof goldens",
        problems.is_empty() && rejected == 60,
        start.elapsed(),
        Duration::from_secs(60),
        &format!("{rejected}/60 mutations rejected, problems: {problems:?}"),
    );
}

#[test]
fn countermodel_goldens() {
    let start = Instant::now();
    let b = Bounds::new(2, &["p"], 0, ModelClass::All);
    let box_cm = find_countermodel(&[f("p")], &f("[]p"), SemanticsId::SemI, &b).unwrap();
    let again = find_countermodel(&[f("p")], &f("[]p"), SemanticsId::SemI, &b).unwrap();
    let box_ok = box_cm == again
        && box_cm.found().is_some_and(|c| {
            c.world == "w0"
                && c.model.world_count() == 2
                && c.model.relation_names() == vec![("w0".to_string(), "w1".to_string())]
                && c.model.value_of("w0", "p") == Some(TruthValue3::T)
                && c.model.value_of("w1", "p") == Some(TruthValue3::F)
        });
    let one = Bounds::new(1, &["p"], 0, ModelClass::All);
    let lem = find_countermodel(&[], &f("p | ~p"), SemanticsId::WK, &one).unwrap();
    let lem_ok = lem.found().is_some_and(|c| c.model.value_of("w0", "p") == Some(TruthValue3::U));
    let refl = find_countermodel(&[f("p")], &f("p"), SemanticsId::SemI, &Bounds::default()).unwrap();
    let refl_ok = refl == CountermodelResult::NoneWithinBounds;
    report(
        10,
        "countermodels",
        box_ok && lem_ok && refl_ok,
        start.elapsed(),
        Duration::from_secs(10),
        &format!("box {box_ok}, excluded middle {lem_ok}, reflexive none {refl_ok}"),
    );
}

fn semantics_for(sys: SystemId) -> (SemanticsId, ModelClass) {
    match sys {
        SystemId::SysI => (SemanticsId::SemI, ModelClass::All),
        SystemId::SysII => (SemanticsId::SemII, ModelClass::ClassII),
        SystemId::SysIS4 => (SemanticsId::SemI, ModelClass::S4),
        SystemId::SysIIS4 => (SemanticsId::SemII, ModelClass::S4AndClassII),
    }
}

#[test]
fn derivations_have_no_countermodels() {
    let start = Instant::now();
    let mut accepted: Vec<(SystemId, Derivation)> = vec![
        (SystemId::SysI, samples::excluded_middle_from_p()),
        (SystemId::SysI, samples::explosion()),
        (SystemId::SysI, samples::box_conjunction()),
        (SystemId::SysIIS4, samples::or_commutes()),
        (SystemId::SysII, samples::understanding_persists()),
    ];
    let seeds = [f("p"), f("~q"), f("[]p")];
    for sys in SystemId::ALL {
        let generated = bounded_derivations(sys, &seeds, 2, 400);
        let deep: Vec<Derivation> = generated.into_iter().filter(|d| d.size() > 1).collect();
        let step = (deep.len() / 12).max(1);
        accepted.extend(deep.into_iter().step_by(step).take(12).map(|d| (sys, d)));
    }
    let mut problems = Vec::new();
    for (sys, d) in &accepted {
        if check(d, *sys).is_err() {
            problems.push(format!("{} rejected {}", sys.name(), d.conclusion));
            continue;
        }
        let (sem, class) = semantics_for(*sys);
        let gamma: Vec<Formula> = d.conclusion.assumptions.iter().cloned().collect();
        let r = find_countermodel(&gamma, &d.conclusion.conclusion, sem, &Bounds::default().with_class(class)).unwrap();
        if r.found().is_some() {
            problems.push(format!("{} countermodel for {}", sys.name(), d.conclusion));
        }
    }
    report(
        11,
        "duality",
        accepted.len() >= 50 && problems.is_empty(),
        start.elapsed(),
        Duration::from_secs(120),
        &format!("{} derivations, problems: {problems:?}", accepted.len()),
    );
}
