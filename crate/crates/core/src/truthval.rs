//! Truth values: the weak Kleene three-valued algebra, the four-valued pair
//! algebra that simulates it, and the compression map between them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TruthValue3 {
    T,
    U,
    F,
}

impl TruthValue3 {
    pub const ALL: [TruthValue3; 3] = [TruthValue3::T, TruthValue3::U, TruthValue3::F];

    pub fn symbol(self) -> &'static str {
        match self {
            TruthValue3::T => "T",
            TruthValue3::U => "U",
            TruthValue3::F => "F",
        }
    }

    fn index(self) -> usize {
        match self {
            TruthValue3::T => 0,
            TruthValue3::U => 1,
            TruthValue3::F => 2,
        }
    }
}

impl fmt::Display for TruthValue3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown truth value {0:?}")]
pub struct UnknownTruthValue(pub String);

impl FromStr for TruthValue3 {
    type Err = UnknownTruthValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T" => Ok(TruthValue3::T),
            "U" => Ok(TruthValue3::U),
            "F" => Ok(TruthValue3::F),
            other => Err(UnknownTruthValue(other.to_string())),
        }
    }
}

/// First coordinate of a four-valued truth value. Behaves classically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit1 {
    T1,
    F1,
}

/// Second coordinate of a four-valued truth value. `F2` is infectious.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit2 {
    T2,
    F2,
}

impl From<bool> for Bit1 {
    fn from(b: bool) -> Self {
        if b {
            Bit1::T1
        } else {
            Bit1::F1
        }
    }
}

impl From<bool> for Bit2 {
    fn from(b: bool) -> Self {
        if b {
            Bit2::T2
        } else {
            Bit2::F2
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthValue4 {
    pub bit1: Bit1,
    pub bit2: Bit2,
}

impl TruthValue4 {
    pub const T1T2: TruthValue4 = TruthValue4::new(Bit1::T1, Bit2::T2);
    pub const T1F2: TruthValue4 = TruthValue4::new(Bit1::T1, Bit2::F2);
    pub const F1T2: TruthValue4 = TruthValue4::new(Bit1::F1, Bit2::T2);
    pub const F1F2: TruthValue4 = TruthValue4::new(Bit1::F1, Bit2::F2);
    pub const ALL: [TruthValue4; 4] = [Self::T1T2, Self::T1F2, Self::F1T2, Self::F1F2];

    pub const fn new(bit1: Bit1, bit2: Bit2) -> Self {
        TruthValue4 { bit1, bit2 }
    }

    pub fn symbol(self) -> &'static str {
        match (self.bit1, self.bit2) {
            (Bit1::T1, Bit2::T2) => "T1T2",
            (Bit1::T1, Bit2::F2) => "T1F2",
            (Bit1::F1, Bit2::T2) => "F1T2",
            (Bit1::F1, Bit2::F2) => "F1F2",
        }
    }

    pub(crate) fn first(self) -> bool {
        self.bit1 == Bit1::T1
    }

    pub(crate) fn second(self) -> bool {
        self.bit2 == Bit2::T2
    }

    pub(crate) fn from_bits(first: bool, second: bool) -> Self {
        TruthValue4::new(first.into(), second.into())
    }
}

impl fmt::Display for TruthValue4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for TruthValue4 {
    type Err = UnknownTruthValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TruthValue4::ALL
            .into_iter()
            .find(|v| v.symbol() == s)
            .ok_or_else(|| UnknownTruthValue(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Neg,
    Conj,
    Disj,
}

impl Connective {
    pub const ALL: [Connective; 3] = [Connective::Neg, Connective::Conj, Connective::Disj];

    pub fn arity(self) -> usize {
        match self {
            Connective::Neg => 1,
            Connective::Conj | Connective::Disj => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{connective:?} takes {expected} operand(s), got {got}")]
pub struct ArityError {
    pub connective: Connective,
    pub expected: usize,
    pub got: usize,
}

use TruthValue3::{F, T, U};

const NEG_TABLE: [TruthValue3; 3] = [F, U, T];

// Rows indexed by the left operand, columns by the right, both in T, U, F order.
const CONJ_TABLE: [[TruthValue3; 3]; 3] = [
    [T, U, F], //
    [U, U, U],
    [F, U, F],
];

const DISJ_TABLE: [[TruthValue3; 3]; 3] = [
    [T, U, T], //
    [U, U, U],
    [T, U, F],
];

pub fn wk_not(a: TruthValue3) -> TruthValue3 {
    NEG_TABLE[a.index()]
}

pub fn wk_and(a: TruthValue3, b: TruthValue3) -> TruthValue3 {
    CONJ_TABLE[a.index()][b.index()]
}

pub fn wk_or(a: TruthValue3, b: TruthValue3) -> TruthValue3 {
    DISJ_TABLE[a.index()][b.index()]
}

fn check_arity(c: Connective, b_present: bool) -> Result<(), ArityError> {
    let got = 1 + usize::from(b_present);
    if got == c.arity() {
        Ok(())
    } else {
        Err(ArityError {
            connective: c,
            expected: c.arity(),
            got,
        })
    }
}

/// Weak Kleene connective application, by table lookup.
pub fn wk_apply(
    c: Connective,
    a: TruthValue3,
    b: Option<TruthValue3>,
) -> Result<TruthValue3, ArityError> {
    check_arity(c, b.is_some())?;
    Ok(match (c, b) {
        (Connective::Neg, _) => wk_not(a),
        (Connective::Conj, Some(b)) => wk_and(a, b),
        (Connective::Disj, Some(b)) => wk_or(a, b),
        _ => unreachable!("arity checked"),
    })
}

pub fn fv_not(a: TruthValue4) -> TruthValue4 {
    TruthValue4::from_bits(!a.first(), a.second())
}

pub fn fv_and(a: TruthValue4, b: TruthValue4) -> TruthValue4 {
    TruthValue4::from_bits(a.first() && b.first(), a.second() && b.second())
}

pub fn fv_or(a: TruthValue4, b: TruthValue4) -> TruthValue4 {
    TruthValue4::from_bits(a.first() || b.first(), a.second() && b.second())
}

/// Four-valued connective application: the first coordinate is classical,
/// the second is `F2` as soon as any operand's second coordinate is `F2`.
pub fn fv_apply(
    c: Connective,
    a: TruthValue4,
    b: Option<TruthValue4>,
) -> Result<TruthValue4, ArityError> {
    check_arity(c, b.is_some())?;
    Ok(match (c, b) {
        (Connective::Neg, _) => fv_not(a),
        (Connective::Conj, Some(b)) => fv_and(a, b),
        (Connective::Disj, Some(b)) => fv_or(a, b),
        _ => unreachable!("arity checked"),
    })
}

pub fn compress(v: TruthValue4) -> TruthValue3 {
    match (v.bit1, v.bit2) {
        (Bit1::T1, Bit2::T2) => T,
        (Bit1::F1, Bit2::T2) => F,
        (_, Bit2::F2) => U,
    }
}

/// The preimage of `v` under [`compress`].
pub fn lifts(v: TruthValue3) -> &'static [TruthValue4] {
    const LIFT_T: [TruthValue4; 1] = [TruthValue4::T1T2];
    const LIFT_U: [TruthValue4; 2] = [TruthValue4::T1F2, TruthValue4::F1F2];
    const LIFT_F: [TruthValue4; 1] = [TruthValue4::F1T2];
    match v {
        T => &LIFT_T,
        U => &LIFT_U,
        F => &LIFT_F,
    }
}

/// Plain-text rendering of the three weak Kleene tables and the compression
/// map, used by the `table` command.
pub fn tables_text() -> String {
    let mut out = String::new();
    out.push_str("negation\n");
    out.push_str("  A | ~A\n");
    for a in TruthValue3::ALL {
        out.push_str(&format!("  {a} | {}\n", wk_not(a)));
    }
    for (name, op, f) in [
        ("conjunction", "&", wk_and as fn(TruthValue3, TruthValue3) -> TruthValue3),
        ("disjunction", "|", wk_or),
    ] {
        out.push('\n');
        out.push_str(&format!("{name}\n"));
        out.push_str(&format!("  {op} | T U F\n"));
        out.push_str("  --+------\n");
        for a in TruthValue3::ALL {
            let row: Vec<&str> = TruthValue3::ALL.iter().map(|&b| f(a, b).symbol()).collect();
            out.push_str(&format!("  {a} | {}\n", row.join(" ")));
        }
    }
    out.push('\n');
    out.push_str("compression\n");
    for v in TruthValue4::ALL {
        out.push_str(&format!("  ({}, {}) -> {}\n", &v.symbol()[..2], &v.symbol()[2..], compress(v)));
    }
    out
}
