//! Formulas of the three-valued modal language: atoms, `~`, `&`, `|` and `[]`.
//!
//! Surface grammar (whitespace is insignificant):
//!
//! ```text
//! formula := disj
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '~' unary | '[]' unary | atom | '(' formula ')'
//! atom    := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! `¬`, `∧`, `∨` and `□` are accepted as input aliases. The printer only
//! emits the ASCII forms. There is no implication connective.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
}

impl Formula {
    /// Builds an atom, panicking if `name` is not a valid identifier.
    /// Use [`parse`] for untrusted input.
    pub fn atom(name: &str) -> Formula {
        assert!(is_atom_name(name), "invalid atom name {name:?}");
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Formula) -> Formula {
        Formula::Not(Box::new(child))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn boxed(child: Formula) -> Formula {
        Formula::Box(Box::new(child))
    }

    /// `A | ~A`, the formula the modal rules use to say "A is not U".
    pub fn excluded_middle(a: Formula) -> Formula {
        Formula::or(a.clone(), Formula::not(a))
    }

    /// Nesting depth: atoms are depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(a) | Formula::Box(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn is_modal(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Box(_) => true,
            Formula::Not(a) => a.is_modal(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_modal() || b.is_modal(),
        }
    }

    pub fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Not(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_box(&self) -> Option<&Formula> {
        match self {
            Formula::Box(a) => Some(a),
            _ => None,
        }
    }

    /// If this is `A | ~A`, returns `A`.
    pub fn as_excluded_middle(&self) -> Option<&Formula> {
        let (a, b) = self.as_or()?;
        (b.as_not()? == a).then_some(a)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("implication is not part of the language (found at offset {offset}); only ~, &, | and [] are available")]
    Implication { offset: usize },
}

impl ParseError {
    /// 0-based character offset of the error.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::Implication { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Not,
    And,
    Or,
    Box,
    LParen,
    RParen,
    Atom(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Not => "'~'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Box => "'[]'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Atom(name) => format!("atom '{name}'"),
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<(usize, Token)>, usize), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '|' | '∨' => Token::Or,
            '□' => Token::Box,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '→' => return Err(ParseError::Implication { offset: start }),
            '-' if chars.get(i + 1) == Some(&'>') => {
                return Err(ParseError::Implication { offset: start })
            }
            '[' => {
                if chars.get(i + 1) == Some(&']') {
                    i += 1;
                    Token::Box
                } else {
                    return Err(syntax(start, "expected ']' after '[' (the box operator is '[]')"));
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut end = i + 1;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                    end += 1;
                }
                let name: String = chars[i..end].iter().collect();
                i = end;
                tokens.push((start, Token::Atom(name)));
                continue;
            }
            other => {
                return Err(syntax(
                    start,
                    format!("unexpected character {other:?}; expected an atom, '~', '[]' or '('"),
                ))
            }
        };
        tokens.push((start, token));
        i += 1;
    }
    Ok((tokens, chars.len()))
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conj()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            let right = self.conj()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::Box) => {
                self.pos += 1;
                Ok(Formula::boxed(self.unary()?))
            }
            Some(Token::Atom(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.disj()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(t) => Err(syntax(
                        self.offset(),
                        format!("expected ')' but found {}", t.describe()),
                    )),
                    None => Err(syntax(self.offset(), "expected ')' but found end of input")),
                }
            }
            Some(t) => Err(syntax(
                offset,
                format!("expected an atom, '~', '[]' or '(' but found {}", t.describe()),
            )),
            None => Err(syntax(
                offset,
                "expected an atom, '~', '[]' or '(' but found end of input",
            )),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let (tokens, end) = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end };
    let formula = parser.disj()?;
    match parser.peek() {
        None => Ok(formula),
        Some(t) => Err(syntax(
            parser.offset(),
            format!("expected '&', '|' or end of input but found {}", t.describe()),
        )),
    }
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_UNARY: u8 = 3;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_formula(f: &Formula, min_prec: u8, out: &mut String) {
    let parens = precedence(f) < min_prec;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Atom(name) => out.push_str(name),
        Formula::Not(a) => {
            out.push('~');
            write_formula(a, PREC_UNARY, out);
        }
        Formula::Box(a) => {
            out.push_str("[]");
            write_formula(a, PREC_UNARY, out);
        }
        // Left-associative: the right operand needs one level more.
        Formula::And(a, b) => {
            write_formula(a, PREC_AND, out);
            out.push_str(" & ");
            write_formula(b, PREC_UNARY, out);
        }
        Formula::Or(a, b) => {
            write_formula(a, PREC_OR, out);
            out.push_str(" | ");
            write_formula(b, PREC_AND, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Canonical text with the fewest parentheses that still parses back to `f`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, PREC_OR, &mut out);
    out
}

pub fn atoms_of(f: &Formula) -> BTreeSet<String> {
    let mut atoms = BTreeSet::new();
    collect_atoms(f, &mut atoms);
    atoms
}

pub(crate) fn collect_atoms(f: &Formula, atoms: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(name) => {
            atoms.insert(name.clone());
        }
        Formula::Not(a) | Formula::Box(a) => collect_atoms(a, atoms),
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect_atoms(a, atoms);
            collect_atoms(b, atoms);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn parses_conjunction_with_negation() {
        assert_eq!(parse("p & ~q").unwrap(), Formula::and(p(), Formula::not(q())));
    }

    #[test]
    fn parses_boxed_disjunction() {
        assert_eq!(
            parse("[](p | ~p)").unwrap(),
            Formula::boxed(Formula::or(p(), Formula::not(p())))
        );
    }

    #[test]
    fn rejects_implication() {
        for text in ["p -> q", "p → q"] {
            let err = parse(text).unwrap_err();
            assert_eq!(err, ParseError::Implication { offset: 2 });
            assert!(err.to_string().contains("implication is not part of the language"));
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let r = Formula::atom("r");
        assert_eq!(parse("p | q & r").unwrap(), Formula::or(p(), Formula::and(q(), r.clone())));
        assert_eq!(
            parse("p | q | r").unwrap(),
            Formula::or(Formula::or(p(), q()), r.clone())
        );
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(Formula::and(p(), q()), r)
        );
        assert_eq!(
            parse("~[]p & q").unwrap(),
            Formula::and(Formula::not(Formula::boxed(p())), q())
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse("□(p ∨ ¬p) ∧ q").unwrap(), parse("[](p | ~p) & q").unwrap());
    }

    #[test]
    fn error_offsets_are_character_based() {
        assert_eq!(parse("¬¬ &").unwrap_err().offset(), 3);
        assert_eq!(parse("(p & q").unwrap_err().offset(), 6);
        assert_eq!(parse("p q").unwrap_err().offset(), 2);
        assert_eq!(parse("").unwrap_err().offset(), 0);
        assert_eq!(parse("P").unwrap_err().offset(), 0);
        assert_eq!(parse("p [ q").unwrap_err().offset(), 2);
    }

    #[test]
    fn renders_minimal_parentheses() {
        assert_eq!(render(&Formula::and(p(), Formula::not(q()))), "p & ~q");
        assert_eq!(
            render(&Formula::boxed(Formula::or(p(), Formula::not(p())))),
            "[](p | ~p)"
        );
        let r = Formula::atom("r");
        assert_eq!(render(&Formula::or(Formula::or(p(), q()), r.clone())), "p | q | r");
        assert_eq!(render(&Formula::or(p(), Formula::or(q(), r.clone()))), "p | (q | r)");
        assert_eq!(render(&Formula::and(Formula::or(p(), q()), r)), "(p | q) & r");
        assert_eq!(render(&Formula::not(Formula::not(p()))), "~~p");
    }

    #[test]
    fn atoms_are_a_set() {
        assert_eq!(atoms_of(&Formula::and(p(), Formula::not(q()))), ["p", "q"].map(String::from).into());
        assert_eq!(atoms_of(&Formula::boxed(p())), ["p"].map(String::from).into());
        assert_eq!(atoms_of(&Formula::or(p(), p())), ["p"].map(String::from).into());
    }

    #[test]
    fn excluded_middle_view() {
        let em = Formula::excluded_middle(p());
        assert_eq!(em.as_excluded_middle(), Some(&p()));
        assert_eq!(Formula::or(p(), Formula::not(q())).as_excluded_middle(), None);
    }

    #[test]
    fn atom_names() {
        assert!(is_atom_name("p"));
        assert!(is_atom_name("rain_2B"));
        assert!(!is_atom_name(""));
        assert!(!is_atom_name("2p"));
        assert!(!is_atom_name("Pq"));
    }
}
