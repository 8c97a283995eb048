//! Hash-consed formula storage. Every subformula gets a dense id and children
//! always have smaller ids than their parents, so a single forward pass over
//! the ids evaluates everything bottom-up.

use std::collections::HashMap;

use crate::syntax::Formula;

pub type FormulaId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(usize),
    Not(FormulaId),
    And(FormulaId, FormulaId),
    Or(FormulaId, FormulaId),
    Box(FormulaId),
}

#[derive(Debug, Clone, Default)]
pub struct FormulaArena {
    nodes: Vec<Node>,
    index: HashMap<Node, FormulaId>,
    atoms: Vec<String>,
    atom_index: HashMap<String, usize>,
}

impl FormulaArena {
    pub fn new() -> Self {
        Self::default()
    }

    fn node(&mut self, node: Node) -> FormulaId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    pub fn intern(&mut self, f: &Formula) -> FormulaId {
        let node = match f {
            Formula::Atom(name) => {
                let next = self.atoms.len();
                let a = *self.atom_index.entry(name.clone()).or_insert(next);
                if a == next {
                    self.atoms.push(name.clone());
                }
                Node::Atom(a)
            }
            Formula::Not(a) => Node::Not(self.intern(a)),
            Formula::Box(a) => Node::Box(self.intern(a)),
            Formula::And(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                Node::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                Node::Or(a, b)
            }
        };
        self.node(node)
    }

    pub fn get(&self, f: &Formula) -> Option<FormulaId> {
        let node = match f {
            Formula::Atom(name) => Node::Atom(*self.atom_index.get(name)?),
            Formula::Not(a) => Node::Not(self.get(a)?),
            Formula::Box(a) => Node::Box(self.get(a)?),
            Formula::And(a, b) => Node::And(self.get(a)?, self.get(b)?),
            Formula::Or(a, b) => Node::Or(self.get(a)?, self.get(b)?),
        };
        self.index.get(&node).copied()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Atom names in first-interned order; `Node::Atom(i)` refers to `atoms()[i]`.
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn has_box(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n, Node::Box(_)))
    }

    pub fn formula(&self, id: FormulaId) -> Formula {
        match self.nodes[id] {
            Node::Atom(a) => Formula::Atom(self.atoms[a].clone()),
            Node::Not(a) => Formula::not(self.formula(a)),
            Node::Box(a) => Formula::boxed(self.formula(a)),
            Node::And(a, b) => Formula::and(self.formula(a), self.formula(b)),
            Node::Or(a, b) => Formula::or(self.formula(a), self.formula(b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn shares_subformulas_and_orders_children_first() {
        let mut arena = FormulaArena::new();
        let f = parse("(p & q) | ~(p & q)").unwrap();
        let id = arena.intern(&f);
        assert_eq!(arena.len(), 5);
        assert_eq!(arena.formula(id), f);
        assert_eq!(arena.get(&f), Some(id));
        assert_eq!(arena.get(&parse("q & p").unwrap()), None);
        for (i, node) in arena.nodes().iter().enumerate() {
            match *node {
                Node::Atom(_) => {}
                Node::Not(a) | Node::Box(a) => assert!(a < i),
                Node::And(a, b) | Node::Or(a, b) => assert!(a < i && b < i),
            }
        }
        assert_eq!(arena.intern(&f), id);
        assert_eq!(arena.atoms(), ["p", "q"]);
    }
}
