//! JSON proof files. Each node is
//! `{"rule": "OrI2", "conclusion": {"assumptions": ["p"], "formula": "p | ~p"}, "premises": [..]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Derivation, NodeAddress, RuleId, Sequent};
use crate::syntax::{parse, render, ParseError};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    rule: String,
    conclusion: SequentDoc,
    #[serde(default)]
    premises: Vec<NodeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequentDoc {
    assumptions: Vec<String>,
    formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("malformed proof document: {0}")]
    Json(String),
    #[error("{address}: {message}")]
    UnknownRule { address: NodeAddress, message: String },
    #[error("{address}: formula {text:?}: {source}")]
    Formula {
        address: NodeAddress,
        text: String,
        source: ParseError,
    },
}

fn convert(doc: NodeDoc, path: &mut Vec<usize>) -> Result<Derivation, ProofFileError> {
    let rule: RuleId = doc.rule.parse().map_err(|message| ProofFileError::UnknownRule {
        address: NodeAddress(path.clone()),
        message,
    })?;
    let formula = |text: &str| {
        parse(text).map_err(|source| ProofFileError::Formula {
            address: NodeAddress(path.clone()),
            text: text.to_string(),
            source,
        })
    };
    let assumptions = doc
        .conclusion
        .assumptions
        .iter()
        .map(|t| formula(t))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = Sequent::new(assumptions, formula(&doc.conclusion.formula)?);
    let mut premises = Vec::with_capacity(doc.premises.len());
    for (i, p) in doc.premises.into_iter().enumerate() {
        path.push(i);
        premises.push(convert(p, path)?);
        path.pop();
    }
    Ok(Derivation::new(rule, premises, conclusion))
}

pub fn load_derivation(text: &str) -> Result<Derivation, ProofFileError> {
    let doc: NodeDoc = serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))?;
    convert(doc, &mut Vec::new())
}

fn to_doc(d: &Derivation) -> NodeDoc {
    NodeDoc {
        rule: d.rule.name().to_string(),
        conclusion: SequentDoc {
            assumptions: d.conclusion.assumptions.iter().map(render).collect(),
            formula: render(&d.conclusion.conclusion),
        },
        premises: d.premises.iter().map(to_doc).collect(),
    }
}

pub fn derivation_to_json(d: &Derivation) -> serde_json::Value {
    serde_json::to_value(to_doc(d)).expect("derivation serializes")
}

pub fn save_derivation(d: &Derivation) -> String {
    let mut text = serde_json::to_string_pretty(&to_doc(d)).expect("derivation serializes");
    text.push('\n');
    text
}
