//! Proof DAGs as JSON. Clauses, pivots and substitution entries are stored
//! in the textual syntax of [`super::syntax`], so the file is readable and
//! can be re-checked by independent tools.
//!
//! ```json
//! {"parameter": 0, "inputs": [{"id": "C1", "clause": "⊢ v0 ≤ v0"}], "root": 5,
//!  "nodes": [{"id": 0, "kind": "input", "children": [], "clause_id": "C1",
//!             "conclusion": "⊢ v0 ≤ v0"}, …]}
//! ```

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cursor::ParseError;
use super::syntax::{parse_atom, parse_clause, parse_term};
use crate::clause::{Clause, ClauseSet};
use crate::refutation::{RefStep, RefutationProof, StepKind};
use crate::term::{Numeral, Substitution, Variable};

#[derive(Debug, Error)]
pub enum ProofFormatError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("node {node}: {reason}")]
    Node { node: usize, reason: String },
    #[error("{context}: {error}")]
    Syntax { context: String, error: ParseError },
}

#[derive(Debug, Serialize, Deserialize)]
struct ProofFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parameter: Option<u64>,
    inputs: Vec<InputEntry>,
    root: usize,
    nodes: Vec<NodeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct InputEntry {
    id: String,
    clause: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeEntry {
    id: usize,
    kind: String,
    children: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pivot: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<BTreeMap<String, String>>,
    conclusion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clause_id: Option<String>,
}

fn sigma_entry(sigma: &Substitution) -> BTreeMap<String, String> {
    sigma.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect()
}

fn to_file(p: &RefutationProof) -> ProofFile {
    let inputs = p
        .inputs
        .iter()
        .map(|c| InputEntry { id: c.id.clone().unwrap_or_default(), clause: c.to_string() })
        .collect();
    let nodes = p
        .nodes
        .iter()
        .enumerate()
        .map(|(id, step)| {
            let (pivot, sigma, clause_id) = match &step.kind {
                StepKind::Input { clause_id } => (None, None, Some(clause_id.clone())),
                StepKind::Res { pivot, sigma, .. } => {
                    (Some(pivot.to_string()), Some(sigma_entry(sigma)), None)
                }
                StepKind::Factor { sigma, .. } => (None, Some(sigma_entry(sigma)), None),
                StepKind::Contract { .. } | StepKind::EpsUnfold { .. } => (None, None, None),
            };
            NodeEntry {
                id,
                kind: step.kind.name().to_string(),
                children: step.kind.children(),
                pivot,
                sigma,
                conclusion: step.conclusion.to_string(),
                clause_id,
            }
        })
        .collect();
    ProofFile { parameter: p.inputs.parameter.map(Numeral::value), inputs, root: p.root, nodes }
}

pub fn proof_to_json(p: &RefutationProof) -> String {
    serde_json::to_string(&to_file(p)).expect("proof files serialise")
}

pub fn write_proof(p: &RefutationProof, path: &Path) -> Result<(), ProofFormatError> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer(&mut out, &to_file(p))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn proof_from_json(text: &str) -> Result<RefutationProof, ProofFormatError> {
    from_file(serde_json::from_str(text)?)
}

pub fn read_proof(path: &Path) -> Result<RefutationProof, ProofFormatError> {
    let file: ProofFile = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    from_file(file)
}

fn syntax<T>(context: impl FnOnce() -> String, r: Result<T, ParseError>) -> Result<T, ProofFormatError> {
    r.map_err(|error| ProofFormatError::Syntax { context: context(), error })
}

fn parse_sigma(node: usize, entries: &BTreeMap<String, String>) -> Result<Substitution, ProofFormatError> {
    let mut pairs = Vec::with_capacity(entries.len());
    for (var, term) in entries {
        let var_term = syntax(|| format!("node {node} σ domain"), parse_term(var))?;
        let var: Variable = var_term.as_variable().ok_or_else(|| ProofFormatError::Node {
            node,
            reason: format!("σ binds non-variable `{var}`"),
        })?;
        let term = syntax(|| format!("node {node} σ({var})"), parse_term(term))?;
        pairs.push((var, term));
    }
    Ok(Substitution::from(pairs))
}

fn from_file(file: ProofFile) -> Result<RefutationProof, ProofFormatError> {
    let mut inputs = ClauseSet::new(file.parameter.map(Numeral));
    for entry in &file.inputs {
        let c = syntax(|| format!("input {}", entry.id), parse_clause(&entry.clause))?;
        inputs.clauses.push(c.with_id(entry.id.clone()));
    }
    let mut nodes = Vec::with_capacity(file.nodes.len());
    for (index, entry) in file.nodes.into_iter().enumerate() {
        let bad = |reason: String| ProofFormatError::Node { node: index, reason };
        if entry.id != index {
            return Err(bad(format!("id {} out of sequence", entry.id)));
        }
        let child = |k: usize| {
            entry
                .children
                .get(k)
                .copied()
                .ok_or_else(|| bad(format!("`{}` needs {} children", entry.kind, k + 1)))
        };
        let arity = match entry.kind.as_str() {
            "input" => 0,
            "res" => 2,
            _ => 1,
        };
        if entry.children.len() != arity {
            return Err(bad(format!("`{}` takes {arity} children", entry.kind)));
        }
        let sigma = || match &entry.sigma {
            Some(s) => parse_sigma(index, s),
            None => Err(bad("missing sigma".into())),
        };
        let kind = match entry.kind.as_str() {
            "input" => StepKind::Input {
                clause_id: entry.clause_id.clone().ok_or_else(|| bad("missing clause_id".into()))?,
            },
            "res" => {
                let pivot = entry.pivot.as_deref().ok_or_else(|| bad("missing pivot".into()))?;
                StepKind::Res {
                    left: child(0)?,
                    right: child(1)?,
                    pivot: syntax(|| format!("node {index} pivot"), parse_atom(pivot))?,
                    sigma: sigma()?,
                }
            }
            "factor" => StepKind::Factor { child: child(0)?, sigma: sigma()? },
            "contract" => StepKind::Contract { child: child(0)? },
            "eps" => StepKind::EpsUnfold { child: child(0)? },
            other => return Err(bad(format!("unknown kind `{other}`"))),
        };
        let conclusion: Clause =
            syntax(|| format!("node {index} conclusion"), parse_clause(&entry.conclusion))?;
        nodes.push(RefStep { kind, conclusion: Arc::new(conclusion) });
    }
    Ok(RefutationProof { nodes, root: file.root, inputs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refutation::{refute, verify_proof};

    #[test]
    fn refutations_survive_a_json_round_trip() {
        for n in 0..=2 {
            let p = refute(n).unwrap();
            let back = proof_from_json(&proof_to_json(&p)).unwrap();
            assert_eq!(back.nodes, p.nodes);
            assert_eq!(back.root, p.root);
            assert_eq!(back.inputs.clauses, p.inputs.clauses);
            verify_proof(&back).unwrap();
            assert_eq!(proof_to_json(&back), proof_to_json(&p));
        }
    }

    #[test]
    fn malformed_nodes_are_located() {
        let p = refute(0).unwrap();
        let text = proof_to_json(&p).replacen("\"kind\":\"res\"", "\"kind\":\"cut\"", 1);
        match proof_from_json(&text) {
            Err(ProofFormatError::Node { reason, .. }) => assert!(reason.contains("cut")),
            other => panic!("unexpected {other:?}"),
        }
        let text = proof_to_json(&p).replacen("\"conclusion\":\"", "\"conclusion\":\"⊢ ⊢", 1);
        assert!(matches!(proof_from_json(&text), Err(ProofFormatError::Syntax { .. })));
    }
}
