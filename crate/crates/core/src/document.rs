//! JSON documents for arenas and penalty matrices.
//!
//! ```json
//! {
//!   "version": 1,
//!   "initial": "s",
//!   "positions": [
//!     { "id": "s", "owner": 1 },
//!     { "id": "t", "owner": 2, "target": [true, false] }
//!   ],
//!   "edges": [ { "from": "s", "to": "t", "w1": 2 } ]
//! }
//! ```
//!
//! Positions may carry `"target_weight": [w1, w2]` (numbers, `"inf"` or
//! `null`); when any position does, every target needs its weight and the
//! document describes a target-weighted arena.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arena::{Arena, ArenaSpec, EdgeSpec, Player, PositionSpec, TargetWeightedArena, Violation};
use crate::ext::ExtNat;
use crate::matrix::PenaltyMatrix;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Owner(pub Player);

impl TryFrom<u64> for Owner {
    type Error = String;

    fn try_from(n: u64) -> Result<Self, String> {
        Player::from_number(n).map(Owner).ok_or_else(|| "owner must be 1 or 2".to_string())
    }
}

impl From<Owner> for u64 {
    fn from(o: Owner) -> u64 {
        o.0.number() as u64
    }
}

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionEntry {
    pub id: String,
    pub owner: Owner,
    #[serde(default, skip_serializing_if = "is_default")]
    pub target: [bool; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_weight: Option<[Option<ExtNat>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub w1: u64,
    #[serde(default)]
    pub w2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaDocument {
    pub version: u32,
    pub initial: String,
    pub positions: Vec<PositionEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub version: u32,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub cells: Vec<Vec<[u64; 2]>>,
}

/// A problem found in a document, located by line and column for syntax
/// errors and by field path otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn at(field: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { line: None, column: None, field: Some(field.into()), message: message.into() }
    }

    fn from_json(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C" to its messages.
        let text = e.to_string();
        let message = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m).to_string();
        Diagnostic { line: Some(e.line()), column: Some(e.column()), field: None, message }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column, &self.field) {
            (Some(l), Some(c), _) => write!(f, "line {l}, column {c}: {}", self.message),
            (_, _, Some(field)) => write!(f, "{field}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

/// A parsed arena, with its explicit target weights when the document has
/// them.
#[derive(Debug, Clone)]
pub struct ParsedArena {
    pub arena: Arena,
    pub twa: Option<TargetWeightedArena>,
}

pub fn parse_arena(text: &str) -> Result<ParsedArena, Vec<Diagnostic>> {
    let doc: ArenaDocument = serde_json::from_str(text).map_err(|e| vec![Diagnostic::from_json(e)])?;
    doc.into_arena()
}

fn locate(doc: &ArenaDocument, v: &Violation) -> Diagnostic {
    let message = v.to_string();
    let field = match v {
        Violation::NoPositions => "positions".to_string(),
        Violation::EmptyId { index } => format!("positions[{index}].id"),
        Violation::DuplicatePosition { id } => {
            let k = doc.positions.iter().enumerate().filter(|(_, p)| &p.id == id).nth(1).map_or(0, |(k, _)| k);
            format!("positions[{k}].id")
        }
        Violation::InitialMissing { .. } => "initial".to_string(),
        Violation::UnknownEndpoint { from, to, missing } => {
            let k = doc.edges.iter().position(|e| &e.from == from && &e.to == to).unwrap_or(0);
            let end = if from == missing { "from" } else { "to" };
            format!("edges[{k}].{end}")
        }
        Violation::DuplicateEdge { from, to } => {
            let k = doc.edges.iter().enumerate().filter(|(_, e)| &e.from == from && &e.to == to).nth(1).map_or(0, |(k, _)| k);
            format!("edges[{k}]")
        }
    };
    Diagnostic::at(field, message)
}

impl ArenaDocument {
    pub fn into_arena(self) -> Result<ParsedArena, Vec<Diagnostic>> {
        if self.version != FORMAT_VERSION {
            return Err(vec![Diagnostic::at("version", format!("unsupported version {}, expected {FORMAT_VERSION}", self.version))]);
        }
        let spec = ArenaSpec {
            positions: self
                .positions
                .iter()
                .map(|p| PositionSpec { id: p.id.clone(), owner: p.owner.0, targets: p.target })
                .collect(),
            initial: self.initial.clone(),
            edges: self.edges.iter().map(|e| EdgeSpec { from: e.from.clone(), to: e.to.clone(), weights: [e.w1, e.w2] }).collect(),
        };
        let violations = spec.validate();
        if !violations.is_empty() {
            return Err(violations.iter().map(|v| locate(&self, v)).collect());
        }
        let arena = spec.build().expect("validated");
        if self.positions.iter().all(|p| p.target_weight.is_none()) {
            return Ok(ParsedArena { arena, twa: None });
        }
        let mut diagnostics = Vec::new();
        let mut explicit = [BTreeMap::new(), BTreeMap::new()];
        let index: HashMap<&str, usize> = self.positions.iter().enumerate().map(|(k, p)| (p.id.as_str(), k)).collect();
        for p in 0..arena.len() {
            let k = index[arena.id(p)];
            let weights = self.positions[k].target_weight.unwrap_or([None, None]);
            for player in Player::BOTH {
                let i = player.index();
                match (arena.is_target(p, player), weights[i]) {
                    (true, Some(w)) => {
                        explicit[i].insert(p, w);
                    }
                    (true, None) => diagnostics.push(Diagnostic::at(
                        format!("positions[{k}].target_weight"),
                        format!("target of {player} needs a weight"),
                    )),
                    (false, Some(_)) => diagnostics.push(Diagnostic::at(
                        format!("positions[{k}].target_weight"),
                        format!("weight given for a position that is not a target of {player}"),
                    )),
                    (false, None) => {}
                }
            }
        }
        if !diagnostics.is_empty() {
            return Err(diagnostics);
        }
        let twa = TargetWeightedArena::with_target_weights(arena.clone(), explicit).map_err(|e| vec![Diagnostic::at("positions", e.to_string())])?;
        Ok(ParsedArena { arena: twa.arena().clone(), twa: Some(twa) })
    }

    /// The document of an arena; explicit target weights are written when
    /// `twa` is given.
    pub fn from_arena(arena: &Arena, twa: Option<&TargetWeightedArena>) -> Self {
        let positions = (0..arena.len())
            .map(|p| {
                let pos = arena.position(p);
                let target_weight = twa.map(|g| Player::BOTH.map(|pl| g.target_weight(pl, p)));
                let target_weight = target_weight.filter(|w| w.iter().any(Option::is_some));
                PositionEntry { id: pos.id.clone(), owner: Owner(pos.owner), target: pos.targets, target_weight }
            })
            .collect();
        let edges = arena
            .edges()
            .iter()
            .map(|e| EdgeEntry { from: arena.id(e.src).to_string(), to: arena.id(e.dst).to_string(), w1: e.weights[0], w2: e.weights[1] })
            .collect();
        ArenaDocument { version: FORMAT_VERSION, initial: arena.id(arena.initial()).to_string(), positions, edges }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub fn parse_matrix(text: &str) -> Result<PenaltyMatrix, Vec<Diagnostic>> {
    let doc: MatrixDocument = serde_json::from_str(text).map_err(|e| vec![Diagnostic::from_json(e)])?;
    if doc.version != FORMAT_VERSION {
        return Err(vec![Diagnostic::at("version", format!("unsupported version {}, expected {FORMAT_VERSION}", doc.version))]);
    }
    let m = PenaltyMatrix { rows: doc.rows, columns: doc.columns, cells: doc.cells };
    m.validate().map_err(|e| vec![Diagnostic::at("cells", e.to_string())])?;
    Ok(m)
}

pub fn matrix_to_json(m: &PenaltyMatrix) -> String {
    let doc = MatrixDocument { version: FORMAT_VERSION, rows: m.rows.clone(), columns: m.columns.clone(), cells: m.cells.clone() };
    serde_json::to_string_pretty(&doc).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{Fin, Inf};

    const MINIMAL: &str = r#"{
  "version": 1,
  "initial": "s",
  "positions": [
    { "id": "s", "owner": 1 },
    { "id": "t", "owner": 2, "target": [true, false] }
  ],
  "edges": [ { "from": "s", "to": "t", "w1": 2 } ]
}"#;

    #[test]
    fn minimal_document() {
        let parsed = parse_arena(MINIMAL).unwrap();
        assert_eq!(parsed.arena.len(), 2);
        assert_eq!(parsed.arena.edge_count(), 1);
        assert_eq!(parsed.arena.edges()[0].weights, [2, 0]);
        assert!(parsed.twa.is_none());
    }

    #[test]
    fn owner_three_is_located() {
        let text = MINIMAL.replace("\"owner\": 2", "\"owner\": 3");
        let d = parse_arena(&text).unwrap_err();
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("owner must be 1 or 2"), "{}", d[0]);
        assert_eq!(d[0].line, Some(6));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = MINIMAL.replace("\"w1\": 2", "\"weight\": 2");
        let d = parse_arena(&text).unwrap_err();
        assert!(d[0].message.contains("unknown field"));
        assert!(d[0].line.is_some());
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let text = MINIMAL.replace("\"to\": \"t\"", "\"to\": \"x\"");
        let d = parse_arena(&text).unwrap_err();
        assert_eq!(d[0].field.as_deref(), Some("edges[0].to"));
        let text = MINIMAL.replace("\"initial\": \"s\"", "\"initial\": \"q\"");
        assert_eq!(parse_arena(&text).unwrap_err()[0].field.as_deref(), Some("initial"));
        let text = MINIMAL.replace("\"version\": 1", "\"version\": 7");
        assert_eq!(parse_arena(&text).unwrap_err()[0].field.as_deref(), Some("version"));
    }

    #[test]
    fn explicit_target_weights() {
        let text = MINIMAL.replace("\"target\": [true, false]", "\"target\": [true, false], \"target_weight\": [\"inf\", null]");
        let parsed = parse_arena(&text).unwrap();
        let twa = parsed.twa.unwrap();
        assert_eq!(twa.target_weight(Player::P1, 1), Some(Inf));
        let missing = MINIMAL
            .replace("\"target\": [true, false]", "\"target\": [true, false], \"target_weight\": [null, 3]");
        let d = parse_arena(&missing).unwrap_err();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn round_trip() {
        let parsed = parse_arena(MINIMAL).unwrap();
        let doc = ArenaDocument::from_arena(&parsed.arena, None);
        let again = parse_arena(&doc.to_json()).unwrap();
        assert_eq!(again.arena, parsed.arena);
        let twa = TargetWeightedArena::from_arena(parsed.arena.clone()).unwrap();
        let doc = ArenaDocument::from_arena(&parsed.arena, Some(&twa));
        let again = parse_arena(&doc.to_json()).unwrap().twa.unwrap();
        assert_eq!(again.target_weight(Player::P1, 1), Some(Fin(2)));
    }

    #[test]
    fn matrix_documents() {
        let text = r#"{"version": 1, "rows": ["A1", "B1"], "columns": ["A2", "B2"],
            "cells": [[[2, 1], [3, 4]], [[1, 2], [4, 3]]]}"#;
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.penalty(Player::P2, 1, 0), 4);
        assert_eq!(parse_matrix(&matrix_to_json(&m)).unwrap(), m);
        assert!(parse_matrix(r#"{"version": 1, "rows": ["a"], "columns": ["b"], "cells": [[]]}"#).is_err());
    }
}
