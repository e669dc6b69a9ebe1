//! JSON and DOT serialization for graphs, block distributions, and
//! joinings.
//!
//! Graphs use the schema
//! `{"alphabet_size": k, "vertices": n, "edges": [{"src", "dst", "label"}]}`
//! and a line-oriented DOT dialect carrying the same data; both round-trip
//! bit-exactly.  Rationals serialize as `{"num", "den"}` decimal strings so
//! exact values survive the trip.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::measures::{BlockDistribution, Joining, MeasureError};
use crate::sofic::{Edge, GraphError, LabeledGraph};
use crate::words::{Alphabet, Rational, Word};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    alphabet_size: usize,
    vertices: usize,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    src: usize,
    dst: usize,
    label: u8,
}

pub fn graph_to_json(graph: &LabeledGraph) -> Value {
    serde_json::to_value(GraphJson {
        alphabet_size: graph.alphabet().size(),
        vertices: graph.vertex_count(),
        edges: graph
            .edges()
            .iter()
            .map(|e| EdgeJson { src: e.src, dst: e.dst, label: e.label })
            .collect(),
    })
    .expect("graph serialization is infallible")
}

pub fn graph_to_json_string(graph: &LabeledGraph) -> String {
    serde_json::to_string_pretty(&graph_to_json(graph)).expect("valid json")
}

pub fn graph_from_json_str(s: &str) -> Result<LabeledGraph, IoError> {
    let raw: GraphJson = serde_json::from_str(s)?;
    let alphabet = Alphabet::new(raw.alphabet_size)
        .map_err(|e| IoError::Schema(e.to_string()))?;
    let edges: Vec<Edge> = raw
        .edges
        .into_iter()
        .map(|e| Edge { src: e.src, dst: e.dst, label: e.label })
        .collect();
    Ok(LabeledGraph::new(raw.vertices, alphabet, edges)?)
}

/// DOT export.  The header comment carries the alphabet size and vertex
/// count so the text round-trips losslessly through `graph_from_dot_str`.
pub fn graph_to_dot(graph: &LabeledGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph shift {\n");
    out.push_str(&format!(
        "  graph [alphabet_size={}, vertices={}];\n",
        graph.alphabet().size(),
        graph.vertex_count()
    ));
    for v in 0..graph.vertex_count() {
        out.push_str(&format!("  v{v};\n"));
    }
    for e in graph.edges() {
        out.push_str(&format!(
            "  v{} -> v{} [label=\"{}\"];\n",
            e.src, e.dst, e.label
        ));
    }
    out.push_str("}\n");
    out
}

pub fn graph_from_dot_str(s: &str) -> Result<LabeledGraph, IoError> {
    let mut alphabet_size = None;
    let mut vertices = None;
    let mut edges = Vec::new();
    for line in s.lines() {
        let line = line.trim().trim_end_matches(';');
        if let Some(attrs) = line.strip_prefix("graph [").and_then(|l| l.strip_suffix(']')) {
            for attr in attrs.split(',') {
                let (key, value) = attr
                    .split_once('=')
                    .ok_or_else(|| IoError::Schema(format!("bad attribute {attr:?}")))?;
                let value: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| IoError::Schema(format!("bad attribute value {value:?}")))?;
                match key.trim() {
                    "alphabet_size" => alphabet_size = Some(value),
                    "vertices" => vertices = Some(value),
                    other => return Err(IoError::Schema(format!("unknown attribute {other}"))),
                }
            }
        } else if let Some((arrow, rest)) = line.split_once(" [label=\"") {
            let (src, dst) = arrow
                .split_once(" -> ")
                .ok_or_else(|| IoError::Schema(format!("bad edge line {line:?}")))?;
            let parse_vertex = |v: &str| {
                v.trim()
                    .strip_prefix('v')
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| IoError::Schema(format!("bad vertex {v:?}")))
            };
            let label = rest
                .strip_suffix("\"]")
                .and_then(|l| l.parse::<u8>().ok())
                .ok_or_else(|| IoError::Schema(format!("bad label in {line:?}")))?;
            edges.push(Edge { src: parse_vertex(src)?, dst: parse_vertex(dst)?, label });
        }
    }
    let alphabet_size =
        alphabet_size.ok_or_else(|| IoError::Schema("missing alphabet_size".into()))?;
    let vertices = vertices.ok_or_else(|| IoError::Schema("missing vertices".into()))?;
    let alphabet =
        Alphabet::new(alphabet_size).map_err(|e| IoError::Schema(e.to_string()))?;
    Ok(LabeledGraph::new(vertices, alphabet, edges)?)
}

/// `{"num": "...", "den": "..."}` with decimal strings, exact at any size.
pub fn rational_to_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn rational_from_json(v: &Value) -> Result<Rational, IoError> {
    let field = |key: &str| -> Result<BigInt, IoError> {
        let s = v
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| IoError::Schema(format!("rational missing string field {key}")))?;
        BigInt::from_str(s).map_err(|_| IoError::Schema(format!("bad integer {s:?}")))
    };
    let den = field("den")?;
    if den == BigInt::from(0) {
        return Err(IoError::Schema("zero denominator".into()));
    }
    Ok(Rational::new(field("num")?, den))
}

pub fn distribution_to_json(dist: &BlockDistribution) -> Value {
    json!({
        "level": dist.level(),
        "probs": dist
            .entries()
            .map(|(w, p)| json!({
                "word": w.to_string(),
                "num": p.numer().to_string(),
                "den": p.denom().to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn distribution_from_json_str(s: &str) -> Result<BlockDistribution, IoError> {
    let v: Value = serde_json::from_str(s)?;
    let level = v
        .get("level")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Schema("missing level".into()))? as usize;
    let probs_json = v
        .get("probs")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Schema("missing probs array".into()))?;
    let mut probs = BTreeMap::new();
    for entry in probs_json {
        let word: Word = entry
            .get("word")
            .and_then(Value::as_str)
            .ok_or_else(|| IoError::Schema("prob entry missing word".into()))?
            .parse()
            .map_err(|e: crate::words::WordError| IoError::Schema(e.to_string()))?;
        probs.insert(word, rational_from_json(entry)?);
    }
    Ok(BlockDistribution::new(level, probs)?)
}

pub fn joining_to_json(joining: &Joining) -> Value {
    json!({
        "level": joining.level(),
        "entries": joining
            .entries()
            .map(|((u, w), p)| json!({
                "left": u.to_string(),
                "right": w.to_string(),
                "num": p.numer().to_string(),
                "den": p.denom().to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}
