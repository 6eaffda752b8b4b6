//! Edge-list text format.
//!
//! ```text
//! # comment
//! 3
//! 0 1 1
//! 0 2 2
//! 1 2 3
//! ```
//!
//! The first meaningful line holds `n`; every further line is `u v w` with
//! `u < v`. Pairs that are not listed have weight zero.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut weights = Vec::new();
    let mut seen = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();

        let Some(n) = n else {
            if fields.len() != 1 {
                return Err(err(format!("expected vertex count, found {line:?}")));
            }
            let count: usize = fields[0]
                .parse()
                .map_err(|_| err(format!("invalid vertex count {:?}", fields[0])))?;
            if count < 2 {
                return Err(err(format!("vertex count must be at least 2, got {count}")));
            }
            n = Some(count);
            weights = vec![0.0; count * count];
            continue;
        };

        if fields.len() != 3 {
            return Err(err(format!("expected \"u v w\", found {line:?}")));
        }
        let vertex = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| err(format!("invalid vertex index {s:?}")))?;
            if v >= n {
                return Err(err(format!("vertex index {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let u = vertex(fields[0])?;
        let v = vertex(fields[1])?;
        if u >= v {
            return Err(err(format!("expected u < v, got {u} {v}")));
        }
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| err(format!("invalid weight {:?}", fields[2])))?;
        if !w.is_finite() || w < 0.0 {
            return Err(err(format!("weight must be finite and non-negative, got {w}")));
        }
        if !seen.insert((u, v)) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
        weights[u * n + v] = w;
        weights[v * n + u] = w;
    }

    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing vertex count".into(),
    })?;
    Graph::from_matrix(n, weights)
}

/// Writes `g` in edge-list form, listing only edges of non-zero weight.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.n()).unwrap();
    for (u, v, w) in g.edges() {
        if w != 0.0 {
            writeln!(out, "{u} {v} {w}").unwrap();
        }
    }
    out
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}
