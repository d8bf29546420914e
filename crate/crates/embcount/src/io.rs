//! Line-based text formats for hosts, patterns and multicolour-clique
//! instances, plus the JSON/CSV emitters the CLI prints.
//!
//! All formats share the same conventions: `#` starts a comment, records are
//! whitespace-separated tokens, and counts serialize as decimal strings so
//! they survive arbitrary magnitudes.
//!
//! Host:    `n <count>` (optional), `e <u> <v> [layer]` (layer defaults to 0),
//!          `pos <v> <x> <y>` with decimal coordinates.
//! Pattern: `k <count>`, `e <i> <j>`, `list <i> <host ids...>`.
//! Clique:  `n <count>` (optional), `color <v> <c>` with classes `1..k`,
//!          `e <u> <v>`.

use num_bigint::BigUint;
use num_rational::BigRational;
use thiserror::Error;

use crate::decimal::{format_decimal, parse_decimal};
use crate::decompose::PeelTrace;
use crate::geometry::GeometricLayout;
use crate::graph::{Graph, LayeredGraph, Pattern};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{}{message}", .line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based line number, when the failure is tied to one line.
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}

/// A parsed host file.
#[derive(Debug, Clone)]
pub struct ParsedHost {
    pub graph: LayeredGraph,
    pub layout: Option<GeometricLayout>,
    pub warnings: Vec<String>,
}

fn tokens(line: &str) -> Vec<&str> {
    let stripped = line.split('#').next().unwrap_or("");
    stripped.split_whitespace().collect()
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::at(line, format!("bad {what}: {tok:?}")))
}

/// Parse a host file into a layered graph and optional layout. Layer ids are
/// normalized to `0..s`; duplicate edges collapse to the lowest-numbered
/// layer with a warning.
pub fn parse_host(text: &str) -> Result<ParsedHost, ParseError> {
    let mut declared_n: Option<usize> = None;
    let mut records: Vec<(usize, usize, usize)> = Vec::new();
    let mut record_lines: Vec<usize> = Vec::new();
    let mut positions: Vec<(usize, BigRational, BigRational, usize)> = Vec::new();
    let mut max_ref: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "n" => {
                if toks.len() != 2 {
                    return Err(ParseError::at(lineno, "expected: n <count>"));
                }
                if declared_n.is_some() {
                    return Err(ParseError::at(lineno, "duplicate n header"));
                }
                declared_n = Some(parse_usize(toks[1], lineno, "vertex count")?);
            }
            "e" => {
                if toks.len() != 3 && toks.len() != 4 {
                    return Err(ParseError::at(lineno, "expected: e <u> <v> [layer]"));
                }
                let u = parse_usize(toks[1], lineno, "vertex")?;
                let v = parse_usize(toks[2], lineno, "vertex")?;
                if u == v {
                    return Err(ParseError::at(lineno, format!("self-loop at vertex {u}")));
                }
                let layer = if toks.len() == 4 {
                    parse_usize(toks[3], lineno, "layer")?
                } else {
                    0
                };
                max_ref = max_ref.max(Some(u.max(v)));
                records.push((u, v, layer));
                record_lines.push(lineno);
            }
            "pos" => {
                if toks.len() != 4 {
                    return Err(ParseError::at(lineno, "expected: pos <v> <x> <y>"));
                }
                let v = parse_usize(toks[1], lineno, "vertex")?;
                let x = parse_decimal(toks[2]).map_err(|e| ParseError::at(lineno, e))?;
                let y = parse_decimal(toks[3]).map_err(|e| ParseError::at(lineno, e))?;
                max_ref = max_ref.max(Some(v));
                positions.push((v, x, y, lineno));
            }
            other => {
                return Err(ParseError::at(lineno, format!("unknown record {other:?}")));
            }
        }
    }

    let implied_n = max_ref.map_or(0, |m| m + 1);
    let n = match declared_n {
        Some(n) => {
            if implied_n > n {
                // report the first offending record
                for (&(u, v, _), &line) in records.iter().zip(&record_lines) {
                    if u >= n || v >= n {
                        return Err(ParseError::at(
                            line,
                            format!("vertex {} out of range (n = {n})", u.max(v)),
                        ));
                    }
                }
                for &(v, _, _, line) in &positions {
                    if v >= n {
                        return Err(ParseError::at(line, format!("vertex {v} out of range (n = {n})")));
                    }
                }
                unreachable!("some record referenced a vertex >= n");
            }
            n
        }
        None => implied_n,
    };

    let (graph, warnings) = LayeredGraph::from_records(n, &records, true)
        .map_err(|e| ParseError::global(e.to_string()))?;

    let layout = if positions.is_empty() {
        None
    } else {
        let mut coords: Vec<Option<(BigRational, BigRational)>> = vec![None; n];
        for (v, x, y, line) in positions {
            if coords[v].is_some() {
                return Err(ParseError::at(line, format!("duplicate position for vertex {v}")));
            }
            coords[v] = Some((x, y));
        }
        if let Some(missing) = coords.iter().position(Option::is_none) {
            return Err(ParseError::global(format!(
                "positions must cover every vertex or none (vertex {missing} has no pos record)"
            )));
        }
        Some(GeometricLayout::new(
            coords.into_iter().map(Option::unwrap).collect(),
        ))
    };

    Ok(ParsedHost {
        graph,
        layout,
        warnings,
    })
}

/// Parse a pattern file. List records are validated against the host; a
/// vertex with no `list` record may go anywhere.
pub fn parse_pattern(text: &str, host: &LayeredGraph) -> Result<(Pattern, Vec<String>), ParseError> {
    let mut k: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut warnings = Vec::new();
    let mut lists: Vec<Option<Vec<usize>>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "k" => {
                if toks.len() != 2 {
                    return Err(ParseError::at(lineno, "expected: k <count>"));
                }
                if k.is_some() {
                    return Err(ParseError::at(lineno, "duplicate k header"));
                }
                let count = parse_usize(toks[1], lineno, "pattern size")?;
                if count == 0 {
                    return Err(ParseError::at(lineno, "pattern must have at least one vertex"));
                }
                k = Some(count);
                lists = vec![None; count];
            }
            "e" => {
                let k = k.ok_or_else(|| ParseError::at(lineno, "e before k header"))?;
                if toks.len() != 3 {
                    return Err(ParseError::at(lineno, "expected: e <i> <j>"));
                }
                let i = parse_usize(toks[1], lineno, "pattern vertex")?;
                let j = parse_usize(toks[2], lineno, "pattern vertex")?;
                if i == j {
                    return Err(ParseError::at(lineno, format!("self-loop at pattern vertex {i}")));
                }
                for &x in &[i, j] {
                    if x >= k {
                        return Err(ParseError::at(lineno, format!("pattern vertex {x} out of range (k = {k})")));
                    }
                }
                let pair = (i.min(j), i.max(j));
                if edges.contains(&pair) {
                    warnings.push(format!("line {lineno}: duplicate pattern edge ({i}, {j})"));
                } else {
                    edges.push(pair);
                }
            }
            "list" => {
                let k = k.ok_or_else(|| ParseError::at(lineno, "list before k header"))?;
                if toks.len() < 2 {
                    return Err(ParseError::at(lineno, "expected: list <i> <host ids...>"));
                }
                let i = parse_usize(toks[1], lineno, "pattern vertex")?;
                if i >= k {
                    return Err(ParseError::at(lineno, format!("pattern vertex {i} out of range (k = {k})")));
                }
                let mut ids = Vec::new();
                for tok in &toks[2..] {
                    let v = parse_usize(tok, lineno, "host vertex")?;
                    if v >= host.vertex_count() {
                        return Err(ParseError::at(
                            lineno,
                            format!("host vertex {v} out of range (host n = {})", host.vertex_count()),
                        ));
                    }
                    ids.push(v);
                }
                match &mut lists[i] {
                    Some(existing) => existing.extend(ids), // repeated lists union
                    slot => *slot = Some(ids),
                }
            }
            other => {
                return Err(ParseError::at(lineno, format!("unknown record {other:?}")));
            }
        }
    }

    let k = k.ok_or_else(|| ParseError::global("missing k header"))?;
    let graph = Graph::new(k, edges).map_err(|e| ParseError::global(e.to_string()))?;
    let pattern = Pattern::new(graph, lists).map_err(|e| ParseError::global(e.to_string()))?;
    Ok((pattern, warnings))
}

/// A multicolour-clique instance: a graph plus a partition of its vertices
/// into color classes `1..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueInstance {
    pub graph: Graph,
    /// Color of each vertex, in `1..=k`.
    pub color_of: Vec<usize>,
    pub k: usize,
}

impl CliqueInstance {
    pub fn new(graph: Graph, color_of: Vec<usize>) -> Result<Self, String> {
        if color_of.len() != graph.vertex_count() {
            return Err("every vertex needs exactly one color".into());
        }
        let k = color_of.iter().copied().max().unwrap_or(0);
        if k < 2 {
            return Err(format!("need at least 2 color classes, got {k}"));
        }
        let mut present = vec![false; k + 1];
        for &c in &color_of {
            if c == 0 {
                return Err("color classes start at 1".into());
            }
            present[c] = true;
        }
        if let Some(missing) = (1..=k).find(|&c| !present[c]) {
            return Err(format!("color classes must be contiguous 1..{k}; class {missing} is empty"));
        }
        Ok(CliqueInstance { graph, color_of, k })
    }

    /// Vertices of class `c` (1-based), ascending.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.color_of[v] == c)
            .collect()
    }

    /// True iff `verts[i]` lies in class `i+1` and all pairs are adjacent.
    pub fn is_multicolour_clique(&self, verts: &[usize]) -> bool {
        if verts.len() != self.k {
            return false;
        }
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.graph.vertex_count() || self.color_of[v] != i + 1 {
                return false;
            }
        }
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&w| self.graph.has_edge(u, w)))
    }

    /// Exhaustive search for a multicolour clique (desk scale).
    pub fn find_multicolour_clique(&self) -> Option<Vec<usize>> {
        fn go(inst: &CliqueInstance, chosen: &mut Vec<usize>) -> bool {
            let c = chosen.len() + 1;
            if c > inst.k {
                return true;
            }
            for v in inst.class(c) {
                if chosen.iter().all(|&u| inst.graph.has_edge(u, v)) {
                    chosen.push(v);
                    if go(inst, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        let mut chosen = Vec::new();
        go(self, &mut chosen).then_some(chosen)
    }
}

/// Parse a multicolour-clique instance file.
pub fn parse_clique(text: &str) -> Result<(CliqueInstance, Vec<String>), ParseError> {
    let mut declared_n: Option<usize> = None;
    let mut colors: Vec<(usize, usize, usize)> = Vec::new(); // (v, c, line)
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut warnings = Vec::new();
    let mut max_ref: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "n" => {
                if toks.len() != 2 {
                    return Err(ParseError::at(lineno, "expected: n <count>"));
                }
                declared_n = Some(parse_usize(toks[1], lineno, "vertex count")?);
            }
            "color" => {
                if toks.len() != 3 {
                    return Err(ParseError::at(lineno, "expected: color <v> <c>"));
                }
                let v = parse_usize(toks[1], lineno, "vertex")?;
                let c = parse_usize(toks[2], lineno, "color")?;
                if c == 0 {
                    return Err(ParseError::at(lineno, "color classes start at 1"));
                }
                max_ref = max_ref.max(Some(v));
                colors.push((v, c, lineno));
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(ParseError::at(lineno, "expected: e <u> <v>"));
                }
                let u = parse_usize(toks[1], lineno, "vertex")?;
                let v = parse_usize(toks[2], lineno, "vertex")?;
                if u == v {
                    return Err(ParseError::at(lineno, format!("self-loop at vertex {u}")));
                }
                max_ref = max_ref.max(Some(u.max(v)));
                let pair = (u.min(v), u.max(v));
                if edges.contains(&pair) {
                    warnings.push(format!("line {lineno}: duplicate edge ({u}, {v})"));
                } else {
                    edges.push(pair);
                }
            }
            other => {
                return Err(ParseError::at(lineno, format!("unknown record {other:?}")));
            }
        }
    }

    let implied_n = max_ref.map_or(0, |m| m + 1);
    let n = declared_n.unwrap_or(implied_n);
    if implied_n > n {
        return Err(ParseError::global(format!(
            "a record references vertex {} but n = {n}",
            implied_n - 1
        )));
    }
    let mut color_of = vec![0usize; n];
    for (v, c, line) in colors {
        if v >= n {
            return Err(ParseError::at(line, format!("vertex {v} out of range (n = {n})")));
        }
        if color_of[v] != 0 {
            return Err(ParseError::at(line, format!("vertex {v} colored twice")));
        }
        color_of[v] = c;
    }
    if let Some(v) = color_of.iter().position(|&c| c == 0) {
        return Err(ParseError::global(format!("vertex {v} has no color")));
    }
    let graph = Graph::new(n, edges).map_err(|e| ParseError::global(e.to_string()))?;
    let instance = CliqueInstance::new(graph, color_of).map_err(ParseError::global)?;
    Ok((instance, warnings))
}

/// Serialize a host (inverse of [`parse_host`]).
pub fn serialize_host(graph: &LayeredGraph, layout: Option<&GeometricLayout>) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", graph.vertex_count()));
    for (u, v, layer) in graph.records() {
        out.push_str(&format!("e {u} {v} {layer}\n"));
    }
    if let Some(layout) = layout {
        for (v, (x, y)) in layout.positions.iter().enumerate() {
            out.push_str(&format!(
                "pos {v} {} {}\n",
                format_decimal(x, 12),
                format_decimal(y, 12)
            ));
        }
    }
    out
}

/// Serialize a pattern (inverse of [`parse_pattern`]).
pub fn serialize_pattern(pat: &Pattern) -> String {
    let mut out = String::new();
    out.push_str(&format!("k {}\n", pat.k()));
    for &(i, j) in pat.graph.edges() {
        out.push_str(&format!("e {i} {j}\n"));
    }
    for (i, list) in pat.lists.iter().enumerate() {
        if let Some(ids) = list {
            out.push_str(&format!("list {i}"));
            for v in ids {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
    }
    out
}

/// Serialize a clique instance (inverse of [`parse_clique`]).
pub fn serialize_clique(inst: &CliqueInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", inst.graph.vertex_count()));
    for (v, c) in inst.color_of.iter().enumerate() {
        out.push_str(&format!("color {v} {c}\n"));
    }
    for &(u, v) in inst.graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// The JSON result object: `{"count": "<decimal>", "method": ..., "stats": ...}`.
pub fn count_result_json(count: &BigUint, method: &str, stats: serde_json::Value) -> String {
    serde_json::json!({
        "count": count.to_string(),
        "method": method,
        "stats": stats,
    })
    .to_string()
}

/// CSV export of a peel trace, header `step,removed_vertex,max_degree`.
pub fn peel_csv(trace: &PeelTrace) -> String {
    let mut out = String::from("step,removed_vertex,max_degree\n");
    for s in &trace.steps {
        out.push_str(&format!("{},{},{}\n", s.step, s.removed_vertex, s.max_degree));
    }
    out
}
