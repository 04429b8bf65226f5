//! graph6 and edge-list encodings.
//!
//! graph6: one order byte `n + 63` (this crate accepts `n <= 62`), followed
//! by the upper-triangle adjacency bits in column-major order
//! (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte, big-endian within
//! the byte, each byte offset by 63. A leading `>>graph6<<` header is
//! tolerated; streams hold one graph per line.
//!
//! Edge lists: one `u v` pair per line, `#` starts a comment, and an optional
//! `n=<int>` line declares the order so that isolated vertices survive. The
//! order is the larger of the declared value and `max id + 1`.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

/// Largest order representable with the single-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 62;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl Format {
    /// Guesses the format from a file extension (`.g6`, `.graph6`, anything
    /// else is treated as an edge list).
    pub fn from_path(path: &str) -> Format {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".g6") || lower.ends_with(".graph6") {
            Format::Graph6
        } else {
            Format::EdgeList
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Graph6 => "graph6",
            Format::EdgeList => "edgelist",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edges" => Ok(Format::EdgeList),
            other => Err(format!("unknown format `{other}` (expected graph6 or edgelist)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("graph6 byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("graph6 order {0} exceeds the supported maximum of 62")]
    OrderTooLarge(usize),
    #[error("input is not valid UTF-8")]
    Encoding,
}

/// A parse error located in a multi-graph stream (1-based line number).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {source}")]
pub struct StreamError {
    pub line: usize,
    #[source]
    pub source: ParseError,
}

/// Parses one graph in the given format.
pub fn parse_graph(bytes: &[u8], format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Graph6 => parse_graph6(bytes),
        Format::EdgeList => parse_edgelist(std::str::from_utf8(bytes).map_err(|_| ParseError::Encoding)?),
    }
}

/// Decodes a single graph6 line. Trailing newline and an optional header are
/// accepted.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, ParseError> {
    let mut data = bytes;
    let mut base = 0;
    if data.starts_with(GRAPH6_HEADER.as_bytes()) {
        data = &data[GRAPH6_HEADER.len()..];
        base = GRAPH6_HEADER.len();
    }
    while let Some((&last, rest)) = data.split_last() {
        if last == b'\n' || last == b'\r' {
            data = rest;
        } else {
            break;
        }
    }
    let err = |offset: usize, reason: &str| ParseError::Graph6 {
        offset: base + offset,
        reason: reason.to_string(),
    };
    let Some(&order_byte) = data.first() else {
        return Err(err(0, "empty input"));
    };
    if !(63..=126).contains(&order_byte) {
        return Err(err(0, "order byte outside 63..=126"));
    }
    if order_byte == 126 {
        return Err(ParseError::OrderTooLarge(GRAPH6_MAX_ORDER + 1));
    }
    let n = (order_byte - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &data[1..];
    if body.len() != expected {
        return Err(err(
            1 + body.len().min(expected),
            &format!("expected {expected} adjacency bytes for order {n}, found {}", body.len()),
        ));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(1 + i, "adjacency byte outside 63..=126"));
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 decoding yields a simple graph"))
}

/// Encodes a graph as one graph6 line (no trailing newline).
pub fn to_graph6(g: &Graph) -> Result<String, ParseError> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(ParseError::OrderTooLarge(n));
    }
    let mut out = vec![(n + 63) as u8];
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

pub fn parse_edgelist(text: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |reason: String| ParseError::EdgeList { line: line_no, reason };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if declared.is_some() {
                return Err(err("duplicate order header".into()));
            }
            declared = Some(rest.trim().parse().map_err(|_| err(format!("invalid order `{}`", rest.trim())))?);
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `u v`, found `{line}`")));
        };
        let parse_id = |s: &str| s.parse::<usize>().map_err(|_| err(format!("invalid vertex id `{s}`")));
        let (u, v) = (parse_id(a)?, parse_id(b)?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, line_no));
    }
    let needed = max_id.map_or(0, |m| m + 1);
    let n = match declared {
        Some(d) if d < needed => {
            let line = edges.iter().find(|e| e.0 >= d || e.1 >= d).map_or(0, |e| e.2);
            return Err(ParseError::EdgeList {
                line,
                reason: format!("vertex id exceeds declared order {d}"),
            });
        }
        Some(d) => d,
        None => needed,
    };
    Ok(Graph::from_edges(n, edges.into_iter().map(|(u, v, _)| (u, v))).expect("validated edge list"))
}

/// Writes `u v` lines for `u < v`; an `n=` header is emitted only when the
/// edges alone would not recover the order.
pub fn to_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    let needed = g.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
    if needed != g.order() {
        out.push_str(&format!("n={}\n", g.order()));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Lazily decodes a graph6 stream, one graph per line. Blank lines and
/// lines starting with `#` are skipped.
pub fn graph6_stream<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph, StreamError>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        let line = match line {
            Ok(l) => l,
            Err(_) => {
                return Some(Err(StreamError {
                    line: line_no,
                    source: ParseError::Encoding,
                }))
            }
        };
        let trimmed = line.trim_end();
        let body = trimmed.strip_prefix(GRAPH6_HEADER).unwrap_or(trimmed);
        if body.is_empty() || body.starts_with('#') {
            return None;
        }
        Some(parse_graph6(body.as_bytes()).map_err(|source| StreamError { line: line_no, source }))
    })
}
