//! graph6 and plain edge-list readers and writers.
//!
//! graph6 follows the public format exactly: a size header `N(n)` followed
//! by the upper triangle of the adjacency matrix in column order
//! (`(0,1),(0,2),(1,2),(0,3),...`), packed six bits per byte with 63 added
//! and zero padding at the end.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} outside the printable graph6 range")]
    BadByte(u8),
    #[error("malformed graph6 size header")]
    BadHeader,
    #[error("graph6 body has {found} bytes, expected {expected}")]
    BadLength { expected: usize, found: usize },
    #[error("nonzero graph6 padding bits")]
    BadPadding,
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edge-list" => Ok(Format::EdgeList),
            other => Err(format!("unknown format `{other}` (expected graph6 or edgelist)")),
        }
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n) / 12);
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn graph6_decode(input: &[u8]) -> Result<Graph, FormatError> {
    let bytes = input.strip_prefix(b">>graph6<<").unwrap_or(input);
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::BadByte(b));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, body) = if bytes[0] != 126 {
        (val(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(FormatError::BadHeader);
        }
        let n = bytes[1..4].iter().fold(0, |acc, &b| (acc << 6) | val(b));
        if n <= 62 {
            return Err(FormatError::BadHeader);
        }
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(FormatError::BadHeader);
        }
        let n = bytes[2..8].iter().fold(0, |acc, &b| (acc << 6) | val(b));
        if n <= 258_047 {
            return Err(FormatError::BadHeader);
        }
        (n, &bytes[8..])
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = total_bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::BadLength { expected, found: body.len() });
    }
    let bit = |k: usize| (val(body[k / 6]) >> (5 - k % 6)) & 1 == 1;
    for k in total_bits..expected * 6 {
        if bit(k) {
            return Err(FormatError::BadPadding);
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// `"n m"` header, then one `"u v"` line per edge in ascending order.
pub fn edgelist_encode(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("writing to a String");
    }
    s
}

pub fn edgelist_decode(text: &str) -> Result<Graph, FormatError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(FormatError::Empty)?;
    let (n, m) = parse_pair(header, line)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(parse_pair(l, line)?);
    }
    if edges.len() != m {
        return Err(FormatError::EdgeList { line, msg: format!("header announces {m} edges, found {}", edges.len()) });
    }
    Ok(Graph::new(n, &edges)?)
}

fn parse_pair(l: &str, line: usize) -> Result<(usize, usize), FormatError> {
    let err = |msg: &str| FormatError::EdgeList { line, msg: msg.to_string() };
    let mut it = l.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a.parse().map_err(|_| err("not an integer"))?;
    let b = b.parse().map_err(|_| err("not an integer"))?;
    Ok((a, b))
}

pub fn encode(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => graph6_encode(g) + "\n",
        Format::EdgeList => edgelist_encode(g),
    }
}

/// Parses one or more graphs. graph6 input holds one graph per line; an
/// edge list holds exactly one graph. Without an explicit format, a first
/// line made of two integers selects the edge-list reader.
pub fn decode_all(text: &str, format: Option<Format>) -> Result<Vec<Graph>, FormatError> {
    let format = format.unwrap_or_else(|| {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty());
        match first {
            Some(l) if parse_pair(l, 1).is_ok() => Format::EdgeList,
            _ => Format::Graph6,
        }
    });
    match format {
        Format::EdgeList => Ok(vec![edgelist_decode(text)?]),
        Format::Graph6 => {
            let graphs: Result<Vec<_>, _> =
                text.lines().map(str::trim).filter(|l| !l.is_empty()).map(|l| graph6_decode(l.as_bytes())).collect();
            let graphs = graphs?;
            if graphs.is_empty() {
                return Err(FormatError::Empty);
            }
            Ok(graphs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference encoder working bit by bit from the published description.
    fn oracle_graph6(g: &Graph) -> String {
        let n = g.order();
        assert!(n <= 62);
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(g.has_edge(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        s.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let v = chunk.iter().fold(0u8, |a, &b| a * 2 + b as u8);
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn known_strings() {
        assert_eq!(graph6_encode(&Graph::complete(3)), "Bw");
        assert_eq!(graph6_encode(&Graph::empty(1)), "@");
        assert_eq!(graph6_encode(&Graph::empty(0)), "?");
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(graph6_encode(&g), "DQc");
        assert_eq!(graph6_encode(&g), oracle_graph6(&g));
    }

    #[test]
    fn long_header() {
        let g = Graph::path(100);
        let s = graph6_encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99]);
        assert_eq!(graph6_decode(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn decode_rejects_malformed() {
        assert_eq!(graph6_decode(b""), Err(FormatError::Empty));
        assert!(matches!(graph6_decode(b"Bww"), Err(FormatError::BadLength { .. })));
        // K2 has one bit; setting a padding bit must fail.
        assert_eq!(graph6_decode(b"A`"), Err(FormatError::BadPadding));
        assert_eq!(graph6_decode(b"AA"), Err(FormatError::BadPadding));
        assert_eq!(graph6_decode(b"A\x10"), Err(FormatError::BadByte(0x10)));
        assert!(graph6_decode(b">>graph6<<Bw").is_ok());
    }

    #[test]
    fn edgelist() {
        let g = Graph::cycle(4);
        let text = edgelist_encode(&g);
        assert_eq!(text, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(edgelist_decode(&text).unwrap(), g);
        assert!(edgelist_decode("3 2\n0 1\n").is_err());
        assert!(edgelist_decode("3 1\n0 3\n").is_err());
        assert_eq!(decode_all(&text, None).unwrap(), vec![g]);
        assert_eq!(decode_all("Bw\n@\n", None).unwrap().len(), 2);
    }
}
