//! DIMACS `.col` and graph6 encodings, plus the JSON label sidecar.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("byte {byte}: {message}")]
    Graph6 { byte: usize, message: String },
    #[error("label sidecar: {0}")]
    Labels(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// DIMACS edge format, 1-based: a `p edge n m` header then one `e u v` line per
/// edge in lexicographic order. No trailing newline.
pub fn emit_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("\ne {} {}", u + 1, v + 1));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let err = |line: usize, message: String| ParseError::Dimacs { line, message };
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if n.is_some() {
                    return Err(err(line_no, "duplicate problem line".into()));
                }
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
                    return Err(err(line_no, format!("malformed header {line:?}")));
                }
                let count = fields[2]
                    .parse()
                    .map_err(|_| err(line_no, format!("bad vertex count {:?}", fields[2])))?;
                fields[3]
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("bad edge count {:?}", fields[3])))?;
                n = Some(count);
            }
            "e" => {
                let n = n.ok_or_else(|| err(line_no, "edge before problem line".into()))?;
                if fields.len() != 3 {
                    return Err(err(line_no, format!("malformed edge line {line:?}")));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields[1..]) {
                    let v: usize =
                        f.parse().map_err(|_| err(line_no, format!("bad vertex index {f:?}")))?;
                    if v == 0 || v > n {
                        return Err(err(line_no, format!("vertex {v} outside 1..={n}")));
                    }
                    *slot = v - 1;
                }
                if ends[0] == ends[1] {
                    return Err(err(line_no, format!("self-loop at vertex {}", ends[0] + 1)));
                }
                edges.push((ends[0], ends[1]));
            }
            other => return Err(err(line_no, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| err(0, "missing problem line".into()))?;
    Ok(Graph::from_edges(n, &edges)?)
}

const G6_MAX_N: usize = 68_719_476_735;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Standard graph6 encoding (no header, no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    assert!(n <= G6_MAX_N);
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let err = |byte: usize, message: String| ParseError::Graph6 { byte, message };
    let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut offset = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        offset = 10;
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(offset + pos, format!("byte {:#04x} outside graph6 range", bytes[pos])));
    }
    let val = |i: usize| (bytes[i] - 63) as usize;
    let (n, header) = match bytes {
        [] => return Err(err(offset, "empty input".into())),
        [126, 126, ..] => {
            if bytes.len() < 8 {
                return Err(err(offset + bytes.len(), "truncated size field".into()));
            }
            ((2..8).fold(0, |acc, i| acc << 6 | val(i)), 8)
        }
        [126, ..] => {
            if bytes.len() < 4 {
                return Err(err(offset + bytes.len(), "truncated size field".into()));
            }
            ((1..4).fold(0, |acc, i| acc << 6 | val(i)), 4)
        }
        _ => (val(0), 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = header + pairs.div_ceil(6);
    if bytes.len() != expected {
        return Err(err(
            offset + bytes.len().min(expected),
            format!("length {} does not match {expected} expected for n={n}", bytes.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let b = val(header + k / 6);
            if b >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if k % 6 != 0 && val(expected - 1) & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(err(offset + expected - 1, "nonzero padding bits".into()));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Label sidecar: a JSON array of strings indexed by vertex.
pub fn emit_labels(g: &Graph) -> Option<String> {
    g.labels().map(|l| serde_json::to_string(l).expect("string arrays serialize"))
}

pub fn attach_labels(g: Graph, json: &str) -> Result<Graph, ParseError> {
    let labels: Vec<String> =
        serde_json::from_str(json).map_err(|e| ParseError::Labels(e.to_string()))?;
    Ok(g.with_labels(labels)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    Graph6,
}

impl GraphFormat {
    /// Guesses from a file name, falling back to content sniffing.
    pub fn detect(name: &str, content: &str) -> GraphFormat {
        let lower = name.to_ascii_lowercase();
        if lower.ends_with(".g6") || lower.ends_with(".graph6") {
            return GraphFormat::Graph6;
        }
        if lower.ends_with(".col") || lower.ends_with(".dimacs") {
            return GraphFormat::Dimacs;
        }
        let first = content.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        if first.starts_with("p ") || first.starts_with('c') || first.starts_with("e ") {
            GraphFormat::Dimacs
        } else {
            GraphFormat::Graph6
        }
    }

    pub fn parse(self, text: &str) -> Result<Graph, ParseError> {
        match self {
            GraphFormat::Dimacs => parse_dimacs(text),
            GraphFormat::Graph6 => parse_graph6(text),
        }
    }
}
