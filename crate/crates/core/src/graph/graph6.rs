//! graph6 reading and writing, short form only (order at most 62).

use super::Graph;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

const HEADER: &str = ">>graph6<<";
const MAX_SHORT_ORDER: usize = 62;

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Encodes a graph as a graph6 record (without trailing newline).
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_SHORT_ORDER {
        return Err(Error::InvalidArgument(format!(
            "graph6 short form supports at most {MAX_SHORT_ORDER} vertices, got {n}"
        )));
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses one graph6 record. An optional `>>graph6<<` prefix and trailing
/// line terminator are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let (record, base) = match text.strip_prefix(HEADER) {
        Some(rest) => (rest, HEADER.len()),
        None => (text, 0),
    };
    let record = record.trim_end_matches(['\n', '\r']);
    let bytes = record.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(err(base, "empty record"));
    };
    if !(63..=126).contains(&first) {
        return Err(err(base, format!("invalid order byte 0x{first:02x}")));
    }
    if first == 126 {
        return Err(err(base, "long-form order (n > 62) is not supported"));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() < nbytes {
        return Err(err(
            base + bytes.len(),
            format!("truncated bit vector: expected {nbytes} bytes, found {}", body.len()),
        ));
    }
    if body.len() > nbytes {
        return Err(err(base + 1 + nbytes, "trailing data after record"));
    }
    let mut adj = vec![VertexSet::EMPTY; n];
    let mut k = 0;
    for (pos, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + 1 + pos, format!("invalid data byte 0x{b:02x}")));
        }
        let six = b - 63;
        for bit in (0..6).rev() {
            let set = (six >> bit) & 1 == 1;
            if k >= nbits {
                if set {
                    return Err(err(base + 1 + pos, "nonzero padding bits"));
                }
                continue;
            }
            if set {
                let (i, j) = pair_at(k);
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Bit index `k` of the upper triangle, column-major, to `(i, j)` with `i < j`.
fn pair_at(k: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= k {
        start += j;
        j += 1;
    }
    (k - start, j)
}

/// Parses newline-separated records. Blank lines are skipped and a leading
/// `>>graph6<<` header on any line is stripped. Error offsets are relative to
/// the whole text.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_end_matches(['\n', '\r']);
        if !trimmed.trim().is_empty() {
            let g = parse_graph6(trimmed).map_err(|e| match e {
                Error::Graph6 { offset: o, message } => Error::Graph6 {
                    offset: offset + o,
                    message,
                },
                other => other,
            })?;
            out.push(g);
        }
        offset += line.len();
    }
    Ok(out)
}
