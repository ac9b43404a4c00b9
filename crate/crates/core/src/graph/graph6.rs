//! The graph6 text format.
//!
//! A graph on `n` vertices is a size header followed by the upper triangle of
//! its adjacency matrix, read column by column, packed six bits per byte with
//! the most significant bit first and every byte offset by 63.

use thiserror::Error;

use super::{Graph, Provenance};

const OPTIONAL_HEADER: &[u8] = b">>graph6<<";
const MAX_N: usize = 258_047;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("malformed size header")]
    MalformedHeader,
    #[error("bit vector truncated: expected {expected} data bytes, found {found}")]
    TruncatedBitVector { expected: usize, found: usize },
    #[error("{0} trailing bytes after the bit vector")]
    TrailingBytes(usize),
    #[error("byte {byte} at offset {offset} is outside the printable range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("padding bits in the last data byte are not zero")]
    NonzeroPadding,
    #[error("graph with {0} vertices exceeds the graph6 limit")]
    TooLarge(usize),
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

fn check_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::InvalidByte { offset, byte })
    }
}

/// Parses one graph. A single trailing newline and the optional `>>graph6<<`
/// prefix are accepted.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let mut s = bytes.strip_prefix(OPTIONAL_HEADER).unwrap_or(bytes);
    if let Some(rest) = s.strip_suffix(b"\n") {
        s = rest.strip_suffix(b"\r").unwrap_or(rest);
    }
    let first = *s.first().ok_or(Graph6Error::MalformedHeader)?;
    let (n, header_len) = if first == 126 {
        if s.len() < 4 || s[1] == 126 {
            return Err(Graph6Error::MalformedHeader);
        }
        let mut n = 0usize;
        for (i, &b) in s[1..4].iter().enumerate() {
            let v = check_byte(i + 1, b).map_err(|_| Graph6Error::MalformedHeader)?;
            n = (n << 6) | v as usize;
        }
        if n < 63 {
            return Err(Graph6Error::MalformedHeader);
        }
        (n, 4)
    } else {
        let v = check_byte(0, first).map_err(|_| Graph6Error::MalformedHeader)?;
        (v as usize, 1)
    };
    let expected = data_len(n);
    let data = &s[header_len..];
    if data.len() < expected {
        return Err(Graph6Error::TruncatedBitVector { expected, found: data.len() });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingBytes(data.len() - expected));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut values = Vec::with_capacity(expected);
    for (i, &b) in data.iter().enumerate() {
        values.push(check_byte(header_len + i, b)?);
    }
    for j in 1..n {
        for i in 0..j {
            if values[bit / 6] >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    if total_bits % 6 != 0 {
        let pad = 6 - total_bits % 6;
        if values[expected - 1] & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    let g = Graph::from_edges(n, edges, Provenance::Ingested { source: "graph6".into() })
        .expect("indices from a triangle walk are in range");
    Ok(g)
}

/// Encodes a graph without a trailing newline.
pub fn emit_graph6(g: &Graph) -> Result<Vec<u8>, Graph6Error> {
    let n = g.n();
    if n > MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(4 + data_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|v| v as u8 + 63));
    }
    let mut cur = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            cur = (cur << 1) | g.adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(cur + 63);
                cur = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((cur << (6 - filled)) + 63);
    }
    Ok(out)
}

pub fn emit_graph6_string(g: &Graph) -> Result<String, Graph6Error> {
    Ok(String::from_utf8(emit_graph6(g)?).expect("graph6 is ASCII"))
}
