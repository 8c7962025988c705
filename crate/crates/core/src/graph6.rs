//! graph6 encoding (one graph per line, 63-offset printable bytes).
//!
//! Order header: `n + 63` for `n <= 62`, `126` plus three 6-bit groups for
//! `n <= 258047`, `126 126` plus six groups beyond. The upper triangle of the
//! adjacency matrix follows in column-major order (`(0,1), (0,2), (1,2),
//! (0,3), ...`), six bits per byte, zero-padded.

use crate::error::{Graph6Error, Graph6ErrorKind};
use crate::graph::Graph;

const HEADER_PREFIX: &[u8] = b">>graph6<<";
const BIAS: u8 = 63;
const MAX_ORDER: usize = (1 << 36) - 1;

fn err(offset: usize, kind: Graph6ErrorKind) -> Graph6Error {
    Graph6Error { offset, kind }
}

fn check_byte(bytes: &[u8], i: usize) -> Result<u8, Graph6Error> {
    let b = bytes[i];
    if !(BIAS..=126).contains(&b) {
        return Err(err(i, Graph6ErrorKind::BadByte(b)));
    }
    Ok(b - BIAS)
}

fn read_groups(bytes: &[u8], start: usize, count: usize) -> Result<usize, Graph6Error> {
    if bytes.len() < start + count {
        return Err(err(bytes.len(), Graph6ErrorKind::BadHeader));
    }
    let mut n = 0usize;
    for i in start..start + count {
        n = (n << 6) | check_byte(bytes, i)? as usize;
    }
    Ok(n)
}

/// Parses one graph6 line. A leading `>>graph6<<` and a trailing newline are
/// accepted; byte offsets in errors are relative to the original input.
pub fn parse_graph6(input: &[u8]) -> Result<Graph, Graph6Error> {
    let mut line = input;
    while let Some((&last, rest)) = line.split_last() {
        if last == b'\n' || last == b'\r' {
            line = rest;
        } else {
            break;
        }
    }
    let base = if line.starts_with(HEADER_PREFIX) { HEADER_PREFIX.len() } else { 0 };
    let body = &line[base..];
    let at = |off: usize| base + off;
    if body.is_empty() {
        return Err(err(at(0), Graph6ErrorKind::Empty));
    }

    let first = check_byte(body, 0).map_err(|e| err(at(e.offset), e.kind))?;
    let (n, header_len) = if first < 63 {
        (first as usize, 1)
    } else if body.len() > 1 && body[1] == 126 {
        let n = read_groups(body, 2, 6).map_err(|e| err(at(e.offset), e.kind))?;
        if n <= 258047 {
            return Err(err(at(0), Graph6ErrorKind::BadHeader));
        }
        (n, 8)
    } else {
        let n = read_groups(body, 1, 3).map_err(|e| err(at(e.offset), e.kind))?;
        if n <= 62 {
            return Err(err(at(0), Graph6ErrorKind::BadHeader));
        }
        (n, 4)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() < expected {
        return Err(err(at(body.len()), Graph6ErrorKind::Truncated { expected, found: data.len() }));
    }
    if data.len() > expected {
        return Err(err(at(header_len + expected), Graph6ErrorKind::TrailingGarbage));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = check_byte(data, k / 6).map_err(|e| err(at(header_len + e.offset), e.kind))?;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = expected - 1;
        let byte = check_byte(data, last).map_err(|e| err(at(header_len + e.offset), e.kind))?;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if byte & pad_mask != 0 {
            return Err(err(at(header_len + last), Graph6ErrorKind::NonzeroPadding));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 bit stream yields a simple graph"))
}

/// Encodes `g` without header prefix or trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_ORDER, "graph too large for graph6");
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
