//! graph6 encoding: size header, then the upper triangle of the adjacency
//! matrix column by column, six bits per printable byte.

use super::graph::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const MAX_N: usize = 258_047;

/// Header conventionally emitted by generators at the top of a file.
pub const HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= MAX_N, "graph6 supports at most {MAX_N} vertices");
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let text = text.strip_suffix(b"\n").unwrap_or(text);
    let text = text.strip_suffix(b"\r").unwrap_or(text);
    if let Some(&c) = text.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(Error::Graph6(format!("byte {c} outside 63..=126")));
    }
    let (n, body) = match text {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            if rest[0] == 126 {
                return Err(Error::Graph6("graphs above 258047 vertices unsupported".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &c| acc << 6 | (c - BIAS) as usize);
            if n < 63 {
                return Err(Error::Graph6(format!("non-minimal size header for n={n}")));
            }
            (n, &rest[3..])
        }
        [c, rest @ ..] => ((c - BIAS) as usize, rest),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let want = nbits.div_ceil(6);
    if body.len() != want {
        return Err(Error::Graph6(format!(
            "expected {want} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    let pad = want * 6 - nbits;
    if pad > 0 {
        let last = body[want - 1] - BIAS;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}
