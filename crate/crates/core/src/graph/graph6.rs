use thiserror::Error;

use super::Graph;

/// Largest order representable by the short and 4-byte long size forms.
pub const MAX_GRAPH6_ORDER: usize = (1 << 18) - 1;

const OFFSET: u8 = 63;
const LONG_MARK: u8 = 126;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte} at position {pos} is outside the printable range 63..=126")]
    InvalidByte { pos: usize, byte: u8 },
    #[error("8-byte size form is not supported")]
    UnsupportedSize,
    #[error("truncated size field")]
    TruncatedSize,
    #[error("order {n} has {expected} body bytes but {found} were given")]
    BodyLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("order {0} exceeds the graph6 limit of {MAX_GRAPH6_ORDER}")]
    TooLarge(usize),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(pos) = bytes.iter().position(|b| !(OFFSET..=LONG_MARK).contains(b)) {
        return Err(Graph6Error::InvalidByte {
            pos,
            byte: bytes[pos],
        });
    }

    let (n, body) = if bytes[0] == LONG_MARK {
        if bytes.get(1) == Some(&LONG_MARK) {
            return Err(Graph6Error::UnsupportedSize);
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedSize);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    };

    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::BodyLength {
            n,
            expected,
            found: body.len(),
        });
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - OFFSET;
            if chunk >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_MARK);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
