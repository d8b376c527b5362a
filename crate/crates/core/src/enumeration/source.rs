use std::fs::File;
use std::io::{BufRead, BufReader, Lines};
use std::path::{Path, PathBuf};

use super::EnumError;
use crate::graph::{parse_graph6, Graph};

/// Largest order the built-in labeled enumeration accepts.
pub const MAX_BUILTIN_ORDER: usize = 7;

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Where a sweep draws its graphs from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    /// Every connected labeled graph on `n` vertices.
    Builtin { n: usize },
    /// One graph6 string per line.
    File { path: PathBuf },
}

/// `(i, j)` pairs with `i < j` in graph6 order: by `j`, then `i`.
fn pairs(n: usize) -> Vec<(u8, u8)> {
    (1..n)
        .flat_map(|j| (0..j).map(move |i| (i as u8, j as u8)))
        .collect()
}

/// Number of edge bitmasks for order `n`, i.e. `2^(n(n-1)/2)`.
pub fn mask_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// Iterator over the connected labeled graphs on `n` vertices whose edge
/// bitmask lies in a range. Bit `k` of the mask is the `k`-th vertex pair in
/// graph6 order.
#[derive(Debug, Clone)]
pub struct ConnectedLabeled {
    n: usize,
    pairs: Vec<(u8, u8)>,
    next: u64,
    end: u64,
}

impl ConnectedLabeled {
    pub fn range(n: usize, start: u64, end: u64) -> Result<Self, EnumError> {
        if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
            return Err(EnumError::UnsupportedOrder(n));
        }
        Ok(ConnectedLabeled {
            n,
            pairs: pairs(n),
            next: start,
            end: end.min(mask_count(n)),
        })
    }

    fn rows(&self, mask: u64) -> [u8; MAX_BUILTIN_ORDER] {
        let mut rows = [0u8; MAX_BUILTIN_ORDER];
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = self.pairs[k];
            rows[i as usize] |= 1 << j;
            rows[j as usize] |= 1 << i;
        }
        rows
    }

    fn connected(&self, rows: &[u8; MAX_BUILTIN_ORDER]) -> bool {
        let full = ((1u16 << self.n) - 1) as u8;
        let mut reached = 1u8;
        let mut frontier = 1u8;
        while frontier != 0 {
            let mut next = 0u8;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= rows[v];
            }
            frontier = next & !reached;
            reached |= next;
        }
        reached == full
    }

    fn build(&self, mask: u64) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = self.pairs[k];
            g.insert_edge(i as usize, j as usize);
        }
        g
    }
}

impl Iterator for ConnectedLabeled {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if self.connected(&self.rows(mask)) {
                return Some(self.build(mask));
            }
        }
        None
    }
}

/// Every connected labeled graph on `n` vertices (`1 <= n <= 7`), in
/// ascending edge-bitmask order.
pub fn enumerate_connected_labeled(n: usize) -> Result<ConnectedLabeled, EnumError> {
    ConnectedLabeled::range(n, 0, u64::MAX)
}

/// Streams `(line number, graph)` pairs from a graph6 file. Blank lines and
/// a leading `>>graph6<<` header are skipped.
pub fn ingest_graph6_file(path: impl AsRef<Path>) -> Result<Graph6Lines, EnumError> {
    let path = path.as_ref().to_path_buf();
    let file = File::open(&path).map_err(|source| EnumError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(Graph6Lines {
        path,
        lines: BufReader::new(file).lines(),
        line_no: 0,
    })
}

pub struct Graph6Lines {
    path: PathBuf,
    lines: Lines<BufReader<File>>,
    line_no: usize,
}

impl Graph6Lines {
    /// Next non-blank line, header stripped, without parsing it.
    pub(crate) fn next_raw(&mut self) -> Option<Result<(usize, String), EnumError>> {
        loop {
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(source) => {
                    return Some(Err(EnumError::Io {
                        path: self.path.clone(),
                        source,
                    }))
                }
            };
            self.line_no += 1;
            let body = line.strip_prefix(GRAPH6_HEADER).unwrap_or(&line).trim_end();
            if !body.is_empty() {
                return Some(Ok((self.line_no, body.to_string())));
            }
        }
    }
}

pub(crate) fn parse_line(line_no: usize, text: &str) -> Result<Graph, EnumError> {
    parse_graph6(text).map_err(|source| EnumError::Parse {
        line: line_no,
        source,
    })
}

impl Iterator for Graph6Lines {
    type Item = Result<(usize, Graph), EnumError>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(
            self.next_raw()?
                .and_then(|(no, text)| parse_line(no, &text).map(|g| (no, g))),
        )
    }
}
