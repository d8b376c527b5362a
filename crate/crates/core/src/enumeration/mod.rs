//! Graph streams and sweeps of `s(G)` against a threshold.

mod source;
mod sweep;

pub use source::{
    enumerate_connected_labeled, ingest_graph6_file, mask_count, ConnectedLabeled, Graph6Lines,
    GraphSource, MAX_BUILTIN_ORDER,
};
pub use sweep::{sweep, Execution, SweepOptions, SweepSummary};

use std::path::PathBuf;

use thiserror::Error;

use crate::graph::Graph6Error;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("built-in enumeration supports 1 <= n <= {max}, got {0}", max = MAX_BUILTIN_ORDER)]
    UnsupportedOrder(usize),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
