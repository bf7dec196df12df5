//! Constant-query property testers for general graphs in the random neighbor
//! (and random neighbor/edge) query models, and their emulation on
//! random-order edge streams.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, generators and
//! the command line front end live in the `discstream` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod disc;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod rbfs;
pub mod seed;
pub mod stream;
pub mod tester;

pub use disc::{
    canonical_code, contains_forbidden, decompose, is_isomorphic, stitch, CanonicalCode,
    ColoredDiscMultiset, ForbiddenFamily, Witness,
};
pub use error::{Error, Result};
pub use graph::{union, ColorId, Edge, Graph, Subgraph, VertexId};
pub use oracle::QueryOracle;
pub use rbfs::{random_bfs, RootedDisc};
pub use seed::derive_seed;
pub use stream::{multi_collect, random_order, stream_collect, MultiCollector, StreamOrder};
pub use tester::{
    builtin_family, canonical_test, stream_test, Builtin, Decision, Mode, TesterParams, Verdict,
};
