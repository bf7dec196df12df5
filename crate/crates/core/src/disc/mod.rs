//! Disc types: canonical codes, forbidden families, and the stitching and
//! decomposition of colored disc multisets.

pub mod canon;
pub mod forbidden;
pub mod stitch;

pub use canon::{
    canonical_code, is_isomorphic, subgraph_code, subgraphs_isomorphic, CanonicalCode,
    LabeledGraph, VertexLabel, CANON_CAP,
};
pub use forbidden::{contains_forbidden, find_embedding, ForbiddenFamily, Witness, PATTERN_CAP};
pub use stitch::{decompose, is_q_bounded, stitch, ColoredDiscMultiset, DECOMPOSE_CAP};
