//! Exact and approximate counting of small pattern graphs in large
//! multi-layer hosts, exploiting per-layer structure: bounded degree,
//! small vertex covers, and geometric arrangements. Includes list-restricted
//! counting (each pattern vertex confined to an allowed host subset), a
//! color-coding randomized estimator, hardness-gadget generators with
//! structural validators, and a greedy degree-peeling analyzer.

pub mod count;
pub mod decimal;
pub mod decompose;
pub mod error;
pub mod gadgets;
pub mod gen;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod lists;
pub mod oracle;

pub use count::{count_bounded_degree, count_dispatch, count_vc_layer, exists_embedding, CountStrategy};
pub use error::CountError;
pub use graph::{Embedding, Graph, LayeredGraph, Pattern};
pub use oracle::{count_embeddings_oracle, exists_embedding_oracle};
