//! Median-consistency analysis of finite simple graphs.
//!
//! A vertex `μ` is *medico* when every triple `(μ, v, w)` has exactly one
//! median. The crate computes medico sets and k-median numbers, classifies
//! graphs (median, modular, meshed, bipartite, interval-monotone), detects
//! the induced patterns that obstruct medians, and cross-checks the known
//! characterizations against the definition on graph corpora.

pub mod bitset;
pub mod cli;
pub mod conditions;
pub mod distance;
pub mod format;
pub mod generators;
pub mod graph;
pub mod metric;
pub mod patterns;
pub mod report;
pub mod rng;
pub mod verify;

pub use bitset::VertexSet;
pub use distance::DistanceMatrix;
pub use format::{parse_graph, Format, ParseError};
pub use graph::{Graph, GraphError};
pub use metric::{Metric, MetricError};
pub use report::{analyze, AnalysisReport};
