//! Exact Potts model partition functions Z_G(Q,v) and chromatic polynomials
//! for arbitrary graphs, computed with a transfer matrix propagated over a
//! tree decomposition of the input graph.
//!
//! The state space of the transfer matrix is the set of partitions of the
//! currently active vertices; edges act as `1 + v J_ij` where `J_ij`
//! amalgamates the blocks of the two endpoints, and vertex deletion
//! contributes a factor `Q` per completed connected component. Branches of
//! the decomposition tree are combined by fusing their states through the
//! join operation of the partition lattice.
//!
//! The crate ships four interchangeable coefficient rings (big-integer
//! polynomials in Q, bivariate polynomials in Q and v, residues modulo a
//! prime with Chinese-remainder reconstruction, and plain floats), a
//! min-fill decomposition heuristic with per-bag scheduling, brute-force
//! oracles for testing, and a chromatic-root pipeline for graph ensembles.

pub mod cli;
pub mod engine;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod roots;
pub mod treedecomp;
pub mod weights;

pub use graph::Graph;
pub use partition::SetPartition;
pub use weights::{Weight, WeightMode};
