//! Rainbow matchings in edge-coloured bipartite multigraphs, Latin square transversals and
//! rainbow connectivity in coloured digraphs.

pub mod bounds;
pub mod budget;
pub mod connectivity;
pub mod digraph;
pub mod generate;
pub mod golden;
pub mod graph;
pub mod greedy;
pub mod instances;
pub mod io;
pub mod latin;
pub mod matching;
pub mod menger;
pub mod oracle;
pub mod simplex;
pub mod switching;

pub use graph::{ColouredBipartiteMultigraph, Edge, GraphError, Side};
pub use greedy::greedy_rainbow_matching;
pub use matching::{verify_rainbow_matching, MatchingContext, RainbowMatching};
