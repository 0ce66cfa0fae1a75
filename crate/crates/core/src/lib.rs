//! Coloring graphs that are given as edge-disjoint unions of complete
//! bipartite graphs (bicliques).
//!
//! The main entry point is [`asz::asz_color`], which colors a
//! [`biclique::BicliquePartition`] with `m` bicliques using at most
//! `F(m)` colors, where `F(m+1) = F(m) + F(floor(m/4))` and `F(0) = 1`
//! (see [`bounds`]). Exact oracles for the chromatic number and the biclique
//! partition number back the test suites and the small-graph sweep.

pub mod asz;
pub mod biclique;
pub mod bounds;
pub mod bp;
pub mod cli;
pub mod error;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod limits;
pub mod sweep;

pub use asz::{
    asz_color, build_auxiliary_digraph, choose_pivot, internal_edge_side, AuxiliaryDigraph,
    PivotChoice, RecursionTrace, Strategy, TraceRow,
};
pub use biclique::{
    bitvector_coloring, product_coloring, restrict, union_graph, validate, Biclique,
    BicliquePartition, Side, ValidationReport, Violation, ViolationKind,
};
pub use bounds::{build_table, verify_bound_chain, BoundKind, BoundTable};
pub use bp::bp_exact;
pub use error::{Error, Result};
pub use gen::{disjoint_union, gen_matching, gen_random_partition, gen_star_partition};
pub use graph::{
    chromatic_number_exact, combine_colorings, induced_subgraph, is_proper, Coloring, Graph,
    VertexSubset,
};
pub use instance::InstanceFile;
pub use limits::OracleLimits;
pub use sweep::{conjecture_sweep, SweepReport};
