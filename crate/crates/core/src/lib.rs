//! Index coding with side information over GF(2).
//!
//! The library models groupcast index-coding problems and their
//! side-information graphs, computes exact minrank for small instances,
//! reduces graphs by removing edges between cycle-free cliques and merging
//! cliques, and assembles index codes from clique and cycle covers.
//!
//! All indices in the API are 0-based. Text formats, error messages and
//! audit logs are 1-based (`x1` is message index 0).

pub mod code;
pub mod cover;
pub mod cycles;
pub mod error;
pub mod gf2;
pub mod groupcast;
pub mod instance;
pub mod minrank;
pub mod problem;

pub use code::{
    build_code, code_length, verify_decodable, BuiltCode, DecodabilityReport, IndexCode, Verdict,
};
pub use cover::{
    algorithm1_cover, algorithm1_trace, column_distance, cover_code_length, eldg_cover,
    eldg_merges, entry_distance, ldg_cover, ldg_merges, row_distance, CliqueCover,
    InterEntryDistance, MergeRound, MergeStep, Orientation,
};
pub use cycles::{
    cycle_free_pair, greedy_cycle_cover, on_some_cycle, Clique, CycleCover, DirectedCycle,
};
pub use error::{Error, Result};
pub use gf2::{in_span, EchelonBasis, Gf2Matrix, Gf2Vector};
pub use groupcast::{
    compare_methods, construction2, converted_graph, partition_multicast_length,
    smallest_prime_power_at_least, theorem4_convert, Comparison, Construction, PartitionPlan,
};
pub use instance::{parse_instance, serialize_instance, Instance, Parsed};
pub use minrank::{
    construction1_reduce, mais, minrank_enumerate, minrank_exact, reduce_pipeline, strip_acyclic,
    theorem2_reduce, theorem2_reduce_logged, AuditEntry, MinrankResult, ReducedGraph, Reduction,
    SolverConfig, Stripped,
};
pub use problem::{
    message_set_vector, AdjacencyMatrix, Cell, FittingPattern, GroupcastProblem, Receiver,
    SideInfoGraph, PATH_COUNT_CAP,
};
