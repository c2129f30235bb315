//! Contextuality of multi-qubit observable configurations.
//!
//! This crate builds the symplectic polar spaces W(2N−1,2) whose points are
//! the nonidentity canonical N-qubit Pauli observables and whose lines are
//! the triples of pairwise-commuting observables multiplying to ±identity,
//! together with their hyperbolic and elliptic quadrics. On any such
//! configuration of signed contexts it can
//!
//! - search for ±1 point assignments minimizing the number of contexts whose
//!   product sign is wrong (a stochastic local search giving upper bounds on
//!   the degree of contextuality),
//! - compute the exact degree at small scale by walking the F₂ column space
//!   of the incidence matrix in Gray-code order,
//! - evaluate closed-form lower bounds and polarity counts,
//! - classify the geometry of the unsatisfied part (degree and line-type
//!   profiles, skeleton graphs, recognition of distinguished graphs and
//!   configurations),
//! - persist runs as versioned JSON records and export configurations as
//!   XOR-CNF instances.
//!
//! Everything is deterministic: solver runs are reproducible bit-for-bit
//! from their seeds regardless of thread count.

mod error;

pub mod analysis;
pub mod bounds;
pub mod config;
pub mod exact;
pub mod pauli;
pub mod records;
pub mod rng;
pub mod solver;
pub mod space;
pub mod xor;

pub use analysis::{
    complete_bipartite, connected_line_components, coxeter_graph, degree_profile, dw52_profile,
    graphs_isomorphic, haar_graph, heawood_graph, line_type_profile, lines_in_class,
    point_degrees, point_hyperplane_graph, recognize_hexagon, skeleton_graph, DegreeProfile,
    LineTypeProfile, SimpleGraph, MAX_GRAPH_VERTICES,
};
pub use bounds::{lower_bound_full, polarity_count};
pub use config::{Assignment, Configuration, UnsatisfiedConfiguration};
pub use error::{Error, Result};
pub use exact::{exact_degree, incidence_rank, Gf2Basis, DEFAULT_BUDGET_LOG2};
pub use pauli::{triple_sign, Observable, PhasedProduct, MAX_QUBITS};
pub use records::{Geometry, RecordedResult, RunRecord, POINT_ORDER_RULE, SCHEMA_VERSION};
pub use solver::{solve, solve_once, SearchState, SolveResult, SolverParams, TracePoint};
pub use space::{
    line_count_full, point_count_full, quadric_family_size, quadric_point_count, Line, PointSet,
    Quadric, QuadricKind, SymplecticSpace,
};
pub use xor::{export_xor_cnf, write_xor_cnf, xor_cnf_string};
