//! Exact solver for modular neighborhood-sum chromatic invariants of finite
//! simple graphs.
//!
//! For a graph `G`, a modulus `n`, and a target (a fixed residue `k` or
//! "anything nonzero"), the invariant is the minimum number of distinct
//! values in a proper integer labeling of `G` whose neighborhood sums,
//! open or closed, all meet the target modulo `n`. This crate computes
//! those minima exactly, validates explicit labelings, predicts values for
//! named graph families from closed forms, verifies periodic colorings of
//! infinite tilings and trees on finite windows, and cross-checks the
//! solver against an independent brute-force oracle.
//!
//! ```
//! use modchrom::{generate, min_order, ConstraintSpec, FamilySpec, NeighborhoodKind};
//!
//! let graph = generate(FamilySpec::GeneralizedPetersen(6, 2))?;
//! let spec = ConstraintSpec::nonzero(NeighborhoodKind::Closed, 2)?;
//! assert_eq!(min_order(&graph, &spec).order(), Some(5));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod coloring;
pub mod constraint;
pub mod families;
pub mod graph;
pub mod ieds;
pub mod io;
pub mod oracle;
pub mod periodic;
pub mod solve;

pub use coloring::{chromatic_number, lex_min_coloring};
pub use constraint::{
    check_labeling, exists_residue_assignment, find_residue_assignments, residue_valid, BadSum,
    ConstraintError, ConstraintSpec, Labeling, ResidueAssignment, SumTarget, ViolationReport,
};
pub use families::{
    predict, verify_family, ComparisonRecord, Computed, Family, InfiniteFamily, Prediction,
    TreeRecurrence, Verdict,
};
pub use graph::{generate, FamilySpec, Graph, GraphError, NeighborhoodKind};
pub use ieds::{find_ieds, is_ieds};
pub use io::{format_graph_text, parse_graph_text, TextFormatError};
pub use oracle::{oracle_min_order, OracleBudget, OracleError};
pub use periodic::{
    format_pattern_text, parse_pattern_text, verify_lattice, verify_tree_procedure, LatticeKind,
    LatticePattern, LatticeSite, PatternError, TreeColoringProcedure, TreeKind, TreeProcedure,
};
pub use solve::{
    classical_reduction_check, lift, min_order, Outcome, Solution, SolveResult, SolveStats,
};
