//! Exact minimal orders for the four invariants.
//!
//! The solver rests on a finite reduction of the a-priori infinite search
//! over integer labelings:
//!
//! 1. The modular constraints see only the residue vector `r = ℓ mod n`, so
//!    a valid labeling exists iff a valid residue assignment does.
//! 2. For a fixed valid `r`, the cheapest proper labeling reducing to `r`
//!    has order `Σ_c χ(G[r⁻¹(c)])`, summed over the residue classes. Lower
//!    bound: within one class, adjacent vertices must receive distinct
//!    values, so the class contributes at least the chromatic number of its
//!    induced subgraph, while values from different classes are distinct
//!    anyway (they differ mod n). The bound is attained by giving each
//!    vertex `v` the value `r(v) + n·color(v)`, with `color` a minimal
//!    proper coloring of `v`'s class subgraph: this lift is proper (across
//!    classes the residues differ, within a class the colors do), reduces
//!    to `r`, and uses exactly that many values.
//! 3. The invariant is therefore the minimum of that class-sum over all
//!    valid residue assignments, and it is at most `|V|`.
//!
//! The optimizer runs the residue search of [`crate::constraint`] with
//! branch-and-bound: a partial assignment already pays one color per
//! nonempty class plus one more per class containing an internal edge, so
//! branches whose bound reaches the incumbent are cut. Among optimal
//! assignments the lexicographically least is reported, with class
//! colorings chosen lexicographically least as well, so witnesses are
//! reproducible everywhere.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::coloring::{chromatic_number, lex_min_coloring};
use crate::constraint::{
    search_with_driver, ConstraintError, ConstraintSpec, Labeling, ResidueAssignment, SearchDriver,
};
use crate::graph::{Graph, NeighborhoodKind};

/// Outcome of an exact solve, with search statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// No valid residue assignment, hence no valid labeling at all.
    NotExists,
    Value(Solution),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Number of distinct values in the witness; the invariant's value.
    pub order: usize,
    pub witness: Labeling,
    pub residues: ResidueAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolveStats {
    /// Complete valid residue assignments reached during the search.
    pub assignments_examined: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn order(&self) -> Option<usize> {
        match &self.outcome {
            Outcome::NotExists => None,
            Outcome::Value(solution) => Some(solution.order),
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self.outcome, Outcome::Value(_))
    }
}

/// Cheapest proper labeling reducing to the given residue assignment.
///
/// Returns the order `Σ_c χ(G[class c])` and a witness realizing it, as in
/// the module-level derivation. Validity of `r` for any particular spec is
/// not checked here.
pub fn lift(
    graph: &Graph,
    assignment: &ResidueAssignment,
) -> Result<(usize, Labeling), ConstraintError> {
    if assignment.len() != graph.vertex_count() {
        return Err(ConstraintError::LengthMismatch {
            expected: graph.vertex_count(),
            got: assignment.len(),
        });
    }
    let classes = partition_by_residue(assignment.residues());
    let modulus = assignment.modulus();
    let mut order = 0usize;
    let mut witness = vec![0i64; graph.vertex_count()];
    for (&residue, members) in &classes {
        let (subgraph, map) = graph
            .induced_subgraph(members)
            .expect("class members are in range");
        let coloring = lex_min_coloring(&subgraph);
        let used = coloring.iter().copied().max().map_or(0, |c| c + 1);
        order += used;
        for (local, &original) in map.iter().enumerate() {
            let value = residue as i128 + modulus as i128 * coloring[local] as i128;
            witness[original] = i64::try_from(value).expect("label fits in i64");
        }
    }
    Ok((order, Labeling::new(witness)))
}

fn partition_by_residue(residues: &[u64]) -> BTreeMap<u64, Vec<usize>> {
    let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (v, &r) in residues.iter().enumerate() {
        classes.entry(r).or_default().push(v);
    }
    classes
}

/// Sum of class chromatic numbers without constructing the witness.
fn partition_order(graph: &Graph, residues: &[u64]) -> usize {
    partition_by_residue(residues)
        .values()
        .map(|members| {
            let (subgraph, _) = graph
                .induced_subgraph(members)
                .expect("class members are in range");
            chromatic_number(&subgraph)
        })
        .sum()
}

struct Incumbent {
    order: usize,
    residues: Vec<u64>,
}

struct MinOrderDriver<'a> {
    graph: &'a Graph,
    /// Stop as soon as the incumbent reaches this; nothing can beat χ(G).
    floor: usize,
    class_count: BTreeMap<u64, usize>,
    class_edges: BTreeMap<u64, usize>,
    nonempty: usize,
    edgy: usize,
    /// Internal edges added per assignment, popped on backtrack.
    edge_trail: Vec<usize>,
    best: Option<Incumbent>,
    examined: u64,
}

impl SearchDriver for MinOrderDriver<'_> {
    fn assigned(&mut self, v: usize, value: u64, assignment: &[u64]) -> bool {
        let count = self.class_count.entry(value).or_insert(0);
        *count += 1;
        if *count == 1 {
            self.nonempty += 1;
        }
        // edges within value's class created by v; only earlier vertices
        // are assigned, so later entries of the slice are ignored
        let added = self
            .graph
            .neighbors(v)
            .iter()
            .filter(|&&u| u < v && assignment[u] == value)
            .count();
        self.edge_trail.push(added);
        if added > 0 {
            let edges = self.class_edges.entry(value).or_insert(0);
            if *edges == 0 {
                self.edgy += 1;
            }
            *edges += added;
        }
        // one color per nonempty class, a second one per class with an edge
        let bound = self.nonempty + self.edgy;
        match &self.best {
            Some(incumbent) => bound < incumbent.order,
            None => true,
        }
    }

    fn unassigned(&mut self, _v: usize, value: u64) {
        let count = self.class_count.get_mut(&value).expect("was assigned");
        *count -= 1;
        if *count == 0 {
            self.nonempty -= 1;
        }
        let added = self.edge_trail.pop().expect("assign/unassign are paired");
        if added > 0 {
            let edges = self.class_edges.get_mut(&value).expect("had edges");
            *edges -= added;
            if *edges == 0 {
                self.edgy -= 1;
            }
        }
    }

    fn leaf(&mut self, assignment: &[u64]) -> ControlFlow<()> {
        self.examined += 1;
        let order = partition_order(self.graph, assignment);
        let improved = match &self.best {
            Some(incumbent) => order < incumbent.order,
            None => true,
        };
        if improved {
            self.best = Some(Incumbent {
                order,
                residues: assignment.to_vec(),
            });
            if order <= self.floor {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    }
}

/// Exact minimal order of a proper labeling of `graph` meeting `spec`.
///
/// `NotExists` iff the residue space admits no valid assignment; otherwise
/// the minimum lift order over all valid assignments, with the
/// lexicographically least optimal assignment as the witness source.
pub fn min_order(graph: &Graph, spec: &ConstraintSpec) -> SolveResult {
    let start = Instant::now();
    let floor = chromatic_number(graph);
    let mut driver = MinOrderDriver {
        graph,
        floor,
        class_count: BTreeMap::new(),
        class_edges: BTreeMap::new(),
        nonempty: 0,
        edgy: 0,
        edge_trail: Vec::new(),
        best: None,
        examined: 0,
    };
    search_with_driver(graph, spec, &mut driver);
    let stats = SolveStats {
        assignments_examined: driver.examined,
        elapsed: start.elapsed(),
    };
    match driver.best {
        None => SolveResult {
            outcome: Outcome::NotExists,
            stats,
        },
        Some(incumbent) => {
            let residues = ResidueAssignment::new(incumbent.residues, spec.modulus())
                .expect("search emits reduced residues");
            let (order, witness) = lift(graph, &residues).expect("lengths match");
            debug_assert_eq!(order, incumbent.order);
            SolveResult {
                outcome: Outcome::Value(Solution {
                    order,
                    witness,
                    residues,
                }),
                stats,
            }
        }
    }
}

/// Self-test hook: the open `Exactly(0)` invariant collapses to the plain
/// chromatic number (scale any minimal proper coloring by `n`).
pub fn classical_reduction_check(graph: &Graph, modulus: u64) -> SolveResult {
    let spec = ConstraintSpec::exactly(NeighborhoodKind::Open, modulus, 0)
        .expect("modulus validated by caller");
    min_order(graph, &spec)
}
