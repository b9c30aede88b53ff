//! Ground-truth solver by direct enumeration of integer labelings.
//!
//! Any valid labeling can be remapped, class by class, onto the palette
//! `{c + n·t : c ∈ [0,n), t ∈ [0,|V|)}`: within the residue class `c` send
//! the i-th smallest used value to `c + n·(i-1)`. Residues are untouched
//! (so validity is preserved), distinct values stay distinct within a class
//! and across classes (they differ mod n), and the range size is unchanged.
//! Each class uses at most `|V|` values, so `t < |V|` suffices. The minimum
//! over the palette, an odometer over vertices in index order, is
//! therefore the true minimum over all of `Z^V`.
//!
//! The odometer skips prefixes that already repeat a label across an edge,
//! violate a completed neighborhood sum, or use at least as many distinct
//! values as the incumbent; none of these can lead to a strictly better
//! valid completion, so the reported value and the first-found optimal
//! witness are the same as for the unpruned scan. This solver deliberately
//! shares no search machinery with [`crate::solve`].

use std::time::Instant;

use thiserror::Error;

use crate::constraint::{ConstraintSpec, Labeling, SumTarget};
use crate::graph::Graph;
use crate::solve::{Outcome, Solution, SolveResult, SolveStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_modulus: u64,
    /// Hard cap on odometer steps; exceeding it is a refusal, never a
    /// silent truncation.
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> OracleBudget {
        OracleBudget {
            max_vertices: 6,
            max_modulus: 4,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {vertices} vertices, oracle budget allows {max}")]
    TooManyVertices { vertices: usize, max: usize },
    #[error("modulus {modulus} exceeds oracle budget {max}")]
    ModulusTooLarge { modulus: u64, max: u64 },
    #[error("oracle node limit {limit} exceeded")]
    NodeLimitExceeded { limit: u64 },
}

struct Enumeration<'a> {
    graph: &'a Graph,
    modulus: u64,
    target: SumTarget,
    palette_size: u64,
    /// Sum members per constraint and the position completing it.
    relevant: Vec<Vec<usize>>,
    completions: Vec<Vec<usize>>,
    labels: Vec<i64>,
    value_counts: Vec<u32>,
    distinct: usize,
    best: Option<(usize, Vec<i64>)>,
    nodes: u64,
    node_limit: u64,
    examined: u64,
}

impl Enumeration<'_> {
    fn run(&mut self) -> Result<(), OracleError> {
        self.descend(0)
    }

    fn descend(&mut self, v: usize) -> Result<(), OracleError> {
        if v == self.graph.vertex_count() {
            self.examined += 1;
            let order = self.distinct;
            if self.best.as_ref().is_none_or(|(b, _)| order < *b) {
                self.best = Some((order, self.labels.clone()));
            }
            return Ok(());
        }
        'values: for value in 0..self.palette_size {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(OracleError::NodeLimitExceeded {
                    limit: self.node_limit,
                });
            }
            let label = value as i64;
            for &u in self.graph.neighbors(v) {
                if u < v && self.labels[u] == label {
                    continue 'values; // improper prefix
                }
            }
            self.labels[v] = label;
            if !self.completed_sums_ok(v) {
                continue 'values;
            }
            let count = &mut self.value_counts[value as usize];
            *count += 1;
            let fresh = *count == 1;
            if fresh {
                self.distinct += 1;
            }
            // completions can only add distinct values
            let worth_continuing = self.best.as_ref().is_none_or(|(b, _)| self.distinct < *b);
            if worth_continuing {
                // an error aborts the whole run, so no unwinding is needed
                self.descend(v + 1)?;
            }
            self.value_counts[value as usize] -= 1;
            if fresh {
                self.distinct -= 1;
            }
        }
        Ok(())
    }

    fn completed_sums_ok(&self, v: usize) -> bool {
        let n = self.modulus as i64;
        self.completions[v].iter().all(|&w| {
            let sum: i64 = self.relevant[w].iter().map(|&u| self.labels[u] % n).sum();
            let residue = sum.rem_euclid(n) as u64;
            match self.target {
                SumTarget::Exactly(k) => residue == k,
                SumTarget::Nonzero => residue != 0,
            }
        })
    }
}

/// Exact minimum order by enumeration, independent of the residue-class
/// reduction used by [`crate::solve::min_order`].
pub fn oracle_min_order(
    graph: &Graph,
    spec: &ConstraintSpec,
    budget: &OracleBudget,
) -> Result<SolveResult, OracleError> {
    let vertex_count = graph.vertex_count();
    if vertex_count > budget.max_vertices {
        return Err(OracleError::TooManyVertices {
            vertices: vertex_count,
            max: budget.max_vertices,
        });
    }
    if spec.modulus() > budget.max_modulus {
        return Err(OracleError::ModulusTooLarge {
            modulus: spec.modulus(),
            max: budget.max_modulus,
        });
    }

    let start = Instant::now();
    if vertex_count == 0 {
        return Ok(SolveResult {
            outcome: Outcome::Value(Solution {
                order: 0,
                witness: Labeling::new(Vec::new()),
                residues: Labeling::new(Vec::new()).residues(spec.modulus()).unwrap(),
            }),
            stats: SolveStats {
                assignments_examined: 1,
                elapsed: start.elapsed(),
            },
        });
    }

    // a vertex with an empty neighborhood has sum 0 no matter the labels
    let relevant: Vec<Vec<usize>> = (0..vertex_count)
        .map(|v| {
            graph
                .neighborhood(v, spec.neighborhood())
                .expect("in range")
        })
        .collect();
    let empty_ok = match spec.target() {
        SumTarget::Exactly(k) => k == 0,
        SumTarget::Nonzero => false,
    };
    if !empty_ok && relevant.iter().any(Vec::is_empty) {
        return Ok(SolveResult {
            outcome: Outcome::NotExists,
            stats: SolveStats {
                assignments_examined: 0,
                elapsed: start.elapsed(),
            },
        });
    }
    let mut completions = vec![Vec::new(); vertex_count];
    for (w, members) in relevant.iter().enumerate() {
        if let Some(&last) = members.last() {
            completions[last].push(w);
        }
    }

    let palette_size = spec.modulus() * vertex_count as u64;
    let mut enumeration = Enumeration {
        graph,
        modulus: spec.modulus(),
        target: spec.target(),
        palette_size,
        relevant,
        completions,
        labels: vec![0; vertex_count],
        value_counts: vec![0; palette_size as usize],
        distinct: 0,
        best: None,
        nodes: 0,
        node_limit: budget.max_nodes,
        examined: 0,
    };
    enumeration.run()?;

    let stats = SolveStats {
        assignments_examined: enumeration.examined,
        elapsed: start.elapsed(),
    };
    Ok(match enumeration.best {
        None => SolveResult {
            outcome: Outcome::NotExists,
            stats,
        },
        Some((order, labels)) => {
            let witness = Labeling::new(labels);
            let residues = witness.residues(spec.modulus()).expect("modulus >= 1");
            SolveResult {
                outcome: Outcome::Value(Solution {
                    order,
                    witness,
                    residues,
                }),
                stats,
            }
        }
    })
}
