//! Constraint regimes over neighborhood sums, labeling validation, and the
//! backtracking search for residue assignments.
//!
//! Everything the modular constraints can see about an integer labeling is
//! its image in `Z_n`, so the search runs over residue vectors. The search
//! assigns vertices in index order; a vertex's constraint is checked the
//! moment the last member of its neighborhood receives a value, and for
//! `Exactly` targets that last member is forced instead of enumerated.
//! Residue vectors are visited in lexicographic order, which makes every
//! reported witness deterministic.

use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{Graph, NeighborhoodKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("target residue {value} is not reduced modulo {modulus}")]
    TargetOutOfRange { value: u64, modulus: u64 },
    #[error("labeling has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("assignment modulus {assignment} does not match spec modulus {spec}")]
    ModulusMismatch { spec: u64, assignment: u64 },
    #[error("residue {value} at index {index} is not reduced modulo {modulus}")]
    ResidueOutOfRange {
        index: usize,
        value: u64,
        modulus: u64,
    },
}

/// What every neighborhood sum must satisfy modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumTarget {
    /// Sum ≡ k (mod n), with k stored reduced into `[0, n)`.
    Exactly(u64),
    /// Sum ≢ 0 (mod n).
    Nonzero,
}

/// One of the four constraint regimes: neighborhood kind, modulus, target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstraintSpec {
    neighborhood: NeighborhoodKind,
    modulus: u64,
    target: SumTarget,
}

impl ConstraintSpec {
    pub fn new(
        neighborhood: NeighborhoodKind,
        modulus: u64,
        target: SumTarget,
    ) -> Result<ConstraintSpec, ConstraintError> {
        if modulus == 0 {
            return Err(ConstraintError::ZeroModulus);
        }
        if let SumTarget::Exactly(k) = target {
            if k >= modulus {
                return Err(ConstraintError::TargetOutOfRange { value: k, modulus });
            }
        }
        Ok(ConstraintSpec {
            neighborhood,
            modulus,
            target,
        })
    }

    /// `Exactly` spec with `k` reduced into `[0, n)` from any integer.
    pub fn exactly(
        neighborhood: NeighborhoodKind,
        modulus: u64,
        k: i64,
    ) -> Result<ConstraintSpec, ConstraintError> {
        if modulus == 0 {
            return Err(ConstraintError::ZeroModulus);
        }
        let reduced = k.rem_euclid(modulus as i64) as u64;
        ConstraintSpec::new(neighborhood, modulus, SumTarget::Exactly(reduced))
    }

    pub fn nonzero(
        neighborhood: NeighborhoodKind,
        modulus: u64,
    ) -> Result<ConstraintSpec, ConstraintError> {
        ConstraintSpec::new(neighborhood, modulus, SumTarget::Nonzero)
    }

    pub fn neighborhood(&self) -> NeighborhoodKind {
        self.neighborhood
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn target(&self) -> SumTarget {
        self.target
    }

    fn sum_ok(&self, residue: u64) -> bool {
        match self.target {
            SumTarget::Exactly(k) => residue == k,
            SumTarget::Nonzero => residue != 0,
        }
    }
}

impl fmt::Display for ConstraintSpec {
    /// `chi_n`, `chi_n,k`, `chi_(n)`, `chi_(n,k)` in the usual notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.modulus;
        match (self.neighborhood, self.target) {
            (NeighborhoodKind::Closed, SumTarget::Nonzero) => write!(f, "chi_{n}"),
            (NeighborhoodKind::Closed, SumTarget::Exactly(k)) => write!(f, "chi_{n},{k}"),
            (NeighborhoodKind::Open, SumTarget::Nonzero) => write!(f, "chi_({n})"),
            (NeighborhoodKind::Open, SumTarget::Exactly(k)) => write!(f, "chi_({n},{k})"),
        }
    }
}

/// Integer labeling of a graph's vertices, one value per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling(Vec<i64>);

impl Labeling {
    pub fn new(values: Vec<i64>) -> Labeling {
        Labeling(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// Number of distinct values in the range.
    pub fn order(&self) -> usize {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len()
    }

    /// Entrywise reduction modulo `modulus`.
    pub fn residues(&self, modulus: u64) -> Result<ResidueAssignment, ConstraintError> {
        if modulus == 0 {
            return Err(ConstraintError::ZeroModulus);
        }
        let residues = self
            .0
            .iter()
            .map(|&x| x.rem_euclid(modulus as i64) as u64)
            .collect();
        ResidueAssignment::new(residues, modulus)
    }
}

impl From<Vec<i64>> for Labeling {
    fn from(values: Vec<i64>) -> Labeling {
        Labeling(values)
    }
}

impl std::ops::Deref for Labeling {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// Map from vertices to `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueAssignment {
    residues: Vec<u64>,
    modulus: u64,
}

impl ResidueAssignment {
    pub fn new(residues: Vec<u64>, modulus: u64) -> Result<ResidueAssignment, ConstraintError> {
        if modulus == 0 {
            return Err(ConstraintError::ZeroModulus);
        }
        if let Some((index, &value)) = residues.iter().enumerate().find(|&(_, &r)| r >= modulus) {
            return Err(ConstraintError::ResidueOutOfRange {
                index,
                value,
                modulus,
            });
        }
        Ok(ResidueAssignment { residues, modulus })
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Everything wrong with a labeling: improper edges and vertices whose
/// neighborhood sum misses the target. Empty report ⟺ the labeling is a
/// proper coloring satisfying the spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport<V = usize> {
    /// Edges whose endpoints carry equal labels, in sorted order.
    pub improper_edges: Vec<(V, V)>,
    /// Vertices whose neighborhood sum violates the target, with the
    /// residue the sum actually achieved.
    pub bad_sums: Vec<BadSum<V>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadSum<V = usize> {
    pub site: V,
    pub sum_residue: u64,
}

impl<V> ViolationReport<V> {
    pub fn clean() -> ViolationReport<V> {
        ViolationReport {
            improper_edges: Vec::new(),
            bad_sums: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.improper_edges.is_empty() && self.bad_sums.is_empty()
    }
}

/// Checks properness and all neighborhood-sum constraints of an explicit
/// labeling. An empty open neighborhood sums to 0.
pub fn check_labeling(
    graph: &Graph,
    spec: &ConstraintSpec,
    labeling: &Labeling,
) -> Result<ViolationReport, ConstraintError> {
    if labeling.len() != graph.vertex_count() {
        return Err(ConstraintError::LengthMismatch {
            expected: graph.vertex_count(),
            got: labeling.len(),
        });
    }
    let mut report = ViolationReport::clean();
    for (u, v) in graph.edges() {
        if labeling[u] == labeling[v] {
            report.improper_edges.push((u, v));
        }
    }
    let n = spec.modulus as i64;
    for v in 0..graph.vertex_count() {
        let mut sum: i64 = graph.neighbors(v).iter().map(|&u| labeling[u] % n).sum();
        if spec.neighborhood == NeighborhoodKind::Closed {
            sum += labeling[v] % n;
        }
        let residue = sum.rem_euclid(n) as u64;
        if !spec.sum_ok(residue) {
            report.bad_sums.push(BadSum {
                site: v,
                sum_residue: residue,
            });
        }
    }
    Ok(report)
}

/// True iff every vertex's neighborhood residue sum meets the target.
/// Properness is not checked here; residue assignments need not be proper.
pub fn residue_valid(
    graph: &Graph,
    spec: &ConstraintSpec,
    assignment: &ResidueAssignment,
) -> Result<bool, ConstraintError> {
    if assignment.modulus() != spec.modulus {
        return Err(ConstraintError::ModulusMismatch {
            spec: spec.modulus,
            assignment: assignment.modulus(),
        });
    }
    if assignment.len() != graph.vertex_count() {
        return Err(ConstraintError::LengthMismatch {
            expected: graph.vertex_count(),
            got: assignment.len(),
        });
    }
    let r = assignment.residues();
    Ok((0..graph.vertex_count()).all(|v| {
        let mut sum: u64 = 0;
        for &u in graph.neighbors(v) {
            sum = (sum + r[u]) % spec.modulus;
        }
        if spec.neighborhood == NeighborhoodKind::Closed {
            sum = (sum + r[v]) % spec.modulus;
        }
        spec.sum_ok(sum)
    }))
}

/// All valid residue assignments in lexicographic order of the residue
/// vector, truncated at `limit` when given. An empty list means none exist.
pub fn find_residue_assignments(
    graph: &Graph,
    spec: &ConstraintSpec,
    limit: Option<usize>,
) -> Vec<ResidueAssignment> {
    let mut found = Vec::new();
    if limit == Some(0) {
        return found;
    }
    let modulus = spec.modulus;
    residue_search(graph, spec, &mut |assignment: &[u64]| {
        found.push(
            ResidueAssignment::new(assignment.to_vec(), modulus)
                .expect("search emits reduced residues"),
        );
        match limit {
            Some(cap) if found.len() >= cap => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    });
    found
}

/// True iff at least one valid residue assignment exists. Short-circuits at
/// the first solution.
pub fn exists_residue_assignment(graph: &Graph, spec: &ConstraintSpec) -> bool {
    let mut found = false;
    residue_search(graph, spec, &mut |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

/// Hooks for driving [`search_with_driver`]. The default implementations
/// never prune, so plain drivers only handle leaves.
pub(crate) trait SearchDriver {
    /// Called after `assignment[v] = value`. Return false to prune the
    /// branch; `unassigned` is still called for the value.
    fn assigned(&mut self, _v: usize, _value: u64, _assignment: &[u64]) -> bool {
        true
    }

    /// Called when backtracking over `assignment[v] = value`.
    fn unassigned(&mut self, _v: usize, _value: u64) {}

    /// Called on every complete valid assignment, in lexicographic order.
    fn leaf(&mut self, assignment: &[u64]) -> ControlFlow<()>;
}

struct FnDriver<'a, F: FnMut(&[u64]) -> ControlFlow<()>>(&'a mut F);

impl<F: FnMut(&[u64]) -> ControlFlow<()>> SearchDriver for FnDriver<'_, F> {
    fn leaf(&mut self, assignment: &[u64]) -> ControlFlow<()> {
        (self.0)(assignment)
    }
}

fn residue_search<F: FnMut(&[u64]) -> ControlFlow<()>>(
    graph: &Graph,
    spec: &ConstraintSpec,
    visit: &mut F,
) {
    search_with_driver(graph, spec, &mut FnDriver(visit));
}

/// Precomputed constraint structure for the residue search.
pub(crate) struct SearchContext {
    modulus: u64,
    target: SumTarget,
    /// Neighborhood each vertex's constraint sums over.
    relevant: Vec<Vec<usize>>,
    /// `completions[v]`: constraints whose last relevant vertex is `v`.
    completions: Vec<Vec<usize>>,
    /// False when a vertex with an empty neighborhood already violates the
    /// target (empty sums are 0), making the whole instance unsatisfiable.
    satisfiable: bool,
}

impl SearchContext {
    pub(crate) fn new(graph: &Graph, spec: &ConstraintSpec) -> SearchContext {
        let n = graph.vertex_count();
        let relevant: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                graph
                    .neighborhood(v, spec.neighborhood())
                    .expect("vertex in range")
            })
            .collect();
        let mut completions = vec![Vec::new(); n];
        let mut satisfiable = true;
        for (w, members) in relevant.iter().enumerate() {
            match members.last() {
                Some(&last) => completions[last].push(w),
                None => satisfiable &= spec.sum_ok(0),
            }
        }
        SearchContext {
            modulus: spec.modulus(),
            target: spec.target(),
            relevant,
            completions,
            satisfiable,
        }
    }
}

pub(crate) fn search_with_driver<D: SearchDriver>(
    graph: &Graph,
    spec: &ConstraintSpec,
    driver: &mut D,
) {
    let ctx = SearchContext::new(graph, spec);
    if !ctx.satisfiable {
        return;
    }
    let vertex_count = graph.vertex_count();
    if vertex_count == 0 {
        let _ = driver.leaf(&[]);
        return;
    }
    let mut assignment = vec![0u64; vertex_count];
    let _ = search_rec(&ctx, 0, &mut assignment, driver);
}

/// Residues vertex `v` may take given the already-assigned prefix.
enum Allowed {
    /// No completing constraint: everything in `[0, n)`.
    All,
    /// Exactly-forced single value, or contradiction.
    One(u64),
    Nothing,
    /// Nonzero targets exclude one residue per completing constraint.
    Excluded(Vec<u64>),
}

impl SearchContext {
    fn allowed(&self, v: usize, assignment: &[u64]) -> Allowed {
        let completing = &self.completions[v];
        if completing.is_empty() {
            return Allowed::All;
        }
        match self.target {
            SumTarget::Exactly(k) => {
                let mut forced: Option<u64> = None;
                for &w in completing {
                    let partial = self.partial_sum(w, v, assignment);
                    let need = (k + self.modulus - partial) % self.modulus;
                    match forced {
                        Some(prev) if prev != need => return Allowed::Nothing,
                        _ => forced = Some(need),
                    }
                }
                Allowed::One(forced.expect("completing constraint forces a value"))
            }
            SumTarget::Nonzero => {
                let mut excluded: Vec<u64> = completing
                    .iter()
                    .map(|&w| {
                        let partial = self.partial_sum(w, v, assignment);
                        (self.modulus - partial) % self.modulus
                    })
                    .collect();
                excluded.sort_unstable();
                excluded.dedup();
                if excluded.len() as u64 >= self.modulus {
                    Allowed::Nothing
                } else {
                    Allowed::Excluded(excluded)
                }
            }
        }
    }

    /// Sum of the already-assigned members of constraint `w`, skipping `v`.
    fn partial_sum(&self, w: usize, v: usize, assignment: &[u64]) -> u64 {
        let mut sum = 0u64;
        for &u in &self.relevant[w] {
            if u != v {
                sum = (sum + assignment[u]) % self.modulus;
            }
        }
        sum
    }
}

fn search_rec<D: SearchDriver>(
    ctx: &SearchContext,
    v: usize,
    assignment: &mut Vec<u64>,
    driver: &mut D,
) -> ControlFlow<()> {
    let allowed = ctx.allowed(v, assignment);
    let try_value = |value: u64, assignment: &mut Vec<u64>, driver: &mut D| {
        assignment[v] = value;
        let mut flow = ControlFlow::Continue(());
        if driver.assigned(v, value, assignment) {
            flow = if v + 1 == assignment.len() {
                driver.leaf(assignment)
            } else {
                search_rec(ctx, v + 1, assignment, driver)
            };
        }
        driver.unassigned(v, value);
        flow
    };
    match allowed {
        Allowed::All => {
            for value in 0..ctx.modulus {
                try_value(value, assignment, driver)?;
            }
        }
        Allowed::One(value) => {
            try_value(value, assignment, driver)?;
        }
        Allowed::Nothing => {}
        Allowed::Excluded(excluded) => {
            let mut skip = excluded.iter().copied().peekable();
            for value in 0..ctx.modulus {
                if skip.peek() == Some(&value) {
                    skip.next();
                    continue;
                }
                try_value(value, assignment, driver)?;
            }
        }
    }
    ControlFlow::Continue(())
}
