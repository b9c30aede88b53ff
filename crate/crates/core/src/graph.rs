//! Finite simple undirected graphs in adjacency-list form, plus the
//! parameterized family generators used throughout the crate.
//!
//! Vertices are `0..vertex_count()`. Adjacency lists are kept sorted and
//! deduplicated, with symmetry and no self-loops enforced at construction.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint out of range (vertex count {vertex_count})")]
    EndpointOutOfRange {
        u: usize,
        v: usize,
        vertex_count: usize,
    },
    #[error("self-loop ({v}, {v}) is not allowed")]
    SelfLoop { v: usize },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("invalid {family} parameter: {reason}")]
    InvalidFamilyParameter {
        family: &'static str,
        reason: String,
    },
    #[error("malformed family string `{input}`: {reason}")]
    MalformedFamilyString { input: String, reason: String },
}

/// Open neighborhood N(v) or closed neighborhood N[v] = N(v) ∪ {v}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborhoodKind {
    Open,
    Closed,
}

impl fmt::Display for NeighborhoodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeighborhoodKind::Open => write!(f, "open"),
            NeighborhoodKind::Closed => write!(f, "closed"),
        }
    }
}

/// A finite simple undirected graph.
///
/// Invariants held after construction: no self-loops, symmetric adjacency,
/// sorted neighbor lists without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an explicit edge list. Duplicate edges are merged.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::EndpointOutOfRange { u, v, vertex_count });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    /// Graph with `vertex_count` vertices and no edges.
    pub fn empty(vertex_count: usize) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Sorted open neighborhood of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Open or closed neighborhood of `v` as a sorted vertex list.
    pub fn neighborhood(&self, v: usize, kind: NeighborhoodKind) -> Result<Vec<usize>, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        let mut out = self.adjacency[v].clone();
        if kind == NeighborhoodKind::Closed {
            let pos = out.partition_point(|&u| u < v);
            out.insert(pos, v);
        }
        Ok(out)
    }

    /// Subgraph induced by `vertices`, together with the map from new
    /// indices back to the original ones. Duplicates in the input are
    /// ignored; the returned map is sorted.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut index_map: Vec<usize> = vertices.to_vec();
        index_map.sort_unstable();
        index_map.dedup();
        if let Some(&v) = index_map.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in index_map.iter().enumerate() {
            new_index[v] = i;
        }
        let adjacency = index_map
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&u| {
                        let i = new_index[u];
                        (i != usize::MAX).then_some(i)
                    })
                    .collect()
            })
            .collect();
        Ok((Graph { adjacency }, index_map))
    }

    /// Is `j`-regular for some `j`? Returns `j` when every degree matches.
    pub fn regularity(&self) -> Option<usize> {
        let mut degrees = self.adjacency.iter().map(Vec::len);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    visited += 1;
                    stack.push(u);
                }
            }
        }
        visited == n
    }

    /// Relabels vertices through `perm`, where `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges(self.vertex_count(), &edges).expect("permutation preserves validity")
    }
}

/// Named finite graph families with their parameter bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// Path on `m ≥ 1` vertices.
    Path(usize),
    /// Cycle on `m ≥ 3` vertices.
    Cycle(usize),
    /// Complete graph on `m ≥ 1` vertices.
    Complete(usize),
    /// Star with `m ≥ 1` leaves; `m + 1` vertices, center at index 0.
    Star(usize),
    /// Complete bipartite graph with parts of sizes `i, j ≥ 1`;
    /// parts are `{0..i-1}` and `{i..i+j-1}`.
    CompleteBipartite(usize, usize),
    /// `m ≥ 1` triangles sharing one center vertex (index 0); `2m + 1` vertices.
    Friendship(usize),
    /// Complete `m`-ary tree of height `d` (`m ≥ 1`, `d ≥ 0`), root at
    /// index 0, vertices in level order.
    CompleteAryTree(usize, usize),
    /// Generalized Petersen graph on `2m` vertices (`m ≥ 3`, `1 ≤ j`,
    /// `2j < m`): exterior cycle `v_0..v_{m-1}` at indices `0..m`, interior
    /// vertices `u_i` at indices `m + i`, edges `v_i v_{i+1}`, `v_i u_i`,
    /// `u_i u_{i+j}` with subscripts mod `m`.
    GeneralizedPetersen(usize, usize),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Path(_) => "path",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Complete(_) => "complete",
            FamilySpec::Star(_) => "star",
            FamilySpec::CompleteBipartite(..) => "bipartite",
            FamilySpec::Friendship(_) => "friendship",
            FamilySpec::CompleteAryTree(..) => "tree",
            FamilySpec::GeneralizedPetersen(..) => "petersen",
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        let fail =
            |family, reason: String| Err(GraphError::InvalidFamilyParameter { family, reason });
        match *self {
            FamilySpec::Path(m) if m < 1 => fail("path", format!("m = {m}, need m >= 1")),
            FamilySpec::Cycle(m) if m < 3 => fail("cycle", format!("m = {m}, need m >= 3")),
            FamilySpec::Complete(m) if m < 1 => fail("complete", format!("m = {m}, need m >= 1")),
            FamilySpec::Star(m) if m < 1 => fail("star", format!("m = {m}, need m >= 1")),
            FamilySpec::CompleteBipartite(i, j) if i < 1 || j < 1 => {
                fail("bipartite", format!("(i, j) = ({i}, {j}), need i, j >= 1"))
            }
            FamilySpec::Friendship(m) if m < 1 => {
                fail("friendship", format!("m = {m}, need m >= 1"))
            }
            FamilySpec::CompleteAryTree(m, _) if m < 1 => {
                fail("tree", format!("arity m = {m}, need m >= 1"))
            }
            FamilySpec::GeneralizedPetersen(m, j) if m < 3 || j < 1 || 2 * j >= m => fail(
                "petersen",
                format!("(m, j) = ({m}, {j}), need m >= 3 and 1 <= j < m/2"),
            ),
            _ => Ok(()),
        }
    }

    /// Number of vertices the generated graph will have.
    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Path(m) | FamilySpec::Complete(m) => m,
            FamilySpec::Cycle(m) => m,
            FamilySpec::Star(m) => m + 1,
            FamilySpec::CompleteBipartite(i, j) => i + j,
            FamilySpec::Friendship(m) => 2 * m + 1,
            FamilySpec::CompleteAryTree(m, d) => tree_vertex_count(m, d),
            FamilySpec::GeneralizedPetersen(m, _) => 2 * m,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path(m) => write!(f, "path:{m}"),
            FamilySpec::Cycle(m) => write!(f, "cycle:{m}"),
            FamilySpec::Complete(m) => write!(f, "complete:{m}"),
            FamilySpec::Star(m) => write!(f, "star:{m}"),
            FamilySpec::CompleteBipartite(i, j) => write!(f, "bipartite:{i},{j}"),
            FamilySpec::Friendship(m) => write!(f, "friendship:{m}"),
            FamilySpec::CompleteAryTree(m, d) => write!(f, "tree:{m},{d}"),
            FamilySpec::GeneralizedPetersen(m, j) => write!(f, "petersen:{m},{j}"),
        }
    }
}

impl std::str::FromStr for FamilySpec {
    type Err = GraphError;

    /// Parses `name:p1[,p2]` strings such as `path:4` or `petersen:6,2`.
    fn from_str(input: &str) -> Result<FamilySpec, GraphError> {
        let malformed = |reason: &str| GraphError::MalformedFamilyString {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (name, params) = input
            .split_once(':')
            .ok_or_else(|| malformed("expected `name:params`, e.g. `path:4` or `petersen:6,2`"))?;
        let values: Vec<usize> = params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| malformed("parameters must be integers"))
            })
            .collect::<Result<_, _>>()?;
        let one = || -> Result<usize, GraphError> {
            match values[..] {
                [m] => Ok(m),
                _ => Err(malformed("expected one parameter")),
            }
        };
        let two = || -> Result<(usize, usize), GraphError> {
            match values[..] {
                [a, b] => Ok((a, b)),
                _ => Err(malformed("expected two parameters")),
            }
        };
        let family = match name {
            "path" => FamilySpec::Path(one()?),
            "cycle" => FamilySpec::Cycle(one()?),
            "complete" => FamilySpec::Complete(one()?),
            "star" => FamilySpec::Star(one()?),
            "bipartite" => {
                let (i, j) = two()?;
                FamilySpec::CompleteBipartite(i, j)
            }
            "friendship" => FamilySpec::Friendship(one()?),
            "tree" => {
                let (m, d) = two()?;
                FamilySpec::CompleteAryTree(m, d)
            }
            "petersen" => {
                let (m, j) = two()?;
                FamilySpec::GeneralizedPetersen(m, j)
            }
            _ => return Err(malformed("unknown family name")),
        };
        family.validate()?;
        Ok(family)
    }
}

fn tree_vertex_count(m: usize, d: usize) -> usize {
    if m == 1 {
        return d + 1;
    }
    // (m^(d+1) - 1) / (m - 1), summed level by level; fail loudly instead
    // of wrapping on absurd parameters
    let mut total = 0usize;
    let mut level = 1usize;
    for _ in 0..=d {
        total = total.checked_add(level).expect("tree size overflows usize");
        level = level.checked_mul(m).expect("tree size overflows usize");
    }
    total
}

/// Generates the graph described by `family`.
pub fn generate(family: FamilySpec) -> Result<Graph, GraphError> {
    family.validate()?;
    let n = family.vertex_count();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        FamilySpec::Path(m) => {
            edges.extend((0..m.saturating_sub(1)).map(|i| (i, i + 1)));
        }
        FamilySpec::Cycle(m) => {
            edges.extend((0..m).map(|i| (i, (i + 1) % m)));
        }
        FamilySpec::Complete(m) => {
            for u in 0..m {
                for v in (u + 1)..m {
                    edges.push((u, v));
                }
            }
        }
        FamilySpec::Star(m) => {
            edges.extend((1..=m).map(|leaf| (0, leaf)));
        }
        FamilySpec::CompleteBipartite(i, j) => {
            for u in 0..i {
                for v in i..(i + j) {
                    edges.push((u, v));
                }
            }
        }
        FamilySpec::Friendship(m) => {
            for t in 0..m {
                let (a, b) = (2 * t + 1, 2 * t + 2);
                edges.push((0, a));
                edges.push((0, b));
                edges.push((a, b));
            }
        }
        FamilySpec::CompleteAryTree(m, _) => {
            // level order: children of vertex v are m*v + 1 ..= m*v + m
            for v in 0..n {
                for c in 1..=m {
                    let child = m * v + c;
                    if child < n {
                        edges.push((v, child));
                    }
                }
            }
        }
        FamilySpec::GeneralizedPetersen(m, j) => {
            for i in 0..m {
                edges.push((i, (i + 1) % m)); // exterior cycle
                edges.push((i, m + i)); // spoke
                edges.push((m + i, m + (i + j) % m)); // interior skip edges
            }
        }
    }
    Graph::from_edges(n, &edges)
}
