//! Shared corpus and spec grids for the integration suites.

use modchrom::{generate, ConstraintSpec, FamilySpec, Graph, NeighborhoodKind, SumTarget};

/// All isomorphism classes of connected graphs on exactly `n` vertices,
/// one canonical representative each, by exhaustive edge-subset scan.
pub fn connected_classes(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n), "exhaustive scan is exponential");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut classes = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let graph = Graph::from_edges(n, &edges).expect("valid edges");
        if !graph.is_connected() {
            continue;
        }
        if seen.insert(canonical_key(&graph, &pairs, &perms)) {
            classes.push(graph);
        }
    }
    classes
}

/// Minimum edge bitmask over all vertex relabelings.
fn canonical_key(graph: &Graph, pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> u32 {
    let index_of = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs
            .iter()
            .position(|&p| p == (a, b))
            .expect("pair listed")
    };
    perms
        .iter()
        .map(|perm| {
            let mut key = 0u32;
            for (u, v) in graph.edges() {
                key |= 1 << index_of(perm[u], perm[v]);
            }
            key
        })
        .min()
        .expect("at least the identity permutation")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// The oracle-equivalence grid: every connected isomorphism class with at
/// most 5 vertices, plus P_6, C_6, K_{2,3}, S_5.
pub fn oracle_grid_graphs() -> Vec<Graph> {
    let mut graphs = Vec::new();
    for n in 1..=5 {
        graphs.extend(connected_classes(n));
    }
    graphs.push(generate(FamilySpec::Path(6)).unwrap());
    graphs.push(generate(FamilySpec::Cycle(6)).unwrap());
    graphs.push(generate(FamilySpec::CompleteBipartite(2, 3)).unwrap());
    graphs.push(generate(FamilySpec::Star(5)).unwrap());
    graphs
}

/// Both neighborhood kinds with targets Nonzero and Exactly(k) for every
/// residue k, over the given moduli.
pub fn spec_grid(moduli: &[u64]) -> Vec<ConstraintSpec> {
    let mut specs = Vec::new();
    for &n in moduli {
        for kind in [NeighborhoodKind::Closed, NeighborhoodKind::Open] {
            specs.push(ConstraintSpec::new(kind, n, SumTarget::Nonzero).unwrap());
            for k in 0..n {
                specs.push(ConstraintSpec::new(kind, n, SumTarget::Exactly(k)).unwrap());
            }
        }
    }
    specs
}
