//! Exact chromatic number by iterative deepening.
//!
//! A greedy maximal clique gives the lower bound, DSATUR the upper bound,
//! and a backtracking k-colorability check closes the gap. Instances here
//! are small (residue classes of desk-scale graphs), so the simple scheme
//! wins over anything fancier.

use crate::graph::Graph;

/// Exact chromatic number. 0 for the empty graph.
pub fn chromatic_number(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    if n == 0 {
        return 0;
    }
    if graph.edge_count() == 0 {
        return 1;
    }
    let lower = greedy_clique(graph).len();
    let upper = dsatur_color_count(graph);
    for k in lower..upper {
        if is_k_colorable(graph, k) {
            return k;
        }
    }
    upper
}

/// Lexicographically least proper coloring of `graph` using colors
/// `0..chromatic_number(graph)`. The comparison is over the color vector in
/// vertex order, so reruns and other implementations agree on the witness.
pub fn lex_min_coloring(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let k = chromatic_number(graph);
    let mut colors = vec![usize::MAX; n];
    let ok = lex_min_rec(graph, k, &mut colors, 0);
    debug_assert!(ok, "a proper k-coloring exists for k = chromatic number");
    colors
}

fn lex_min_rec(graph: &Graph, k: usize, colors: &mut Vec<usize>, v: usize) -> bool {
    if v == graph.vertex_count() {
        return true;
    }
    'colors: for c in 0..k {
        for &u in graph.neighbors(v) {
            if u < v && colors[u] == c {
                continue 'colors;
            }
        }
        colors[v] = c;
        if lex_min_rec(graph, k, colors, v + 1) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Greedy maximal clique, scanning vertices in degree order. Only used as a
/// lower bound; no attempt at maximum cliques.
fn greedy_clique(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for &v in &order {
        if clique.iter().all(|&u| graph.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique
}

/// DSATUR greedy coloring; returns the number of colors used.
fn dsatur_color_count(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    let mut color = vec![usize::MAX; n];
    let mut saturation: Vec<std::collections::BTreeSet<usize>> =
        vec![std::collections::BTreeSet::new(); n];
    let mut used = 0usize;
    for _ in 0..n {
        // highest saturation, then highest degree, then lowest index
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (saturation[v].len(), graph.degree(v), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..)
            .find(|c| !saturation[v].contains(c))
            .expect("unbounded");
        color[v] = c;
        used = used.max(c + 1);
        for &u in graph.neighbors(v) {
            saturation[u].insert(c);
        }
    }
    used
}

fn is_k_colorable(graph: &Graph, k: usize) -> bool {
    if k == 0 {
        return graph.vertex_count() == 0;
    }
    // static most-constrained-first order helps the backtracker fail early
    let n = graph.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let mut color = vec![usize::MAX; n];
    color_rec(graph, k, &order, &mut color, 0, 0)
}

fn color_rec(
    graph: &Graph,
    k: usize,
    order: &[usize],
    color: &mut Vec<usize>,
    pos: usize,
    max_used: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // allowing one fresh color per step breaks color-permutation symmetry
    let limit = k.min(max_used + 1);
    'colors: for c in 0..limit {
        for &u in graph.neighbors(v) {
            if color[u] == c {
                continue 'colors;
            }
        }
        color[v] = c;
        if color_rec(graph, k, order, color, pos + 1, max_used.max(c + 1)) {
            return true;
        }
        color[v] = usize::MAX;
    }
    false
}
