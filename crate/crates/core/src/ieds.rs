//! Independent efficient dominating sets: vertex sets `U` with
//! `|N[v] ∩ U| = 1` for every vertex `v` (also known as perfect codes).

use crate::graph::Graph;

/// Finds an independent efficient dominating set, or `None` when the graph
/// has none. The result is the lexicographically least such set (compared as
/// sorted vertex lists), so reruns are reproducible.
///
/// Subset-extension enumeration handles graphs up to 20 vertices; beyond
/// that a pruned include/exclude backtracker takes over. Both visit
/// candidate sets in the same lexicographic order.
pub fn find_ieds(graph: &Graph) -> Option<Vec<usize>> {
    if graph.vertex_count() <= 20 {
        find_by_enumeration(graph)
    } else {
        find_by_backtracking(graph)
    }
}

/// `|N[v] ∩ U| = 1` for every vertex, where `U` is given sorted.
pub fn is_ieds(graph: &Graph, set: &[usize]) -> bool {
    (0..graph.vertex_count()).all(|v| {
        let mut hits = usize::from(set.binary_search(&v).is_ok());
        for &u in graph.neighbors(v) {
            hits += usize::from(set.binary_search(&u).is_ok());
        }
        hits == 1
    })
}

fn closed_cover(graph: &Graph, v: usize) -> impl Iterator<Item = usize> + '_ {
    std::iter::once(v).chain(graph.neighbors(v).iter().copied())
}

fn find_by_enumeration(graph: &Graph) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    let mut set = Vec::new();
    let mut cover = vec![0usize; n];
    // deadline[w]: last vertex whose inclusion can still cover w
    let deadline: Vec<usize> = (0..n)
        .map(|w| closed_cover(graph, w).max().unwrap_or(w))
        .collect();
    enumerate_rec(graph, 0, &deadline, &mut set, &mut cover).then_some(set)
}

fn enumerate_rec(
    graph: &Graph,
    start: usize,
    deadline: &[usize],
    set: &mut Vec<usize>,
    cover: &mut Vec<usize>,
) -> bool {
    // checking the current set before any extension makes the visit order
    // lexicographic on sorted vertex lists
    if cover.iter().all(|&c| c == 1) {
        return true;
    }
    if cover
        .iter()
        .enumerate()
        .any(|(w, &c)| c == 0 && deadline[w] < start)
    {
        return false; // some vertex can no longer be covered
    }
    for v in start..graph.vertex_count() {
        if closed_cover(graph, v).all(|w| cover[w] == 0) {
            set.push(v);
            for w in closed_cover(graph, v) {
                cover[w] += 1;
            }
            if enumerate_rec(graph, v + 1, deadline, set, cover) {
                return true;
            }
            for w in closed_cover(graph, v) {
                cover[w] -= 1;
            }
            set.pop();
        }
    }
    false
}

fn find_by_backtracking(graph: &Graph) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    let deadline: Vec<usize> = (0..n)
        .map(|w| closed_cover(graph, w).max().unwrap_or(w))
        .collect();
    // per decision index, the vertices whose coverage is finalized there
    let mut finalized: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (w, &d) in deadline.iter().enumerate() {
        finalized[d].push(w);
    }
    let mut set = Vec::new();
    let mut cover = vec![0usize; n];
    backtrack_rec(graph, 0, &finalized, &mut set, &mut cover).then_some(set)
}

fn backtrack_rec(
    graph: &Graph,
    v: usize,
    finalized: &[Vec<usize>],
    set: &mut Vec<usize>,
    cover: &mut Vec<usize>,
) -> bool {
    if v == graph.vertex_count() {
        return true; // every vertex was checked at its deadline
    }
    // include-first visits solutions in lexicographic order; IEDS solutions
    // are incomparable under inclusion, so the first hit is the least
    if closed_cover(graph, v).all(|w| cover[w] == 0) {
        set.push(v);
        for w in closed_cover(graph, v) {
            cover[w] += 1;
        }
        if finalized[v].iter().all(|&w| cover[w] == 1)
            && backtrack_rec(graph, v + 1, finalized, set, cover)
        {
            return true;
        }
        for w in closed_cover(graph, v) {
            cover[w] -= 1;
        }
        set.pop();
    }
    if finalized[v].iter().all(|&w| cover[w] == 1)
        && backtrack_rec(graph, v + 1, finalized, set, cover)
    {
        return true;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    /// Exhaustive reference: scan all 2^n subsets in mask order.
    fn exhaustive_has_ieds(graph: &Graph) -> bool {
        let n = graph.vertex_count();
        assert!(n <= 16, "reference check is exponential");
        (0u32..1 << n).any(|mask| {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            is_ieds(graph, &set)
        })
    }

    #[test]
    fn star_center_dominates() {
        let g = generate(FamilySpec::Star(3)).unwrap();
        assert_eq!(find_ieds(&g), Some(vec![0]));
    }

    #[test]
    fn c4_has_none() {
        let g = generate(FamilySpec::Cycle(4)).unwrap();
        assert!(!exhaustive_has_ieds(&g));
        assert_eq!(find_ieds(&g), None);
    }

    #[test]
    fn c6_yields_antipodal_pair() {
        let g = generate(FamilySpec::Cycle(6)).unwrap();
        let set = find_ieds(&g).unwrap();
        assert_eq!(set, vec![0, 3]);
        assert!(is_ieds(&g, &set));
    }

    #[test]
    fn petersen_has_none() {
        // 10 vertices, closed neighborhoods of size 4: no exact cover
        let g = generate(FamilySpec::GeneralizedPetersen(5, 2)).unwrap();
        assert_eq!(find_ieds(&g), None);
        assert!(!exhaustive_has_ieds(&g));
    }

    #[test]
    fn agrees_with_exhaustive_scan_on_small_graphs() {
        let graphs = vec![
            generate(FamilySpec::Path(7)).unwrap(),
            generate(FamilySpec::Cycle(5)).unwrap(),
            generate(FamilySpec::Cycle(9)).unwrap(),
            generate(FamilySpec::Complete(4)).unwrap(),
            generate(FamilySpec::CompleteBipartite(2, 3)).unwrap(),
            generate(FamilySpec::CompleteBipartite(3, 3)).unwrap(),
            generate(FamilySpec::Friendship(3)).unwrap(),
            generate(FamilySpec::CompleteAryTree(2, 2)).unwrap(),
            generate(FamilySpec::GeneralizedPetersen(6, 2)).unwrap(),
        ];
        for g in graphs {
            match find_ieds(&g) {
                Some(set) => assert!(is_ieds(&g, &set)),
                None => assert!(!exhaustive_has_ieds(&g)),
            }
        }
    }

    #[test]
    fn both_strategies_agree() {
        let graphs = vec![
            generate(FamilySpec::Path(9)).unwrap(),
            generate(FamilySpec::Cycle(12)).unwrap(),
            generate(FamilySpec::CompleteAryTree(2, 3)).unwrap(),
            generate(FamilySpec::GeneralizedPetersen(7, 2)).unwrap(),
        ];
        for g in graphs {
            assert_eq!(find_by_enumeration(&g), find_by_backtracking(&g));
        }
    }

    #[test]
    fn backtracker_handles_larger_trees() {
        // 40 vertices forces the backtracking path
        let g = generate(FamilySpec::CompleteAryTree(3, 3)).unwrap();
        if let Some(set) = find_ieds(&g) {
            assert!(is_ieds(&g, &set));
        }
    }
}
