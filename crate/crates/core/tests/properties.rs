//! Structural invariants of the constraint engine, the optimizer, and the
//! oracle, checked over exhaustive small-graph corpora and random inputs.

mod common;

use proptest::prelude::*;

use modchrom::{
    check_labeling, chromatic_number, exists_residue_assignment, find_ieds,
    find_residue_assignments, format_graph_text, is_ieds, lift, min_order, oracle_min_order,
    parse_graph_text, residue_valid, ConstraintSpec, Graph, Labeling, NeighborhoodKind,
    OracleBudget, Outcome, ResidueAssignment, SumTarget,
};

use common::{connected_classes, oracle_grid_graphs, spec_grid};

fn open_exactly(n: u64, k: i64) -> ConstraintSpec {
    ConstraintSpec::exactly(NeighborhoodKind::Open, n, k).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Graphs with up to 6 vertices, one representative per connected class.
fn corpus_up_to_six() -> Vec<Graph> {
    (1..=6).flat_map(connected_classes).collect()
}

// ---------------------------------------------------------------- residue
// assignments and labelings

#[test]
fn scaling_soundness() {
    // a valid assignment for (n/d, k/d) scaled by d is valid for (n, k)
    let graphs = corpus_up_to_six();
    for graph in &graphs {
        for n in [2u64, 4, 6] {
            for d in (2..=n).filter(|d| n % d == 0) {
                for k in (0..n).step_by(d as usize) {
                    let base_spec = open_exactly(n / d, (k / d) as i64);
                    let scaled_spec = open_exactly(n, k as i64);
                    for assignment in find_residue_assignments(graph, &base_spec, None) {
                        let scaled: Vec<u64> =
                            assignment.residues().iter().map(|&r| (r * d) % n).collect();
                        let scaled = ResidueAssignment::new(scaled, n).unwrap();
                        assert!(
                            residue_valid(graph, &scaled_spec, &scaled).unwrap(),
                            "scaling by {d} broke validity, n={n} k={k}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn unit_action_on_assignments() {
    // r is valid for Exactly(k) iff u·r is valid for Exactly(uk), u a unit
    let graphs = connected_classes(4);
    for graph in &graphs {
        for n in [2u64, 3, 4, 5] {
            let units: Vec<u64> = (1..n).filter(|&u| gcd(u, n) == 1).collect();
            for k in 0..n {
                let spec_k = open_exactly(n, k as i64);
                for assignment in find_residue_assignments(graph, &spec_k, None) {
                    for &u in &units {
                        let mapped: Vec<u64> =
                            assignment.residues().iter().map(|&r| r * u % n).collect();
                        let mapped = ResidueAssignment::new(mapped, n).unwrap();
                        let spec_uk = open_exactly(n, (u * k) as i64);
                        assert!(residue_valid(graph, &spec_uk, &mapped).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn symmetric_difference_law() {
    // for any valid open Exactly(k) assignment, the sums over N(v)\N(w)
    // and N(w)\N(v) agree modulo n (common summands cancel)
    let graphs = corpus_up_to_six();
    for graph in &graphs {
        let v_count = graph.vertex_count();
        for n in [2u64, 3, 4] {
            for k in 1..n {
                let spec = open_exactly(n, k as i64);
                for assignment in find_residue_assignments(graph, &spec, None) {
                    let r = assignment.residues();
                    for v in 0..v_count {
                        for w in (v + 1)..v_count {
                            let nv = graph.neighbors(v);
                            let nw = graph.neighbors(w);
                            let only_v: u64 =
                                nv.iter().filter(|u| !nw.contains(u)).map(|&u| r[u]).sum();
                            let only_w: u64 =
                                nw.iter().filter(|u| !nv.contains(u)).map(|&u| r[u]).sum();
                            assert_eq!(only_v % n, only_w % n, "vertices {v},{w} n={n} k={k}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn zero_target_always_satisfiable() {
    for graph in corpus_up_to_six() {
        for n in 1..=5 {
            let spec = open_exactly(n, 0);
            let zero = ResidueAssignment::new(vec![0; graph.vertex_count()], n).unwrap();
            assert!(residue_valid(&graph, &spec, &zero).unwrap());
            assert!(exists_residue_assignment(&graph, &spec));
        }
    }
}

#[test]
fn regular_counting_obstruction() {
    // j-regular and (j, n) not dividing k|V| leaves no valid assignment
    for graph in corpus_up_to_six() {
        let Some(j) = graph.regularity() else {
            continue;
        };
        if j == 0 {
            continue;
        }
        let v = graph.vertex_count() as u64;
        for n in 2u64..=6 {
            for k in 1..n {
                if !(k * v).is_multiple_of(gcd(j as u64, n)) {
                    assert!(
                        !exists_residue_assignment(&graph, &open_exactly(n, k as i64)),
                        "{j}-regular, n={n} k={k} |V|={v}"
                    );
                }
            }
        }
    }
}

// ---------------------------------------------------------------- optimizer

#[test]
fn sandwich_bounds() {
    for graph in oracle_grid_graphs() {
        let chi = chromatic_number(&graph);
        for spec in spec_grid(&[2, 3, 4]) {
            if let Some(order) = min_order(&graph, &spec).order() {
                let n = spec.modulus() as usize;
                assert!(chi <= order && order <= n * chi, "{spec}: {chi} vs {order}");
                assert!(order <= graph.vertex_count());
            }
        }
    }
}

#[test]
fn divisor_monotonicity_nonzero() {
    // m | n: an assignment with nonzero sums mod m has nonzero sums mod n,
    // so existence transfers and the order can only improve
    for graph in corpus_up_to_six() {
        for kind in [NeighborhoodKind::Closed, NeighborhoodKind::Open] {
            for (m, n) in [(2u64, 4u64), (2, 6), (3, 6)] {
                let coarse = min_order(&graph, &ConstraintSpec::nonzero(kind, m).unwrap());
                if let Some(order_m) = coarse.order() {
                    let fine = min_order(&graph, &ConstraintSpec::nonzero(kind, n).unwrap());
                    let order_n = fine.order().expect("existence transfers to multiples");
                    assert!(chromatic_number(&graph) <= order_n && order_n <= order_m);
                }
            }
        }
    }
}

#[test]
fn regular_graphs_meet_chromatic_number() {
    for graph in corpus_up_to_six() {
        let Some(j) = graph.regularity() else {
            continue;
        };
        if j == 0 {
            continue;
        }
        let chi = chromatic_number(&graph);
        for n in 2u64..=5 {
            // closed nonzero: constant 1 works when n does not divide j+1
            if !(j as u64 + 1).is_multiple_of(n) {
                let spec = ConstraintSpec::nonzero(NeighborhoodKind::Closed, n).unwrap();
                assert_eq!(min_order(&graph, &spec).order(), Some(chi));
            }
            // open nonzero: constant 1 works when n does not divide j
            if !(j as u64).is_multiple_of(n) {
                let spec = ConstraintSpec::nonzero(NeighborhoodKind::Open, n).unwrap();
                assert_eq!(min_order(&graph, &spec).order(), Some(chi));
            }
            // open exactly: solvable constant when (j, n) divides k
            for k in 1..n {
                if k % gcd(j as u64, n) == 0 {
                    assert_eq!(
                        min_order(&graph, &open_exactly(n, k as i64)).order(),
                        Some(chi)
                    );
                }
            }
        }
    }
}

#[test]
fn ieds_bound_closed_nonzero() {
    let mut with_ieds = 0;
    for graph in corpus_up_to_six() {
        let Some(set) = find_ieds(&graph) else {
            continue;
        };
        assert!(is_ieds(&graph, &set));
        with_ieds += 1;
        let chi = chromatic_number(&graph);
        for n in 2u64..=6 {
            let spec = ConstraintSpec::nonzero(NeighborhoodKind::Closed, n).unwrap();
            let order = min_order(&graph, &spec)
                .order()
                .expect("IEDS yields a valid labeling for every modulus");
            assert!(
                chi <= order && order <= chi + 1,
                "IEDS bound violated: chi={chi}, order={order}, n={n}"
            );
        }
    }
    assert!(with_ieds > 10, "corpus should contain IEDS graphs");
}

#[test]
fn witnesses_check_out_on_the_grid() {
    for graph in connected_classes(5) {
        for spec in spec_grid(&[2, 3]) {
            let result = min_order(&graph, &spec);
            if let Outcome::Value(solution) = result.outcome {
                let report = check_labeling(&graph, &spec, &solution.witness).unwrap();
                assert!(report.is_clean());
                assert_eq!(solution.witness.order(), solution.order);
                let lifted = lift(&graph, &solution.residues).unwrap();
                assert_eq!(lifted.0, solution.order);
            }
        }
    }
}

#[test]
fn optimizer_reports_lexicographically_least_optimum() {
    // reference: scan assignments in order, lift each, keep the first
    // achiever of the minimum
    for graph in connected_classes(4) {
        for spec in spec_grid(&[2, 3]) {
            let all = find_residue_assignments(&graph, &spec, None);
            let reference = all
                .iter()
                .map(|a| lift(&graph, a).unwrap().0)
                .enumerate()
                .min_by_key(|&(i, order)| (order, i));
            let result = min_order(&graph, &spec);
            match reference {
                None => assert_eq!(result.outcome, Outcome::NotExists),
                Some((index, order)) => {
                    let Outcome::Value(solution) = result.outcome else {
                        panic!("expected value");
                    };
                    assert_eq!(solution.order, order);
                    assert_eq!(&solution.residues, &all[index], "witness source mismatch");
                }
            }
        }
    }
}

// ---------------------------------------------------------------- oracle

#[test]
fn oracle_invariant_under_isomorphism() {
    let budget = OracleBudget::default();
    let relabelings: [&[usize]; 2] = [&[3, 1, 4, 0, 2], &[4, 3, 2, 1, 0]];
    for graph in connected_classes(5).into_iter().take(8) {
        for perm in relabelings {
            let relabeled = graph.relabeled(perm);
            for spec in spec_grid(&[2, 3]) {
                let a = oracle_min_order(&graph, &spec, &budget).unwrap();
                let b = oracle_min_order(&relabeled, &spec, &budget).unwrap();
                assert_eq!(a.order(), b.order(), "{spec}");
            }
        }
    }
}

// ---------------------------------------------------------------- ieds

#[test]
fn ieds_absence_is_confirmed_exhaustively() {
    for graph in corpus_up_to_six() {
        let n = graph.vertex_count();
        let exhaustive = (0u32..1 << n).any(|mask| {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            is_ieds(&graph, &set)
        });
        assert_eq!(find_ieds(&graph).is_some(), exhaustive);
    }
}

// ---------------------------------------------------------------- proptest

fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    (1usize..=7).prop_flat_map(|n| {
        let pair_count = n * (n - 1) / 2;
        proptest::bits::u32::masked((1u32 << pair_count).wrapping_sub(1).max(1)).prop_map(
            move |mask| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                    .collect();
                let edges: Vec<(usize, usize)> = pairs
                    .into_iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e)
                    .collect();
                Graph::from_edges(n, &edges).expect("valid edges")
            },
        )
    })
}

fn arbitrary_spec() -> impl Strategy<Value = ConstraintSpec> {
    (1u64..=6, any::<bool>(), proptest::option::of(0u64..6)).prop_map(|(n, open, target)| {
        let kind = if open {
            NeighborhoodKind::Open
        } else {
            NeighborhoodKind::Closed
        };
        match target {
            None => ConstraintSpec::nonzero(kind, n).unwrap(),
            Some(k) => ConstraintSpec::new(kind, n, SumTarget::Exactly(k % n)).unwrap(),
        }
    })
}

proptest! {
    /// A labeling's sums meet the target exactly when its residue vector is
    /// valid; properness plays no role in that equivalence.
    #[test]
    fn labeling_sums_match_residue_validity(
        (graph, labels) in arbitrary_graph().prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), proptest::collection::vec(-20i64..20, n))
        }),
        spec in arbitrary_spec(),
    ) {
        let labeling = Labeling::new(labels);
        let report = check_labeling(&graph, &spec, &labeling).unwrap();
        let residues = labeling.residues(spec.modulus()).unwrap();
        let valid = residue_valid(&graph, &spec, &residues).unwrap();
        prop_assert_eq!(report.bad_sums.is_empty(), valid);
    }

    #[test]
    fn graph_text_round_trip(graph in arbitrary_graph()) {
        let text = format_graph_text(&graph);
        prop_assert_eq!(parse_graph_text(&text).unwrap(), graph);
    }

    /// Search output is lexicographically sorted and free of duplicates.
    #[test]
    fn assignments_are_emitted_in_order(
        graph in arbitrary_graph(),
        n in 1u64..=3,
    ) {
        prop_assume!(graph.vertex_count() <= 5);
        let spec = ConstraintSpec::nonzero(NeighborhoodKind::Closed, n).unwrap();
        let found = find_residue_assignments(&graph, &spec, None);
        let vectors: Vec<&[u64]> = found.iter().map(|a| a.residues()).collect();
        for pair in vectors.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
    }
}
