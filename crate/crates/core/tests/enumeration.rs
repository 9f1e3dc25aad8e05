//! Class counts of the orderly enumerator against naive orbit counting.

mod common;

use std::collections::BTreeSet;

use strictcol::{
    complete_multipartite, enumerate_k_assignments, enumerate_lambda_assignments, Color, Graph,
    IntegerPartition, PartSizes,
};

fn subsets(pool: usize, k: usize) -> Vec<Vec<Color>> {
    fn go(start: usize, pool: usize, k: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..pool {
            cur.push(c as Color);
            go(c + 1, pool, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, pool, k, &mut Vec::new(), &mut out);
    out
}

fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    common::permutations(g.n())
        .into_iter()
        .filter(|p| {
            (0..g.n()).all(|u| (0..g.n()).all(|v| g.has_edge(u, v) == g.has_edge(p[u], p[v])))
        })
        .collect()
}

/// Canonical form of a grouped assignment: per group the sorted color
/// classes, groups of equal demand sorted among themselves, minimized over
/// `perms`.
fn canonical(groups: &[(usize, Vec<Vec<Color>>)], perms: &[Vec<usize>]) -> Vec<(usize, Vec<u64>)> {
    perms
        .iter()
        .map(|p| {
            let mut form: Vec<(usize, Vec<u64>)> = groups
                .iter()
                .map(|(k, lists)| {
                    let moved: Vec<Vec<Color>> = (0..lists.len())
                        .map(|v| {
                            let src = p.iter().position(|&x| x == v).unwrap();
                            lists[src].clone()
                        })
                        .collect();
                    (*k, common::color_classes(&moved))
                })
                .collect();
            form.sort();
            form
        })
        .min()
        .unwrap()
}

/// Orbit count by brute force: every vertex takes `k_i` colors from a
/// private window of `n * k_i` colors per group.
fn naive_count(g: &Graph, demands: &[usize], perms: &[Vec<usize>]) -> usize {
    let n = g.n();
    let choices: Vec<Vec<Vec<Color>>> = demands.iter().map(|&k| subsets(n * k, k)).collect();
    let mut seen = BTreeSet::new();
    let mut idx = vec![vec![0usize; n]; demands.len()];
    loop {
        let groups: Vec<(usize, Vec<Vec<Color>>)> = demands
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, idx[i].iter().map(|&j| choices[i][j].clone()).collect()))
            .collect();
        seen.insert(canonical(&groups, perms));
        // odometer over all (group, vertex) slots
        let mut carry = true;
        'outer: for i in 0..demands.len() {
            for v in 0..n {
                idx[i][v] += 1;
                if idx[i][v] < choices[i].len() {
                    carry = false;
                    break 'outer;
                }
                idx[i][v] = 0;
            }
        }
        if carry {
            return seen.len();
        }
    }
}

fn path(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges).unwrap()
}

#[test]
fn k_assignment_counts() {
    let cases: Vec<(&str, Graph, usize)> = vec![
        ("K_2", Graph::complete(2).unwrap(), 1),
        ("K_2", Graph::complete(2).unwrap(), 2),
        ("P_3", path(3), 2),
        ("3 isolated", Graph::empty(3).unwrap(), 2),
        ("K_3", Graph::complete(3).unwrap(), 2),
        ("C_4", Graph::cycle(4).unwrap(), 2),
        ("P_4", path(4), 1),
        ("K_1", Graph::empty(1).unwrap(), 1),
        ("K_1", Graph::empty(1).unwrap(), 2),
    ];
    for (name, g, k) in cases {
        let perms = automorphisms(&g);
        let found = enumerate_k_assignments(&g, k).unwrap();
        let expected = naive_count(&g, &[k], &perms);
        assert_eq!(found.len(), expected, "{name}, k={k}");
        let distinct: BTreeSet<_> = found
            .iter()
            .map(|a| canonical(&[(k, a.lists().to_vec())], &perms))
            .collect();
        assert_eq!(
            distinct.len(),
            found.len(),
            "{name}, k={k}: duplicate classes"
        );
    }
}

#[test]
fn lambda_assignment_counts() {
    let p = |s: &str| -> IntegerPartition { s.parse().unwrap() };
    let cases: Vec<(&str, Graph, IntegerPartition)> = vec![
        ("P_3", path(3), p("1,1")),
        ("K_3", Graph::complete(3).unwrap(), p("1,2")),
        ("K_2", Graph::complete(2).unwrap(), p("1,1,1")),
        ("K_2", Graph::complete(2).unwrap(), p("1,2")),
        ("3 isolated", Graph::empty(3).unwrap(), p("1,1")),
    ];
    for (name, g, lambda) in cases {
        let perms = automorphisms(&g);
        let found = enumerate_lambda_assignments(&g, &lambda).unwrap();
        let expected = naive_count(&g, lambda.parts(), &perms);
        assert_eq!(found.len(), expected, "{name}, lambda={lambda}");
        for a in &found {
            assert!(
                a.validate().valid,
                "{name}: enumerated assignment is invalid"
            );
        }
    }
}

#[test]
fn labelled_graphs_use_part_preserving_symmetry() {
    // K_{2,2}: part-preserving maps coincide with all automorphisms
    let s: PartSizes = "2,2".parse().unwrap();
    let g = complete_multipartite(&s).unwrap();
    let perms = automorphisms(&g);
    assert_eq!(perms.len(), 8);
    let found = enumerate_k_assignments(&g, 2).unwrap();
    assert_eq!(found.len(), naive_count(&g, &[2], &perms));
}
