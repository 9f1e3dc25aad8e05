mod common;

use proptest::prelude::*;
use strictcol::{enumerate_partitions, is_refinement, leq, refinement_hasse, IntegerPartition};

/// p(k) by Euler's pentagonal recurrence.
fn partition_counts(max: usize) -> Vec<i64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        let mut total = 0;
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            total += sign * p[n - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                total += sign * p[n - g2];
            }
        }
        p[n] = total;
    }
    p
}

#[test]
fn partition_counts_match_recurrence() {
    let p = partition_counts(20);
    for k in 1..=20 {
        let got = enumerate_partitions(k).unwrap();
        assert_eq!(got.len() as i64, p[k], "p({k})");
        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), got.len(), "duplicates at k={k}");
        assert!(got.iter().all(|q| q.weight() == k));
    }
}

#[test]
fn enumeration_matches_independent_generator() {
    for k in 1..=12 {
        let mut ours = enumerate_partitions(k).unwrap();
        let mut theirs = common::partitions_of(k);
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs, "k={k}");
    }
}

#[test]
fn refinement_matches_brute_force() {
    for k in 1..=7 {
        let ps = enumerate_partitions(k).unwrap();
        for fine in &ps {
            for coarse in &ps {
                let got = is_refinement(fine, coarse);
                let want = common::groups_exactly(fine.parts(), coarse.parts());
                assert_eq!(got.is_some(), want, "{fine} refines {coarse}");
                if let Some(w) = got {
                    assert!(w.proves_refinement(fine, coarse));
                }
            }
        }
    }
}

#[test]
fn hasse_is_transitive_reduction() {
    for k in 1..=8 {
        let h = refinement_hasse(k).unwrap();
        let n = h.nodes.len();
        let refines = |f: usize, c: usize| {
            f != c && common::groups_exactly(h.nodes[f].parts(), h.nodes[c].parts())
        };
        let mut expected = Vec::new();
        for c in 0..n {
            for f in 0..n {
                if refines(f, c) && !(0..n).any(|m| refines(f, m) && refines(m, c)) {
                    expected.push((c, f));
                }
            }
        }
        let mut got = h.edges.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected, "k={k}");
    }
}

#[test]
fn hasse_small_cases() {
    let h = refinement_hasse(3).unwrap();
    let p = |s: &str| -> IntegerPartition { s.parse().unwrap() };
    assert_eq!(h.edges.len(), 2);
    assert!(h.has_edge(&p("3"), &p("1,2")));
    assert!(h.has_edge(&p("1,2"), &p("1,1,1")));
    assert!(!h.has_edge(&p("3"), &p("1,1,1")));
    assert!(h.to_dot().starts_with("digraph"));
}

#[test]
fn leq_agrees_with_definition_on_mixed_weights() {
    let all: Vec<IntegerPartition> = (1..=6).flat_map(common::partitions_of).collect();
    for lo in &all {
        for hi in &all {
            assert_eq!(
                leq(lo, hi).is_some(),
                common::leq_oracle(lo, hi),
                "{lo} <= {hi}"
            );
        }
    }
}

#[test]
fn order_on_equal_weight_is_refinement() {
    for k in 1..=7 {
        let ps = enumerate_partitions(k).unwrap();
        for lo in &ps {
            for hi in &ps {
                assert_eq!(
                    leq(lo, hi).is_some(),
                    is_refinement(hi, lo).is_some(),
                    "{lo} <= {hi}"
                );
            }
        }
    }
}

fn partition_strategy(max_weight: usize) -> impl Strategy<Value = IntegerPartition> {
    prop::collection::vec(1..=max_weight, 1..=max_weight)
        .prop_filter("weight bound", move |v| {
            v.iter().sum::<usize>() <= max_weight
        })
        .prop_map(|v| IntegerPartition::new(v).unwrap())
}

proptest! {
    #[test]
    fn text_round_trip(p in partition_strategy(14)) {
        let back: IntegerPartition = p.to_text().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let compact: IntegerPartition = p.to_compact_text().parse().unwrap();
        prop_assert_eq!(&compact, &p);
        let json = serde_json::to_string(&p).unwrap();
        let from_json: IntegerPartition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(from_json, p);
    }

    #[test]
    fn refinement_implies_order(fine in partition_strategy(9), coarse in partition_strategy(9)) {
        if is_refinement(&fine, &coarse).is_some() {
            prop_assert!(leq(&coarse, &fine).is_some());
        }
    }

    #[test]
    fn order_witness_checks(lo in partition_strategy(8), hi in partition_strategy(8)) {
        if let Some(w) = leq(&lo, &hi) {
            prop_assert!(w.proves_leq(&lo, &hi));
            prop_assert!(common::leq_oracle(&lo, &hi));
        }
    }

    #[test]
    fn order_is_antisymmetric(a in partition_strategy(8), b in partition_strategy(8)) {
        if leq(&a, &b).is_some() && leq(&b, &a).is_some() {
            prop_assert_eq!(a, b);
        }
    }
}
