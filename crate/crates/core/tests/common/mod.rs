#![allow(dead_code)]

use std::collections::BTreeMap;

use strictcol::{Color, Graph, IntegerPartition};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

fn edge_code(n: usize, has: impl Fn(usize, usize) -> bool) -> u64 {
    let mut code = 0;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if has(u, v) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Isomorphism-invariant key: smallest edge code over all relabelings.
pub fn canonical_code(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| edge_code(g.n(), |u, v| g.has_edge(p[u], p[v])))
        .min()
        .unwrap()
}

/// Color classes of a list assignment: for each color, its vertex set.
pub fn color_classes(lists: &[Vec<Color>]) -> Vec<u64> {
    let mut by_color: BTreeMap<Color, u64> = BTreeMap::new();
    for (v, list) in lists.iter().enumerate() {
        for &c in list {
            *by_color.entry(c).or_default() |= 1 << v;
        }
    }
    let mut classes: Vec<u64> = by_color.into_values().collect();
    classes.sort_unstable();
    classes
}

/// Equal up to renaming colors and the given vertex permutations.
pub fn equivalent(a: &[Vec<Color>], b: &[Vec<Color>], perms: &[Vec<usize>]) -> bool {
    let target = color_classes(b);
    perms.iter().any(|p| {
        let moved: Vec<Vec<Color>> = (0..a.len()).map(|v| a[p[v]].clone()).collect();
        color_classes(&moved) == target
    })
}

/// Permutations that keep each block of consecutive vertices in place.
pub fn within_blocks(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut offset = 0;
    for &s in sizes {
        let local = permutations(s);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                local.iter().map(move |l| {
                    let mut p = prefix.clone();
                    p.extend(l.iter().map(|&i| offset + i));
                    p
                })
            })
            .collect();
        offset += s;
    }
    out
}

/// All partitions of `k` by an independent generator (non-increasing parts).
pub fn partitions_of(k: usize) -> Vec<IntegerPartition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(k, k, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|p| IntegerPartition::new(p).unwrap())
        .collect()
}

/// Can `parts` be split into `targets.len()` non-empty groups with group
/// `i` summing to exactly `targets[i]`? Tries every map of parts to groups.
pub fn groups_exactly(parts: &[usize], targets: &[usize]) -> bool {
    let t = targets.len();
    if t == 0 || parts.len() < t {
        return false;
    }
    let total = t.pow(parts.len() as u32);
    (0..total).any(|mut code| {
        let mut sums = vec![0; t];
        let mut counts = vec![0; t];
        for &p in parts {
            sums[code % t] += p;
            counts[code % t] += 1;
            code /= t;
        }
        sums == targets && counts.iter().all(|&c| c > 0)
    })
}

/// The order from its definition: `hi` refines some partition obtained
/// from `lo` by increasing parts.
pub fn leq_oracle(lo: &IntegerPartition, hi: &IntegerPartition) -> bool {
    let extra = match hi.weight().checked_sub(lo.weight()) {
        Some(e) => e,
        None => return false,
    };
    fn spread(i: usize, left: usize, base: &[usize], cur: &mut Vec<usize>, hi: &[usize]) -> bool {
        if i == base.len() {
            return left == 0 && groups_exactly(hi, cur);
        }
        (0..=left).any(|d| {
            cur.push(base[i] + d);
            let ok = spread(i + 1, left - d, base, cur, hi);
            cur.pop();
            ok
        })
    }
    spread(0, extra, lo.parts(), &mut Vec::new(), hi.parts())
}
