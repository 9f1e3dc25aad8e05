//! Orderly enumeration of list assignments up to symmetry.
//!
//! With the vertex order fixed, a list assignment modulo renaming of colors
//! is the same thing as the multiset of its *color classes*: for each color,
//! the set of vertices whose list contains it. A k-assignment is a multiset
//! of non-empty vertex sets covering every vertex exactly `k` times. A
//! lambda-assignment is one such multiset per color group, group `i`
//! covering every vertex exactly `k_i` times. Renaming colors inside a group
//! leaves the multiset unchanged, so color symmetry costs nothing.
//!
//! Vertex symmetry is handled by orderly rejection. Color classes are kept
//! sorted by [`class_key`]; a multiset is emitted only if no symmetry maps it
//! to a lexicographically smaller sorted multiset. The test also runs on
//! every prefix, since the `j` smallest images of a prefix bound the `j`
//! smallest images of the whole multiset from above. Groups after the first
//! are reduced only by the stabilizer of the groups before them, and groups
//! with equal `k_i` must appear in non-decreasing order.
//!
//! With a complete symmetry group a single group is enumerated exactly once
//! per orbit. Any subset of the group still yields at least one
//! representative per orbit.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Total order on color classes used for sorting: lowest vertex first, then
/// the mask itself. This is the order in which the generator emits classes.
#[inline]
pub fn class_key(mask: u64) -> u128 {
    (u128::from(mask.trailing_zeros()) << 64) | u128::from(mask)
}

fn cmp_classes(a: &[u64], b: &[u64]) -> Ordering {
    a.iter()
        .map(|&m| class_key(m))
        .cmp(b.iter().map(|&m| class_key(m)))
}

pub fn sort_classes(classes: &mut [u64]) {
    classes.sort_unstable_by_key(|&m| class_key(m));
}

/// Which color classes the enumeration may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    /// Every non-empty vertex set: one representative for every equivalence class.
    All,
    /// Only vertex sets containing an edge of the graph.
    ///
    /// Sound for deciding choosability of graphs without isolated vertices.
    /// If color `c` sits on an independent set `S` of a bad assignment, then
    /// the assignment is already bad on `G - S` (otherwise give all of `S`
    /// color `c`). Swapping `c` at each `v` in `S` for a color of the same
    /// group that a neighbor of `v` has and `v` lacks keeps the assignment
    /// bad on `G - S`, hence bad, and strictly lowers the number of
    /// independent color classes.
    EdgeSpanning,
}

/// Vertex permutations used for orbit pruning. `perms[g][v]` is the image of `v`.
#[derive(Debug, Clone)]
pub struct Symmetry {
    n: usize,
    perms: Vec<Vec<usize>>,
    complete: bool,
}

impl Symmetry {
    pub fn trivial(n: usize) -> Self {
        Symmetry {
            n,
            perms: vec![(0..n).collect()],
            complete: true,
        }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// False when the group was truncated at the cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Permutations that only move vertices inside their own part.
    pub fn within_parts(g: &Graph, cap: usize) -> Result<Self> {
        let parts = g
            .parts()
            .ok_or_else(|| Error::Precondition("graph has no part labels".into()))?;
        let blocks: Vec<Vec<Vec<usize>>> = parts.iter().map(|p| vec![p.clone()]).collect();
        Ok(Self::from_blocks(g.n(), &blocks, cap))
    }

    /// Automorphisms of a complete multipartite graph: permute inside parts
    /// and swap parts of equal size.
    pub fn part_preserving(g: &Graph, cap: usize) -> Result<Self> {
        let parts = g
            .parts()
            .ok_or_else(|| Error::Precondition("graph has no part labels".into()))?;
        let mut by_size: Vec<Vec<Vec<usize>>> = Vec::new();
        for p in parts {
            match by_size.iter_mut().find(|b| b[0].len() == p.len()) {
                Some(b) => b.push(p),
                None => by_size.push(vec![p]),
            }
        }
        Ok(Self::from_blocks(g.n(), &by_size, cap))
    }

    /// `blocks[b]` is a list of equal-size parts that may be permuted among
    /// themselves; every part is also permuted internally.
    fn from_blocks(n: usize, blocks: &[Vec<Vec<usize>>], cap: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut complete = true;
        for block in blocks {
            let size = block[0].len();
            let r = block.len();
            let inner = permutations_capped(size, cap, &mut complete);
            let outer = permutations_capped(r, cap, &mut complete);
            let mut next = Vec::new();
            'fill: for p in &perms {
                for o in &outer {
                    // one inner permutation per part, mixed-radix counter
                    let mut idx = vec![0usize; r];
                    loop {
                        let mut q = p.clone();
                        for src in 0..r {
                            let ip = &inner[idx[src]];
                            for i in 0..size {
                                q[block[src][i]] = block[o[src]][ip[i]];
                            }
                        }
                        next.push(q);
                        if next.len() > cap {
                            next.pop();
                            complete = false;
                            break 'fill;
                        }
                        let mut d = 0;
                        while d < r {
                            idx[d] += 1;
                            if idx[d] < inner.len() {
                                break;
                            }
                            idx[d] = 0;
                            d += 1;
                        }
                        if d == r {
                            break;
                        }
                    }
                }
            }
            perms = next;
        }
        Symmetry { n, perms, complete }
    }

    /// All automorphisms by backtracking, up to `cap` of them.
    pub fn automorphisms(g: &Graph, cap: usize) -> Self {
        let n = g.n();
        let mut perms = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut complete = true;
        fn go(
            g: &Graph,
            v: usize,
            image: &mut [usize],
            used: u64,
            perms: &mut Vec<Vec<usize>>,
            cap: usize,
            complete: &mut bool,
        ) {
            if perms.len() >= cap {
                *complete = false;
                return;
            }
            if v == g.n() {
                perms.push(image.to_vec());
                return;
            }
            for w in 0..g.n() {
                if used >> w & 1 == 1 || g.degree(w) != g.degree(v) {
                    continue;
                }
                if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w)) {
                    image[v] = w;
                    go(g, v + 1, image, used | 1 << w, perms, cap, complete);
                    image[v] = usize::MAX;
                }
            }
        }
        go(g, 0, &mut image, 0, &mut perms, cap, &mut complete);
        if perms.is_empty() {
            perms.push((0..n).collect());
        }
        Symmetry { n, perms, complete }
    }

    /// Part-preserving permutations when `g` carries part labels, otherwise
    /// all automorphisms.
    pub fn for_graph(g: &Graph, cap: usize) -> Self {
        match g.part_labels() {
            Some(_) => Self::part_preserving(g, cap).expect("labels present"),
            None => Self::automorphisms(g, cap),
        }
    }

    #[inline]
    fn apply(&self, g: usize, mask: u64) -> u64 {
        let p = &self.perms[g];
        bits(mask).fold(0, |acc, v| acc | 1 << p[v])
    }

    /// Images of `classes` under permutation `g`, sorted.
    pub fn image(&self, g: usize, classes: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = classes.iter().map(|&m| self.apply(g, m)).collect();
        sort_classes(&mut out);
        out
    }

    /// Smallest image of a multiset of classes over the whole group.
    pub fn canonical(&self, classes: &[u64]) -> Vec<u64> {
        let mut best: Vec<u64> = {
            let mut c = classes.to_vec();
            sort_classes(&mut c);
            c
        };
        for g in 0..self.perms.len() {
            let img = self.image(g, classes);
            if cmp_classes(&img, &best) == Ordering::Less {
                best = img;
            }
        }
        best
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

fn permutations_capped(n: usize, cap: usize, complete: &mut bool) -> Vec<Vec<usize>> {
    let count = (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i).filter(|&c| c <= cap));
    if count.is_none() {
        *complete = false;
        return vec![(0..n).collect()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
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
    go(n, &mut cur, &mut out);
    out
}

/// One enumerated assignment: color classes per group, groups in
/// enumeration order (largest demand first).
pub type Classes = [Vec<u64>];

/// A search space of list assignments on a fixed graph.
#[derive(Debug, Clone)]
pub struct AssignmentSpace<'g> {
    graph: &'g Graph,
    /// Per-vertex demand of each group, in enumeration order.
    demands: Vec<usize>,
    filter: ClassFilter,
    symmetry: Symmetry,
    /// Byte lookup tables for applying permutations, when small enough.
    tables: Option<Vec<u64>>,
}

const MAX_TABLE_ENTRIES: usize = 1 << 21;

fn build_tables(sym: &Symmetry) -> Option<Vec<u64>> {
    let chunks = sym.vertex_count().div_ceil(8);
    if sym.len() * chunks * 256 > MAX_TABLE_ENTRIES {
        return None;
    }
    let n = sym.vertex_count();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut t = Vec::with_capacity(sym.len() * chunks * 256);
    for g in 0..sym.len() {
        for c in 0..chunks {
            for byte in 0..256u64 {
                t.push(sym.apply(g, (byte << (8 * c)) & full));
            }
        }
    }
    Some(t)
}

/// Output of a first-level expansion: a first-group multiset and the
/// indices of the permutations that fix it.
#[derive(Debug, Clone)]
pub struct Root {
    pub classes: Vec<u64>,
    pub stabilizer: Vec<usize>,
}

impl<'g> AssignmentSpace<'g> {
    /// `demands` are sorted into non-increasing order.
    pub fn new(
        graph: &'g Graph,
        demands: &[usize],
        filter: ClassFilter,
        symmetry: Symmetry,
    ) -> Result<Self> {
        if demands.is_empty() || demands.contains(&0) {
            return Err(Error::Precondition("group demands must be positive".into()));
        }
        if symmetry.vertex_count() != graph.n() {
            return Err(Error::Precondition(
                "symmetry acts on a different vertex count".into(),
            ));
        }
        if graph.n() * demands.iter().sum::<usize>() > 64 {
            return Err(Error::BoundExceeded {
                what: "color classes",
                value: graph.n() * demands.iter().sum::<usize>(),
                bound: 64,
            });
        }
        if filter == ClassFilter::EdgeSpanning && (0..graph.n()).any(|v| graph.degree(v) == 0) {
            return Err(Error::Precondition(
                "edge-spanning classes need a graph without isolated vertices".into(),
            ));
        }
        let mut demands = demands.to_vec();
        demands.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AssignmentSpace {
            graph,
            demands,
            filter,
            tables: build_tables(&symmetry),
            symmetry,
        })
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Visits every emitted assignment in deterministic order.
    pub fn for_each<F>(&self, f: F) -> ControlFlow<()>
    where
        F: FnMut(&Classes) -> ControlFlow<()>,
    {
        self.for_each_pruned(&|_: &Classes| false, f)
    }

    /// As [`AssignmentSpace::for_each`], but skips every assignment that
    /// extends a sequence of completed groups on which `prune` holds.
    pub fn for_each_pruned<P, F>(&self, prune: &P, mut f: F) -> ControlFlow<()>
    where
        P: Fn(&Classes) -> bool + ?Sized,
        F: FnMut(&Classes) -> ControlFlow<()>,
    {
        let all: Vec<usize> = (0..self.symmetry.len()).collect();
        let mut levels: Vec<Vec<u64>> = Vec::with_capacity(self.demands.len());
        self.level(0, &all, &mut levels, prune, &mut f)
    }

    /// First-group multisets with their stabilizers, in enumeration order.
    pub fn roots(&self) -> Vec<Root> {
        let all: Vec<usize> = (0..self.symmetry.len()).collect();
        let mut out = Vec::new();
        let _ = self.group(0, &all, None, &mut |classes, stab| {
            out.push(Root {
                classes: classes.to_vec(),
                stabilizer: stab.to_vec(),
            });
            ControlFlow::Continue(())
        });
        out
    }

    /// Visits the assignments below one root, in enumeration order.
    pub fn for_each_under<F>(&self, root: &Root, f: F) -> ControlFlow<()>
    where
        F: FnMut(&Classes) -> ControlFlow<()>,
    {
        self.for_each_under_pruned(root, &|_: &Classes| false, f)
    }

    pub fn for_each_under_pruned<P, F>(&self, root: &Root, prune: &P, mut f: F) -> ControlFlow<()>
    where
        P: Fn(&Classes) -> bool + ?Sized,
        F: FnMut(&Classes) -> ControlFlow<()>,
    {
        let mut levels = vec![root.classes.clone()];
        self.level(1, &root.stabilizer, &mut levels, prune, &mut f)
    }

    fn level<P, F>(
        &self,
        depth: usize,
        stab: &[usize],
        levels: &mut Vec<Vec<u64>>,
        prune: &P,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        P: Fn(&Classes) -> bool + ?Sized,
        F: FnMut(&Classes) -> ControlFlow<()>,
    {
        if depth == self.demands.len() {
            return f(levels);
        }
        if depth > 0 && prune(levels) {
            return ControlFlow::Continue(());
        }
        let floor = (depth > 0 && self.demands[depth] == self.demands[depth - 1])
            .then(|| levels[depth - 1].clone());
        self.group(depth, stab, floor.as_deref(), &mut |classes, next_stab| {
            levels.push(classes.to_vec());
            let r = self.level(depth + 1, next_stab, levels, prune, f);
            levels.pop();
            r
        })
    }

    #[inline]
    fn apply(&self, g: usize, mask: u64) -> u64 {
        match &self.tables {
            Some(t) => {
                let chunks = self.graph.n().div_ceil(8);
                let base = g * chunks * 256;
                (0..chunks).fold(0, |acc, c| {
                    acc | t[base + c * 256 + (mask >> (8 * c) & 0xff) as usize]
                })
            }
            None => self.symmetry.apply(g, mask),
        }
    }

    fn image(&self, g: usize, classes: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = classes.iter().map(|&m| self.apply(g, m)).collect();
        sort_classes(&mut out);
        out
    }

    /// Enumerates one group's multisets: canonical under `stab`, and not
    /// below `floor` when given.
    fn group(
        &self,
        depth: usize,
        stab: &[usize],
        floor: Option<&[u64]>,
        emit: &mut dyn FnMut(&[u64], &[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.graph.n();
        let mut state = GroupState {
            space: self,
            k: self.demands[depth],
            stab,
            floor,
            counts: vec![0; n],
            classes: Vec::new(),
            ties: Vec::new(),
        };
        state.extend(emit)
    }
}

struct GroupState<'a, 'g> {
    space: &'a AssignmentSpace<'g>,
    k: usize,
    stab: &'a [usize],
    floor: Option<&'a [u64]>,
    counts: Vec<usize>,
    classes: Vec<u64>,
    /// Per prefix length: the symmetries whose smallest class image equals
    /// the first class. Every other symmetry maps the prefix strictly above.
    ties: Vec<Vec<usize>>,
}

impl GroupState<'_, '_> {
    fn extend(
        &mut self,
        emit: &mut dyn FnMut(&[u64], &[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.space.graph.n();
        let Some(v) = (0..n).find(|&v| self.counts[v] < self.k) else {
            let stab = self.stabilizer();
            return emit(&self.classes, &stab);
        };
        let avail: u64 = (v + 1..n)
            .filter(|&u| self.counts[u] < self.k)
            .fold(0, |m, u| m | 1 << u);
        let prev = self
            .classes
            .last()
            .copied()
            .filter(|&p| p.trailing_zeros() as usize == v);
        // subsets of `avail` in increasing numeric order
        let mut sub: u64 = 0;
        loop {
            let mask = 1u64 << v | sub;
            let in_order = prev.is_none_or(|p| mask >= p);
            if in_order && self.allowed(mask) {
                for u in bits(mask) {
                    self.counts[u] += 1;
                }
                self.classes.push(mask);
                if let Some(ties) = self.prefix_ok() {
                    self.ties.push(ties);
                    self.extend(emit)?;
                    self.ties.pop();
                }
                self.classes.pop();
                for u in bits(mask) {
                    self.counts[u] -= 1;
                }
            }
            if sub == avail {
                break;
            }
            sub = sub.wrapping_sub(avail) & avail;
        }
        ControlFlow::Continue(())
    }

    fn allowed(&self, mask: u64) -> bool {
        match self.space.filter {
            ClassFilter::All => true,
            ClassFilter::EdgeSpanning => {
                bits(mask).any(|v| self.space.graph.neighbors(v) & mask != 0)
            }
        }
    }

    /// Necessary conditions for the finished multiset to be emitted, checked
    /// on the current prefix. Returns the tie set for this prefix.
    fn prefix_ok(&self) -> Option<Vec<usize>> {
        let j = self.classes.len();
        if let Some(floor) = self.floor {
            let m = j.min(floor.len());
            if cmp_classes(&self.classes[..m], &floor[..m]) == Ordering::Less {
                return None;
            }
        }
        let space = self.space;
        let first = class_key(self.classes[0]);
        let newest = self.classes[j - 1];
        let parent: &[usize] = self.ties.last().map_or(&[], |t| t.as_slice());
        let mut ties = Vec::with_capacity(parent.len());
        let mut p = 0;
        for &g in self.stab {
            let key = class_key(space.apply(g, newest));
            if key < first {
                return None;
            }
            let inherited = p < parent.len() && parent[p] == g;
            if inherited {
                p += 1;
            }
            if inherited || key == first {
                ties.push(g);
            }
        }
        for &g in &ties {
            if cmp_classes(&space.image(g, &self.classes), &self.classes) == Ordering::Less {
                return None;
            }
        }
        Some(ties)
    }

    fn stabilizer(&self) -> Vec<usize> {
        self.stab
            .iter()
            .copied()
            .filter(|&g| self.space.image(g, &self.classes) == self.classes)
            .collect()
    }
}

/// Color masks per vertex for an enumerated assignment, colors numbered
/// densely group after group.
pub fn vertex_masks(n: usize, classes: &Classes) -> Vec<u64> {
    let mut lists = vec![0u64; n];
    let mut color = 0;
    for group in classes {
        for &class in group {
            for v in bits(class) {
                lists[v] |= 1 << color;
            }
            color += 1;
        }
    }
    lists
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_multipartite, PartSizes};

    fn count(space: &AssignmentSpace) -> usize {
        let mut c = 0;
        let _ = space.for_each(|_| {
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }

    #[test]
    fn raw_counts_without_symmetry() {
        // set partitions of 6 vertices (Bell number)
        let g = Graph::empty(6).unwrap();
        let s = AssignmentSpace::new(&g, &[1], ClassFilter::All, Symmetry::trivial(6)).unwrap();
        assert_eq!(count(&s), 203);
        let g = Graph::empty(4).unwrap();
        let s = AssignmentSpace::new(&g, &[2], ClassFilter::All, Symmetry::trivial(4)).unwrap();
        assert_eq!(count(&s), 139);
    }

    #[test]
    fn group_sizes() {
        let g = complete_multipartite(&"2,2,2".parse::<PartSizes>().unwrap()).unwrap();
        assert_eq!(Symmetry::part_preserving(&g, 1000).unwrap().len(), 48);
        assert_eq!(Symmetry::within_parts(&g, 1000).unwrap().len(), 8);
        assert_eq!(Symmetry::automorphisms(&g, 1000).len(), 48);
        let g = complete_multipartite(&"3,3,3".parse::<PartSizes>().unwrap()).unwrap();
        assert_eq!(Symmetry::part_preserving(&g, 5000).unwrap().len(), 1296);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(Symmetry::automorphisms(&c5, 1000).len(), 10);
        let truncated = Symmetry::automorphisms(&Graph::complete(6).unwrap(), 100);
        assert!(!truncated.is_complete());
        assert_eq!(truncated.len(), 100);
    }

    #[test]
    fn orbit_counts_are_exact_for_one_group() {
        // Single vertex, k = 2: one class.
        let g = Graph::empty(1).unwrap();
        let s = AssignmentSpace::new(&g, &[2], ClassFilter::All, Symmetry::trivial(1)).unwrap();
        assert_eq!(count(&s), 1);
        // K2, k = 1: shared color or distinct colors.
        let g = Graph::complete(2).unwrap();
        let s = AssignmentSpace::new(&g, &[1], ClassFilter::All, Symmetry::automorphisms(&g, 10))
            .unwrap();
        assert_eq!(count(&s), 2);
    }

    #[test]
    fn edge_spanning_rejects_isolated_vertices() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(
            AssignmentSpace::new(&g, &[1], ClassFilter::EdgeSpanning, Symmetry::trivial(3))
                .is_err()
        );
    }

    #[test]
    fn roots_partition_the_stream() {
        let g = complete_multipartite(&"1,2,2".parse::<PartSizes>().unwrap()).unwrap();
        let sym = Symmetry::part_preserving(&g, 1000).unwrap();
        let s = AssignmentSpace::new(&g, &[2, 1], ClassFilter::EdgeSpanning, sym).unwrap();
        let mut direct = Vec::new();
        let _ = s.for_each(|c| {
            direct.push(c.to_vec());
            ControlFlow::Continue(())
        });
        let mut via_roots = Vec::new();
        for root in s.roots() {
            let _ = s.for_each_under(&root, |c| {
                via_roots.push(c.to_vec());
                ControlFlow::Continue(())
            });
        }
        assert!(!direct.is_empty());
        assert_eq!(direct, via_roots);
    }
}
