//! Small simple graphs, complete multipartite constructors, chromatic number
//! and containment between complete multipartite graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{bound, Error, Result};
use crate::partition::parse_partition;
use crate::Color;

/// Hard limit from the bitmask adjacency representation.
pub const MAX_VERTICES: usize = 64;

/// Undirected simple graph on vertices `0..n`, adjacency stored as bitmasks.
///
/// A graph built as complete multipartite also remembers which part each
/// vertex belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    part_label: Option<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        bound("vertex count", n, MAX_VERTICES)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
            part_label: None,
        })
    }

    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) leaves 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    /// Builds a graph from the low `n*(n-1)/2` bits of `code`, one bit per
    /// pair `(u,v)` with `u < v` in lexicographic order.
    pub fn from_edge_code(n: usize, code: u64) -> Result<Self> {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if code >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Graph::new(n, &edges)
    }

    /// Attaches a part labelling; the graph must be complete multipartite
    /// with exactly these parts.
    pub fn with_parts(mut self, parts: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; self.n];
        for (p, members) in parts.iter().enumerate() {
            for &v in members {
                if v >= self.n || label[v] != usize::MAX {
                    return Err(Error::InvalidGraph(format!(
                        "vertex {v} is out of range or listed in two parts"
                    )));
                }
                label[v] = p;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidGraph(format!("vertex {v} is in no part")));
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) != (label[u] != label[v]) {
                    return Err(Error::InvalidGraph(format!(
                        "parts do not describe a complete multipartite graph at ({u},{v})"
                    )));
                }
            }
        }
        self.part_label = Some(label);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                (u + 1..self.n)
                    .filter(move |&v| self.has_edge(u, v))
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn part_labels(&self) -> Option<&[usize]> {
        self.part_label.as_deref()
    }

    pub fn parts(&self) -> Option<Vec<Vec<usize>>> {
        let label = self.part_label.as_ref()?;
        let count = label.iter().max().map_or(0, |&m| m + 1);
        let mut parts = vec![Vec::new(); count];
        for (v, &p) in label.iter().enumerate() {
            parts[p].push(v);
        }
        Some(parts)
    }

    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Induced subgraph on `vertices` (in the given order). Part labels are
    /// kept, renumbered densely in order of first appearance.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut adj = vec![0u64; vertices.len()];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= 1 << j;
                }
            }
        }
        let part_label = self.part_label.as_ref().map(|label| {
            let mut seen: Vec<usize> = Vec::new();
            vertices
                .iter()
                .map(|&v| match seen.iter().position(|&p| p == label[v]) {
                    Some(i) => i,
                    None => {
                        seen.push(label[v]);
                        seen.len() - 1
                    }
                })
                .collect()
        });
        Graph {
            n: vertices.len(),
            adj,
            part_label,
        }
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }
}

/// Iterates the set bits of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<Vec<usize>>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges(),
            parts: self.parts(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let g = Graph::new(raw.n, &raw.edges).map_err(serde::de::Error::custom)?;
        match raw.parts {
            Some(parts) => g.with_parts(&parts).map_err(serde::de::Error::custom),
            None => Ok(g),
        }
    }
}

/// Part sizes `a_1 <= a_2 <= ... <= a_k` of a complete multipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartSizes {
    sizes: Vec<usize>,
}

impl PartSizes {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidGraph("part sizes must be non-empty".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidGraph("part sizes must be positive".into()));
        }
        sizes.sort_unstable();
        Ok(PartSizes { sizes })
    }

    /// `K_{a*b}`: `b` parts of size `a`.
    pub fn uniform(a: usize, b: usize) -> Self {
        PartSizes::new(vec![a; b]).expect("positive uniform sizes")
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// First vertex of each part in the consecutive layout, plus the total.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &s in &self.sizes {
            acc += s;
            out.push(acc);
        }
        out
    }
}

impl fmt::Display for PartSizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "K_{{{}}}", items.join(","))
    }
}

impl FromStr for PartSizes {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parsed = parse_partition(s)?;
        PartSizes::new(parsed.parts().to_vec())
    }
}

impl TryFrom<Vec<usize>> for PartSizes {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        PartSizes::new(v)
    }
}

impl From<PartSizes> for Vec<usize> {
    fn from(p: PartSizes) -> Vec<usize> {
        p.sizes
    }
}

/// Complete multipartite graph with parts laid out consecutively in size order.
pub fn complete_multipartite(sizes: &PartSizes) -> Result<Graph> {
    complete_multipartite_bounded(sizes, &Bounds::default())
}

pub fn complete_multipartite_bounded(sizes: &PartSizes, bounds: &Bounds) -> Result<Graph> {
    bound(
        "total vertices",
        sizes.total(),
        bounds.multipartite_vertices.min(MAX_VERTICES),
    )?;
    let mut label = Vec::with_capacity(sizes.total());
    for (p, &s) in sizes.sizes().iter().enumerate() {
        label.extend(std::iter::repeat_n(p, s));
    }
    let n = label.len();
    let mut adj = vec![0u64; n];
    for u in 0..n {
        for v in 0..n {
            if label[u] != label[v] {
                adj[u] |= 1 << v;
            }
        }
    }
    Ok(Graph {
        n,
        adj,
        part_label: Some(label),
    })
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_bounded(g, &Bounds::default())
}

pub fn chromatic_number_bounded(g: &Graph, bounds: &Bounds) -> Result<usize> {
    if let Some(label) = g.part_labels() {
        let mut seen: Vec<usize> = label.to_vec();
        seen.sort_unstable();
        seen.dedup();
        return Ok(seen.len());
    }
    bound(
        "vertices for chromatic number",
        g.n(),
        bounds.chromatic_vertices,
    )?;
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = greedy_clique(g);
    let upper = dsatur_greedy(g);
    for k in lower..upper {
        if k_colorable(g, k) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 1;
    for start in 0..g.n() {
        let mut clique = 1u64 << start;
        let mut cand = g.neighbors(start);
        while cand != 0 {
            let v = bits(cand)
                .max_by_key(|&v| (g.neighbors(v) & cand).count_ones())
                .unwrap();
            clique |= 1 << v;
            cand &= g.neighbors(v);
        }
        best = best.max(clique.count_ones() as usize);
    }
    best
}

fn dsatur_greedy(g: &Graph) -> usize {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (saturation(g, &color, v), g.degree(v)))
            .unwrap();
        let taken: u64 = bits(g.neighbors(v))
            .filter(|&u| color[u] != usize::MAX)
            .fold(0, |m, u| m | 1 << color[u]);
        let c = (!taken).trailing_zeros() as usize;
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn saturation(g: &Graph, color: &[usize], v: usize) -> u32 {
    bits(g.neighbors(v))
        .filter(|&u| color[u] != usize::MAX)
        .fold(0u64, |m, u| m | 1 << color[u])
        .count_ones()
}

/// Exact k-colorability by DSATUR-ordered backtracking; colors are opened
/// in order so permuted colorings are not revisited.
pub(crate) fn k_colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, color: &mut [usize], left: usize, opened: usize) -> bool {
        if left == 0 {
            return true;
        }
        let v = (0..g.n())
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (saturation(g, color, v), g.degree(v)))
            .unwrap();
        let taken: u64 = bits(g.neighbors(v))
            .filter(|&u| color[u] != usize::MAX)
            .fold(0, |m, u| m | 1 << color[u]);
        for c in 0..k.min(opened + 1) {
            if taken >> c & 1 == 0 {
                color[v] = c;
                if go(g, k, color, left - 1, opened.max(c + 1)) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    let mut color = vec![usize::MAX; g.n()];
    go(g, k, &mut color, g.n(), 0)
}

/// Is the complete multipartite graph on `pattern` a subgraph of the one on `host`?
///
/// Pattern vertices in different parts are adjacent and so land in different
/// host parts; each host part therefore serves at most one pattern part.
/// Containment holds iff host parts can be handed out so that every pattern
/// part receives total size at least its own. With equal part counts this is
/// pointwise domination of the sorted sizes.
pub fn contains_parts(host: &PartSizes, pattern: &PartSizes) -> bool {
    if pattern.k() > host.k() {
        return false;
    }
    if pattern.k() == host.k() {
        return host
            .sizes()
            .iter()
            .zip(pattern.sizes())
            .all(|(h, p)| h >= p);
    }
    fn cover(host: &[usize], idx: usize, need: &mut [usize]) -> bool {
        if need.iter().all(|&n| n == 0) {
            return true;
        }
        if idx == host.len() {
            return false;
        }
        let remaining: usize = host[idx..].iter().sum();
        if remaining < need.iter().sum::<usize>() {
            return false;
        }
        for j in 0..need.len() {
            if need[j] == 0 || need[..j].contains(&need[j]) {
                continue;
            }
            let before = need[j];
            need[j] = before.saturating_sub(host[idx]);
            if cover(host, idx + 1, need) {
                return true;
            }
            need[j] = before;
        }
        cover(host, idx + 1, need)
    }
    let mut host_desc = host.sizes().to_vec();
    host_desc.reverse();
    let mut need = pattern.sizes().to_vec();
    cover(&host_desc, 0, &mut need)
}

/// Brute-force subgraph containment between the two complete multipartite
/// graphs, with no use of their part structure: an injective vertex map
/// sending pattern edges to host edges.
pub fn embedding_oracle(host: &PartSizes, pattern: &PartSizes) -> Result<bool> {
    embedding_oracle_bounded(host, pattern, &Bounds::default())
}

pub fn embedding_oracle_bounded(
    host: &PartSizes,
    pattern: &PartSizes,
    bounds: &Bounds,
) -> Result<bool> {
    bound(
        "host vertices",
        host.total(),
        bounds.embedding_host_vertices,
    )?;
    bound(
        "pattern vertices",
        pattern.total(),
        bounds.embedding_pattern_vertices,
    )?;
    let h = complete_multipartite(host)?;
    let p = complete_multipartite(pattern)?;
    Ok(subgraph_embeds(&h, &p))
}

pub(crate) fn subgraph_embeds(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() {
        return false;
    }
    // Non-adjacent vertices with identical neighborhoods are interchangeable,
    // so their images may be required to increase.
    let twin_before: Vec<Option<usize>> = (0..pattern.n())
        .map(|v| {
            (0..v)
                .rev()
                .find(|&u| pattern.neighbors(u) == pattern.neighbors(v) && !pattern.has_edge(u, v))
        })
        .collect();

    fn go(
        host: &Graph,
        pattern: &Graph,
        twin: &[Option<usize>],
        image: &mut Vec<usize>,
        used: u64,
    ) -> bool {
        let v = image.len();
        if v == pattern.n() {
            return true;
        }
        let floor = twin[v].map_or(0, |u| image[u] + 1);
        for w in floor..host.n() {
            if used >> w & 1 == 1 {
                continue;
            }
            let ok = (0..v).all(|u| !pattern.has_edge(u, v) || host.has_edge(image[u], w));
            if ok {
                image.push(w);
                if go(host, pattern, twin, image, used | 1 << w) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }
    go(host, pattern, &twin_before, &mut Vec::new(), 0)
}

/// Every edge bichromatic. `colors` must give a color to every vertex.
pub fn is_proper(g: &Graph, colors: &[Color]) -> Result<bool> {
    if colors.len() < g.n() {
        return Err(Error::PartialColoring(colors.len()));
    }
    Ok(g.edges().iter().all(|&(u, v)| colors[u] != colors[v]))
}

pub fn is_proper_map(g: &Graph, colors: &BTreeMap<usize, Color>) -> Result<bool> {
    let dense: Vec<Color> = (0..g.n())
        .map(|v| colors.get(&v).copied().ok_or(Error::PartialColoring(v)))
        .collect::<Result<_>>()?;
    is_proper(g, &dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(s: &str) -> PartSizes {
        s.parse().unwrap()
    }

    #[test]
    fn multipartite_edge_counts() {
        let g = complete_multipartite(&sizes("2,4")).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 8));
        let g = complete_multipartite(&sizes("3,3,3")).unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 27));
        let g = complete_multipartite(&sizes("1,1,1")).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 3));
        assert_eq!(g.parts().unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert!(complete_multipartite(&sizes("33,32")).is_err());
    }

    #[test]
    fn layout_is_part_by_part_in_size_order() {
        let g = complete_multipartite(&sizes("4,2")).unwrap();
        assert_eq!(g.part_labels().unwrap(), &[0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(
            chromatic_number(&complete_multipartite(&sizes("3,3,3")).unwrap()).unwrap(),
            3
        );
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::complete(4).unwrap()).unwrap(), 4);
        assert_eq!(chromatic_number(&Graph::cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::empty(3).unwrap()).unwrap(), 1);
        assert!(chromatic_number(&Graph::empty(17).unwrap()).is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(contains_parts(&sizes("2,4,7"), &sizes("2,4,6")));
        assert!(!contains_parts(&sizes("2,4,5"), &sizes("2,5,5")));
        assert!(contains_parts(&sizes("3,5,5"), &sizes("3,5,5")));
        // C4 sits inside K4 even though K4's parts are singletons.
        assert!(contains_parts(&sizes("1,1,1,1"), &sizes("2,2")));
        assert!(!contains_parts(&sizes("2,2"), &sizes("1,1,1")));
    }

    #[test]
    fn embedding_oracle_examples() {
        assert!(embedding_oracle(&sizes("3,3,3"), &sizes("2,2,2")).unwrap());
        assert!(!embedding_oracle(&sizes("2,2"), &sizes("1,1,1")).unwrap());
        assert!(embedding_oracle(&sizes("2,4"), &sizes("2,4")).unwrap());
        assert!(!embedding_oracle(&sizes("2,4,5"), &sizes("2,5,5")).unwrap());
        assert!(embedding_oracle(&sizes("9,9"), &sizes("1")).is_err());
    }

    #[test]
    fn proper_colorings() {
        let k2 = Graph::complete(2).unwrap();
        assert!(is_proper(&k2, &[1, 2]).unwrap());
        assert!(!is_proper(&k2, &[1, 1]).unwrap());
        assert!(is_proper(&k2, &[1]).is_err());
        let k24 = complete_multipartite(&sizes("2,4")).unwrap();
        assert!(is_proper(&k24, &[7, 7, 9, 9, 9, 9]).unwrap());
        let partial: BTreeMap<usize, Color> = [(0, 1)].into();
        assert!(matches!(
            is_proper_map(&k2, &partial),
            Err(Error::PartialColoring(1))
        ));
    }

    #[test]
    fn json_round_trip_and_part_check() {
        let g = complete_multipartite(&sizes("1,2")).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"n":3,"edges":[[0,1],[0,2]],"parts":[[0],[1,2]]}"#);
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"n":3,"edges":[[0,1]],"parts":[[0],[1,2]]}"#;
        assert!(serde_json::from_str::<Graph>(bad).is_err());
        let plain: Graph = serde_json::from_str(r#"{"n":2,"edges":[[0,1]]}"#).unwrap();
        assert!(plain.part_labels().is_none());
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::new(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        let k = complete_multipartite(&sizes("2,2,3")).unwrap();
        let sub = k.induced(&[0, 1, 2, 3]);
        assert_eq!(sub.part_labels().unwrap(), &[0, 0, 1, 1]);
        assert_eq!(sub.edge_count(), 4);
    }
}
