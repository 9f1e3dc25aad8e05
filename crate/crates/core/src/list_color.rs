//! List assignments, L-colorability, and exhaustive k-choosability.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::enumerate::{vertex_masks, AssignmentSpace, ClassFilter, Classes, Root, Symmetry};
use crate::error::{bound, Error, Result};
use crate::graph::{bits, is_proper, Graph, PartSizes};
use crate::lambda::{BadAssignmentWitness, ColorGrouping, LambdaAssignment};
use crate::partition::IntegerPartition;
use crate::Color;

/// A list of colors for every vertex `0..n`. Lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Result<Self> {
        let mut lists = lists;
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(Error::InvalidAssignment(format!(
                    "vertex {v} has an empty list"
                )));
            }
        }
        Ok(ListAssignment { lists })
    }

    pub fn uniform(n: usize, list: &[Color]) -> Result<Self> {
        ListAssignment::new(vec![list.to_vec(); n])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// `Some(k)` when every list has exactly `k` colors.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.lists.first()?.len();
        self.lists.iter().all(|l| l.len() == k).then_some(k)
    }

    /// Every color used anywhere, sorted.
    pub fn palette(&self) -> Vec<Color> {
        let mut all: Vec<Color> = self.lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.lists.len() < g.n() {
            return Err(Error::InvalidAssignment(format!(
                "missing list for vertex {}",
                self.lists.len()
            )));
        }
        if self.lists.len() > g.n() {
            return Err(Error::InvalidAssignment(format!(
                "lists given for {} vertices but the graph has {}",
                self.lists.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Vertex index used as a JSON object key. Accepts numbers and numeric
/// strings, since buffered JSON hands object keys over as strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub(crate) struct VertexKey(pub usize);

impl<'de> Deserialize<'de> for VertexKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visit;
        impl serde::de::Visitor<'_> for Visit {
            type Value = VertexKey;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a vertex index")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<VertexKey, E> {
                usize::try_from(v).map(VertexKey).map_err(E::custom)
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<VertexKey, E> {
                v.parse()
                    .map(VertexKey)
                    .map_err(|_| E::custom(format!("`{v}` is not a vertex index")))
            }
        }
        d.deserialize_any(Visit)
    }
}

pub(crate) fn dense_from_map<T>(map: BTreeMap<VertexKey, T>, what: &str) -> Result<Vec<T>> {
    if let Some(v) = (0..map.len()).find(|&v| !map.contains_key(&VertexKey(v))) {
        return Err(Error::InvalidAssignment(format!(
            "missing {what} for vertex {v}"
        )));
    }
    Ok(map.into_values().collect())
}

#[derive(Serialize, Deserialize)]
struct ListAssignmentJson {
    lists: BTreeMap<VertexKey, Vec<Color>>,
}

pub(crate) fn lists_from_map(map: BTreeMap<VertexKey, Vec<Color>>) -> Result<Vec<Vec<Color>>> {
    dense_from_map(map, "list")
}

pub(crate) fn lists_to_map(lists: &[Vec<Color>]) -> BTreeMap<VertexKey, Vec<Color>> {
    lists
        .iter()
        .cloned()
        .enumerate()
        .map(|(v, l)| (VertexKey(v), l))
        .collect()
}

impl Serialize for ListAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ListAssignmentJson {
            lists: lists_to_map(&self.lists),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ListAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ListAssignmentJson::deserialize(d)?;
        let lists = lists_from_map(raw.lists).map_err(serde::de::Error::custom)?;
        ListAssignment::new(lists).map_err(serde::de::Error::custom)
    }
}

/// A proper coloring choosing every vertex's color from its list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringWitness {
    pub colors: Vec<Color>,
}

impl ColoringWitness {
    /// Proper on `g` and every color taken from its vertex's list.
    pub fn certifies(&self, g: &Graph, lists: &ListAssignment) -> bool {
        self.colors.len() == g.n()
            && lists.len() == g.n()
            && self
                .colors
                .iter()
                .enumerate()
                .all(|(v, c)| lists.list(v).binary_search(c).is_ok())
            && is_proper(g, &self.colors).unwrap_or(false)
    }
}

impl Serialize for ColoringWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<VertexKey, Color> = self
            .colors
            .iter()
            .enumerate()
            .map(|(v, &c)| (VertexKey(v), c))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoringWitness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<VertexKey, Color>::deserialize(d)?;
        let colors = dense_from_map(map, "color").map_err(serde::de::Error::custom)?;
        Ok(ColoringWitness { colors })
    }
}

/// Outcome of an L-coloring search. `coloring` is `None` only after the
/// search space was exhausted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorSearch {
    pub colorable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringWitness>,
    pub nodes_searched: u64,
}

impl ColorSearch {
    fn found(coloring: Option<ColoringWitness>, nodes_searched: u64) -> Self {
        ColorSearch {
            colorable: coloring.is_some(),
            coloring,
            nodes_searched,
        }
    }
}

/// Complete backtracking L-coloring: most constrained vertex first, with
/// colors of colored neighbors removed from the remaining lists.
pub fn l_color(g: &Graph, lists: &ListAssignment) -> Result<ColorSearch> {
    lists.check_covers(g)?;
    let palette = lists.palette();
    let mut nodes = 0;
    let colors = if palette.len() <= 64 {
        let masks: Vec<u64> = lists
            .lists()
            .iter()
            .map(|l| {
                l.iter()
                    .fold(0, |m, c| m | 1 << palette.binary_search(c).unwrap())
            })
            .collect();
        color_masks(g.adjacency(), &masks, &mut nodes)
            .map(|idx| idx.iter().map(|&i| palette[i as usize]).collect())
    } else {
        color_general(g, lists, &mut nodes)
    };
    Ok(ColorSearch::found(
        colors.map(|colors| ColoringWitness { colors }),
        nodes,
    ))
}

/// Bitmask solver: `lists[v]` is a mask of dense color indices. Returns the
/// chosen color index per vertex.
pub(crate) fn color_masks(adj: &[u64], lists: &[u64], nodes: &mut u64) -> Option<Vec<u8>> {
    fn go(adj: &[u64], avail: &mut [u64], open: u64, chosen: &mut [u8], nodes: &mut u64) -> bool {
        *nodes += 1;
        if open == 0 {
            return true;
        }
        let mut best = usize::MAX;
        let mut best_count = u32::MAX;
        for v in bits(open) {
            let c = avail[v].count_ones();
            if c < best_count {
                best_count = c;
                best = v;
                if c <= 1 {
                    break;
                }
            }
        }
        if best_count == 0 {
            return false;
        }
        let v = best;
        let nbrs = adj[v] & open & !(1 << v);
        for c in bits(avail[v]) {
            let bit = 1u64 << c;
            let hit: u64 = bits(nbrs)
                .filter(|&u| avail[u] & bit != 0)
                .fold(0, |m, u| m | 1 << u);
            if bits(hit).any(|u| avail[u] == bit) {
                continue;
            }
            for u in bits(hit) {
                avail[u] &= !bit;
            }
            chosen[v] = c as u8;
            if go(adj, avail, open & !(1 << v), chosen, nodes) {
                return true;
            }
            for u in bits(hit) {
                avail[u] |= bit;
            }
        }
        false
    }
    let n = lists.len();
    let mut avail = lists.to_vec();
    let mut chosen = vec![0u8; n];
    let open = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    go(adj, &mut avail, open, &mut chosen, nodes).then_some(chosen)
}

/// Same search for palettes wider than 64 colors, using per-vertex counts of
/// how many colored neighbors block each color.
fn color_general(g: &Graph, lists: &ListAssignment, nodes: &mut u64) -> Option<Vec<Color>> {
    let palette = lists.palette();
    let dense: Vec<Vec<usize>> = lists
        .lists()
        .iter()
        .map(|l| {
            l.iter()
                .map(|c| palette.binary_search(c).unwrap())
                .collect()
        })
        .collect();
    let n = g.n();
    let mut blocked = vec![vec![0u32; palette.len()]; n];
    let mut chosen: Vec<Option<usize>> = vec![None; n];

    fn go(
        g: &Graph,
        dense: &[Vec<usize>],
        blocked: &mut [Vec<u32>],
        chosen: &mut [Option<usize>],
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        let pick = (0..g.n())
            .filter(|&v| chosen[v].is_none())
            .map(|v| (dense[v].iter().filter(|&&c| blocked[v][c] == 0).count(), v))
            .min();
        let Some((free, v)) = pick else {
            return true;
        };
        if free == 0 {
            return false;
        }
        for &c in &dense[v] {
            if blocked[v][c] != 0 {
                continue;
            }
            chosen[v] = Some(c);
            for u in bits(g.neighbors(v)) {
                blocked[u][c] += 1;
            }
            if go(g, dense, blocked, chosen, nodes) {
                return true;
            }
            for u in bits(g.neighbors(v)) {
                blocked[u][c] -= 1;
            }
            chosen[v] = None;
        }
        false
    }
    go(g, &dense, &mut blocked, &mut chosen, nodes)
        .then(|| chosen.iter().map(|c| palette[c.unwrap()]).collect())
}

/// L-coloring of a complete multipartite graph by color ownership.
///
/// In a complete multipartite graph every color class of a proper coloring
/// lies inside one part. The search assigns colors to owning parts: a
/// vertex is satisfied once some color of its list is owned by its part,
/// and dead once every color of its list is owned elsewhere or ruled out
/// for its part.
pub fn l_color_multipartite(sizes: &PartSizes, lists: &ListAssignment) -> Result<ColorSearch> {
    let total = sizes.total();
    if lists.len() != total {
        return Err(Error::InvalidAssignment(format!(
            "{} lists for a graph on {total} vertices",
            lists.len()
        )));
    }
    bound("parts", sizes.k(), 64)?;
    let palette = lists.palette();
    let offsets = sizes.offsets();
    let mut part_of = Vec::with_capacity(total);
    for p in 0..sizes.k() {
        part_of.extend(std::iter::repeat_n(p, offsets[p + 1] - offsets[p]));
    }
    // Vertices of one part with equal lists behave identically.
    let mut reps: Vec<(usize, Vec<usize>)> = Vec::new();
    for v in 0..total {
        let dense: Vec<usize> = lists
            .list(v)
            .iter()
            .map(|c| palette.binary_search(c).unwrap())
            .collect();
        if !reps.iter().any(|(p, l)| *p == part_of[v] && *l == dense) {
            reps.push((part_of[v], dense));
        }
    }

    struct Own<'a> {
        reps: &'a [(usize, Vec<usize>)],
        owner: Vec<Option<usize>>,
        excluded: Vec<u64>,
        nodes: u64,
    }
    impl Own<'_> {
        fn go(&mut self) -> bool {
            self.nodes += 1;
            let mut pick: Option<(usize, usize)> = None;
            for (i, (p, list)) in self.reps.iter().enumerate() {
                if list.iter().any(|&c| self.owner[c] == Some(*p)) {
                    continue;
                }
                let live = list
                    .iter()
                    .filter(|&&c| self.owner[c].is_none() && self.excluded[c] >> p & 1 == 0)
                    .count();
                if live == 0 {
                    return false;
                }
                if pick.is_none_or(|(best, _)| live < best) {
                    pick = Some((live, i));
                }
            }
            let Some((_, i)) = pick else {
                return true;
            };
            let (p, list) = &self.reps[i];
            let c = *list
                .iter()
                .find(|&&c| self.owner[c].is_none() && self.excluded[c] >> p & 1 == 0)
                .unwrap();
            self.owner[c] = Some(*p);
            if self.go() {
                return true;
            }
            self.owner[c] = None;
            self.excluded[c] |= 1 << p;
            if self.go() {
                return true;
            }
            self.excluded[c] &= !(1 << p);
            false
        }
    }
    let mut own = Own {
        reps: &reps,
        owner: vec![None; palette.len()],
        excluded: vec![0; palette.len()],
        nodes: 0,
    };
    let ok = own.go();
    let coloring = ok.then(|| {
        let colors = (0..total)
            .map(|v| {
                let p = part_of[v];
                let c = lists
                    .list(v)
                    .iter()
                    .map(|c| palette.binary_search(c).unwrap())
                    .find(|&c| own.owner[c] == Some(p))
                    .expect("satisfied vertex");
                palette[c]
            })
            .collect();
        ColoringWitness { colors }
    });
    Ok(ColorSearch::found(coloring, own.nodes))
}

/// Options for the exhaustive searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub bounds: Bounds,
    /// Worker threads; results do not depend on this.
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            bounds: Bounds::default(),
            workers: 1,
        }
    }
}

/// Converts enumerated color classes into concrete lists. Group `i` (in
/// enumeration order) uses colors from its own window of `n * k_i` labels,
/// starting at 1.
pub(crate) fn classes_to_lambda(
    n: usize,
    demands: &[usize],
    classes: &Classes,
) -> LambdaAssignment {
    let mut lists = vec![Vec::new(); n];
    let mut groups = Vec::new();
    let mut offset: Color = 0;
    for (k, group) in demands.iter().zip(classes) {
        let mut colors = Vec::new();
        for (j, &class) in group.iter().enumerate() {
            let c = offset + j as Color + 1;
            colors.push(c);
            for v in bits(class) {
                lists[v].push(c);
            }
        }
        groups.push(colors);
        offset += (n * k) as Color;
    }
    let lambda = IntegerPartition::new(demands.to_vec()).expect("positive demands");
    LambdaAssignment::new_unchecked(
        ListAssignment::new(lists).expect("every vertex is covered"),
        ColorGrouping { groups },
        lambda,
    )
}

/// All k-assignments of `g` up to color renaming and part-preserving vertex
/// permutations (all automorphisms for graphs without part labels).
pub fn enumerate_k_assignments(g: &Graph, k: usize) -> Result<Vec<ListAssignment>> {
    enumerate_k_assignments_with(g, k, &Bounds::default())
}

pub fn enumerate_k_assignments_with(
    g: &Graph,
    k: usize,
    bounds: &Bounds,
) -> Result<Vec<ListAssignment>> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    bound("n*k", g.n() * k, bounds.k_assignment_cells)?;
    let space = AssignmentSpace::new(
        g,
        &[k],
        ClassFilter::All,
        Symmetry::for_graph(g, bounds.max_symmetries),
    )?;
    let mut out = Vec::new();
    let _ = space.for_each(|classes| {
        out.push(classes_to_lambda(g.n(), &[k], classes).base().clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Result of an exhaustive choosability run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Choosability {
    Choosable { classes_examined: u64 },
    NotChoosable(BadAssignmentWitness),
}

impl Choosability {
    pub fn is_choosable(&self) -> bool {
        matches!(self, Choosability::Choosable { .. })
    }

    pub fn witness(&self) -> Option<&BadAssignmentWitness> {
        match self {
            Choosability::NotChoosable(w) => Some(w),
            Choosability::Choosable { .. } => None,
        }
    }
}

/// Exhaustive search for an uncolorable assignment with the given group
/// demands, component by component.
///
/// Isolated vertices never matter, and a graph without them has a bad
/// assignment iff it has one whose color classes all contain an edge (see
/// [`ClassFilter::EdgeSpanning`]); only those are enumerated.
pub(crate) fn exhaustive_choosability(
    g: &Graph,
    lambda: &IntegerPartition,
    opts: &SearchOptions,
) -> Result<Choosability> {
    let mut demands = lambda.parts().to_vec();
    demands.sort_unstable_by(|a, b| b.cmp(a));
    let mut examined = 0;
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced(&comp);
        let sym = Symmetry::for_graph(&sub, opts.bounds.max_symmetries);
        let space = AssignmentSpace::new(&sub, &demands, ClassFilter::EdgeSpanning, sym)?;
        match search_space(&space, opts.workers) {
            SpaceOutcome::AllColorable(count) => examined += count,
            SpaceOutcome::Bad { classes, nodes } => {
                let local = classes_to_lambda(sub.n(), &demands, &classes);
                let assignment = lift_to_graph(g, &comp, &local);
                return Ok(Choosability::NotChoosable(BadAssignmentWitness {
                    assignment,
                    nodes_searched: nodes,
                }));
            }
        }
    }
    Ok(Choosability::Choosable {
        classes_examined: examined,
    })
}

/// Extends an assignment of `G[comp]` to all of `G`: every outside vertex
/// gets the same lists from fresh colors of each group.
fn lift_to_graph(g: &Graph, comp: &[usize], local: &LambdaAssignment) -> LambdaAssignment {
    if comp.len() == g.n() && comp.iter().enumerate().all(|(i, &v)| i == v) {
        return local.clone();
    }
    let mut next_fresh = local.base().palette().last().copied().unwrap_or(0) + 1;
    let mut groups = local.grouping().groups.clone();
    let mut outside_list = Vec::new();
    for (group, &k) in groups.iter_mut().zip(local.group_demands().iter()) {
        for _ in 0..k {
            group.push(next_fresh);
            outside_list.push(next_fresh);
            next_fresh += 1;
        }
    }
    let mut lists = vec![outside_list; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        lists[v] = local.base().list(i).to_vec();
    }
    LambdaAssignment::new_unchecked(
        ListAssignment::new(lists).expect("non-empty lists"),
        ColorGrouping { groups },
        local.lambda().clone(),
    )
}

pub(crate) enum SpaceOutcome {
    AllColorable(u64),
    Bad { classes: Vec<Vec<u64>>, nodes: u64 },
}

/// Runs the solver on every emitted assignment and reports the first
/// uncolorable one in enumeration order. With several workers the roots
/// are searched in parallel; counts and the reported witness are the same
/// as for a single worker.
pub(crate) fn search_space(space: &AssignmentSpace, workers: usize) -> SpaceOutcome {
    if workers <= 1 {
        let run = run_subtree(space, None);
        return match run.bad {
            Some((classes, nodes)) => SpaceOutcome::Bad { classes, nodes },
            None => SpaceOutcome::AllColorable(run.count),
        };
    }

    let roots: Vec<Root> = space.roots();
    let best = AtomicUsize::new(usize::MAX);
    let run = || {
        roots
            .par_iter()
            .enumerate()
            .map(|(i, root)| {
                if i > best.load(Ordering::Relaxed) {
                    return SubtreeRun::default();
                }
                let run = run_subtree(space, Some(root));
                if run.bad.is_some() {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                run
            })
            .collect::<Vec<_>>()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let mut total = 0;
    for run in results {
        total += run.count;
        if let Some((classes, nodes)) = run.bad {
            return SpaceOutcome::Bad { classes, nodes };
        }
    }
    SpaceOutcome::AllColorable(total)
}

#[derive(Default)]
struct SubtreeRun {
    /// Solver calls that found a coloring, at leaves or at pruned groups.
    count: u64,
    bad: Option<(Vec<Vec<u64>>, u64)>,
}

/// Searches the whole space, or the part below one root. Once the groups
/// chosen so far already color the graph, every completion does too, so
/// that subtree is skipped.
fn run_subtree(space: &AssignmentSpace, root: Option<&Root>) -> SubtreeRun {
    let n = space.graph().n();
    let adj = space.graph().adjacency();
    let solve = |classes: &Classes| -> Option<u64> {
        let mut nodes = 0;
        match color_masks(adj, &vertex_masks(n, classes), &mut nodes) {
            Some(_) => None,
            None => Some(nodes),
        }
    };
    let pruned = Cell::new(0u64);
    let prune = |levels: &Classes| {
        let colorable = solve(levels).is_none();
        if colorable {
            pruned.set(pruned.get() + 1);
        }
        colorable
    };
    let mut count = 0;
    let mut bad = None;
    let leaf = |classes: &Classes| match solve(classes) {
        Some(nodes) => {
            bad = Some((classes.to_vec(), nodes));
            ControlFlow::Break(())
        }
        None => {
            count += 1;
            ControlFlow::Continue(())
        }
    };
    let _ = match root {
        None => space.for_each_pruned(&prune, leaf),
        Some(root) => space.for_each_under_pruned(root, &prune, leaf),
    };
    SubtreeRun {
        count: count + pruned.get(),
        bad,
    }
}

/// Is `g` colorable from every k-assignment? Decided exhaustively.
pub fn k_choosable(g: &Graph, k: usize) -> Result<Choosability> {
    k_choosable_with(g, k, &SearchOptions::default())
}

pub fn k_choosable_with(g: &Graph, k: usize, opts: &SearchOptions) -> Result<Choosability> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    bound("n*k", g.n() * k, opts.bounds.k_assignment_cells)?;
    exhaustive_choosability(g, &IntegerPartition::single(k), opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChoiceNumber {
    Exact(usize),
    /// Not k-choosable for any k up to the limit: the choice number is at least this.
    AtLeast(usize),
}

pub fn choice_number(g: &Graph, max_k: usize) -> Result<ChoiceNumber> {
    choice_number_with(g, max_k, &SearchOptions::default())
}

pub fn choice_number_with(g: &Graph, max_k: usize, opts: &SearchOptions) -> Result<ChoiceNumber> {
    if g.n() == 0 {
        return Ok(ChoiceNumber::Exact(0));
    }
    for k in 1..=max_k {
        if k_choosable_with(g, k, opts)?.is_choosable() {
            return Ok(ChoiceNumber::Exact(k));
        }
    }
    Ok(ChoiceNumber::AtLeast(max_k + 1))
}

/// Shape of one component of the core left after repeatedly deleting
/// vertices of degree at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum CoreShape {
    /// Cycle with this many vertices.
    Cycle {
        length: usize,
    },
    /// Two branch vertices joined by three internally disjoint paths.
    Theta {
        paths: [usize; 3],
    },
    Other {
        vertices: usize,
        edges: usize,
    },
}

impl CoreShape {
    /// Even cycle or theta with path lengths 2, 2, 2m.
    pub fn is_two_choosable(&self) -> bool {
        match *self {
            CoreShape::Cycle { length } => length % 2 == 0,
            CoreShape::Theta { paths } => paths[0] == 2 && paths[1] == 2 && paths[2] % 2 == 0,
            CoreShape::Other { .. } => false,
        }
    }
}

/// Component shapes of the core of `g`. An empty result means the core is
/// empty (every component is a tree).
pub fn core_shapes(g: &Graph) -> Vec<CoreShape> {
    let mut alive = g.vertex_mask();
    loop {
        let leaves: u64 = bits(alive)
            .filter(|&v| (g.neighbors(v) & alive).count_ones() <= 1)
            .fold(0, |m, v| m | 1 << v);
        if leaves == 0 {
            break;
        }
        alive &= !leaves;
    }
    let core_vertices: Vec<usize> = bits(alive).collect();
    let core = g.induced(&core_vertices);
    core.components()
        .into_iter()
        .map(|comp| {
            let sub = core.induced(&comp);
            classify_core(&sub)
        })
        .collect()
}

fn classify_core(g: &Graph) -> CoreShape {
    let n = g.n();
    let other = CoreShape::Other {
        vertices: n,
        edges: g.edge_count(),
    };
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) != 2).collect();
    if branch.is_empty() {
        return CoreShape::Cycle { length: n };
    }
    if branch.len() != 2 || branch.iter().any(|&v| g.degree(v) != 3) {
        return other;
    }
    let (x, y) = (branch[0], branch[1]);
    let mut paths = Vec::new();
    for start in bits(g.neighbors(x)) {
        let (mut prev, mut cur, mut len) = (x, start, 1);
        while cur != y {
            if cur == x || g.degree(cur) != 2 {
                return other;
            }
            let next = bits(g.neighbors(cur)).find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
            len += 1;
        }
        paths.push(len);
    }
    paths.sort_unstable();
    CoreShape::Theta {
        paths: [paths[0], paths[1], paths[2]],
    }
}

/// 2-choosability by the Erdős–Rubin–Taylor characterization: every
/// component's core is empty, an even cycle, or a theta graph with paths
/// of lengths 2, 2 and 2m.
pub fn two_choosable_fast(g: &Graph) -> bool {
    core_shapes(g).iter().all(CoreShape::is_two_choosable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_multipartite;

    fn parts(s: &str) -> PartSizes {
        s.parse().unwrap()
    }

    fn hj_lists() -> ListAssignment {
        ListAssignment::new(vec![
            vec![1, 2],
            vec![3, 4],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
        ])
        .unwrap()
    }

    #[test]
    fn hoffman_johnson_assignment_is_uncolorable() {
        let g = complete_multipartite(&parts("2,4")).unwrap();
        let r = l_color(&g, &hj_lists()).unwrap();
        assert!(!r.colorable && r.coloring.is_none());
        assert!(r.nodes_searched > 0);
        assert!(
            !l_color_multipartite(&parts("2,4"), &hj_lists())
                .unwrap()
                .colorable
        );
    }

    #[test]
    fn trivial_colorings() {
        let g = Graph::empty(1).unwrap();
        let l = ListAssignment::new(vec![vec![1]]).unwrap();
        assert_eq!(l_color(&g, &l).unwrap().coloring.unwrap().colors, vec![1]);

        let g = complete_multipartite(&parts("2,4")).unwrap();
        let l = ListAssignment::uniform(6, &[1, 2, 3]).unwrap();
        let w = l_color(&g, &l).unwrap().coloring.unwrap();
        assert!(w.certifies(&g, &l));

        let l = ListAssignment::uniform(4, &[1, 2]).unwrap();
        let w = l_color_multipartite(&parts("2,2"), &l)
            .unwrap()
            .coloring
            .unwrap();
        assert_eq!(w.colors, vec![1, 1, 2, 2]);
    }

    #[test]
    fn missing_list_is_an_error() {
        let g = Graph::complete(3).unwrap();
        let l = ListAssignment::uniform(2, &[1, 2, 3]).unwrap();
        assert!(matches!(l_color(&g, &l), Err(Error::InvalidAssignment(_))));
        assert!(l_color_multipartite(&parts("1,1,1"), &l).is_err());
        assert!(ListAssignment::new(vec![vec![]]).is_err());
    }

    #[test]
    fn wide_palette_uses_general_solver() {
        // K3 with 70 colors per list, forced conflicts on the first 68
        let g = Graph::complete(3).unwrap();
        let base: Vec<Color> = (0..70).collect();
        let l = ListAssignment::new(vec![base.clone(), base.clone(), base]).unwrap();
        let w = l_color(&g, &l).unwrap().coloring.unwrap();
        assert!(w.certifies(&g, &l));
        let l = ListAssignment::new(vec![vec![1, 100], vec![1, 100], vec![1, 100]]).unwrap();
        let mut wide: Vec<Vec<Color>> = l.lists().to_vec();
        for (i, list) in wide.iter_mut().enumerate() {
            list.extend((0..30).map(|c| 1000 + 30 * i as Color + c));
        }
        let wide = ListAssignment::new(wide).unwrap();
        assert!(wide.palette().len() > 64);
        assert!(l_color(&g, &wide).unwrap().colorable);
        assert!(!l_color(&g, &l).unwrap().colorable);
    }

    #[test]
    fn json_shapes() {
        let l = ListAssignment::new(vec![vec![2, 1], vec![3, 4]]).unwrap();
        assert_eq!(
            serde_json::to_string(&l).unwrap(),
            r#"{"lists":{"0":[1,2],"1":[3,4]}}"#
        );
        let back: ListAssignment =
            serde_json::from_str(r#"{"lists":{"1":[3,4],"0":[1,2]}}"#).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<ListAssignment>(r#"{"lists":{"0":[1],"2":[3]}}"#).is_err());
        let v = ColorSearch::found(Some(ColoringWitness { colors: vec![1, 3] }), 3);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"colorable":true,"coloring":{"0":1,"1":3},"nodes_searched":3}"#
        );
    }

    #[test]
    fn k_assignment_classes() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(enumerate_k_assignments(&k2, 1).unwrap().len(), 2);
        assert_eq!(
            enumerate_k_assignments(&Graph::empty(1).unwrap(), 2)
                .unwrap()
                .len(),
            1
        );
        let k24 = complete_multipartite(&parts("2,4")).unwrap();
        assert!(enumerate_k_assignments(&k24, 5).is_err());
    }

    #[test]
    fn choosability_examples() {
        let k24 = complete_multipartite(&parts("2,4")).unwrap();
        let bad = k_choosable(&k24, 2).unwrap();
        let w = bad.witness().expect("K_{2,4} is not 2-choosable");
        assert!(!l_color(&k24, w.assignment.base()).unwrap().colorable);

        let k23 = complete_multipartite(&parts("2,3")).unwrap();
        assert!(k_choosable(&k23, 2).unwrap().is_choosable());

        let k2 = Graph::complete(2).unwrap();
        let w = k_choosable(&k2, 1).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.assignment.base().lists(), &[vec![1], vec![1]]);
    }

    #[test]
    fn choice_numbers() {
        let k24 = complete_multipartite(&parts("2,4")).unwrap();
        assert_eq!(choice_number(&k24, 3).unwrap(), ChoiceNumber::Exact(3));
        assert_eq!(choice_number(&k24, 2).unwrap(), ChoiceNumber::AtLeast(3));
        assert_eq!(
            choice_number(&Graph::complete(2).unwrap(), 3).unwrap(),
            ChoiceNumber::Exact(2)
        );
        assert_eq!(
            choice_number(&Graph::empty(3).unwrap(), 3).unwrap(),
            ChoiceNumber::Exact(1)
        );
    }

    #[test]
    fn witness_is_lifted_from_component() {
        // K_{2,4} plus an isolated edge and vertex
        let mut edges = complete_multipartite(&parts("2,4")).unwrap().edges();
        edges.push((6, 7));
        let g = Graph::new(9, &edges).unwrap();
        let r = k_choosable(&g, 2).unwrap();
        let w = r.witness().unwrap();
        assert_eq!(w.assignment.base().len(), 9);
        assert!(!l_color(&g, w.assignment.base()).unwrap().colorable);
        assert!(w.assignment.validate().valid);
    }

    #[test]
    fn two_choosable_shapes() {
        let k23 = complete_multipartite(&parts("2,3")).unwrap();
        assert_eq!(
            core_shapes(&k23),
            vec![CoreShape::Theta { paths: [2, 2, 2] }]
        );
        assert!(two_choosable_fast(&k23));
        assert!(two_choosable_fast(&Graph::cycle(4).unwrap()));
        assert!(!two_choosable_fast(&Graph::cycle(5).unwrap()));
        assert!(!two_choosable_fast(
            &complete_multipartite(&parts("2,4")).unwrap()
        ));
        assert!(two_choosable_fast(
            &complete_multipartite(&parts("1,5")).unwrap()
        ));
        assert!(core_shapes(&complete_multipartite(&parts("1,5")).unwrap()).is_empty());
        assert!(!two_choosable_fast(&Graph::complete(3).unwrap()));
    }

    #[test]
    fn parallel_search_matches_sequential() {
        let g = complete_multipartite(&parts("2,2,2")).unwrap();
        let seq =
            exhaustive_choosability(&g, &IntegerPartition::single(2), &SearchOptions::default())
                .unwrap();
        let par = exhaustive_choosability(
            &g,
            &IntegerPartition::single(2),
            &SearchOptions {
                workers: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }
}
