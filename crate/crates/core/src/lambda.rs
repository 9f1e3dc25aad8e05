//! Lambda-assignments, lambda-choosability and partitionability.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::enumerate::{AssignmentSpace, ClassFilter, Symmetry};
use crate::error::{bound, Error, Result};
use crate::graph::{bits, Graph};
use crate::list_color::{
    classes_to_lambda, core_shapes, exhaustive_choosability, k_choosable_with, l_color,
    lists_from_map, lists_to_map, two_choosable_fast, Choosability, ColoringWitness, CoreShape,
    ListAssignment, SearchOptions, VertexKey,
};
use crate::partition::{GroupingWitness, IntegerPartition};
use crate::Color;

/// Disjoint color groups `C_1..C_t`. Each group is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorGrouping {
    pub groups: Vec<Vec<Color>>,
}

/// A list assignment together with its color groups and target partition.
///
/// Groups need not be listed in the order of the partition's parts. They are
/// matched to parts by rank: groups sorted by their most common per-vertex
/// intersection size (ties by index) take the parts in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaAssignment {
    base: ListAssignment,
    grouping: ColorGrouping,
    lambda: IntegerPartition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    GroupCount {
        expected: usize,
        found: usize,
    },
    EmptyGroup {
        group: usize,
    },
    Overlap {
        color: Color,
        groups: [usize; 2],
    },
    Uncovered {
        vertex: usize,
        color: Color,
    },
    ListSize {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    Intersection {
        vertex: usize,
        group: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl LambdaAssignment {
    /// Fails with the first violation if the assignment is not a valid
    /// lambda-assignment.
    pub fn new(
        base: ListAssignment,
        grouping: ColorGrouping,
        lambda: IntegerPartition,
    ) -> Result<Self> {
        let a = Self::new_unchecked(base, grouping, lambda);
        match a.validate().violations.first() {
            None => Ok(a),
            Some(v) => Err(Error::InvalidAssignment(format!("{v:?}"))),
        }
    }

    /// No validation; see [`LambdaAssignment::validate`].
    pub fn new_unchecked(
        base: ListAssignment,
        mut grouping: ColorGrouping,
        lambda: IntegerPartition,
    ) -> Self {
        for g in &mut grouping.groups {
            g.sort_unstable();
            g.dedup();
        }
        LambdaAssignment {
            base,
            grouping,
            lambda,
        }
    }

    pub fn base(&self) -> &ListAssignment {
        &self.base
    }

    pub fn grouping(&self) -> &ColorGrouping {
        &self.grouping
    }

    pub fn lambda(&self) -> &IntegerPartition {
        &self.lambda
    }

    /// Number of colors of `group` in the list of `v`.
    pub fn meet(&self, v: usize, group: usize) -> usize {
        let g = &self.grouping.groups[group];
        self.base
            .list(v)
            .iter()
            .filter(|c| g.binary_search(c).is_ok())
            .count()
    }

    fn majority(&self, group: usize) -> usize {
        let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..self.base.len() {
            *freq.entry(self.meet(v, group)).or_default() += 1;
        }
        // Highest frequency, smaller size on ties.
        freq.iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map_or(0, |(&s, _)| s)
    }

    /// `order[j]` is the group matched to part `j` of `lambda`, or `None`
    /// when the group count differs from the part count.
    pub fn group_order(&self) -> Option<Vec<usize>> {
        let t = self.grouping.groups.len();
        if t != self.lambda.part_count() {
            return None;
        }
        let mut order: Vec<usize> = (0..t).collect();
        let maj: Vec<usize> = (0..t).map(|i| self.majority(i)).collect();
        order.sort_by_key(|&i| (maj[i], i));
        Some(order)
    }

    /// The demand `k_i` matched to every group, in group order.
    pub fn group_demands(&self) -> Vec<usize> {
        match self.group_order() {
            Some(order) => {
                let mut d = vec![0; order.len()];
                for (j, &g) in order.iter().enumerate() {
                    d[g] = self.lambda.parts()[j];
                }
                d
            }
            None => (0..self.grouping.groups.len())
                .map(|i| self.majority(i))
                .collect(),
        }
    }

    /// Lists restricted to one group.
    pub fn restrict_to_group(&self, group: usize) -> Vec<Vec<Color>> {
        let g = &self.grouping.groups[group];
        self.base
            .lists()
            .iter()
            .map(|l| {
                l.iter()
                    .copied()
                    .filter(|c| g.binary_search(c).is_ok())
                    .collect()
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let groups = &self.grouping.groups;
        if groups.len() != self.lambda.part_count() {
            violations.push(Violation::GroupCount {
                expected: self.lambda.part_count(),
                found: groups.len(),
            });
        }
        let mut owner: BTreeMap<Color, usize> = BTreeMap::new();
        for (i, g) in groups.iter().enumerate() {
            if g.is_empty() {
                violations.push(Violation::EmptyGroup { group: i });
            }
            for &c in g {
                if let Some(&j) = owner.get(&c) {
                    violations.push(Violation::Overlap {
                        color: c,
                        groups: [j, i],
                    });
                } else {
                    owner.insert(c, i);
                }
            }
        }
        let weight = self.lambda.weight();
        let demands = self.group_demands();
        for (v, list) in self.base.lists().iter().enumerate() {
            for &c in list {
                if !owner.contains_key(&c) {
                    violations.push(Violation::Uncovered {
                        vertex: v,
                        color: c,
                    });
                }
            }
            if list.len() != weight {
                violations.push(Violation::ListSize {
                    vertex: v,
                    expected: weight,
                    found: list.len(),
                });
            }
            for (i, &expected) in demands.iter().enumerate() {
                let found = self.meet(v, i);
                if found != expected {
                    violations.push(Violation::Intersection {
                        vertex: v,
                        group: i,
                        expected,
                        found,
                    });
                }
            }
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LambdaAssignmentJson {
    lambda: IntegerPartition,
    lists: BTreeMap<VertexKey, Vec<Color>>,
    groups: Vec<Vec<Color>>,
}

impl Serialize for LambdaAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LambdaAssignmentJson {
            lambda: self.lambda.clone(),
            lists: lists_to_map(self.base.lists()),
            groups: self.grouping.groups.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LambdaAssignmentJson::deserialize(d)?;
        let lists = lists_from_map(raw.lists).map_err(serde::de::Error::custom)?;
        let base = ListAssignment::new(lists).map_err(serde::de::Error::custom)?;
        Ok(LambdaAssignment::new_unchecked(
            base,
            ColorGrouping { groups: raw.groups },
            raw.lambda,
        ))
    }
}

pub fn validate_lambda(a: &LambdaAssignment) -> ValidationReport {
    a.validate()
}

/// Merges groups along a refinement witness. Part `j` of `a.lambda()` goes
/// to slot `witness.assignment[j]` of `coarse`. Merged groups are listed in
/// the order of their first original group.
pub fn coarsen_grouping(
    a: &LambdaAssignment,
    coarse: &IntegerPartition,
    witness: &GroupingWitness,
) -> Result<LambdaAssignment> {
    if !witness.proves_refinement(a.lambda(), coarse) {
        return Err(Error::InvalidWitness(format!(
            "{:?} does not group {} into {}",
            witness.assignment,
            a.lambda(),
            coarse
        )));
    }
    let order = a
        .group_order()
        .ok_or_else(|| Error::InvalidAssignment("group count differs from part count".into()))?;
    let mut slots: Vec<(usize, Vec<Color>)> = vec![(usize::MAX, Vec::new()); coarse.part_count()];
    for (j, &slot) in witness.assignment.iter().enumerate() {
        let g = order[j];
        slots[slot].0 = slots[slot].0.min(g);
        slots[slot].1.extend_from_slice(&a.grouping().groups[g]);
    }
    slots.sort_by_key(|s| s.0);
    let groups = slots.into_iter().map(|s| s.1).collect();
    Ok(LambdaAssignment::new_unchecked(
        a.base().clone(),
        ColorGrouping { groups },
        coarse.clone(),
    ))
}

/// Calls `f` on one representative of every lambda-assignment class of `g`:
/// classes under color bijections that keep groups, swaps of groups with
/// equal demand, and the symmetries of `g`. Groups come in order of
/// decreasing demand; group `i` draws from its own window of `n * k_i`
/// colors.
pub fn for_each_lambda_assignment<F>(
    g: &Graph,
    lambda: &IntegerPartition,
    bounds: &Bounds,
    mut f: F,
) -> Result<()>
where
    F: FnMut(LambdaAssignment) -> ControlFlow<()>,
{
    bound(
        "n*weight",
        g.n() * lambda.weight(),
        bounds.lambda_assignment_cells,
    )?;
    let mut demands = lambda.parts().to_vec();
    demands.sort_unstable_by(|a, b| b.cmp(a));
    let space = AssignmentSpace::new(
        g,
        &demands,
        ClassFilter::All,
        Symmetry::for_graph(g, bounds.max_symmetries),
    )?;
    let _ = space.for_each(|classes| f(classes_to_lambda(g.n(), &demands, classes)));
    Ok(())
}

pub fn enumerate_lambda_assignments(
    g: &Graph,
    lambda: &IntegerPartition,
) -> Result<Vec<LambdaAssignment>> {
    let mut out = Vec::new();
    for_each_lambda_assignment(g, lambda, &Bounds::default(), |a| {
        out.push(a);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// An assignment on which no proper coloring exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadAssignmentWitness {
    pub assignment: LambdaAssignment,
    pub nodes_searched: u64,
}

impl BadAssignmentWitness {
    /// Valid lambda-assignment of `g` that the solver cannot color.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        if !self.assignment.validate().valid || self.assignment.base().len() != g.n() {
            return Ok(false);
        }
        Ok(!l_color(g, self.assignment.base())?.colorable)
    }
}

#[derive(Serialize, Deserialize)]
struct BadAssignmentJson {
    assignment: LambdaAssignment,
    colorable: bool,
    nodes_searched: u64,
}

impl Serialize for BadAssignmentWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BadAssignmentJson {
            assignment: self.assignment.clone(),
            colorable: false,
            nodes_searched: self.nodes_searched,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BadAssignmentWitness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BadAssignmentJson::deserialize(d)?;
        if raw.colorable {
            return Err(serde::de::Error::custom(
                "a bad assignment witness must say colorable: false",
            ));
        }
        Ok(BadAssignmentWitness {
            assignment: raw.assignment,
            nodes_searched: raw.nodes_searched,
        })
    }
}

/// Why a block's induced subgraph is `k_i`-choosable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BlockEvidence {
    Empty,
    /// No edges: 1-choosable.
    Independent,
    /// Core shapes accepted by the 2-choosability characterization.
    TwoChoosable {
        shapes: Vec<CoreShape>,
    },
    /// d-degenerate graphs are (d+1)-choosable.
    Degenerate {
        degeneracy: usize,
    },
    Exhaustive {
        classes_examined: u64,
    },
}

/// Blocks `V_1..V_t` aligned with the parts of `lambda` (ascending), each
/// `G[V_i]` being `k_i`-choosable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionabilityWitness {
    pub lambda: IntegerPartition,
    pub blocks: Vec<Vec<usize>>,
    pub evidence: Vec<BlockEvidence>,
}

impl PartitionabilityWitness {
    /// Blocks partition `V(g)` and every piece of evidence re-checks.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        let t = self.lambda.part_count();
        if self.blocks.len() != t || self.evidence.len() != t {
            return Ok(false);
        }
        let mut seen = 0u64;
        for block in &self.blocks {
            for &v in block {
                if v >= g.n() || seen >> v & 1 == 1 {
                    return Ok(false);
                }
                seen |= 1 << v;
            }
        }
        if seen != g.vertex_mask() {
            return Ok(false);
        }
        for ((block, ev), &k) in self
            .blocks
            .iter()
            .zip(&self.evidence)
            .zip(self.lambda.parts())
        {
            let sub = g.induced(block);
            let ok = match ev {
                BlockEvidence::Empty => block.is_empty(),
                BlockEvidence::Independent => sub.edge_count() == 0,
                BlockEvidence::TwoChoosable { shapes } => {
                    k >= 2 && two_choosable_fast(&sub) && core_shapes(&sub) == *shapes
                }
                BlockEvidence::Degenerate { degeneracy: d } => degeneracy(&sub) <= *d && *d < k,
                BlockEvidence::Exhaustive { .. } => {
                    k_choosable_with(&sub, k, &SearchOptions::default())?.is_choosable()
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Colors every block from the group matched to its part. Proper because
/// different groups share no color and each block is choosable at its level.
pub fn color_by_blocks(
    g: &Graph,
    a: &LambdaAssignment,
    w: &PartitionabilityWitness,
) -> Result<ColoringWitness> {
    if a.lambda() != &w.lambda {
        return Err(Error::Precondition(
            "assignment and witness target different partitions".into(),
        ));
    }
    let order = a
        .group_order()
        .ok_or_else(|| Error::InvalidAssignment("group count differs from part count".into()))?;
    let mut colors = vec![0; g.n()];
    for (j, block) in w.blocks.iter().enumerate() {
        if block.is_empty() {
            continue;
        }
        let restricted = a.restrict_to_group(order[j]);
        let lists = ListAssignment::new(block.iter().map(|&v| restricted[v].clone()).collect())?;
        let found = l_color(&g.induced(block), &lists)?
            .coloring
            .ok_or_else(|| {
                Error::InvalidWitness(format!("block {j} is not colorable from its group"))
            })?;
        for (i, &v) in block.iter().enumerate() {
            colors[v] = found.colors[i];
        }
    }
    Ok(ColoringWitness { colors })
}

pub fn degeneracy(g: &Graph) -> usize {
    let mut alive = g.vertex_mask();
    let mut d = 0;
    while alive != 0 {
        let (deg, v) = bits(alive)
            .map(|v| ((g.neighbors(v) & alive).count_ones() as usize, v))
            .min()
            .unwrap();
        d = d.max(deg);
        alive &= !(1 << v);
    }
    d
}

enum BlockCheck {
    Ok(BlockEvidence),
    Fails,
    Unknown,
}

fn check_block(g: &Graph, mask: u64, k: usize, bounds: &Bounds) -> Result<BlockCheck> {
    if mask == 0 {
        return Ok(BlockCheck::Ok(BlockEvidence::Empty));
    }
    let vertices: Vec<usize> = bits(mask).collect();
    let sub = g.induced(&vertices);
    if sub.edge_count() == 0 {
        return Ok(BlockCheck::Ok(BlockEvidence::Independent));
    }
    if k == 1 {
        return Ok(BlockCheck::Fails);
    }
    if two_choosable_fast(&sub) {
        return Ok(BlockCheck::Ok(BlockEvidence::TwoChoosable {
            shapes: core_shapes(&sub),
        }));
    }
    if k == 2 {
        return Ok(BlockCheck::Fails);
    }
    let d = degeneracy(&sub);
    if d < k {
        return Ok(BlockCheck::Ok(BlockEvidence::Degenerate { degeneracy: d }));
    }
    if sub.n() * k > bounds.k_assignment_cells {
        return Ok(BlockCheck::Unknown);
    }
    let opts = SearchOptions {
        bounds: *bounds,
        workers: 1,
    };
    Ok(match k_choosable_with(&sub, k, &opts)? {
        Choosability::Choosable { classes_examined } => {
            BlockCheck::Ok(BlockEvidence::Exhaustive { classes_examined })
        }
        Choosability::NotChoosable(_) => BlockCheck::Fails,
    })
}

const MAX_PARTITION_LEAVES: u64 = 1 << 22;

struct BlockSearch<'a> {
    g: &'a Graph,
    demands: &'a [usize],
    bounds: &'a Bounds,
    cache: HashMap<(u64, usize), Option<BlockEvidence>>,
    unknown: bool,
    leaves: u64,
}

impl BlockSearch<'_> {
    /// Evidence for every block, or `None` if some block fails.
    fn leaf(&mut self, masks: &[u64]) -> Result<Option<Vec<BlockEvidence>>> {
        self.leaves += 1;
        let mut out = Vec::with_capacity(masks.len());
        for (&m, &k) in masks.iter().zip(self.demands) {
            let key = (m, k);
            let ev = match self.cache.get(&key) {
                Some(ev) => ev.clone(),
                None => {
                    let ev = match check_block(self.g, m, k, self.bounds)? {
                        BlockCheck::Ok(ev) => Some(ev),
                        BlockCheck::Fails => None,
                        BlockCheck::Unknown => {
                            self.unknown = true;
                            None
                        }
                    };
                    self.cache.insert(key, ev.clone());
                    ev
                }
            };
            match ev {
                Some(ev) => out.push(ev),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Block `b` may be opened only after the previous block of equal demand.
    fn may_use(&self, masks: &[u64], b: usize) -> bool {
        masks[b] != 0 || b == 0 || self.demands[b - 1] != self.demands[b] || masks[b - 1] != 0
    }

    /// Assigns whole units (parts, or single vertices) to blocks.
    fn assign(
        &mut self,
        units: &[u64],
        i: usize,
        masks: &mut Vec<u64>,
    ) -> Result<Option<Vec<BlockEvidence>>> {
        if self.leaves >= MAX_PARTITION_LEAVES {
            self.unknown = true;
            return Ok(None);
        }
        if i == units.len() {
            return self.leaf(masks);
        }
        for b in 0..masks.len() {
            if !self.may_use(masks, b) {
                continue;
            }
            let next = masks[b] | units[i];
            let k = self.demands[b];
            if k == 1 && bits(next).any(|v| self.g.neighbors(v) & next != 0) {
                continue;
            }
            if k == 2 {
                let sub = self.g.induced(&bits(next).collect::<Vec<_>>());
                if !two_choosable_fast(&sub) {
                    continue;
                }
            }
            let saved = masks[b];
            masks[b] = next;
            if let Some(ev) = self.assign(units, i + 1, masks)? {
                return Ok(Some(ev));
            }
            masks[b] = saved;
        }
        Ok(None)
    }
}

pub fn lambda_partitionable(
    g: &Graph,
    lambda: &IntegerPartition,
) -> Result<Option<PartitionabilityWitness>> {
    lambda_partitionable_with(g, lambda, &Bounds::default())
}

/// Searches for blocks aligned with `lambda`, each inducing a subgraph
/// choosable at its level. Blocks may be empty. Unions of parts are tried
/// first when `g` has part labels; arbitrary vertex sets after that.
/// `Ok(None)` means the search space was exhausted.
pub fn lambda_partitionable_with(
    g: &Graph,
    lambda: &IntegerPartition,
    bounds: &Bounds,
) -> Result<Option<PartitionabilityWitness>> {
    let demands = lambda.parts();
    let mut search = BlockSearch {
        g,
        demands,
        bounds,
        cache: HashMap::new(),
        unknown: false,
        leaves: 0,
    };
    let found = |masks: &[u64], evidence: Vec<BlockEvidence>| PartitionabilityWitness {
        lambda: lambda.clone(),
        blocks: masks.iter().map(|&m| bits(m).collect()).collect(),
        evidence,
    };
    if let Some(parts) = g.parts() {
        let units: Vec<u64> = parts
            .iter()
            .map(|p| p.iter().fold(0, |m, &v| m | 1 << v))
            .collect();
        let mut masks = vec![0u64; demands.len()];
        if let Some(ev) = search.assign(&units, 0, &mut masks)? {
            return Ok(Some(found(&masks, ev)));
        }
    }
    if g.n() > bounds.generic_partition_vertices {
        return Err(Error::Undecided(format!(
            "partition search over {} vertices exceeds the bound {}",
            g.n(),
            bounds.generic_partition_vertices
        )));
    }
    search.leaves = 0;
    let units: Vec<u64> = (0..g.n()).map(|v| 1 << v).collect();
    let mut masks = vec![0u64; demands.len()];
    if let Some(ev) = search.assign(&units, 0, &mut masks)? {
        return Ok(Some(found(&masks, ev)));
    }
    if search.unknown {
        return Err(Error::Undecided(
            "some block could not be decided within bounds".into(),
        ));
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Exhaustive,
    Partitionable,
    Case2,
    SeededWitness,
}

/// Outcome of [`lambda_choosable`]. `choosable` is `None` when undecided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaVerdict {
    pub choosable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes_examined: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<BadAssignmentWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionabilityWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl LambdaVerdict {
    fn base(choosable: Option<bool>, provenance: Option<Provenance>) -> Self {
        LambdaVerdict {
            choosable,
            provenance,
            classes_examined: None,
            witness: None,
            partition: None,
            reason: None,
        }
    }

    pub fn undecided(reason: impl Into<String>) -> Self {
        LambdaVerdict {
            reason: Some(reason.into()),
            ..Self::base(None, None)
        }
    }

    pub fn bad(witness: BadAssignmentWitness, provenance: Provenance) -> Self {
        LambdaVerdict {
            witness: Some(witness),
            ..Self::base(Some(false), Some(provenance))
        }
    }

    pub fn is_choosable(&self) -> bool {
        self.choosable == Some(true)
    }

    pub fn is_undecided(&self) -> bool {
        self.choosable.is_none()
    }
}

pub fn lambda_choosable(g: &Graph, lambda: &IntegerPartition) -> Result<LambdaVerdict> {
    lambda_choosable_with(g, lambda, &SearchOptions::default())
}

/// A bad assignment seeded from a known construction is returned first,
/// after the solver confirms it. Otherwise the decision is exhaustive when
/// `n * weight` is within bounds. Beyond them it tries a partitionability
/// witness and, for complete multipartite graphs with the strict partition,
/// the strict-colorability theorem.
pub fn lambda_choosable_with(
    g: &Graph,
    lambda: &IntegerPartition,
    opts: &SearchOptions,
) -> Result<LambdaVerdict> {
    let theorem = crate::strict::theorem_verdict(g, lambda)?;
    if let Some(w) = theorem.as_ref().and_then(|v| v.witness.as_ref()) {
        if w.verify(g)? {
            return Ok(theorem.expect("checked above"));
        }
    }
    let cells = g.n() * lambda.weight();
    if cells <= opts.bounds.lambda_assignment_cells.min(64) {
        return Ok(match exhaustive_choosability(g, lambda, opts)? {
            Choosability::Choosable { classes_examined } => LambdaVerdict {
                classes_examined: Some(classes_examined),
                ..LambdaVerdict::base(Some(true), Some(Provenance::Exhaustive))
            },
            Choosability::NotChoosable(w) => LambdaVerdict::bad(w, Provenance::Exhaustive),
        });
    }
    match lambda_partitionable_with(g, lambda, &opts.bounds) {
        Ok(Some(w)) => {
            return Ok(LambdaVerdict {
                partition: Some(w),
                ..LambdaVerdict::base(Some(true), Some(Provenance::Partitionable))
            })
        }
        Ok(None) | Err(Error::Undecided(_)) => {}
        Err(e) => return Err(e),
    }
    if let Some(v) = theorem {
        return Ok(v);
    }
    Ok(LambdaVerdict::undecided(format!(
        "n*weight = {cells} exceeds the enumeration bound {} and no certificate applies",
        opts.bounds.lambda_assignment_cells
    )))
}

/// A random valid lambda-assignment on `n` vertices. Group `j` matches part
/// `j` of `lambda` and draws from a window of between `k` and `2k+1` colors.
pub fn random_lambda_assignment<R: Rng + ?Sized>(
    n: usize,
    lambda: &IntegerPartition,
    rng: &mut R,
) -> LambdaAssignment {
    let mut lists = vec![Vec::new(); n];
    let mut groups = Vec::new();
    let mut offset: Color = 1;
    for &k in lambda.parts() {
        let width = rng.random_range(k..=2 * k + 1);
        let window: Vec<Color> = (offset..offset + width as Color).collect();
        for list in &mut lists {
            for i in rand::seq::index::sample(rng, width, k) {
                list.push(window[i]);
            }
        }
        groups.push(window);
        offset += width as Color;
    }
    LambdaAssignment::new_unchecked(
        ListAssignment::new(lists).expect("positive demands give non-empty lists"),
        ColorGrouping { groups },
        lambda.clone(),
    )
}
