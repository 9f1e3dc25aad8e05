//! Strict k-colorability of complete multipartite graphs.
//!
//! A k-colorable graph is strictly k-colorable when it is not
//! `{1*(k-2),2}`-choosable. For a complete multipartite graph with part
//! sizes `a_1 <= ... <= a_k` and `k >= 3` this happens exactly when it
//! contains `K_{3*k}`, `K_{2,4,6*(k-2)}` or `K_{2,5*(k-1)}`.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::enumerate::{vertex_masks, AssignmentSpace, ClassFilter, Symmetry};
use crate::error::{bound, Error, Result};
use crate::graph::{chromatic_number_bounded, complete_multipartite, Graph, PartSizes};
use crate::lambda::{
    BadAssignmentWitness, BlockEvidence, ColorGrouping, LambdaAssignment, LambdaVerdict,
    PartitionabilityWitness, Provenance,
};
use crate::list_color::{
    classes_to_lambda, color_masks, core_shapes, exhaustive_choosability, k_choosable_with,
    l_color, l_color_multipartite, two_choosable_fast, Choosability, ColoringWitness, CoreShape,
    ListAssignment, SearchOptions,
};
use crate::partition::IntegerPartition;
use crate::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "contains-K3k")]
    ContainsK3k,
    #[serde(rename = "contains-K246")]
    ContainsK246,
    #[serde(rename = "contains-K255")]
    ContainsK255,
    #[serde(rename = "case1")]
    Case1,
    #[serde(rename = "case2")]
    Case2,
    #[serde(rename = "search")]
    Search,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::ContainsK3k => "contains-K3k",
            Reason::ContainsK246 => "contains-K246",
            Reason::ContainsK255 => "contains-K255",
            Reason::Case1 => "case1",
            Reason::Case2 => "case2",
            Reason::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    BadAssignment(BadAssignmentWitness),
    Partition(PartitionabilityWitness),
    /// The Case-2 colorer run on a sample assignment that forces every step.
    Case2 {
        assignment: LambdaAssignment,
        transcript: Case2Transcript,
    },
    Exhaustive {
        classes_examined: u64,
    },
    ChromaticNumber {
        value: usize,
    },
    CoreShapes {
        shapes: Vec<CoreShape>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictDecision {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<PartSizes>,
    pub k: usize,
    pub strict: bool,
    pub reason: Reason,
    pub certificate: Certificate,
}

impl StrictDecision {
    /// Re-checks the certificate against the complete multipartite graph on
    /// `sizes`.
    pub fn verify(&self) -> Result<bool> {
        let sizes = self
            .sizes
            .as_ref()
            .ok_or_else(|| Error::Precondition("decision carries no part sizes".into()))?;
        self.verify_on(&complete_multipartite(sizes)?)
    }

    pub fn verify_on(&self, g: &Graph) -> Result<bool> {
        let k = self.k;
        let lambda_k = (k >= 2).then(|| IntegerPartition::strict_lambda(k));
        Ok(match &self.certificate {
            Certificate::BadAssignment(w) => {
                self.strict && Some(w.assignment.lambda()) == lambda_k.as_ref() && w.verify(g)?
            }
            Certificate::Partition(w) => {
                !self.strict && Some(&w.lambda) == lambda_k.as_ref() && w.verify(g)?
            }
            Certificate::Case2 {
                assignment,
                transcript,
            } => {
                let Some(sizes) = &self.sizes else {
                    return Ok(false);
                };
                !self.strict
                    && case2_applies(sizes)
                    && assignment.validate().valid
                    && transcript.final_coloring.certifies(g, assignment.base())
            }
            Certificate::Exhaustive { .. } => {
                let Some(lambda) = lambda_k else {
                    return Ok(false);
                };
                !self.strict
                    && matches!(
                        exhaustive_choosability(g, &lambda, &SearchOptions::default())?,
                        Choosability::Choosable { .. }
                    )
            }
            Certificate::ChromaticNumber { value } => {
                chromatic_number_bounded(g, &Default::default())? == *value
                    && (if self.strict {
                        k == 1 && *value == 1
                    } else {
                        *value != k
                    })
            }
            Certificate::CoreShapes { shapes } => {
                k == 2 && core_shapes(g) == *shapes && self.strict != two_choosable_fast(g)
            }
        })
    }
}

fn lambda_k_assignment(
    lists: Vec<Vec<Color>>,
    groups: Vec<Vec<Color>>,
    k: usize,
) -> LambdaAssignment {
    LambdaAssignment::new_unchecked(
        ListAssignment::new(lists).expect("constructed lists are non-empty"),
        ColorGrouping { groups },
        IntegerPartition::strict_lambda(k),
    )
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::Precondition(format!(
            "witness families need k >= 3, got {k}"
        )));
    }
    Ok(())
}

fn with_a(pair: &[Color], a: &[Color]) -> Vec<Color> {
    pair.iter().chain(a).copied().collect()
}

pub fn k3k_sizes(k: usize) -> PartSizes {
    PartSizes::uniform(3, k)
}

pub fn k246_sizes(k: usize) -> PartSizes {
    let mut s = vec![2, 4];
    s.extend(std::iter::repeat_n(6, k.saturating_sub(2)));
    PartSizes::new(s).expect("positive sizes")
}

pub fn k255_sizes(k: usize) -> PartSizes {
    let mut s = vec![2];
    s.extend(std::iter::repeat_n(5, k.saturating_sub(1)));
    PartSizes::new(s).expect("positive sizes")
}

/// Bad assignment of `K_{3*k}`: every part gets `{0,1}`, `{0,2}`, `{1,2}`,
/// each joined with `A = {3..k}`. Groups `{0,1,2}`, then `{3}`, ..., `{k}`.
pub fn witness_k3k(k: usize) -> Result<LambdaAssignment> {
    check_k(k)?;
    let a: Vec<Color> = (3..=k as Color).collect();
    let pattern = [[0, 1], [0, 2], [1, 2]];
    let lists = (0..3 * k).map(|v| with_a(&pattern[v % 3], &a)).collect();
    let mut groups = vec![vec![0, 1, 2]];
    groups.extend(a.iter().map(|&c| vec![c]));
    Ok(lambda_k_assignment(lists, groups, k))
}

const MIXED: [[Color; 2]; 4] = [[1, 3], [1, 4], [2, 3], [2, 4]];

fn first_part(a: &[Color]) -> Vec<Vec<Color>> {
    vec![with_a(&[1, 2], a), with_a(&[3, 4], a)]
}

fn groups_1234(a: &[Color]) -> Vec<Vec<Color>> {
    let mut groups = vec![vec![1, 2, 3, 4]];
    groups.extend(a.iter().map(|&c| vec![c]));
    groups
}

/// Bad assignment of `K_{2,4,6*(k-2)}` with `A = {5..k+2}`.
pub fn witness_k246(k: usize) -> Result<LambdaAssignment> {
    check_k(k)?;
    let a: Vec<Color> = (5..=k as Color + 2).collect();
    let mut lists = first_part(&a);
    lists.extend(MIXED.iter().map(|p| with_a(p, &a)));
    for _ in 2..k {
        lists.extend(MIXED.iter().map(|p| with_a(p, &a)));
        lists.push(with_a(&[1, 2], &a));
        lists.push(with_a(&[3, 4], &a));
    }
    Ok(lambda_k_assignment(lists, groups_1234(&a), k))
}

/// Bad assignment of `K_{2,5*(k-1)}` with `A = {5..k+2}`.
pub fn witness_k255(k: usize) -> Result<LambdaAssignment> {
    check_k(k)?;
    let a: Vec<Color> = (5..=k as Color + 2).collect();
    let mut lists = first_part(&a);
    for _ in 1..k {
        lists.extend(MIXED.iter().map(|p| with_a(p, &a)));
        lists.push(with_a(&[1, 2], &a));
    }
    Ok(lambda_k_assignment(lists, groups_1234(&a), k))
}

/// Lifts an assignment of `K_pattern` to `K_host` with the same number of
/// parts. Part `i` of the host keeps the lists of part `i` of the pattern;
/// extra vertices copy the list of that part's first vertex.
pub fn extend_witness(
    base: &LambdaAssignment,
    pattern: &PartSizes,
    host: &PartSizes,
) -> Result<LambdaAssignment> {
    if base.base().len() != pattern.total() {
        return Err(Error::Precondition(format!(
            "assignment has {} lists but {pattern} has {} vertices",
            base.base().len(),
            pattern.total()
        )));
    }
    if pattern.k() != host.k() || pattern.sizes().iter().zip(host.sizes()).any(|(p, h)| p > h) {
        return Err(Error::Precondition(format!(
            "{host} does not contain {pattern} part by part"
        )));
    }
    let offsets = pattern.offsets();
    let mut lists = Vec::with_capacity(host.total());
    for (i, &size) in host.sizes().iter().enumerate() {
        for j in 0..size {
            let src = offsets[i] + if j < pattern.sizes()[i] { j } else { 0 };
            lists.push(base.base().list(src).to_vec());
        }
    }
    Ok(LambdaAssignment::new_unchecked(
        ListAssignment::new(lists)?,
        base.grouping().clone(),
        base.lambda().clone(),
    ))
}

pub fn case1_applies(sizes: &PartSizes) -> bool {
    let a = sizes.sizes();
    a.len() >= 3 && (a[0] == 1 || (a[0] == 2 && a[1] <= 3))
}

pub fn case2_applies(sizes: &PartSizes) -> bool {
    let a = sizes.sizes();
    a.len() >= 3 && a[0] == 2 && a[1] == 4 && a[2] <= 5
}

/// Blocks for the strict partition: `V_3..V_k` alone (level 1) and
/// `V_1 u V_2` together (level 2).
pub fn case1_partition(sizes: &PartSizes) -> Result<PartitionabilityWitness> {
    if !case1_applies(sizes) {
        return Err(Error::Precondition(format!(
            "{sizes} needs a_1 = 1, or a_1 = 2 and a_2 <= 3, with at least three parts"
        )));
    }
    let k = sizes.k();
    let offsets = sizes.offsets();
    let part = |i: usize| (offsets[i]..offsets[i + 1]).collect::<Vec<_>>();
    let mut blocks: Vec<Vec<usize>> = (2..k).map(part).collect();
    let mut evidence = vec![BlockEvidence::Independent; k - 2];
    let pair: Vec<usize> = (offsets[0]..offsets[2]).collect();
    let g = complete_multipartite(sizes)?;
    let sub = g.induced(&pair);
    debug_assert!(two_choosable_fast(&sub));
    evidence.push(BlockEvidence::TwoChoosable {
        shapes: core_shapes(&sub),
    });
    blocks.push(pair);
    Ok(PartitionabilityWitness {
        lambda: IntegerPartition::strict_lambda(k),
        blocks,
        evidence,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case2Branch {
    OneInExtra,
    TwoInExtra,
    Otherwise,
    NoExtra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Round {
    pub step: u8,
    /// Entry `j` is the part (0-based) colored from singleton group `j`.
    pub singleton_parts: Vec<usize>,
    /// The two parts colored from the 2-group.
    pub pair_parts: [usize; 2],
    pub colorable: bool,
    /// Labels `1,2,3,4` of the pattern found when the first attempt fails:
    /// the first part holds `{1,2}` and `{3,4}`, the second all four
    /// transversals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hoffman_johnson: Option<[Color; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Transcript {
    pub rounds: Vec<Case2Round>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Case2Branch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<[Color; 2]>,
    #[serde(rename = "final")]
    pub final_coloring: ColoringWitness,
}

impl Case2Transcript {
    pub fn last_step(&self) -> u8 {
        self.rounds.last().map_or(0, |r| r.step)
    }
}

/// Colors a strict-partition assignment of a Case-2 graph following the
/// constructive proof. Panics if the proof's claims fail, which would be a
/// defect.
pub fn case2_color(sizes: &PartSizes, a: &LambdaAssignment) -> Result<Case2Transcript> {
    if !case2_applies(sizes) {
        return Err(Error::Precondition(format!(
            "{sizes} needs a_1 = 2, a_2 = 4, a_3 <= 5 and at least three parts"
        )));
    }
    let k = sizes.k();
    if a.lambda() != &IntegerPartition::strict_lambda(k) || a.base().len() != sizes.total() {
        return Err(Error::Precondition(format!(
            "expected a {} assignment on {} vertices",
            IntegerPartition::strict_lambda(k),
            sizes.total()
        )));
    }
    let report = a.validate();
    if !report.valid {
        return Err(Error::InvalidAssignment(format!(
            "{:?}",
            report.violations[0]
        )));
    }
    let order = a.group_order().expect("validated");
    let pair_group = order[k - 2];
    let singles = &order[..k - 2];
    let pair_lists = a.restrict_to_group(pair_group);
    let offsets = sizes.offsets();
    let part = |i: usize| offsets[i]..offsets[i + 1];
    let g = complete_multipartite(sizes)?;

    let mut colors: Vec<Color> = vec![0; sizes.total()];
    let color_from_single = |colors: &mut Vec<Color>, p: usize, group: usize| {
        let lists = a.restrict_to_group(group);
        for v in part(p) {
            colors[v] = lists[v][0];
        }
    };
    let try_pair = |colors: &mut Vec<Color>, p: usize, q: usize| -> Result<bool> {
        let vs: Vec<usize> = part(p).chain(part(q)).collect();
        let lists = ListAssignment::new(vs.iter().map(|&v| pair_lists[v].clone()).collect())?;
        Ok(match l_color(&g.induced(&vs), &lists)?.coloring {
            Some(w) => {
                for (i, &v) in vs.iter().enumerate() {
                    colors[v] = w.colors[i];
                }
                true
            }
            None => false,
        })
    };

    let mut rounds = Vec::new();
    let mut holders: Vec<usize> = (2..k).collect();
    for (j, &group) in singles.iter().enumerate() {
        color_from_single(&mut colors, holders[j], group);
    }
    let ok = try_pair(&mut colors, 0, 1)?;
    rounds.push(Case2Round {
        step: 1,
        singleton_parts: holders.clone(),
        pair_parts: [0, 1],
        colorable: ok,
        hoffman_johnson: None,
    });
    let mut branch = None;
    let mut extra = None;
    if !ok {
        let v1: Vec<&Vec<Color>> = part(0).map(|v| &pair_lists[v]).collect();
        let (lo, hi) = if v1[0] < v1[1] {
            (v1[0], v1[1])
        } else {
            (v1[1], v1[0])
        };
        let labels = [lo[0], lo[1], hi[0], hi[1]];
        let transversals = |labels: &[Color; 4]| {
            let mut t: Vec<Vec<Color>> = [[0, 2], [0, 3], [1, 2], [1, 3]]
                .iter()
                .map(|&[x, y]| {
                    let mut l = vec![labels[x], labels[y]];
                    l.sort_unstable();
                    l
                })
                .collect();
            t.sort();
            t
        };
        let mut v2: Vec<Vec<Color>> = part(1).map(|v| pair_lists[v].clone()).collect();
        v2.sort();
        assert!(
            lo.iter().all(|c| !hi.contains(c)) && v2 == transversals(&labels),
            "first attempt failed without the Hoffman-Johnson pattern on the first two parts"
        );
        rounds[0].hoffman_johnson = Some(labels);

        holders[0] = 1;
        color_from_single(&mut colors, 1, singles[0]);
        let ok = try_pair(&mut colors, 0, 2)?;
        rounds.push(Case2Round {
            step: 2,
            singleton_parts: holders.clone(),
            pair_parts: [0, 2],
            colorable: ok,
            hoffman_johnson: None,
        });
        if !ok {
            holders[0] = 0;
            color_from_single(&mut colors, 0, singles[0]);
            let mut rest: Vec<Vec<Color>> = part(2).map(|v| pair_lists[v].clone()).collect();
            for t in transversals(&labels) {
                let at = rest
                    .iter()
                    .position(|l| *l == t)
                    .expect("second attempt failed although the third part misses a transversal");
                rest.remove(at);
            }
            let [one, two, three, four] = labels;
            let (s2, s3, b) = match rest.as_slice() {
                [] => (vec![one, two], vec![three, four], Case2Branch::NoExtra),
                [ab] => {
                    extra = Some([ab[0], ab[1]]);
                    if ab.contains(&one) {
                        (vec![three, four], vec![one, two], Case2Branch::OneInExtra)
                    } else if ab.contains(&two) {
                        (vec![three, four], vec![one, two], Case2Branch::TwoInExtra)
                    } else {
                        (
                            vec![one, two],
                            vec![three, four, ab[0]],
                            Case2Branch::Otherwise,
                        )
                    }
                }
                _ => unreachable!("the third part has at most five vertices"),
            };
            for (p, set) in [(1, &s2), (2, &s3)] {
                for v in part(p) {
                    colors[v] = *pair_lists[v]
                        .iter()
                        .find(|c| set.contains(c))
                        .expect("every list meets the chosen color set");
                }
            }
            branch = Some(b);
            rounds.push(Case2Round {
                step: 3,
                singleton_parts: holders.clone(),
                pair_parts: [1, 2],
                colorable: true,
                hoffman_johnson: None,
            });
        }
    }
    let final_coloring = ColoringWitness { colors };
    assert!(
        final_coloring.certifies(&g, a.base()),
        "Case-2 colorer produced an invalid coloring"
    );
    Ok(Case2Transcript {
        rounds,
        branch,
        extra,
        final_coloring,
    })
}

/// A strict-partition assignment of a Case-2 graph on which the colorer
/// needs all three steps: the Hoffman-Johnson pattern on the first two
/// parts, all transversals plus `{1,2}` on the third.
pub fn case2_demo_assignment(sizes: &PartSizes) -> Result<LambdaAssignment> {
    if !case2_applies(sizes) {
        return Err(Error::Precondition(format!(
            "{sizes} is not a Case-2 size vector"
        )));
    }
    let k = sizes.k();
    let a: Vec<Color> = (5..=k as Color + 2).collect();
    let mut lists = first_part(&a);
    lists.extend(MIXED.iter().map(|p| with_a(p, &a)));
    let third = sizes.sizes()[2];
    lists.extend(MIXED.iter().map(|p| with_a(p, &a)));
    if third == 5 {
        lists.push(with_a(&[1, 2], &a));
    }
    for &size in &sizes.sizes()[3..] {
        lists.extend(std::iter::repeat_n(with_a(&[1, 2], &a), size));
    }
    Ok(lambda_k_assignment(lists, groups_1234(&a), k))
}

/// Decides strict k-colorability of `K_sizes` by the characterization.
pub fn decide_strict_cmp(sizes: &PartSizes) -> Result<StrictDecision> {
    let k = sizes.k();
    if k < 3 {
        return Err(Error::Precondition(format!(
            "the characterization covers k >= 3 parts, got {k}; use the search method for smaller k"
        )));
    }
    let a = sizes.sizes();
    let strict_with =
        |reason, pattern: PartSizes, base: LambdaAssignment| -> Result<StrictDecision> {
            let assignment = extend_witness(&base, &pattern, sizes)?;
            let run = l_color_multipartite(sizes, assignment.base())?;
            assert!(!run.colorable, "extended witness became colorable");
            Ok(StrictDecision {
                sizes: Some(sizes.clone()),
                k,
                strict: true,
                reason,
                certificate: Certificate::BadAssignment(BadAssignmentWitness {
                    assignment,
                    nodes_searched: run.nodes_searched,
                }),
            })
        };
    if a[0] >= 3 {
        return strict_with(Reason::ContainsK3k, k3k_sizes(k), witness_k3k(k)?);
    }
    if a[0] >= 2 && a[1] >= 5 {
        return strict_with(Reason::ContainsK255, k255_sizes(k), witness_k255(k)?);
    }
    if a[0] >= 2 && a[1] >= 4 && a[2] >= 6 {
        return strict_with(Reason::ContainsK246, k246_sizes(k), witness_k246(k)?);
    }
    if case1_applies(sizes) {
        return Ok(StrictDecision {
            sizes: Some(sizes.clone()),
            k,
            strict: false,
            reason: Reason::Case1,
            certificate: Certificate::Partition(case1_partition(sizes)?),
        });
    }
    let assignment = case2_demo_assignment(sizes)?;
    let transcript = case2_color(sizes, &assignment)?;
    Ok(StrictDecision {
        sizes: Some(sizes.clone()),
        k,
        strict: false,
        reason: Reason::Case2,
        certificate: Certificate::Case2 {
            assignment,
            transcript,
        },
    })
}

/// Part sizes of a part-labelled graph and the vertex order in which it
/// matches [`complete_multipartite`]: entry `j` is the vertex of `g` placed
/// at position `j`.
pub(crate) fn multipartite_order(g: &Graph) -> Option<(PartSizes, Vec<usize>)> {
    let mut parts = g.parts()?;
    parts.sort_by_key(|p| (p.len(), p[0]));
    let sizes = PartSizes::new(parts.iter().map(Vec::len).collect()).ok()?;
    Some((sizes, parts.concat()))
}

/// Certificate-based verdict for the strict partition on a part-labelled
/// graph, or `None` when the characterization does not apply.
pub(crate) fn theorem_verdict(
    g: &Graph,
    lambda: &IntegerPartition,
) -> Result<Option<LambdaVerdict>> {
    let Some((sizes, order)) = multipartite_order(g) else {
        return Ok(None);
    };
    if sizes.k() < 3 || lambda != &IntegerPartition::strict_lambda(sizes.k()) {
        return Ok(None);
    }
    let d = decide_strict_cmp(&sizes)?;
    let verdict = match d.certificate {
        Certificate::BadAssignment(w) => {
            let mut lists = vec![Vec::new(); g.n()];
            for (j, &v) in order.iter().enumerate() {
                lists[v] = w.assignment.base().list(j).to_vec();
            }
            let assignment = LambdaAssignment::new_unchecked(
                ListAssignment::new(lists)?,
                w.assignment.grouping().clone(),
                w.assignment.lambda().clone(),
            );
            LambdaVerdict::bad(
                BadAssignmentWitness {
                    assignment,
                    nodes_searched: w.nodes_searched,
                },
                Provenance::SeededWitness,
            )
        }
        Certificate::Partition(mut w) => {
            for block in &mut w.blocks {
                for v in block.iter_mut() {
                    *v = order[*v];
                }
                block.sort_unstable();
            }
            LambdaVerdict {
                choosable: Some(true),
                provenance: Some(Provenance::Partitionable),
                classes_examined: None,
                witness: None,
                partition: Some(w),
                reason: None,
            }
        }
        _ => LambdaVerdict {
            choosable: Some(true),
            provenance: Some(Provenance::Case2),
            classes_examined: None,
            witness: None,
            partition: None,
            reason: None,
        },
    };
    Ok(Some(verdict))
}

pub fn decide_strict_search(g: &Graph, k: usize) -> Result<StrictDecision> {
    decide_strict_search_with(g, k, &SearchOptions::default())
}

/// Decides strict k-colorability of any graph from the definition:
/// chromatic number `k` and a bad `{1*(k-2),2}`-assignment found by
/// exhaustive search. Exceeded bounds become [`Error::Undecided`].
pub fn decide_strict_search_with(
    g: &Graph,
    k: usize,
    opts: &SearchOptions,
) -> Result<StrictDecision> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let undecided = |e: Error| match e {
        Error::BoundExceeded { .. } => Error::Undecided(e.to_string()),
        e => e,
    };
    let sizes = multipartite_order(g).map(|(s, _)| s);
    let decision = |strict, certificate| StrictDecision {
        sizes: sizes.clone(),
        k,
        strict,
        reason: Reason::Search,
        certificate,
    };
    let chi = chromatic_number_bounded(g, &opts.bounds).map_err(undecided)?;
    if chi != k || k == 1 {
        return Ok(decision(
            chi == k,
            Certificate::ChromaticNumber { value: chi },
        ));
    }
    if k == 2 {
        let shapes = core_shapes(g);
        if two_choosable_fast(g) {
            return Ok(decision(false, Certificate::CoreShapes { shapes }));
        }
        if g.n() * 2 <= opts.bounds.k_assignment_cells {
            if let Choosability::NotChoosable(w) = k_choosable_with(g, 2, opts)? {
                return Ok(decision(true, Certificate::BadAssignment(w)));
            }
        }
        return Ok(decision(true, Certificate::CoreShapes { shapes }));
    }
    bound(
        "n*k",
        g.n() * k,
        opts.bounds.lambda_assignment_cells.min(64),
    )
    .map_err(undecided)?;
    Ok(
        match exhaustive_choosability(g, &IntegerPartition::strict_lambda(k), opts)? {
            Choosability::Choosable { classes_examined } => {
                decision(false, Certificate::Exhaustive { classes_examined })
            }
            Choosability::NotChoosable(w) => decision(true, Certificate::BadAssignment(w)),
        },
    )
}

/// Every uncolorable m-assignment of `K_{m,n}` up to color renaming and
/// permutations inside each part, one canonical representative each.
pub fn hoffman_johnson_enumerate(m: usize, n: usize) -> Result<Vec<ListAssignment>> {
    let bounds = crate::Bounds::default();
    let sizes = PartSizes::new(vec![m, n])?;
    bound("(m+n)*m", sizes.total() * m, bounds.k_assignment_cells)?;
    let g = complete_multipartite(&sizes)?;
    let space = AssignmentSpace::new(
        &g,
        &[m],
        ClassFilter::All,
        Symmetry::within_parts(&g, bounds.max_symmetries)?,
    )?;
    let mut out = Vec::new();
    let _ = space.for_each(|classes| {
        let masks = vertex_masks(g.n(), classes);
        if color_masks(g.adjacency(), &masks, &mut 0).is_none() {
            out.push(classes_to_lambda(g.n(), &[m], classes).base().clone());
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> PartSizes {
        text.parse().unwrap()
    }

    #[test]
    fn k3k_table() {
        let w = witness_k3k(3).unwrap();
        assert_eq!(w.base().len(), 9);
        assert_eq!(w.base().list(0), &[0, 1, 3]);
        assert_eq!(w.base().list(1), &[0, 2, 3]);
        assert_eq!(w.base().list(2), &[1, 2, 3]);
        assert_eq!(w.grouping().groups, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(
            witness_k3k(7).unwrap().base().list(1),
            &[0, 2, 3, 4, 5, 6, 7]
        );
        assert!(witness_k3k(4).unwrap().validate().valid);
        assert!(witness_k3k(2).is_err());
    }

    #[test]
    fn k246_and_k255_tables() {
        let w = witness_k246(3).unwrap();
        let v3: Vec<&[Color]> = (6..12).map(|v| w.base().list(v)).collect();
        assert_eq!(
            v3,
            vec![
                &[1, 3, 5][..],
                &[1, 4, 5],
                &[2, 3, 5],
                &[2, 4, 5],
                &[1, 2, 5],
                &[3, 4, 5]
            ]
        );
        assert!(
            !l_color_multipartite(&k246_sizes(3), w.base())
                .unwrap()
                .colorable
        );
        assert!(witness_k246(5).unwrap().validate().valid);

        let w = witness_k255(3).unwrap();
        assert_eq!(w.base().len(), 12);
        let v2: Vec<&[Color]> = (2..7).map(|v| w.base().list(v)).collect();
        assert_eq!(
            v2,
            vec![
                &[1, 3, 5][..],
                &[1, 4, 5],
                &[2, 3, 5],
                &[2, 4, 5],
                &[1, 2, 5]
            ]
        );
        assert!(
            !l_color_multipartite(&k255_sizes(3), w.base())
                .unwrap()
                .colorable
        );
        assert!(witness_k255(4).unwrap().validate().valid);
    }

    #[test]
    fn extension_examples() {
        let base = witness_k246(3).unwrap();
        let ext = extend_witness(&base, &k246_sizes(3), &s("2,4,7")).unwrap();
        assert_eq!(ext.base().len(), 13);
        assert!(ext.validate().valid);
        assert!(
            !l_color_multipartite(&s("2,4,7"), ext.base())
                .unwrap()
                .colorable
        );
        assert_eq!(
            extend_witness(&base, &k246_sizes(3), &k246_sizes(3)).unwrap(),
            base
        );

        let ext = extend_witness(&witness_k3k(3).unwrap(), &k3k_sizes(3), &s("3,3,4")).unwrap();
        assert!(ext.validate().valid);
        assert!(
            !l_color_multipartite(&s("3,3,4"), ext.base())
                .unwrap()
                .colorable
        );
        assert!(extend_witness(&base, &k246_sizes(3), &s("2,4,5")).is_err());
    }

    #[test]
    fn case1_examples() {
        for (text, pair) in [("2,3,3", 5), ("1,5,9", 6), ("2,2,2", 4)] {
            let sizes = s(text);
            let w = case1_partition(&sizes).unwrap();
            assert_eq!(w.blocks.last().unwrap().len(), pair);
            assert!(w.verify(&complete_multipartite(&sizes).unwrap()).unwrap());
        }
        assert!(case1_partition(&s("2,4,4")).is_err());
    }

    #[test]
    fn case2_reaches_step_three() {
        let sizes = s("2,4,5");
        let a = case2_demo_assignment(&sizes).unwrap();
        assert!(a.validate().valid);
        let t = case2_color(&sizes, &a).unwrap();
        assert_eq!(t.last_step(), 3);
        assert_eq!(t.branch, Some(Case2Branch::OneInExtra));
        assert_eq!(t.rounds[0].hoffman_johnson, Some([1, 2, 3, 4]));
        let c = &t.final_coloring.colors;
        assert!(c[..2].iter().all(|&x| x == 5));
        assert!(c[2..6].iter().all(|x| [3, 4].contains(x)));
        assert!(c[6..].iter().all(|x| [1, 2].contains(x)));
    }

    #[test]
    fn case2_easy_assignment_stops_early() {
        let sizes = s("2,4,5");
        let lists = (0..11).map(|_| vec![1, 2, 5]).collect();
        let a = lambda_k_assignment(lists, vec![vec![1, 2], vec![5]], 3);
        let t = case2_color(&sizes, &a).unwrap();
        assert_eq!(t.last_step(), 1);
        assert!(case2_color(&s("2,4,6"), &a).is_err());
    }

    #[test]
    fn decisions() {
        let cases = [
            ("3,3,3", true, Reason::ContainsK3k),
            ("2,4,5", false, Reason::Case2),
            ("2,4,7", true, Reason::ContainsK246),
            ("1,9,9,9", false, Reason::Case1),
            ("2,5,5", true, Reason::ContainsK255),
        ];
        for (text, strict, reason) in cases {
            let d = decide_strict_cmp(&s(text)).unwrap();
            assert_eq!((d.strict, d.reason), (strict, reason), "{text}");
            assert!(d.verify().unwrap(), "{text}");
        }
        assert!(decide_strict_cmp(&s("2,2")).is_err());
    }

    #[test]
    fn search_examples() {
        let k3 = complete_multipartite(&s("1,1,1")).unwrap();
        assert!(!decide_strict_search(&k3, 3).unwrap().strict);
        let k333 = complete_multipartite(&s("3,3,3")).unwrap();
        let d = decide_strict_search(&k333, 4).unwrap();
        assert!(!d.strict);
        assert_eq!(d.certificate, Certificate::ChromaticNumber { value: 3 });
        let k24 = complete_multipartite(&s("2,4")).unwrap();
        let d = decide_strict_search(&k24, 2).unwrap();
        assert!(d.strict && d.verify_on(&k24).unwrap());
        let e = Graph::empty(2).unwrap();
        assert!(decide_strict_search(&e, 1).unwrap().strict);
    }

    #[test]
    fn hoffman_johnson_small() {
        assert_eq!(hoffman_johnson_enumerate(1, 1).unwrap().len(), 1);
        assert_eq!(hoffman_johnson_enumerate(2, 3).unwrap().len(), 0);
        assert_eq!(hoffman_johnson_enumerate(2, 4).unwrap().len(), 1);
    }

    #[test]
    fn decision_json() {
        let d = decide_strict_cmp(&s("2,4,6")).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.starts_with(r#"{"sizes":[2,4,6],"k":3,"strict":true,"reason":"contains-K246","certificate":{"kind":"bad-assignment","assignment":"#));
        let back: StrictDecision = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
}
