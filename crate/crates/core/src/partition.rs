//! Integer partitions, refinement, and Zhu's order.
//!
//! A partition is stored as its parts in non-decreasing order, so `{1,1,2,3}`
//! and `{3,1,2,1}` are the same value. Text uses comma separated terms where
//! `n*m` stands for `m` copies of the part `n`, e.g. `1*4,2`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{bound, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parse {
                term: String::new(),
                reason: "a partition needs at least one part".into(),
            });
        }
        if parts.contains(&0) {
            return Err(Error::Parse {
                term: "0".into(),
                reason: "parts must be positive".into(),
            });
        }
        parts.sort_unstable();
        Ok(IntegerPartition { parts })
    }

    /// `{k}`
    pub fn single(k: usize) -> Self {
        assert!(k > 0);
        IntegerPartition { parts: vec![k] }
    }

    /// `{1*k}`
    pub fn ones(k: usize) -> Self {
        assert!(k > 0);
        IntegerPartition { parts: vec![1; k] }
    }

    /// `{1*(k-2),2}`, the partition whose choosability decides strictness.
    pub fn strict_lambda(k: usize) -> Self {
        assert!(k >= 2);
        let mut parts = vec![1; k - 2];
        parts.push(2);
        IntegerPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Plain canonical text, e.g. `1,1,2`. Parses back to the same value.
    pub fn to_text(&self) -> String {
        let items: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        items.join(",")
    }

    /// Multiplicity form, e.g. `1*2,2`.
    pub fn to_compact_text(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&q| q == p).count();
            if run == 1 {
                out.push(p.to_string());
            } else {
                out.push(format!("{p}*{run}"));
            }
            i += run;
        }
        out.join(",")
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

impl TryFrom<Vec<usize>> for IntegerPartition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        IntegerPartition::new(parts)
    }
}

impl From<IntegerPartition> for Vec<usize> {
    fn from(p: IntegerPartition) -> Vec<usize> {
        p.parts
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

/// Parses `n` / `n*m` terms separated by commas. Surrounding braces are
/// accepted so that displayed partitions parse back.
pub fn parse_partition(text: &str) -> Result<IntegerPartition> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
        body = inner.trim();
    }
    if body.is_empty() {
        return Err(Error::Parse {
            term: text.to_string(),
            reason: "empty partition".into(),
        });
    }
    let mut parts = Vec::new();
    for raw in body.split(',') {
        let term = raw.trim();
        let bad = |reason: &str| Error::Parse {
            term: term.to_string(),
            reason: reason.to_string(),
        };
        let (part, mult) = match term.split_once('*') {
            Some((p, m)) => (p.trim(), m.trim()),
            None => (term, "1"),
        };
        let part: usize = part
            .parse()
            .map_err(|_| bad("expected a positive integer part"))?;
        let mult: usize = mult
            .parse()
            .map_err(|_| bad("expected a positive integer multiplicity"))?;
        if part == 0 {
            return Err(bad("parts must be positive"));
        }
        if mult == 0 {
            return Err(bad("multiplicity must be positive"));
        }
        parts.extend(std::iter::repeat_n(part, mult));
    }
    IntegerPartition::new(parts)
}

pub fn format_partition(p: &IntegerPartition) -> String {
    p.to_text()
}

/// All partitions of `k` in lexicographic order of their canonical form.
pub fn enumerate_partitions(k: usize) -> Result<Vec<IntegerPartition>> {
    enumerate_partitions_bounded(k, &Bounds::default())
}

pub fn enumerate_partitions_bounded(k: usize, bounds: &Bounds) -> Result<Vec<IntegerPartition>> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    bound("partition weight", k, bounds.partition_weight)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(k, 1, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(
    remaining: usize,
    min_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<IntegerPartition>,
) {
    if remaining == 0 {
        out.push(IntegerPartition {
            parts: current.clone(),
        });
        return;
    }
    for part in min_part..=remaining {
        // A tail that cannot be completed with parts >= `part` is skipped.
        let rest = remaining - part;
        if rest != 0 && rest < part {
            continue;
        }
        current.push(part);
        fill_partitions(rest, part, current, out);
        current.pop();
    }
}

/// Evidence for refinement or for Zhu's order.
///
/// `assignment[j]` is the slot (part index of the coarser or lower
/// partition) that part `j` of the finer partition is grouped into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupingWitness {
    pub assignment: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intermediate: Option<IntegerPartition>,
}

impl GroupingWitness {
    fn slot_sums(&self, fine: &IntegerPartition, slots: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.assignment.len() != fine.part_count() {
            return None;
        }
        let mut sums = vec![0; slots];
        let mut counts = vec![0; slots];
        for (&part, &slot) in fine.parts().iter().zip(&self.assignment) {
            if slot >= slots {
                return None;
            }
            sums[slot] += part;
            counts[slot] += 1;
        }
        Some((sums, counts))
    }

    /// Group `i` of `fine` sums exactly to part `i` of `coarse`.
    pub fn proves_refinement(&self, fine: &IntegerPartition, coarse: &IntegerPartition) -> bool {
        match self.slot_sums(fine, coarse.part_count()) {
            Some((sums, _)) => sums == coarse.parts(),
            None => false,
        }
    }

    /// Groups of `hi` are non-empty, group `i` sums to at least part `i` of
    /// `lo`, and the recorded intermediate partition is the multiset of group sums.
    pub fn proves_leq(&self, lo: &IntegerPartition, hi: &IntegerPartition) -> bool {
        let Some((sums, counts)) = self.slot_sums(hi, lo.part_count()) else {
            return false;
        };
        let grouped =
            counts.iter().all(|&c| c > 0) && sums.iter().zip(lo.parts()).all(|(s, p)| s >= p);
        let intermediate_ok = match &self.intermediate {
            Some(mid) => IntegerPartition::new(sums).ok().as_ref() == Some(mid),
            None => false,
        };
        grouped && intermediate_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Exact(usize),
    AtLeast(usize),
}

/// Lexicographically first assignment of `parts` (in order) to slots such
/// that each slot meets its target. All targets are positive, so every slot
/// ends up non-empty.
fn first_grouping(parts: &[usize], targets: &[Target]) -> Option<Vec<usize>> {
    struct Search<'a> {
        parts: &'a [usize],
        targets: &'a [Target],
        suffix: Vec<usize>,
        failed: HashSet<(usize, Vec<usize>)>,
        sums: Vec<usize>,
        assignment: Vec<usize>,
    }

    impl Search<'_> {
        fn key(&self) -> Vec<usize> {
            self.sums
                .iter()
                .zip(self.targets)
                .map(|(&s, t)| match *t {
                    Target::Exact(_) => s,
                    Target::AtLeast(lo) => s.min(lo),
                })
                .collect()
        }

        fn deficit(&self) -> usize {
            self.sums
                .iter()
                .zip(self.targets)
                .map(|(&s, t)| match *t {
                    Target::Exact(x) | Target::AtLeast(x) => x.saturating_sub(s),
                })
                .sum()
        }

        fn run(&mut self, idx: usize) -> bool {
            if idx == self.parts.len() {
                return self.deficit() == 0;
            }
            if self.suffix[idx] < self.deficit() {
                return false;
            }
            let key = (idx, self.key());
            if self.failed.contains(&key) {
                return false;
            }
            let part = self.parts[idx];
            for slot in 0..self.targets.len() {
                if let Target::Exact(x) = self.targets[slot] {
                    if self.sums[slot] + part > x {
                        continue;
                    }
                }
                self.sums[slot] += part;
                self.assignment.push(slot);
                if self.run(idx + 1) {
                    return true;
                }
                self.assignment.pop();
                self.sums[slot] -= part;
            }
            self.failed.insert(key);
            false
        }
    }

    let mut suffix = vec![0; parts.len() + 1];
    for i in (0..parts.len()).rev() {
        suffix[i] = suffix[i + 1] + parts[i];
    }
    let mut search = Search {
        parts,
        targets,
        suffix,
        failed: HashSet::new(),
        sums: vec![0; targets.len()],
        assignment: Vec::with_capacity(parts.len()),
    };
    search.run(0).then_some(search.assignment)
}

/// Is `fine` obtained by subdividing the parts of `coarse`?
pub fn is_refinement(
    fine: &IntegerPartition,
    coarse: &IntegerPartition,
) -> Option<GroupingWitness> {
    if fine.weight() != coarse.weight() || fine.part_count() < coarse.part_count() {
        return None;
    }
    let targets: Vec<Target> = coarse.parts().iter().map(|&p| Target::Exact(p)).collect();
    first_grouping(fine.parts(), &targets).map(|assignment| GroupingWitness {
        assignment,
        intermediate: None,
    })
}

/// Zhu's order: `lo <= hi` iff `hi` refines some partition obtained from
/// `lo` by increasing parts.
///
/// Decided as: the parts of `hi` split into `part_count(lo)` non-empty
/// groups with group `i` summing to at least part `i` of `lo`. The returned
/// witness uses the smallest slot sums in lexicographic slot order, then the
/// first assignment achieving them.
pub fn leq(lo: &IntegerPartition, hi: &IntegerPartition) -> Option<GroupingWitness> {
    if lo.weight() > hi.weight() || lo.part_count() > hi.part_count() {
        return None;
    }
    let mut targets: Vec<Target> = lo.parts().iter().map(|&p| Target::AtLeast(p)).collect();
    first_grouping(hi.parts(), &targets)?;
    for i in 0..targets.len() {
        let floor = lo.parts()[i];
        let sum = (floor..=hi.weight())
            .find(|&s| {
                let mut trial = targets.clone();
                trial[i] = Target::Exact(s);
                first_grouping(hi.parts(), &trial).is_some()
            })
            .expect("a feasible grouping fixes some sum for every slot");
        targets[i] = Target::Exact(sum);
    }
    let assignment = first_grouping(hi.parts(), &targets)?;
    let sums = targets
        .iter()
        .map(|t| match *t {
            Target::Exact(s) | Target::AtLeast(s) => s,
        })
        .collect();
    Some(GroupingWitness {
        assignment,
        intermediate: Some(IntegerPartition::new(sums).expect("slot sums are positive")),
    })
}

/// Covering relation of the refinement order on the partitions of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hasse {
    pub nodes: Vec<IntegerPartition>,
    /// `(coarse, fine)` node indices.
    pub edges: Vec<(usize, usize)>,
}

impl Hasse {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph refinement {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{node}\"];\n"));
        }
        for &(coarse, fine) in &self.edges {
            out.push_str(&format!("  n{coarse} -> n{fine};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn has_edge(&self, coarse: &IntegerPartition, fine: &IntegerPartition) -> bool {
        let idx = |p: &IntegerPartition| self.nodes.iter().position(|n| n == p);
        match (idx(coarse), idx(fine)) {
            (Some(c), Some(f)) => self.edges.contains(&(c, f)),
            _ => false,
        }
    }
}

pub fn refinement_hasse(k: usize) -> Result<Hasse> {
    refinement_hasse_bounded(k, &Bounds::default())
}

pub fn refinement_hasse_bounded(k: usize, bounds: &Bounds) -> Result<Hasse> {
    bound("hasse weight", k, bounds.hasse_weight)?;
    let nodes = enumerate_partitions_bounded(k, bounds)?;
    let n = nodes.len();
    // refines[f][c]: node f is a proper refinement of node c
    let refines: Vec<Vec<bool>> = (0..n)
        .map(|f| {
            (0..n)
                .map(|c| f != c && is_refinement(&nodes[f], &nodes[c]).is_some())
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for c in 0..n {
        for f in 0..n {
            if refines[f][c] && !(0..n).any(|m| refines[f][m] && refines[m][c]) {
                edges.push((c, f));
            }
        }
    }
    Ok(Hasse { nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let lam = p("1*4,2");
        assert_eq!(lam.parts(), &[1, 1, 1, 1, 2]);
        assert_eq!(lam.weight(), 6);
        assert_eq!(p("3").parts(), &[3]);
        assert_eq!(p("2,1,1").parts(), &[1, 1, 2]);
        assert_eq!(p(" 2 , 1*2 ").parts(), &[1, 1, 2]);
        assert_eq!(p("{1,2}").parts(), &[1, 2]);
    }

    #[test]
    fn parse_errors_name_the_term() {
        for (text, term) in [
            ("1,x", "x"),
            ("0,2", "0"),
            ("2*0", "2*0"),
            ("1,,2", ""),
            ("-1", "-1"),
        ] {
            match parse_partition(text) {
                Err(Error::Parse { term: t, .. }) => assert_eq!(t, term, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(parse_partition("").is_err());
        assert!(parse_partition("   ").is_err());
    }

    #[test]
    fn text_forms() {
        let lam = p("2,1,1,1,1");
        assert_eq!(lam.to_text(), "1,1,1,1,2");
        assert_eq!(lam.to_compact_text(), "1*4,2");
        assert_eq!(lam.to_string(), "{1,1,1,1,2}");
        assert_eq!(p(&lam.to_compact_text()), lam);
        assert_eq!(
            format_partition(&p(&format_partition(&lam))),
            format_partition(&lam)
        );
    }

    #[test]
    fn enumerate_small() {
        let four: Vec<String> = enumerate_partitions(4)
            .unwrap()
            .iter()
            .map(|q| q.to_text())
            .collect();
        assert_eq!(four, ["1,1,1,1", "1,1,2", "1,3", "2,2", "4"]);
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p("1")]);
        let seven = enumerate_partitions(7).unwrap();
        assert_eq!(seven.len(), 15);
        assert!(seven.contains(&p("1,1,2,3")));
        assert!(matches!(
            enumerate_partitions(31),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn refinement_examples() {
        let w = is_refinement(&p("1,1,3"), &p("2,3")).unwrap();
        assert_eq!(w.assignment, vec![0, 0, 1]);
        assert!(w.proves_refinement(&p("1,1,3"), &p("2,3")));

        let lam = p("1,2,2,4");
        let id = is_refinement(&lam, &lam).unwrap();
        assert_eq!(id.assignment, vec![0, 1, 2, 3]);

        assert!(is_refinement(&p("2,2"), &p("1,3")).is_none());
        assert!(is_refinement(&p("1,1"), &p("3")).is_none());
    }

    #[test]
    fn leq_examples() {
        let w = leq(&p("3,3"), &p("1,1,2,4")).unwrap();
        assert_eq!(w.intermediate, Some(p("3,5")));
        assert!(w.proves_leq(&p("3,3"), &p("1,1,2,4")));

        let lam = p("1,3,3");
        assert!(leq(&lam, &lam).is_some());
        assert!(leq(&p("1,1,2"), &p("2,2")).is_none());
        assert!(leq(&p("4"), &p("1,1")).is_none());
    }

    #[test]
    fn tampered_witness_rejected() {
        let mut w = leq(&p("3,3"), &p("1,1,2,4")).unwrap();
        w.assignment[3] = 0;
        assert!(!w.proves_leq(&p("3,3"), &p("1,1,2,4")));
        let mut r = is_refinement(&p("1,1,3"), &p("2,3")).unwrap();
        r.assignment = vec![0, 1, 1];
        assert!(!r.proves_refinement(&p("1,1,3"), &p("2,3")));
    }

    #[test]
    fn hasse_examples() {
        let h3 = refinement_hasse(3).unwrap();
        assert_eq!(h3.edges.len(), 2);
        assert!(h3.has_edge(&p("3"), &p("1,2")));
        assert!(h3.has_edge(&p("1,2"), &p("1,1,1")));

        assert!(refinement_hasse(1).unwrap().edges.is_empty());

        let h4 = refinement_hasse(4).unwrap();
        assert!(h4.has_edge(&p("2,2"), &p("1,1,2")));
        assert!(!h4.has_edge(&p("2,2"), &p("1,1,1,1")));
        assert!(h4.to_dot().contains("label=\"{2,2}\""));
        assert!(refinement_hasse(13).is_err());
    }

    #[test]
    fn serde_is_canonical_array() {
        let lam: IntegerPartition = serde_json::from_str("[2,1,1]").unwrap();
        assert_eq!(serde_json::to_string(&lam).unwrap(), "[1,1,2]");
        assert!(serde_json::from_str::<IntegerPartition>("[0,1]").is_err());
        assert!(serde_json::from_str::<IntegerPartition>("[]").is_err());
    }
}
