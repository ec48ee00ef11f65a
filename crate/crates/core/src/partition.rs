//! Vertex partitions as plain sets of sets, and the refinement operations
//! the energy argument is built from.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

pub type PartSet = BTreeSet<VertexSet>;

/// Pairwise-disjoint, non-empty parts whose union is `ground`.
///
/// Parts iterate in lexicographic order of their sorted elements, which for
/// disjoint sets is the same as ordering by minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    ground: VertexSet,
    parts: PartSet,
}

impl VertexPartition {
    pub fn new(ground: VertexSet, parts: PartSet) -> Result<Self> {
        if let Some(reason) = partition_defect(&ground, &parts) {
            return Err(Error::NotAPartition(reason));
        }
        Ok(VertexPartition { ground, parts })
    }

    /// Derives the ground set from the parts.
    pub fn from_parts(parts: PartSet) -> Result<Self> {
        let ground = parts.iter().flatten().copied().collect();
        Self::new(ground, parts)
    }

    /// `{V}`, or the empty partition when `V` is empty.
    pub fn trivial(ground: VertexSet) -> Self {
        let parts = if ground.is_empty() { PartSet::new() } else { [ground.clone()].into_iter().collect() };
        VertexPartition { ground, parts }
    }

    pub fn discrete(ground: VertexSet) -> Self {
        let parts = ground.iter().map(|&v| [v].into_iter().collect()).collect();
        VertexPartition { ground, parts }
    }

    pub fn ground(&self) -> &VertexSet {
        &self.ground
    }

    pub fn parts(&self) -> &PartSet {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.parts.iter()
    }

    pub fn part_of(&self, v: usize) -> Option<&VertexSet> {
        self.parts.iter().find(|p| p.contains(&v))
    }

    /// Map from vertex to the position of its part in iteration order.
    pub fn labels(&self) -> BTreeMap<usize, usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, part)| part.iter().map(move |&v| (v, i)))
            .collect()
    }
}

fn partition_defect(ground: &VertexSet, parts: &PartSet) -> Option<String> {
    let mut seen = VertexSet::new();
    for part in parts {
        if part.is_empty() {
            return Some("empty part".into());
        }
        for &v in part {
            if !seen.insert(v) {
                return Some(format!("vertex {v} lies in two parts"));
            }
            if !ground.contains(&v) {
                return Some(format!("vertex {v} is outside the ground set"));
            }
        }
    }
    if seen.len() != ground.len() {
        let missing = ground.difference(&seen).next().copied().unwrap_or_default();
        return Some(format!("vertex {missing} is not covered"));
    }
    None
}

pub fn is_partition(ground: &VertexSet, parts: &PartSet) -> bool {
    partition_defect(ground, parts).is_none()
}

/// Both partition `ground`, and every part of `finer` sits inside a part of `coarser`.
pub fn refines(ground: &VertexSet, finer: &PartSet, coarser: &PartSet) -> bool {
    is_partition(ground, finer)
        && is_partition(ground, coarser)
        && finer.iter().all(|q| coarser.iter().any(|p| q.is_subset(p)))
}

/// All non-empty intersections `A₁ ∩ … ∩ Aₘ` with `Aᵢ` drawn from the i-th
/// member. An empty family yields `{V}`.
pub fn common_refinement(ground: &VertexSet, family: &[VertexPartition]) -> Result<VertexPartition> {
    for member in family {
        if member.ground() != ground {
            return Err(Error::NotAPartition("family member does not partition the ground set".into()));
        }
    }
    // Two vertices share an intersection iff they share a part in every member.
    let labels: Vec<BTreeMap<usize, usize>> = family.iter().map(VertexPartition::labels).collect();
    let mut classes: BTreeMap<Vec<usize>, VertexSet> = BTreeMap::new();
    for &v in ground {
        let signature = labels.iter().map(|l| l[&v]).collect();
        classes.entry(signature).or_default().insert(v);
    }
    Ok(VertexPartition { ground: ground.clone(), parts: classes.into_values().collect() })
}

/// The two-way split of `y` along `x`: `{x, y∖x}` when `x` is a proper
/// non-empty subset, otherwise `{y}`. Never produces an empty part.
pub fn p2(x: &VertexSet, y: &VertexSet) -> Result<PartSet> {
    if y.is_empty() {
        return Err(Error::EmptySet);
    }
    if !x.is_subset(y) {
        return Err(Error::NotSubset(format!("{x:?}"), format!("{y:?}")));
    }
    if x.is_empty() || x.len() == y.len() {
        return Ok([y.clone()].into_iter().collect());
    }
    Ok([x.clone(), y.difference(x).copied().collect()].into_iter().collect())
}
