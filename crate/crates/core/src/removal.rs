//! Triangle removal: partition, clean, count.
//!
//! The clean step partitions at `ε/4` and deletes whole blocks of edges
//! between pairs of parts: irregular pairs first, then pairs of density
//! below `ε/2`, then pairs touching a part smaller than `ε|V|/(4|P|)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{count_edges_between, edge, edge_density, EdgeSet, UGraph, VertexSet};
use crate::partition::VertexPartition;
use crate::rational::{ensure_positive, int, Rational};
use crate::refinement::szemeredi_partition_with;
use crate::regularity::{is_regular_partition_with, CheckerConfig};
use crate::triangles::{
    counting_lemma_bound_with, decent_graph, dense_graph, regular_graph_with, triangle_set, CountingCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanParameters {
    pub epsilon: Rational,
    /// `ε/4`, the regularity parameter of the partition.
    pub partition_epsilon: Rational,
    /// `ε/2`.
    pub density_floor: Rational,
    /// `ε |V| / (4 |P|)`.
    pub size_floor: Rational,
}

/// Edges deleted for one reason, against that reason's share of `ε|V|²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassBudget {
    pub removed: usize,
    pub budget: Rational,
}

impl ClassBudget {
    pub fn holds(&self) -> bool {
        int(self.removed) <= self.budget
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanResult {
    pub cleaned: UGraph,
    pub removed_irregular: EdgeSet,
    pub removed_sparse: EdgeSet,
    pub removed_small: EdgeSet,
    pub parameters: CleanParameters,
    pub partition_used: VertexPartition,
    pub refinement_rounds: u64,
    /// Budgets for the irregular, sparse and small classes, then the total.
    pub budgets: [ClassBudget; 4],
}

impl CleanResult {
    pub fn removed_count(&self) -> usize {
        self.removed_irregular.len() + self.removed_sparse.len() + self.removed_small.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Irregular,
    Sparse,
    Small,
}

/// Cleans `G` for `ε ∈ (0, 1)`. Each removal class is checked against its
/// budget (`ε/4`, `ε/2`, `ε/4` of `|V|²`) and the cleaned graph against the
/// regular, dense and decent predicates; a failure is reported as
/// [`Error::InvariantViolated`].
pub fn clean_graph(g: &UGraph, eps: &Rational) -> Result<CleanResult> {
    clean_graph_with(g, eps, &CheckerConfig::default())
}

pub fn clean_graph_with(g: &UGraph, eps: &Rational, config: &CheckerConfig) -> Result<CleanResult> {
    check_clean_arguments(g, eps)?;
    let srl = szemeredi_partition_with(g, &(eps / int(4)), None, config)?;
    clean_with_partition(g, eps, srl.partition, srl.iterations, config)
}

/// Cleans `G` along a caller-supplied partition, which must be
/// `ε/4`-regular.
pub fn clean_graph_on(g: &UGraph, eps: &Rational, p: VertexPartition, config: &CheckerConfig) -> Result<CleanResult> {
    check_clean_arguments(g, eps)?;
    clean_with_partition(g, eps, p, 0, config)
}

fn check_clean_arguments(g: &UGraph, eps: &Rational) -> Result<()> {
    ensure_positive(eps)?;
    if *eps >= Rational::one() {
        return Err(Error::EpsilonOutOfRange(eps.clone()));
    }
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

fn clean_with_partition(
    g: &UGraph,
    eps: &Rational,
    p: VertexPartition,
    refinement_rounds: u64,
    config: &CheckerConfig,
) -> Result<CleanResult> {
    let n = g.vertex_count();
    let partition_epsilon = eps / int(4);
    let regularity = is_regular_partition_with(&partition_epsilon, g, &p, config)?;
    if !regularity.regular {
        return Err(Error::HypothesisFailed("partition is not epsilon/4-regular".into()));
    }
    let parts: Vec<&VertexSet> = p.iter().collect();
    let parameters = CleanParameters {
        epsilon: eps.clone(),
        partition_epsilon: partition_epsilon.clone(),
        density_floor: eps / int(2),
        size_floor: eps * int(n) / int(4 * parts.len()),
    };

    let mut removed = [EdgeSet::new(), EdgeSet::new(), EdgeSet::new()];
    for i in 0..parts.len() {
        for j in i..parts.len() {
            let class = if regularity.irregular.binary_search(&(i, j)).is_ok() {
                Some(Class::Irregular)
            } else if edge_density(parts[i], parts[j], g) < parameters.density_floor {
                Some(Class::Sparse)
            } else if int(parts[i].len().min(parts[j].len())) < parameters.size_floor {
                Some(Class::Small)
            } else {
                None
            };
            if let Some(class) = class {
                removed[class as usize].extend(block_edges(parts[i], parts[j], g));
            }
        }
    }
    let [removed_irregular, removed_sparse, removed_small] = removed;

    let n2 = int(n * n);
    let budgets = [
        ClassBudget { removed: removed_irregular.len(), budget: eps * &n2 / int(4) },
        ClassBudget { removed: removed_sparse.len(), budget: eps * &n2 / int(2) },
        ClassBudget { removed: removed_small.len(), budget: eps * &n2 / int(4) },
        ClassBudget {
            removed: removed_irregular.len() + removed_sparse.len() + removed_small.len(),
            budget: eps * &n2,
        },
    ];
    for (budget, name) in budgets.iter().zip(["irregular", "sparse", "small-part", "total"]) {
        if !budget.holds() {
            return Err(Error::InvariantViolated(format!(
                "{name} removals {} exceed {}",
                budget.removed, budget.budget
            )));
        }
    }

    let all_removed: EdgeSet = removed_irregular.iter().chain(&removed_sparse).chain(&removed_small).copied().collect();
    let cleaned = g.without_edges(&all_removed);
    if !regular_graph_with(&p, &cleaned, &partition_epsilon, config)? {
        return Err(Error::InvariantViolated("cleaned graph has an irregular pair".into()));
    }
    if !dense_graph(&p, &cleaned, &parameters.density_floor) {
        return Err(Error::InvariantViolated("cleaned graph has a sparse non-empty pair".into()));
    }
    if !decent_graph(&p, &cleaned, &parameters.size_floor) {
        return Err(Error::InvariantViolated("cleaned graph has an edge at a small part".into()));
    }

    Ok(CleanResult {
        cleaned,
        removed_irregular,
        removed_sparse,
        removed_small,
        parameters,
        partition_used: p,
        refinement_rounds,
        budgets,
    })
}

fn block_edges<'a>(r: &'a VertexSet, s: &'a VertexSet, g: &'a UGraph) -> impl Iterator<Item = (usize, usize)> + 'a {
    r.iter().flat_map(move |&x| g.neighbors(x).filter(|y| s.contains(y)).map(move |y| edge(x, y)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalResult {
    pub epsilon: Rational,
    pub cleaned: UGraph,
    pub removed: usize,
    /// `ε |V|²`.
    pub bound: Rational,
    pub original_triangles: usize,
    pub triangle_free: bool,
    /// Smallest positive counting bound over part triples whose three pairs
    /// all keep edges, divided by `6|V|³`. Absent when no such triple exists.
    pub delta: Option<Rational>,
    /// Counting-lemma certificate on the parts of the first triangle left in
    /// the cleaned graph.
    pub certificate: Option<CountingCertificate>,
    /// Absent for `ε ≥ 1`, where every edge is deleted.
    pub clean: Option<CleanResult>,
}

impl RemovalResult {
    pub fn within_bound(&self) -> bool {
        int(self.removed) <= self.bound
    }

    /// `|triangles(G)| < δ|V|³`: few enough triangles that the cleaned graph
    /// must be triangle-free.
    pub fn guarantee_applies(&self) -> bool {
        let n = self.cleaned.vertex_count();
        match &self.delta {
            Some(delta) => int(self.original_triangles) < delta * int(n * n * n),
            None => true,
        }
    }

    /// A leftover triangle comes with a counting certificate whose positive
    /// bound shows the original graph had at least `δ|V|³` triangles.
    pub fn contrapositive_holds(&self) -> bool {
        if self.triangle_free {
            return true;
        }
        let (Some(cert), Some(delta)) = (&self.certificate, &self.delta) else {
            return false;
        };
        let n = self.cleaned.vertex_count();
        cert.hypotheses_ok
            && cert.bound > Rational::zero()
            && cert.holds()
            && int(self.original_triangles) * int(6) >= int(cert.actual)
            && int(self.original_triangles) >= delta * int(n * n * n)
    }
}

/// Removes at most `ε|V|²` edges so that the result is triangle-free
/// whenever `G` has fewer than `δ|V|³` triangles.
pub fn triangle_removal(g: &UGraph, eps: &Rational) -> Result<RemovalResult> {
    triangle_removal_with(g, eps, &CheckerConfig::default())
}

pub fn triangle_removal_with(g: &UGraph, eps: &Rational, config: &CheckerConfig) -> Result<RemovalResult> {
    ensure_positive(eps)?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let original_triangles = triangle_set(g).len();
    let bound = eps * int(n * n);
    if *eps >= Rational::one() {
        return Ok(RemovalResult {
            epsilon: eps.clone(),
            cleaned: UGraph::edgeless(g.vertices().clone()),
            removed: g.edge_count(),
            bound,
            original_triangles,
            triangle_free: true,
            delta: None,
            certificate: None,
            clean: None,
        });
    }

    let clean = clean_graph_with(g, eps, config)?;
    let cleaned = clean.cleaned.clone();
    let parts: Vec<&VertexSet> = clean.partition_used.iter().collect();
    let eps_p = &clean.parameters.partition_epsilon;
    let delta = instance_delta(&parts, &cleaned, eps_p, n);

    let leftover = triangle_set(&cleaned);
    let certificate = match leftover.iter().next() {
        Some(&[x, y, z]) => {
            let part = |v: usize| clean.partition_used.part_of(v).expect("partition covers every vertex");
            Some(counting_lemma_bound_with(part(x), part(y), part(z), &cleaned, eps_p, config)?)
        }
        None => None,
    };
    Ok(RemovalResult {
        epsilon: eps.clone(),
        removed: clean.removed_count(),
        bound,
        original_triangles,
        triangle_free: leftover.is_empty(),
        delta,
        certificate,
        cleaned,
        clean: Some(clean),
    })
}

// The cleaned graph is regular and dense on every non-empty block, so the
// counting bound of each triple of pairwise-connected parts is positive.
fn instance_delta(parts: &[&VertexSet], g: &UGraph, eps: &Rational, n: usize) -> Option<Rational> {
    let k = parts.len();
    let connected: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| count_edges_between(parts[i], parts[j], g) > 0).collect()).collect();
    let density: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| edge_density(parts[i], parts[j], g)).collect()).collect();
    let factor = Rational::one() - eps * int(2);
    let mut best: Option<Rational> = None;
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                if !(connected[a][b] && connected[a][c] && connected[b][c]) {
                    continue;
                }
                let bound = &factor
                    * (&density[a][b] - eps)
                    * (&density[a][c] - eps)
                    * (&density[b][c] - eps)
                    * int(parts[a].len() * parts[b].len() * parts[c].len());
                if bound > Rational::zero() && best.as_ref().is_none_or(|m| bound < *m) {
                    best = Some(bound);
                }
            }
        }
    }
    best.map(|m| m / int(6 * n * n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, generate, random, GraphKind};
    use crate::rational::ratio;
    use crate::triangles::triangle_free;

    #[test]
    fn edgeless_needs_nothing() {
        let g = UGraph::edgeless((0..6).collect());
        let c = clean_graph(&g, &ratio(1, 2)).unwrap();
        assert_eq!(c.removed_count(), 0);
        assert_eq!(c.cleaned, g);
    }

    #[test]
    fn complete_graph_stays_within_budget() {
        for n in 3..=7 {
            let g = complete(n).unwrap();
            let c = clean_graph(&g, &ratio(1, 2)).unwrap();
            assert!(c.budgets.iter().all(ClassBudget::holds));
            assert!(c.removed_sparse.is_empty());
            assert!(int(c.removed_count()) <= ratio(1, 2) * int(n * n));
        }
    }

    #[test]
    fn sparse_pair_is_removed_exactly() {
        // A perfect matching between two 9-sets is 9/40-regular: any 3×3
        // window holds at most 3 of its edges, density 1/3 against 1/9.
        let g = UGraph::on_range(18, (0..9).map(|i| (i, i + 9))).unwrap();
        let halves: crate::partition::PartSet = [(0..9).collect(), (9..18).collect()].into_iter().collect();
        let p = VertexPartition::from_parts(halves).unwrap();
        let c = clean_graph_on(&g, &ratio(9, 10), p, &CheckerConfig::default()).unwrap();
        assert_eq!(c.removed_sparse, *g.edges());
        assert!(c.removed_irregular.is_empty());
        assert!(c.removed_small.is_empty());
        assert_eq!(c.cleaned.edge_count(), 0);
    }

    #[test]
    fn supplied_partition_must_be_regular() {
        let g = UGraph::on_range(4, [(0, 2), (1, 3)]).unwrap();
        let p = VertexPartition::from_parts([[0, 1].into(), [2, 3].into()].into_iter().collect()).unwrap();
        assert!(matches!(
            clean_graph_on(&g, &ratio(1, 2), p, &CheckerConfig::default()),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn large_epsilon_deletes_everything() {
        let g = complete(5).unwrap();
        let r = triangle_removal(&g, &ratio(2, 1)).unwrap();
        assert_eq!(r.removed, 10);
        assert!(r.within_bound());
        assert_eq!(r.cleaned.edge_count(), 0);
        assert!(r.triangle_free);
    }

    #[test]
    fn triangle_free_input_stays_triangle_free() {
        let g = generate(&GraphKind::BipartiteHalf(8)).unwrap();
        let r = triangle_removal(&g, &ratio(1, 2)).unwrap();
        assert!(r.triangle_free);
        assert!(r.within_bound());
    }

    #[test]
    fn sparse_random_graph() {
        let g = random(12, &ratio(1, 6), 7).unwrap();
        let r = triangle_removal(&g, &ratio(1, 2)).unwrap();
        assert!(r.within_bound());
        if r.guarantee_applies() {
            assert!(r.triangle_free);
        }
        assert!(r.contrapositive_holds());
        assert!(triangle_free(&r.cleaned) == r.triangle_free);
    }

    #[test]
    fn rejects_bad_epsilon() {
        let g = complete(3).unwrap();
        assert!(matches!(clean_graph(&g, &ratio(1, 1)), Err(Error::EpsilonOutOfRange(_))));
        assert!(matches!(triangle_removal(&g, &ratio(0, 1)), Err(Error::NonPositiveEpsilon(_))));
    }
}
