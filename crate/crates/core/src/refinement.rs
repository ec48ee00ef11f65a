//! The energy-increment iteration: split every irregular pair along its
//! witness, take the common refinement, repeat until the partition is
//! ε-regular.

use crate::energy::{energy_graph_partitions, energy_graph_subsets, mean_square_density};
use crate::error::{Error, Result};
use crate::graph::{UGraph, VertexSet};
use crate::partition::{common_refinement, p2, PartSet, VertexPartition};
use crate::rational::{ensure_positive, int, iteration_budget, Rational};
use crate::regularity::{pair_verdicts, summarize, CheckerConfig, PartitionRegularity, Witness};
use crate::tower::{tower_bound_from, TowerBound, DEFAULT_DIGIT_LIMIT};

/// Splits every part along the witnesses of the irregular pairs it belongs
/// to. The caller must pass a partition that is not ε-regular.
///
/// Each unordered irregular pair `{R, S}` is examined once: its witness
/// `(A, B)` for `(R, S)` contributes `p2(A, R)` to `R` and `p2(B, S)` to `S`
/// (both to `R` when `R = S`). A part therefore collects at most `k + 1`
/// two-way splits and ends up in at most `2^(k+1)` pieces.
pub fn refine_step(g: &UGraph, p: &VertexPartition, eps: &Rational) -> Result<VertexPartition> {
    refine_step_with(g, p, eps, &CheckerConfig::default())
}

pub fn refine_step_with(
    g: &UGraph,
    p: &VertexPartition,
    eps: &Rational,
    config: &CheckerConfig,
) -> Result<VertexPartition> {
    let verdicts = pair_verdicts(eps, g, p, config)?;
    if summarize(eps, g, p, &verdicts)?.regular {
        return Err(Error::AlreadyRegular);
    }
    split_irregular(p, &verdicts)
}

fn split_irregular(
    p: &VertexPartition,
    verdicts: &[((usize, usize), crate::regularity::RegularityOutcome)],
) -> Result<VertexPartition> {
    let parts: Vec<&VertexSet> = p.iter().collect();
    let mut splits: Vec<Vec<VertexPartition>> = vec![Vec::new(); parts.len()];
    for ((i, j), outcome) in verdicts {
        if let Some(Witness { a, b, .. }) = outcome.witness() {
            splits[*i].push(VertexPartition::new(parts[*i].clone(), p2(a, parts[*i])?)?);
            splits[*j].push(VertexPartition::new(parts[*j].clone(), p2(b, parts[*j])?)?);
        }
    }
    let mut refined = PartSet::new();
    for (part, family) in parts.iter().zip(&splits) {
        refined.extend(common_refinement(part, family)?.parts().iter().cloned());
    }
    VertexPartition::new(p.ground().clone(), refined)
}

/// Outcome of [`szemeredi_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrlResult {
    pub epsilon: Rational,
    pub partition: VertexPartition,
    pub iterations: u64,
    /// Mean square density of the starting partition and of every refinement.
    pub energy_trajectory: Vec<Rational>,
    /// Part-count bound for the starting size and this ε.
    pub part_bound: TowerBound,
    pub certified: bool,
    pub regularity: PartitionRegularity,
}

/// Refines `initial` (default `{V(G)}`) until it is ε-regular.
///
/// Every round raises the energy by at least `ε⁵` and the energy never
/// exceeds 1, so more than `⌈ε⁻⁵⌉` rounds is reported as an internal error.
pub fn szemeredi_partition(g: &UGraph, eps: &Rational, initial: Option<VertexPartition>) -> Result<SrlResult> {
    szemeredi_partition_with(g, eps, initial, &CheckerConfig::default())
}

pub fn szemeredi_partition_with(
    g: &UGraph,
    eps: &Rational,
    initial: Option<VertexPartition>,
    config: &CheckerConfig,
) -> Result<SrlResult> {
    ensure_positive(eps)?;
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut partition = initial.unwrap_or_else(|| VertexPartition::trivial(g.vertices().clone()));
    if partition.ground() != g.vertices() {
        return Err(Error::NotAPartition("initial partition does not cover the graph's vertices".into()));
    }
    let budget = iteration_budget(eps)?;
    let part_bound = tower_bound_from(partition.len(), eps, DEFAULT_DIGIT_LIMIT)?;
    let mut energy_trajectory = vec![mean_square_density(g, partition.parts())?];
    let mut iterations = 0u64;
    loop {
        let verdicts = pair_verdicts(eps, g, &partition, config)?;
        let regularity = summarize(eps, g, &partition, &verdicts)?;
        if regularity.regular {
            return Ok(SrlResult {
                epsilon: eps.clone(),
                partition,
                iterations,
                energy_trajectory,
                part_bound,
                certified: true,
                regularity,
            });
        }
        if iterations == budget {
            return Err(Error::IterationBudgetExceeded(budget));
        }
        partition = split_irregular(&partition, &verdicts)?;
        energy_trajectory.push(mean_square_density(g, partition.parts())?);
        iterations += 1;
    }
}

/// Both sides of the energy boost inequality for one irregular pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyBoost {
    /// `Σ_{A∈p2(U',U)} Σ_{B∈p2(W',W)} energy(A, B)`.
    pub split_energy: Rational,
    /// `energy(U, W)`.
    pub base_energy: Rational,
    /// `ε⁴ |U| |W| / |V(G)|²`.
    pub required_gain: Rational,
}

impl EnergyBoost {
    pub fn holds(&self) -> bool {
        self.split_energy >= &self.base_energy + &self.required_gain
    }
}

/// Evaluates the energy boost for the pair `(U, W)` split along `witness`.
pub fn energy_boost(g: &UGraph, us: &VertexSet, ws: &VertexSet, witness: &Witness, eps: &Rational) -> Result<EnergyBoost> {
    let split_u = p2(&witness.a, us)?;
    let split_w = p2(&witness.b, ws)?;
    let n = g.vertex_count();
    let eps4 = num_traits::pow(eps.clone(), 4);
    Ok(EnergyBoost {
        split_energy: energy_graph_partitions(g, &split_u, &split_w)?,
        base_energy: energy_graph_subsets(us, ws, g)?,
        required_gain: eps4 * int(us.len() * ws.len()) / int(n * n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind};
    use crate::partition::refines;
    use crate::rational::ratio;
    use crate::regularity::is_regular_partition;

    fn set(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn single_irregular_pair_splits_only_its_members() {
        // Perfect matching between {0,1} and {2,3}, plus an isolated part {4,5}.
        let g = UGraph::on_range(6, [(0, 2), (1, 3)]).unwrap();
        let p = VertexPartition::from_parts([set(&[0, 1]), set(&[2, 3]), set(&[4, 5])].into_iter().collect()).unwrap();
        // Irregular mass 2·2·2 = 8 exceeds ε·36 only for ε < 2/9.
        let eps = ratio(1, 5);
        let verdict = is_regular_partition(&eps, &g, &p).unwrap();
        assert_eq!(verdict.irregular, vec![(0, 1), (1, 0)]);
        assert!(!verdict.regular);

        let q = refine_step(&g, &p, &eps).unwrap();
        let expected: PartSet = [set(&[0]), set(&[1]), set(&[2]), set(&[3]), set(&[4, 5])].into_iter().collect();
        assert_eq!(q.parts(), &expected);
        assert!(refines(g.vertices(), q.parts(), p.parts()));
        let gain = mean_square_density(&g, q.parts()).unwrap() - mean_square_density(&g, p.parts()).unwrap();
        assert!(gain >= num_traits::pow(eps, 5));
    }

    #[test]
    fn regular_partition_is_rejected() {
        let g = generate(&GraphKind::Complete(4)).unwrap();
        let p = VertexPartition::discrete(g.vertices().clone());
        assert_eq!(refine_step(&g, &p, &ratio(1, 4)), Err(Error::AlreadyRegular));
    }

    #[test]
    fn trivial_cases_need_no_iteration() {
        let g = generate(&GraphKind::Random { n: 8, p: ratio(1, 2), seed: 1 }).unwrap();
        let r = szemeredi_partition(&g, &ratio(1, 1), None).unwrap();
        assert_eq!((r.iterations, r.partition.len()), (0, 1));
        // Pairs inside K_n reach density (s−1)/s on s-sets, within 1/4 of
        // (n−1)/n once n ≥ 12.
        for g in [generate(&GraphKind::Complete(12)).unwrap(), UGraph::edgeless((0..7).collect())] {
            let r = szemeredi_partition(&g, &ratio(1, 4), None).unwrap();
            assert_eq!(r.iterations, 0);
            assert!(r.certified);
        }
    }

    #[test]
    fn small_complete_graph_needs_refining() {
        let g = generate(&GraphKind::Complete(3)).unwrap();
        let r = szemeredi_partition(&g, &ratio(1, 4), None).unwrap();
        assert!(r.iterations > 0);
        assert!(r.certified);
        assert!(is_regular_partition(&ratio(1, 4), &g, &r.partition).unwrap().regular);
    }

    #[test]
    fn bipartite_half_is_certified_quickly() {
        for n in [8, 12, 16] {
            let g = generate(&GraphKind::BipartiteHalf(n)).unwrap();
            let r = szemeredi_partition(&g, &ratio(1, 4), None).unwrap();
            assert!(r.certified);
            assert!(r.iterations <= 3, "n = {n}: {} rounds", r.iterations);
            assert!(r.part_bound.admits(r.partition.len()));
            assert!(r.energy_trajectory.windows(2).all(|w| w[1] >= &w[0] + num_traits::pow(ratio(1, 4), 5)));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let g = UGraph::edgeless(VertexSet::new());
        assert_eq!(szemeredi_partition(&g, &ratio(1, 4), None), Err(Error::EmptyGraph));
        let h = UGraph::edgeless(set(&[0, 1]));
        assert!(matches!(szemeredi_partition(&h, &ratio(0, 1), None), Err(Error::NonPositiveEpsilon(_))));
        let wrong = VertexPartition::trivial(set(&[0]));
        assert!(szemeredi_partition(&h, &ratio(1, 4), Some(wrong)).is_err());
    }

    #[test]
    fn boost_holds_on_matching_witness() {
        let g = UGraph::on_range(4, [(0, 2), (1, 3)]).unwrap();
        let (u, w) = (set(&[0, 1]), set(&[2, 3]));
        let eps = ratio(1, 4);
        let outcome = crate::regularity::check_regular_pair(&u, &w, &g, &eps).unwrap();
        let boost = energy_boost(&g, &u, &w, outcome.witness().unwrap(), &eps).unwrap();
        // Split energy: two unit-density singleton pairs, 2/16; base: 4·(1/2)²/16.
        assert_eq!(boost.split_energy, ratio(1, 8));
        assert_eq!(boost.base_energy, ratio(1, 16));
        assert!(boost.holds());
    }
}
