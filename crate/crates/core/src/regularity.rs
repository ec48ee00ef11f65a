//! Exact ε-regularity of vertex-set pairs and of partitions.
//!
//! A pair `(X, Y)` is ε-regular when every `A ⊆ X`, `B ⊆ Y` with
//! `|A| ≥ ε|X|` and `|B| ≥ ε|Y|` has `|d(A,B) − d(X,Y)| ≤ ε`. Subsets are
//! non-strict and `X`, `Y` may overlap or coincide.
//!
//! The checker enumerates every eligible `A` but never enumerates `B`: for a
//! fixed `A`, `e(A, B)` is the sum over `y ∈ B` of `|N(y) ∩ A|`, so among
//! sets of size `b` the extreme densities come from the `b` vertices of
//! highest and of lowest degree into `A`. That makes the cost
//! `2^|X| · |Y| log |Y|` and keeps the answer exact.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{UGraph, VertexSet};
use crate::partition::VertexPartition;
use crate::rational::{ceil_nonneg, ensure_positive, int, Rational};

pub const DEFAULT_SIZE_CAP: usize = 22;

/// Hard ceiling on [`CheckerConfig::size_cap`]; subsets are `u64` masks.
pub const MAX_SIZE_CAP: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckerConfig {
    /// Largest `|X|` or `|Y|` the exact checker accepts.
    pub size_cap: usize,
}

impl Default for CheckerConfig {
    fn default() -> Self {
        CheckerConfig { size_cap: DEFAULT_SIZE_CAP }
    }
}

/// Subsets `A ⊆ X`, `B ⊆ Y` meeting the size thresholds whose density
/// deviates from `d(X, Y)` by `deviation > ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: VertexSet,
    pub b: VertexSet,
    pub deviation: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityOutcome {
    Regular,
    Irregular(Witness),
}

impl RegularityOutcome {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularityOutcome::Regular)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            RegularityOutcome::Regular => None,
            RegularityOutcome::Irregular(w) => Some(w),
        }
    }
}

/// Exact regularity check with the default size cap.
pub fn check_regular_pair(xs: &VertexSet, ys: &VertexSet, g: &UGraph, eps: &Rational) -> Result<RegularityOutcome> {
    check_regular_pair_with(xs, ys, g, eps, &CheckerConfig::default())
}

/// Exact regularity check.
///
/// When the pair is irregular the witness is the one of maximal deviation,
/// ties broken by the lexicographically smallest `(A, B)` (sets compared as
/// sorted sequences). The result does not depend on thread scheduling.
pub fn check_regular_pair_with(
    xs: &VertexSet,
    ys: &VertexSet,
    g: &UGraph,
    eps: &Rational,
    config: &CheckerConfig,
) -> Result<RegularityOutcome> {
    ensure_positive(eps)?;
    let cap = config.size_cap.min(MAX_SIZE_CAP);
    for size in [xs.len(), ys.len()] {
        if size > cap {
            return Err(Error::SizeCapExceeded { size, cap });
        }
    }
    let search = PairSearch::new(xs, ys, g, eps);
    Ok(match search.and_then(|s| s.run()) {
        None => RegularityOutcome::Regular,
        Some(best) => {
            let xv: Vec<usize> = xs.iter().copied().collect();
            let yv: Vec<usize> = ys.iter().copied().collect();
            RegularityOutcome::Irregular(Witness {
                a: mask_members(best.a_mask).map(|i| xv[i]).collect(),
                b: best.b.iter().map(|&j| yv[j]).collect(),
                deviation: Rational::new(BigInt::from(best.num), BigInt::from(best.den)),
            })
        }
    })
}

fn mask_members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// `deviation > ε` for `deviation = num/den`.
enum EpsilonTest {
    Small { p: u128, q: u128 },
    Big { p: BigInt, q: BigInt },
}

impl EpsilonTest {
    fn new(eps: &Rational) -> Self {
        match (eps.numer().to_u64(), eps.denom().to_u64()) {
            (Some(p), Some(q)) => EpsilonTest::Small { p: p.into(), q: q.into() },
            _ => EpsilonTest::Big { p: eps.numer().clone(), q: eps.denom().clone() },
        }
    }

    fn exceeded_by(&self, num: u128, den: u128) -> bool {
        match self {
            EpsilonTest::Small { p, q } => num * q > p * den,
            EpsilonTest::Big { p, q } => BigInt::from(num) * q > p * BigInt::from(den),
        }
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    num: u128,
    den: u128,
    a_mask: u64,
    /// Positions in `Y`, ascending.
    b: Vec<usize>,
}

impl Candidate {
    fn a_positions(&self) -> Vec<usize> {
        mask_members(self.a_mask).collect()
    }

    /// `Greater` means `self` is the preferred witness.
    fn preference(&self, other: &Candidate) -> Ordering {
        let by_deviation = (self.num * other.den).cmp(&(other.num * self.den));
        by_deviation
            .then_with(|| other.a_positions().cmp(&self.a_positions()))
            .then_with(|| other.b.cmp(&self.b))
    }
}

fn prefer(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if b.preference(&a) == Ordering::Greater { b } else { a }),
    }
}

struct PairSearch {
    nx: usize,
    ny: usize,
    a_min: usize,
    b_min: usize,
    /// For each `y`, the positions in `X` adjacent to it.
    neighbor_masks: Vec<u64>,
    e_xy: u128,
    xy: u128,
    eps: EpsilonTest,
}

impl PairSearch {
    fn new(xs: &VertexSet, ys: &VertexSet, g: &UGraph, eps: &Rational) -> Option<Self> {
        let (nx, ny) = (xs.len(), ys.len());
        if nx == 0 || ny == 0 {
            return None;
        }
        let a_min = ceil_nonneg(&(eps * int(nx))).max(1);
        let b_min = ceil_nonneg(&(eps * int(ny))).max(1);
        if a_min > nx || b_min > ny {
            return None;
        }
        let xv: Vec<usize> = xs.iter().copied().collect();
        let neighbor_masks: Vec<u64> = ys
            .iter()
            .map(|&y| {
                xv.iter()
                    .enumerate()
                    .filter(|(_, &x)| g.has_edge(x, y))
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let full = full_mask(nx);
        let e_xy = neighbor_masks.iter().map(|m| (m & full).count_ones() as u128).sum();
        Some(PairSearch {
            nx,
            ny,
            a_min,
            b_min,
            neighbor_masks,
            e_xy,
            xy: (nx * ny) as u128,
            eps: EpsilonTest::new(eps),
        })
    }

    fn run(&self) -> Option<Candidate> {
        let subsets = 1u64 << self.nx;
        let eligible = |a: &u64| a.count_ones() as usize >= self.a_min;
        if self.nx < 12 {
            let mut scratch = Scratch::new(self.ny);
            return (0..subsets).filter(eligible).fold(None, |best, a| prefer(best, self.visit(a, &mut scratch)));
        }
        (0..subsets)
            .into_par_iter()
            .filter(eligible)
            .fold(
                || (None, Scratch::new(self.ny)),
                |(best, mut scratch), a| {
                    let found = self.visit(a, &mut scratch);
                    (prefer(best, found), scratch)
                },
            )
            .map(|(best, _)| best)
            .reduce(|| None, prefer)
    }

    /// Best witness with first coordinate `a`, if any deviation exceeds ε.
    fn visit(&self, a: u64, scratch: &mut Scratch) -> Option<Candidate> {
        let size_a = a.count_ones() as u128;
        for (j, mask) in self.neighbor_masks.iter().enumerate() {
            scratch.degree[j] = (mask & a).count_ones();
        }
        let degree = &scratch.degree;
        scratch.top.sort_unstable_by_key(|&j| (Reverse(degree[j]), j));
        scratch.bottom.sort_unstable_by_key(|&j| (degree[j], j));

        let mut best: Option<Candidate> = None;
        let (mut top_sum, mut bottom_sum) = (0u128, 0u128);
        for b in 1..=self.ny {
            top_sum += degree[scratch.top[b - 1]] as u128;
            bottom_sum += degree[scratch.bottom[b - 1]] as u128;
            if b < self.b_min {
                continue;
            }
            let den = size_a * b as u128 * self.xy;
            let expected = self.e_xy * size_a * b as u128;
            for (sum, order) in [(top_sum, &scratch.top), (bottom_sum, &scratch.bottom)] {
                let num = (sum * self.xy).abs_diff(expected);
                if !self.eps.exceeded_by(num, den) {
                    continue;
                }
                if let Some(current) = &best {
                    if (num * current.den) < (current.num * den) {
                        continue;
                    }
                }
                let mut members = order[..b].to_vec();
                members.sort_unstable();
                best = prefer(best, Some(Candidate { num, den, a_mask: a, b: members }));
            }
        }
        best
    }
}

struct Scratch {
    degree: Vec<u32>,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl Scratch {
    fn new(ny: usize) -> Self {
        Scratch { degree: vec![0; ny], top: (0..ny).collect(), bottom: (0..ny).collect() }
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Verdicts for every unordered pair of parts `(i, j)`, `i ≤ j`, in part
/// iteration order. Regularity is symmetric, so `(j, i)` shares the verdict
/// of `(i, j)` with the witness sides swapped.
pub fn pair_verdicts(
    eps: &Rational,
    g: &UGraph,
    p: &VertexPartition,
    config: &CheckerConfig,
) -> Result<Vec<((usize, usize), RegularityOutcome)>> {
    ensure_positive(eps)?;
    if p.ground() != g.vertices() {
        return Err(Error::NotAPartition("partition ground set differs from the graph's vertices".into()));
    }
    let parts: Vec<&VertexSet> = p.iter().collect();
    let mut out = Vec::new();
    for i in 0..parts.len() {
        for j in i..parts.len() {
            let outcome = check_regular_pair_with(parts[i], parts[j], g, eps, config)?;
            out.push(((i, j), outcome));
        }
    }
    Ok(out)
}

/// Ordered pairs `(R, S)` of parts, diagonal included, that are not ε-regular.
pub fn irregular_set(eps: &Rational, g: &UGraph, p: &VertexPartition) -> Result<BTreeSet<(VertexSet, VertexSet)>> {
    irregular_set_with(eps, g, p, &CheckerConfig::default())
}

pub fn irregular_set_with(
    eps: &Rational,
    g: &UGraph,
    p: &VertexPartition,
    config: &CheckerConfig,
) -> Result<BTreeSet<(VertexSet, VertexSet)>> {
    let parts: Vec<&VertexSet> = p.iter().collect();
    let mut out = BTreeSet::new();
    for ((i, j), outcome) in pair_verdicts(eps, g, p, config)? {
        if !outcome.is_regular() {
            out.insert((parts[i].clone(), parts[j].clone()));
            out.insert((parts[j].clone(), parts[i].clone()));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRegularity {
    pub regular: bool,
    /// `Σ |R||S|` over irregular ordered pairs.
    pub defect: Rational,
    /// `ε |V(G)|²`.
    pub threshold: Rational,
    /// Irregular ordered pairs as part indices in iteration order.
    pub irregular: Vec<(usize, usize)>,
}

pub fn is_regular_partition(eps: &Rational, g: &UGraph, p: &VertexPartition) -> Result<PartitionRegularity> {
    is_regular_partition_with(eps, g, p, &CheckerConfig::default())
}

pub fn is_regular_partition_with(
    eps: &Rational,
    g: &UGraph,
    p: &VertexPartition,
    config: &CheckerConfig,
) -> Result<PartitionRegularity> {
    let verdicts = pair_verdicts(eps, g, p, config)?;
    summarize(eps, g, p, &verdicts)
}

pub(crate) fn summarize(
    eps: &Rational,
    g: &UGraph,
    p: &VertexPartition,
    verdicts: &[((usize, usize), RegularityOutcome)],
) -> Result<PartitionRegularity> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let sizes: Vec<usize> = p.iter().map(|part| part.len()).collect();
    let mut irregular = Vec::new();
    for ((i, j), outcome) in verdicts {
        if !outcome.is_regular() {
            irregular.push((*i, *j));
            if i != j {
                irregular.push((*j, *i));
            }
        }
    }
    irregular.sort_unstable();
    let defect: usize = irregular.iter().map(|&(i, j)| sizes[i] * sizes[j]).sum();
    let defect = int(defect);
    let threshold = eps * int(n * n);
    Ok(PartitionRegularity { regular: defect <= threshold, defect, threshold, irregular })
}

impl PartitionRegularity {
    pub fn defect_is_zero(&self) -> bool {
        self.defect.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind};
    use crate::rational::ratio;

    fn set(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn complete_bipartite_is_regular() {
        let g = UGraph::on_range(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        for eps in [ratio(1, 10), ratio(1, 4), ratio(1, 2)] {
            let out = check_regular_pair(&set(&[0, 1]), &set(&[2, 3, 4]), &g, &eps).unwrap();
            assert!(out.is_regular());
        }
    }

    #[test]
    fn edgeless_pair_is_regular() {
        let g = UGraph::edgeless((0..6).collect());
        let out = check_regular_pair(&set(&[0, 1, 2]), &set(&[3, 4, 5]), &g, &ratio(1, 100)).unwrap();
        assert!(out.is_regular());
    }

    #[test]
    fn perfect_matching_pair_has_singleton_witness() {
        let g = UGraph::on_range(4, [(0, 2), (1, 3)]).unwrap();
        let out = check_regular_pair(&set(&[0, 1]), &set(&[2, 3]), &g, &ratio(1, 4)).unwrap();
        let w = out.witness().expect("irregular");
        assert_eq!(w.a, set(&[0]));
        assert_eq!(w.b, set(&[2]));
        assert_eq!(w.deviation, ratio(1, 2));
    }

    #[test]
    fn rejects_bad_input() {
        let g = UGraph::edgeless((0..30).collect());
        let big: VertexSet = (0..23).collect();
        assert_eq!(
            check_regular_pair(&big, &set(&[29]), &g, &ratio(1, 4)),
            Err(Error::SizeCapExceeded { size: 23, cap: 22 })
        );
        let small = CheckerConfig { size_cap: 3 };
        assert!(check_regular_pair_with(&set(&[0, 1, 2, 3]), &set(&[5]), &g, &ratio(1, 4), &small).is_err());
        assert!(matches!(
            check_regular_pair(&set(&[0]), &set(&[1]), &g, &ratio(0, 1)),
            Err(Error::NonPositiveEpsilon(_))
        ));
    }

    #[test]
    fn huge_epsilon_denominator_uses_big_comparison() {
        let g = UGraph::on_range(4, [(0, 2), (1, 3)]).unwrap();
        let eps = Rational::new(BigInt::from(1u8) << 70, BigInt::from(1u8) << 72);
        let out = check_regular_pair(&set(&[0, 1]), &set(&[2, 3]), &g, &eps).unwrap();
        assert_eq!(out.witness().unwrap().deviation, ratio(1, 2));
    }

    #[test]
    fn verdict_is_symmetric() {
        let g = generate(&GraphKind::Random { n: 10, p: ratio(1, 2), seed: 3 }).unwrap();
        let x = set(&[0, 1, 2, 3, 4]);
        let y = set(&[3, 5, 6, 7, 8, 9]);
        for eps in [ratio(1, 5), ratio(1, 3), ratio(1, 2)] {
            let xy = check_regular_pair(&x, &y, &g, &eps).unwrap();
            let yx = check_regular_pair(&y, &x, &g, &eps).unwrap();
            assert_eq!(xy.is_regular(), yx.is_regular());
            if let (Some(a), Some(b)) = (xy.witness(), yx.witness()) {
                assert_eq!(a.deviation, b.deviation);
            }
        }
    }

    #[test]
    fn complete_graph_discrete_partition_has_no_irregular_pairs() {
        let g = generate(&GraphKind::Complete(5)).unwrap();
        let p = VertexPartition::discrete(g.vertices().clone());
        assert!(irregular_set(&ratio(1, 4), &g, &p).unwrap().is_empty());
    }

    #[test]
    fn irregular_pairs_come_in_both_orders() {
        let g = UGraph::on_range(4, [(0, 2), (1, 3)]).unwrap();
        let p = VertexPartition::from_parts([set(&[0, 1]), set(&[2, 3])].into_iter().collect()).unwrap();
        let bad = irregular_set(&ratio(1, 4), &g, &p).unwrap();
        assert!(bad.contains(&(set(&[0, 1]), set(&[2, 3]))));
        assert!(bad.contains(&(set(&[2, 3]), set(&[0, 1]))));
    }

    #[test]
    fn large_epsilon_forces_regular_partition() {
        let g = generate(&GraphKind::Random { n: 9, p: ratio(1, 2), seed: 11 }).unwrap();
        let p = VertexPartition::from_parts([(0..4).collect(), (4..9).collect()].into_iter().collect()).unwrap();
        for eps in [ratio(1, 1), ratio(3, 2)] {
            assert!(is_regular_partition(&eps, &g, &p).unwrap().regular);
        }
        let none = UGraph::edgeless((0..6).collect());
        let q = VertexPartition::trivial(none.vertices().clone());
        let verdict = is_regular_partition(&ratio(1, 50), &none, &q).unwrap();
        assert!(verdict.regular && verdict.defect_is_zero());
    }

    #[test]
    fn parallel_search_is_deterministic() {
        // 13 vertices takes the parallel path; repeated runs must agree.
        let g = generate(&GraphKind::Random { n: 13, p: ratio(1, 2), seed: 5 }).unwrap();
        let v: VertexSet = (0..13).collect();
        let eps = ratio(1, 4);
        let first = check_regular_pair(&v, &v, &g, &eps).unwrap();
        let second = check_regular_pair(&v, &v, &g, &eps).unwrap();
        assert_eq!(first, second);
    }
}
