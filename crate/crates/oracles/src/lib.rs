//! Deliberately naive reference implementations.
//!
//! Nothing here reuses the optimised code paths of `regularity`: densities
//! are recounted from the edge set, subsets are enumerated in full, and
//! triangles come from a triple loop. Only the graph and partition types are
//! shared.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use regularity::{Error, RegularityOutcome, Result, UGraph, VertexPartition, VertexSet, Witness};

/// Size limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `|X|` or `|Y|` for the full `2^|X| · 2^|Y|` pair search.
    pub subset_cap: usize,
    /// Largest ground set for partition enumeration.
    pub partition_cap: usize,
    /// Largest `N` for the progression-free search.
    pub ap_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { subset_cap: 6, partition_cap: 7, ap_cap: 20 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        for (what, cap) in [("subset cap", self.subset_cap), ("partition cap", self.partition_cap), ("ap cap", self.ap_cap)] {
            if cap == 0 {
                return Err(Error::CapExceeded { what, got: 0, cap: 0 });
            }
        }
        Ok(())
    }
}

fn frac(num: usize, den: usize) -> BigRational {
    if den == 0 {
        return BigRational::zero();
    }
    BigRational::new(num.into(), den.into())
}

fn adjacent(g: &UGraph, u: usize, v: usize) -> bool {
    g.edges().contains(&(u.min(v), u.max(v)))
}

/// Ordered-pair density recounted from the edge set.
pub fn brute_density(xs: &[usize], ys: &[usize], g: &UGraph) -> BigRational {
    let mut count = 0;
    for &x in xs {
        for &y in ys {
            if adjacent(g, x, y) {
                count += 1;
            }
        }
    }
    frac(count, xs.len() * ys.len())
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u64..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

/// Full enumeration of `A ⊆ X`, `B ⊆ Y` with `|A| ≥ ε|X|`, `|B| ≥ ε|Y|`
/// (proper subsets only when `strict`). The witness is the one of largest
/// deviation, ties going to the lexicographically smallest `(A, B)`.
pub fn brute_regular_pair(
    xs: &VertexSet,
    ys: &VertexSet,
    g: &UGraph,
    eps: &BigRational,
    strict: bool,
    config: &OracleConfig,
) -> Result<RegularityOutcome> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveEpsilon(eps.clone()));
    }
    for size in [xs.len(), ys.len()] {
        if size > config.subset_cap {
            return Err(Error::CapExceeded { what: "pair side", got: size, cap: config.subset_cap });
        }
    }
    let xv: Vec<usize> = xs.iter().copied().collect();
    let yv: Vec<usize> = ys.iter().copied().collect();
    let whole = brute_density(&xv, &yv, g);
    let x_min = eps * frac(xv.len(), 1);
    let y_min = eps * frac(yv.len(), 1);
    let eligible = |set: &Vec<usize>, full: usize, min: &BigRational| {
        frac(set.len(), 1) >= *min && !(strict && set.len() == full)
    };
    let a_sets: Vec<Vec<usize>> = subsets(&xv).into_iter().filter(|a| eligible(a, xv.len(), &x_min)).collect();
    let b_sets: Vec<Vec<usize>> = subsets(&yv).into_iter().filter(|b| eligible(b, yv.len(), &y_min)).collect();

    let mut best: Option<(BigRational, Vec<usize>, Vec<usize>)> = None;
    for a in &a_sets {
        for b in &b_sets {
            let deviation = (brute_density(a, b, g) - &whole).abs();
            if deviation <= *eps {
                continue;
            }
            let better = match &best {
                None => true,
                Some((d, ba, bb)) => deviation > *d || (deviation == *d && (a, b) < (ba, bb)),
            };
            if better {
                best = Some((deviation, a.clone(), b.clone()));
            }
        }
    }
    Ok(match best {
        None => RegularityOutcome::Regular,
        Some((deviation, a, b)) => RegularityOutcome::Irregular(Witness {
            a: a.into_iter().collect(),
            b: b.into_iter().collect(),
            deviation,
        }),
    })
}

/// Every set partition of `V`, once each, via restricted growth strings.
pub fn all_partitions(v: &VertexSet, config: &OracleConfig) -> Result<Partitions> {
    if v.len() > config.partition_cap {
        return Err(Error::CapExceeded { what: "partition ground set", got: v.len(), cap: config.partition_cap });
    }
    Ok(Partitions { ground: v.iter().copied().collect(), rgs: Some(vec![0; v.len()]) })
}

/// Iterator over set partitions. The string `a` has `a[0] = 0` and
/// `a[i] ≤ 1 + max(a[..i])`; vertex `i` goes to block `a[i]`.
pub struct Partitions {
    ground: Vec<usize>,
    rgs: Option<Vec<usize>>,
}

impl Partitions {
    fn advance(&mut self) {
        let Some(a) = self.rgs.as_mut() else { return };
        for i in (1..a.len()).rev() {
            let prefix_max = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] <= prefix_max {
                a[i] += 1;
                for slot in &mut a[i + 1..] {
                    *slot = 0;
                }
                return;
            }
        }
        self.rgs = None;
    }
}

impl Iterator for Partitions {
    type Item = VertexPartition;

    fn next(&mut self) -> Option<VertexPartition> {
        let a = self.rgs.clone()?;
        let blocks = a.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts = vec![VertexSet::new(); blocks];
        for (&v, &block) in self.ground.iter().zip(&a) {
            parts[block].insert(v);
        }
        self.advance();
        let partition = VertexPartition::new(self.ground.iter().copied().collect(), parts.into_iter().collect());
        Some(partition.expect("restricted growth strings give partitions"))
    }
}

/// Triangles by a triple loop over vertex triples.
pub fn brute_triangles(g: &UGraph) -> Result<BTreeSet<[usize; 3]>> {
    const CAP: usize = 64;
    let vs: Vec<usize> = g.vertices().iter().copied().collect();
    if vs.len() > CAP {
        return Err(Error::CapExceeded { what: "vertex count", got: vs.len(), cap: CAP });
    }
    let mut out = BTreeSet::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                let (x, y, z) = (vs[i], vs[j], vs[k]);
                if adjacent(g, x, y) && adjacent(g, y, z) && adjacent(g, x, z) {
                    out.insert([x, y, z]);
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_{R,S} |R||S| d(R,S)² / |V|²` with densities recounted per pair.
pub fn brute_mean_square_density(g: &UGraph, p: &VertexPartition) -> BigRational {
    let n = g.vertex_count();
    let parts: Vec<Vec<usize>> = p.iter().map(|part| part.iter().copied().collect()).collect();
    let mut total = BigRational::zero();
    for r in &parts {
        for s in &parts {
            let d = brute_density(r, s, g);
            total += frac(r.len() * s.len(), 1) * &d * &d;
        }
    }
    total / frac(n * n, 1)
}

/// Largest progression-free `A ⊆ {0..N−1}` and the lexicographically least
/// set of that size.
pub fn max_ap_free(n: usize, config: &OracleConfig) -> Result<(usize, BTreeSet<usize>)> {
    if n > config.ap_cap {
        return Err(Error::CapExceeded { what: "N", got: n, cap: config.ap_cap });
    }
    let mut search = ApSearch { n, chosen: Vec::new(), in_set: vec![false; n], best: Vec::new() };
    search.run(0);
    Ok((search.best.len(), search.best.into_iter().collect()))
}

struct ApSearch {
    n: usize,
    chosen: Vec<usize>,
    in_set: Vec<bool>,
    best: Vec<usize>,
}

impl ApSearch {
    // Elements are decided in increasing order, including before excluding,
    // so among sets of one size the lexicographically least is met first.
    fn run(&mut self, next: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if next == self.n || self.chosen.len() + (self.n - next) <= self.best.len() {
            return;
        }
        if !self.closes_progression(next) {
            self.chosen.push(next);
            self.in_set[next] = true;
            self.run(next + 1);
            self.in_set[next] = false;
            self.chosen.pop();
        }
        self.run(next + 1);
    }

    fn closes_progression(&self, top: usize) -> bool {
        (1..=top / 2).any(|d| self.in_set[top - d] && self.in_set[top - 2 * d])
    }
}
