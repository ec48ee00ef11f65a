//! Triangles: enumeration, ordered triple counts, the counting lemma and its
//! two supporting neighbourhood bounds, and the cleaned-graph predicates.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{count_edges_between, edge_density, neighbors_ss, UGraph, VertexSet};
use crate::partition::VertexPartition;
use crate::rational::{ensure_positive, int, Rational};
use crate::regularity::{check_regular_pair_with, CheckerConfig};

pub type Triangle = [usize; 3];

pub fn triangle_in_graph(x: usize, y: usize, z: usize, g: &UGraph) -> bool {
    g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(x, z)
}

/// Ordered triples `(x, y, z) ∈ X × Y × Z` spanning a triangle. Overlapping
/// sets may list one triangle several times.
pub fn triangle_triples(xs: &VertexSet, ys: &VertexSet, zs: &VertexSet, g: &UGraph) -> BTreeSet<(usize, usize, usize)> {
    let (ymask, zmask) = (g.mask(ys), g.mask(zs));
    let mut out = BTreeSet::new();
    for &x in xs {
        let Some(ix) = g.index_of(x) else { continue };
        for iy in g.row(ix).intersection(&ymask) {
            for iz in common(g.row(ix), g.row(iy), &zmask).ones() {
                out.insert((x, g.vertex_at(iy), g.vertex_at(iz)));
            }
        }
    }
    out
}

/// `|triangle_triples(X, Y, Z, G)|` without building the set.
pub fn count_triangle_triples(xs: &VertexSet, ys: &VertexSet, zs: &VertexSet, g: &UGraph) -> usize {
    let (ymask, zmask) = (g.mask(ys), g.mask(zs));
    xs.iter()
        .filter_map(|&x| g.index_of(x))
        .map(|ix| {
            g.row(ix)
                .intersection(&ymask)
                .map(|iy| count_common(g.row(ix), g.row(iy), &zmask))
                .sum::<usize>()
        })
        .sum()
}

fn common(a: &FixedBitSet, b: &FixedBitSet, c: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.intersect_with(b);
    out.intersect_with(c);
    out
}

fn count_common(a: &FixedBitSet, b: &FixedBitSet, c: &FixedBitSet) -> usize {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .zip(c.as_slice())
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

/// Every triangle of `G` as its sorted vertex triple.
pub fn triangle_set(g: &UGraph) -> BTreeSet<Triangle> {
    let edges: Vec<(usize, usize)> = g.edges().iter().copied().collect();
    let found: Vec<Vec<Triangle>> = edges
        .par_iter()
        .map(|&(u, v)| {
            let (iu, iv) = (g.index_of(u).unwrap(), g.index_of(v).unwrap());
            // The third vertex above both endpoints lists each triangle once.
            g.row(iu)
                .intersection(g.row(iv))
                .filter(|&iw| iw > iv)
                .map(|iw| [u, v, g.vertex_at(iw)])
                .collect()
        })
        .collect();
    found.into_iter().flatten().collect()
}

pub fn triangle_free(g: &UGraph) -> bool {
    g.edges().iter().all(|&(u, v)| {
        let (iu, iv) = (g.index_of(u).unwrap(), g.index_of(v).unwrap());
        g.row(iu).is_disjoint(g.row(iv))
    })
}

/// Ordered and unordered triangle counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCensus {
    pub ordered_count: usize,
    pub unordered: BTreeSet<Triangle>,
}

/// Ordered triples over `X × Y × Z` together with all triangles of `G`.
pub fn triangle_census(xs: &VertexSet, ys: &VertexSet, zs: &VertexSet, g: &UGraph) -> TriangleCensus {
    TriangleCensus { ordered_count: count_triangle_triples(xs, ys, zs, g), unordered: triangle_set(g) }
}

/// `|triangle_triples(X, Y, Z, G)| / 6`, a lower bound on `|triangle_set(G)|`.
pub fn convert_triangle_count(xs: &VertexSet, ys: &VertexSet, zs: &VertexSet, g: &UGraph) -> Rational {
    int(count_triangle_triples(xs, ys, zs, g)) / int(6)
}

/// Hypotheses, bound and actual count of the triangle counting lemma for
/// `(X, Y, Z)`. Pairs are listed in the order `XY`, `XZ`, `YZ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingCertificate {
    pub epsilon: Rational,
    pub regular: [bool; 3],
    pub densities: [Rational; 3],
    pub hypotheses_ok: bool,
    /// `(1−2ε)(d(X,Y)−ε)(d(X,Z)−ε)(d(Y,Z)−ε)|X||Y||Z|`.
    pub bound: Rational,
    pub actual: usize,
}

impl CountingCertificate {
    /// The lemma's conclusion, vacuous when a hypothesis fails.
    pub fn holds(&self) -> bool {
        !self.hypotheses_ok || int(self.actual) >= self.bound
    }
}

pub fn counting_lemma_bound(
    xs: &VertexSet,
    ys: &VertexSet,
    zs: &VertexSet,
    g: &UGraph,
    eps: &Rational,
) -> Result<CountingCertificate> {
    counting_lemma_bound_with(xs, ys, zs, g, eps, &CheckerConfig::default())
}

pub fn counting_lemma_bound_with(
    xs: &VertexSet,
    ys: &VertexSet,
    zs: &VertexSet,
    g: &UGraph,
    eps: &Rational,
    config: &CheckerConfig,
) -> Result<CountingCertificate> {
    ensure_positive(eps)?;
    let pairs = [(xs, ys), (xs, zs), (ys, zs)];
    let mut regular = [false; 3];
    for (slot, (a, b)) in regular.iter_mut().zip(pairs) {
        *slot = check_regular_pair_with(a, b, g, eps, config)?.is_regular();
    }
    let densities = pairs.map(|(a, b)| edge_density(a, b, g));
    let floor = eps * int(2);
    let hypotheses_ok = regular.iter().all(|&r| r) && densities.iter().all(|d| *d >= floor);
    let mut bound = Rational::one() - &floor;
    for d in &densities {
        bound *= d - eps;
    }
    bound *= int(xs.len() * ys.len() * zs.len());
    Ok(CountingCertificate {
        epsilon: eps.clone(),
        regular,
        densities,
        hypotheses_ok,
        bound,
        actual: count_triangle_triples(xs, ys, zs, g),
    })
}

/// Vertices of `X` with few neighbours in `Y`, against the lemma's ceiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborDefect {
    /// `|{x ∈ X : |N(x) ∩ Y| < (d(X,Y) − ε)|Y|}|`.
    pub low_count: usize,
    /// `ε |X|`.
    pub threshold: Rational,
}

impl NeighborDefect {
    pub fn holds(&self) -> bool {
        int(self.low_count) < self.threshold
    }
}

/// Counts low-degree vertices of a regular, dense pair. Fails with
/// [`Error::HypothesisFailed`] unless `(X, Y)` is ε-regular, `d(X, Y) ≥ 2ε`
/// and `X` is non-empty.
pub fn neighbor_bound_defect(xs: &VertexSet, ys: &VertexSet, g: &UGraph, eps: &Rational) -> Result<NeighborDefect> {
    ensure_positive(eps)?;
    if xs.is_empty() {
        return Err(Error::HypothesisFailed("X is empty".into()));
    }
    require_regular_dense(xs, ys, g, eps, "(X, Y)")?;
    let floor = (edge_density(xs, ys, g) - eps) * int(ys.len());
    let low_count = xs.iter().filter(|&&x| int(neighbors_ss(x, ys, g).len()) < floor).count();
    Ok(NeighborDefect { low_count, threshold: eps * int(xs.len()) })
}

fn require_regular_dense(a: &VertexSet, b: &VertexSet, g: &UGraph, eps: &Rational, name: &str) -> Result<()> {
    if !check_regular_pair_with(a, b, g, eps, &CheckerConfig::default())?.is_regular() {
        return Err(Error::HypothesisFailed(format!("{name} is not epsilon-regular")));
    }
    if edge_density(a, b, g) < eps * int(2) {
        return Err(Error::HypothesisFailed(format!("{name} has density below 2 epsilon")));
    }
    Ok(())
}

/// Edges between the two neighbourhoods of one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodEdges {
    /// `e(N(x) ∩ Y, N(x) ∩ Z)`.
    pub lhs: usize,
    /// `(d(Y, Z) − ε)|N(x) ∩ Y||N(x) ∩ Z|`.
    pub rhs: Rational,
}

impl NeighborhoodEdges {
    pub fn holds(&self) -> bool {
        int(self.lhs) >= self.rhs
    }
}

/// Both sides of the neighbourhood edge bound with no hypothesis checks.
pub fn neighborhood_edges_raw(x: usize, ys: &VertexSet, zs: &VertexSet, g: &UGraph, eps: &Rational) -> NeighborhoodEdges {
    let (ny, nz) = (neighbors_ss(x, ys, g), neighbors_ss(x, zs, g));
    let rhs = if ny.is_empty() || nz.is_empty() {
        Rational::zero()
    } else {
        (edge_density(ys, zs, g) - eps) * int(ny.len() * nz.len())
    };
    NeighborhoodEdges { lhs: count_edges_between(&ny, &nz, g), rhs }
}

/// The neighbourhood edge bound for `x ∈ X`, after checking that all three
/// pairs are ε-regular with density at least `2ε` and that `x` has at least
/// `(d − ε)` of the available neighbours in both `Y` and `Z`.
pub fn neighborhood_edges_bound(
    x: usize,
    xs: &VertexSet,
    ys: &VertexSet,
    zs: &VertexSet,
    g: &UGraph,
    eps: &Rational,
) -> Result<NeighborhoodEdges> {
    ensure_positive(eps)?;
    if !xs.contains(&x) {
        return Err(Error::HypothesisFailed(format!("vertex {x} is not in X")));
    }
    require_regular_dense(xs, ys, g, eps, "(X, Y)")?;
    require_regular_dense(xs, zs, g, eps, "(X, Z)")?;
    require_regular_dense(ys, zs, g, eps, "(Y, Z)")?;
    for (side, name) in [(ys, "Y"), (zs, "Z")] {
        let floor = (edge_density(xs, side, g) - eps) * int(side.len());
        if int(neighbors_ss(x, side, g).len()) < floor {
            return Err(Error::HypothesisFailed(format!("vertex {x} has too few neighbours in {name}")));
        }
    }
    Ok(neighborhood_edges_raw(x, ys, zs, g, eps))
}

fn all_part_pairs(p: &VertexPartition) -> impl Iterator<Item = (&VertexSet, &VertexSet)> {
    p.iter().flat_map(move |r| p.iter().map(move |s| (r, s)))
}

/// Every pair of parts, diagonal included, is ε-regular.
pub fn regular_graph(p: &VertexPartition, g: &UGraph, eps: &Rational) -> Result<bool> {
    regular_graph_with(p, g, eps, &CheckerConfig::default())
}

pub fn regular_graph_with(p: &VertexPartition, g: &UGraph, eps: &Rational, config: &CheckerConfig) -> Result<bool> {
    for (r, s) in all_part_pairs(p) {
        if r <= s && !check_regular_pair_with(r, s, g, eps, config)?.is_regular() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No edges between `X` and `Y`, or density at least `floor`.
pub fn edge_dense(xs: &VertexSet, ys: &VertexSet, g: &UGraph, floor: &Rational) -> bool {
    count_edges_between(xs, ys, g) == 0 || edge_density(xs, ys, g) >= *floor
}

pub fn dense_graph(p: &VertexPartition, g: &UGraph, floor: &Rational) -> bool {
    all_part_pairs(p).all(|(r, s)| edge_dense(r, s, g, floor))
}

/// No edges between `X` and `Y`, or both have at least `floor` vertices.
pub fn decent(xs: &VertexSet, ys: &VertexSet, g: &UGraph, floor: &Rational) -> bool {
    count_edges_between(xs, ys, g) == 0 || (int(xs.len()) >= *floor && int(ys.len()) >= *floor)
}

pub fn decent_graph(p: &VertexPartition, g: &UGraph, floor: &Rational) -> bool {
    all_part_pairs(p).all(|(r, s)| decent(r, s, g, floor))
}
