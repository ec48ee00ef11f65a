//! Finite undirected graphs on natural-number vertices.
//!
//! The edge set is the source of truth; a per-vertex neighbour bitset over a
//! dense re-indexing of the vertices backs membership and counting queries.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type VertexSet = BTreeSet<usize>;

/// An unordered edge, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

pub type EdgeSet = BTreeSet<Edge>;

pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone)]
pub struct UGraph {
    vertices: VertexSet,
    edges: EdgeSet,
    order: Vec<usize>,
    index: HashMap<usize, usize>,
    adj: Vec<FixedBitSet>,
}

impl UGraph {
    /// Builds a graph, rejecting self-loops and edges with an endpoint
    /// outside `vertices`. Edge orientation in the input does not matter.
    pub fn new<I>(vertices: VertexSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut normalized = EdgeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for endpoint in [u, v] {
                if !vertices.contains(&endpoint) {
                    return Err(Error::DanglingEdge { u, v, missing: endpoint });
                }
            }
            normalized.insert(edge(u, v));
        }
        Ok(Self::from_parts(vertices, normalized))
    }

    pub fn edgeless(vertices: VertexSet) -> Self {
        Self::from_parts(vertices, EdgeSet::new())
    }

    /// Vertices `0..n` and the given edges.
    pub fn on_range<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        Self::new((0..n).collect(), edges)
    }

    fn from_parts(vertices: VertexSet, edges: EdgeSet) -> Self {
        let order: Vec<usize> = vertices.iter().copied().collect();
        let index: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = order.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in &edges {
            let (iu, iv) = (index[&u], index[&v]);
            adj[iu].insert(iv);
            adj[iv].insert(iu);
        }
        UGraph { vertices, edges, order, index, adj }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.index.contains_key(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&iu), Some(&iv)) => self.adj[iu].contains(iv),
            _ => false,
        }
    }

    /// Dense index of `v` in `0..vertex_count()`, following vertex order.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn vertex_at(&self, i: usize) -> usize {
        self.order[i]
    }

    /// Neighbour bitset of the vertex with dense index `i`.
    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.index_of(v)
            .into_iter()
            .flat_map(move |i| self.adj[i].ones().map(move |j| self.order[j]))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.index_of(v).map_or(0, |i| self.adj[i].count_ones(..))
    }

    /// Dense-index bitset of the members of `set` that are vertices of the graph.
    pub fn mask(&self, set: &VertexSet) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.vertex_count());
        for v in set {
            if let Some(i) = self.index_of(*v) {
                bits.insert(i);
            }
        }
        bits
    }

    /// Same vertex set, without the given edges.
    pub fn without_edges(&self, removed: &EdgeSet) -> UGraph {
        let kept = self.edges.difference(removed).copied().collect();
        Self::from_parts(self.vertices.clone(), kept)
    }

    /// `true` when the vertices are exactly `0..n`.
    pub fn is_contiguous(&self) -> bool {
        self.order.last().is_none_or(|&last| last + 1 == self.order.len())
    }
}

impl PartialEq for UGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for UGraph {}

impl fmt::Debug for UGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UGraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Ordered pairs `(x, y)` in `X × Y` joined by an edge. When the sets
/// overlap an edge inside the overlap shows up in both orientations.
pub fn all_edges_between(xs: &VertexSet, ys: &VertexSet, g: &UGraph) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for &x in xs {
        for y in g.neighbors(x) {
            if ys.contains(&y) {
                out.insert((x, y));
            }
        }
    }
    out
}

/// `|all_edges_between(X, Y, G)|` without materialising the pairs.
pub fn count_edges_between(xs: &VertexSet, ys: &VertexSet, g: &UGraph) -> usize {
    let ymask = g.mask(ys);
    xs.iter()
        .filter_map(|&x| g.index_of(x))
        .map(|i| g.row(i).intersection(&ymask).count())
        .sum()
}

/// `e(X, Y) / (|X| |Y|)`, and zero when either side is empty.
pub fn edge_density(xs: &VertexSet, ys: &VertexSet, g: &UGraph) -> Rational {
    let denom = xs.len() * ys.len();
    if denom == 0 {
        return Rational::from_integer(BigInt::from(0));
    }
    Rational::new(BigInt::from(count_edges_between(xs, ys, g)), BigInt::from(denom))
}

pub fn neighbors_ss(x: usize, ys: &VertexSet, g: &UGraph) -> VertexSet {
    g.neighbors(x).filter(|y| ys.contains(y)).collect()
}
