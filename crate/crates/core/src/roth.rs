//! Three-term progressions and the tripartite graph whose triangles encode
//! them: three copies of `Z/MZ`, `M = 2N + 1`, joined by difference rules.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, EdgeSet, UGraph, VertexSet};
use crate::rational::{ensure_positive, int, Rational};
use crate::triangles::{triangle_in_graph, triangle_set, Triangle};

/// Largest `N` accepted by [`roth_aux_verify`].
pub const ROTH_AUX_CAP: usize = 14;

/// `{k, k+d, k+2d}`, a singleton when `d = 0`.
pub fn progression3_set(k: i64, d: i64) -> BTreeSet<i64> {
    [k, k + d, k + 2 * d].into_iter().collect()
}

/// The lexicographically smallest `(k, d)`, `d > 0`, with
/// `{k, k+d, k+2d} ⊆ A`.
pub fn find_progression3(a: &BTreeSet<usize>) -> Option<(usize, usize)> {
    let max = *a.iter().next_back()?;
    for &k in a {
        for d in 1..=(max.saturating_sub(k)) / 2 {
            if a.contains(&(k + d)) && a.contains(&(k + 2 * d)) {
                return Some((k, d));
            }
        }
    }
    None
}

pub fn is_progression_free(a: &BTreeSet<usize>) -> bool {
    find_progression3(a).is_none()
}

/// `3 · residue + label`.
pub fn encode(label: usize, residue: usize) -> usize {
    3 * residue + label
}

/// `(label, residue)`.
pub fn decode(v: usize) -> (usize, usize) {
    (v % 3, v / 3)
}

/// `(a − b) mod m` in `[0, m)`.
pub fn diff(a: usize, b: usize, m: usize) -> usize {
    (a as i64 - b as i64).rem_euclid(m as i64) as usize
}

/// `((a − b)(n + 1)) mod (2n + 1)`, i.e. `(a − b)/2` modulo the odd `2n + 1`.
pub fn diff2(a: usize, b: usize, n: usize) -> usize {
    let m = (2 * n + 1) as i64;
    ((a as i64 - b as i64) * (n as i64 + 1)).rem_euclid(m) as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RothInstance {
    pub n: usize,
    pub a: BTreeSet<usize>,
    pub m: usize,
    pub graph: UGraph,
    /// Vertices labelled 0, 1 and 2.
    pub parts: [VertexSet; 3],
    /// The `XY`, `YZ` and `XZ` edge classes.
    pub edge_classes: [EdgeSet; 3],
}

impl RothInstance {
    pub fn encode(&self, label: usize, residue: usize) -> usize {
        encode(label, residue)
    }

    pub fn decode(&self, v: usize) -> (usize, usize) {
        decode(v)
    }

    /// The triangle `(x, y, z)` for start residue `i` and difference `a`.
    pub fn triangle_for(&self, i: usize, a: usize) -> Triangle {
        let mut t = [encode(0, i), encode(1, (i + a) % self.m), encode(2, (i + 2 * a) % self.m)];
        t.sort_unstable();
        t
    }
}

/// Builds the graph for `N ≥ 1` and `A ⊆ {0..N−1}` and checks the encoding,
/// part, class-size and edge-count identities.
pub fn build_roth_graph(n: usize, a: &BTreeSet<usize>) -> Result<RothInstance> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if a.iter().any(|&x| x >= n) {
        return Err(Error::OutOfRange(a.iter().copied().collect(), n));
    }
    let m = 2 * n + 1;
    let parts: [VertexSet; 3] = [0, 1, 2].map(|label| (0..m).map(|r| encode(label, r)).collect());
    let mut xy = EdgeSet::new();
    let mut yz = EdgeSet::new();
    let mut xz = EdgeSet::new();
    for i in 0..m {
        for j in 0..m {
            if a.contains(&diff(j, i, m)) {
                xy.insert(edge(encode(0, i), encode(1, j)));
                yz.insert(edge(encode(1, i), encode(2, j)));
            }
            if a.contains(&diff2(j, i, n)) {
                xz.insert(edge(encode(0, i), encode(2, j)));
            }
        }
    }
    let vertices: VertexSet = parts.iter().flatten().copied().collect();
    let graph = UGraph::new(vertices, xy.iter().chain(&yz).chain(&xz).copied())?;
    let inst = RothInstance { n, a: a.clone(), m, graph, parts, edge_classes: [xy, yz, xz] };
    check_instance(&inst)?;
    Ok(inst)
}

fn check_instance(inst: &RothInstance) -> Result<()> {
    let fail = |what: String| Err(Error::InvariantViolated(what));
    let m = inst.m;
    for label in 0..3 {
        for r in 0..m {
            if decode(encode(label, r)) != (label, r) {
                return fail(format!("decode(encode({label}, {r})) differs"));
            }
        }
        if inst.parts[label].len() != m {
            return fail(format!("part {label} has {} vertices", inst.parts[label].len()));
        }
    }
    if inst.graph.vertex_count() != 3 * m {
        return fail("parts overlap".into());
    }
    let per_class = m * inst.a.len();
    for (k, class) in inst.edge_classes.iter().enumerate() {
        if class.len() != per_class {
            return fail(format!("edge class {k} has {} edges, expected {per_class}", class.len()));
        }
    }
    if inst.graph.edge_count() != 3 * per_class {
        return fail(format!("{} edges, expected {}", inst.graph.edge_count(), 3 * per_class));
    }
    Ok(())
}

/// `(i, a)` with `a ∈ A` such that the triangle is
/// `{enc(0,i), enc(1,i+a), enc(2,i+2a)}`. `None` for non-triangles and for
/// the extra triangles that appear when `A` contains a progression.
pub fn classify_triangle(p: usize, q: usize, r: usize, inst: &RothInstance) -> Option<(usize, usize)> {
    if !triangle_in_graph(p, q, r, &inst.graph) {
        return None;
    }
    let mut by_label = [None; 3];
    for v in [p, q, r] {
        let (label, residue) = decode(v);
        by_label[label] = Some(residue);
    }
    let [Some(i), Some(j), Some(k)] = by_label else {
        return None;
    };
    let a = diff(j, i, inst.m);
    (inst.a.contains(&a) && k == (i + 2 * a) % inst.m).then_some((i, a))
}

/// Every triangle of the instance with its `(i, a)` classification.
pub fn classification_table(inst: &RothInstance) -> Vec<(Triangle, Option<(usize, usize)>)> {
    triangle_set(&inst.graph).into_iter().map(|t| (t, classify_triangle(t[0], t[1], t[2], inst))).collect()
}

/// Whether every edge lies in exactly one triangle, with the first edge that
/// does not and its triangle count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueTriangles {
    pub holds: bool,
    pub counterexample: Option<(Edge, usize)>,
}

pub fn unique_triangles_check(g: &UGraph) -> UniqueTriangles {
    let counterexample = g.edges().iter().find_map(|&(u, v)| {
        let (iu, iv) = (g.index_of(u).unwrap(), g.index_of(v).unwrap());
        let count = g.row(iu).intersection(g.row(iv)).count();
        (count != 1).then_some(((u, v), count))
    });
    UniqueTriangles { holds: counterexample.is_none(), counterexample }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondFree {
    pub edges: usize,
    pub triangles: usize,
    /// `ε |V|²`.
    pub edge_bound: Rational,
    pub holds: bool,
}

/// `|E| ≤ ε|V|²` for a graph where every edge lies in a unique triangle,
/// after confirming `|E| = 3·|triangles|`.
pub fn diamond_free_inequality(g: &UGraph, eps: &Rational) -> Result<DiamondFree> {
    ensure_positive(eps)?;
    if let Some(((u, v), count)) = unique_triangles_check(g).counterexample {
        return Err(Error::NotUniqueTriangles(u, v, count));
    }
    let triangles = triangle_set(g).len();
    let edges = g.edge_count();
    if edges != 3 * triangles {
        return Err(Error::InvariantViolated(format!("{edges} edges but {triangles} triangles")));
    }
    let n = g.vertex_count();
    let edge_bound = eps * int(n * n);
    Ok(DiamondFree { edges, triangles, holds: int(edges) <= edge_bound, edge_bound })
}

/// Checks one `A` against the construction's identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RothSetCheck {
    pub a: BTreeSet<usize>,
    pub progression: Option<(usize, usize)>,
    pub edges: usize,
    pub triangles: usize,
    pub unique_triangles: bool,
    /// Classification is a bijection onto `{0..M−1} × A`.
    pub bijective: bool,
}

impl RothSetCheck {
    /// Progression-free sets give unique triangles, `M|A|` of them, each
    /// classified once; sets with a progression break uniqueness.
    pub fn consistent(&self, m: usize) -> bool {
        match self.progression {
            None => {
                self.unique_triangles
                    && self.bijective
                    && self.triangles == m * self.a.len()
                    && self.edges == 3 * m * self.a.len()
                    && self.edges == 3 * self.triangles
            }
            Some(_) => !self.unique_triangles,
        }
    }
}

pub fn check_roth_set(n: usize, a: &BTreeSet<usize>) -> Result<RothSetCheck> {
    let inst = build_roth_graph(n, a)?;
    let table = classification_table(&inst);
    let classes: BTreeSet<(usize, usize)> = table.iter().filter_map(|(_, c)| *c).collect();
    let bijective = table.iter().all(|(_, c)| c.is_some())
        && classes.len() == table.len()
        && classes.len() == inst.m * a.len()
        && classes.iter().all(|&(i, d)| i < inst.m && a.contains(&d));
    Ok(RothSetCheck {
        a: a.clone(),
        progression: find_progression3(a),
        edges: inst.graph.edge_count(),
        triangles: table.len(),
        unique_triangles: unique_triangles_check(&inst.graph).holds,
        bijective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RothAuxReport {
    pub n: usize,
    pub m: usize,
    pub epsilon: Rational,
    pub subsets_checked: usize,
    pub progression_free: usize,
    pub max_progression_free: usize,
    /// Lexicographically least progression-free set of maximum size.
    pub witness: BTreeSet<usize>,
    /// `ε · N`.
    pub eps_n: Rational,
    /// `max |A| < ε N`.
    pub max_below_eps_n: bool,
    /// Sets, as sorted lists, for which a construction identity failed.
    pub failures: Vec<Vec<usize>>,
}

impl RothAuxReport {
    pub fn all_identities_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs [`check_roth_set`] on every subset of `{0..N−1}` for `N ≤ 14`.
pub fn roth_aux_verify(n: usize, eps: &Rational) -> Result<RothAuxReport> {
    ensure_positive(eps)?;
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if n > ROTH_AUX_CAP {
        return Err(Error::CapExceeded { what: "N", got: n, cap: ROTH_AUX_CAP });
    }
    let m = 2 * n + 1;
    let checks: Vec<RothSetCheck> = (0u32..1 << n)
        .into_par_iter()
        .map(|mask| check_roth_set(n, &(0..n).filter(|i| mask >> i & 1 == 1).collect()))
        .collect::<Result<_>>()?;
    let mut failures: Vec<Vec<usize>> =
        checks.iter().filter(|c| !c.consistent(m)).map(|c| c.a.iter().copied().collect()).collect();
    failures.sort();
    let free: Vec<&RothSetCheck> = checks.iter().filter(|c| c.progression.is_none()).collect();
    let max = free.iter().map(|c| c.a.len()).max().unwrap_or(0);
    let witness = free
        .iter()
        .filter(|c| c.a.len() == max)
        .map(|c| c.a.iter().copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default();
    let eps_n = eps * int(n);
    Ok(RothAuxReport {
        n,
        m,
        epsilon: eps.clone(),
        subsets_checked: checks.len(),
        progression_free: free.len(),
        max_progression_free: max,
        witness: witness.into_iter().collect(),
        max_below_eps_n: int(max) < eps_n,
        eps_n,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::complete;
    use crate::rational::ratio;

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn progression_sets() {
        assert_eq!(progression3_set(1, 2), [1, 3, 5].into_iter().collect());
        assert_eq!(progression3_set(5, 0), [5].into_iter().collect());
        assert_eq!(progression3_set(0, -1), [0, -1, -2].into_iter().collect());
    }

    #[test]
    fn progression_search() {
        assert_eq!(find_progression3(&set(&[0, 2, 4])), Some((0, 2)));
        assert_eq!(find_progression3(&set(&[0, 1, 3])), None);
        assert_eq!(find_progression3(&set(&[])), None);
        assert_eq!(find_progression3(&set(&[1, 2, 3, 5])), Some((1, 1)));
        assert_eq!(find_progression3(&set(&[1, 3, 4, 5])), Some((1, 2)));
    }

    #[test]
    fn modular_differences() {
        assert_eq!(diff(3, 1, 7), 2);
        assert_eq!(diff(1, 3, 7), 5);
        assert_eq!(diff2(4, 0, 3), 2);
        for n in 1..8 {
            let m = 2 * n + 1;
            for i in 0..m {
                for a in 0..n {
                    assert_eq!(diff((i + a) % m, i, m), a);
                    assert_eq!(diff2((i + 2 * a) % m, i, n), a);
                }
            }
        }
    }

    #[test]
    fn small_instance_counts() {
        let inst = build_roth_graph(3, &set(&[0, 1])).unwrap();
        assert_eq!(inst.m, 7);
        assert_eq!(inst.graph.edge_count(), 42);
        assert!(inst.edge_classes.iter().all(|c| c.len() == 14));
        let empty = build_roth_graph(1, &set(&[])).unwrap();
        assert_eq!(empty.graph.vertex_count(), 9);
        assert_eq!(empty.graph.edge_count(), 0);
        assert!(matches!(build_roth_graph(3, &set(&[3])), Err(Error::OutOfRange(..))));
        assert_eq!(build_roth_graph(0, &set(&[])), Err(Error::ZeroN));
    }

    #[test]
    fn triangles_classify() {
        let inst = build_roth_graph(3, &set(&[0, 1])).unwrap();
        assert_eq!(classify_triangle(encode(0, 0), encode(1, 1), encode(2, 2), &inst), Some((0, 1)));
        assert_eq!(classify_triangle(encode(0, 0), encode(1, 3), encode(2, 2), &inst), None);
        let table = classification_table(&inst);
        assert_eq!(table.len(), 14);
        assert!(table.iter().all(|(t, c)| c.map(|(i, a)| inst.triangle_for(i, a)) == Some(*t)));
    }

    #[test]
    fn unique_triangles() {
        assert!(unique_triangles_check(&complete(3).unwrap()).holds);
        let k4 = unique_triangles_check(&complete(4).unwrap());
        assert!(!k4.holds);
        assert_eq!(k4.counterexample, Some(((0, 1), 2)));
        assert!(unique_triangles_check(&build_roth_graph(3, &set(&[0, 1])).unwrap().graph).holds);
        assert!(!unique_triangles_check(&build_roth_graph(3, &set(&[0, 1, 2])).unwrap().graph).holds);
    }

    #[test]
    fn diamond_free_threshold() {
        let k3 = diamond_free_inequality(&complete(3).unwrap(), &ratio(1, 1)).unwrap();
        assert_eq!((k3.edges, k3.triangles, k3.holds), (3, 1, true));
        let g = build_roth_graph(3, &set(&[0, 1])).unwrap().graph;
        let exact = diamond_free_inequality(&g, &ratio(42, 441)).unwrap();
        assert_eq!((exact.edges, exact.triangles, exact.holds), (42, 14, true));
        let below = ratio(42, 441) - ratio(1, 1_000_000_007);
        assert!(!diamond_free_inequality(&g, &below).unwrap().holds);
        assert!(matches!(diamond_free_inequality(&complete(4).unwrap(), &ratio(1, 1)), Err(Error::NotUniqueTriangles(..))));
    }

    #[test]
    fn aux_verification() {
        let r = roth_aux_verify(5, &ratio(1, 2)).unwrap();
        assert_eq!(r.subsets_checked, 32);
        assert_eq!(r.max_progression_free, 4);
        assert_eq!(r.witness, set(&[0, 1, 3, 4]));
        assert!(r.all_identities_hold());
        let r3 = roth_aux_verify(3, &ratio(1, 1)).unwrap();
        assert!(r3.all_identities_hold());
        assert_eq!(r3.max_progression_free, 2);
        assert!(matches!(roth_aux_verify(15, &ratio(1, 2)), Err(Error::CapExceeded { .. })));
    }
}
