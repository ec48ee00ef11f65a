//! Energy (mean square density) of vertex subsets and partitions.
//!
//! Everything here is exact, so the monotonicity facts of the energy
//! argument can be checked with zero tolerance.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{count_edges_between, UGraph, VertexSet};
use crate::rational::Rational;

fn vertex_count_squared(g: &UGraph) -> Result<BigInt> {
    match g.vertex_count() {
        0 => Err(Error::EmptyGraph),
        n => Ok(BigInt::from(n) * BigInt::from(n)),
    }
}

/// `|U|·|W|·d(U,W)² / |V(G)|²`.
pub fn energy_graph_subsets(us: &VertexSet, ws: &VertexSet, g: &UGraph) -> Result<Rational> {
    let n2 = vertex_count_squared(g)?;
    Ok(subset_energy(us, ws, g, &n2))
}

// |U||W| d² = e² / (|U||W|), which avoids squaring a rational.
fn subset_energy(us: &VertexSet, ws: &VertexSet, g: &UGraph, n2: &BigInt) -> Rational {
    let size = us.len() * ws.len();
    if size == 0 {
        return Rational::zero();
    }
    let e = BigInt::from(count_edges_between(us, ws, g));
    Rational::new(&e * &e, BigInt::from(size) * n2)
}

/// `Σ_{R∈P} Σ_{S∈Q} energy_graph_subsets(R, S, G)`.
pub fn energy_graph_partitions<'a, P, Q>(g: &UGraph, ps: P, qs: Q) -> Result<Rational>
where
    P: IntoIterator<Item = &'a VertexSet>,
    Q: IntoIterator<Item = &'a VertexSet> + Clone,
{
    let n2 = vertex_count_squared(g)?;
    let mut total = Rational::zero();
    for r in ps {
        for s in qs.clone() {
            total += subset_energy(r, s, g, &n2);
        }
    }
    Ok(total)
}

pub fn mean_square_density<'a, P>(g: &UGraph, ps: P) -> Result<Rational>
where
    P: IntoIterator<Item = &'a VertexSet> + Clone,
{
    energy_graph_partitions(g, ps.clone(), ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{PartSet, VertexPartition};
    use crate::rational::ratio;

    fn set(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    fn k3() -> UGraph {
        UGraph::on_range(3, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn subset_energy_examples() {
        let g = k3();
        let v = set(&[0, 1, 2]);
        assert_eq!(energy_graph_subsets(&v, &v, &g).unwrap(), ratio(4, 9));
        assert_eq!(energy_graph_subsets(&VertexSet::new(), &v, &g).unwrap(), ratio(0, 1));

        let kb = UGraph::on_range(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(energy_graph_subsets(&set(&[0, 1]), &set(&[2, 3, 4]), &kb).unwrap(), ratio(6, 25));
    }

    #[test]
    fn partition_energy_examples() {
        let g = k3();
        let trivial = VertexPartition::trivial(g.vertices().clone());
        let discrete = VertexPartition::discrete(g.vertices().clone());
        assert_eq!(mean_square_density(&g, trivial.parts()).unwrap(), ratio(4, 9));
        assert_eq!(mean_square_density(&g, discrete.parts()).unwrap(), ratio(2, 3));
        let empty = PartSet::new();
        assert_eq!(energy_graph_partitions(&g, &empty, trivial.parts()).unwrap(), ratio(0, 1));

        let none = UGraph::edgeless(set(&[0, 1, 2, 3]));
        let p = VertexPartition::from_parts([set(&[0, 3]), set(&[1]), set(&[2])].into_iter().collect()).unwrap();
        assert_eq!(mean_square_density(&none, p.parts()).unwrap(), ratio(0, 1));
    }

    #[test]
    fn empty_graph_is_rejected() {
        let g = UGraph::edgeless(VertexSet::new());
        assert_eq!(energy_graph_subsets(&VertexSet::new(), &VertexSet::new(), &g), Err(Error::EmptyGraph));
    }
}
