//! Deterministic graph generators for test corpora and the CLI.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, UGraph};
use crate::rational::{is_unit_interval, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphKind {
    /// Each of the `C(n, 2)` pairs independently with probability `p`.
    Random { n: usize, p: Rational, seed: u64 },
    Complete(usize),
    /// Parts `0..a`, `a..a+b`, `a+b..a+b+c`, all cross edges present.
    CompleteTripartite(usize, usize, usize),
    /// Complete bipartite graph between `0..n/2` and `n/2..n`.
    BipartiteHalf(usize),
}

pub fn generate(kind: &GraphKind) -> Result<UGraph> {
    match kind {
        GraphKind::Random { n, p, seed } => random(*n, p, *seed),
        GraphKind::Complete(n) => complete(*n),
        GraphKind::CompleteTripartite(a, b, c) => complete_multipartite(&[*a, *b, *c]),
        GraphKind::BipartiteHalf(n) => complete_multipartite(&[n / 2, n - n / 2]),
    }
}

fn pairs(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

pub fn complete(n: usize) -> Result<UGraph> {
    UGraph::on_range(n, pairs(n))
}

fn complete_multipartite(sizes: &[usize]) -> Result<UGraph> {
    let mut label = Vec::new();
    for (part, &size) in sizes.iter().enumerate() {
        label.extend(std::iter::repeat_n(part, size));
    }
    let n = label.len();
    UGraph::on_range(n, pairs(n).filter(|&(u, v)| label[u] != label[v]))
}

/// `G(n, p)` with an exact rational `p`: a pair is kept when a uniform draw
/// from `0..q` falls below `p·q`. The stream is ChaCha8 seeded from `seed`,
/// consumed once per candidate pair in lexicographic order.
pub fn random(n: usize, p: &Rational, seed: u64) -> Result<UGraph> {
    if !is_unit_interval(p) {
        return Err(Error::InvalidProbability(p.clone()));
    }
    let num = p.numer().to_u64();
    let den = p.denom().to_u64();
    let (num, den) = match (num, den) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::ProbabilityTooFine(p.clone())),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Edge> = pairs(n).filter(|_| rng.gen_range(0..den) < num).collect();
    UGraph::on_range(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn complete_graphs() {
        assert_eq!(complete(3).unwrap().edge_count(), 3);
        assert_eq!(complete(0).unwrap().vertex_count(), 0);
        assert_eq!(generate(&GraphKind::CompleteTripartite(1, 2, 3)).unwrap().edge_count(), 2 + 3 + 6);
        let half = generate(&GraphKind::BipartiteHalf(7)).unwrap();
        assert_eq!(half.edge_count(), 3 * 4);
        assert!(half.has_edge(0, 3) && !half.has_edge(0, 1) && !half.has_edge(3, 4));
    }

    #[test]
    fn random_extremes() {
        for seed in [0, 1, 99, u64::MAX] {
            let g = random(10, &ratio(0, 1), seed).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (10, 0));
            assert_eq!(random(10, &ratio(1, 1), seed).unwrap().edge_count(), 45);
        }
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        let p = ratio(1, 2);
        assert_eq!(random(20, &p, 7).unwrap(), random(20, &p, 7).unwrap());
        assert_ne!(random(20, &p, 7).unwrap(), random(20, &p, 8).unwrap());
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(matches!(random(3, &ratio(3, 2), 0), Err(Error::InvalidProbability(_))));
        assert!(matches!(random(3, &ratio(-1, 2), 0), Err(Error::InvalidProbability(_))));
    }
}
