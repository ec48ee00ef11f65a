use std::collections::BTreeMap;

use proptest::prelude::*;

use regularity::energy::{energy_graph_partitions, energy_graph_subsets, mean_square_density};
use regularity::partition::{common_refinement, p2, refines};
use regularity::rational::int;
use regularity::{PartSet, UGraph, VertexPartition, VertexSet};

fn graph_from_mask(n: usize, mask: u64) -> UGraph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    UGraph::on_range(n, edges).unwrap()
}

fn partition_from_labels(labels: &[usize]) -> VertexPartition {
    let mut blocks: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for (v, &l) in labels.iter().enumerate() {
        blocks.entry(l).or_default().insert(v);
    }
    VertexPartition::from_parts(blocks.into_values().collect::<PartSet>()).unwrap()
}

fn instance() -> impl Strategy<Value = (UGraph, VertexPartition, VertexPartition)> {
    (1usize..=9).prop_flat_map(|n| {
        (
            any::<u64>().prop_map(move |m| graph_from_mask(n, m)),
            prop::collection::vec(0usize..4, n).prop_map(|l| partition_from_labels(&l)),
            prop::collection::vec(0usize..4, n).prop_map(|l| partition_from_labels(&l)),
        )
    })
}

proptest! {
    #[test]
    fn energy_in_unit_interval((g, p, _) in instance()) {
        let e = mean_square_density(&g, p.parts()).unwrap();
        prop_assert!(e >= int(0) && e <= int(1));
    }

    #[test]
    fn common_refinement_does_not_lower_energy((g, p, q) in instance()) {
        let r = common_refinement(g.vertices(), &[p.clone(), q.clone()]).unwrap();
        prop_assert!(refines(g.vertices(), r.parts(), p.parts()));
        prop_assert!(refines(g.vertices(), r.parts(), q.parts()));
        let before = mean_square_density(&g, p.parts()).unwrap();
        prop_assert!(mean_square_density(&g, r.parts()).unwrap() >= before);
    }

    #[test]
    fn common_refinement_is_coarsest((g, p, q) in instance()) {
        let r = common_refinement(g.vertices(), &[p.clone(), q.clone()]).unwrap();
        for &u in g.vertices() {
            for &v in g.vertices() {
                let together = p.part_of(u) == p.part_of(v) && q.part_of(u) == q.part_of(v);
                prop_assert_eq!(together, r.part_of(u) == r.part_of(v));
            }
        }
    }

    #[test]
    fn splitting_one_side_does_not_lower_energy((g, p, q) in instance()) {
        let us = p.iter().next().unwrap().clone();
        let ws = q.iter().next().unwrap().clone();
        let xs: VertexSet = us.iter().copied().step_by(2).collect();
        let halves = p2(&xs, &us).unwrap();
        let whole = energy_graph_subsets(&us, &ws, &g).unwrap();
        let split = energy_graph_partitions(&g, &halves, [&ws]).unwrap();
        prop_assert!(split >= whole);
    }
}
