//! Seeded random strongly connected digraphs for property checks.

use crate::graph::WeightedDigraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random Hamiltonian cycle plus each remaining ordered pair with
/// probability `extra`; weights uniform in `1..=3`.
pub fn random_icb<R: Rng>(n: usize, extra: f64, rng: &mut R) -> WeightedDigraph {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut on = vec![vec![false; n + 1]; n + 1];
    for i in 0..n {
        on[order[i]][order[(i + 1) % n]] = true;
    }
    for (i, row) in on.iter_mut().enumerate().skip(1) {
        for (j, cell) in row.iter_mut().enumerate().skip(1) {
            if i != j && !*cell && rng.gen_bool(extra) {
                *cell = true;
            }
        }
    }
    let mut arcs = Vec::new();
    for (i, row) in on.iter().enumerate() {
        for (j, &cell) in row.iter().enumerate() {
            if cell {
                arcs.push((i, j, rng.gen_range(1..=3)));
            }
        }
    }
    WeightedDigraph::new(n, &arcs).expect("a Hamiltonian cycle has no sources or sinks")
}
