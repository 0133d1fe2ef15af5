//! Seeded random source-problem generators, shared by the bench harness,
//! the `reduce` subcommand, and the test corpora. Everything is ChaCha8
//! keyed, so identical seeds reproduce identical instances.

use cflr_core::graph::{BoolMatrix, LabeledGraph, LayeredDigraph, SimpleGraph, TripartiteGraph};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Labeled digraph on `n` vertices `n1..n<n>`: every ordered pair (self
/// loops included) gets an edge with probability `density` and a uniform
/// label.
pub fn random_labeled_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    labels: &[&str],
    density: f64,
) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for i in 1..=n {
        g.intern_vertex(&format!("n{i}")).expect("valid");
    }
    for i in 1..=n {
        for j in 1..=n {
            if rng.random::<f64>() < density {
                let l = labels[rng.random_range(0..labels.len())];
                g.add_edge(&format!("n{i}"), &format!("n{j}"), l)
                    .expect("valid");
            }
        }
    }
    g
}

pub fn random_simple_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random::<f64>() < density {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_tripartite(
    rng: &mut ChaCha8Rng,
    na: usize,
    nb: usize,
    nc: usize,
    density: f64,
) -> TripartiteGraph {
    let mut g = TripartiteGraph::new(na, nb, nc);
    for i in 1..=na {
        for j in 1..=nb {
            if rng.random::<f64>() < density {
                g.ab.insert((i, j));
            }
        }
    }
    for i in 1..=nb {
        for j in 1..=nc {
            if rng.random::<f64>() < density {
                g.bc.insert((i, j));
            }
        }
    }
    for i in 1..=nc {
        for j in 1..=na {
            if rng.random::<f64>() < density {
                g.ca.insert((i, j));
            }
        }
    }
    g
}

/// Layered digraph with `k` parts of `part_size` vertices; optionally
/// plants one k-cycle through random per-part vertices.
pub fn random_layered(
    rng: &mut ChaCha8Rng,
    k: usize,
    part_size: usize,
    density: f64,
    plant_cycle: bool,
) -> LayeredDigraph {
    let mut g = LayeredDigraph::new(vec![part_size; k]);
    for layer in 0..k {
        for i in 1..=part_size {
            for j in 1..=part_size {
                if rng.random::<f64>() < density {
                    g.edges[layer].insert((i, j));
                }
            }
        }
    }
    if plant_cycle {
        let picks: Vec<usize> = (0..k).map(|_| rng.random_range(1..=part_size)).collect();
        for layer in 0..k {
            g.edges[layer].insert((picks[layer], picks[(layer + 1) % k]));
        }
    }
    g
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, density: f64) -> BoolMatrix {
    let mut m = BoolMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if rng.random::<f64>() < density {
                m.set(i, j, true);
            }
        }
    }
    m
}
