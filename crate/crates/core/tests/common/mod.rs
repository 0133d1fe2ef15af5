//! Shared corpus generators for the integration tests. Seeded ChaCha8, so
//! every corpus is reproducible.

#![allow(dead_code)]

use cflr_core::grammar::{Grammar, Symbol};
use cflr_core::graph::LabeledGraph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random raw grammar: up to `max_nts` nonterminals over a small alphabet,
/// bodies of length 0..=3 mixing terminals and nonterminals. May generate
/// the empty language.
pub fn random_grammar(rng: &mut ChaCha8Rng, max_nts: usize, alphabet: &[&str]) -> Grammar {
    let nt_count = rng.random_range(1..=max_nts);
    let names: Vec<String> = (0..nt_count).map(|i| format!("N{i}")).collect();
    let mut g = Grammar::new("N0").expect("valid");
    for head in &names {
        let alts = rng.random_range(1..=3);
        for _ in 0..alts {
            let len = rng.random_range(0..=3);
            let body: Vec<Symbol> = (0..len)
                .map(|_| {
                    if rng.random::<f64>() < 0.45 {
                        Symbol::Nonterminal(names[rng.random_range(0..nt_count)].clone())
                    } else {
                        Symbol::Terminal(alphabet[rng.random_range(0..alphabet.len())].to_string())
                    }
                })
                .collect();
            g.add_production(head, &body).expect("valid symbols");
        }
    }
    g
}

/// Random CNF-shaped grammar (unary/binary rules only, optional start
/// epsilon) over at most `max_nts` nonterminals.
pub fn random_cnf_shaped(rng: &mut ChaCha8Rng, max_nts: usize, alphabet: &[&str]) -> Grammar {
    let nt_count = rng.random_range(1..=max_nts);
    let names: Vec<String> = (0..nt_count).map(|i| format!("N{i}")).collect();
    let mut g = Grammar::new("N0").expect("valid");
    for head in &names {
        let alts = rng.random_range(1..=3);
        for _ in 0..alts {
            if rng.random::<f64>() < 0.5 || nt_count == 1 {
                let t = alphabet[rng.random_range(0..alphabet.len())];
                g.add_production(head, &[Symbol::Terminal(t.to_string())])
                    .expect("valid");
            } else {
                let b = names[rng.random_range(0..nt_count)].clone();
                let c = names[rng.random_range(0..nt_count)].clone();
                g.add_production(head, &[Symbol::Nonterminal(b), Symbol::Nonterminal(c)])
                    .expect("valid");
            }
        }
    }
    if rng.random::<f64>() < 0.2 {
        g.add_production("N0", &[]).expect("valid");
    }
    g
}

/// Random digraph on `n` vertices: each ordered pair (self loops included)
/// carries an edge with probability `density`, labeled uniformly.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, labels: &[&str], density: f64) -> LabeledGraph {
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

/// All words of length at most `maxlen` over the alphabet.
pub fn all_words<'a>(alphabet: &'a [&'a str], maxlen: usize) -> Vec<Vec<&'a str>> {
    let mut out: Vec<Vec<&str>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<&str>> = vec![Vec::new()];
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in alphabet {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
