//! Property tests for the serialization formats and builder contracts.

use cflr_core::grammar::{parse_grammar, serialize_grammar, Grammar, Symbol};
use cflr_core::graph::{filter_by_label, parse_graph, reverse, serialize_graph, LabeledGraph};
use proptest::prelude::*;

fn name_strategy() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,3}".prop_map(|s| s)
}

fn graph_strategy() -> impl Strategy<Value = LabeledGraph> {
    let edge = (name_strategy(), name_strategy(), "[a-z(){}\\[\\]]{1,2}");
    (
        proptest::collection::vec(edge, 0..30),
        proptest::collection::vec(name_strategy(), 0..5),
    )
        .prop_map(|(edges, isolated)| {
            let mut g = LabeledGraph::new();
            for name in isolated {
                g.intern_vertex(&name).unwrap();
            }
            for (u, v, l) in edges {
                g.add_edge(&u, &v, &l).unwrap();
            }
            g
        })
}

fn grammar_strategy() -> impl Strategy<Value = Grammar> {
    let body_sym = prop_oneof![
        (0usize..3).prop_map(|i| Symbol::Nonterminal(format!("G{i}"))),
        "[a-z]".prop_map(Symbol::Terminal),
    ];
    let production = ((0usize..3), proptest::collection::vec(body_sym, 0..4));
    proptest::collection::vec(production, 1..10).prop_map(|prods| {
        let mut g = Grammar::new("G0").unwrap();
        for i in 0..3 {
            g.add_production(&format!("G{i}"), &[Symbol::Terminal("z".into())])
                .unwrap();
        }
        for (head, body) in prods {
            g.add_production(&format!("G{head}"), &body).unwrap();
        }
        g
    })
}

type NamedEdges = std::collections::BTreeSet<(String, String, String)>;

fn named_view(g: &LabeledGraph) -> (std::collections::BTreeSet<String>, NamedEdges) {
    let names = g.vertex_names().iter().cloned().collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            (
                g.vertex_name(e.src).to_string(),
                g.vertex_name(e.dst).to_string(),
                g.label_name(e.label).to_string(),
            )
        })
        .collect();
    (names, edges)
}

proptest! {
    #[test]
    fn graph_round_trip(g in graph_strategy()) {
        // structural round trip: same vertex names, same named edge set
        // (ids are an internal detail and may be renumbered)
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(named_view(&back), named_view(&g));
        // serializing again is byte-stable
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn reverse_is_involutive(g in graph_strategy()) {
        prop_assert_eq!(reverse(&reverse(&g)), g);
    }

    #[test]
    fn label_filters_partition_edges(g in graph_strategy()) {
        let total: usize = g
            .labels()
            .iter()
            .map(|l| filter_by_label(&g, &[l]).unwrap().m())
            .sum();
        prop_assert_eq!(total, g.m());
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,120}") {
        // arbitrary input is rejected or parsed, never a crash
        let _ = parse_grammar(&text);
        let _ = parse_graph(&text);
    }

    #[test]
    fn grammar_round_trip(g in grammar_strategy()) {
        // productions have set semantics; the serializer groups
        // alternatives by head, so compare as sets
        let text = serialize_grammar(&g);
        let back = parse_grammar(&text).unwrap();
        prop_assert_eq!(back.start(), g.start());
        let a: std::collections::BTreeSet<_> = back.productions().iter().cloned().collect();
        let b: std::collections::BTreeSet<_> = g.productions().iter().cloned().collect();
        prop_assert_eq!(a, b);
        let na: std::collections::BTreeSet<_> = back.nonterminals().iter().cloned().collect();
        let nb: std::collections::BTreeSet<_> = g.nonterminals().iter().cloned().collect();
        prop_assert_eq!(na, nb);
    }
}
