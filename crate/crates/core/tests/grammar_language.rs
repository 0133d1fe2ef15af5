//! Language-level properties of the normalization pipeline: CNF conversion
//! preserves the language (checked against an independent derivation
//! oracle), the classifier's witnesses are real words, and the catalogued
//! presets classify the way the dichotomy expects.

mod common;

use cflr_core::grammar::{classify, parse_grammar, preset, to_cnf, to_proper, Grammar};
use cflr_core::oracle::{cyk, derivation_membership};

fn corpus() -> Vec<(Grammar, Vec<&'static str>)> {
    vec![
        (preset("dyck:1").unwrap(), vec!["(", ")"]),
        (preset("anbn").unwrap(), vec!["a", "b"]),
        (preset("eqcount").unwrap(), vec!["a", "b"]),
        (preset("geq").unwrap(), vec!["a", "b"]),
        (preset("palindrome:ab").unwrap(), vec!["a", "b"]),
        (preset("anbn_mid:cd").unwrap(), vec!["a", "b", "c", "d"]),
        (parse_grammar("S -> 'a' S | 'b'").unwrap(), vec!["a", "b"]),
        (
            parse_grammar("S -> A B\nA -> 'a' | eps\nB -> 'b' B | 'b'").unwrap(),
            vec!["a", "b"],
        ),
        (parse_grammar("S -> S S | 'a'").unwrap(), vec!["a", "b"]),
    ]
}

#[test]
fn cnf_preserves_language_on_corpus() {
    for (g, alphabet) in corpus() {
        let cnf = to_cnf(&g);
        let maxlen = if alphabet.len() <= 2 { 8 } else { 6 };
        for word in common::all_words(&alphabet, maxlen) {
            let direct = derivation_membership(&g, &word).expect("within guardrails");
            let via_cnf = cyk(&cnf, &word);
            assert_eq!(direct, via_cnf, "CNF changed membership of {word:?}");
        }
    }
}

#[test]
fn cnf_preserves_language_on_random_grammars() {
    let mut rng = common::rng(0x5eed_0001);
    let mut checked = 0usize;
    for _ in 0..25 {
        let g = common::random_grammar(&mut rng, 4, &["a", "b"]);
        let cnf = to_cnf(&g);
        for word in common::all_words(&["a", "b"], 6) {
            let direct = derivation_membership(&g, &word).expect("within guardrails");
            assert_eq!(direct, cyk(&cnf, &word), "mismatch on {word:?} for {g:?}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn classifier_witnesses_are_derivable() {
    let mut rng = common::rng(0x5eed_0002);
    let mut grammars: Vec<Grammar> = corpus().into_iter().map(|(g, _)| g).collect();
    for _ in 0..30 {
        grammars.push(common::random_grammar(&mut rng, 4, &["a", "b", "c"]));
    }
    for g in grammars {
        let report = classify(&g);
        match report.witness {
            Some(w) => {
                assert!(report.join_inducing);
                assert!(w.len() >= 2, "witness too short: {w:?}");
                let refs: Vec<&str> = w.iter().map(|s| s.as_str()).collect();
                assert!(cyk(&to_cnf(&g), &refs), "witness {w:?} not in the language");
            }
            None => assert!(!report.join_inducing),
        }
    }
}

#[test]
fn catalog_classifies_as_expected() {
    for name in [
        "dyck:1",
        "dyck:2",
        "dyck_nested:3",
        "geq",
        "anbn",
        "anbn_mid:cd",
        "eqcount",
        "palindrome:ab",
        "apa",
    ] {
        let report = classify(&preset(name).unwrap());
        assert!(report.join_inducing, "{name} must be join-inducing");
    }
    assert!(!classify(&parse_grammar("S -> 'a' | 'b'").unwrap()).join_inducing);
    assert!(!classify(&parse_grammar("S -> eps").unwrap()).join_inducing);
    let empty = parse_grammar("S -> S").unwrap();
    let report = classify(&empty);
    assert!(!report.join_inducing);
    assert!(!report.accepts_empty);
}

#[test]
fn to_proper_idempotent_on_random_grammars() {
    let mut rng = common::rng(0x5eed_0003);
    for _ in 0..40 {
        let g = common::random_grammar(&mut rng, 5, &["a", "b"]);
        let once = to_proper(&g);
        let twice = to_proper(&once);
        assert!(
            once.structurally_equals(&twice),
            "idempotence failed for {g:?}"
        );
    }
}

#[test]
fn proper_form_is_proper() {
    let mut rng = common::rng(0x5eed_0004);
    for _ in 0..40 {
        let g = common::random_grammar(&mut rng, 5, &["a", "b"]);
        let p = to_proper(&g);
        for prod in p.productions() {
            if prod.body.is_empty() {
                assert_eq!(prod.head, p.start(), "epsilon rule off the start symbol");
            }
        }
        // no unit cycles: follow unit rules, expect no repetition
        let unit_edges: Vec<(&str, &str)> = p
            .productions()
            .iter()
            .filter_map(|prod| match prod.body.as_slice() {
                [cflr_core::grammar::Symbol::Nonterminal(n)] => {
                    Some((prod.head.as_str(), n.as_str()))
                }
                _ => None,
            })
            .collect();
        for &(start, _) in &unit_edges {
            let mut frontier = vec![start];
            for _ in 0..=p.nonterminals().len() {
                frontier = frontier
                    .iter()
                    .flat_map(|&x| {
                        unit_edges
                            .iter()
                            .filter(move |&&(a, _)| a == x)
                            .map(|&(_, b)| b)
                    })
                    .collect();
                assert!(!frontier.contains(&start), "unit cycle through {start}");
            }
        }
    }
}
