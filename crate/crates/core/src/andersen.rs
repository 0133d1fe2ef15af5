//! Andersen's pointer analysis as a Datalog fixpoint over the four edge
//! relations `alpha`, `e`, `beta`, `gamma`, computing the inverse points-to
//! relation T:
//!
//! ```text
//! T(x,y) :- alpha(x,y).
//! T(x,y) :- T(x,z), e(z,y).
//! T(w,y) :- T(w,z), T(z,x), beta(x,y).
//! T(w,z) :- T(w,x), gamma(x,y), T(z,y).
//! ```
//!
//! Equivalently the two-relation grammar `T <- alpha | T e | T T beta |
//! T gamma Tbar` with `Tbar` the column swap of `T`; [`apa_word_check`]
//! decides validity of a single label word under that grammar.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::grammar::{preset, to_cnf, CnfGrammar};
use crate::graph::LabeledGraph;
use crate::oracle;

pub const APA_LABELS: [&str; 4] = ["alpha", "e", "beta", "gamma"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AndersenError {
    InvalidLabel(String),
    UnknownVertex(String),
}

impl fmt::Display for AndersenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AndersenError::InvalidLabel(l) => {
                write!(f, "label `{l}` is not one of alpha/e/beta/gamma")
            }
            AndersenError::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
        }
    }
}

/// A labeled graph whose alphabet is exactly the four pointer-analysis
/// relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApaInstance {
    graph: LabeledGraph,
}

impl ApaInstance {
    pub fn new(graph: LabeledGraph) -> Result<ApaInstance, AndersenError> {
        for l in graph.labels() {
            if !APA_LABELS.contains(&l.as_str()) {
                return Err(AndersenError::InvalidLabel(l.clone()));
            }
        }
        Ok(ApaInstance { graph })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }
}

/// The derived relation T(x, y): "y points to x". `Tbar` is the column
/// swap.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TRelation {
    pairs: BTreeSet<(u32, u32)>,
}

impl TRelation {
    pub fn contains(&self, x: u32, y: u32) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<(u32, u32)> {
        &self.pairs
    }

    /// Text form reusing the pair-set format: `x y` per line, sorted.
    pub fn to_text(&self, g: &LabeledGraph) -> String {
        let named: BTreeSet<(String, String)> = self
            .pairs
            .iter()
            .map(|&(x, y)| (g.vertex_name(x).to_owned(), g.vertex_name(y).to_owned()))
            .collect();
        let mut out = String::new();
        for (x, y) in named {
            out.push_str(&x);
            out.push(' ');
            out.push_str(&y);
            out.push('\n');
        }
        out
    }
}

/// Least fixpoint of the four rules, computed semi-naively: a FIFO delta of
/// newly derived T facts, with each rule indexed on the delta position.
pub fn apa_fixpoint(inst: &ApaInstance) -> TRelation {
    let g = inst.graph();
    let n = g.n();
    let by_label = |name: &str| -> Vec<(u32, u32)> {
        g.edges()
            .iter()
            .filter(|e| g.label_name(e.label) == name)
            .map(|e| (e.src, e.dst))
            .collect()
    };
    // base-relation indexes
    let mut e_from: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (z, y) in by_label("e") {
        e_from[z as usize].push(y);
    }
    let mut beta_from: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (x, y) in by_label("beta") {
        beta_from[x as usize].push(y);
    }
    let mut gamma_from: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut gamma_to: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (x, y) in by_label("gamma") {
        gamma_from[x as usize].push(y);
        gamma_to[y as usize].push(x);
    }

    // T indexed by both columns
    let mut t_from: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    let mut t_to: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut delta: VecDeque<(u32, u32)> = VecDeque::new();
    let mut all = TRelation::default();
    let insert = |x: u32,
                  y: u32,
                  t_from: &mut Vec<BTreeSet<u32>>,
                  t_to: &mut Vec<Vec<u32>>,
                  delta: &mut VecDeque<(u32, u32)>,
                  all: &mut TRelation| {
        if t_from[x as usize].insert(y) {
            t_to[y as usize].push(x);
            delta.push_back((x, y));
            all.pairs.insert((x, y));
        }
    };

    for (x, y) in by_label("alpha") {
        insert(x, y, &mut t_from, &mut t_to, &mut delta, &mut all);
    }

    while let Some((x, z)) = delta.pop_front() {
        // rule 2, delta as T(x,z): e(z,y) extends to T(x,y)
        for &y in &e_from[z as usize].clone() {
            insert(x, y, &mut t_from, &mut t_to, &mut delta, &mut all);
        }
        // rule 3, delta as first conjunct T(w,z): T(z,x'), beta(x',y)
        {
            let (w, z1) = (x, z);
            let mids: Vec<u32> = t_from[z1 as usize].iter().copied().collect();
            for x1 in mids {
                for &y in &beta_from[x1 as usize].clone() {
                    insert(w, y, &mut t_from, &mut t_to, &mut delta, &mut all);
                }
            }
        }
        // rule 3, delta as second conjunct T(z,x'): T(w,z), beta(x',y)
        {
            let (z1, x1) = (x, z);
            let ws: Vec<u32> = t_to[z1 as usize].clone();
            for &y in &beta_from[x1 as usize].clone() {
                for &w in &ws {
                    insert(w, y, &mut t_from, &mut t_to, &mut delta, &mut all);
                }
            }
        }
        // rule 4, delta as first conjunct T(w,x'): gamma(x',y), T(z,y)
        {
            let (w, x1) = (x, z);
            for &y in &gamma_from[x1 as usize].clone() {
                let zs: Vec<u32> = t_to[y as usize].clone();
                for &z1 in &zs {
                    insert(w, z1, &mut t_from, &mut t_to, &mut delta, &mut all);
                }
            }
        }
        // rule 4, delta as third conjunct T(z,y): T(w,x'), gamma(x',y)
        {
            let (z1, y) = (x, z);
            for &x1 in &gamma_to[y as usize].clone() {
                let ws: Vec<u32> = t_to[x1 as usize].clone();
                for &w in &ws {
                    insert(w, z1, &mut t_from, &mut t_to, &mut delta, &mut all);
                }
            }
        }
    }
    all
}

/// Is T(p, q) derivable?
pub fn apa_on_demand(inst: &ApaInstance, p: &str, q: &str) -> Result<bool, AndersenError> {
    let g = inst.graph();
    let p_id = g
        .vertex_id(p)
        .ok_or_else(|| AndersenError::UnknownVertex(p.to_owned()))?;
    let q_id = g
        .vertex_id(q)
        .ok_or_else(|| AndersenError::UnknownVertex(q.to_owned()))?;
    Ok(apa_fixpoint(inst).contains(p_id, q_id))
}

/// CNF of the two-sided grammar (`T` rules plus the mechanically mirrored
/// `Tbar` rules), as used by [`apa_word_check`].
pub fn apa_word_grammar() -> CnfGrammar {
    to_cnf(&preset("apa").expect("catalogued preset"))
}

/// True iff the word over `{alpha, alphabar, beta, betabar, gamma,
/// gammabar, e, ebar}` is derivable from T; backward edges appear as barred
/// labels. Decided by CYK.
pub fn apa_word_check(word: &[&str]) -> bool {
    oracle::cyk(&apa_word_grammar(), word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn inst(text: &str) -> ApaInstance {
        ApaInstance::new(parse_graph(text).unwrap()).unwrap()
    }

    #[test]
    fn rejects_foreign_labels() {
        let g = parse_graph("a b delta").unwrap();
        assert!(matches!(
            ApaInstance::new(g),
            Err(AndersenError::InvalidLabel(_))
        ));
    }

    #[test]
    fn rule_one_alpha_only() {
        let i = inst("a b alpha");
        let t = apa_fixpoint(&i);
        assert_eq!(t.len(), 1);
        assert!(apa_on_demand(&i, "a", "b").unwrap());
        assert!(!apa_on_demand(&i, "b", "a").unwrap());
    }

    #[test]
    fn rule_two_e_extension() {
        let i = inst("a b alpha\nb c e");
        let t = apa_fixpoint(&i);
        let g = i.graph();
        assert!(t.contains(g.vertex_id("a").unwrap(), g.vertex_id("c").unwrap()));
    }

    #[test]
    fn rule_three_example() {
        let i = inst("a b alpha\nb c alpha\nc d beta");
        let t = apa_fixpoint(&i);
        let g = i.graph();
        let id = |x: &str| g.vertex_id(x).unwrap();
        for (x, y) in [("a", "b"), ("b", "c"), ("a", "d")] {
            assert!(t.contains(id(x), id(y)), "missing T({x},{y})");
        }
    }

    #[test]
    fn rule_four_example() {
        let i = inst("a b alpha\nb c gamma\nd c alpha");
        let t = apa_fixpoint(&i);
        let g = i.graph();
        let id = |x: &str| g.vertex_id(x).unwrap();
        for (x, y) in [("a", "b"), ("d", "c"), ("a", "d")] {
            assert!(t.contains(id(x), id(y)), "missing T({x},{y})");
        }
    }

    #[test]
    fn fixpoint_matches_naive_on_examples() {
        for text in [
            "a b alpha",
            "a b alpha\nb c alpha\nc d beta",
            "a b alpha\nb c gamma\nd c alpha",
            "a b alpha\nb c e\nc d beta\na d gamma\nd a alpha",
        ] {
            let i = inst(text);
            let semi = apa_fixpoint(&i);
            let naive = crate::oracle::naive_apa(i.graph()).unwrap();
            assert_eq!(semi.as_set(), &naive, "mismatch on {text}");
        }
    }

    #[test]
    fn word_check_examples() {
        assert!(apa_word_check(&["alpha"]));
        // T <- alpha gamma T gammabar alphabar, inner T = alpha
        assert!(apa_word_check(&[
            "alpha", "gamma", "alpha", "gammabar", "alphabar"
        ]));
        assert!(apa_word_check(&["alpha", "e"]));
        assert!(apa_word_check(&["alpha", "alpha", "beta"]));
        // every valid word starts with alpha
        assert!(!apa_word_check(&["beta"]));
        assert!(!apa_word_check(&["beta", "alpha"]));
        assert!(!apa_word_check(&["gamma", "alpha", "beta"]));
        assert!(!apa_word_check(&[]));
    }

    #[test]
    fn empty_instance() {
        let g = parse_graph("node p\nnode q").unwrap();
        let i = ApaInstance::new(g).unwrap();
        assert!(!apa_on_demand(&i, "p", "q").unwrap());
        assert!(apa_fixpoint(&i).is_empty());
    }
}
