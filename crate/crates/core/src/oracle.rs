//! Independent brute-force reference implementations for differential
//! testing. Nothing here touches the solver module: reachability is decided
//! through the classical product-grammar construction, membership through
//! CYK and bounded derivation search, and the source problems (triangles,
//! cliques, cycles, boolean products, pointer-analysis fixpoints) by
//! exhaustive enumeration.
//!
//! Oracles are allowed to be slow; guardrails are hard errors so a test can
//! never silently pass on partial evidence.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::grammar::{CnfGrammar, Grammar, Symbol, Word};
use crate::graph::{
    BoolMatrix, LabeledGraph, LayeredDigraph, SimpleGraph, TripartiteGraph, VertexPairSet,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    Guardrail(String),
    UnknownVertex(String),
    InvalidLabel(String),
    DimensionMismatch,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Guardrail(m) => write!(f, "oracle guardrail exceeded: {m}"),
            OracleError::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            OracleError::InvalidLabel(l) => write!(f, "invalid label `{l}`"),
            OracleError::DimensionMismatch => write!(f, "matrix dimensions differ"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    BarHillel,
    PathEnum,
    Cyk,
    NaiveFixpoint,
    ExhaustiveSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Bool(bool),
    Pairs(BTreeSet<(String, String)>),
}

/// Outcome of an oracle run, for the CLI `oracle` subcommand. `bounded`
/// marks sound-but-incomplete methods (bounded path enumeration).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub method: OracleMethod,
    pub verdict: OracleVerdict,
    pub bounded: bool,
    pub work_bound: Option<usize>,
}

impl OracleReport {
    pub fn exact(method: OracleMethod, verdict: OracleVerdict) -> OracleReport {
        OracleReport {
            method,
            verdict,
            bounded: false,
            work_bound: None,
        }
    }

    pub fn bounded(method: OracleMethod, verdict: OracleVerdict, bound: usize) -> OracleReport {
        OracleReport {
            method,
            verdict,
            bounded: true,
            work_bound: Some(bound),
        }
    }

    /// One-line summary for command output.
    pub fn summary(&self) -> String {
        let method = match self.method {
            OracleMethod::BarHillel => "bar_hillel",
            OracleMethod::PathEnum => "path_enum",
            OracleMethod::Cyk => "cyk",
            OracleMethod::NaiveFixpoint => "naive_fixpoint",
            OracleMethod::ExhaustiveSearch => "exhaustive_search",
        };
        let verdict = match &self.verdict {
            OracleVerdict::Bool(b) => alloc::format!("verdict={b}"),
            OracleVerdict::Pairs(p) => alloc::format!("pairs={}", p.len()),
        };
        let mut line = alloc::format!("method={method} bounded={} {verdict}", self.bounded);
        if let Some(b) = self.work_bound {
            line.push_str(&alloc::format!(" work_bound={b}"));
        }
        line
    }
}

// ---------------------------------------------------------------------------
// CYK
// ---------------------------------------------------------------------------

/// CYK membership for a CNF grammar; the empty word goes through
/// `accepts_empty`. Symbols outside the alphabet reject.
pub fn cyk(cnf: &CnfGrammar, word: &[&str]) -> bool {
    cyk_from(cnf, cnf.start(), word)
}

/// CYK from an arbitrary nonterminal. The empty word is accepted only for
/// the start symbol of a grammar that accepts it.
pub fn cyk_from(cnf: &CnfGrammar, from: &str, word: &[&str]) -> bool {
    if cnf.is_degenerate() {
        return false;
    }
    let c = cnf.compile();
    let Some(from_id) = c.nt_id(from) else {
        return false;
    };
    let len = word.len();
    if len == 0 {
        return from_id == c.start && c.accepts_empty;
    }
    let mut ids = Vec::with_capacity(len);
    for w in word {
        match c.term_id(w) {
            Some(id) => ids.push(id),
            None => return false,
        }
    }
    let nt_count = c.nts.len();
    // table[i][l][A]: A derives word[i..i+l]
    let mut table = vec![vec![vec![false; nt_count]; len + 1]; len];
    for (i, &t) in ids.iter().enumerate() {
        for &(a, tt) in &c.unary {
            if tt == t {
                table[i][1][a] = true;
            }
        }
    }
    for l in 2..=len {
        for i in 0..=len - l {
            for s in 1..l {
                for &(a, b, d) in &c.binary {
                    if table[i][s][b] && table[i + s][l - s][d] {
                        table[i][l][a] = true;
                    }
                }
            }
        }
    }
    table[0][len][from_id]
}

// ---------------------------------------------------------------------------
// Bar-Hillel product reachability
// ---------------------------------------------------------------------------

/// Productivity table of the product grammar with nonterminals `(p, A, q)`:
/// naive round-based iteration, no worklist, no shared machinery with the
/// solver.
fn product_table(c: &crate::grammar::CompiledCnf, g: &LabeledGraph) -> Vec<bool> {
    let n = g.n();
    let mut productive = vec![false; c.nts.len() * n * n];
    let idx = |a: usize, p: usize, q: usize| (a * n + p) * n + q;
    for e in g.edges() {
        let label = g.label_name(e.label);
        for &(a, tt) in &c.unary {
            if c.terms[tt] == label {
                productive[idx(a, e.src as usize, e.dst as usize)] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        for &(a, b, d) in &c.binary {
            for p in 0..n {
                for q in 0..n {
                    if !productive[idx(b, p, q)] {
                        continue;
                    }
                    for r in 0..n {
                        if productive[idx(d, q, r)] && !productive[idx(a, p, r)] {
                            productive[idx(a, p, r)] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return productive;
        }
    }
}

/// Reachability via the grammar-automaton product: the answer is
/// productivity of the triple `(s, S, t)`, plus the empty-word diagonal.
pub fn bar_hillel_reachability(cnf: &CnfGrammar, g: &LabeledGraph, s: &str, t: &str) -> bool {
    let (Some(s_id), Some(t_id)) = (g.vertex_id(s), g.vertex_id(t)) else {
        return false;
    };
    if cnf.is_degenerate() {
        return false;
    }
    let c = cnf.compile();
    if s_id == t_id && c.accepts_empty {
        return true;
    }
    let n = g.n();
    let table = product_table(&c, g);
    table[(c.start * n + s_id as usize) * n + t_id as usize]
}

/// All pairs off the same product table, for set-level differential tests.
pub fn bar_hillel_all_pairs(cnf: &CnfGrammar, g: &LabeledGraph) -> VertexPairSet {
    let mut out = VertexPairSet::new();
    if cnf.is_degenerate() {
        return out;
    }
    let c = cnf.compile();
    let n = g.n();
    let table = product_table(&c, g);
    for p in 0..n {
        for q in 0..n {
            if table[(c.start * n + p) * n + q] {
                out.insert(p as u32, q as u32);
            }
        }
    }
    if c.accepts_empty {
        for v in 0..n {
            out.insert(v as u32, v as u32);
        }
    }
    out
}

/// Derivability of a single fact `(nonterminal, s, t)` off the product
/// table; confirms solver facts independently of path enumeration bounds.
pub fn bar_hillel_fact(cnf: &CnfGrammar, g: &LabeledGraph, nt: &str, s: u32, t: u32) -> bool {
    if cnf.is_degenerate() {
        return false;
    }
    let c = cnf.compile();
    let Some(a) = c.nt_id(nt) else {
        return false;
    };
    let n = g.n();
    let table = product_table(&c, g);
    table[(a * n + s as usize) * n + t as usize]
}

// ---------------------------------------------------------------------------
// Path enumeration
// ---------------------------------------------------------------------------

const PATH_ENUM_MAXLEN: usize = 16;
const PATH_ENUM_STEPS: usize = 20_000_000;

/// All label words of s-to-t walks (not simple paths) of length at most
/// `maxlen`. Sound but bounded; `maxlen` beyond 16 is a hard error.
pub fn enumerate_paths(
    g: &LabeledGraph,
    s: &str,
    t: &str,
    maxlen: usize,
) -> Result<BTreeSet<Word>, OracleError> {
    if maxlen > PATH_ENUM_MAXLEN {
        return Err(OracleError::Guardrail(alloc::format!(
            "maxlen {maxlen} > {PATH_ENUM_MAXLEN}"
        )));
    }
    let s_id = g
        .vertex_id(s)
        .ok_or_else(|| OracleError::UnknownVertex(s.to_owned()))?;
    let t_id = g
        .vertex_id(t)
        .ok_or_else(|| OracleError::UnknownVertex(t.to_owned()))?;
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e.src as usize].push((e.dst, e.label));
    }
    let mut words = BTreeSet::new();
    let mut word: Vec<String> = Vec::new();
    let mut steps = 0usize;
    // stack of (vertex, next edge index)
    let mut stack: Vec<(u32, usize)> = vec![(s_id, 0)];
    if s_id == t_id {
        words.insert(Vec::new());
    }
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if word.len() >= maxlen || *next >= adj[v as usize].len() {
            stack.pop();
            word.pop();
            continue;
        }
        let (w, l) = adj[v as usize][*next];
        *next += 1;
        steps += 1;
        if steps > PATH_ENUM_STEPS {
            return Err(OracleError::Guardrail(
                "path enumeration step budget".to_owned(),
            ));
        }
        word.push(g.label_name(l).to_owned());
        if w == t_id {
            words.insert(word.clone());
        }
        stack.push((w, 0));
    }
    Ok(words)
}

// ---------------------------------------------------------------------------
// Bounded derivation membership
// ---------------------------------------------------------------------------

const DERIVATION_MAX_LEN: usize = 64;

/// Exact membership for small words, decided directly on the raw grammar:
/// a closure over "nonterminal derives word[i..j]" facts, with each
/// production body matched against a span by a small reachability sweep.
/// No epsilon elimination, no CNF, no shared machinery with the solver, so
/// it independently checks the whole normalization pipeline.
pub fn derivation_membership(g: &Grammar, word: &[&str]) -> Result<bool, OracleError> {
    let len = word.len();
    if len > DERIVATION_MAX_LEN {
        return Err(OracleError::Guardrail(alloc::format!(
            "derivation membership word length {len} > {DERIVATION_MAX_LEN}"
        )));
    }
    let nts: Vec<&str> = g.nonterminals().iter().map(|s| s.as_str()).collect();
    let nt_id: BTreeMap<&str, usize> = nts.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let span = |i: usize, j: usize| i * (len + 1) + j;
    // derives[A][span(i, j)]: A => * word[i..j]
    let mut derives = vec![vec![false; (len + 1) * (len + 1)]; nts.len()];
    loop {
        let mut changed = false;
        for p in g.productions() {
            let head = nt_id[p.head.as_str()];
            for i in 0..=len {
                // positions reachable after consuming a body prefix from i
                let mut reach = vec![false; len + 1];
                reach[i] = true;
                for sym in &p.body {
                    let mut next = vec![false; len + 1];
                    for k in i..=len {
                        if !reach[k] {
                            continue;
                        }
                        match sym {
                            Symbol::Terminal(t) => {
                                if k < len && word[k] == t.as_str() {
                                    next[k + 1] = true;
                                }
                            }
                            Symbol::Nonterminal(n) => {
                                let b = nt_id[n.as_str()];
                                for j in k..=len {
                                    if derives[b][span(k, j)] {
                                        next[j] = true;
                                    }
                                }
                            }
                        }
                    }
                    reach = next;
                }
                for j in i..=len {
                    if reach[j] && !derives[head][span(i, j)] {
                        derives[head][span(i, j)] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(derives[nt_id[g.start()]][span(0, len)])
}

// ---------------------------------------------------------------------------
// Source-problem brute forces
// ---------------------------------------------------------------------------

/// Does the tripartite graph contain a triangle (one vertex per part)?
pub fn brute_triangle(g: &TripartiteGraph) -> bool {
    for &(a, b) in &g.ab {
        for c in 1..=g.nc {
            if g.bc.contains(&(b, c)) && g.ca.contains(&(c, a)) {
                return true;
            }
        }
    }
    false
}

const CLIQUE_MAX_N: usize = 20;
const CLIQUE_MAX_C: usize = 6;

/// Exhaustive c-clique detection, guarded to n <= 20 and c <= 6.
pub fn brute_kclique(g: &SimpleGraph, c: usize) -> Result<bool, OracleError> {
    if g.n() > CLIQUE_MAX_N {
        return Err(OracleError::Guardrail(alloc::format!(
            "clique n {} > {CLIQUE_MAX_N}",
            g.n()
        )));
    }
    if c > CLIQUE_MAX_C {
        return Err(OracleError::Guardrail(alloc::format!(
            "clique size {c} > {CLIQUE_MAX_C}"
        )));
    }
    if c == 0 {
        return Ok(true);
    }
    fn extend(g: &SimpleGraph, chosen: &mut Vec<usize>, from: usize, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for v in from..=g.n() {
            if chosen.iter().all(|&u| g.connected(u, v)) {
                chosen.push(v);
                if extend(g, chosen, v + 1, left - 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(extend(g, &mut Vec::new(), 1, c))
}

const CYCLE_MAX_N: usize = 40;

/// k-cycle detection in a layered digraph: a closed walk of length k visits
/// one vertex per part, so per-start layered reachability is exact.
pub fn brute_kcycle(g: &LayeredDigraph, k: usize) -> Result<bool, OracleError> {
    if g.total_vertices() > CYCLE_MAX_N {
        return Err(OracleError::Guardrail(alloc::format!(
            "cycle n {} > {CYCLE_MAX_N}",
            g.total_vertices()
        )));
    }
    if k != g.k() {
        return Err(OracleError::Guardrail(alloc::format!(
            "k = {k} does not match the {}-layered input",
            g.k()
        )));
    }
    for start in 1..=g.parts[0] {
        let mut frontier: BTreeSet<usize> = BTreeSet::new();
        frontier.insert(start);
        for layer in 0..k {
            let mut next = BTreeSet::new();
            for &(u, v) in &g.edges[layer] {
                if frontier.contains(&u) {
                    next.insert(v);
                }
            }
            frontier = next;
        }
        if frontier.contains(&start) {
            return Ok(true);
        }
    }
    Ok(false)
}

const BMM_MAX_N: usize = 64;

/// Naive boolean matrix product, guarded to dimension 64.
pub fn naive_bmm(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix, OracleError> {
    if a.n() != b.n() {
        return Err(OracleError::DimensionMismatch);
    }
    if a.n() > BMM_MAX_N {
        return Err(OracleError::Guardrail(alloc::format!(
            "matrix dim {} > {BMM_MAX_N}",
            a.n()
        )));
    }
    let n = a.n();
    let mut c = BoolMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if a.get(i, k) && b.get(k, j) {
                    c.set(i, j, true);
                    break;
                }
            }
        }
    }
    Ok(c)
}

/// Round-robin, index-free fixpoint of the four pointer-analysis rules over
/// an instance graph labeled with `alpha`/`e`/`beta`/`gamma`. Reference for
/// the semi-naive engine.
pub fn naive_apa(g: &LabeledGraph) -> Result<BTreeSet<(u32, u32)>, OracleError> {
    for l in g.labels() {
        if !matches!(l.as_str(), "alpha" | "e" | "beta" | "gamma") {
            return Err(OracleError::InvalidLabel(l.clone()));
        }
    }
    let by = |name: &str| -> Vec<(u32, u32)> {
        g.edges()
            .iter()
            .filter(|e| g.label_name(e.label) == name)
            .map(|e| (e.src, e.dst))
            .collect()
    };
    let alpha = by("alpha");
    let e_edges = by("e");
    let beta = by("beta");
    let gamma = by("gamma");

    let mut t: BTreeSet<(u32, u32)> = alpha.iter().copied().collect();
    loop {
        let mut fresh: Vec<(u32, u32)> = Vec::new();
        for &(x, z) in &t {
            for &(z2, y) in &e_edges {
                if z2 == z && !t.contains(&(x, y)) {
                    fresh.push((x, y));
                }
            }
        }
        for &(w, z) in &t {
            for &(z2, x) in &t {
                if z2 != z {
                    continue;
                }
                for &(x2, y) in &beta {
                    if x2 == x && !t.contains(&(w, y)) {
                        fresh.push((w, y));
                    }
                }
            }
        }
        for &(w, x) in &t {
            for &(x2, y) in &gamma {
                if x2 != x {
                    continue;
                }
                for &(z, y2) in &t {
                    if y2 == y && !t.contains(&(w, z)) {
                        fresh.push((w, z));
                    }
                }
            }
        }
        if fresh.is_empty() {
            return Ok(t);
        }
        t.extend(fresh);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_grammar, preset, to_cnf};
    use crate::graph::parse_graph;

    #[test]
    fn cyk_dyck1() {
        let cnf = to_cnf(&preset("dyck:1").unwrap());
        assert!(cyk(&cnf, &["(", ")", "(", ")"]));
        assert!(!cyk(&cnf, &["(", "(", ")"]));
        assert!(cyk(&cnf, &[]));
        assert!(!cyk(&cnf, &["x"]));
    }

    #[test]
    fn cyk_dyck2_nesting() {
        let cnf = to_cnf(&preset("dyck:2").unwrap());
        assert!(cyk(&cnf, &["lb", "lp", "rp", "rb"]));
        assert!(!cyk(&cnf, &["lb", "rp"]));
    }

    #[test]
    fn cyk_agrees_with_derivation_search() {
        let corpus = [
            preset("dyck:1").unwrap(),
            preset("anbn").unwrap(),
            preset("eqcount").unwrap(),
            parse_grammar("S -> 'a' S | 'b'").unwrap(),
        ];
        let alphabets: [&[&str]; 4] = [&["(", ")"], &["a", "b"], &["a", "b"], &["a", "b"]];
        for (g, alpha) in corpus.iter().zip(alphabets) {
            let cnf = to_cnf(g);
            // all words of length <= 6 over a binary alphabet
            for len in 0..=6usize {
                for code in 0..(1usize << len) {
                    let word: Vec<&str> = (0..len).map(|i| alpha[(code >> i) & 1]).collect();
                    let by_cyk = cyk(&cnf, &word);
                    let by_search = derivation_membership(g, &word).unwrap();
                    assert_eq!(by_cyk, by_search, "disagreement on {word:?}");
                }
            }
        }
    }

    #[test]
    fn bar_hillel_single_edge() {
        let g = parse_graph("u v a").unwrap();
        let cnf = to_cnf(&parse_grammar("S -> 'a'").unwrap());
        assert!(bar_hillel_reachability(&cnf, &g, "u", "v"));
        assert!(!bar_hillel_reachability(&cnf, &g, "v", "u"));
        assert!(!bar_hillel_reachability(&cnf, &g, "u", "u"));
    }

    #[test]
    fn bar_hillel_dyck_pair() {
        let g = parse_graph("u x (\nx v )").unwrap();
        let cnf = to_cnf(&preset("dyck:1").unwrap());
        assert!(bar_hillel_reachability(&cnf, &g, "u", "v"));
        assert!(bar_hillel_reachability(&cnf, &g, "x", "x")); // empty word
        assert!(!bar_hillel_reachability(&cnf, &g, "v", "u"));
    }

    #[test]
    fn enumerate_paths_basic() {
        let g = parse_graph("u x (\nx v )").unwrap();
        let words = enumerate_paths(&g, "u", "v", 2).unwrap();
        assert_eq!(words.len(), 1);
        assert!(words.contains(&vec!["(".to_string(), ")".to_string()]));
    }

    #[test]
    fn enumerate_paths_two_cycle() {
        let g = parse_graph("u v a\nv u a").unwrap();
        let words = enumerate_paths(&g, "u", "v", 5).unwrap();
        let odd: BTreeSet<usize> = words.iter().map(|w| w.len()).collect();
        assert_eq!(odd, BTreeSet::from([1, 3, 5]));
        assert!(enumerate_paths(&g, "u", "v", 17).is_err());
    }

    #[test]
    fn brute_clique_k4() {
        let mut g = SimpleGraph::new(4);
        for u in 1..=4 {
            for v in u + 1..=4 {
                g.add_edge(u, v);
            }
        }
        assert!(brute_kclique(&g, 3).unwrap());
        assert!(brute_kclique(&g, 4).unwrap());
        assert!(!brute_kclique(&g, 5).unwrap());
        assert!(brute_kclique(&g, 7).is_err());
    }

    #[test]
    fn brute_triangle_examples() {
        let mut g = TripartiteGraph::new(2, 2, 2);
        g.ab.insert((1, 2));
        g.bc.insert((2, 1));
        g.ca.insert((1, 1));
        assert!(brute_triangle(&g));
        g.ca.clear();
        assert!(!brute_triangle(&g));
    }

    #[test]
    fn brute_cycle_layered() {
        let mut g = LayeredDigraph::new(vec![2, 2, 2]);
        g.edges[0].insert((1, 1));
        g.edges[1].insert((1, 2));
        g.edges[2].insert((2, 1));
        assert!(brute_kcycle(&g, 3).unwrap());
        g.edges[2].clear();
        assert!(!brute_kcycle(&g, 3).unwrap());
    }

    #[test]
    fn naive_bmm_identity() {
        let b = BoolMatrix::from_rows(vec![vec![true, true], vec![false, false]]).unwrap();
        let c = naive_bmm(&BoolMatrix::identity(2), &b).unwrap();
        assert_eq!(c, b);
    }

    #[test]
    fn naive_apa_rule_examples() {
        // rule 3: alpha(a,b), alpha(b,c), beta(c,d) gives T(a,d)
        let g = parse_graph("a b alpha\nb c alpha\nc d beta").unwrap();
        let t = naive_apa(&g).unwrap();
        let name = |x: &str| g.vertex_id(x).unwrap();
        assert!(t.contains(&(name("a"), name("b"))));
        assert!(t.contains(&(name("b"), name("c"))));
        assert!(t.contains(&(name("a"), name("d"))));

        // rule 4: alpha(a,b), gamma(b,c), alpha(d,c) gives T(a,d)
        let g = parse_graph("a b alpha\nb c gamma\nd c alpha").unwrap();
        let t = naive_apa(&g).unwrap();
        let name = |x: &str| g.vertex_id(x).unwrap();
        assert!(t.contains(&(name("a"), name("d"))));
    }
}
