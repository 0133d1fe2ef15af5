//! CFL-reachability solvers.
//!
//! * [`all_pairs`] — generic cubic worklist over a CNF grammar.
//! * [`join_free_all_pairs`] — single edge scan for join-free grammars.
//! * [`all_pairs_linear`] — the O(m n) solver for linear grammars; facts are
//!   only ever extended by single graph edges.
//! * [`geq_on_demand`] — the O(m) algorithm for the `a^i b^j, i >= j`
//!   language via SCC condensation and reverse BFS.
//! * [`geq_all_pairs_dominance`] — the three-step longest-a / shortest-b /
//!   existence-dominance pipeline for the same language.
//!
//! All solvers are deterministic: FIFO worklists, insertion-order seeds,
//! sorted outputs.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::grammar::{classify, to_proper, CnfGrammar, Grammar, Symbol};
use crate::graph::{scc_of_edges, LabeledGraph, VertexPairSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    NotLinear,
    JoinInducing,
    UnknownVertex(String),
    UnsupportedLabel(String),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::NotLinear => write!(f, "grammar is not linear"),
            SolverError::JoinInducing => {
                write!(f, "grammar is join-inducing; use the generic solver")
            }
            SolverError::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            SolverError::UnsupportedLabel(l) => {
                write!(f, "label `{l}` outside the supported alphabet")
            }
        }
    }
}

/// Result of an all-pairs solve. `inert_labels` lists graph labels absent
/// from the grammar alphabet; such edges never match and callers may warn
/// once about them.
#[derive(Debug, Clone)]
pub struct Solution {
    pub pairs: VertexPairSet,
    pub inert_labels: Vec<String>,
    facts: Vec<(usize, u32, u32)>,
    nt_names: Vec<String>,
}

impl Solution {
    pub fn fact_count(&self) -> usize {
        self.facts.len()
    }

    /// Derived facts `(nonterminal, u, v)` in derivation order.
    pub fn facts(&self) -> impl Iterator<Item = (&str, u32, u32)> + '_ {
        self.facts
            .iter()
            .map(move |&(a, u, v)| (self.nt_names[a].as_str(), u, v))
    }
}

fn inert_labels(g: &LabeledGraph, known: &[String]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in g.edges() {
        let l = g.label_name(e.label);
        if !known.iter().any(|k| k == l) && seen.insert(l.to_owned()) {
            out.push(l.to_owned());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Generic cubic worklist solver
// ---------------------------------------------------------------------------

struct FactStore {
    n: usize,
    /// (A, u) -> set of v
    from: Vec<BTreeSet<u32>>,
    /// (A, v) -> list of u
    to: Vec<Vec<u32>>,
    queue: VecDeque<(usize, u32, u32)>,
    log: Vec<(usize, u32, u32)>,
}

impl FactStore {
    fn new(nt_count: usize, n: usize) -> FactStore {
        FactStore {
            n,
            from: vec![BTreeSet::new(); nt_count * n.max(1)],
            to: vec![Vec::new(); nt_count * n.max(1)],
            queue: VecDeque::new(),
            log: Vec::new(),
        }
    }

    fn insert(&mut self, a: usize, u: u32, v: u32) {
        if self.from[a * self.n + u as usize].insert(v) {
            self.to[a * self.n + v as usize].push(u);
            self.queue.push_back((a, u, v));
            self.log.push((a, u, v));
        }
    }

    fn targets(&self, a: usize, u: u32) -> &BTreeSet<u32> {
        &self.from[a * self.n + u as usize]
    }

    fn sources(&self, a: usize, v: u32) -> &[u32] {
        &self.to[a * self.n + v as usize]
    }
}

/// All (u, v) with v reachable from u along a word of the grammar's
/// language. Includes (v, v) for every vertex when the grammar accepts the
/// empty string.
pub fn all_pairs(cnf: &CnfGrammar, g: &LabeledGraph) -> Solution {
    let c = cnf.compile();
    let n = g.n();
    let inert = inert_labels(g, &c.terms);
    let mut store = FactStore::new(c.nts.len().max(1), n);

    if !cnf.is_degenerate() {
        // rule indexes: a fact can be the left or the right child of a join
        let mut by_left: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.nts.len()];
        let mut by_right: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.nts.len()];
        for &(a, b, d) in &c.binary {
            by_left[b].push((a, d));
            by_right[d].push((a, b));
        }
        let mut unary_by_term: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for &(a, t) in &c.unary {
            unary_by_term
                .entry(c.terms[t].as_str())
                .or_default()
                .push(a);
        }

        for e in g.edges() {
            if let Some(heads) = unary_by_term.get(g.label_name(e.label)) {
                for &a in heads {
                    store.insert(a, e.src, e.dst);
                }
            }
        }
        while let Some((b, u, v)) = store.queue.pop_front() {
            for &(a, d) in &by_left[b] {
                let partners: Vec<u32> = store.targets(d, v).iter().copied().collect();
                for w in partners {
                    store.insert(a, u, w);
                }
            }
            for &(a, bl) in &by_right[b] {
                let partners: Vec<u32> = store.sources(bl, u).to_vec();
                for w in partners {
                    store.insert(a, w, v);
                }
            }
        }
    }

    let mut pairs = VertexPairSet::new();
    if !cnf.is_degenerate() {
        for u in 0..n as u32 {
            for &v in store.targets(c.start, u) {
                pairs.insert(u, v);
            }
        }
        if c.accepts_empty {
            for v in 0..n as u32 {
                pairs.insert(v, v);
            }
        }
    }
    Solution {
        pairs,
        inert_labels: inert,
        facts: store.log,
        nt_names: c.nts,
    }
}

/// Single-pair query, answered off the all-pairs fixpoint.
pub fn on_demand(
    cnf: &CnfGrammar,
    g: &LabeledGraph,
    s: &str,
    t: &str,
) -> Result<bool, SolverError> {
    let s_id = g
        .vertex_id(s)
        .ok_or_else(|| SolverError::UnknownVertex(s.to_owned()))?;
    let t_id = g
        .vertex_id(t)
        .ok_or_else(|| SolverError::UnknownVertex(t.to_owned()))?;
    Ok(all_pairs(cnf, g).pairs.contains(s_id, t_id))
}

// ---------------------------------------------------------------------------
// Join-free fast path
// ---------------------------------------------------------------------------

/// For a join-free grammar the language is a set of single symbols (plus
/// possibly the empty string); the answer is one pass over the edges.
pub fn join_free_all_pairs(g: &Grammar, graph: &LabeledGraph) -> Result<Solution, SolverError> {
    let cnf = crate::grammar::to_cnf(g);
    let c = cnf.compile();
    if !c.binary.is_empty() {
        return Err(SolverError::JoinInducing);
    }
    let single_words: BTreeSet<&str> = c
        .unary
        .iter()
        .filter(|&&(a, _)| a == c.start)
        .map(|&(_, t)| c.terms[t].as_str())
        .collect();
    let mut pairs = VertexPairSet::new();
    let mut facts = Vec::new();
    for e in graph.edges() {
        if single_words.contains(graph.label_name(e.label)) && pairs.insert(e.src, e.dst) {
            facts.push((c.start, e.src, e.dst));
        }
    }
    if c.accepts_empty {
        for v in 0..graph.n() as u32 {
            pairs.insert(v, v);
        }
    }
    Ok(Solution {
        pairs,
        inert_labels: inert_labels(graph, &c.terms),
        facts,
        nt_names: c.nts,
    })
}

// ---------------------------------------------------------------------------
// Linear-grammar solver
// ---------------------------------------------------------------------------

/// Lowered linear rules: every fact extension consumes exactly one edge.
struct LinearRules {
    nts: Vec<String>,
    terms: Vec<String>,
    start: usize,
    accepts_empty: bool,
    /// A -> a
    unary: Vec<(usize, usize)>,
    /// indexed by B: (A, a) with A -> a B
    left_ext: Vec<Vec<(usize, usize)>>,
    /// indexed by B: (A, a) with A -> B a
    right_ext: Vec<Vec<(usize, usize)>>,
}

fn fresh(base: &str, used: &mut BTreeSet<String>) -> String {
    if used.insert(base.to_owned()) {
        return base.to_owned();
    }
    let mut i = 2usize;
    loop {
        let cand = alloc::format!("{base}_{i}");
        if used.insert(cand.clone()) {
            return cand;
        }
        i += 1;
    }
}

fn lower_linear(g: &Grammar) -> Option<LinearRules> {
    let p = to_proper(g);
    if p.productions().is_empty() {
        return Some(LinearRules {
            nts: vec![p.start().to_owned()],
            terms: Vec::new(),
            start: 0,
            accepts_empty: false,
            unary: Vec::new(),
            left_ext: vec![Vec::new()],
            right_ext: vec![Vec::new()],
        });
    }
    let accepts_empty = p
        .productions()
        .iter()
        .any(|r| r.head == p.start() && r.body.is_empty());
    let mut used: BTreeSet<String> = p
        .nonterminals()
        .iter()
        .chain(p.terminals().iter())
        .cloned()
        .collect();

    // peel bodies down to {a}, {a B}, {B a}, {B}
    type R = (String, Vec<Symbol>);
    let mut work: VecDeque<R> = p
        .productions()
        .iter()
        .map(|r| (r.head.clone(), r.body.clone()))
        .collect();
    let mut lowered: Vec<R> = Vec::new();
    let mut counters: BTreeMap<String, usize> = BTreeMap::new();
    while let Some((head, body)) = work.pop_front() {
        match body.as_slice() {
            [] => {} // only the start epsilon rule; handled by accepts_empty
            [_]
            | [Symbol::Terminal(_), Symbol::Nonterminal(_)]
            | [Symbol::Nonterminal(_), Symbol::Terminal(_)] => lowered.push((head, body)),
            _ => {
                let c = counters.entry(head.clone()).or_insert(0);
                *c += 1;
                let next = fresh(&alloc::format!("{head}_{c}"), &mut used);
                if let Symbol::Terminal(t) = &body[0] {
                    lowered.push((
                        head,
                        vec![
                            Symbol::Terminal(t.clone()),
                            Symbol::Nonterminal(next.clone()),
                        ],
                    ));
                    work.push_back((next, body[1..].to_vec()));
                } else {
                    // the single nonterminal leads; peel a terminal off the right
                    let last = body.len() - 1;
                    let Symbol::Terminal(t) = &body[last] else {
                        return None; // two nonterminals: not linear
                    };
                    lowered.push((
                        head,
                        vec![
                            Symbol::Nonterminal(next.clone()),
                            Symbol::Terminal(t.clone()),
                        ],
                    ));
                    work.push_back((next, body[..last].to_vec()));
                }
            }
        }
    }

    // eliminate (acyclic) unit rules by closure
    let unit_target = |b: &[Symbol]| match b {
        [Symbol::Nonterminal(n)] => Some(n.clone()),
        _ => None,
    };
    let heads: BTreeSet<String> = lowered.iter().map(|(h, _)| h.clone()).collect();
    let mut final_rules: Vec<R> = Vec::new();
    let mut seen: BTreeSet<R> = BTreeSet::new();
    for a in &heads {
        let mut closure = BTreeSet::new();
        let mut stack = vec![a.clone()];
        while let Some(x) = stack.pop() {
            for (h, b) in &lowered {
                if *h == x {
                    if let Some(n) = unit_target(b) {
                        if closure.insert(n.clone()) {
                            stack.push(n);
                        }
                    }
                }
            }
        }
        for (h, b) in &lowered {
            if unit_target(b).is_some() {
                continue;
            }
            if h == a || closure.contains(h) {
                let r = (a.clone(), b.clone());
                if seen.insert(r.clone()) {
                    final_rules.push(r);
                }
            }
        }
    }

    // intern
    let mut nts: Vec<String> = vec![p.start().to_owned()];
    for (h, b) in &final_rules {
        if !nts.contains(h) {
            nts.push(h.clone());
        }
        for s in b {
            if let Symbol::Nonterminal(n) = s {
                if !nts.contains(n) {
                    nts.push(n.clone());
                }
            }
        }
    }
    let mut terms: Vec<String> = Vec::new();
    for (_, b) in &final_rules {
        for s in b {
            if let Symbol::Terminal(t) = s {
                if !terms.contains(t) {
                    terms.push(t.clone());
                }
            }
        }
    }
    let nt_id = |n: &str| nts.iter().position(|x| x == n).expect("interned");
    let term_id = |t: &str| terms.iter().position(|x| x == t).expect("interned");
    let mut unary = Vec::new();
    let mut left_ext = vec![Vec::new(); nts.len()];
    let mut right_ext = vec![Vec::new(); nts.len()];
    for (h, b) in &final_rules {
        match b.as_slice() {
            [Symbol::Terminal(t)] => unary.push((nt_id(h), term_id(t))),
            [Symbol::Terminal(t), Symbol::Nonterminal(n)] => {
                left_ext[nt_id(n)].push((nt_id(h), term_id(t)))
            }
            [Symbol::Nonterminal(n), Symbol::Terminal(t)] => {
                right_ext[nt_id(n)].push((nt_id(h), term_id(t)))
            }
            _ => unreachable!("lowering leaves only three shapes"),
        }
    }
    Some(LinearRules {
        start: 0,
        nts,
        terms,
        accepts_empty,
        unary,
        left_ext,
        right_ext,
    })
}

/// O(m n) all-pairs for linear grammars: every derived fact is extended only
/// by single graph edges on the left or the right.
pub fn all_pairs_linear(g: &Grammar, graph: &LabeledGraph) -> Result<Solution, SolverError> {
    if !classify(g).linear {
        return Err(SolverError::NotLinear);
    }
    let rules = lower_linear(g).ok_or(SolverError::NotLinear)?;
    let n = graph.n();

    // adjacency per lowered terminal
    let mut fwd: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); n]; rules.terms.len()];
    let mut rev: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); n]; rules.terms.len()];
    for e in graph.edges() {
        if let Some(t) = rules
            .terms
            .iter()
            .position(|x| x == graph.label_name(e.label))
        {
            fwd[t][e.src as usize].push(e.dst);
            rev[t][e.dst as usize].push(e.src);
        }
    }

    let mut store = FactStore::new(rules.nts.len().max(1), n);
    for e in graph.edges() {
        for &(a, t) in &rules.unary {
            if rules.terms[t] == graph.label_name(e.label) {
                store.insert(a, e.src, e.dst);
            }
        }
    }
    while let Some((b, u, v)) = store.queue.pop_front() {
        for &(a, t) in &rules.left_ext[b] {
            let preds: Vec<u32> = rev[t][u as usize].clone();
            for w in preds {
                store.insert(a, w, v);
            }
        }
        for &(a, t) in &rules.right_ext[b] {
            let succs: Vec<u32> = fwd[t][v as usize].clone();
            for w in succs {
                store.insert(a, u, w);
            }
        }
    }

    let mut pairs = VertexPairSet::new();
    if !rules.nts.is_empty() {
        for u in 0..n as u32 {
            for &v in store.targets(rules.start, u) {
                pairs.insert(u, v);
            }
        }
    }
    if rules.accepts_empty {
        for v in 0..n as u32 {
            pairs.insert(v, v);
        }
    }
    Ok(Solution {
        pairs,
        inert_labels: inert_labels(graph, &rules.terms),
        facts: store.log,
        nt_names: rules.nts,
    })
}

// ---------------------------------------------------------------------------
// Extremal path matrices and the G>= algorithms
// ---------------------------------------------------------------------------

/// Extended integer for path lengths; `PosInf` marks an unbounded (cyclic)
/// longest path or an absent shortest path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    fn bump(self) -> ExtInt {
        match self {
            ExtInt::Fin(x) => ExtInt::Fin(x + 1),
            other => other,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(x) => write!(f, "{x}"),
            ExtInt::PosInf => write!(f, "+inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalMode {
    Longest,
    Shortest,
}

/// n-by-n matrix of extremal single-label path lengths.
#[derive(Debug, Clone)]
pub struct ExtremalPathMatrix {
    pub mode: ExtremalMode,
    pub label: String,
    n: usize,
    entries: Vec<ExtInt>,
}

impl ExtremalPathMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: u32, j: u32) -> ExtInt {
        self.entries[i as usize * self.n + j as usize]
    }
}

fn label_edges(g: &LabeledGraph, label: &str) -> Vec<(u32, u32)> {
    match g.label_id(label) {
        Some(id) => g
            .edges()
            .iter()
            .filter(|e| e.label == id)
            .map(|e| (e.src, e.dst))
            .collect(),
        None => Vec::new(),
    }
}

/// Longest-path lengths over the `label` subgraph; `+inf` between endpoints
/// whenever a cyclic component (including a single self-loop) lies on a
/// connecting path, `-inf` when unreachable. Diagonal entries are 0 (the
/// empty path) unless the vertex itself sits on a cycle.
pub fn longest_path_matrix(g: &LabeledGraph, label: &str) -> ExtremalPathMatrix {
    let n = g.n();
    let edges = label_edges(g, label);
    let scc = scc_of_edges(n, &edges);
    let comp_count = scc.components.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
    for (c, succs) in scc.dag.iter().enumerate() {
        for &s in succs {
            preds[s].push(c);
        }
    }
    let mut entries = vec![ExtInt::NegInf; n * n];
    for src in 0..n {
        let comp_src = scc.comp_of[src];
        let mut best = vec![ExtInt::NegInf; comp_count];
        for c in 0..comp_count {
            let mut val = if c == comp_src {
                ExtInt::Fin(0)
            } else {
                ExtInt::NegInf
            };
            for &p in &preds[c] {
                if best[p] != ExtInt::NegInf {
                    val = val.max(best[p].bump());
                }
            }
            if val != ExtInt::NegInf && scc.cyclic[c] {
                val = ExtInt::PosInf;
            }
            best[c] = val;
        }
        for dst in 0..n {
            entries[src * n + dst] = best[scc.comp_of[dst]];
        }
    }
    ExtremalPathMatrix {
        mode: ExtremalMode::Longest,
        label: label.to_owned(),
        n,
        entries,
    }
}

/// Shortest-path lengths over the `label` subgraph by per-source BFS;
/// `+inf` when unreachable, 0 on the diagonal.
pub fn shortest_path_matrix(g: &LabeledGraph, label: &str) -> ExtremalPathMatrix {
    let n = g.n();
    let edges = label_edges(g, label);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u as usize].push(v);
    }
    let mut entries = vec![ExtInt::PosInf; n * n];
    for src in 0..n {
        let mut queue = VecDeque::new();
        entries[src * n + src] = ExtInt::Fin(0);
        queue.push_back(src as u32);
        while let Some(v) = queue.pop_front() {
            let ExtInt::Fin(d) = entries[src * n + v as usize] else {
                unreachable!()
            };
            for &w in &adj[v as usize] {
                if entries[src * n + w as usize] == ExtInt::PosInf {
                    entries[src * n + w as usize] = ExtInt::Fin(d + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    ExtremalPathMatrix {
        mode: ExtremalMode::Shortest,
        label: label.to_owned(),
        n,
        entries,
    }
}

fn check_geq_alphabet(g: &LabeledGraph) -> Result<(), SolverError> {
    for e in g.edges() {
        let l = g.label_name(e.label);
        if l != "a" && l != "b" {
            return Err(SolverError::UnsupportedLabel(l.to_owned()));
        }
    }
    Ok(())
}

/// O(m) single-pair decision for the language `a^i b^j with i >= j`:
/// longest a-path values from `s` via SCC condensation, shortest b-path
/// values to `t` via reverse BFS, then a dominance scan over all vertices
/// (including `s` and `t`; at-least comparison, so the single word "ab"
/// with equal counts is accepted).
pub fn geq_on_demand(g: &LabeledGraph, s: &str, t: &str) -> Result<bool, SolverError> {
    check_geq_alphabet(g)?;
    let s_id = g
        .vertex_id(s)
        .ok_or_else(|| SolverError::UnknownVertex(s.to_owned()))? as usize;
    let t_id = g
        .vertex_id(t)
        .ok_or_else(|| SolverError::UnknownVertex(t.to_owned()))? as usize;
    let n = g.n();

    // longest a-path from s, over the condensation in topological order
    let a_edges = label_edges(g, "a");
    let scc = scc_of_edges(n, &a_edges);
    let comp_count = scc.components.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
    for (c, succs) in scc.dag.iter().enumerate() {
        for &x in succs {
            preds[x].push(c);
        }
    }
    let comp_s = scc.comp_of[s_id];
    let mut la = vec![ExtInt::NegInf; comp_count];
    for c in 0..comp_count {
        let mut val = if c == comp_s {
            ExtInt::Fin(0)
        } else {
            ExtInt::NegInf
        };
        for &p in &preds[c] {
            if la[p] != ExtInt::NegInf {
                val = val.max(la[p].bump());
            }
        }
        if val != ExtInt::NegInf && scc.cyclic[c] {
            val = ExtInt::PosInf;
        }
        la[c] = val;
    }

    // shortest b-path to t by BFS on reversed b-edges
    let b_edges = label_edges(g, "b");
    let mut radj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in &b_edges {
        radj[v as usize].push(u);
    }
    let mut lb = vec![ExtInt::PosInf; n];
    let mut queue = VecDeque::new();
    lb[t_id] = ExtInt::Fin(0);
    queue.push_back(t_id as u32);
    while let Some(v) = queue.pop_front() {
        let ExtInt::Fin(d) = lb[v as usize] else {
            unreachable!()
        };
        for &w in &radj[v as usize] {
            if lb[w as usize] == ExtInt::PosInf {
                lb[w as usize] = ExtInt::Fin(d + 1);
                queue.push_back(w);
            }
        }
    }

    Ok((0..n).any(|v| {
        la[scc.comp_of[v]] != ExtInt::NegInf
            && lb[v] != ExtInt::PosInf
            && la[scc.comp_of[v]] >= lb[v]
    }))
}

/// All-pairs for the `a^i b^j, i >= j` language: longest-a matrix,
/// shortest-b matrix, then the existence-dominance product — (i, j) is in
/// the output iff some switch vertex k has a longest a-path from i at least
/// as long as the shortest b-path from k to j.
pub fn geq_all_pairs_dominance(g: &LabeledGraph) -> Result<VertexPairSet, SolverError> {
    check_geq_alphabet(g)?;
    let n = g.n();
    let ma = longest_path_matrix(g, "a");
    let mb = shortest_path_matrix(g, "b");
    let mut pairs = VertexPairSet::new();
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            let dominated = (0..n as u32).any(|k| {
                let a = ma.get(i, k);
                let b = mb.get(k, j);
                a != ExtInt::NegInf && b != ExtInt::PosInf && a >= b
            });
            if dominated {
                pairs.insert(i, j);
            }
        }
    }
    Ok(pairs)
}
