//! Edge-labeled directed multigraphs with interned vertex names, the text
//! edge-list format, and the graph subroutines the solvers and generators
//! share. Also hosts the plain source-problem inputs the reductions start
//! from (tripartite graphs, simple graphs, layered digraphs, bit matrices).
//!
//! File format: `#` starts a comment, `node <name>` declares an isolated
//! vertex, and every other non-empty line is `src dst label`.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    MalformedLine { line: usize, msg: String },
    BadName(String),
    UnknownLabel(String),
    UnknownVertex(String),
    ArityMismatch { vertices: usize, labels: usize },
    NameCollision(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::MalformedLine { line, msg } => write!(f, "line {line}: {msg}"),
            GraphError::BadName(n) => write!(f, "invalid name `{n}`"),
            GraphError::UnknownLabel(l) => write!(f, "label `{l}` not in the graph alphabet"),
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            GraphError::ArityMismatch { vertices, labels } => {
                write!(f, "path needs |labels| = |vertices|-1, got {vertices} vertices and {labels} labels")
            }
            GraphError::NameCollision(n) => write!(f, "vertex `{n}` exists in both graphs"),
        }
    }
}

fn valid_token(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub src: u32,
    pub dst: u32,
    pub label: u32,
}

/// Directed multigraph with terminal-symbol edge labels. Vertices and labels
/// are interned to dense ids; identical `(src, dst, label)` triples are
/// stored once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledGraph {
    names: Vec<String>,
    ids: BTreeMap<String, u32>,
    labels: Vec<String>,
    label_ids: BTreeMap<String, u32>,
    edges: Vec<Edge>,
    edge_set: BTreeSet<(u32, u32, u32)>,
}

impl LabeledGraph {
    pub fn new() -> LabeledGraph {
        LabeledGraph::default()
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn intern_vertex(&mut self, name: &str) -> Result<u32, GraphError> {
        if let Some(&id) = self.ids.get(name) {
            return Ok(id);
        }
        if !valid_token(name) {
            return Err(GraphError::BadName(name.to_owned()));
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        Ok(id)
    }

    fn intern_label(&mut self, name: &str) -> Result<u32, GraphError> {
        if let Some(&id) = self.label_ids.get(name) {
            return Ok(id);
        }
        if !valid_token(name) {
            return Err(GraphError::BadName(name.to_owned()));
        }
        let id = self.labels.len() as u32;
        self.labels.push(name.to_owned());
        self.label_ids.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, label: &str) -> Result<(), GraphError> {
        let s = self.intern_vertex(src)?;
        let d = self.intern_vertex(dst)?;
        let l = self.intern_label(label)?;
        if self.edge_set.insert((s, d, l)) {
            self.edges.push(Edge {
                src: s,
                dst: d,
                label: l,
            });
        }
        Ok(())
    }

    pub fn vertex_id(&self, name: &str) -> Option<u32> {
        self.ids.get(name).copied()
    }

    pub fn vertex_name(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label_name(&self, id: u32) -> &str {
        &self.labels[id as usize]
    }

    pub fn label_id(&self, name: &str) -> Option<u32> {
        self.label_ids.get(name).copied()
    }

    /// Label names of the alphabet, in first-appearance order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_edge(&self, src: u32, dst: u32, label: u32) -> bool {
        self.edge_set.contains(&(src, dst, label))
    }

    /// True when the vertex has no incident edges.
    pub fn is_isolated(&self, id: u32) -> bool {
        !self.edges.iter().any(|e| e.src == id || e.dst == id)
    }

    /// Fresh vertex name based on `base`, suffixed on collision.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.ids.contains_key(base) {
            return base.to_owned();
        }
        let mut i = 2usize;
        loop {
            let cand = format!("{base}:{i}");
            if !self.ids.contains_key(&cand) {
                return cand;
            }
            i += 1;
        }
    }

    /// Forward adjacency restricted to one label id: `adj[u]` lists `v`.
    pub fn adjacency_for_label(&self, label: u32) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in &self.edges {
            if e.label == label {
                adj[e.src as usize].push(e.dst);
            }
        }
        adj
    }
}

/// Parses the edge-list format; vertex ids are assigned in first-appearance
/// order.
pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    let mut g = LabeledGraph::new();
    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match full_line.find('#') {
            Some(p) => &full_line[..p],
            None => full_line,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["node", name] => {
                g.intern_vertex(name)?;
            }
            [src, dst, label] => g.add_edge(src, dst, label)?,
            _ => {
                return Err(GraphError::MalformedLine {
                    line: line_no,
                    msg: format!(
                        "expected `node <name>` or `src dst label`, got `{}`",
                        line.trim()
                    ),
                })
            }
        }
    }
    Ok(g)
}

/// Inverse of [`parse_graph`] up to structural equality: `node` lines for
/// isolated vertices, then edges in insertion order.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for id in 0..g.n() as u32 {
        if g.is_isolated(id) {
            out.push_str("node ");
            out.push_str(g.vertex_name(id));
            out.push('\n');
        }
    }
    for e in g.edges() {
        out.push_str(&format!(
            "{} {} {}\n",
            g.vertex_name(e.src),
            g.vertex_name(e.dst),
            g.label_name(e.label)
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Vertex pair sets
// ---------------------------------------------------------------------------

/// The All-Pairs answer: a duplicate-free set of (source, target) vertex id
/// pairs, iterated in sorted order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexPairSet {
    pairs: BTreeSet<(u32, u32)>,
}

impl VertexPairSet {
    pub fn new() -> VertexPairSet {
        VertexPairSet::default()
    }

    pub fn insert(&mut self, u: u32, v: u32) -> bool {
        self.pairs.insert((u, v))
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        self.pairs.contains(&(u, v))
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

    /// Pairs as names, for comparisons across graphs with different interning.
    pub fn named(&self, g: &LabeledGraph) -> BTreeSet<(String, String)> {
        self.pairs
            .iter()
            .map(|&(u, v)| (g.vertex_name(u).to_owned(), g.vertex_name(v).to_owned()))
            .collect()
    }

    /// Text form: `u v` per line, sorted by name pair.
    pub fn to_text(&self, g: &LabeledGraph) -> String {
        let mut out = String::new();
        for (u, v) in self.named(g) {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl FromIterator<(u32, u32)> for VertexPairSet {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        VertexPairSet {
            pairs: iter.into_iter().collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// SCC condensation
// ---------------------------------------------------------------------------

/// SCCs of a subgraph plus a topological order of the condensation.
#[derive(Debug, Clone)]
pub struct SccCondensation {
    /// vertex id -> component index; components are numbered in topological
    /// order of the condensation.
    pub comp_of: Vec<usize>,
    /// members per component, in topological order.
    pub components: Vec<Vec<u32>>,
    /// condensation edges `comp -> comp` (no self loops), deduplicated.
    pub dag: Vec<BTreeSet<usize>>,
    /// components with an internal edge (size > 1, or a vertex self-loop).
    pub cyclic: Vec<bool>,
}

/// Iterative Tarjan over an explicit edge list on `n` vertices.
pub fn scc_of_edges(n: usize, edges: &[(u32, u32)]) -> SccCondensation {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v as usize);
    }
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0usize;
    let mut comp_of = vec![UNSET; n];
    let mut comps_rev: Vec<Vec<u32>> = Vec::new();

    // explicit DFS frames: (vertex, next child index)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut ci)) = frames.last_mut() {
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if index[w] == UNSET {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp_of[w] = comps_rev.len();
                        comp.push(w as u32);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps_rev.push(comp);
                }
                frames.pop();
                if let Some(&(p, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }

    // Tarjan finishes components in reverse topological order.
    let count = comps_rev.len();
    let mut components: Vec<Vec<u32>> = comps_rev.into_iter().rev().collect();
    for c in comp_of.iter_mut() {
        *c = count - 1 - *c;
    }
    for comp in components.iter_mut() {
        comp.sort_unstable();
    }
    let mut dag = vec![BTreeSet::new(); count];
    let mut cyclic = vec![false; count];
    for (i, comp) in components.iter().enumerate() {
        if comp.len() > 1 {
            cyclic[i] = true;
        }
    }
    for &(u, v) in edges {
        let (cu, cv) = (comp_of[u as usize], comp_of[v as usize]);
        if cu == cv {
            cyclic[cu] = true;
        } else {
            dag[cu].insert(cv);
        }
    }
    SccCondensation {
        comp_of,
        components,
        dag,
        cyclic,
    }
}

/// SCCs of the subgraph restricted to `restrict_label`, with a topological
/// order of the condensation. The label must belong to the graph alphabet.
pub fn scc_condense(g: &LabeledGraph, restrict_label: &str) -> Result<SccCondensation, GraphError> {
    let label = g
        .label_id(restrict_label)
        .ok_or_else(|| GraphError::UnknownLabel(restrict_label.to_owned()))?;
    let edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .filter(|e| e.label == label)
        .map(|e| (e.src, e.dst))
        .collect();
    Ok(scc_of_edges(g.n(), &edges))
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Graph with every edge reversed; vertex and label tables are preserved.
pub fn reverse(g: &LabeledGraph) -> LabeledGraph {
    let mut out = LabeledGraph::new();
    for name in g.vertex_names() {
        out.intern_vertex(name).expect("names already validated");
    }
    for e in g.edges() {
        out.add_edge(
            g.vertex_name(e.dst),
            g.vertex_name(e.src),
            g.label_name(e.label),
        )
        .expect("names already validated");
    }
    out
}

/// Subgraph keeping all vertices and only edges whose label is in `labels`.
pub fn filter_by_label(g: &LabeledGraph, labels: &[&str]) -> Result<LabeledGraph, GraphError> {
    let mut keep = BTreeSet::new();
    for l in labels {
        let id = g
            .label_id(l)
            .ok_or_else(|| GraphError::UnknownLabel((*l).to_owned()))?;
        keep.insert(id);
    }
    let mut out = LabeledGraph::new();
    for name in g.vertex_names() {
        out.intern_vertex(name).expect("names already validated");
    }
    for e in g.edges() {
        if keep.contains(&e.label) {
            out.add_edge(
                g.vertex_name(e.src),
                g.vertex_name(e.dst),
                g.label_name(e.label),
            )
            .expect("names already validated");
        }
    }
    Ok(out)
}

/// Union of two graphs with disjoint vertex name sets.
pub fn disjoint_union(a: &LabeledGraph, b: &LabeledGraph) -> Result<LabeledGraph, GraphError> {
    let mut out = a.clone();
    for name in b.vertex_names() {
        if out.vertex_id(name).is_some() {
            return Err(GraphError::NameCollision(name.clone()));
        }
    }
    for name in b.vertex_names() {
        out.intern_vertex(name)?;
    }
    for e in b.edges() {
        out.add_edge(
            b.vertex_name(e.src),
            b.vertex_name(e.dst),
            b.label_name(e.label),
        )?;
    }
    Ok(out)
}

/// Adds the path `vertices[0] -> vertices[1] -> ...` with the given edge
/// labels, interning missing vertices.
pub fn add_path(
    g: &mut LabeledGraph,
    vertices: &[&str],
    labels: &[&str],
) -> Result<(), GraphError> {
    if vertices.is_empty() || labels.len() != vertices.len() - 1 {
        return Err(GraphError::ArityMismatch {
            vertices: vertices.len(),
            labels: labels.len(),
        });
    }
    for (i, l) in labels.iter().enumerate() {
        g.add_edge(vertices[i], vertices[i + 1], l)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Source-problem inputs for the reduction generators
// ---------------------------------------------------------------------------

/// Undirected simple graph on 1-based vertex ids, as the clique gadgets
/// expect (id 0 is reserved so every vertex has a nonzero unary encoding).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> SimpleGraph {
        SimpleGraph {
            n,
            adj: vec![BTreeSet::new(); n + 1],
        }
    }

    /// Adds an undirected edge between 1-based vertices; self loops ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || u == 0 || v == 0 || u > self.n || v > self.n {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn connected(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# simple graph, n = {}\n", self.n);
        for i in 1..=self.n {
            out.push_str(&format!("node v{i}\n"));
        }
        for (u, v) in self.edge_pairs() {
            out.push_str(&format!("v{u} v{v} -\n"));
        }
        out
    }
}

/// Tripartite undirected graph with parts A, B, C and only cross-part
/// edges, as the 3-clique reductions expect. Vertices are 1-based per part.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TripartiteGraph {
    pub na: usize,
    pub nb: usize,
    pub nc: usize,
    pub ab: BTreeSet<(usize, usize)>,
    pub bc: BTreeSet<(usize, usize)>,
    pub ca: BTreeSet<(usize, usize)>,
}

impl TripartiteGraph {
    pub fn new(na: usize, nb: usize, nc: usize) -> TripartiteGraph {
        TripartiteGraph {
            na,
            nb,
            nc,
            ..TripartiteGraph::default()
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# tripartite graph, parts {} {} {}\n",
            self.na, self.nb, self.nc
        );
        for i in 1..=self.na {
            out.push_str(&format!("node a{i}\n"));
        }
        for i in 1..=self.nb {
            out.push_str(&format!("node b{i}\n"));
        }
        for i in 1..=self.nc {
            out.push_str(&format!("node c{i}\n"));
        }
        for &(i, j) in &self.ab {
            out.push_str(&format!("a{i} b{j} -\n"));
        }
        for &(i, j) in &self.bc {
            out.push_str(&format!("b{i} c{j} -\n"));
        }
        for &(i, j) in &self.ca {
            out.push_str(&format!("c{i} a{j} -\n"));
        }
        out
    }
}

/// Layered digraph with parts `P1..Pk`; `edges[i]` go from part `i` to part
/// `(i+1) mod k`, so a closed walk of length k is a k-cycle. 1-based vertex
/// indices within each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredDigraph {
    pub parts: Vec<usize>,
    pub edges: Vec<BTreeSet<(usize, usize)>>,
}

impl LayeredDigraph {
    pub fn new(parts: Vec<usize>) -> LayeredDigraph {
        let k = parts.len();
        LayeredDigraph {
            parts,
            edges: vec![BTreeSet::new(); k],
        }
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# layered digraph, k = {}\n", self.k());
        for (p, &size) in self.parts.iter().enumerate() {
            for i in 1..=size {
                out.push_str(&format!("node p{}:{i}\n", p + 1));
            }
        }
        for (p, es) in self.edges.iter().enumerate() {
            let q = (p + 1) % self.k();
            for &(i, j) in es {
                out.push_str(&format!("p{}:{i} p{}:{j} -\n", p + 1, q + 1));
            }
        }
        out
    }
}

/// Square boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    rows: Vec<Vec<bool>>,
}

impl BoolMatrix {
    pub fn zero(n: usize) -> BoolMatrix {
        BoolMatrix {
            n,
            rows: vec![vec![false; n]; n],
        }
    }

    pub fn identity(n: usize) -> BoolMatrix {
        let mut m = BoolMatrix::zero(n);
        for i in 0..n {
            m.rows[i][i] = true;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<bool>>) -> Option<BoolMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(BoolMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.rows[i][j] = v;
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            for &b in row {
                out.push(if b { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_two_edges() {
        let g = parse_graph("u v (\nv w )").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.labels(), ["(".to_string(), ")".to_string()]);
    }

    #[test]
    fn parse_isolated_nodes() {
        let g = parse_graph("node x\nnode y\n# comment\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn parse_malformed() {
        assert!(matches!(
            parse_graph("u v"),
            Err(GraphError::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn dedup_parallel_identical() {
        let mut g = LabeledGraph::new();
        g.add_edge("u", "v", "a").unwrap();
        g.add_edge("u", "v", "a").unwrap();
        g.add_edge("u", "v", "b").unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn round_trip() {
        let text = "node lonely\nu v (\nv w )\nw u (\n";
        let g = parse_graph(text).unwrap();
        let g2 = parse_graph(&serialize_graph(&g)).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn scc_three_cycle() {
        let g = parse_graph("u v a\nv w a\nw u a").unwrap();
        let scc = scc_condense(&g, "a").unwrap();
        assert_eq!(scc.components.len(), 1);
        assert_eq!(scc.components[0].len(), 3);
        assert!(scc.cyclic[0]);
    }

    #[test]
    fn scc_path_in_topo_order() {
        let g = parse_graph("v1 v2 a\nv2 v3 a\nv3 v4 a\nv4 v5 a").unwrap();
        let scc = scc_condense(&g, "a").unwrap();
        assert_eq!(scc.components.len(), 5);
        for (i, comp) in scc.components.iter().enumerate() {
            assert_eq!(comp, &vec![i as u32]);
        }
        assert!(scc.cyclic.iter().all(|&c| !c));
    }

    #[test]
    fn scc_self_loop_is_cyclic() {
        let g = parse_graph("u u a").unwrap();
        let scc = scc_condense(&g, "a").unwrap();
        assert!(scc.cyclic[0]);
    }

    #[test]
    fn condensation_edges_go_forward() {
        let g = parse_graph("a b x\nb c x\nc a x\nc d x\nd e x\ne d x").unwrap();
        let scc = scc_condense(&g, "x").unwrap();
        for (c, succs) in scc.dag.iter().enumerate() {
            for &s in succs {
                assert!(s > c, "condensation edge {c} -> {s} must go forward");
            }
        }
    }

    #[test]
    fn reverse_involution() {
        let g = parse_graph("u v a\nv w b\nnode z").unwrap();
        assert_eq!(reverse(&reverse(&g)), g);
    }

    #[test]
    fn filter_keeps_only_label() {
        let g = parse_graph("u v a\nv w b\nw u a").unwrap();
        let fa = filter_by_label(&g, &["a"]).unwrap();
        assert_eq!(fa.m(), 2);
        assert_eq!(fa.n(), g.n());
        // label partition covers all edges
        let total: usize = g
            .labels()
            .iter()
            .map(|l| filter_by_label(&g, &[l]).unwrap().m())
            .sum();
        assert_eq!(total, g.m());
    }

    #[test]
    fn add_path_line_graph() {
        // five-vertex line graph for a four-symbol word
        let mut g = LabeledGraph::new();
        add_path(
            &mut g,
            &["n1", "n2", "n3", "n4", "n5"],
            &["lb", "lb", "lp", "lp"],
        )
        .unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 4);
        assert!(matches!(
            add_path(&mut g, &["a", "b"], &["x", "y"]),
            Err(GraphError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn disjoint_union_rejects_collisions() {
        let a = parse_graph("u v a").unwrap();
        let b = parse_graph("v w a").unwrap();
        assert!(matches!(
            disjoint_union(&a, &b),
            Err(GraphError::NameCollision(_))
        ));
        let c = parse_graph("x y a").unwrap();
        let u = disjoint_union(&a, &c).unwrap();
        assert_eq!(u.n(), 4);
        assert_eq!(u.m(), 2);
    }

    #[test]
    fn pair_set_sorted_text() {
        let g = parse_graph("b a x\na b x").unwrap();
        let mut ps = VertexPairSet::new();
        ps.insert(g.vertex_id("b").unwrap(), g.vertex_id("a").unwrap());
        ps.insert(g.vertex_id("a").unwrap(), g.vertex_id("b").unwrap());
        assert_eq!(ps.to_text(&g), "a b\nb a\n");
    }
}
