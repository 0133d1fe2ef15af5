//! Generators turning source problems (triangles, k-cliques, k-cycles,
//! boolean matrix products) into concrete reachability instances, plus the
//! right-quotient and inverse-homomorphism graph transforms. Every
//! generator is a pure function of its inputs, emits deterministic vertex
//! names carrying their provenance (`CL1:t17:3`), and can attach a
//! brute-force ground truth for differential testing.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::digest::digest_str;
use crate::grammar::{classify, Grammar, Word};
use crate::graph::{
    BoolMatrix, GraphError, LabeledGraph, LayeredDigraph, SimpleGraph, TripartiteGraph,
};
use crate::oracle::{self, OracleError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    KOutOfRange(String),
    BadSourceGraph(String),
    JoinFree,
    NonSquare,
    EvenK(usize),
    UnknownTarget(String),
    MissingMapping(String),
    Oracle(OracleError),
    Graph(GraphError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::KOutOfRange(m) => write!(f, "k out of range: {m}"),
            ReductionError::BadSourceGraph(m) => write!(f, "bad source graph: {m}"),
            ReductionError::JoinFree => write!(f, "grammar is join-free; no witness string exists"),
            ReductionError::NonSquare => write!(f, "matrices must be square and equal-sized"),
            ReductionError::EvenK(k) => write!(f, "k must be odd, got {k}"),
            ReductionError::UnknownTarget(t) => write!(f, "unknown target `{t}`"),
            ReductionError::MissingMapping(l) => write!(f, "homomorphism undefined on label `{l}`"),
            ReductionError::Oracle(e) => write!(f, "verification oracle failed: {e}"),
            ReductionError::Graph(e) => write!(f, "graph construction failed: {e}"),
        }
    }
}

impl From<GraphError> for ReductionError {
    fn from(e: GraphError) -> Self {
        ReductionError::Graph(e)
    }
}

impl From<OracleError> for ReductionError {
    fn from(e: OracleError) -> Self {
        ReductionError::Oracle(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    OnDemand,
    AllPairsFiltered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundTruth {
    Bool(bool),
    Pairs(BTreeSet<(String, String)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub generator: String,
    pub params: String,
    pub source_digest: String,
}

/// A generated reachability instance: graph, grammar preset, query, and the
/// planted ground truth (populated when verification is requested).
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: LabeledGraph,
    pub grammar_preset: String,
    pub query: Option<(String, String)>,
    pub mode: Mode,
    /// For filtered all-pairs instances: keep pairs whose source/target
    /// names start with these prefixes.
    pub filter_prefixes: Option<(String, String)>,
    pub ground_truth: Option<GroundTruth>,
    pub provenance: Provenance,
}

fn provenance(generator: &str, params: String, source_text: &str) -> Provenance {
    Provenance {
        generator: generator.to_owned(),
        params,
        source_digest: digest_str(source_text),
    }
}

fn check_tripartite(g3: &TripartiteGraph) -> Result<(), ReductionError> {
    let ok = g3
        .ab
        .iter()
        .all(|&(i, j)| (1..=g3.na).contains(&i) && (1..=g3.nb).contains(&j))
        && g3
            .bc
            .iter()
            .all(|&(i, j)| (1..=g3.nb).contains(&i) && (1..=g3.nc).contains(&j))
        && g3
            .ca
            .iter()
            .all(|&(i, j)| (1..=g3.nc).contains(&i) && (1..=g3.na).contains(&j));
    if ok {
        Ok(())
    } else {
        Err(ReductionError::BadSourceGraph(
            "edge endpoint outside its part".to_owned(),
        ))
    }
}

// ---------------------------------------------------------------------------
// Triangle skeleton (shared by the Dyck-1 reduction and its variants)
// ---------------------------------------------------------------------------

struct SkeletonLabels<'a> {
    chain_open: &'a str,
    cross_ab: &'a str,
    /// labels for each b->c edge; length >= 1 (a fresh interior path is
    /// created when longer than one)
    mid: Vec<String>,
    cross_ca: &'a str,
    chain_close: &'a str,
    /// extra sink edge from a1' when present: (sink name, label)
    sink: Option<(&'a str, &'a str)>,
}

fn build_triangle_skeleton(
    g3: &TripartiteGraph,
    labels: &SkeletonLabels<'_>,
) -> Result<LabeledGraph, ReductionError> {
    check_tripartite(g3)?;
    if g3.na == 0 {
        return Err(ReductionError::BadSourceGraph("part A is empty".to_owned()));
    }
    let mut h = LabeledGraph::new();
    h.add_edge("u", "a1", labels.chain_open)?;
    for i in 1..g3.na {
        h.add_edge(&format!("a{i}"), &format!("a{}", i + 1), labels.chain_open)?;
    }
    for &(i, j) in &g3.ab {
        h.add_edge(&format!("a{i}"), &format!("b{j}"), labels.cross_ab)?;
    }
    for &(i, j) in &g3.bc {
        if labels.mid.len() == 1 {
            h.add_edge(&format!("b{i}"), &format!("c{j}"), &labels.mid[0])?;
        } else {
            let mut prev = format!("b{i}");
            for (step, l) in labels.mid.iter().enumerate() {
                let next = if step + 1 == labels.mid.len() {
                    format!("c{j}")
                } else {
                    format!("s:{i}:{j}:{step}")
                };
                h.add_edge(&prev, &next, l)?;
                prev = next;
            }
        }
    }
    for &(i, j) in &g3.ca {
        h.add_edge(&format!("c{i}"), &format!("a{j}'"), labels.cross_ca)?;
    }
    for i in (2..=g3.na).rev() {
        h.add_edge(
            &format!("a{i}'"),
            &format!("a{}'", i - 1),
            labels.chain_close,
        )?;
    }
    if let Some((sink, label)) = labels.sink {
        h.add_edge("a1'", sink, label)?;
    }
    // the primed copy of A is part of the vertex set even when edgeless,
    // and source vertices stay addressable when isolated
    for i in 1..=g3.na {
        h.intern_vertex(&format!("a{i}'"))?;
    }
    for i in 1..=g3.nb {
        h.intern_vertex(&format!("b{i}"))?;
    }
    for i in 1..=g3.nc {
        h.intern_vertex(&format!("c{i}"))?;
    }
    Ok(h)
}

/// 3-clique on a tripartite graph reduces to Dyck-1 reachability: an open
/// chain into part A, open A-B edges, closing B-C / C-A' edges, and a
/// closing chain out of the primed copy of A. Query `(u, a1')`.
pub fn triangle_to_dyck1(
    g3: &TripartiteGraph,
    verify: bool,
) -> Result<ReductionInstance, ReductionError> {
    let labels = SkeletonLabels {
        chain_open: "(",
        cross_ab: "(",
        mid: vec![")".to_owned()],
        cross_ca: ")",
        chain_close: ")",
        sink: None,
    };
    let graph = build_triangle_skeleton(g3, &labels)?;
    let ground_truth = verify.then(|| GroundTruth::Bool(oracle::brute_triangle(g3)));
    Ok(ReductionInstance {
        graph,
        grammar_preset: "dyck:1".to_owned(),
        query: Some(("u".to_owned(), "a1'".to_owned())),
        mode: Mode::OnDemand,
        filter_prefixes: None,
        ground_truth,
        provenance: provenance(
            "triangle_to_dyck1",
            format!("parts={},{},{}", g3.na, g3.nb, g3.nc),
            &g3.to_text(),
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VariantTarget {
    /// `a^i s b^i`; an empty `s` falls back to the plain `a^i b^i` language
    /// with an `ab` middle path.
    AnbnMid(String),
    Eqcount,
    Palindrome,
}

impl VariantTarget {
    pub fn parse(name: &str) -> Result<VariantTarget, ReductionError> {
        match name.split_once(':') {
            Some(("anbn_mid", s)) => Ok(VariantTarget::AnbnMid(s.to_owned())),
            None if name == "anbn_mid" || name == "anbn" => {
                Ok(VariantTarget::AnbnMid(String::new()))
            }
            None if name == "eqcount" => Ok(VariantTarget::Eqcount),
            None if name == "palindrome" => Ok(VariantTarget::Palindrome),
            _ => Err(ReductionError::UnknownTarget(name.to_owned())),
        }
    }
}

/// The triangle skeleton relabeled for the other BMM-hard languages:
/// `a^i s b^i` (query `(a1, a1')`), equal counts of a and b, and odd
/// palindromes (extra sink, query `(u, v)`).
pub fn variant_reductions(
    g3: &TripartiteGraph,
    target: &VariantTarget,
    verify: bool,
) -> Result<ReductionInstance, ReductionError> {
    let (labels, preset_name, query): (SkeletonLabels<'_>, String, (String, String)) = match target
    {
        VariantTarget::AnbnMid(s) => {
            let mid: Vec<String> = if s.is_empty() {
                vec!["a".to_owned(), "b".to_owned()]
            } else {
                s.chars().map(|c| c.to_string()).collect()
            };
            let preset_name = if s.is_empty() {
                "anbn".to_owned()
            } else {
                format!("anbn_mid:{s}")
            };
            (
                SkeletonLabels {
                    chain_open: "a",
                    cross_ab: "a",
                    mid,
                    cross_ca: "b",
                    chain_close: "b",
                    sink: None,
                },
                preset_name,
                ("a1".to_owned(), "a1'".to_owned()),
            )
        }
        VariantTarget::Eqcount => (
            SkeletonLabels {
                chain_open: "a",
                cross_ab: "a",
                mid: vec!["b".to_owned()],
                cross_ca: "b",
                chain_close: "b",
                sink: None,
            },
            "eqcount".to_owned(),
            ("u".to_owned(), "a1'".to_owned()),
        ),
        VariantTarget::Palindrome => (
            SkeletonLabels {
                chain_open: "a",
                cross_ab: "b",
                mid: vec!["b".to_owned()],
                cross_ca: "b",
                chain_close: "a",
                sink: Some(("v", "a")),
            },
            "palindrome:ab".to_owned(),
            ("u".to_owned(), "v".to_owned()),
        ),
    };
    let graph = build_triangle_skeleton(g3, &labels)?;
    let ground_truth = verify.then(|| GroundTruth::Bool(oracle::brute_triangle(g3)));
    Ok(ReductionInstance {
        graph,
        grammar_preset: preset_name.clone(),
        query: Some(query),
        mode: Mode::OnDemand,
        filter_prefixes: None,
        ground_truth,
        provenance: provenance(
            "variant_reductions",
            format!("target={preset_name} parts={},{},{}", g3.na, g3.nb, g3.nc),
            &g3.to_text(),
        ),
    })
}

// ---------------------------------------------------------------------------
// Clique gadgets (Dyck-2 and pointer analysis)
// ---------------------------------------------------------------------------

/// Bit width for vertex expansion: ids 1..=n all fit in
/// ceil(log2(n + 1)) bits, zero-padded.
pub fn bit_width(n: usize) -> usize {
    let mut width = 0usize;
    let mut cap = 1usize;
    while cap < n + 1 {
        cap <<= 1;
        width += 1;
    }
    width.max(1)
}

fn bits_msb_first(v: usize, width: usize) -> Vec<bool> {
    (0..width).rev().map(|i| (v >> i) & 1 == 1).collect()
}

/// All k-cliques as lexicographically sorted vertex tuples, enumerated in
/// lexicographic order.
fn enumerate_cliques(g: &SimpleGraph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn go(g: &SimpleGraph, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..=g.n() {
            if cur.iter().all(|&u| g.connected(u, v)) {
                cur.push(v);
                go(g, k, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(g, k, 1, &mut cur, &mut out);
    out
}

/// Common neighbors of every vertex of the clique, sorted; disjoint from
/// the clique itself by simpleness.
fn common_neighbors(g: &SimpleGraph, t: &[usize]) -> Vec<usize> {
    (1..=g.n())
        .filter(|&v| !t.contains(&v) && t.iter().all(|&u| g.connected(u, v)))
        .collect()
}

/// One step of an encoded line graph; `reversed` flips the edge direction
/// (a backward traversal of a forward-labeled edge).
#[derive(Debug, Clone)]
struct EncStep {
    label: String,
    reversed: bool,
}

fn fwd(label: &str) -> EncStep {
    EncStep {
        label: label.to_owned(),
        reversed: false,
    }
}

fn bwd(label: &str) -> EncStep {
    EncStep {
        label: label.to_owned(),
        reversed: true,
    }
}

/// Lays `steps` down as a path from `from` to `to`, interning interior
/// vertices `prefix:<i>`.
fn add_encoded_path(
    g: &mut LabeledGraph,
    from: &str,
    to: &str,
    prefix: &str,
    steps: &[EncStep],
) -> Result<(), ReductionError> {
    assert!(!steps.is_empty(), "encoded path needs at least one step");
    let mut prev = from.to_owned();
    for (i, step) in steps.iter().enumerate() {
        let next = if i + 1 == steps.len() {
            to.to_owned()
        } else {
            format!("{prefix}:{i}")
        };
        if step.reversed {
            g.add_edge(&next, &prev, &step.label)?;
        } else {
            g.add_edge(&prev, &next, &step.label)?;
        }
        prev = next;
    }
    Ok(())
}

/// The two vertex-expansion encodings used by the clique gadgets.
trait VertexEncoding {
    /// forward line graph L(v)
    fn forward(&self, v: usize) -> Vec<EncStep>;
    /// reverse line graph L^R(v)
    fn reverse(&self, v: usize) -> Vec<EncStep>;
}

/// Dyck-2: bits 0/1 map to `[`/`(` forward and `]`/`)` reversed, with the
/// file-safe label names lb/lp/rb/rp.
struct DyckBits {
    width: usize,
}

impl VertexEncoding for DyckBits {
    fn forward(&self, v: usize) -> Vec<EncStep> {
        bits_msb_first(v, self.width)
            .into_iter()
            .map(|b| fwd(if b { "lp" } else { "lb" }))
            .collect()
    }

    fn reverse(&self, v: usize) -> Vec<EncStep> {
        bits_msb_first(v, self.width)
            .into_iter()
            .rev()
            .map(|b| fwd(if b { "rp" } else { "rb" }))
            .collect()
    }
}

/// Pointer analysis: L(v) = alpha^v alpha gamma forward; L^R(v) =
/// gammabar alphabar beta^v, the barred prefix realized as two
/// reversed-orientation edges.
struct ApaUnary;

impl VertexEncoding for ApaUnary {
    fn forward(&self, v: usize) -> Vec<EncStep> {
        let mut steps = vec![fwd("alpha"); v + 1];
        steps.push(fwd("gamma"));
        steps
    }

    fn reverse(&self, v: usize) -> Vec<EncStep> {
        let mut steps = vec![bwd("gamma"), bwd("alpha")];
        steps.extend(core::iter::repeat_n(fwd("beta"), v));
        steps
    }
}

struct CliqueGadgetSpec<'a> {
    enc: &'a dyn VertexEncoding,
    p_out: &'a str,
    q_in: &'a str,
    /// per-stage extra steps inserted between the clique list and the
    /// neighbor gadget (stages 2 and 3 for pointer analysis)
    extra_after_cl: [Vec<EncStep>; 3],
    /// stages 2 and 3 enter through a labeled edge from the connector
    /// instead of starting at it
    connector_entry: Option<&'a str>,
}

/// Builds the three-stage clique-list / clique-neighbor-gadget graph shared
/// by the Dyck-2 and pointer-analysis lower bounds, and checks the
/// structural invariant that neighbor gadgets avoid their own clique.
fn build_clique_gadget(
    g: &SimpleGraph,
    k: usize,
    spec: &CliqueGadgetSpec<'_>,
) -> Result<(LabeledGraph, usize), ReductionError> {
    let n = g.n();
    if k == 0 || 3 * k > n {
        return Err(ReductionError::KOutOfRange(format!(
            "need 1 <= k and 3k <= n, got k={k}, n={n}"
        )));
    }
    let cliques = enumerate_cliques(g, k);
    let mut h = LabeledGraph::new();
    h.intern_vertex("p")?;
    h.intern_vertex("q")?;
    h.intern_vertex("A")?;
    h.intern_vertex("B")?;

    for (ti, t) in cliques.iter().enumerate() {
        let neighbors = common_neighbors(g, t);
        if neighbors.iter().any(|w| t.contains(w)) {
            return Err(ReductionError::BadSourceGraph(
                "neighbor gadget intersects its clique".to_owned(),
            ));
        }
        for stage in 1..=3usize {
            // clique list: forward encodings in order for stage 1, reversed
            // encodings in reverse order for stages 2 and 3
            let mut cl_steps: Vec<EncStep> = Vec::new();
            if stage == 1 {
                for &v in t {
                    cl_steps.extend(spec.enc.forward(v));
                }
            } else {
                for &v in t.iter().rev() {
                    cl_steps.extend(spec.enc.reverse(v));
                }
            }
            cl_steps.extend(spec.extra_after_cl[stage - 1].iter().cloned());

            let cl_start = match (stage, spec.connector_entry) {
                (1, _) => {
                    let s = format!("CL1:t{ti}:in");
                    h.add_edge("p", &s, spec.p_out)?;
                    s
                }
                (2, None) => "A".to_owned(),
                (3, None) => "B".to_owned(),
                (2, Some(label)) => {
                    let s = format!("CL2:t{ti}:in");
                    h.add_edge("A", &s, label)?;
                    s
                }
                (3, Some(label)) => {
                    let s = format!("CL3:t{ti}:in");
                    h.add_edge("B", &s, label)?;
                    s
                }
                _ => unreachable!(),
            };

            // junctions of the neighbor gadget; the last one is the shared
            // connector for stages 1 and 2
            let junction = |c: usize| -> String {
                match (stage, c == k) {
                    (1, true) => "A".to_owned(),
                    (2, true) => "B".to_owned(),
                    _ => format!("CNG{stage}:t{ti}:j{c}"),
                }
            };
            add_encoded_path(
                &mut h,
                &cl_start,
                &junction(0),
                &format!("CL{stage}:t{ti}"),
                &cl_steps,
            )?;

            for copy in 1..=k {
                for &w in &neighbors {
                    let steps = if stage == 3 {
                        spec.enc.reverse(w)
                    } else {
                        spec.enc.forward(w)
                    };
                    add_encoded_path(
                        &mut h,
                        &junction(copy - 1),
                        &junction(copy),
                        &format!("CNG{stage}:t{ti}:w{w}:c{copy}"),
                        &steps,
                    )?;
                }
            }
            if stage == 3 {
                h.add_edge(&junction(k), "q", spec.q_in)?;
            }
        }
    }
    Ok((h, cliques.len()))
}

/// 3k-clique reduces to Dyck-2 reachability over the clique-list /
/// clique-neighbor gadget graph; query `(p, q)`.
pub fn kclique_to_dyck2(
    g: &SimpleGraph,
    k: usize,
    verify: bool,
) -> Result<ReductionInstance, ReductionError> {
    let width = bit_width(g.n());
    let enc = DyckBits { width };
    let spec = CliqueGadgetSpec {
        enc: &enc,
        p_out: "lb",
        q_in: "rb",
        extra_after_cl: [Vec::new(), Vec::new(), Vec::new()],
        connector_entry: None,
    };
    let (graph, clique_count) = build_clique_gadget(g, k, &spec)?;
    let ground_truth = if verify {
        Some(GroundTruth::Bool(oracle::brute_kclique(g, 3 * k)?))
    } else {
        None
    };
    let m = graph.m();
    let density = m as f64 / (g.n().pow(k as u32 + 1) as f64 * width as f64);
    Ok(ReductionInstance {
        graph,
        grammar_preset: "dyck:2".to_owned(),
        query: Some(("p".to_owned(), "q".to_owned())),
        mode: Mode::OnDemand,
        filter_prefixes: None,
        ground_truth,
        provenance: provenance(
            "kclique_to_dyck2",
            format!(
                "k={k} n={} N={width} cliques={clique_count} m={m} c={density:.3}",
                g.n()
            ),
            &g.to_text(),
        ),
    })
}

/// Same skeleton with the unary pointer-analysis encodings and the extra
/// connector edges; the query is T(p, q) on the `apa` grammar.
pub fn apa_clique_gadget(
    g: &SimpleGraph,
    k: usize,
    verify: bool,
) -> Result<ReductionInstance, ReductionError> {
    let enc = ApaUnary;
    let spec = CliqueGadgetSpec {
        enc: &enc,
        p_out: "alpha",
        q_in: "beta",
        extra_after_cl: [
            Vec::new(),
            vec![fwd("gamma")],
            vec![bwd("gamma"), bwd("alpha")],
        ],
        connector_entry: Some("alpha"),
    };
    let (graph, clique_count) = build_clique_gadget(g, k, &spec)?;
    let ground_truth = if verify {
        Some(GroundTruth::Bool(oracle::brute_kclique(g, 3 * k)?))
    } else {
        None
    };
    let m = graph.m();
    Ok(ReductionInstance {
        graph,
        grammar_preset: "apa".to_owned(),
        query: Some(("p".to_owned(), "q".to_owned())),
        mode: Mode::OnDemand,
        filter_prefixes: None,
        ground_truth,
        provenance: provenance(
            "apa_clique_gadget",
            format!("k={k} n={} cliques={clique_count} m={m}", g.n()),
            &g.to_text(),
        ),
    })
}

/// The word spelled by a planted-clique path through the pointer-analysis
/// gadget, for word-level validation.
pub fn apa_clique_word(t1: &[usize], t2: &[usize], t3: &[usize]) -> Word {
    let enc = ApaUnary;
    let mut w: Vec<String> = Vec::new();
    let push_steps = |w: &mut Vec<String>, steps: Vec<EncStep>| {
        for s in steps {
            w.push(if s.reversed {
                crate::grammar::bar_name(&s.label)
            } else {
                s.label
            });
        }
    };
    w.push("alpha".to_owned());
    for &v in t1 {
        push_steps(&mut w, enc.forward(v));
    }
    for &v in t2 {
        push_steps(&mut w, enc.forward(v));
    }
    w.push("alpha".to_owned());
    for &v in t2.iter().rev() {
        push_steps(&mut w, enc.reverse(v));
    }
    w.push("gamma".to_owned());
    for &v in t3 {
        push_steps(&mut w, enc.forward(v));
    }
    w.push("alpha".to_owned());
    for &v in t3.iter().rev() {
        push_steps(&mut w, enc.reverse(v));
    }
    w.push("gammabar".to_owned());
    w.push("alphabar".to_owned());
    for &v in t1.iter().rev() {
        push_steps(&mut w, enc.reverse(v));
    }
    w.push("beta".to_owned());
    w
}

// ---------------------------------------------------------------------------
// Matrix-product encodings
// ---------------------------------------------------------------------------

/// A boolean matrix product encoded as a layered reachability instance for
/// any join-inducing grammar; decoding filters pairs to the first and last
/// layer.
pub struct BmmReduction {
    pub instance: ReductionInstance,
    pub n: usize,
    pub witness: Word,
}

impl BmmReduction {
    /// Applies the decode rule: `C[i][j] = 1` iff `(L0:i+1, Lk:j+1)` survived
    /// the layer filter.
    pub fn decode(&self, pairs: &BTreeSet<(String, String)>) -> BoolMatrix {
        let k = self.witness.len();
        let mut c = BoolMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if pairs.contains(&(format!("L0:{}", i + 1), format!("L{k}:{}", j + 1))) {
                    c.set(i, j, true);
                }
            }
        }
        c
    }
}

fn layered_witness_graph(
    witness: &[String],
    n: usize,
    e1: impl Fn(usize, usize) -> bool,
    ek: impl Fn(usize, usize) -> bool,
) -> Result<LabeledGraph, ReductionError> {
    let k = witness.len();
    let mut h = LabeledGraph::new();
    for layer in 0..=k {
        for i in 1..=n {
            h.intern_vertex(&format!("L{layer}:{i}"))?;
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if e1(i, j) {
                h.add_edge(&format!("L0:{i}"), &format!("L1:{j}"), &witness[0])?;
            }
        }
    }
    for layer in 2..k {
        for j in 1..=n {
            h.add_edge(
                &format!("L{}:{j}", layer - 1),
                &format!("L{layer}:{j}"),
                &witness[layer - 1],
            )?;
        }
    }
    if k >= 2 {
        for i in 1..=n {
            for j in 1..=n {
                if ek(i, j) {
                    h.add_edge(
                        &format!("L{}:{i}", k - 1),
                        &format!("L{k}:{j}"),
                        &witness[k - 1],
                    )?;
                }
            }
        }
    }
    Ok(h)
}

/// Encodes C = A x B over any join-inducing grammar via its witness string
/// `r_1 ... r_k`: first layer from A, identity middles, last layer from B.
pub fn bmm_to_cfg(
    a: &BoolMatrix,
    b: &BoolMatrix,
    g: &Grammar,
    verify: bool,
) -> Result<BmmReduction, ReductionError> {
    if a.n() != b.n() {
        return Err(ReductionError::NonSquare);
    }
    let witness = classify(g).witness.ok_or(ReductionError::JoinFree)?;
    let n = a.n();
    let k = witness.len();
    let graph = layered_witness_graph(
        &witness,
        n,
        |i, j| a.get(i - 1, j - 1),
        |i, j| b.get(i - 1, j - 1),
    )?;
    let ground_truth = if verify {
        let c = oracle::naive_bmm(a, b)?;
        let mut pairs = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if c.get(i, j) {
                    pairs.insert((format!("L0:{}", i + 1), format!("L{k}:{}", j + 1)));
                }
            }
        }
        Some(GroundTruth::Pairs(pairs))
    } else {
        None
    };
    let source = format!("{}\n{}", a.to_text(), b.to_text());
    Ok(BmmReduction {
        instance: ReductionInstance {
            graph,
            grammar_preset: String::new(),
            query: None,
            mode: Mode::AllPairsFiltered,
            filter_prefixes: Some(("L0:".to_owned(), format!("L{k}:"))),
            ground_truth,
            provenance: provenance("bmm_to_cfg", format!("n={n} k={k}"), &source),
        },
        n,
        witness,
    })
}

/// The worst-case output family: a hub vertex in each inner layer forces
/// all n^2 filtered pairs while the input has only k*n edges.
pub fn worst_case_family(
    g: &Grammar,
    n: usize,
    verify: bool,
) -> Result<ReductionInstance, ReductionError> {
    if n == 0 {
        return Err(ReductionError::BadSourceGraph("n must be >= 1".to_owned()));
    }
    let witness = classify(g).witness.ok_or(ReductionError::JoinFree)?;
    let k = witness.len();
    let hub = 1usize;
    let graph = layered_witness_graph(&witness, n, |_, j| j == hub, |i, _| i == hub)?;
    let ground_truth = verify.then(|| {
        let mut pairs = BTreeSet::new();
        for i in 1..=n {
            for j in 1..=n {
                pairs.insert((format!("L0:{i}"), format!("L{k}:{j}")));
            }
        }
        GroundTruth::Pairs(pairs)
    });
    Ok(ReductionInstance {
        graph,
        grammar_preset: String::new(),
        query: None,
        mode: Mode::AllPairsFiltered,
        filter_prefixes: Some(("L0:".to_owned(), format!("L{k}:"))),
        ground_truth,
        provenance: provenance("worst_case_family", format!("n={n} k={k}"), "synthetic"),
    })
}

// ---------------------------------------------------------------------------
// k-cycle on-demand reductions
// ---------------------------------------------------------------------------

/// k-cycle detection on a layered digraph, generalizing the triangle
/// reduction: the part-1-to-copy crossing becomes a k-edge path whose first
/// floor(k/2) edges open and the rest close. Odd k only.
pub fn kcycle_on_demand(
    g: &LayeredDigraph,
    k: usize,
    target: &str,
    verify: bool,
) -> Result<ReductionInstance, ReductionError> {
    if k.is_multiple_of(2) {
        return Err(ReductionError::EvenK(k));
    }
    if k < 3 || k != g.k() {
        return Err(ReductionError::KOutOfRange(format!(
            "k={k} incompatible with a {}-layer source",
            g.k()
        )));
    }
    let palindrome = target == "palindrome" || target == "palindrome:ab";
    let (open, close, chain_open, chain_close, preset_name) = match target {
        "dyck:1" => ("(", ")", "(", ")", "dyck:1".to_owned()),
        "anbn" => ("a", "b", "a", "b", "anbn".to_owned()),
        "eqcount" => ("a", "b", "a", "b", "eqcount".to_owned()),
        _ if palindrome => ("b", "b", "a", "a", "palindrome:ab".to_owned()),
        other => return Err(ReductionError::UnknownTarget(other.to_owned())),
    };
    let n1 = g.parts[0];
    if n1 == 0 {
        return Err(ReductionError::BadSourceGraph("part 1 is empty".to_owned()));
    }
    let mut h = LabeledGraph::new();
    h.add_edge("u", "p1:1", chain_open)?;
    for i in 1..n1 {
        h.add_edge(&format!("p1:{i}"), &format!("p1:{}", i + 1), chain_open)?;
    }
    // crossing edges: position l of the k-edge path from part 1 to the copy
    for (layer, edges) in g.edges.iter().enumerate() {
        let position = layer + 1;
        let label = if position <= k / 2 { open } else { close };
        let next_part = (layer + 1) % k;
        for &(i, j) in edges {
            let src = format!("p{}:{i}", layer + 1);
            let dst = if next_part == 0 {
                format!("p1:{j}'")
            } else {
                format!("p{}:{j}", next_part + 1)
            };
            h.add_edge(&src, &dst, label)?;
        }
    }
    for i in (2..=n1).rev() {
        h.add_edge(&format!("p1:{i}'"), &format!("p1:{}'", i - 1), chain_close)?;
    }
    for i in 1..=n1 {
        h.intern_vertex(&format!("p1:{i}'"))?;
    }
    for (p, &size) in g.parts.iter().enumerate() {
        for i in 1..=size {
            h.intern_vertex(&format!("p{}:{i}", p + 1))?;
        }
    }
    let query = if palindrome {
        h.add_edge("p1:1'", "v", chain_close)?;
        ("u".to_owned(), "v".to_owned())
    } else {
        ("u".to_owned(), "p1:1'".to_owned())
    };
    let ground_truth = if verify {
        Some(GroundTruth::Bool(oracle::brute_kcycle(g, k)?))
    } else {
        None
    };
    Ok(ReductionInstance {
        graph: h,
        grammar_preset: preset_name.clone(),
        query: Some(query),
        mode: Mode::OnDemand,
        filter_prefixes: None,
        ground_truth,
        provenance: provenance(
            "kcycle_on_demand",
            format!("k={k} target={preset_name}"),
            &g.to_text(),
        ),
    })
}

// ---------------------------------------------------------------------------
// Language-operation graph transforms
// ---------------------------------------------------------------------------

/// Right-quotient support: adds a fresh sink `t_v` with an alpha edge for
/// every vertex. The decode rule maps each output pair `(u, t_v)` for the
/// base grammar back to `(u, v)` for the quotient grammar; the returned map
/// goes fresh-name -> original-name.
pub fn right_quotient_extend(
    g: &LabeledGraph,
    alpha: &str,
) -> Result<(LabeledGraph, BTreeMap<String, String>), ReductionError> {
    let mut out = g.clone();
    let mut decode = BTreeMap::new();
    let originals: Vec<String> = g.vertex_names().to_vec();
    for name in originals {
        let fresh = out.fresh_name(&format!("{name}:t"));
        out.add_edge(&name, &fresh, alpha)?;
        decode.insert(fresh, name);
    }
    Ok((out, decode))
}

/// Inverse-homomorphism support: each edge labeled `a` becomes a fresh
/// interior path labeled `h(a)`; empty images merge their endpoints. The
/// returned map sends each original vertex to its representative in the
/// transformed graph.
pub fn inverse_hom_transform(
    g: &LabeledGraph,
    h: &BTreeMap<String, Vec<String>>,
) -> Result<(LabeledGraph, BTreeMap<String, String>), ReductionError> {
    for l in g.labels() {
        if g.edges().iter().any(|e| g.label_name(e.label) == l) && !h.contains_key(l) {
            return Err(ReductionError::MissingMapping(l.clone()));
        }
    }
    // union-find over epsilon-image edges
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for e in g.edges() {
        if h[g.label_name(e.label)].is_empty() {
            let (a, b) = (
                find(&mut parent, e.src as usize),
                find(&mut parent, e.dst as usize),
            );
            if a != b {
                // smaller id wins, keeping representative names deterministic
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let rep_name = |parent: &mut Vec<usize>, v: usize| -> String {
        let r = find(parent, v);
        g.vertex_name(r as u32).to_owned()
    };

    let mut out = LabeledGraph::new();
    let mut decode = BTreeMap::new();
    for v in 0..n {
        let rep = rep_name(&mut parent, v);
        out.intern_vertex(&rep)?;
        decode.insert(g.vertex_name(v as u32).to_owned(), rep);
    }
    for (idx, e) in g.edges().iter().enumerate() {
        let image = &h[g.label_name(e.label)];
        if image.is_empty() {
            continue;
        }
        let src = rep_name(&mut parent, e.src as usize);
        let dst = rep_name(&mut parent, e.dst as usize);
        let mut prev = src;
        for (j, label) in image.iter().enumerate() {
            let next = if j + 1 == image.len() {
                dst.clone()
            } else {
                out.fresh_name(&format!("h:{idx}:{j}"))
            };
            out.add_edge(&prev, &next, label)?;
            prev = next;
        }
    }
    Ok((out, decode))
}
