//! File-level formats: grammar specs (preset name or file path), source
//! graphs for the reduction generators, matrix files, and the instance
//! bundle directory layout (`graph.txt`, `query.txt`, `truth.txt`,
//! `meta.txt`).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use cflr_core::grammar::{parse_grammar, preset, serialize_grammar, Grammar};
use cflr_core::graph::{
    parse_graph, serialize_graph, BoolMatrix, LabeledGraph, LayeredDigraph, SimpleGraph,
    TripartiteGraph,
};
use cflr_core::reductions::{GroundTruth, Mode, ReductionInstance};

/// Resolves `--grammar`: a catalogued preset name first, then a file path.
pub fn load_grammar(spec: &str) -> Result<Grammar> {
    if let Ok(g) = preset(spec) {
        return Ok(g);
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return parse_grammar(&text).map_err(|e| anyhow!("{spec}: {e}"));
    }
    bail!("`{spec}` is neither a known preset nor an existing file")
}

pub fn load_graph(path: &Path) -> Result<LabeledGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Simple graph file: edge lines `u v <label>` (label ignored), vertices
/// numbered by first appearance.
pub fn load_simple_graph(path: &Path) -> Result<SimpleGraph> {
    let g = load_graph(path)?;
    let mut sg = SimpleGraph::new(g.n());
    for e in g.edges() {
        sg.add_edge(e.src as usize + 1, e.dst as usize + 1);
    }
    Ok(sg)
}

fn part_index(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    rest.parse().ok()
}

/// Tripartite file: same edge-list format with canonical vertex names
/// `a<i>`, `b<i>`, `c<i>`.
pub fn load_tripartite(path: &Path) -> Result<TripartiteGraph> {
    let g = load_graph(path)?;
    let mut tg = TripartiteGraph::new(0, 0, 0);
    for name in g.vertex_names() {
        if let Some(i) = part_index(name, 'a') {
            tg.na = tg.na.max(i);
        } else if let Some(i) = part_index(name, 'b') {
            tg.nb = tg.nb.max(i);
        } else if let Some(i) = part_index(name, 'c') {
            tg.nc = tg.nc.max(i);
        } else {
            bail!("tripartite vertices must be named a<i>/b<i>/c<i>, got `{name}`");
        }
    }
    for e in g.edges() {
        let (s, d) = (g.vertex_name(e.src), g.vertex_name(e.dst));
        match (s.chars().next(), d.chars().next()) {
            (Some('a'), Some('b')) => {
                tg.ab
                    .insert((part_index(s, 'a').unwrap(), part_index(d, 'b').unwrap()));
            }
            (Some('b'), Some('c')) => {
                tg.bc
                    .insert((part_index(s, 'b').unwrap(), part_index(d, 'c').unwrap()));
            }
            (Some('c'), Some('a')) => {
                tg.ca
                    .insert((part_index(s, 'c').unwrap(), part_index(d, 'a').unwrap()));
            }
            _ => bail!("tripartite edges must go a->b, b->c, or c->a, got `{s} {d}`"),
        }
    }
    Ok(tg)
}

/// Layered-digraph file: vertices `p<layer>:<i>`, edges between
/// consecutive layers (wrapping at the last).
pub fn load_layered(path: &Path) -> Result<LayeredDigraph> {
    let g = load_graph(path)?;
    let mut max_layer = 0usize;
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    let parse_name = |name: &str| -> Result<(usize, usize)> {
        let rest = name
            .strip_prefix('p')
            .ok_or_else(|| anyhow!("layered vertices must be named p<layer>:<i>, got `{name}`"))?;
        let (layer, idx) = rest
            .split_once(':')
            .ok_or_else(|| anyhow!("layered vertices must be named p<layer>:<i>, got `{name}`"))?;
        Ok((layer.parse()?, idx.parse()?))
    };
    for name in g.vertex_names() {
        let (layer, idx) = parse_name(name)?;
        max_layer = max_layer.max(layer);
        let e = sizes.entry(layer).or_insert(0);
        *e = (*e).max(idx);
    }
    if max_layer == 0 {
        bail!("layered graph has no vertices");
    }
    let mut lg = LayeredDigraph::new((1..=max_layer).map(|l| sizes[&l]).collect());
    for e in g.edges() {
        let (sl, si) = parse_name(g.vertex_name(e.src))?;
        let (dl, di) = parse_name(g.vertex_name(e.dst))?;
        if dl != sl % max_layer + 1 {
            bail!("layered edge must go to the next layer: p{sl}:{si} -> p{dl}:{di}");
        }
        lg.edges[sl - 1].insert((si, di));
    }
    Ok(lg)
}

/// Matrix file: two blocks of 0/1 rows separated by a blank line.
pub fn load_matrices(path: &Path) -> Result<(BoolMatrix, BoolMatrix)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut blocks: Vec<Vec<Vec<bool>>> = vec![Vec::new()];
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        let row: Vec<bool> = line
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(anyhow!("matrix rows are 0/1 strings, got `{other}`")),
            })
            .collect::<Result<_>>()?;
        blocks.last_mut().unwrap().push(row);
    }
    blocks.retain(|b| !b.is_empty());
    if blocks.len() != 2 {
        bail!(
            "expected two matrix blocks separated by a blank line, got {}",
            blocks.len()
        );
    }
    let a =
        BoolMatrix::from_rows(blocks.remove(0)).ok_or_else(|| anyhow!("matrix A not square"))?;
    let b =
        BoolMatrix::from_rows(blocks.remove(0)).ok_or_else(|| anyhow!("matrix B not square"))?;
    Ok((a, b))
}

/// Parses a homomorphism spec `a=ad,b=,c=c`: one `label=image` pair per
/// comma, an empty image meaning the empty word. Image symbols are single
/// characters.
pub fn parse_hom_spec(spec: &str) -> Result<BTreeMap<String, Vec<String>>> {
    let mut h = BTreeMap::new();
    for part in spec.split(',') {
        let (label, image) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("homomorphism entries look like label=image, got `{part}`"))?;
        h.insert(
            label.trim().to_string(),
            image.trim().chars().map(|c| c.to_string()).collect(),
        );
    }
    Ok(h)
}

/// Default output directory: `--out`, else `$CFLR_OUT/<stem>`, else
/// `./<stem>`.
pub fn out_dir(flag: Option<PathBuf>, stem: &str) -> PathBuf {
    match flag {
        Some(p) => p,
        None => match std::env::var_os("CFLR_OUT") {
            Some(base) => Path::new(&base).join(stem),
            None => PathBuf::from(stem),
        },
    }
}

/// Writes an instance bundle directory.
pub fn write_instance(
    dir: &Path,
    inst: &ReductionInstance,
    grammar: Option<&Grammar>,
) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("graph.txt"), serialize_graph(&inst.graph))?;
    if let Some((s, t)) = &inst.query {
        fs::write(dir.join("query.txt"), format!("{s} {t}\n"))?;
    }
    if let Some(g) = grammar {
        fs::write(dir.join("grammar.txt"), serialize_grammar(g))?;
    }
    match &inst.ground_truth {
        Some(GroundTruth::Bool(b)) => {
            fs::write(dir.join("truth.txt"), format!("{b}\n"))?;
        }
        Some(GroundTruth::Pairs(pairs)) => {
            let mut text = String::new();
            for (u, v) in pairs {
                text.push_str(&format!("{u} {v}\n"));
            }
            fs::write(dir.join("truth.txt"), text)?;
        }
        None => {}
    }
    let mut meta = String::new();
    meta.push_str(&format!("generator = {}\n", inst.provenance.generator));
    meta.push_str(&format!("params = {}\n", inst.provenance.params));
    meta.push_str(&format!(
        "source_digest = {}\n",
        inst.provenance.source_digest
    ));
    meta.push_str(&format!("preset = {}\n", inst.grammar_preset));
    meta.push_str(&format!(
        "mode = {}\n",
        match inst.mode {
            Mode::OnDemand => "on_demand",
            Mode::AllPairsFiltered => "all_pairs_filtered",
        }
    ));
    if let Some((a, b)) = &inst.filter_prefixes {
        meta.push_str(&format!("filter = {a} {b}\n"));
    }
    fs::write(dir.join("meta.txt"), meta)?;
    Ok(())
}
