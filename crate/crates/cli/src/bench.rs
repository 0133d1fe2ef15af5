//! Scaling-experiment harness: generates seeded instance families, times
//! solver runs (median of repetitions, warm-up discarded), fits log-log
//! slopes, and emits CSV plus gnuplot-friendly data.
//!
//! Wall-clock timing is environment-dependent; the only structural law the
//! tests gate on is the worst-case output family reporting exactly n^2
//! filtered pairs. Timing slopes are informational.

use std::fmt;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use cflr_core::andersen::{apa_fixpoint, ApaInstance};
use cflr_core::digest::digest_str;
use cflr_core::grammar::{preset, to_cnf, CnfGrammar};
use cflr_core::graph::{serialize_graph, LabeledGraph};
use cflr_core::reductions::{apa_clique_gadget, kclique_to_dyck2, worst_case_family};
use cflr_core::solver;

use crate::rnd;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    DenseRandom,
    SparseRandom,
    WorstCaseOutput,
    Dyck2CliqueGadget,
    ApaGadget,
}

impl Family {
    pub fn parse(name: &str) -> Result<Family> {
        Ok(match name {
            "dense_random" => Family::DenseRandom,
            "sparse_random" => Family::SparseRandom,
            "worst_case_output" => Family::WorstCaseOutput,
            "dyck2_clique_gadget" => Family::Dyck2CliqueGadget,
            "apa_gadget" => Family::ApaGadget,
            other => bail!("unknown family `{other}`"),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::DenseRandom => "dense_random",
            Family::SparseRandom => "sparse_random",
            Family::WorstCaseOutput => "worst_case_output",
            Family::Dyck2CliqueGadget => "dyck2_clique_gadget",
            Family::ApaGadget => "apa_gadget",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub family: Family,
    pub preset: String,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub timeout_ms: u64,
}

impl BenchPlan {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.len() < 2 || self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            bail!("size ladder must be strictly increasing");
        }
        if self.reps < 3 {
            bail!("repetitions must be >= 3");
        }
        Ok(())
    }
}

/// Small key-value plan format: `family = worst_case_output`,
/// `sizes = 50 100 200`, one entry per line, `#` comments.
pub fn parse_plan(text: &str) -> Result<BenchPlan> {
    let mut family = None;
    let mut preset_name = "dyck:1".to_string();
    let mut sizes = Vec::new();
    let mut reps = 3usize;
    let mut seed = 0u64;
    let mut timeout_ms = 60_000u64;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected `key = value`", no + 1))?;
        let value = value.trim();
        match key.trim() {
            "family" => family = Some(Family::parse(value)?),
            "preset" => preset_name = value.to_string(),
            "sizes" => {
                sizes = value
                    .split_whitespace()
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|e| anyhow!("bad size `{s}`: {e}"))
                    })
                    .collect::<Result<_>>()?
            }
            "reps" => reps = value.parse()?,
            "seed" => seed = value.parse()?,
            "timeout_ms" => timeout_ms = value.parse()?,
            other => bail!("line {}: unknown plan key `{other}`", no + 1),
        }
    }
    let plan = BenchPlan {
        family: family.ok_or_else(|| anyhow!("plan is missing `family`"))?,
        preset: preset_name,
        sizes,
        reps,
        seed,
        timeout_ms,
    };
    plan.validate()?;
    Ok(plan)
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub family: String,
    pub preset: String,
    pub n: usize,
    pub m: usize,
    pub output_size: usize,
    pub median_ms: f64,
    pub min_ms: f64,
    pub facts: usize,
    pub timed_out: bool,
    pub digest: String,
}

#[derive(Debug, Clone)]
pub struct BenchResult {
    pub rows: Vec<BenchRow>,
    /// least-squares slope of log(median time) vs log(n), with residual;
    /// present only when at least four sizes completed
    pub slope: Option<(f64, f64)>,
}

/// Ordinary least squares on (log x, log y); returns (slope, residual sum
/// of squares). Needs at least four points.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 4 {
        bail!(
            "need at least 4 completed rows to fit a slope, got {}",
            points.len()
        );
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        bail!("log-log fit needs positive values");
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        bail!("degenerate x values");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = logs
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    Ok((slope, rss))
}

enum Prepared {
    Cfl {
        cnf: CnfGrammar,
        graph: LabeledGraph,
        filter: Option<(String, String)>,
    },
    Apa {
        inst: ApaInstance,
    },
}

fn prepare(plan: &BenchPlan, size: usize) -> Result<Prepared> {
    let mut rng = rnd::rng(plan.seed ^ (size as u64).wrapping_mul(0x9e3779b97f4a7c15));
    match plan.family {
        Family::DenseRandom => {
            let g = preset(&plan.preset).map_err(|e| anyhow!("{e}"))?;
            let labels: Vec<&str> = g.terminals().iter().map(|s| s.as_str()).collect();
            let graph = rnd::random_labeled_graph(&mut rng, size, &labels, 0.25);
            Ok(Prepared::Cfl {
                cnf: to_cnf(&g),
                graph,
                filter: None,
            })
        }
        Family::SparseRandom => {
            let g = preset(&plan.preset).map_err(|e| anyhow!("{e}"))?;
            let labels: Vec<&str> = g.terminals().iter().map(|s| s.as_str()).collect();
            let mut graph = LabeledGraph::new();
            for i in 1..=size {
                graph.intern_vertex(&format!("n{i}")).expect("valid");
            }
            use rand::Rng;
            for _ in 0..4 * size {
                let u = rng.random_range(1..=size);
                let v = rng.random_range(1..=size);
                let l = labels[rng.random_range(0..labels.len())];
                graph
                    .add_edge(&format!("n{u}"), &format!("n{v}"), l)
                    .expect("valid");
            }
            Ok(Prepared::Cfl {
                cnf: to_cnf(&g),
                graph,
                filter: None,
            })
        }
        Family::WorstCaseOutput => {
            let g = preset(&plan.preset).map_err(|e| anyhow!("{e}"))?;
            let inst = worst_case_family(&g, size, false).map_err(|e| anyhow!("{e}"))?;
            Ok(Prepared::Cfl {
                cnf: to_cnf(&g),
                graph: inst.graph,
                filter: inst.filter_prefixes,
            })
        }
        Family::Dyck2CliqueGadget => {
            let src = rnd::random_simple_graph(&mut rng, size, 0.5);
            let inst = kclique_to_dyck2(&src, 1, false).map_err(|e| anyhow!("{e}"))?;
            let cnf = to_cnf(&preset("dyck:2").map_err(|e| anyhow!("{e}"))?);
            Ok(Prepared::Cfl {
                cnf,
                graph: inst.graph,
                filter: None,
            })
        }
        Family::ApaGadget => {
            let src = rnd::random_simple_graph(&mut rng, size, 0.5);
            let inst = apa_clique_gadget(&src, 1, false).map_err(|e| anyhow!("{e}"))?;
            let apa = ApaInstance::new(inst.graph).map_err(|e| anyhow!("{e}"))?;
            Ok(Prepared::Apa { inst: apa })
        }
    }
}

fn run_once(prepared: &Prepared) -> (f64, usize, usize) {
    match prepared {
        Prepared::Cfl { cnf, graph, filter } => {
            let start = Instant::now();
            let sol = solver::all_pairs(cnf, graph);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let output = match filter {
                Some((ps, pt)) => sol
                    .pairs
                    .iter()
                    .filter(|&(u, v)| {
                        graph.vertex_name(u).starts_with(ps.as_str())
                            && graph.vertex_name(v).starts_with(pt.as_str())
                    })
                    .count(),
                None => sol.pairs.len(),
            };
            (ms, output, sol.fact_count())
        }
        Prepared::Apa { inst } => {
            let start = Instant::now();
            let t = apa_fixpoint(inst);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            (ms, t.len(), t.len())
        }
    }
}

/// Runs the plan: deterministic instances per (seed, size), timing that
/// excludes generation, a discarded warm-up run, and median/min over the
/// repetitions. Rows that exceed the timeout are flagged and excluded from
/// the slope fit.
pub fn run_bench(plan: &BenchPlan) -> Result<BenchResult> {
    plan.validate()?;
    let mut rows = Vec::new();
    for &size in &plan.sizes {
        let prepared = prepare(plan, size)?;
        let (graph_m, digest) = match &prepared {
            Prepared::Cfl { graph, .. } => (graph.m(), digest_str(&serialize_graph(graph))),
            Prepared::Apa { inst } => {
                (inst.graph().m(), digest_str(&serialize_graph(inst.graph())))
            }
        };
        let _warmup = run_once(&prepared);
        let mut times = Vec::new();
        let mut output_size = 0usize;
        let mut facts = 0usize;
        let mut timed_out = false;
        for _ in 0..plan.reps {
            let (ms, out, f) = run_once(&prepared);
            output_size = out;
            facts = f;
            if ms > plan.timeout_ms as f64 {
                timed_out = true;
            }
            times.push(ms);
        }
        times.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));
        let median = times[times.len() / 2];
        rows.push(BenchRow {
            family: plan.family.to_string(),
            preset: plan.preset.clone(),
            n: size,
            m: graph_m,
            output_size,
            median_ms: median,
            min_ms: times[0],
            facts,
            timed_out,
            digest,
        });
    }
    let completed: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| !r.timed_out && r.median_ms > 0.0)
        .map(|r| (r.n as f64, r.median_ms))
        .collect();
    let slope = if completed.len() >= 4 {
        fit_slope(&completed).ok()
    } else {
        None
    };
    Ok(BenchResult { rows, slope })
}

pub fn to_csv(result: &BenchResult) -> String {
    let mut out = String::from("family,preset,n,m,output_size,median_ms,min_ms,facts,timed_out\n");
    for r in &result.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:.3},{:.3},{},{}\n",
            r.family,
            r.preset,
            r.n,
            r.m,
            r.output_size,
            r.median_ms,
            r.min_ms,
            r.facts,
            r.timed_out
        ));
    }
    out
}

/// gnuplot-compatible data: `n median_ms output_size` per completed row.
pub fn to_gnuplot(result: &BenchResult) -> String {
    let mut out = String::from("# n median_ms output_size\n");
    for r in &result.rows {
        if !r.timed_out {
            out.push_str(&format!("{} {:.3} {}\n", r.n, r.median_ms, r.output_size));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_cubic() {
        let points: Vec<(f64, f64)> = (1..=8)
            .map(|i| (i as f64 * 10.0, 3.5 * (i as f64 * 10.0).powi(3)))
            .collect();
        let (slope, rss) = fit_slope(&points).unwrap();
        assert!((slope - 3.0).abs() < 1e-9, "slope = {slope}");
        assert!(rss < 1e-18);
    }

    #[test]
    fn slope_of_exact_quadratic() {
        let points: Vec<(f64, f64)> = (1..=6)
            .map(|i| (i as f64 * 7.0, 0.25 * (i as f64 * 7.0).powi(2)))
            .collect();
        let (slope, _) = fit_slope(&points).unwrap();
        assert!((slope - 2.0).abs() < 1e-9);
    }

    #[test]
    fn slope_needs_four_rows() {
        assert!(fit_slope(&[(1.0, 1.0), (2.0, 4.0), (3.0, 9.0)]).is_err());
    }

    #[test]
    fn plan_parses() {
        let plan = parse_plan(
            "family = worst_case_output\npreset = anbn\nsizes = 10 20 40\nreps = 3\nseed = 7\n",
        )
        .unwrap();
        assert_eq!(plan.family, Family::WorstCaseOutput);
        assert_eq!(plan.sizes, vec![10, 20, 40]);
        assert!(parse_plan("family = worst_case_output\nsizes = 10 5\n").is_err());
        assert!(parse_plan("sizes = 1 2\n").is_err());
    }

    #[test]
    fn worst_case_family_structural_law() {
        let plan = BenchPlan {
            family: Family::WorstCaseOutput,
            preset: "anbn".into(),
            sizes: vec![3, 6, 12, 24],
            reps: 3,
            seed: 1,
            timeout_ms: 60_000,
        };
        let result = run_bench(&plan).unwrap();
        for (row, &n) in result.rows.iter().zip(&plan.sizes) {
            assert_eq!(row.output_size, n * n);
            assert_eq!(row.m, 2 * n);
        }
    }

    #[test]
    fn all_families_run() {
        for family in [
            Family::DenseRandom,
            Family::SparseRandom,
            Family::WorstCaseOutput,
            Family::Dyck2CliqueGadget,
            Family::ApaGadget,
        ] {
            let preset = match family {
                Family::Dyck2CliqueGadget => "dyck:2",
                Family::ApaGadget => "apa",
                _ => "dyck:1",
            };
            let plan = BenchPlan {
                family,
                preset: preset.into(),
                sizes: vec![3, 5],
                reps: 3,
                seed: 2,
                timeout_ms: 60_000,
            };
            let result = run_bench(&plan).unwrap();
            assert_eq!(
                result.rows.len(),
                2,
                "family {family} produced wrong row count"
            );
            assert!(result
                .rows
                .iter()
                .all(|r| r.m > 0 || r.family == "dense_random"));
        }
    }

    #[test]
    fn reproducible_digests() {
        let plan = BenchPlan {
            family: Family::SparseRandom,
            preset: "dyck:1".into(),
            sizes: vec![5, 10, 15],
            reps: 3,
            seed: 99,
            timeout_ms: 60_000,
        };
        let a = run_bench(&plan).unwrap();
        let b = run_bench(&plan).unwrap();
        let da: Vec<_> = a.rows.iter().map(|r| r.digest.clone()).collect();
        let db: Vec<_> = b.rows.iter().map(|r| r.digest.clone()).collect();
        assert_eq!(da, db);
    }
}
