//! `cflr` — classify grammars, normalize them, solve CFL reachability with
//! the strategy matching the grammar class, generate reduction gadgets,
//! cross-check against brute-force oracles, and run scaling benchmarks.
//!
//! Exit status: 0 on success (and "reachable" verdicts), 1 for on-demand
//! "unreachable" verdicts, 2 on usage or input errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cflr_cli::{bench, io, rnd};
use cflr_core::andersen::{apa_fixpoint, apa_on_demand, apa_word_check, ApaInstance};
use cflr_core::grammar::{
    classify, preset, serialize_grammar, to_cnf, to_proper, word_display, Grammar,
};
use cflr_core::graph::serialize_graph;
use cflr_core::oracle::{self, OracleMethod, OracleReport, OracleVerdict};
use cflr_core::reductions::{
    apa_clique_gadget, bmm_to_cfg, inverse_hom_transform, kclique_to_dyck2, kcycle_on_demand,
    right_quotient_extend, triangle_to_dyck1, variant_reductions, worst_case_family, GroundTruth,
    VariantTarget,
};
use cflr_core::solver;

#[derive(Parser)]
#[command(
    name = "cflr",
    version,
    about = "CFL reachability solvers and reduction laboratory"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a grammar: join-inducing witness, linearity, regularity.
    Classify {
        /// preset name (e.g. dyck:2, geq) or grammar file
        #[arg(long)]
        grammar: String,
    },
    /// Print the proper form or Chomsky Normal Form of a grammar.
    Normalize {
        #[arg(long)]
        grammar: String,
        #[arg(long, value_enum, default_value_t = Form::Cnf)]
        form: Form,
    },
    /// Solve All-Pairs or a single On-Demand query.
    Solve {
        #[arg(long)]
        grammar: String,
        #[arg(long)]
        graph: PathBuf,
        /// on-demand query: two vertex names
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        pair: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        /// print the classification and the chosen strategy
        #[arg(long)]
        explain: bool,
    },
    /// Generate a reduction instance bundle.
    Reduce {
        #[command(subcommand)]
        gen: ReduceCmd,
    },
    /// Run an independent brute-force oracle.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Andersen's pointer analysis over alpha/e/beta/gamma instances.
    Apa {
        #[command(subcommand)]
        which: ApaCmd,
    },
    /// Run a scaling benchmark plan and emit CSV.
    Bench {
        #[arg(long)]
        plan: PathBuf,
        /// directory for CSV and gnuplot data (default: stdout only)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Proper,
    Cnf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Auto,
    Generic,
    Linear,
    Joinfree,
    GeqOd,
    GeqDom,
}

#[derive(Args)]
struct CommonGen {
    /// source graph file (a random source is generated when omitted)
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// size of the generated random source
    #[arg(long, default_value_t = 8)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// force ground-truth verification on
    #[arg(long)]
    verify: bool,
    /// force ground-truth verification off
    #[arg(long)]
    no_verify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonGen {
    fn effective_verify(&self, default_on: bool) -> bool {
        if self.no_verify {
            false
        } else {
            self.verify || default_on
        }
    }
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// 3-clique in a tripartite graph -> Dyck-1 on-demand instance.
    TriangleDyck1 {
        #[command(flatten)]
        common: CommonGen,
    },
    /// 3k-clique -> Dyck-2 on-demand instance (clique list / neighbor gadgets).
    KcliqueDyck2 {
        #[command(flatten)]
        common: CommonGen,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// 3k-clique -> pointer-analysis on-demand instance.
    ApaGadget {
        #[command(flatten)]
        common: CommonGen,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Triangle skeleton relabeled for `anbn_mid:<s>` / eqcount / palindrome.
    Variant {
        #[command(flatten)]
        common: CommonGen,
        #[arg(long)]
        target: String,
    },
    /// k-cycle in a layered digraph -> on-demand instance (odd k).
    Kcycle {
        #[command(flatten)]
        common: CommonGen,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value = "dyck:1")]
        target: String,
    },
    /// Boolean matrix product encoded over a join-inducing grammar.
    Bmm {
        #[command(flatten)]
        common: CommonGen,
        /// witness-carrying grammar (preset or file)
        #[arg(long, default_value = "anbn")]
        grammar: String,
    },
    /// The k*n-edge family whose filtered output is exactly n^2 pairs.
    WorstCase {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value = "anbn")]
        grammar: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a fresh alpha-sink per vertex (right-quotient decode support).
    RightQuotient {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace every edge by its homomorphic image path (`a=ad,b=,c=c`).
    InverseHom {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// CYK membership of a word.
    Cyk {
        #[arg(long)]
        grammar: String,
        #[arg(long, num_args = 1.., value_name = "SYMBOL")]
        word: Vec<String>,
    },
    /// Product-construction reachability for one pair.
    BarHillel {
        #[arg(long)]
        grammar: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        pair: Vec<String>,
    },
    /// All label words of s-to-t walks up to a length bound.
    Paths {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        pair: Vec<String>,
        #[arg(long, default_value_t = 8)]
        maxlen: usize,
    },
    /// Brute-force triangle in a tripartite source file.
    Triangle {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Brute-force c-clique in a simple source file.
    Kclique {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        c: usize,
    },
    /// Brute-force k-cycle in a layered source file.
    Kcycle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Naive boolean matrix product of a two-block matrix file.
    Bmm {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Naive round-robin pointer-analysis fixpoint.
    Apa {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum ApaCmd {
    /// Semi-naive fixpoint; prints the T relation as sorted pairs.
    Fixpoint {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Is T(p, q) derivable?
    Query {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        pair: Vec<String>,
    },
    /// Check one label word against the T grammar.
    WordCheck {
        #[arg(long, num_args = 1.., value_name = "SYMBOL")]
        word: Vec<String>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn verdict(reachable: bool, s: &str, t: &str) -> ExitCode {
    if reachable {
        println!("{s} -> {t}: reachable");
        ExitCode::SUCCESS
    } else {
        println!("{s} -> {t}: unreachable");
        ExitCode::from(1)
    }
}

/// Words may be given as separate symbol tokens or, when every character
/// is itself a terminal of the grammar, as one compact token such as
/// `(((())))`.
fn parse_word(g: &Grammar, tokens: &[String]) -> Vec<String> {
    let all_known = tokens.iter().all(|t| g.is_terminal(t));
    if !all_known && tokens.len() == 1 {
        let chars: Vec<String> = tokens[0].chars().map(|c| c.to_string()).collect();
        if chars.iter().all(|c| g.is_terminal(c)) {
            return chars;
        }
    }
    tokens.to_vec()
}

fn warn_inert(labels: &[String]) {
    if !labels.is_empty() {
        eprintln!(
            "warning: {} label(s) not in the grammar alphabet are inert: {}",
            labels.len(),
            labels.join(", ")
        );
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Classify { grammar } => {
            let g = io::load_grammar(&grammar)?;
            println!("{}", classify(&g));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Normalize { grammar, form } => {
            let g = io::load_grammar(&grammar)?;
            let out = match form {
                Form::Proper => to_proper(&g),
                Form::Cnf => to_cnf(&g).grammar().clone(),
            };
            if out.productions().is_empty() {
                println!("# empty language");
            } else {
                print!("{}", serialize_grammar(&out));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Solve {
            grammar,
            graph,
            pair,
            strategy,
            explain,
        } => solve(&grammar, &graph, pair, strategy, explain),
        Cmd::Reduce { gen } => reduce(gen),
        Cmd::Oracle { which } => run_oracle(which),
        Cmd::Apa { which } => run_apa(which),
        Cmd::Bench { plan, out } => {
            let text = fs::read_to_string(&plan)?;
            let plan = bench::parse_plan(&text)?;
            let result = bench::run_bench(&plan)?;
            print!("{}", bench::to_csv(&result));
            if let Some((slope, rss)) = result.slope {
                eprintln!("# fitted time slope = {slope:.3} (rss {rss:.3e})");
            }
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(
                    dir.join(format!("{}.csv", plan.family)),
                    bench::to_csv(&result),
                )?;
                fs::write(
                    dir.join(format!("{}.dat", plan.family)),
                    bench::to_gnuplot(&result),
                )?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn solve(
    grammar: &str,
    graph_path: &Path,
    pair: Option<Vec<String>>,
    strategy: Strategy,
    explain: bool,
) -> Result<ExitCode> {
    let g = io::load_grammar(grammar)?;
    let graph = io::load_graph(graph_path)?;
    let report = classify(&g);
    let is_geq = g.structurally_equals(&preset("geq").expect("catalogued"));

    let chosen = match strategy {
        Strategy::Auto => {
            if !report.join_inducing {
                Strategy::Joinfree
            } else if is_geq && pair.is_some() {
                Strategy::GeqOd
            } else if report.linear {
                Strategy::Linear
            } else {
                Strategy::Generic
            }
        }
        s => s,
    };
    if explain {
        for line in report.to_string().lines() {
            println!("# {line}");
        }
        let name = match chosen {
            Strategy::Generic => "generic",
            Strategy::Linear => "linear",
            Strategy::Joinfree => "joinfree",
            Strategy::GeqOd => "geq-od",
            Strategy::GeqDom => "geq-dom",
            Strategy::Auto => unreachable!("auto resolves above"),
        };
        println!("# strategy = {name}");
    }

    let query = pair.as_ref().map(|p| (p[0].clone(), p[1].clone()));
    match chosen {
        Strategy::GeqOd => {
            if !is_geq {
                bail!("--strategy geq-od requires the geq grammar");
            }
            let (s, t) = query.ok_or_else(|| anyhow!("--strategy geq-od needs --pair"))?;
            let r = solver::geq_on_demand(&graph, &s, &t).map_err(|e| anyhow!("{e}"))?;
            Ok(verdict(r, &s, &t))
        }
        Strategy::GeqDom => {
            if !is_geq {
                bail!("--strategy geq-dom requires the geq grammar");
            }
            let pairs = solver::geq_all_pairs_dominance(&graph).map_err(|e| anyhow!("{e}"))?;
            match query {
                Some((s, t)) => {
                    let (si, ti) = resolve_pair(&graph, &s, &t)?;
                    Ok(verdict(pairs.contains(si, ti), &s, &t))
                }
                None => {
                    print!("{}", pairs.to_text(&graph));
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Strategy::Joinfree => {
            let sol = solver::join_free_all_pairs(&g, &graph).map_err(|e| anyhow!("{e}"))?;
            warn_inert(&sol.inert_labels);
            finish_all_pairs(sol.pairs, &graph, query)
        }
        Strategy::Linear => {
            let sol = solver::all_pairs_linear(&g, &graph).map_err(|e| anyhow!("{e}"))?;
            warn_inert(&sol.inert_labels);
            finish_all_pairs(sol.pairs, &graph, query)
        }
        Strategy::Generic => {
            let sol = solver::all_pairs(&to_cnf(&g), &graph);
            warn_inert(&sol.inert_labels);
            finish_all_pairs(sol.pairs, &graph, query)
        }
        Strategy::Auto => unreachable!("auto resolves above"),
    }
}

fn resolve_pair(graph: &cflr_core::graph::LabeledGraph, s: &str, t: &str) -> Result<(u32, u32)> {
    let si = graph
        .vertex_id(s)
        .ok_or_else(|| anyhow!("unknown vertex `{s}`"))?;
    let ti = graph
        .vertex_id(t)
        .ok_or_else(|| anyhow!("unknown vertex `{t}`"))?;
    Ok((si, ti))
}

fn finish_all_pairs(
    pairs: cflr_core::graph::VertexPairSet,
    graph: &cflr_core::graph::LabeledGraph,
    query: Option<(String, String)>,
) -> Result<ExitCode> {
    match query {
        Some((s, t)) => {
            let (si, ti) = resolve_pair(graph, &s, &t)?;
            Ok(verdict(pairs.contains(si, ti), &s, &t))
        }
        None => {
            print!("{}", pairs.to_text(graph));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn report_instance(dir: &Path, truth: &Option<GroundTruth>) {
    println!("instance written to {}", dir.display());
    match truth {
        Some(GroundTruth::Bool(b)) => println!("ground truth: {b}"),
        Some(GroundTruth::Pairs(p)) => println!("ground truth: {} pairs", p.len()),
        None => {}
    }
}

fn reduce(gen: ReduceCmd) -> Result<ExitCode> {
    match gen {
        ReduceCmd::TriangleDyck1 { common } => {
            let g3 = match &common.input {
                Some(p) => io::load_tripartite(p)?,
                None => rnd::random_tripartite(
                    &mut rnd::rng(common.seed),
                    common.size,
                    common.size,
                    common.size,
                    0.3,
                ),
            };
            let inst = triangle_to_dyck1(&g3, common.effective_verify(true))
                .map_err(|e| anyhow!("{e}"))?;
            let dir = io::out_dir(common.out.clone(), "instance-triangle-dyck1");
            io::write_instance(&dir, &inst, None)?;
            report_instance(&dir, &inst.ground_truth);
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::KcliqueDyck2 { common, k } => {
            let src = match &common.input {
                Some(p) => io::load_simple_graph(p)?,
                None => rnd::random_simple_graph(&mut rnd::rng(common.seed), common.size, 0.4),
            };
            let inst = kclique_to_dyck2(&src, k, common.effective_verify(k <= 2))
                .map_err(|e| anyhow!("{e}"))?;
            let dir = io::out_dir(common.out.clone(), "instance-kclique-dyck2");
            io::write_instance(&dir, &inst, None)?;
            report_instance(&dir, &inst.ground_truth);
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::ApaGadget { common, k } => {
            let src = match &common.input {
                Some(p) => io::load_simple_graph(p)?,
                None => rnd::random_simple_graph(&mut rnd::rng(common.seed), common.size, 0.4),
            };
            let inst = apa_clique_gadget(&src, k, common.effective_verify(k <= 2))
                .map_err(|e| anyhow!("{e}"))?;
            let dir = io::out_dir(common.out.clone(), "instance-apa-gadget");
            io::write_instance(&dir, &inst, None)?;
            report_instance(&dir, &inst.ground_truth);
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::Variant { common, target } => {
            let g3 = match &common.input {
                Some(p) => io::load_tripartite(p)?,
                None => rnd::random_tripartite(
                    &mut rnd::rng(common.seed),
                    common.size,
                    common.size,
                    common.size,
                    0.3,
                ),
            };
            let target = VariantTarget::parse(&target).map_err(|e| anyhow!("{e}"))?;
            let inst = variant_reductions(&g3, &target, common.effective_verify(true))
                .map_err(|e| anyhow!("{e}"))?;
            let dir = io::out_dir(common.out.clone(), "instance-variant");
            io::write_instance(&dir, &inst, None)?;
            report_instance(&dir, &inst.ground_truth);
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::Kcycle { common, k, target } => {
            let src = match &common.input {
                Some(p) => io::load_layered(p)?,
                None => rnd::random_layered(
                    &mut rnd::rng(common.seed),
                    k,
                    common.size.max(2),
                    0.3,
                    common.seed % 2 == 0,
                ),
            };
            let inst = kcycle_on_demand(&src, k, &target, common.effective_verify(true))
                .map_err(|e| anyhow!("{e}"))?;
            let dir = io::out_dir(common.out.clone(), "instance-kcycle");
            io::write_instance(&dir, &inst, None)?;
            report_instance(&dir, &inst.ground_truth);
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::Bmm { common, grammar } => {
            let g = io::load_grammar(&grammar)?;
            let (a, b) = match &common.input {
                Some(p) => io::load_matrices(p)?,
                None => {
                    let mut r = rnd::rng(common.seed);
                    (
                        rnd::random_matrix(&mut r, common.size, 0.3),
                        rnd::random_matrix(&mut r, common.size, 0.3),
                    )
                }
            };
            let red = bmm_to_cfg(&a, &b, &g, common.effective_verify(true))
                .map_err(|e| anyhow!("{e}"))?;
            let mut inst = red.instance;
            inst.grammar_preset = grammar.clone();
            let dir = io::out_dir(common.out.clone(), "instance-bmm");
            io::write_instance(&dir, &inst, Some(&g))?;
            report_instance(&dir, &inst.ground_truth);
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::WorstCase { n, grammar, out } => {
            let g = io::load_grammar(&grammar)?;
            let mut inst = worst_case_family(&g, n, true).map_err(|e| anyhow!("{e}"))?;
            inst.grammar_preset = grammar.clone();
            let dir = io::out_dir(out, "instance-worst-case");
            io::write_instance(&dir, &inst, Some(&g))?;
            report_instance(&dir, &inst.ground_truth);
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::RightQuotient { graph, alpha, out } => {
            let g = io::load_graph(&graph)?;
            let (ext, decode) = right_quotient_extend(&g, &alpha).map_err(|e| anyhow!("{e}"))?;
            let dir = io::out_dir(out, "instance-right-quotient");
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("graph.txt"), serialize_graph(&ext))?;
            let mut map = String::new();
            for (fresh, orig) in &decode {
                map.push_str(&format!("{fresh} {orig}\n"));
            }
            fs::write(dir.join("decode.txt"), map)?;
            println!("instance written to {}", dir.display());
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::InverseHom { graph, map, out } => {
            let g = io::load_graph(&graph)?;
            let h = io::parse_hom_spec(&map)?;
            let (tg, decode) = inverse_hom_transform(&g, &h).map_err(|e| anyhow!("{e}"))?;
            let dir = io::out_dir(out, "instance-inverse-hom");
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("graph.txt"), serialize_graph(&tg))?;
            let mut text = String::new();
            for (orig, rep) in &decode {
                text.push_str(&format!("{orig} {rep}\n"));
            }
            fs::write(dir.join("decode.txt"), text)?;
            println!("instance written to {}", dir.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_oracle(which: OracleCmd) -> Result<ExitCode> {
    match which {
        OracleCmd::Cyk { grammar, word } => {
            let g = io::load_grammar(&grammar)?;
            let word = parse_word(&g, &word);
            let refs: Vec<&str> = word.iter().map(|s| s.as_str()).collect();
            let ok = oracle::cyk(&to_cnf(&g), &refs);
            let report = OracleReport::exact(OracleMethod::Cyk, OracleVerdict::Bool(ok));
            println!("{} word={}", report.summary(), word_display(&word));
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        OracleCmd::BarHillel {
            grammar,
            graph,
            pair,
        } => {
            let g = io::load_grammar(&grammar)?;
            let gr = io::load_graph(&graph)?;
            let ok = oracle::bar_hillel_reachability(&to_cnf(&g), &gr, &pair[0], &pair[1]);
            let report = OracleReport::exact(OracleMethod::BarHillel, OracleVerdict::Bool(ok));
            println!("{} pair=({},{})", report.summary(), pair[0], pair[1]);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        OracleCmd::Paths {
            graph,
            pair,
            maxlen,
        } => {
            let gr = io::load_graph(&graph)?;
            let words = oracle::enumerate_paths(&gr, &pair[0], &pair[1], maxlen)
                .map_err(|e| anyhow!("{e}"))?;
            let report = OracleReport::bounded(
                OracleMethod::PathEnum,
                OracleVerdict::Bool(!words.is_empty()),
                maxlen,
            );
            println!("{} words={}", report.summary(), words.len());
            for w in &words {
                println!("{}", word_display(w));
            }
            Ok(ExitCode::SUCCESS)
        }
        OracleCmd::Triangle { input } => {
            let g3 = io::load_tripartite(&input)?;
            let ok = oracle::brute_triangle(&g3);
            let report =
                OracleReport::exact(OracleMethod::ExhaustiveSearch, OracleVerdict::Bool(ok));
            println!("{} problem=triangle", report.summary());
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        OracleCmd::Kclique { input, c } => {
            let g = io::load_simple_graph(&input)?;
            let ok = oracle::brute_kclique(&g, c).map_err(|e| anyhow!("{e}"))?;
            let report =
                OracleReport::exact(OracleMethod::ExhaustiveSearch, OracleVerdict::Bool(ok));
            println!("{} problem=clique_{c}", report.summary());
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        OracleCmd::Kcycle { input, k } => {
            let g = io::load_layered(&input)?;
            let ok = oracle::brute_kcycle(&g, k).map_err(|e| anyhow!("{e}"))?;
            let report =
                OracleReport::exact(OracleMethod::ExhaustiveSearch, OracleVerdict::Bool(ok));
            println!("{} problem=cycle_{k}", report.summary());
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        OracleCmd::Bmm { input } => {
            let (a, b) = io::load_matrices(&input)?;
            let c = oracle::naive_bmm(&a, &b).map_err(|e| anyhow!("{e}"))?;
            println!("method=exhaustive_search");
            print!("{}", c.to_text());
            Ok(ExitCode::SUCCESS)
        }
        OracleCmd::Apa { graph } => {
            let gr = io::load_graph(&graph)?;
            let t = oracle::naive_apa(&gr).map_err(|e| anyhow!("{e}"))?;
            let named_pairs: BTreeSet<(String, String)> = t
                .iter()
                .map(|&(x, y)| (gr.vertex_name(x).to_string(), gr.vertex_name(y).to_string()))
                .collect();
            let report = OracleReport::exact(
                OracleMethod::NaiveFixpoint,
                OracleVerdict::Pairs(named_pairs),
            );
            println!("{}", report.summary());
            if let OracleVerdict::Pairs(pairs) = &report.verdict {
                for (x, y) in pairs {
                    println!("{x} {y}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_apa(which: ApaCmd) -> Result<ExitCode> {
    match which {
        ApaCmd::Fixpoint { graph } => {
            let g = io::load_graph(&graph)?;
            let inst = ApaInstance::new(g).map_err(|e| anyhow!("{e}"))?;
            let t = apa_fixpoint(&inst);
            print!("{}", t.to_text(inst.graph()));
            Ok(ExitCode::SUCCESS)
        }
        ApaCmd::Query { graph, pair } => {
            let g = io::load_graph(&graph)?;
            let inst = ApaInstance::new(g).map_err(|e| anyhow!("{e}"))?;
            let ok = apa_on_demand(&inst, &pair[0], &pair[1]).map_err(|e| anyhow!("{e}"))?;
            Ok(verdict(ok, &pair[0], &pair[1]))
        }
        ApaCmd::WordCheck { word } => {
            let refs: Vec<&str> = word.iter().map(|s| s.as_str()).collect();
            let ok = apa_word_check(&refs);
            println!("word={} valid={ok}", word.join(" "));
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
