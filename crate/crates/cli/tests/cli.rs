//! End-to-end checks of the `cflr` binary: exit-code contract, strategy
//! agreement, bundle layout, and the oracle/apa/bench subcommands.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cflr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cflr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cflr-test-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) -> PathBuf {
    fs::write(path, text).unwrap();
    path.to_path_buf()
}

#[test]
fn classify_prints_report() {
    let out = cflr(&["classify", "--grammar", "dyck:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("join_inducing = true"));
    assert!(text.contains("witness = lb rb"));
}

#[test]
fn normalize_emits_parseable_cnf() {
    let out = cflr(&["normalize", "--grammar", "geq", "--form", "cnf"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(cflr_core::grammar::parse_grammar(&text).is_ok());
}

#[test]
fn solve_exit_codes() {
    let dir = tmp_dir("solve");
    let graph = write(&dir.join("g.txt"), "u x (\nx v )\n");
    let g = graph.to_str().unwrap();

    let out = cflr(&[
        "solve",
        "--grammar",
        "dyck:1",
        "--graph",
        g,
        "--pair",
        "u",
        "v",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("reachable"));

    let out = cflr(&[
        "solve",
        "--grammar",
        "dyck:1",
        "--graph",
        g,
        "--pair",
        "v",
        "u",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("unreachable"));

    let out = cflr(&["solve", "--grammar", "dyck:1", "--graph", g, "--pair", "v"]);
    assert_eq!(out.status.code(), Some(2)); // usage error: pair needs two names

    let out = cflr(&["solve", "--grammar", "nosuchpreset", "--graph", g]);
    assert_eq!(out.status.code(), Some(2));

    let out = cflr(&[
        "solve",
        "--grammar",
        "dyck:1",
        "--graph",
        "/nonexistent/g.txt",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_all_pairs_sorted_output() {
    let dir = tmp_dir("allpairs");
    let graph = write(&dir.join("g.txt"), "u x (\nx v )\n");
    let out = cflr(&[
        "solve",
        "--grammar",
        "dyck:1",
        "--graph",
        graph.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "u u\nu v\nv v\nx x\n");
}

#[test]
fn strategies_agree() {
    let dir = tmp_dir("strategies");
    let graph = write(
        &dir.join("g.txt"),
        "n1 n2 a\nn2 n3 a\nn3 n1 a\nn2 n4 b\nn4 n5 b\nn1 n4 a\n",
    );
    let g = graph.to_str().unwrap();
    let mut verdicts = Vec::new();
    for strategy in ["auto", "generic", "geq-od", "geq-dom"] {
        let out = cflr(&[
            "solve",
            "--grammar",
            "geq",
            "--graph",
            g,
            "--pair",
            "n1",
            "n5",
            "--strategy",
            strategy,
        ]);
        verdicts.push((strategy, out.status.code()));
    }
    let first = verdicts[0].1;
    assert!(
        verdicts.iter().all(|&(_, c)| c == first),
        "strategies disagreed: {verdicts:?}"
    );

    // join-free fast path agrees with the generic solver on the full set
    let jf = write(&dir.join("jf.txt"), "S -> 'a' | 'b'\n");
    let out_fast = cflr(&[
        "solve",
        "--grammar",
        jf.to_str().unwrap(),
        "--graph",
        g,
        "--strategy",
        "joinfree",
    ]);
    let out_gen = cflr(&[
        "solve",
        "--grammar",
        jf.to_str().unwrap(),
        "--graph",
        g,
        "--strategy",
        "generic",
    ]);
    assert_eq!(stdout(&out_fast), stdout(&out_gen));

    // explain prints the chosen strategy
    let out = cflr(&[
        "solve",
        "--grammar",
        "geq",
        "--graph",
        g,
        "--pair",
        "n1",
        "n5",
        "--strategy",
        "auto",
        "--explain",
    ]);
    assert!(stdout(&out).contains("# strategy = geq-od"));
}

#[test]
fn reduce_writes_bundle() {
    let dir = tmp_dir("reduce");
    let out = cflr(&[
        "reduce",
        "triangle-dyck1",
        "--size",
        "5",
        "--seed",
        "7",
        "--out",
        dir.join("inst").to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "reduce failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for file in ["graph.txt", "query.txt", "meta.txt", "truth.txt"] {
        assert!(dir.join("inst").join(file).exists(), "missing {file}");
    }
    let meta = fs::read_to_string(dir.join("inst/meta.txt")).unwrap();
    assert!(meta.contains("generator = triangle_to_dyck1"));
    assert!(meta.contains("preset = dyck:1"));

    // the produced instance solves to the recorded truth
    let truth = fs::read_to_string(dir.join("inst/truth.txt")).unwrap();
    let query = fs::read_to_string(dir.join("inst/query.txt")).unwrap();
    let parts: Vec<&str> = query.split_whitespace().collect();
    let out = cflr(&[
        "solve",
        "--grammar",
        "dyck:1",
        "--graph",
        dir.join("inst/graph.txt").to_str().unwrap(),
        "--pair",
        parts[0],
        parts[1],
    ]);
    let expected_code = if truth.trim() == "true" { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected_code));
}

#[test]
fn reduce_is_deterministic() {
    let dir = tmp_dir("determinism");
    for sub in ["a", "b"] {
        let out = cflr(&[
            "reduce",
            "kclique-dyck2",
            "--size",
            "6",
            "--seed",
            "9",
            "--k",
            "1",
            "--out",
            dir.join(sub).to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = fs::read_to_string(dir.join("a/graph.txt")).unwrap();
    let b = fs::read_to_string(dir.join("b/graph.txt")).unwrap();
    assert_eq!(a, b, "same seed must produce byte-identical instances");
}

#[test]
fn oracle_subcommands() {
    let out = cflr(&["oracle", "cyk", "--grammar", "dyck:1", "--word", "(((())))"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cflr(&["oracle", "cyk", "--grammar", "dyck:1", "--word", "(()"]);
    assert_eq!(out.status.code(), Some(1));

    let dir = tmp_dir("oracle");
    let graph = write(&dir.join("g.txt"), "u x (\nx v )\n");
    let out = cflr(&[
        "oracle",
        "bar-hillel",
        "--grammar",
        "dyck:1",
        "--graph",
        graph.to_str().unwrap(),
        "--pair",
        "u",
        "v",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = cflr(&[
        "oracle",
        "paths",
        "--graph",
        graph.to_str().unwrap(),
        "--pair",
        "u",
        "v",
        "--maxlen",
        "4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("()"));

    let tri = write(&dir.join("t.txt"), "a1 b1 -\nb1 c1 -\nc1 a1 -\n");
    let out = cflr(&["oracle", "triangle", "--in", tri.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let mats = write(&dir.join("m.txt"), "10\n01\n\n11\n00\n");
    let out = cflr(&["oracle", "bmm", "--in", mats.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("11\n00"));

    let cyc = write(
        &dir.join("cyc.txt"),
        "p1:1 p2:1 -\np2:1 p3:1 -\np3:1 p1:1 -\n",
    );
    let out = cflr(&["oracle", "kcycle", "--in", cyc.to_str().unwrap(), "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cflr(&["oracle", "kcycle", "--in", cyc.to_str().unwrap(), "--k", "4"]);
    assert_eq!(out.status.code(), Some(2)); // wrong k for a 3-layer file

    let clique = write(&dir.join("kc.txt"), "v1 v2 -\nv2 v3 -\nv1 v3 -\n");
    let out = cflr(&["oracle", "kclique", "--in", clique.to_str().unwrap(), "--c", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cflr(&["oracle", "kclique", "--in", clique.to_str().unwrap(), "--c", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn apa_subcommands() {
    let dir = tmp_dir("apa");
    let graph = write(&dir.join("i.txt"), "a b alpha\nb c alpha\nc d beta\n");
    let g = graph.to_str().unwrap();

    let out = cflr(&["apa", "fixpoint", "--graph", g]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("a d"));

    let out = cflr(&["apa", "query", "--graph", g, "--pair", "a", "d"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cflr(&["apa", "query", "--graph", g, "--pair", "d", "a"]);
    assert_eq!(out.status.code(), Some(1));

    let out = cflr(&[
        "apa",
        "word-check",
        "--word",
        "alpha",
        "gamma",
        "alpha",
        "gammabar",
        "alphabar",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = cflr(&["apa", "word-check", "--word", "beta"]);
    assert_eq!(out.status.code(), Some(1));

    // invalid labels are input errors
    let bad = write(&dir.join("bad.txt"), "a b delta\n");
    let out = cflr(&["apa", "fixpoint", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_csv() {
    let dir = tmp_dir("bench");
    let plan = write(
        &dir.join("plan.txt"),
        "family = worst_case_output\npreset = anbn\nsizes = 4 8 16 32\nreps = 3\nseed = 5\n",
    );
    let out = cflr(&[
        "bench",
        "--plan",
        plan.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "bench failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.starts_with("family,preset,n,m,output_size,median_ms,min_ms,facts,timed_out"));
    assert!(text.contains("worst_case_output,anbn,4,8,16,"));
    assert!(dir.join("worst_case_output.csv").exists());
    assert!(dir.join("worst_case_output.dat").exists());
}
