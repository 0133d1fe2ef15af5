//! Architecture checks: the oracle module must stay independent of the
//! solver and pointer-analysis engines it cross-checks, importing only the
//! grammar and graph data types.

#[test]
fn oracle_imports_only_data_modules() {
    let src = include_str!("../src/oracle.rs");
    assert!(
        !src.contains("crate::solver"),
        "oracle must not reach into the solver"
    );
    assert!(
        !src.contains("crate::andersen"),
        "oracle must not reach into the fixpoint engine"
    );
    assert!(
        !src.contains("crate::reductions"),
        "oracle must not reach into the generators"
    );
    for line in src.lines() {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("use crate::") {
            let module = rest.split([':', ';']).next().unwrap_or("");
            assert!(
                matches!(module, "grammar" | "graph"),
                "oracle imports `{line}`; only grammar/graph data types are allowed"
            );
        }
        assert!(
            !trimmed.starts_with("use super::solver")
                && !trimmed.starts_with("use super::andersen"),
            "oracle imports `{line}`"
        );
    }
}

#[test]
fn solver_does_not_use_the_oracles() {
    let src = include_str!("../src/solver.rs");
    assert!(
        !src.contains("crate::oracle"),
        "solver must not call its own referee"
    );
}
