//! CFL-reachability engine with grammar classification and a reduction-gadget
//! laboratory.
//!
//! The crate is split along the problem's natural seams:
//!
//! * [`grammar`] — context-free grammars, a small text DSL, normalization to
//!   proper form and Chomsky Normal Form, and the join-inducing/join-free
//!   classifier that drives solver strategy selection.
//! * [`graph`] — edge-labeled directed multigraphs with interned vertices,
//!   plus the subroutines the solvers need (SCC condensation, label filters,
//!   reversal, path builders).
//! * [`solver`] — the reachability solvers: the generic cubic worklist, the
//!   join-free linear scan, the linear-grammar solver, and the two
//!   specialized algorithms for the `a^i b^j (i >= j)` language.
//! * [`andersen`] — Andersen's pointer analysis as a four-rule Datalog
//!   fixpoint, with a word-level validity checker.
//! * [`reductions`] — generators that turn clique/cycle/matrix problems into
//!   concrete reachability instances, each paired with a planted ground
//!   truth.
//! * [`oracle`] — independent brute-force references used for differential
//!   testing. These deliberately share no logic with `solver`.
//!
//! The crate is `no_std` + `alloc`; everything here is deterministic given
//! its inputs. File I/O, the CLI, and the benchmark harness live in the
//! companion `cflr-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod andersen;
pub mod digest;
pub mod grammar;
pub mod graph;
pub mod oracle;
pub mod reductions;
pub mod solver;
