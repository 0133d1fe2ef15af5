//! File formats, random instance generation, and the benchmark harness for
//! the `cflr` command-line tool. The algorithmic core lives in `cflr-core`;
//! this crate owns everything that needs the standard library (filesystem,
//! wall clocks, RNG).

pub mod bench;
pub mod io;
pub mod rnd;
