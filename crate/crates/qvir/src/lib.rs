//! Exact truncated bivariate series for q-Virasoro conformal blocks.
//!
//! Coefficients live in [`coeffield`]: big rationals or rational functions
//! over a fixed symbol table, with `q = u^2`, `t = s^2`, `v = u/s`.
//! [`series`] provides the truncated Laurent series in `(Λ, x)` with
//! region bookkeeping, [`qkit`] the q-special functions, [`nekrasov`] the
//! instanton sums, [`operators`] the difference-operator calculus and
//! [`macdonald`] the one-row Macdonald chain. [`catalog`] runs the named
//! identity checks used by the command line tool.

pub mod catalog;
pub mod coeffield;
pub mod error;
pub mod macdonald;
pub mod mutation;
pub mod nekrasov;
pub mod operators;
pub mod qkit;
pub mod series;

pub use coeffield::{FieldElement, ParamPoint, SymbolTable};
pub use error::{Error, Result};
pub use mutation::Mutation;
pub use series::{BiSeries, DegreeWindow, MonomialArg, Region, Verdict};


/// Configure the global worker pool from `QVIR_THREADS`, if set.
///
/// Safe to call more than once; later calls are ignored.
pub fn init_threads_from_env() {
    if let Some(n) = std::env::var("QVIR_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
