//! One-row Macdonald polynomials, the closed forms U and V of Ψ at the
//! special point, and the chain of identities connecting them: the
//! Ruijsenaars recurrence, the polynomial solutions at Q = q^{−r}/t, the
//! two half-equations, the generating-function and q-series identities and
//! q-Saalschütz.

mod checks;
mod closed;
mod onerow;

pub use checks::{
    verify_formula_gamma, verify_genfunc, verify_halves, verify_macdonald_recurrence, verify_macdonald_solution,
    verify_qsaalschutz, verify_qseries_identity,
};
pub use closed::{u_series, v_series};
pub use onerow::{macdonald_onerow, SymmetricPolynomial3};
