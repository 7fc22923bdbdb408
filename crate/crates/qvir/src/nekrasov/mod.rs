//! Partitions, Nekrasov factors, the instanton sum Z, its Higgsed form Ψ,
//! the Toda limit and the parameter map.
//!
//! Z = Σ p1^{|ν|} p2^{|μ|} ∏_{a,b} N_{∅,ν_b}(v f⁺_a/n_b) N_{ν_a,μ_b}(w n_a/m_b)
//! N_{μ_b,∅}(v m_b/f⁻_a) / (N_{ν_a,ν_b}(n_a/n_b) N_{μ_a,μ_b}(m_a/m_b)),
//! with p1 carrying x and p2 carrying Λ/x, so a term sits at
//! (dΛ, dx) = (|μ|, |ν| − |μ|).

mod factor;
mod param_map;
mod partition;
mod zsum;

pub use factor::{box_exponents, nekrasov_factor, FactorMemo, QtPowers};
pub use param_map::{param_map, param_map_inverse, ModelParams, ParamMapInput, MAX_EXPONENT};
pub use partition::{partition_pairs_up_to, partitions_of, partitions_up_to, Partition};
pub use zsum::{
    higgs_psi, higgs_psi_on, toda_limit, z_expand, z_expand_on, z_nonzero_terms, ZTerm,
};

#[cfg(test)]
mod tests;
