//! Deliberate single-constant corruptions of formulas, used to confirm
//! that a verification can fail on the windows it is run on.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mutation {
    #[default]
    None,
    /// A2 numerator φ(q·T2T3Λ) becomes φ(T2T3Λ).
    A2,
    /// The argument shift x/(tqQ) becomes x/(tq).
    Shift,
    /// The tQ coefficient of the Toda Hamiltonian becomes t²Q.
    Tq2,
    /// The Macdonald eigenvalue 1+t+t/Q becomes 1+t+tQ.
    Eigen,
    /// The Macdonald recurrence middle coefficient gains an extra 1/(1−x).
    RecurrencePole,
    /// The mixed coefficients of P_[2] lose their factor 1+q.
    P2,
    /// (−Q)^{m−n} in V becomes Q^{m−n}.
    HalvesV,
    /// (c/a)_n on the q-Saalschütz right side becomes (ca)_n.
    Ca,
    /// q^{1+k} in the γ̂ formula becomes q^k.
    GammaExp,
    /// The weight q^k of the q-series summand becomes q^{k+1}.
    QseriesWeight,
    /// (t)_r in the generating-function sum becomes (qt)_r.
    GenfuncPoch,
    /// φ expansion weight q^{n(n−1)/2} replaced by q^{n(n+1)/2}.
    PhiWeight,
}

impl Mutation {
    pub const ALL: [(&'static str, Mutation); 13] = [
        ("none", Mutation::None),
        ("a2", Mutation::A2),
        ("shift", Mutation::Shift),
        ("tq2", Mutation::Tq2),
        ("eigen", Mutation::Eigen),
        ("pole", Mutation::RecurrencePole),
        ("p2", Mutation::P2),
        ("v", Mutation::HalvesV),
        ("ca", Mutation::Ca),
        ("exp", Mutation::GammaExp),
        ("weight", Mutation::QseriesWeight),
        ("poch", Mutation::GenfuncPoch),
        ("phi", Mutation::PhiWeight),
    ];

    pub fn name(self) -> &'static str {
        Mutation::ALL.iter().find(|(_, m)| *m == self).map(|(n, _)| *n).expect("listed")
    }
}

impl FromStr for Mutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mutation> {
        Mutation::ALL
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, m)| *m)
            .ok_or_else(|| Error::Usage(format!("unknown mutation {s}")))
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
