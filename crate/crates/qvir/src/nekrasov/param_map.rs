//! The map between (Q, T1..T4, φ1, φ2) and (q^{α1..α4}; N1, N2, N3):
//! q^{α1} = v⁻²T1T2Q, q^{α2} = v⁻²T4/T3, q^{α3} = v⁻²φ2/φ1, q^{α4} = v⁻²T1/T2,
//! t^{N1} = v/T1, t^{N2} = vφ1, t^{N3} = vT3.

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};

/// The largest |N| probed when recovering integer exponents.
pub const MAX_EXPONENT: i64 = 64;

#[derive(Clone, Debug)]
pub struct ParamMapInput {
    pub q_alpha: [FieldElement; 4],
    pub n: [i64; 3],
}

#[derive(Clone, Debug)]
pub struct ModelParams {
    pub big_q: FieldElement,
    pub t: [FieldElement; 4],
    pub phi1: FieldElement,
    pub phi2: FieldElement,
}

impl ModelParams {
    pub fn equal(&self, o: &ModelParams) -> Result<bool> {
        let mut ok = self.big_q.equal(&o.big_q)? && self.phi1.equal(&o.phi1)? && self.phi2.equal(&o.phi2)?;
        for i in 0..4 {
            ok = ok && self.t[i].equal(&o.t[i])?;
        }
        Ok(ok)
    }
}

/// Solves for the model parameters given u, s.
pub fn param_map(input: &ParamMapInput, u: &FieldElement, s: &FieldElement) -> Result<ModelParams> {
    if input.q_alpha.iter().any(|a| a.is_zero()) {
        return Err(Error::NoSolution("q^α must be nonzero".into()));
    }
    let t = s * s;
    let v = u / s;
    let v2 = &v * &v;
    let [a1, a2, a3, a4] = &input.q_alpha;
    let t1 = &v * t.pow(-input.n[0])?;
    let phi1 = t.pow(input.n[1])? / &v;
    let t3 = t.pow(input.n[2])? / &v;
    let t2 = &t1 / (&v2 * a4);
    let big_q = a1 * &v2 / (&t1 * &t2);
    let t4 = a2 * &v2 * &t3;
    let phi2 = a3 * &v2 * &phi1;
    Ok(ModelParams { big_q, t: [t1, t2, t3, t4], phi1, phi2 })
}

fn integer_log(value: &FieldElement, t: &FieldElement, what: &str) -> Result<i64> {
    for k in 0..=MAX_EXPONENT {
        for n in [k, -k] {
            if t.pow(n)?.equal(value)? {
                return Ok(n);
            }
        }
    }
    Err(Error::NoSolution(format!("{what} = {value} is not an integer power of t")))
}

/// Recovers (q^α; N) from model parameters.
pub fn param_map_inverse(p: &ModelParams, u: &FieldElement, s: &FieldElement) -> Result<ParamMapInput> {
    let t = s * s;
    let v = u / s;
    let v2i = (&v * &v).inv()?;
    let [t1, t2, t3, t4] = &p.t;
    for (name, x) in [("T1", t1), ("T2", t2), ("T3", t3), ("phi1", &p.phi1)] {
        if x.is_zero() {
            return Err(Error::NoSolution(format!("{name} must be nonzero")));
        }
    }
    let q_alpha = [
        &v2i * t1 * t2 * &p.big_q,
        &v2i * t4 / t3,
        &v2i * &p.phi2 / &p.phi1,
        &v2i * t1 / t2,
    ];
    let n = [
        integer_log(&(&v / t1), &t, "v/T1")?,
        integer_log(&(&v * &p.phi1), &t, "v·phi1")?,
        integer_log(&(&v * t3), &t, "v·T3")?,
    ];
    Ok(ParamMapInput { q_alpha, n })
}
