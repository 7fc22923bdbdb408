//! The non-stationary difference equation
//! Ψ(tΛ, x) = A1 γ̂ A2 γ̂ A3 Ψ(Λ, x/(tqQ)).

use crate::coeffield::{FieldElement, Param, ParamPoint};
use crate::error::{Error, Result};
use crate::mutation::Mutation;
use crate::nekrasov::higgs_psi_on;
use crate::qkit::{bigphi_expand, phi_expand};
use crate::series::{BiSeries, DegreeWindow, MonomialArg, Region, Verdict};

use super::basic::{Primitive, SeriesOperator};

/// A factor φ(c·Λ^l·x^k)^{±1} or Φ(c·Λ^l·x^k)^{±1}.
#[derive(Clone, Debug)]
pub enum Factor {
    Phi { arg: MonomialArg, inverse: bool },
    BigPhi { arg: MonomialArg, inverse: bool },
}

impl Factor {
    pub fn phi(c: FieldElement, dl: i32, dx: i32, inverse: bool) -> Factor {
        Factor::Phi { arg: MonomialArg::new(c, dl, dx), inverse }
    }

    pub fn bigphi(c: FieldElement, dl: i32, dx: i32, inverse: bool) -> Factor {
        Factor::BigPhi { arg: MonomialArg::new(c, dl, dx), inverse }
    }
}

/// Product of factors, expanded on `region`.
pub fn product_of(
    factors: &[Factor],
    region: &Region,
    q: &FieldElement,
    t: &FieldElement,
) -> Result<BiSeries> {
    let mut acc: Option<BiSeries> = None;
    for f in factors {
        let s = match f {
            Factor::Phi { arg, inverse } => phi_expand(arg, region, q, *inverse)?,
            Factor::BigPhi { arg, inverse } => bigphi_expand(arg, region, q, t, *inverse)?,
        };
        acc = Some(match acc {
            None => s,
            Some(a) => a.mul(&s)?,
        });
    }
    let (lend, hend) = region.relative_ends();
    Ok(acc.unwrap_or_else(|| BiSeries::constant(FieldElement::one(), region.depth, lend, hend)))
}

/// The factor lists of A1, A2, A3.
pub fn prefactor_factors(which: u8, p: &ParamPoint, mutation: Mutation) -> Result<Vec<Factor>> {
    let q = p.q()?;
    let t = p.t()?;
    let v = p.v()?;
    let vi = v.inv()?;
    let bq = p.big_q()?.clone();
    let tt = |i: usize| p.get(Param::t(i - 1)).cloned();
    let (t1, t2, t3, t4) = (tt(1)?, tt(2)?, tt(3)?, tt(4)?);
    let t2sq = &t * &t;
    let q2 = &q * &q;
    let f = match which {
        1 => vec![
            Factor::phi(&t1 * &t * &v, 0, 1, true),
            Factor::bigphi(&t3 * &t2sq * &v, 1, -1, false),
            Factor::bigphi(&t3 * &q * &v, 1, -1, true),
            Factor::bigphi(&t4 * &t2sq * &v, 1, -1, false),
            Factor::bigphi(&t4 * &t2sq * &vi, 1, -1, true),
        ],
        2 => {
            let c = if mutation == Mutation::A2 { &t2 * &t3 } else { &q * &t2 * &t3 };
            vec![
                Factor::phi(c, 1, 0, false),
                Factor::phi(&t * &t1 * &t4, 1, 0, false),
                Factor::phi(-(&t1 * &t2), 0, 1, true),
                Factor::phi(-bq.inv()?, 0, 1, true),
                Factor::phi(-(&t3 * &t4 * &bq * &q * &t), 1, -1, true),
                Factor::phi(-&q, 1, -1, true),
            ]
        }
        3 => vec![
            Factor::phi(&t2 / &bq / &q * &v, 0, 1, true),
            Factor::bigphi(&t3 * &bq * &q2 * &v, 1, -1, false),
            Factor::bigphi(&t3 * &bq * &q2 * &vi, 1, -1, true),
            Factor::bigphi(&t4 * &bq * &t2sq * &t * &v, 1, -1, false),
            Factor::bigphi(&t4 * &bq * &q2 * &vi, 1, -1, true),
        ],
        _ => return Err(Error::Usage(format!("prefactor index {which} must be 1, 2 or 3"))),
    };
    Ok(f)
}

/// A1, A2 or A3 expanded on the region that certifies `window`.
pub fn prefactor_a(which: u8, window: &DegreeWindow, p: &ParamPoint) -> Result<BiSeries> {
    prefactor_a_on(which, &Region::for_window(window), p, Mutation::None)
}

pub fn prefactor_a_on(which: u8, region: &Region, p: &ParamPoint, mutation: Mutation) -> Result<BiSeries> {
    product_of(&prefactor_factors(which, p, mutation)?, region, &p.q()?, &p.t()?)
}

/// The right-hand side as an operator pipeline.
pub fn nonstat_operator(p: &ParamPoint, mutation: Mutation) -> Result<SeriesOperator> {
    let q = p.q()?;
    let t = p.t()?;
    let shift = if mutation == Mutation::Shift { &t * &q } else { &t * &q * p.big_q()? };
    let mut op = SeriesOperator::new(&q);
    for (i, which) in [1u8, 2, 3].into_iter().enumerate() {
        let pp = p.clone();
        op = op.multiply_by(move |r| prefactor_a_on(which, r, &pp, mutation));
        if i < 2 {
            op = op.then(Primitive::Gamma(1));
        }
    }
    Ok(op.then(Primitive::Rescale(FieldElement::one(), shift.inv()?)))
}

/// A1 γ̂ A2 γ̂ A3 applied to psi(Λ, x/(tqQ)).
pub fn nonstat_rhs(psi: &BiSeries, p: &ParamPoint, mutation: Mutation) -> Result<BiSeries> {
    nonstat_operator(p, mutation)?.apply(psi)
}

/// Computes Ψ on `window` and compares both sides there.
pub fn verify_theorem20(window: &DegreeWindow, p: &ParamPoint, mutation: Mutation) -> Result<Verdict> {
    let region = Region::for_window(window);
    let psi = higgs_psi_on(region, p)?;
    let lhs = psi.rescale(&p.t()?, &FieldElement::one())?;
    let rhs = nonstat_rhs(&psi, p, mutation)?;
    Verdict::compare(&lhs, &rhs, window)
}
