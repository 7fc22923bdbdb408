//! The closed-form double sums U and V.

use crate::coeffield::FieldElement;
use crate::error::Result;
use crate::mutation::Mutation;
use crate::qkit::qpoch;
use crate::series::{BiSeries, DegreeWindow, Region};

/// Both sums are over x^n (Λ/x)^m, i.e. key (m, n − m), with n ≤ m since
/// (q^{−m})_n vanishes beyond that.
fn double_sum<F>(window: &DegreeWindow, f: F) -> Result<BiSeries>
where
    F: Fn(i64, i64) -> Result<FieldElement>,
{
    let region = Region::for_window(window);
    let mut terms = Vec::new();
    for m in 0..=region.lend {
        for n in 0..=m.min(region.hend) {
            terms.push(((m, n - m), f(n as i64, m as i64)?));
        }
    }
    Ok(BiSeries::from_terms(region, terms))
}

/// U(Λ, x) at Q = `big_q`, with v² = q/t.
pub fn u_series(
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
) -> Result<BiSeries> {
    let v2 = q / t;
    let p = |z: &FieldElement, n: i64| qpoch(z, n, q);
    double_sum(window, |n, m| {
        let qm = q.pow(-m)?;
        let qn = q.pow(-n)?;
        let num = q.pow(n * m + n)?
            * t.pow(-n)?
            * p(&(t * big_q), n)?
            * p(&(q * big_q / t), m)?
            * p(&qm, n)?
            * p(&(&v2 * &qn), m)?;
        if num.is_zero() {
            return Ok(num);
        }
        let den = p(&(q * big_q), m)? * p(&(q * big_q / t), n)? * p(q, n)? * p(q, m)?;
        num.try_div(&den)
    })
}

/// V(Λ, x) at Q = `big_q`. `Mutation::HalvesV` drops the sign of (−Q)^{m−n}.
pub fn v_series(
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
    mutation: Mutation,
) -> Result<BiSeries> {
    let v2 = q / t;
    let t2 = t * t;
    let sign_q = if mutation == Mutation::HalvesV { big_q.clone() } else { -big_q };
    let p = |z: &FieldElement, n: i64| qpoch(z, n, q);
    double_sum(window, |n, m| {
        let qm = q.pow(-m)?;
        let qn = q.pow(-n)?;
        let num = q.pow(m)?
            * sign_q.pow(m - n)?
            * p(&(t * big_q), n)?
            * p(t, m)?
            * p(&qm, n)?
            * p(&(&v2 * &qn), m)?
            * p(&(q / &t2), n)?
            * p(&t2, m)?;
        if num.is_zero() {
            return Ok(num);
        }
        let den = p(&(q * big_q), m)?
            * p(t, n)?
            * p(&(&v2 * &qm), n)?
            * p(&(&t2 * &qn), m)?
            * p(q, n)?
            * p(q, m)?;
        num.try_div(&den)
    })
}
