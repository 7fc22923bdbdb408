//! The identity chain relating U, V and the one-row polynomials.

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};
use crate::mutation::Mutation;
use crate::operators::{gamma_apply_shifted, product_of, Factor, Primitive, SeriesOperator};
use crate::qkit::{arg_order, phi_expand, qpoch, series_in_arg};
use crate::series::{BiSeries, DegreeWindow, MonomialArg, Region, Verdict, UNBOUNDED};

use super::closed::{u_series, v_series};
use super::onerow::macdonald_onerow;

/// An exact Laurent polynomial c·Λ^l·x^x summed over `terms`.
fn poly(terms: &[((i32, i32), FieldElement)]) -> BiSeries {
    BiSeries::from_terms(Region::anchored(1, UNBOUNDED, UNBOUNDED), terms.iter().cloned())
}

/// 1/(1 − c·Λ^dl·x^dx) on `region`.
fn geometric(c: FieldElement, dl: i32, dx: i32, region: &Region) -> Result<BiSeries> {
    let arg = MonomialArg::new(c, dl, dx);
    let k = arg_order(&arg, region)?;
    series_in_arg(&vec![FieldElement::one(); k + 1], &arg, region)
}

fn product(parts: &[BiSeries]) -> Result<BiSeries> {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = acc.mul(p)?;
    }
    Ok(acc)
}

/// c1·U(qΛ, qx) + c2·U(Λ, x/q) + c3·U(Λ/q, x) against (1 + t + t/Q)·U,
/// with y = Λ/x:
///   c1 = (1 − tx)(1 − Λ)/((1 − x)(1 − Λ/t)),
///   c2 = (qy − t²)(x − t)/(t(y − t)(x − 1)),
///   c3 = t(y − q)(Λ − t²)/(qQ(y − t)(Λ − t)).
/// `RecurrencePole` puts an extra 1/(1 − x) on c2; `Eigen` uses 1 + t + tQ.
pub fn verify_macdonald_recurrence(
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
    mutation: Mutation,
) -> Result<Verdict> {
    let one = FieldElement::one();
    let u = u_series(window, q, t, big_q)?;
    let reg = Region::for_window(window);
    let ti = t.inv()?;
    let t2 = t * t;
    let c1 = product(&[
        poly(&[((0, 0), one.clone()), ((0, 1), -t)]),
        poly(&[((0, 0), one.clone()), ((1, 0), -&one)]),
        geometric(one.clone(), 0, 1, &reg)?,
        geometric(ti.clone(), 1, 0, &reg)?,
    ])?;
    let mut c2 = product(&[
        poly(&[((1, -1), q.clone()), ((0, 0), -&t2)]),
        poly(&[((0, 1), one.clone()), ((0, 0), -t)]),
        geometric(ti.clone(), 1, -1, &reg)?,
        geometric(one.clone(), 0, 1, &reg)?,
    ])?
    .scale(&t2.inv()?);
    if mutation == Mutation::RecurrencePole {
        c2 = c2.mul(&geometric(one.clone(), 0, 1, &reg)?)?;
    }
    let c3 = product(&[
        poly(&[((1, -1), one.clone()), ((0, 0), -q)]),
        poly(&[((1, 0), one.clone()), ((0, 0), -&t2)]),
        geometric(ti.clone(), 1, -1, &reg)?,
        geometric(ti, 1, 0, &reg)?,
    ])?
    .scale(&(q * big_q * t).inv()?);
    let lhs = c1
        .mul(&u.rescale(q, q)?)?
        .add(&c2.mul(&u.rescale(&one, &q.inv()?)?)?)
        .add(&c3.mul(&u.rescale(&q.inv()?, &one)?)?);
    let eigen = if mutation == Mutation::Eigen { &one + t + t * big_q } else { &one + t + t / big_q };
    Verdict::compare(&lhs, &u.scale(&eigen), window)
}

/// U at Q = q^{−r}/t against φ(qΛ/(t²x))/φ(Λ/x)·P_[r](1, Λ/t, Λ/(tx)).
/// `P2` alters the mixed coefficient of P_[2].
pub fn verify_macdonald_solution(
    r: u32,
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    mutation: Mutation,
) -> Result<Verdict> {
    let big_q = q.pow(-(r as i64))? / t;
    let lhs = u_series(window, q, t, &big_q)?;
    let mut p = macdonald_onerow(r, q, t)?;
    if mutation == Mutation::P2 && r == 2 {
        let c = p.get([1, 1, 0]) / (FieldElement::one() + q);
        for e in [[1, 1, 0], [1, 0, 1], [0, 1, 1]] {
            p.set(e, c.clone());
        }
    }
    let mut terms = Vec::new();
    for (e, c) in p.coeffs() {
        let (b, cc) = (e[1] as i32, e[2] as i32);
        terms.push(((b + cc, -cc), c * t.pow(-((b + cc) as i64))?));
    }
    let reg = Region::for_window(window);
    let rhs = product(&[
        phi_expand(&MonomialArg::new(q / &(t * t), 1, -1), &reg, q, false)?,
        phi_expand(&MonomialArg::new(FieldElement::one(), 1, -1), &reg, q, true)?,
        poly(&terms),
    ])?;
    Ok(Verdict::compare(&lhs, &rhs, window)?.with_note(format!("r = {r}")))
}

/// The two factorizations of V through U at the special point:
///   V = φ(−x/t)φ(−qΛ/x)/φ(qΛ/t²) · γ̂⁻¹ φ(qx/t)φ(tΛ/x) U(tΛ, x),
///   V = φ(tΛ)/(φ(−x/Q)φ(−qQΛ/x)) · γ̂ [φ(x/(qQ))φ(q²QΛ/(tx))]⁻¹ U(Λ, x/(tqQ)).
/// `HalvesV` perturbs V.
pub fn verify_halves(
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
    mutation: Mutation,
) -> Result<(Verdict, Verdict)> {
    let u = u_series(window, q, t, big_q)?;
    let v = v_series(window, q, t, big_q, mutation)?;
    let one = FieldElement::one();
    let multiply = |factors: Vec<Factor>| {
        let (q, t) = (q.clone(), t.clone());
        move |r: &Region| product_of(&factors, r, &q, &t)
    };
    let t2 = t * t;
    let first = SeriesOperator::new(q)
        .multiply_by(multiply(vec![
            Factor::phi(-t.inv()?, 0, 1, false),
            Factor::phi(-q, 1, -1, false),
            Factor::phi(q / &t2, 1, 0, true),
        ]))
        .then(Primitive::Gamma(-1))
        .multiply_by(multiply(vec![Factor::phi(q / t, 0, 1, false), Factor::phi(t.clone(), 1, -1, false)]))
        .then(Primitive::Rescale(t.clone(), one.clone()));
    let qq = q * big_q;
    let second = SeriesOperator::new(q)
        .multiply_by(multiply(vec![
            Factor::phi(t.clone(), 1, 0, false),
            Factor::phi(-big_q.inv()?, 0, 1, true),
            Factor::phi(-&qq, 1, -1, true),
        ]))
        .then(Primitive::Gamma(1))
        .multiply_by(multiply(vec![
            Factor::phi(qq.inv()?, 0, 1, true),
            Factor::phi(q * &qq / t, 1, -1, true),
        ]))
        .then(Primitive::Rescale(one, (t * &qq).inv()?));
    let v1 = Verdict::compare(&v, &first.apply(&u)?, window)?;
    let v2 = Verdict::compare(&v, &second.apply(&u)?, window)?;
    Ok((v1, v2))
}

/// Σ_k q^k (t)_k(t/x)_k(q/(tz))_k/((qt/(zΛ))_k(qΛ/x)_k(q)_k) against
///   φ(qΛ/(tx))φ(zΛ/t)φ(tzΛ/x)φ(qΛ/t) / (φ(qΛ/x)φ(zΛ)φ(zΛ/x)φ(qΛ/t²)),
/// with the k-th summand written as a Λ-series of order k. Also checks the
/// Λ¹ coefficient (1 − t)(t − x)(tz − q)/(xt²(1 − q)). `QseriesWeight`
/// uses q^{k+1}.
pub fn verify_qseries_identity(
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    z: &FieldElement,
    mutation: Mutation,
) -> Result<Verdict> {
    let one = FieldElement::one();
    let reg = Region::for_window(window);
    let mut lhs = BiSeries::zero(reg);
    for k in 0..=window.lmax as i64 {
        let weight = if mutation == Mutation::QseriesWeight { q.pow(k + 1)? } else { q.pow(k)? };
        let c = weight * qpoch(t, k, q)?.try_div(&qpoch(q, k, q)?)?;
        let mut term = BiSeries::from_terms(reg, [((0, 0), c)]);
        for i in 0..k {
            let qi1 = q.pow(i + 1)?;
            let s = -(z - &qi1 / t).try_div(&(&qi1 * t))?;
            term = product(&[
                term,
                poly(&[((1, 0), s.clone()), ((1, -1), -(q.pow(i)? * t * &s))]),
                geometric(z / &(&qi1 * t), 1, 0, &reg)?,
                geometric(qi1, 1, -1, &reg)?,
            ])?;
        }
        lhs = lhs.add(&term);
    }
    let t2 = t * t;
    let rhs = product_of(
        &[
            Factor::phi(q / t, 1, -1, false),
            Factor::phi(z / t, 1, 0, false),
            Factor::phi(t * z, 1, -1, false),
            Factor::phi(q / t, 1, 0, false),
            Factor::phi(q.clone(), 1, -1, true),
            Factor::phi(z.clone(), 1, 0, true),
            Factor::phi(z.clone(), 1, -1, true),
            Factor::phi(q / &t2, 1, 0, true),
        ],
        &reg,
        q,
        t,
    )?;
    let mut v = Verdict::compare(&lhs, &rhs, window)?;
    if window.lmax >= 1 && window.xmin <= -1 && window.xmax >= 0 {
        // (1 − t)(t − x)(tz − q)/(xt²(1 − q)) = a·t/x − a with
        // a = (1 − t)(tz − q)/(t²(1 − q))
        let a = ((&one - t) * (t * z - q)).try_div(&(&t2 * (&one - q)))?;
        let ok = lhs.get(1, 0)?.equal(&-&a)? && lhs.get(1, -1)?.equal(&(&a * t))?;
        v = Verdict::all(*window, vec![v, Verdict::plain(ok, *window, 2)])
            .with_note(format!("Λ¹ coefficient check {}", if ok { "pass" } else { "fail" }));
    }
    Ok(v)
}

/// Σ_{r ≤ K} z^r (t)_r/(q)_r [φ(qx/t)φ(tΛ/x)U(tΛ, x)] at Q = q^{−r}/t against
///   φ(qx/t)φ(qΛ/(tx)) Σ_{a+b+c ≤ K} ∏ (t)_•/(q)_• · z^{a+b+c} Λ^{b+c} x^{−c},
/// both polynomials of degree K in z. `GenfuncPoch` uses (qt)_r.
pub fn verify_genfunc(
    z_order: u32,
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    z: &FieldElement,
    mutation: Mutation,
) -> Result<Verdict> {
    let reg = Region::for_window(window);
    let one = FieldElement::one();
    let outer = |r: &Region| -> Result<BiSeries> {
        product_of(&[Factor::phi(q / t, 0, 1, false), Factor::phi(t.clone(), 1, -1, false)], r, q, t)
    };
    let mut lhs = BiSeries::zero(reg);
    for r in 0..=z_order as i64 {
        let big_q = q.pow(-r)? / t;
        let u = u_series(window, q, t, &big_q)?.rescale(t, &one)?;
        let base = if mutation == Mutation::GenfuncPoch { q * t } else { t.clone() };
        let c = z.pow(r)? * qpoch(&base, r, q)?.try_div(&qpoch(q, r, q)?)?;
        lhs = lhs.add(&outer(u.region())?.mul(&u)?.scale(&c));
    }
    let w: Vec<FieldElement> = (0..=z_order as i64)
        .map(|n| qpoch(t, n, q)?.try_div(&qpoch(q, n, q)?))
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for a in 0..=z_order {
        for b in 0..=z_order - a {
            for c in 0..=z_order - a - b {
                let coef = &w[a as usize] * &w[b as usize] * &w[c as usize] * z.pow((a + b + c) as i64)?;
                terms.push((((b + c) as i32, -(c as i32)), coef));
            }
        }
    }
    let mut sum = std::collections::BTreeMap::new();
    for (k, c) in terms {
        let e = sum.entry(k).or_insert_with(FieldElement::zero);
        *e = &*e + &c;
    }
    let rhs = product_of(
        &[Factor::phi(q / t, 0, 1, false), Factor::phi(q / t, 1, -1, false)],
        &reg,
        q,
        t,
    )?
    .mul(&poly(&sum.into_iter().collect::<Vec<_>>()))?;
    Verdict::compare(&lhs, &rhs, window)
}

/// q-Saalschütz with d = q^{1−n}ab/c:
///   Σ_{k ≤ n} q^k (q^{−n})_k(a)_k(b)_k/((c)_k(d)_k(q)_k)
///     = (c/a)_n(c/b)_n/((c)_n(c/(ab))_n).
/// `Ca` replaces (c/a)_n by (ca)_n.
pub fn verify_qsaalschutz(
    n: u32,
    q: &FieldElement,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    mutation: Mutation,
) -> Result<Verdict> {
    let n = n as i64;
    let d = q.pow(1 - n)? * a * b / c;
    let qn = q.pow(-n)?;
    let mut lhs = FieldElement::zero();
    for k in 0..=n {
        let num = q.pow(k)? * qpoch(&qn, k, q)? * qpoch(a, k, q)? * qpoch(b, k, q)?;
        let den = qpoch(c, k, q)? * qpoch(&d, k, q)? * qpoch(q, k, q)?;
        lhs = lhs + num.try_div(&den)?;
    }
    let ca = if mutation == Mutation::Ca { c * a } else { c / a };
    let rhs = (qpoch(&ca, n, q)? * qpoch(&(c / b), n, q)?)
        .try_div(&(qpoch(c, n, q)? * qpoch(&(c / &(a * b)), n, q)?))?;
    let w = DegreeWindow::new(0, 0, 0);
    let pass = lhs.equal(&rhs)?;
    let mut v = Verdict::plain(pass, w, 1).with_note(format!("n = {n}"));
    if !pass {
        v = v.with_note(format!("lhs {lhs} rhs {rhs}"));
    }
    Ok(v)
}

/// x^{−k} γ̂ x^k φ(−x/t)⁻¹φ(−qΛ/x)⁻¹ against
/// q^{k(k+1)/2} φ(qΛ/t)⁻¹ φ(q^{1+k}x/t) φ(q^{1−k}Λ/x). `GammaExp` uses q^k.
pub fn verify_formula_gamma(
    ks: &[i32],
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    mutation: Mutation,
) -> Result<Verdict> {
    let reg = Region::for_window(window);
    let f = product_of(&[Factor::phi(-t.inv()?, 0, 1, true), Factor::phi(-q, 1, -1, true)], &reg, q, t)?;
    let mut parts = Vec::new();
    for &k in ks {
        let k64 = k as i64;
        let lhs = gamma_apply_shifted(&f, 1, k, q)?;
        let e = if mutation == Mutation::GammaExp { k64 } else { 1 + k64 };
        let rhs = product_of(
            &[
                Factor::phi(q / t, 1, 0, true),
                Factor::phi(q.pow(e)? / t, 0, 1, false),
                Factor::phi(q.pow(1 - k64)?, 1, -1, false),
            ],
            &reg,
            q,
            t,
        )?
        .scale(&q.pow(k64 * (k64 + 1) / 2)?);
        parts.push(Verdict::compare(&lhs, &rhs, window)?.with_note(format!("k = {k}")));
    }
    if parts.is_empty() {
        return Err(Error::Usage("no k values given".into()));
    }
    Ok(Verdict::all(*window, parts))
}
