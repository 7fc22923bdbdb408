//! The Toda-limit operators Ĥ and Ĥ_Toda, their commutator and the exact
//! solver for Ψ(tΛ, x) = ĤΨ(Λ, x).

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};
use crate::mutation::Mutation;
use crate::qkit::phi_expand;
use crate::series::{BiSeries, DegreeWindow, MonomialArg, PowerCache, Region, Verdict};

use super::basic::gamma_apply;

/// 1/(φ(−x/Q)φ(−qΛ/x)) on the anchored version of `region`.
pub fn toda_kernel(region: &Region, q: &FieldElement, big_q: &FieldElement) -> Result<BiSeries> {
    let a = MonomialArg::new(-big_q.inv()?, 0, 1);
    let b = MonomialArg::new(-q, 1, -1);
    phi_expand(&a, region, q, true)?.mul(&phi_expand(&b, region, q, true)?)
}

/// Ĥf = γ̂ K γ̂ f(Λ, x/(tqQ)).
pub fn toda_h_apply(
    f: &BiSeries,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
) -> Result<BiSeries> {
    let r = f.rescale(&FieldElement::one(), &(t * q * big_q).inv()?)?;
    let r = gamma_apply(&r, 1, q)?;
    let (lend, hend) = r.region().relative_ends();
    let k = toda_kernel(&Region::anchored(r.region().depth, lend, hend), q, big_q)?;
    gamma_apply(&k.mul(&r)?, 1, q)
}

/// Ĥ_Toda f = f(Λ, qx) + tQ f(Λ, x/q) + tx f + (Λ/x) f.
pub fn toda_hamiltonian_apply(
    f: &BiSeries,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
    mutation: Mutation,
) -> Result<BiSeries> {
    let one = FieldElement::one();
    let tq = if mutation == Mutation::Tq2 { t * t * big_q } else { t * big_q };
    let a = f.rescale(&one, q)?;
    let b = f.rescale(&one, &q.inv()?)?.scale(&tq);
    let c = f.shift(0, 1).scale(t);
    let d = f.shift(1, -1);
    Ok(a.add(&b).add(&c).add(&d))
}

/// [Ĥ, Ĥ_Toda] applied to each monomial Λ^a x^b with 0 ≤ a ≤ lmax and
/// xmin ≤ b ≤ xmax; every residual coefficient determined inside `window`
/// must vanish.
pub fn commutator_check(
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
    mutation: Mutation,
) -> Result<Verdict> {
    let monomials: Vec<(i32, i32)> =
        (0..=window.lmax).flat_map(|a| (window.xmin..=window.xmax).map(move |b| (a, b))).collect();
    let parts = monomials
        .par_iter()
        .map(|&(a, b)| {
            let region = Region {
                depth: 1,
                lmin: a,
                hmin: a + b,
                lend: window.lmax,
                hend: window.xmax + window.lmax,
            };
            let f = BiSeries::new(region, BTreeMap::from([((a, b), FieldElement::one())]));
            let h = |g: &BiSeries| toda_h_apply(g, q, t, big_q);
            let ht = |g: &BiSeries| toda_hamiltonian_apply(g, q, t, big_q, mutation);
            let lhs = h(&ht(&f)?)?;
            let rhs = ht(&h(&f)?)?;
            let res = lhs.sub(&rhs);
            let mut v = Verdict::plain(res.is_empty(), *window, lhs.len().max(rhs.len()));
            if let Some(((l, x), c)) = res.terms().iter().next() {
                v = v.with_note(format!("monomial Λ^{a} x^{b}: residual {c} at ({l}, {x})"));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::all(*window, parts))
}

/// The series with constant term 1 solving Ψ(tΛ, x) = ĤΨ(Λ, x) on `window`.
pub fn solve_toda(
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
) -> Result<BiSeries> {
    if window.lmax < 0 || window.xmax < 0 {
        return Err(Error::Usage(format!("invalid window {window}")));
    }
    let region = Region::for_window(window);
    let kernel = toda_kernel(&region, q, big_q)?;
    let qp = PowerCache::new(q)?;
    let tp = PowerCache::new(t)?;
    let sp = PowerCache::new(&(t * q * big_q))?;
    let tri = |x: i32| -> i64 { x as i64 * (x as i64 + 1) / 2 };
    // c[l][h] with h = x + l
    let (lend, hend) = (region.lend, region.hend);
    let mut c: Vec<Vec<FieldElement>> = vec![vec![FieldElement::zero(); hend as usize + 1]; lend as usize + 1];
    c[0][0] = FieldElement::one();
    for l in 0..=lend {
        for h in 0..=hend {
            if (l, h) == (0, 0) {
                continue;
            }
            let x = h - l;
            let mut s = FieldElement::zero();
            for (&(kl, kx), kv) in kernel.terms() {
                let kh = kx + kl;
                let (l1, h1) = (l - kl, h - kh);
                if l1 < 0 || h1 < 0 || (l1, h1) == (l, h) {
                    continue;
                }
                let prev = &c[l1 as usize][h1 as usize];
                if prev.is_zero() {
                    continue;
                }
                let x1 = h1 - l1;
                s = s + kv * qp.get(tri(x1))? * sp.get(-(x1 as i64))? * prev;
            }
            if s.is_zero() {
                continue;
            }
            let pivot = tp.get(l as i64)? - qp.get(2 * tri(x))? * sp.get(-(x as i64))?;
            if pivot.is_zero() {
                return Err(Error::DegenerateParameters(format!(
                    "resonance at (Λ^{l}, x^{x}): t^{l} = q^{{x(x+1)}}(tqQ)^{{-x}}"
                )));
            }
            c[l as usize][h as usize] = s * qp.get(tri(x))? / pivot;
        }
    }
    let mut terms = Vec::new();
    for (l, row) in c.into_iter().enumerate() {
        for (h, v) in row.into_iter().enumerate() {
            terms.push(((l as i32, h as i32 - l as i32), v));
        }
    }
    Ok(BiSeries::from_terms(region, terms))
}
