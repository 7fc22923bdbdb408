//! The four-partition instanton sum.
//!
//! Every argument of a Nekrasov factor is stored as c·ε^e. With e = 0
//! everywhere the arithmetic below is exact; for the Toda limit the T's
//! carry e = 1 and each term is reduced to its exact leading order in ε.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::factor::{FactorMemo, QtPowers};
use super::partition::{partition_pairs_up_to, Partition};
use crate::coeffield::{FieldElement, Param, ParamPoint};
use crate::error::{Error, Result};
use crate::series::{sum_elements, BiSeries, DegreeWindow, Region};

/// c·ε^e.
#[derive(Clone, Debug)]
struct Scaled {
    c: FieldElement,
    e: i32,
}

impl Scaled {
    fn plain(c: FieldElement) -> Scaled {
        Scaled { c, e: 0 }
    }

    fn mul(&self, o: &Scaled) -> Scaled {
        Scaled { c: &self.c * &o.c, e: self.e + o.e }
    }

    fn div(&self, o: &Scaled) -> Result<Scaled> {
        Ok(Scaled { c: self.c.try_div(&o.c)?, e: self.e - o.e })
    }
}

/// Leading term val/coeff of a quantity; `None` means exactly zero.
type Lead = Option<Scaled>;

fn lead_mul(a: &Lead, b: &Lead) -> Lead {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.mul(y)),
        _ => None,
    }
}

struct Inputs {
    pw: QtPowers,
    memo: FactorMemo,
    v: Scaled,
    w: Scaled,
    p1: Scaled,
    p2: Scaled,
    n: [Scaled; 2],
    m: [Scaled; 2],
    fp: [Scaled; 2],
    fm: [Scaled; 2],
}

impl Inputs {
    /// `eps[i]` is the ε-exponent carried by T_{i+1}.
    fn new(p: &ParamPoint, eps: [i32; 4]) -> Result<Inputs> {
        let tt = |i: usize| Scaled { c: p.get(Param::t(i)).cloned().unwrap_or_else(|_| FieldElement::one()), e: eps[i] };
        for i in 0..4 {
            p.get(Param::t(i))?;
        }
        let v = Scaled::plain(p.v()?);
        let v2 = v.mul(&v);
        let phi1 = Scaled::plain(p.get(Param::Phi1)?.clone());
        let phi2 = Scaled::plain(p.get(Param::Phi2)?.clone());
        let bq = Scaled::plain(p.big_q()?.clone());
        let one = Scaled::plain(FieldElement::one());
        let m2 = phi1.mul(&phi2).mul(&bq);
        Ok(Inputs {
            pw: QtPowers::new(&p.q()?, &p.t()?)?,
            memo: FactorMemo::default(),
            w: v.mul(&phi1),
            p1: tt(1).mul(&phi2).div(&v2)?,
            p2: tt(3).div(&phi1)?.div(&v2)?,
            n: [one.clone(), bq.clone()],
            m: [one.clone(), m2.clone()],
            fp: [tt(0).mul(&bq), one.div(&tt(1))?],
            fm: [one.div(&tt(2))?, tt(3).mul(&m2)],
            v,
        })
    }

    /// Leading term of N_{λ,η}(z).
    fn factor(&self, lam: &Partition, eta: &Partition, z: &Scaled) -> Result<Lead> {
        let boxes = self.memo.get(lam, eta);
        let mut c = FieldElement::one();
        let mut val = 0;
        for &(a, b) in boxes.iter() {
            let zq = || -> Result<FieldElement> { Ok(&z.c * self.pw.get(a, b)?) };
            match z.e.cmp(&0) {
                std::cmp::Ordering::Greater => {}
                std::cmp::Ordering::Equal => {
                    let f = FieldElement::one() - zq()?;
                    if f.is_zero() {
                        return Ok(None);
                    }
                    c = c * f;
                }
                std::cmp::Ordering::Less => {
                    c = c * -zq()?;
                    val += z.e;
                }
            }
        }
        Ok(Some(Scaled { c, e: val }))
    }

    fn denominator(&self, lam: &Partition, eta: &Partition, z: &Scaled) -> Result<Scaled> {
        self.factor(lam, eta, z)?.ok_or_else(|| {
            Error::DegenerateParameters(format!("N_{{{lam},{eta}}} vanishes in a denominator"))
        })
    }

    /// Factors that depend on (ν1, ν2) only, including p1^{|ν|}.
    fn nu_part(&self, nu: &[Partition; 2]) -> Result<Lead> {
        let mut acc = Some(Scaled::plain(FieldElement::one()));
        for a in 0..2 {
            for b in 0..2 {
                let z = self.v.mul(&self.fp[a]).div(&self.n[b])?;
                acc = lead_mul(&acc, &self.factor(&Partition::empty(), &nu[b], &z)?);
                if acc.is_none() {
                    return Ok(None);
                }
            }
        }
        let mut den = Scaled::plain(FieldElement::one());
        for a in 0..2 {
            for b in 0..2 {
                den = den.mul(&self.denominator(&nu[a], &nu[b], &self.n[a].div(&self.n[b])?)?);
            }
        }
        let size = (nu[0].size() + nu[1].size()) as i64;
        let pk = Scaled { c: self.p1.c.pow(size)?, e: self.p1.e * size as i32 };
        acc.map(|x| x.div(&den).map(|y| y.mul(&pk))).transpose()
    }

    /// Factors that depend on (μ1, μ2) only, including p2^{|μ|}.
    fn mu_part(&self, mu: &[Partition; 2]) -> Result<Lead> {
        let mut acc = Some(Scaled::plain(FieldElement::one()));
        for a in 0..2 {
            for b in 0..2 {
                let z = self.v.mul(&self.m[b]).div(&self.fm[a])?;
                acc = lead_mul(&acc, &self.factor(&mu[b], &Partition::empty(), &z)?);
                if acc.is_none() {
                    return Ok(None);
                }
            }
        }
        let mut den = Scaled::plain(FieldElement::one());
        for a in 0..2 {
            for b in 0..2 {
                den = den.mul(&self.denominator(&mu[a], &mu[b], &self.m[a].div(&self.m[b])?)?);
            }
        }
        let size = (mu[0].size() + mu[1].size()) as i64;
        let pk = Scaled { c: self.p2.c.pow(size)?, e: self.p2.e * size as i32 };
        acc.map(|x| x.div(&den).map(|y| y.mul(&pk))).transpose()
    }

    /// The bifundamental factors ∏ N_{ν_a,μ_b}(w n_a/m_b).
    fn mixed(&self, nu: &[Partition; 2], mu: &[Partition; 2]) -> Result<Lead> {
        let mut acc = Some(Scaled::plain(FieldElement::one()));
        for a in 0..2 {
            for b in 0..2 {
                let z = self.w.mul(&self.n[a]).div(&self.m[b])?;
                acc = lead_mul(&acc, &self.factor(&nu[a], &mu[b], &z)?);
                if acc.is_none() {
                    return Ok(None);
                }
            }
        }
        Ok(acc)
    }
}

/// One nonzero term of the sum.
#[derive(Clone, Debug)]
pub struct ZTerm {
    pub nu: [Partition; 2],
    pub mu: [Partition; 2],
    pub value: FieldElement,
    /// ε-valuation (always 0 outside the Toda limit).
    pub valuation: i32,
}

struct Prepared {
    nus: Vec<([Partition; 2], Scaled)>,
    mus: Vec<([Partition; 2], Scaled)>,
}

fn prepare(inp: &Inputs, nmax: u32, mmax: u32) -> Result<Prepared> {
    let nu_pairs = partition_pairs_up_to(nmax);
    let mu_pairs = partition_pairs_up_to(mmax);
    let nu_vals: Vec<Result<Lead>> = nu_pairs
        .par_iter()
        .map(|(a, b)| inp.nu_part(&[a.clone(), b.clone()]))
        .collect();
    let mu_vals: Vec<Result<Lead>> = mu_pairs
        .par_iter()
        .map(|(a, b)| inp.mu_part(&[a.clone(), b.clone()]))
        .collect();
    let mut nus = Vec::new();
    for ((a, b), v) in nu_pairs.into_iter().zip(nu_vals) {
        if let Some(s) = v? {
            nus.push(([a, b], s));
        }
    }
    let mut mus = Vec::new();
    for ((a, b), v) in mu_pairs.into_iter().zip(mu_vals) {
        if let Some(s) = v? {
            mus.push(([a, b], s));
        }
    }
    Ok(Prepared { nus, mus })
}

/// Sums all terms; terms of positive valuation are dropped, negative
/// valuation is an error.
fn z_sum(inp: &Inputs, region: Region) -> Result<BiSeries> {
    let nmax = region.hend.max(0) as u32;
    let mmax = region.lend.max(0) as u32;
    let prep = prepare(inp, nmax, mmax)?;
    // key (l, x) = (|μ|, |ν| − |μ|)
    let mut groups: BTreeMap<(i32, i32), Vec<(usize, usize)>> = BTreeMap::new();
    for (i, (nu, _)) in prep.nus.iter().enumerate() {
        let n = (nu[0].size() + nu[1].size()) as i32;
        for (j, (mu, _)) in prep.mus.iter().enumerate() {
            let m = (mu[0].size() + mu[1].size()) as i32;
            groups.entry((m, n - m)).or_default().push((i, j));
        }
    }
    let groups: Vec<((i32, i32), Vec<(usize, usize)>)> = groups.into_iter().collect();
    let sums: Vec<Result<FieldElement>> = groups
        .par_iter()
        .map(|(_, tuples)| {
            let mut parts = Vec::new();
            for &(i, j) in tuples {
                let (nu, nv) = &prep.nus[i];
                let (mu, mv) = &prep.mus[j];
                let Some(mixed) = inp.mixed(nu, mu)? else { continue };
                let term = nv.mul(mv).mul(&mixed);
                if term.e < 0 {
                    return Err(Error::LimitFailure(format!(
                        "term ({},{},{},{}) has a pole of order {} at ε = 0",
                        nu[0], nu[1], mu[0], mu[1], -term.e
                    )));
                }
                if term.e == 0 {
                    parts.push(term.c);
                }
            }
            Ok(sum_elements(parts))
        })
        .collect();
    let mut terms = BTreeMap::new();
    for ((k, _), s) in groups.into_iter().zip(sums) {
        terms.insert(k, s?);
    }
    Ok(BiSeries::new(region, terms))
}

fn z_region(window: &DegreeWindow) -> Result<Region> {
    if window.lmax < 0 || window.xmax < 0 {
        return Err(Error::Usage(format!("invalid window {window}")));
    }
    Ok(Region::for_window(window))
}

/// Z on `window`. The point must set Q, T1..T4, φ1, φ2, u, s.
pub fn z_expand(window: &DegreeWindow, params: &ParamPoint) -> Result<BiSeries> {
    z_expand_on(z_region(window)?, params)
}

/// Z on an explicit depth-1 region anchored at the origin.
pub fn z_expand_on(region: Region, params: &ParamPoint) -> Result<BiSeries> {
    let inp = Inputs::new(params, [0; 4])?;
    z_sum(&inp, region)
}

/// Ψ: Z with φ1 = t/v, φ2 = v.
pub fn higgs_psi(window: &DegreeWindow, params: &ParamPoint) -> Result<BiSeries> {
    higgs_psi_on(z_region(window)?, params)
}

pub fn higgs_psi_on(region: Region, params: &ParamPoint) -> Result<BiSeries> {
    if params.has(Param::Phi1) || params.has(Param::Phi2) {
        return Err(Error::Usage("Higgsing sets phi1 and phi2; leave them unset".into()));
    }
    z_expand_on(region, &params.higgsed()?)
}

/// lim_{ε→0} Ψ with T_i = ε·c_i. `params` supplies u, s, Q.
pub fn toda_limit(
    window: &DegreeWindow,
    params: &ParamPoint,
    c: &[FieldElement; 4],
) -> Result<BiSeries> {
    if c.iter().any(|x| x.is_zero()) {
        return Err(Error::Usage("the ratios c_i must be nonzero".into()));
    }
    let mut p = params.clone();
    for (i, ci) in c.iter().enumerate() {
        p = p.with(Param::t(i), ci.clone());
    }
    let p = p.higgsed()?;
    let inp = Inputs::new(&p, [1; 4])?;
    z_sum(&inp, z_region(window)?)
}

/// Every nonzero term with its tuple, in lexicographic tuple order
/// (intended for small windows).
pub fn z_nonzero_terms(window: &DegreeWindow, params: &ParamPoint) -> Result<Vec<ZTerm>> {
    let region = z_region(window)?;
    let inp = Inputs::new(params, [0; 4])?;
    let prep = prepare(&inp, region.hend as u32, region.lend as u32)?;
    let mut out = Vec::new();
    for (nu, nv) in &prep.nus {
        for (mu, mv) in &prep.mus {
            if let Some(mixed) = inp.mixed(nu, mu)? {
                let t = nv.mul(mv).mul(&mixed);
                if !t.c.is_zero() {
                    out.push(ZTerm { nu: nu.clone(), mu: mu.clone(), value: t.c, valuation: t.e });
                }
            }
        }
    }
    Ok(out)
}
