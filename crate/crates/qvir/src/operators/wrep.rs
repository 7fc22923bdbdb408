//! Partial products of the cut-and-join representation of the Toda-limit
//! solution, and their distance to the exact solution.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};
use crate::qkit::phi_expand;
use crate::series::{BiSeries, DegreeWindow, MonomialArg, Region};

use super::basic::gamma_apply;
use super::toda::solve_toda;

/// K_m = 1/(φ(−q^{−m}t^{−m}x/Q^{m+1}) φ(−q^{m+1}t^{−1}Q^m Λ/x)).
pub fn wrep_kernel(
    m: i64,
    region: &Region,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
) -> Result<BiSeries> {
    let ca = -(q.pow(-m)? * t.pow(-m)? / big_q.pow(m + 1)?);
    let cb = -(q.pow(m + 1)? / t * big_q.pow(m)?);
    phi_expand(&MonomialArg::new(ca, 0, 1), region, q, true)?
        .mul(&phi_expand(&MonomialArg::new(cb, 1, -1), region, q, true)?)
}

/// O_0 O_1 ⋯ O_M · 1 with O_m = γ̂ K_m γ̂.
pub fn wrep_partial(
    max_m: u32,
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
) -> Result<BiSeries> {
    let region = Region::for_window(window);
    let mut f = BiSeries::one_on(region);
    for m in (0..=max_m as i64).rev() {
        let k = wrep_kernel(m, &region, q, t, big_q)?;
        f = gamma_apply(&k.mul(&gamma_apply(&f, 1, q)?)?, 1, q)?;
    }
    Ok(f)
}

/// Error table of the partial products against the exact solution.
#[derive(Clone, Debug)]
pub struct WrepReport {
    pub window: DegreeWindow,
    pub max_m: u32,
    /// Per coefficient (l, x): |partial_M − exact| for M = 0..=max_m.
    pub errors: BTreeMap<(i32, i32), Vec<BigRational>>,
    /// Every nonzero error strictly decreases with M.
    pub monotone: bool,
    /// Every final error is at most a tenth of the initial one.
    pub factor_ten: bool,
    pub warning: Option<String>,
}

impl WrepReport {
    pub fn pass(&self) -> bool {
        self.monotone && self.factor_ten
    }
}

fn abs_rational(a: &FieldElement) -> Result<BigRational> {
    a.as_rational()
        .map(|r| r.abs())
        .ok_or_else(|| Error::Usage("the cut-and-join report needs numeric parameters".into()))
}

/// Region warning for the parameters, if any of t > 1, qtQ > 1, 1/(qQ) > 1 fails.
pub fn wrep_region_warning(q: &FieldElement, t: &FieldElement, big_q: &FieldElement) -> Result<Option<String>> {
    let one = BigRational::from_integer(1.into());
    let tv = abs_rational(t)?;
    let qtq = abs_rational(&(q * t * big_q))?;
    let iqq = abs_rational(&(q * big_q).inv()?)?;
    let mut bad = Vec::new();
    if t.as_rational().map(|r| r <= &one).unwrap_or(true) {
        bad.push(format!("t = {tv} is not > 1"));
    }
    if (q * t * big_q).as_rational().map(|r| r <= &one).unwrap_or(true) {
        bad.push(format!("qtQ = {qtq} is not > 1"));
    }
    if (q * big_q).inv()?.as_rational().map(|r| r <= &one).unwrap_or(true) {
        bad.push(format!("1/(qQ) = {iqq} is not > 1"));
    }
    Ok(if bad.is_empty() {
        None
    } else {
        Some(format!("outside the convergence region: {}", bad.join(", ")))
    })
}

/// Errors of partial products M = 0..=max_m on the coefficients of
/// `window`, against the exact solution.
pub fn wrep_report(
    max_m: u32,
    window: &DegreeWindow,
    q: &FieldElement,
    t: &FieldElement,
    big_q: &FieldElement,
) -> Result<WrepReport> {
    let warning = wrep_region_warning(q, t, big_q)?;
    let region_window = DegreeWindow::new(window.lmax, window.xmin, window.xmax.max(0));
    let exact = solve_toda(&region_window, q, t, big_q)?;
    let mut errors: BTreeMap<(i32, i32), Vec<BigRational>> = BTreeMap::new();
    for m in 0..=max_m {
        let w = wrep_partial(m, &region_window, q, t, big_q)?;
        for l in 0..=window.lmax {
            for x in window.xmin..=window.xmax {
                if !exact.region().in_support(l, x) {
                    continue;
                }
                let d = &w.get(l, x)? - &exact.get(l, x)?;
                errors.entry((l, x)).or_default().push(abs_rational(&d)?);
            }
        }
    }
    let mut monotone = true;
    let mut factor_ten = true;
    let ten = BigRational::from_integer(10.into());
    for e in errors.values() {
        if e.iter().all(|x| x.is_zero()) {
            continue;
        }
        if e.windows(2).any(|p| p[1] >= p[0]) {
            monotone = false;
        }
        if e.last().unwrap() * &ten > e[0] {
            factor_ten = false;
        }
    }
    Ok(WrepReport { window: *window, max_m, errors, monotone, factor_ten, warning })
}
