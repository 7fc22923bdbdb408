//! q-Pochhammer symbols, the quantum dilogarithm φ(X) = (X; q)_∞, the
//! double product Φ(X) = (X; q, t)_∞ and the pairing kernels.

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};
use crate::series::{BiSeries, MonomialArg, PowerCache, Region};

/// (z)_n = ∏_{i<n} (1 − qⁱz).
pub fn qpoch(z: &FieldElement, n: i64, q: &FieldElement) -> Result<FieldElement> {
    if n < 0 {
        return Err(Error::Usage(format!("Pochhammer length must be ≥ 0, got {n}")));
    }
    let mut r = FieldElement::one();
    let mut qi = FieldElement::one();
    for _ in 0..n {
        r = r * (FieldElement::one() - &qi * z);
        qi = qi * q;
    }
    Ok(r)
}

/// Largest k with arg^k still inside `region`; the region is read relative
/// to its lower edges.
pub fn arg_order(arg: &MonomialArg, region: &Region) -> Result<usize> {
    let dh = arg.dx + region.depth * arg.dl;
    let small = arg.dl > 0 || (arg.dl == 0 && arg.dx > 0);
    if !small || dh < 0 {
        return Err(Error::NonExpandable(format!(
            "{}·Λ^{}·x^{} at depth {}",
            arg.coeff, arg.dl, arg.dx, region.depth
        )));
    }
    let (lend, hend) = region.relative_ends();
    let mut k = i64::MAX;
    if arg.dl > 0 {
        k = k.min((lend / arg.dl) as i64);
    }
    if dh > 0 {
        k = k.min((hend / dh) as i64);
    }
    Ok(k.max(0) as usize)
}

/// Σ_k coeffs[k]·arg^k on the anchored version of `region`.
pub fn series_in_arg(
    coeffs: &[FieldElement],
    arg: &MonomialArg,
    region: &Region,
) -> Result<BiSeries> {
    let (lend, hend) = region.relative_ends();
    let r = Region::anchored(region.depth, lend, hend);
    let pw = PowerCache::new(&arg.coeff)?;
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.iter().enumerate() {
        let k = k as i32;
        terms.push(((k * arg.dl, k * arg.dx), c * pw.get(k as i64)?));
    }
    Ok(BiSeries::from_terms(r, terms))
}

/// Coefficients of φ(X) (or 1/φ(X)) in powers of X up to X^k.
pub fn phi_coeffs(k: usize, q: &FieldElement, inverse: bool) -> Result<Vec<FieldElement>> {
    let mut out = Vec::with_capacity(k + 1);
    let mut qpoch_n = FieldElement::one();
    let mut qn = FieldElement::one();
    let mut tri = FieldElement::one();
    for n in 0..=k {
        if n > 0 {
            qn = qn * q;
            qpoch_n = qpoch_n * (FieldElement::one() - &qn);
        }
        let c = if inverse {
            qpoch_n.inv()?
        } else {
            // (-1)^n q^{n(n-1)/2} / (q)_n
            let s = if n % 2 == 1 { -&tri } else { tri.clone() };
            &s / &qpoch_n
        };
        out.push(c);
        tri = tri * &qn;
    }
    Ok(out)
}

/// Truncated φ(arg) or φ(arg)⁻¹.
pub fn phi_expand(
    arg: &MonomialArg,
    region: &Region,
    q: &FieldElement,
    inverse: bool,
) -> Result<BiSeries> {
    let k = arg_order(arg, region)?;
    series_in_arg(&phi_coeffs(k, q, inverse)?, arg, region)
}

/// exp of Σ_k logc[k]·X^k as coefficients up to X^K (logc[0] ignored).
fn exp_coeffs(logc: &[FieldElement]) -> Vec<FieldElement> {
    let kmax = logc.len() - 1;
    let mut e = vec![FieldElement::one()];
    for k in 1..=kmax {
        let mut s = FieldElement::zero();
        for j in 1..=k {
            if !logc[j].is_zero() && !e[k - j].is_zero() {
                s = s + FieldElement::from_int(j as i64) * &logc[j] * &e[k - j];
            }
        }
        e.push(s * FieldElement::ratio(1, k as i64));
    }
    e
}

/// Truncated Φ(arg) = exp(−Σ arg^k/((1−q^k)(1−t^k)k)) or its inverse.
pub fn bigphi_expand(
    arg: &MonomialArg,
    region: &Region,
    q: &FieldElement,
    t: &FieldElement,
    inverse: bool,
) -> Result<BiSeries> {
    let kmax = arg_order(arg, region)?;
    let sign = if inverse { FieldElement::one() } else { FieldElement::from_int(-1) };
    let mut logc = vec![FieldElement::zero()];
    for k in 1..=kmax as i64 {
        let den = (FieldElement::one() - q.pow(k)?)
            * (FieldElement::one() - t.pow(k)?)
            * FieldElement::from_int(k);
        logc.push(&sign / &den);
    }
    series_in_arg(&exp_coeffs(&logc), arg, region)
}

/// φ(x)/φ(x/y) − Σ (y)_n/(q)_n (x/y)^n; zero when the q-binomial theorem holds.
pub fn qbinomial_check(
    x_arg: &MonomialArg,
    y: &FieldElement,
    region: &Region,
    q: &FieldElement,
) -> Result<BiSeries> {
    let xy = x_arg.scaled(&y.inv()?);
    let lhs = phi_expand(x_arg, region, q, false)?.mul(&phi_expand(&xy, region, q, true)?)?;
    let k = arg_order(&xy, region)?;
    let mut coeffs = Vec::with_capacity(k + 1);
    for n in 0..=k as i64 {
        coeffs.push(qpoch(y, n, q)? / qpoch(q, n, q)?);
    }
    let rhs = series_in_arg(&coeffs, &xy, region)?;
    Ok(lhs.sub(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// Screening–screening: φ(r)φ((q/t)r)/(φ(qr)φ(tr)).
    SS,
    /// Screening–vertex: φ(r)/φ(q^α r).
    SV,
    /// Vertex–vertex: exp(−Σ (1−q^{αk})(1−q^{−γk})/((1−q^{−k})(1−t^k)(1+q^k t^{−k})) r^k/k).
    VV,
}

/// Truncated pairing kernel in the ratio monomial `r`. The power-law
/// prefactors that accompany these kernels are not included. `qa` and `qg`
/// are q^α and q^γ (only VV uses `qg`).
pub fn pair_kernel(
    kind: KernelKind,
    r: &MonomialArg,
    qa: &FieldElement,
    qg: &FieldElement,
    region: &Region,
    q: &FieldElement,
    t: &FieldElement,
) -> Result<BiSeries> {
    match kind {
        KernelKind::SS => {
            let qt = q / t;
            let num = phi_expand(r, region, q, false)?.mul(&phi_expand(&r.scaled(&qt), region, q, false)?)?;
            let den = phi_expand(&r.scaled(q), region, q, true)?
                .mul(&phi_expand(&r.scaled(t), region, q, true)?)?;
            num.mul(&den)
        }
        KernelKind::SV => phi_expand(r, region, q, false)?.mul(&phi_expand(&r.scaled(qa), region, q, true)?),
        KernelKind::VV => {
            let kmax = arg_order(r, region)?;
            let one = FieldElement::one();
            let mut logc = vec![FieldElement::zero()];
            for k in 1..=kmax as i64 {
                let pole = &one + q.pow(k)? * t.pow(-k)?;
                if pole.is_zero() {
                    return Err(Error::EvaluationPole(format!("1 + q^{k} t^-{k} vanishes")));
                }
                let num = (&one - qa.pow(k)?) * (&one - qg.pow(-k)?);
                let den = (&one - q.pow(-k)?) * (&one - t.pow(k)?) * pole * FieldElement::from_int(k);
                logc.push(-(num / den));
            }
            series_in_arg(&exp_coeffs(&logc), r, region)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffield::{make_element, SymbolTable};
    use crate::series::DegreeWindow;

    fn fe(s: &str) -> FieldElement {
        make_element(s, None).unwrap()
    }

    #[test]
    fn pochhammer() {
        let q = fe("1/3");
        let z = fe("2/5");
        assert!(qpoch(&z, 0, &q).unwrap().is_one());
        assert_eq!(qpoch(&z, 1, &q).unwrap(), fe("3/5"));
        assert_eq!(qpoch(&z, 2, &q).unwrap(), fe("3/5*(1-2/15)"));
        assert!(qpoch(&z, -1, &q).is_err());
    }

    #[test]
    fn phi_first_coefficients() {
        let q = fe("2/7");
        let c = fe("3");
        let r = Region::for_window(&DegreeWindow::new(0, 0, 3));
        let p = phi_expand(&MonomialArg::new(c.clone(), 0, 1), &r, &q, false).unwrap();
        // the product ∏(1 − qⁱ·c·x) starts 1 − c·x/(1−q)
        assert_eq!(p.get(0, 1).unwrap(), -(&c / (FieldElement::one() - &q)));
        let w = Region::for_window(&DegreeWindow::new(2, -2, 0));
        let qq = &q;
        let pi = phi_expand(&MonomialArg::new(-qq, 1, -1), &w, &q, true).unwrap();
        assert_eq!(pi.get(1, -1).unwrap(), -(qq / (FieldElement::one() - qq)));
    }

    #[test]
    fn bigphi_first_coefficient() {
        let q = fe("1/3");
        let t = fe("2/5");
        let r = Region::for_window(&DegreeWindow::new(2, -2, 0));
        let p = bigphi_expand(&MonomialArg::new(FieldElement::one(), 1, -1), &r, &q, &t, false).unwrap();
        assert!(p.get(0, 0).unwrap().is_one());
        let want = -(FieldElement::one() / ((FieldElement::one() - &q) * (FieldElement::one() - &t)));
        assert_eq!(p.get(1, -1).unwrap(), want);
    }

    #[test]
    fn non_expandable() {
        let r = Region::for_window(&DegreeWindow::new(2, -2, 2));
        let q = fe("1/3");
        assert!(matches!(
            phi_expand(&MonomialArg::new(fe("1"), 0, -1), &r, &q, false),
            Err(Error::NonExpandable(_))
        ));
        assert!(matches!(
            phi_expand(&MonomialArg::new(fe("1"), 1, -2), &r, &q, false),
            Err(Error::NonExpandable(_))
        ));
    }

    #[test]
    fn qbinomial_symbolic() {
        let tab = SymbolTable::new(&["u", "a"]).unwrap();
        let q = make_element("u^2", Some(&tab)).unwrap();
        let y = make_element("a", Some(&tab)).unwrap();
        let r = Region::for_window(&DegreeWindow::new(0, 0, 3));
        let res = qbinomial_check(&MonomialArg::new(FieldElement::one(), 0, 1), &y, &r, &q).unwrap();
        assert!(res.is_empty());
        let res1 = qbinomial_check(&MonomialArg::new(FieldElement::one(), 0, 1), &FieldElement::one(), &r, &q).unwrap();
        assert!(res1.is_empty());
    }

    #[test]
    fn kernel_first_coefficients() {
        let q = fe("1/3");
        let t = fe("2/5");
        let qa = fe("7/4");
        let r = Region::for_window(&DegreeWindow::new(0, 0, 2));
        let arg = MonomialArg::new(FieldElement::one(), 0, 1);
        let one = FieldElement::one();
        let ss = pair_kernel(KernelKind::SS, &arg, &qa, &qa, &r, &q, &t).unwrap();
        let want = -((&one + &q / &t) * (&one - &t) / (&one - &q));
        assert_eq!(ss.get(0, 1).unwrap(), want);
        let sv = pair_kernel(KernelKind::SV, &arg, &qa, &qa, &r, &q, &t).unwrap();
        assert_eq!(sv.get(0, 1).unwrap(), (&qa - &one) / (&one - &q));
        let vv = pair_kernel(KernelKind::VV, &arg, &qa, &fe("3/2"), &r, &q, &t).unwrap();
        assert!(vv.get(0, 0).unwrap().is_one());
    }
}
