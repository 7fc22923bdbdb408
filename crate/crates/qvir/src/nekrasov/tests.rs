use super::*;
use crate::coeffield::{FieldElement, Param, ParamPoint};
use crate::operators::solve_toda;
use crate::series::DegreeWindow;

fn r(a: i64, b: i64) -> FieldElement {
    FieldElement::ratio(a, b)
}

fn generic() -> ParamPoint {
    ParamPoint::parse_numeric("u=2/5,s=3/7,Q=5/3,T1=1/2,T2=1/3,T3=1/5,T4=1/7,phi1=3/2,phi2=5/4").unwrap()
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn factor_examples() {
    let (q, t, z) = (r(2, 3), r(5, 7), r(3, 11));
    let e = Partition::empty();
    let one = FieldElement::one();
    assert!(nekrasov_factor(&e, &e, &z, &q, &t).unwrap().is_one());
    assert_eq!(nekrasov_factor(&p(&[1]), &e, &z, &q, &t).unwrap(), &one - &z);
    assert_eq!(nekrasov_factor(&e, &p(&[1]), &z, &q, &t).unwrap(), &one - &z * &t / &q);
}

#[test]
fn factor_degree_is_total_size() {
    for (a, b) in [(vec![2, 1], vec![1]), (vec![3], vec![2, 2]), (vec![], vec![1, 1, 1])] {
        let (a, b) = (p(&a), p(&b));
        assert_eq!(box_exponents(&a, &b).len() as u32, a.size() + b.size());
    }
}

/// Direct evaluation of the defining 4-tuple sum, one tuple at a time.
fn naive_z(window: &DegreeWindow, pt: &ParamPoint) -> std::collections::BTreeMap<(i32, i32), FieldElement> {
    let (q, t) = (pt.q().unwrap(), pt.t().unwrap());
    let (v, w) = (pt.v().unwrap(), pt.w().unwrap());
    let (p1, p2) = (pt.p1().unwrap(), pt.p2().unwrap());
    let nmax = (window.xmax + window.lmax) as u32;
    let mut out = std::collections::BTreeMap::new();
    let n = |a: usize| pt.n(a).unwrap();
    let m = |a: usize| pt.m(a).unwrap();
    for (n1, n2) in partition_pairs_up_to(nmax) {
        for (m1, m2) in partition_pairs_up_to(window.lmax as u32) {
            let nu = [&n1, &n2];
            let mu = [&m1, &m2];
            let (sn, sm) = ((n1.size() + n2.size()) as i32, (m1.size() + m2.size()) as i32);
            if sn - sm > window.xmax {
                continue;
            }
            let nf = |l: &Partition, e: &Partition, z: FieldElement| nekrasov_factor(l, e, &z, &q, &t).unwrap();
            let mut num = p1.pow(sn as i64).unwrap() * p2.pow(sm as i64).unwrap();
            let mut den = FieldElement::one();
            let e = Partition::empty();
            for a in 0..2 {
                for b in 0..2 {
                    num = num * nf(&e, nu[b], &v * &pt.f_plus(a + 1).unwrap() / n(b + 1));
                    num = num * nf(nu[a], mu[b], &w * &n(a + 1) / m(b + 1));
                    num = num * nf(mu[b], &e, &v * &m(b + 1) / pt.f_minus(a + 1).unwrap());
                    den = den * nf(nu[a], nu[b], n(a + 1) / n(b + 1)) * nf(mu[a], mu[b], m(a + 1) / m(b + 1));
                }
            }
            let c = out.entry((sm, sn - sm)).or_insert_with(FieldElement::zero);
            *c = &*c + &(num / den);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[test]
fn z_matches_direct_sum() {
    let w = DegreeWindow::new(2, -2, 2);
    let pt = generic();
    let z = z_expand(&w, &pt).unwrap();
    assert!(z.get(0, 0).unwrap().is_one());
    let naive = naive_z(&w, &pt);
    assert_eq!(z.in_window(&w).count(), naive.len());
    for (k, c) in &naive {
        assert_eq!(&z.get(k.0, k.1).unwrap(), c, "coefficient {k:?}");
    }
}

#[test]
fn lambda_over_x_has_two_tuples() {
    let w = DegreeWindow::new(1, -1, 0);
    let terms = z_nonzero_terms(&w, &generic()).unwrap();
    let hits: Vec<_> = terms
        .iter()
        .filter(|t| t.nu.iter().all(|p| p.is_empty()) && t.mu[0].size() + t.mu[1].size() == 1)
        .collect();
    assert_eq!(hits.len(), 2);
    assert!(hits.iter().any(|t| t.mu[0] == p(&[1])) && hits.iter().any(|t| t.mu[1] == p(&[1])));
}

#[test]
fn higgsing() {
    let pt = ParamPoint::parse_numeric("u=2/5,s=3/7,Q=5/3,T1=1/2,T2=1/3,T3=1/5,T4=1/7").unwrap();
    let h = pt.higgsed().unwrap();
    assert_eq!(h.w().unwrap(), h.t().unwrap());
    let w = DegreeWindow::new(1, -1, 1);
    assert!(higgs_psi(&w, &pt).unwrap().get(0, 0).unwrap().is_one());
    assert!(matches!(higgs_psi(&w, &generic()), Err(crate::Error::Usage(_))));
}

#[test]
fn special_point_collapses_to_rows() {
    let pt = ParamPoint::parse_numeric("u=2/5,s=3/7,Q=5/3").unwrap().special_point().unwrap().higgsed().unwrap();
    let terms = z_nonzero_terms(&DegreeWindow::new(2, -2, 2), &pt).unwrap();
    assert!(!terms.is_empty());
    for t in &terms {
        assert!(t.nu[0].is_empty() && t.mu[0].is_empty(), "{:?}", t);
        assert!(t.nu[1].parts().len() <= 1 && t.mu[1].parts().len() <= 1);
    }
}

#[test]
fn param_map_special_point() {
    let (u, s) = (r(2, 5), r(3, 7));
    let t = &s * &s;
    let v = &u / &s;
    let qb = t.inv().unwrap();
    let input = ParamMapInput { q_alpha: [r(4, 9), qb.clone(), qb.clone(), qb], n: [1, 1, 0] };
    let out = param_map(&input, &u, &s).unwrap();
    let vi = v.inv().unwrap();
    let vt = &v / &t;
    assert_eq!(out.t, [vt.clone(), vi.clone(), vi, vt]);
    assert_eq!(out.phi1, &t / &v);
    assert_eq!(out.phi2, v);
    let back = param_map_inverse(&out, &u, &s).unwrap();
    assert_eq!(back.n, [1, 1, 0]);
    assert!(back.q_alpha.iter().zip(&input.q_alpha).all(|(a, b)| a == b));
}

#[test]
fn param_map_rejects_non_powers() {
    let (u, s) = (r(2, 5), r(3, 7));
    let mp = ModelParams {
        big_q: r(5, 3),
        t: [r(1, 2), r(1, 3), r(1, 5), r(1, 7)],
        phi1: r(3, 2),
        phi2: r(5, 4),
    };
    assert!(matches!(param_map_inverse(&mp, &u, &s), Err(crate::Error::NoSolution(_))));
}

#[test]
fn toda_limit_is_independent_of_ratios() {
    let pt = ParamPoint::parse_numeric("u=2/5,s=3/7,Q=5/3").unwrap();
    let w = DegreeWindow::new(3, -3, 3);
    let ones = [(); 4].map(|_| FieldElement::one());
    let other = [2, 3, 5, 7].map(FieldElement::from_int);
    let a = toda_limit(&w, &pt, &ones).unwrap();
    let b = toda_limit(&w, &pt, &other).unwrap();
    assert!(a.get(0, 0).unwrap().is_one());
    assert!(a.sub(&b).is_empty());
    let exact = solve_toda(&w, &pt.q().unwrap(), &pt.t().unwrap(), pt.get(Param::Q).unwrap()).unwrap();
    assert!(a.sub(&exact).is_empty());
}
