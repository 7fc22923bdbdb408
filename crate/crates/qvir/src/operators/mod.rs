//! Difference operators on [`BiSeries`](crate::series::BiSeries): γ̂, p̂,
//! x̂, the non-stationary equation, the Toda operators and the
//! cut-and-join representation.

mod basic;
mod theorem20;
mod toda;
mod wrep;

pub use basic::{
    basic_shift_relations_check, gamma_apply, gamma_apply_shifted, pshift, xhat, Primitive, SeriesOperator,
};
pub use theorem20::{
    nonstat_operator, nonstat_rhs, prefactor_a, prefactor_a_on, prefactor_factors, product_of, verify_theorem20,
    Factor,
};
pub use toda::{commutator_check, solve_toda, toda_h_apply, toda_hamiltonian_apply, toda_kernel};
pub use wrep::{wrep_kernel, wrep_partial, wrep_region_warning, wrep_report, WrepReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffield::{FieldElement, Param, ParamPoint};
    use crate::mutation::Mutation;
    use crate::series::{BiSeries, DegreeWindow, Region};

    fn r(a: i64, b: i64) -> FieldElement {
        FieldElement::ratio(a, b)
    }

    fn point() -> ParamPoint {
        ParamPoint::parse_numeric("u=2/5,s=3/7,Q=5/3,T1=1/2,T2=1/3,T3=1/5,T4=1/7").unwrap()
    }

    #[test]
    fn gamma_weights() {
        let q = r(1, 3);
        for (x, w) in [(0, r(1, 1)), (1, r(1, 3)), (-1, r(1, 1)), (2, r(1, 27))] {
            let g = gamma_apply(&BiSeries::monomial(FieldElement::one(), 0, x), 1, &q).unwrap();
            assert_eq!(g.get(0, x).unwrap(), w);
            let back = gamma_apply(&g, -1, &q).unwrap();
            assert_eq!(back.get(0, x).unwrap(), FieldElement::one());
        }
    }

    #[test]
    fn shift_relations() {
        let w = DegreeWindow::new(1, -3, 3);
        assert!(basic_shift_relations_check(&w, &r(2, 7), false).unwrap().pass);
        assert!(!basic_shift_relations_check(&w, &r(2, 7), true).unwrap().pass);
    }

    #[test]
    fn prefactors_start_with_one() {
        let w = DegreeWindow::new(1, -2, 2);
        for i in 1..=3 {
            let a = prefactor_a(i, &w, &point()).unwrap();
            assert!(a.get(0, 0).unwrap().is_one());
        }
    }

    #[test]
    fn prefactor_a1_at_special_point() {
        let w = DegreeWindow::new(2, -2, 3);
        let p = point().special_point().unwrap();
        let (q, t) = (p.q().unwrap(), p.t().unwrap());
        let a1 = prefactor_a(1, &w, &p).unwrap();
        let reg = Region::for_window(&w);
        let expect = product_of(
            &[Factor::phi(&q / &t, 0, 1, true), Factor::phi(t.clone(), 1, -1, true)],
            &reg,
            &q,
            &t,
        )
        .unwrap();
        assert!(a1.sub(&expect).is_empty());
    }

    #[test]
    fn theorem20_small_window() {
        let w = DegreeWindow::new(2, -3, 4);
        assert!(verify_theorem20(&w, &point(), Mutation::None).unwrap().pass);
        assert!(!verify_theorem20(&w, &point(), Mutation::A2).unwrap().pass);
        assert!(!verify_theorem20(&w, &point(), Mutation::Shift).unwrap().pass);
    }

    #[test]
    fn theorem20_trivial_window() {
        let w = DegreeWindow::new(0, 0, 0);
        assert!(verify_theorem20(&w, &point(), Mutation::None).unwrap().pass);
    }

    #[test]
    fn h_on_one() {
        let (q, t, bq) = (r(1, 3), r(2, 1), r(2, 1));
        let one = BiSeries::one_on(Region::for_window(&DegreeWindow::new(1, 0, 2)));
        let h = toda_h_apply(&one, &q, &t, &bq).unwrap();
        assert!(h.get(0, 0).unwrap().is_one());
        let expect = -(&q / (&bq * (FieldElement::one() - &q)));
        assert_eq!(h.get(0, 1).unwrap(), expect);
    }

    #[test]
    fn hamiltonian_examples() {
        let (q, t, bq) = (r(1, 3), r(5, 2), r(7, 4));
        let one = BiSeries::monomial(FieldElement::one(), 0, 0);
        let h = toda_hamiltonian_apply(&one, &q, &t, &bq, Mutation::None).unwrap();
        assert_eq!(h.get(0, 0).unwrap(), FieldElement::one() + &t * &bq);
        assert_eq!(h.get(0, 1).unwrap(), t.clone());
        assert!(h.get(1, -1).unwrap().is_one());
        let x = BiSeries::monomial(FieldElement::one(), 0, 1);
        let h = toda_hamiltonian_apply(&x, &q, &t, &bq, Mutation::None).unwrap();
        assert_eq!(h.get(0, 1).unwrap(), &q + &t * &bq / &q);
        assert_eq!(h.get(0, 2).unwrap(), t.clone());
        assert!(h.get(1, 0).unwrap().is_one());
    }

    #[test]
    fn solve_toda_low_terms() {
        let (q, t, bq) = (r(1, 3), r(2, 1), r(2, 1));
        let w = DegreeWindow::new(2, -2, 3);
        let s = solve_toda(&w, &q, &t, &bq).unwrap();
        let one = FieldElement::one();
        let c01 = -(&q / (&bq * (&one - &q) * (&one - &q / (&t * &bq))));
        assert!(s.get(0, 0).unwrap().is_one());
        assert_eq!(s.get(0, 1).unwrap(), c01);
        let lhs = s.rescale(&t, &one).unwrap();
        let rhs = toda_h_apply(&s, &q, &t, &bq).unwrap();
        assert!(lhs.sub(&rhs).is_empty());
    }

    #[test]
    fn solve_toda_resonance() {
        // (l, x) = (1, 0): pivot t − 1
        let w = DegreeWindow::new(1, 0, 1);
        let e = solve_toda(&w, &r(1, 3), &FieldElement::one(), &r(2, 1));
        assert!(matches!(e, Err(crate::Error::DegenerateParameters(_))));
    }

    #[test]
    fn commutator_numeric() {
        let (q, t, bq) = (r(4, 25), r(9, 49), r(5, 3));
        let w = DegreeWindow::new(1, -2, 2);
        assert!(commutator_check(&w, &q, &t, &bq, Mutation::None).unwrap().pass);
        assert!(!commutator_check(&w, &q, &t, &bq, Mutation::Tq2).unwrap().pass);
    }

    #[test]
    fn wrep_converges() {
        let (q, t, bq) = (r(1, 3), r(2, 1), r(2, 1));
        let w = DegreeWindow::new(1, -1, 1);
        let m0 = wrep_partial(0, &w, &q, &t, &bq).unwrap();
        assert!(m0.get(0, 0).unwrap().is_one());
        let rep = wrep_report(4, &w, &q, &t, &bq).unwrap();
        assert!(rep.warning.is_none());
        assert!(rep.monotone);
        let e01 = &rep.errors[&(0, 1)];
        assert!(e01.windows(2).all(|p| p[1] < p[0]));
        assert!(wrep_region_warning(&q, &r(1, 2), &bq).unwrap().is_some());
    }

    #[test]
    fn special_point_params() {
        let p = point().special_point().unwrap();
        assert_eq!(p.get(Param::T2).unwrap(), p.get(Param::T3).unwrap());
    }
}
