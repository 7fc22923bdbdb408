//! Exact coefficients.
//!
//! A [`FieldElement`] is a big rational or a rational function over a
//! [`SymbolTable`]. Since q, t and v = q^{1/2}t^{-1/2} all occur, the
//! generators are u and s with q = u², t = s², v = u/s.

mod element;
mod factor;
mod params;
mod poly;
mod symbols;
mod text;

pub use element::{element_equal, FieldElement, RationalFunction};
pub use factor::cyclotomic;
pub use params::{element_eval, small_rational, Param, ParamPoint};
pub use poly::{Monomial, Poly, MAX_SYMBOLS};
pub use symbols::SymbolTable;
pub use text::{element_text, make_element, poly_text};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_rational::BigRational;
    use std::sync::Arc;

    fn table() -> Arc<SymbolTable> {
        SymbolTable::new(&["u", "s", "Q"]).unwrap()
    }

    fn el(t: &Arc<SymbolTable>, s: &str) -> FieldElement {
        make_element(s, Some(t)).unwrap()
    }

    #[test]
    fn parse_rational() {
        let e = make_element("1/2", None).unwrap();
        assert_eq!(e.as_rational(), Some(&BigRational::new(1.into(), 2.into())));
        assert_eq!(make_element("-3 + 2^-1", None).unwrap(), FieldElement::ratio(-5, 2));
    }

    #[test]
    fn parse_symbolic() {
        let t = table();
        assert!(el(&t, "(u^4-1)/(u^2-1)").equal(&el(&t, "u^2+1")).unwrap());
        assert!(el(&t, "u^2/s^2").equal(&(el(&t, "u") / el(&t, "s")).pow(2).unwrap()).unwrap());
        assert!(!el(&t, "u").equal(&el(&t, "s")).unwrap());
        assert!(el(&t, "0/(u^2-1)").is_zero());
        assert!(el(&t, "(u^2-1)/(u-1)").equal(&el(&t, "u+1")).unwrap());
    }

    #[test]
    fn parse_errors() {
        let t = table();
        assert!(matches!(make_element("1/(u-u)", Some(&t)), Err(Error::Domain(_))));
        assert!(matches!(make_element("u+", Some(&t)), Err(Error::Parse { .. })));
        assert!(matches!(make_element("x", Some(&t)), Err(Error::Parse { .. })));
        assert!(matches!(make_element("(1", None), Err(Error::Parse { .. })));
        assert!(matches!(make_element("1/0", None), Err(Error::Domain(_))));
    }

    #[test]
    fn canonical_text_round_trip() {
        let t = table();
        for s in ["u^2+1", "(u^3*s-2*Q)/(s^2-u)", "-7/3", "(1-u^2*Q)/(3-s^4)", "u^-2*s"] {
            let e = el(&t, s);
            let back = el(&t, &e.to_string());
            assert!(e.equal(&back).unwrap(), "{s} -> {e}");
        }
        assert_eq!(el(&t, "u^2+1").to_string(), "u^2+1");
        assert_eq!(el(&t, "2*s-u").to_string(), "-u+2*s");
        assert_eq!(el(&t, "1/(2*u)").to_string(), "(1)/(2*u)");
    }

    #[test]
    fn mismatched_tables() {
        let a = el(&table(), "u");
        let other = SymbolTable::new(&["u", "z"]).unwrap();
        let b = el(&other, "u");
        assert!(matches!(element_equal(&a, &b), Err(Error::Usage(_))));
    }

    #[test]
    fn evaluation() {
        let t = table();
        let pt = ParamPoint::numeric(&[
            (Param::U, BigRational::new(1.into(), 2.into())),
            (Param::S, BigRational::new(1.into(), 3.into())),
            (Param::Q, BigRational::from_integer(2.into())),
        ])
        .unwrap();
        let qt = el(&t, "u^2/s^2");
        assert_eq!(element_eval(&qt, &pt).unwrap(), FieldElement::ratio(9, 4));
        let tq = el(&t, "1-s^2*Q");
        assert_eq!(element_eval(&tq, &pt).unwrap(), FieldElement::ratio(7, 9));
        let pole = el(&t, "1/(u-1/2)");
        assert!(matches!(element_eval(&pole, &pt), Err(Error::EvaluationPole(_))));
    }

    #[test]
    fn numeric_point_rejects_roots_of_unity() {
        let r = ParamPoint::numeric(&[
            (Param::U, BigRational::from_integer((-1).into())),
            (Param::S, BigRational::new(1.into(), 3.into())),
        ]);
        assert!(matches!(r, Err(Error::Usage(_))));
    }

    #[test]
    fn derived_accessors() {
        let pt = ParamPoint::parse_numeric("u=2/5,s=3/7,Q=5/3,T1=1/2,T2=1/3,T3=1/5,T4=1/7")
            .unwrap()
            .higgsed()
            .unwrap();
        let t = pt.t().unwrap();
        // Higgsing forces w = t
        assert_eq!(pt.w().unwrap(), t);
        assert_eq!(pt.v().unwrap(), FieldElement::ratio(14, 15));
        assert_eq!(pt.f_plus(2).unwrap(), FieldElement::from_int(3));
    }
}
