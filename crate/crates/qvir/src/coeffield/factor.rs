//! Splitting polynomials into normalized denominator factors.
//!
//! A normalized factor has nonnegative exponents, no monomial content,
//! coprime integer coefficients and a positive leading coefficient.
//! Binomials `A ± B` are split further into homogenized cyclotomic
//! pieces; anything else is kept whole.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly};

/// `p = scalar * mono * ∏ factors`.
pub struct Split {
    pub scalar: BigRational,
    pub mono: Monomial,
    pub factors: Vec<Poly>,
}

/// Integer cyclotomic polynomial Φ_n, coefficients from degree 0 up.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic(d));
        }
    }
    num
}

fn divide_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = r.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    q
}

/// Scales a polynomial with nonnegative exponents to coprime integers with
/// positive leading coefficient. Returns the scalar that was divided out.
fn primitive(p: &Poly) -> (BigRational, Poly) {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        den_lcm = den_lcm.lcm(c.denom());
        num_gcd = num_gcd.gcd(c.numer());
    }
    let mut content = BigRational::new(num_gcd, den_lcm);
    if p.has_negative_lead() {
        content = -content;
    }
    let inv = content.recip();
    (content, p.scale(&inv))
}

fn homogenized(coeffs: &[i64], a: &Monomial, b: &Monomial) -> Poly {
    let deg = coeffs.len() as i32 - 1;
    Poly::from_terms(coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| {
        (
            a.pow(i as i32).mul(&b.pow(deg - i as i32)),
            BigRational::from_integer(BigInt::from(c)),
        )
    }))
}

fn exponent_gcd(ms: &[&Monomial]) -> u32 {
    let mut g = 0u32;
    for m in ms {
        for &e in m.0.iter() {
            g = g.gcd(&(e.unsigned_abs() as u32));
        }
    }
    g
}

/// Splits a nonzero polynomial. Panics on zero; callers check first.
pub fn split(p: &Poly) -> Split {
    assert!(!p.is_zero(), "split of the zero polynomial");
    let mono = p.min_exponents();
    let shifted = p.mul_term(&mono.inv(), &BigRational::one());
    if let Some(c) = shifted.as_constant() {
        return Split { scalar: c, mono, factors: Vec::new() };
    }
    let (scalar, prim) = primitive(&shifted);
    let mut factors = Vec::new();
    let terms = prim.terms();
    let binomial_pm1 =
        terms.len() == 2 && terms[0].1.abs().is_one() && terms[1].1.abs().is_one();
    if binomial_pm1 {
        let (a, b) = (terms[1].0, terms[0].0);
        let minus = terms[0].1.is_negative();
        let g = exponent_gcd(&[&a, &b]);
        let a0 = Monomial(a.0.map(|e| e / g as i16));
        let b0 = Monomial(b.0.map(|e| e / g as i16));
        let ds: Vec<u32> = if minus {
            (1..=g).filter(|d| g.is_multiple_of(*d)).collect()
        } else {
            (1..=2 * g).filter(|d| (2 * g).is_multiple_of(*d) && !g.is_multiple_of(*d)).collect()
        };
        for d in ds {
            let (_, f) = primitive(&homogenized(&cyclotomic(d), &a0, &b0));
            factors.push(f);
        }
    } else {
        factors.push(prim.clone());
    }
    let mut prod = Poly::constant(BigRational::one());
    for f in &factors {
        prod = prod.mul(f);
    }
    // fix the sign/scale so that scalar * prod == prim * scalar
    let lp = prim.lead().expect("nonzero").1.clone();
    let lq = prod.lead().expect("nonzero").1.clone();
    Split { scalar: scalar * lp / lq, mono, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn split_reconstructs() {
        // 3*u - 3*u^7  and  u^4 + s^4
        let u = |e| Monomial::var(0, e);
        let s = |e| Monomial::var(1, e);
        let cases = vec![
            Poly::from_terms(vec![(u(1), r(3)), (u(7), r(-3))]),
            Poly::from_terms(vec![(u(4), r(1)), (s(4), r(1))]),
            Poly::from_terms(vec![(u(2), r(1)), (s(1), r(2)), (Monomial::ONE, r(5))]),
        ];
        for p in cases {
            let sp = split(&p);
            let mut prod = Poly::term(sp.mono, sp.scalar.clone());
            for f in &sp.factors {
                assert!(f.is_integral());
                assert!(!f.has_negative_lead());
                prod = prod.mul(f);
            }
            assert_eq!(prod, p);
        }
        let sp = split(&Poly::from_terms(vec![(Monomial::ONE, r(1)), (u(6), r(-1))]));
        assert_eq!(sp.factors.len(), 4);
    }
}
