//! Sparse Laurent polynomials with rational coefficients.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest symbol table the packed exponent vector supports.
pub const MAX_SYMBOLS: usize = 16;

/// Exponent vector, indexed by symbol position. Exponents may be negative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub [i16; MAX_SYMBOLS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_SYMBOLS]);

    pub fn var(i: usize, e: i16) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[i] = e;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        r
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b).expect("exponent overflow");
        }
        r
    }

    pub fn inv(&self) -> Monomial {
        Monomial::ONE.div(self)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a = i16::try_from(*a as i32 * k).expect("exponent overflow");
        }
        r
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }
}

/// Laurent polynomial with terms kept sorted by ascending monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Poly {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_sorted(terms: Vec<(Monomial, BigRational)>) -> Poly {
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this is a constant (zero counts as constant).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    /// Largest term in the monomial order.
    pub fn lead(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.last()
    }

    pub fn neg(&self) -> Poly {
        Poly::from_sorted(self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly::from_sorted(self.terms.iter().map(|(m, c)| (*m, c * k)).collect())
    }

    /// Multiplies by `k * m`.
    pub fn mul_term(&self, m: &Monomial, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        // shifting by a monomial preserves the order
        Poly::from_sorted(self.terms.iter().map(|(a, c)| (a.mul(m), c * k)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly::from_sorted(out)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let p = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        Poly::from_sorted(terms)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(BigRational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => *m,
            None => return Monomial::ONE,
        };
        it.fold(first, |acc, (m, _)| acc.meet(m))
    }

    pub fn uses_symbol(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[i] != 0)
    }

    /// Substitutes rational values for the symbols; `None` entries must not
    /// occur in any monomial.
    pub fn eval(&self, vals: &[Option<BigRational>]) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = vals.get(i)?.as_ref()?;
                if e < 0 && x.is_zero() {
                    return None;
                }
                t *= num_traits::pow::Pow::pow(x, e as i32);
            }
            total += t;
        }
        Some(total)
    }

    /// Exact quotient by `f`, which must be a polynomial without monomial
    /// content. Returns `None` if `f` does not divide `self`.
    pub fn div_exact(&self, f: &Poly) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (flead, fcoef) = f.lead()?.clone();
        let shift = self.min_exponents();
        let mut rem: BTreeMap<Monomial, BigRational> =
            self.terms.iter().map(|(m, c)| (m.div(&shift), c.clone())).collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !flead.divides(&m) {
                return None;
            }
            let qm = m.div(&flead);
            let qc = &c / &fcoef;
            for (fm, fc) in f.terms.iter().rev().skip(1) {
                let key = fm.mul(&qm);
                let delta = &qc * fc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qm.mul(&shift), qc));
        }
        quot.reverse();
        Some(Poly::from_sorted(quot))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn has_negative_lead(&self) -> bool {
        self.lead().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}
