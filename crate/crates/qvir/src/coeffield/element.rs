//! The coefficient field: big rationals and factored rational functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::split;
use super::poly::{Monomial, Poly};
use super::symbols::{same_table, SymbolTable};
use crate::error::{Error, Result};

/// Numerator over a product of normalized factors with multiplicities.
///
/// The denominator list is sorted and holds no repeated factor. Nothing
/// here guarantees lowest terms; [`RationalFunction::reduce`] removes the
/// denominator factors that divide the numerator.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    table: Arc<SymbolTable>,
    num: Poly,
    den: Vec<(Arc<Poly>, u32)>,
}

/// An exact coefficient.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Function(RationalFunction),
}

fn expand(den: &[(Arc<Poly>, u32)]) -> Poly {
    let mut p = Poly::constant(BigRational::one());
    for (f, e) in den {
        p = p.mul(&f.pow(*e));
    }
    p
}

fn merge_den<F: Fn(u32, u32) -> u32>(
    a: &[(Arc<Poly>, u32)],
    b: &[(Arc<Poly>, u32)],
    op: F,
) -> Vec<(Arc<Poly>, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            std::cmp::Ordering::Greater
        } else if j == b.len() {
            std::cmp::Ordering::Less
        } else {
            a[i].0.cmp(&b[j].0)
        };
        match ord {
            std::cmp::Ordering::Less => {
                out.push((a[i].0.clone(), op(a[i].1, 0)));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), op(0, b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), op(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.retain(|(_, e)| *e > 0);
    out
}

/// Product of the factors of `lcm` not already present in `d`.
fn cofactor(lcm: &[(Arc<Poly>, u32)], d: &[(Arc<Poly>, u32)]) -> Poly {
    let mut p = Poly::constant(BigRational::one());
    let mut j = 0;
    for (f, e) in lcm {
        while j < d.len() && d[j].0 < *f {
            j += 1;
        }
        let have = if j < d.len() && d[j].0 == *f { d[j].1 } else { 0 };
        if *e > have {
            p = p.mul(&f.pow(e - have));
        }
    }
    p
}

impl RationalFunction {
    pub fn from_poly(table: Arc<SymbolTable>, num: Poly) -> RationalFunction {
        RationalFunction { table, num, den: Vec::new() }
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(f, e)| (f.as_ref(), *e))
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> Poly {
        expand(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn with(&self, num: Poly, den: Vec<(Arc<Poly>, u32)>) -> RationalFunction {
        RationalFunction { table: self.table.clone(), num, den }
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        let mut r = self.with(self.num.mul(&o.num), merge_den(&self.den, &o.den, |a, b| a + b));
        if (!self.den.is_empty() && o.num.len() > 1) || (!o.den.is_empty() && self.num.len() > 1) {
            r.reduce();
        }
        r
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            let mut r = self.with(self.num.add(&o.num), self.den.clone());
            r.reduce();
            return r;
        }
        let lcm = merge_den(&self.den, &o.den, |a, b| a.max(b));
        let a = self.num.mul(&cofactor(&lcm, &self.den));
        let b = o.num.mul(&cofactor(&lcm, &o.den));
        let mut r = self.with(a.add(&b), lcm);
        r.reduce();
        r
    }

    pub fn neg(&self) -> RationalFunction {
        self.with(self.num.neg(), self.den.clone())
    }

    pub fn scale(&self, k: &BigRational) -> RationalFunction {
        if k.is_zero() {
            return self.with(Poly::zero(), Vec::new());
        }
        self.with(self.num.scale(k), self.den.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<RationalFunction> {
        if self.num.is_zero() {
            return None;
        }
        let sp = split(&self.num);
        let mut den: Vec<(Arc<Poly>, u32)> = Vec::new();
        for f in sp.factors {
            let f = Arc::new(f);
            match den.iter_mut().find(|(g, _)| *g == f) {
                Some(entry) => entry.1 += 1,
                None => den.push((f, 1)),
            }
        }
        den.sort_by(|a, b| a.0.cmp(&b.0));
        let num = expand(&self.den).mul_term(&sp.mono.inv(), &sp.scalar.recip());
        Some(self.with(num, den))
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        if self.num.len() == 1 {
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            while self.den[i].1 > 0 {
                match self.num.div_exact(&self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.den[i].1 == 0 {
                self.den.remove(i);
            } else {
                i += 1;
            }
        }
    }

    /// Exact value at a rational point (indexed by symbol position).
    pub fn eval(&self, vals: &[Option<BigRational>]) -> Result<BigRational> {
        let missing = || {
            Error::Usage("evaluation point does not assign every symbol in use".into())
        };
        let mut den = BigRational::one();
        for (f, e) in &self.den {
            let fv = f.eval(vals).ok_or_else(missing)?;
            if fv.is_zero() {
                return Err(Error::EvaluationPole(format!(
                    "denominator factor {} vanishes",
                    super::text::poly_text(f, &self.table)
                )));
            }
            den *= num_traits::pow::Pow::pow(&fv, *e);
        }
        let n = self.num.eval(vals).ok_or_else(|| {
            // a negative power of a zero symbol is a pole too
            if self.num.terms().iter().any(|(m, _)| {
                m.0.iter().enumerate().any(|(i, &e)| {
                    e < 0 && vals.get(i).and_then(|v| v.as_ref()).is_some_and(|v| v.is_zero())
                })
            }) {
                Error::EvaluationPole("monomial with a negative power of zero".into())
            } else {
                missing()
            }
        })?;
        Ok(n / den)
    }
}

impl FieldElement {
    pub fn zero() -> FieldElement {
        FieldElement::Rational(BigRational::zero())
    }

    pub fn one() -> FieldElement {
        FieldElement::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> FieldElement {
        FieldElement::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> FieldElement {
        FieldElement::Rational(BigRational::new(n.into(), d.into()))
    }

    /// The generator named `name` of `table`.
    pub fn symbol(table: &Arc<SymbolTable>, name: &str) -> Result<FieldElement> {
        let i = table
            .index(name)
            .ok_or_else(|| Error::Usage(format!("unknown symbol {name}")))?;
        Ok(FieldElement::from_poly(
            table.clone(),
            Poly::term(Monomial::var(i, 1), BigRational::one()),
        ))
    }

    pub fn from_poly(table: Arc<SymbolTable>, p: Poly) -> FieldElement {
        FieldElement::Function(RationalFunction::from_poly(table, p)).collapse()
    }

    fn collapse(self) -> FieldElement {
        match self {
            FieldElement::Function(f) if f.den.is_empty() => match f.num.as_constant() {
                Some(c) => FieldElement::Rational(c),
                None => FieldElement::Function(f),
            },
            other => other,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Function(f) => f.den.is_empty() && f.num.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Function(_) => None,
        }
    }

    pub fn table(&self) -> Option<&Arc<SymbolTable>> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Function(f) => Some(&f.table),
        }
    }

    fn lift(r: &BigRational, table: &Arc<SymbolTable>) -> RationalFunction {
        RationalFunction::from_poly(table.clone(), Poly::constant(r.clone()))
    }

    fn check_tables(a: &RationalFunction, b: &RationalFunction) -> Result<()> {
        if same_table(&a.table, &b.table) {
            Ok(())
        } else {
            Err(Error::Usage("elements belong to different symbol tables".into()))
        }
    }

    pub fn try_add(&self, o: &FieldElement) -> Result<FieldElement> {
        use FieldElement::*;
        Ok(match (self, o) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Function(a), Rational(b)) | (Rational(b), Function(a)) => {
                if b.is_zero() {
                    Function(a.clone())
                } else {
                    Function(a.add(&Self::lift(b, &a.table)))
                }
            }
            (Function(a), Function(b)) => {
                Self::check_tables(a, b)?;
                Function(a.add(b))
            }
        }
        .collapse())
    }

    pub fn try_mul(&self, o: &FieldElement) -> Result<FieldElement> {
        use FieldElement::*;
        Ok(match (self, o) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Function(a), Rational(b)) | (Rational(b), Function(a)) => Function(a.scale(b)),
            (Function(a), Function(b)) => {
                Self::check_tables(a, b)?;
                Function(a.mul(b))
            }
        }
        .collapse())
    }

    pub fn try_sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.try_add(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Function(f) => FieldElement::Function(f.neg()),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        match self {
            FieldElement::Rational(a) if a.is_zero() => {
                Err(Error::Domain("division by zero".into()))
            }
            FieldElement::Rational(a) => Ok(FieldElement::Rational(a.recip())),
            FieldElement::Function(f) => f
                .inv()
                .map(|g| FieldElement::Function(g).collapse())
                .ok_or_else(|| Error::Domain("division by the zero polynomial".into())),
        }
    }

    pub fn try_div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.try_mul(&o.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<FieldElement> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if let FieldElement::Rational(a) = self {
            return Ok(FieldElement::Rational(num_traits::pow::Pow::pow(a, k as u64)));
        }
        let mut r = FieldElement::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(r)
    }

    /// Exact equality by testing `a - b = 0`.
    pub fn equal(&self, o: &FieldElement) -> Result<bool> {
        Ok(self.try_sub(o)?.is_zero())
    }

    /// Cancels what trial division can cancel. Rationals are untouched.
    pub fn reduced(self) -> FieldElement {
        match self {
            FieldElement::Function(mut f) => {
                f.reduce();
                FieldElement::Function(f).collapse()
            }
            r => r,
        }
    }
}

/// Exact equality of two elements; fails on mismatched symbol tables.
pub fn element_equal(a: &FieldElement, b: &FieldElement) -> Result<bool> {
    a.equal(b)
}

impl PartialEq for FieldElement {
    /// Panics if the two elements use different symbol tables.
    fn eq(&self, o: &FieldElement) -> bool {
        self.equal(o).expect("comparison across symbol tables")
    }
}

impl From<BigRational> for FieldElement {
    fn from(r: BigRational) -> Self {
        FieldElement::Rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.$f(o).expect(concat!("field ", stringify!($m)))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}

// The operator forms panic on misuse (mixed tables, division by zero);
// the `try_*` methods report it instead.
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::element_text(self))
    }
}
