//! Canonical text form and the expression parser.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::element::FieldElement;
use super::poly::{Monomial, Poly};
use super::symbols::SymbolTable;
use crate::error::{Error, Result};

fn rational_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_text(m: &Monomial, table: &SymbolTable) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = &table.names()[i];
        if e == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Terms printed from the largest monomial down.
pub fn poly_text(p: &Poly, table: &SymbolTable) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().iter().rev().enumerate() {
        let body = if m.is_one() {
            rational_text(&c.abs())
        } else if c.abs().is_one() {
            monomial_text(m, table)
        } else {
            format!("{}*{}", rational_text(&c.abs()), monomial_text(m, table))
        };
        if c.is_negative() {
            s.push('-');
        } else if k > 0 {
            s.push('+');
        }
        s.push_str(&body);
    }
    s
}

/// Rewrites `num/den` with integer coefficients, nonnegative exponents and
/// a primitive denominator with positive leading coefficient.
pub fn integral_pair(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let shift = num.min_exponents().meet(&den.min_exponents()).meet(&Monomial::ONE);
    let inv = shift.inv();
    let one = BigRational::one();
    let mut n = num.mul_term(&inv, &one);
    let mut d = den.mul_term(&inv, &one);
    let mut l = BigInt::one();
    for (_, c) in n.terms().iter().chain(d.terms()) {
        l = l.lcm(c.denom());
    }
    let lr = BigRational::from_integer(l);
    n = n.scale(&lr);
    d = d.scale(&lr);
    let mut g = BigInt::zero();
    for (_, c) in n.terms().iter().chain(d.terms()) {
        g = g.gcd(c.numer());
    }
    let mut gr = BigRational::from_integer(g);
    if d.has_negative_lead() {
        gr = -gr;
    }
    let ginv = gr.recip();
    (n.scale(&ginv), d.scale(&ginv))
}

/// The canonical text of an element.
pub fn element_text(e: &FieldElement) -> String {
    match e {
        FieldElement::Rational(r) => rational_text(r),
        FieldElement::Function(f) => {
            let (n, d) = integral_pair(f.numerator(), &f.denominator());
            let table = f.table();
            if d.is_one() {
                poly_text(&n, table)
            } else {
                format!("({})/({})", poly_text(&n, table), poly_text(&d, table))
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: Option<&'a Arc<SymbolTable>>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.try_mul(&self.unary()?)?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Domain("division by zero in expression".into()));
                    }
                    acc = acc.try_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.integer()?;
        if paren {
            if self.peek() != Some(b')') {
                return self.err("expected ')' after exponent");
            }
            self.pos += 1;
        }
        let n: i64 = match i64::try_from(n) {
            Ok(v) if v <= 100_000 => v,
            _ => return self.err("exponent too large"),
        };
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            if e < 0 && base.is_zero() {
                return Err(Error::Domain("negative power of zero".into()));
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(FieldElement::Rational(BigRational::from_integer(self.integer()?)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.table {
                    Some(t) if t.index(name).is_some() => FieldElement::symbol(t, name),
                    _ => {
                        self.pos = start;
                        self.err(&format!("unknown symbol {name}"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an arithmetic expression over integers and the table's symbols.
pub fn make_element(text: &str, table: Option<&Arc<SymbolTable>>) -> Result<FieldElement> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, table };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}
