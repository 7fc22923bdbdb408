//! Parameter points: values for u, s, Q, T1..T4, phi1, phi2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::FieldElement;
use super::symbols::SymbolTable;
use super::text::make_element;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    U,
    S,
    Q,
    T1,
    T2,
    T3,
    T4,
    Phi1,
    Phi2,
}

impl Param {
    pub const ALL: [Param; 9] = [
        Param::U,
        Param::S,
        Param::Q,
        Param::T1,
        Param::T2,
        Param::T3,
        Param::T4,
        Param::Phi1,
        Param::Phi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::U => "u",
            Param::S => "s",
            Param::Q => "Q",
            Param::T1 => "T1",
            Param::T2 => "T2",
            Param::T3 => "T3",
            Param::T4 => "T4",
            Param::Phi1 => "phi1",
            Param::Phi2 => "phi2",
        }
    }

    pub fn t(i: usize) -> Param {
        [Param::T1, Param::T2, Param::T3, Param::T4][i]
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Param> {
        Param::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown parameter {s}")))
    }
}

/// An assignment of the model parameters to field elements.
///
/// Numeric points hold rationals only; symbolic points carry a symbol
/// table and some parameters equal to its generators. Extra symbol values
/// (for `z`, `a`, ...) can be attached for evaluation.
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct ParamPoint {
    table: Option<Arc<SymbolTable>>,
    values: BTreeMap<Param, FieldElement>,
    symbol_values: BTreeMap<String, BigRational>,
}

fn check_generator(p: Param, r: &BigRational) -> Result<()> {
    if matches!(p, Param::U | Param::S) && (r.is_zero() || r.abs().is_one()) {
        return Err(Error::Usage(format!("{p} must avoid 0 and ±1, got {r}")));
    }
    Ok(())
}

impl ParamPoint {
    /// A numeric point. `u` and `s` are required.
    pub fn numeric(pairs: &[(Param, BigRational)]) -> Result<ParamPoint> {
        let mut pt =
            ParamPoint { table: None, values: BTreeMap::new(), symbol_values: BTreeMap::new() };
        for (p, r) in pairs {
            check_generator(*p, r)?;
            pt.values.insert(*p, FieldElement::Rational(r.clone()));
            pt.symbol_values.insert(p.name().to_string(), r.clone());
        }
        for p in [Param::U, Param::S] {
            if !pt.values.contains_key(&p) {
                return Err(Error::Usage(format!("numeric point needs {p}")));
            }
        }
        Ok(pt)
    }

    /// Parses `u=2/5,s=3/7,Q=5/3,...`.
    pub fn parse_numeric(text: &str) -> Result<ParamPoint> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expected key=value, got {item}")))?;
            let p: Param = k.trim().parse()?;
            let val = make_element(v.trim(), None)?;
            let r = val
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::Usage(format!("{k} must be a rational number, got {v}")))?;
            pairs.push((p, r));
        }
        ParamPoint::numeric(&pairs)
    }

    /// A symbolic point: each parameter in `free` becomes the table symbol of
    /// the same name.
    pub fn symbolic(table: Arc<SymbolTable>, free: &[Param]) -> Result<ParamPoint> {
        let mut values = BTreeMap::new();
        for p in free {
            values.insert(*p, FieldElement::symbol(&table, p.name())?);
        }
        Ok(ParamPoint { table: Some(table), values, symbol_values: BTreeMap::new() })
    }

    /// Random numeric point with small-height values; u and s avoid 0, ±1.
    pub fn random(seed: u64, params: &[Param]) -> ParamPoint {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(Param, BigRational)> = params.iter().map(|&p| (p, small_rational(&mut rng))).collect();
        ParamPoint::numeric(&pairs).expect("values chosen valid")
    }

    pub fn table(&self) -> Option<&Arc<SymbolTable>> {
        self.table.as_ref()
    }

    pub fn is_symbolic(&self) -> bool {
        self.table.is_some()
    }

    /// Sets a parameter to any element.
    pub fn with(mut self, p: Param, value: FieldElement) -> ParamPoint {
        if let FieldElement::Rational(r) = &value {
            self.symbol_values.insert(p.name().to_string(), r.clone());
        } else {
            self.symbol_values.remove(p.name());
        }
        self.values.insert(p, value);
        self
    }

    /// Attaches a rational value for a table symbol, used by evaluation.
    pub fn with_symbol_value(mut self, name: &str, r: BigRational) -> ParamPoint {
        self.symbol_values.insert(name.to_string(), r);
        self
    }

    pub fn symbol_values(&self) -> &BTreeMap<String, BigRational> {
        &self.symbol_values
    }

    pub fn get(&self, p: Param) -> Result<&FieldElement> {
        self.values
            .get(&p)
            .ok_or_else(|| Error::Usage(format!("parameter {p} is not set")))
    }

    pub fn has(&self, p: Param) -> bool {
        self.values.contains_key(&p)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Param, &FieldElement)> {
        self.values.iter().map(|(p, v)| (*p, v))
    }

    pub fn u(&self) -> Result<&FieldElement> {
        self.get(Param::U)
    }

    pub fn s(&self) -> Result<&FieldElement> {
        self.get(Param::S)
    }

    pub fn big_q(&self) -> Result<&FieldElement> {
        self.get(Param::Q)
    }

    /// q = u².
    pub fn q(&self) -> Result<FieldElement> {
        let u = self.u()?;
        Ok(u * u)
    }

    /// t = s².
    pub fn t(&self) -> Result<FieldElement> {
        let s = self.s()?;
        Ok(s * s)
    }

    /// v = u/s = q^{1/2} t^{-1/2}.
    pub fn v(&self) -> Result<FieldElement> {
        Ok(self.u()? / self.s()?)
    }

    /// w = v·φ1.
    pub fn w(&self) -> Result<FieldElement> {
        Ok(self.v()? * self.get(Param::Phi1)?)
    }

    /// Coefficient of x in p1 = v⁻²T2φ2·x.
    pub fn p1(&self) -> Result<FieldElement> {
        let v = self.v()?;
        Ok(self.get(Param::T2)? * self.get(Param::Phi2)? / (&v * &v))
    }

    /// Coefficient of Λ/x in p2 = v⁻²T4/φ1·Λ/x.
    pub fn p2(&self) -> Result<FieldElement> {
        let v = self.v()?;
        Ok(self.get(Param::T4)? / self.get(Param::Phi1)? / (&v * &v))
    }

    /// n_1 = 1, n_2 = Q (a ∈ {1, 2}).
    pub fn n(&self, a: usize) -> Result<FieldElement> {
        match a {
            1 => Ok(FieldElement::one()),
            2 => Ok(self.big_q()?.clone()),
            _ => Err(Error::Usage(format!("index {a} out of range"))),
        }
    }

    /// m_1 = 1, m_2 = φ1φ2Q.
    pub fn m(&self, a: usize) -> Result<FieldElement> {
        match a {
            1 => Ok(FieldElement::one()),
            2 => Ok(self.get(Param::Phi1)? * self.get(Param::Phi2)? * self.big_q()?),
            _ => Err(Error::Usage(format!("index {a} out of range"))),
        }
    }

    /// f⁺_1 = T1·Q, f⁺_2 = 1/T2.
    pub fn f_plus(&self, a: usize) -> Result<FieldElement> {
        match a {
            1 => Ok(self.get(Param::T1)? * self.big_q()?),
            2 => self.get(Param::T2)?.inv(),
            _ => Err(Error::Usage(format!("index {a} out of range"))),
        }
    }

    /// f⁻_1 = 1/T3, f⁻_2 = T4·φ1φ2Q.
    pub fn f_minus(&self, a: usize) -> Result<FieldElement> {
        match a {
            1 => self.get(Param::T3)?.inv(),
            2 => Ok(self.get(Param::T4)? * self.m(2)?),
            _ => Err(Error::Usage(format!("index {a} out of range"))),
        }
    }

    /// Higgsing: φ1 = t/v, φ2 = v.
    pub fn higgsed(&self) -> Result<ParamPoint> {
        let t = self.t()?;
        let v = self.v()?;
        Ok(self.clone().with(Param::Phi1, &t / &v).with(Param::Phi2, v))
    }

    /// The special point T = (v/t, 1/v, 1/v, v/t).
    pub fn special_point(&self) -> Result<ParamPoint> {
        let t = self.t()?;
        let v = self.v()?;
        let vt = &v / &t;
        let vi = v.inv()?;
        Ok(self
            .clone()
            .with(Param::T1, vt.clone())
            .with(Param::T2, vi.clone())
            .with(Param::T3, vi)
            .with(Param::T4, vt))
    }

    /// Symbol values indexed by position in `table`.
    pub fn assignment(&self, table: &SymbolTable) -> Vec<Option<BigRational>> {
        table.names().iter().map(|n| self.symbol_values.get(n).cloned()).collect()
    }

    /// `key=value` pairs of all rational-valued parameters, for reports.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.values.iter().map(|(p, v)| (p.name().to_string(), v.to_string())).collect()
    }
}

/// A nonzero rational with numerator and denominator at most 64 in size,
/// never ±1.
pub fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(1..=64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let d: i64 = rng.gen_range(1..=64);
        let r = BigRational::new(n.into(), d.into());
        if !r.abs().is_one() {
            return r;
        }
    }
}

/// Exact substitution of the point's rational symbol values.
pub fn element_eval(a: &FieldElement, point: &ParamPoint) -> Result<FieldElement> {
    match a {
        FieldElement::Rational(_) => Ok(a.clone()),
        FieldElement::Function(f) => {
            let vals = point.assignment(f.table());
            Ok(FieldElement::Rational(f.eval(&vals)?))
        }
    }
}

