//! γ̂, the q-shifts p̂ and x̂, and composable pipelines of them.

use std::sync::Arc;

use crate::coeffield::FieldElement;
use crate::error::Result;
use crate::series::{BiSeries, DegreeWindow, PowerCache, Region, Verdict};

/// γ̂^{±1}: coefficient (l, x) times q^{±x(x+1)/2}.
pub fn gamma_apply(f: &BiSeries, power: i32, q: &FieldElement) -> Result<BiSeries> {
    gamma_apply_shifted(f, power, 0, q)
}

/// γ̂ conjugated by x^k: weight q^{±(x+k)(x+k+1)/2}.
pub fn gamma_apply_shifted(f: &BiSeries, power: i32, k: i32, q: &FieldElement) -> Result<BiSeries> {
    let pw = PowerCache::new(q)?;
    f.map_coeffs(|_, x, c| {
        let n = (x + k) as i64;
        Ok(c * pw.get(power as i64 * n * (n + 1) / 2)?)
    })
}

/// p̂^k: f(Λ, x) ↦ f(Λ, q^k x).
pub fn pshift(f: &BiSeries, k: i32, q: &FieldElement) -> Result<BiSeries> {
    f.rescale(&FieldElement::one(), &q.pow(k as i64)?)
}

/// x̂: f(Λ, x) ↦ x·f(Λ, qx).
pub fn xhat(f: &BiSeries, q: &FieldElement) -> Result<BiSeries> {
    Ok(pshift(f, 1, q)?.shift(0, 1))
}

type Builder = Arc<dyn Fn(&Region) -> Result<BiSeries> + Send + Sync>;

/// One step of a [`SeriesOperator`].
#[derive(Clone)]
pub enum Primitive {
    /// Multiply by a series built on the input's region, so the product
    /// keeps that region.
    MultiplyBy(Builder),
    Gamma(i32),
    PShift(i32),
    XHat,
    Rescale(FieldElement, FieldElement),
}

/// A composition of primitives, written left to right as in the formulas
/// and applied right to left.
#[derive(Clone)]
pub struct SeriesOperator {
    q: FieldElement,
    steps: Vec<Primitive>,
}

impl SeriesOperator {
    pub fn new(q: &FieldElement) -> SeriesOperator {
        SeriesOperator { q: q.clone(), steps: Vec::new() }
    }

    pub fn then(mut self, p: Primitive) -> SeriesOperator {
        self.steps.push(p);
        self
    }

    pub fn multiply_by<F>(self, f: F) -> SeriesOperator
    where
        F: Fn(&Region) -> Result<BiSeries> + Send + Sync + 'static,
    {
        self.then(Primitive::MultiplyBy(Arc::new(f)))
    }

    /// The region the output is determined on, given the input's.
    pub fn region_map(&self, input: &Region) -> Region {
        let mut r = *input;
        for p in self.steps.iter().rev() {
            if let Primitive::XHat = p {
                r = r.shifted(0, 1);
            }
        }
        r
    }

    pub fn apply(&self, f: &BiSeries) -> Result<BiSeries> {
        let mut cur = f.clone();
        for p in self.steps.iter().rev() {
            cur = match p {
                Primitive::MultiplyBy(build) => {
                    let (lend, hend) = cur.region().relative_ends();
                    let k = build(&Region::anchored(cur.region().depth, lend, hend))?;
                    k.mul(&cur)?
                }
                Primitive::Gamma(s) => gamma_apply(&cur, *s, &self.q)?,
                Primitive::PShift(k) => pshift(&cur, *k, &self.q)?,
                Primitive::XHat => xhat(&cur, &self.q)?,
                Primitive::Rescale(a, b) => cur.rescale(a, b)?,
            };
        }
        Ok(cur)
    }
}

/// Checks p̂γ̂ = γ̂p̂ and γ̂x̂ = p̂x̂γ̂ on every monomial of `window`. With
/// `drop_pshift` the second relation is replaced by γ̂x̂ = x̂γ̂.
pub fn basic_shift_relations_check(
    window: &DegreeWindow,
    q: &FieldElement,
    drop_pshift: bool,
) -> Result<Verdict> {
    let g = Primitive::Gamma(1);
    let ops = |steps: &[Primitive]| {
        steps.iter().cloned().fold(SeriesOperator::new(q), |o, p| o.then(p))
    };
    let pairs = [
        (ops(&[Primitive::PShift(1), g.clone()]), ops(&[g.clone(), Primitive::PShift(1)])),
        (
            ops(&[g.clone(), Primitive::XHat]),
            if drop_pshift {
                ops(&[Primitive::XHat, g.clone()])
            } else {
                ops(&[Primitive::PShift(1), Primitive::XHat, g.clone()])
            },
        ),
    ];
    let mut parts = Vec::new();
    for l in 0..=window.lmax {
        for x in window.xmin..=window.xmax {
            let m = BiSeries::monomial(FieldElement::one(), l, x);
            for (a, b) in &pairs {
                let d = a.apply(&m)?.sub(&b.apply(&m)?);
                parts.push(Verdict::plain(d.is_empty(), *window, 1));
            }
        }
    }
    Ok(Verdict::all(*window, parts))
}
