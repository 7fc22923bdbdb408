//! Truncated Laurent series in (Λ, x).
//!
//! Each [`BiSeries`] carries a [`Region`]: the part of the (dΛ, dx) plane
//! where its coefficients are exact. Arithmetic derives the output region
//! from the inputs, so nothing outside what is determined is ever reported.

mod region;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};

pub use region::{DegreeWindow, Region, UNBOUNDED};

/// c·Λ^dl·x^dx, used as the argument of φ and Φ.
#[derive(Clone, Debug)]
pub struct MonomialArg {
    pub coeff: FieldElement,
    pub dl: i32,
    pub dx: i32,
}

impl MonomialArg {
    pub fn new(coeff: FieldElement, dl: i32, dx: i32) -> MonomialArg {
        MonomialArg { coeff, dl, dx }
    }

    /// Same monomial with the coefficient multiplied by `k`.
    pub fn scaled(&self, k: &FieldElement) -> MonomialArg {
        MonomialArg { coeff: &self.coeff * k, dl: self.dl, dx: self.dx }
    }
}

/// First disagreement found by [`series_equal`].
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub dl: i32,
    pub dx: i32,
    pub left: FieldElement,
    pub right: FieldElement,
}

#[derive(Clone, Debug)]
pub struct BiSeries {
    region: Region,
    terms: BTreeMap<(i32, i32), FieldElement>,
}

/// Sum of a list of elements, cancelling once at the end.
pub(crate) fn sum_elements<I: IntoIterator<Item = FieldElement>>(it: I) -> FieldElement {
    let mut acc = FieldElement::zero();
    for e in it {
        acc = acc + e;
    }
    acc
}

impl BiSeries {
    /// Builds a series, dropping zeros and anything the region does not know.
    pub fn new(region: Region, terms: BTreeMap<(i32, i32), FieldElement>) -> BiSeries {
        let terms = terms
            .into_iter()
            .filter(|((l, x), c)| {
                debug_assert!(
                    c.is_zero() || region.in_support(*l, *x) || !region.known(*l, *x),
                    "term ({l}, {x}) below the declared support {region}"
                );
                !c.is_zero() && region.known(*l, *x)
            })
            .collect();
        BiSeries { region, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, i32), FieldElement)>>(
        region: Region,
        it: I,
    ) -> BiSeries {
        BiSeries::new(region, it.into_iter().collect())
    }

    /// Fills every key of a bounded region from `f`, in parallel.
    pub fn from_fn<F>(region: Region, f: F) -> Result<BiSeries>
    where
        F: Fn(i32, i32) -> Result<FieldElement> + Sync,
    {
        let keys = region.keys();
        let vals: Vec<Result<FieldElement>> = keys.par_iter().map(|&(l, x)| f(l, x)).collect();
        let mut terms = BTreeMap::new();
        for (k, v) in keys.into_iter().zip(vals) {
            terms.insert(k, v?);
        }
        Ok(BiSeries::new(region, terms))
    }

    pub fn zero(region: Region) -> BiSeries {
        BiSeries { region, terms: BTreeMap::new() }
    }

    /// The constant `c` on a region anchored at the origin.
    pub fn constant(c: FieldElement, depth: i32, lend: i32, hend: i32) -> BiSeries {
        BiSeries::from_terms(Region::anchored(depth, lend, hend), [((0, 0), c)])
    }

    pub fn one_on(region: Region) -> BiSeries {
        let r = Region { lmin: 0, hmin: 0, ..region };
        BiSeries::from_terms(r, [((0, 0), FieldElement::one())])
    }

    /// Exact monomial c·Λ^l·x^x with no upper edge.
    pub fn monomial(c: FieldElement, l: i32, x: i32) -> BiSeries {
        BiSeries::from_terms(Region::point(l, x, 1), [((l, x), c)])
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn terms(&self) -> &BTreeMap<(i32, i32), FieldElement> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at (dl, dx); an error if the region does not determine it.
    pub fn get(&self, dl: i32, dx: i32) -> Result<FieldElement> {
        if !self.region.known(dl, dx) {
            return Err(Error::OutOfWindow(dl, dx));
        }
        Ok(self.terms.get(&(dl, dx)).cloned().unwrap_or_else(FieldElement::zero))
    }

    fn coeff_or_zero(&self, key: &(i32, i32)) -> Option<&FieldElement> {
        self.terms.get(key)
    }

    /// Replaces the region by a narrower one.
    pub fn restricted(&self, region: Region) -> BiSeries {
        let r = self.region.capped(&region);
        BiSeries::new(r, self.terms.clone())
    }

    /// Same coefficients described with a larger depth.
    pub fn deepened(&self, depth: i32) -> BiSeries {
        BiSeries { region: self.region.deepen(depth), terms: self.terms.clone() }
    }

    pub fn mul(&self, o: &BiSeries) -> Result<BiSeries> {
        let region = self.region.product(&o.region);
        if !region.is_bounded() {
            // two exact polynomials: plain convolution
            let mut acc: BTreeMap<(i32, i32), Vec<FieldElement>> = BTreeMap::new();
            for ((l1, x1), a) in &self.terms {
                for ((l2, x2), b) in &o.terms {
                    acc.entry((l1 + l2, x1 + x2)).or_default().push(a * b);
                }
            }
            return Ok(BiSeries::new(
                region,
                acc.into_iter().map(|(k, v)| (k, sum_elements(v))).collect(),
            ));
        }
        if region.lend < region.lmin || region.hend < region.hmin {
            return Ok(BiSeries::zero(region));
        }
        let (a, b) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let d = region.depth;
        let keys = region.keys();
        let vals: Vec<FieldElement> = keys
            .par_iter()
            .map(|&(l, x)| {
                let h = x + d * l;
                let mut parts = Vec::new();
                for ((l1, x1), c1) in a.terms.range((i32::MIN, i32::MIN)..=(l, i32::MAX)) {
                    let h1 = x1 + d * l1;
                    if h1 > h {
                        continue;
                    }
                    if let Some(c2) = b.coeff_or_zero(&(l - l1, x - x1)) {
                        parts.push(c1 * c2);
                    }
                }
                sum_elements(parts)
            })
            .collect();
        Ok(BiSeries::new(region, keys.into_iter().zip(vals).collect()))
    }

    pub fn add(&self, o: &BiSeries) -> BiSeries {
        let region = self.region.sum(&o.region);
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            match terms.get_mut(k) {
                Some(v) => *v = &*v + c,
                None => {
                    terms.insert(*k, c.clone());
                }
            }
        }
        BiSeries::new(region, terms)
    }

    pub fn neg(&self) -> BiSeries {
        BiSeries {
            region: self.region,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &BiSeries) -> BiSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &FieldElement) -> BiSeries {
        BiSeries::new(self.region, self.terms.iter().map(|(key, c)| (*key, c * k)).collect())
    }

    /// Multiplies by the monomial Λ^j·x^k.
    pub fn shift(&self, j: i32, k: i32) -> BiSeries {
        BiSeries {
            region: self.region.shifted(j, k),
            terms: self.terms.iter().map(|((l, x), c)| ((l + j, x + k), c.clone())).collect(),
        }
    }

    /// Applies `f(dl, dx, coeff)` to every stored coefficient, in parallel.
    pub fn map_coeffs<F>(&self, f: F) -> Result<BiSeries>
    where
        F: Fn(i32, i32, &FieldElement) -> Result<FieldElement> + Sync,
    {
        let entries: Vec<(&(i32, i32), &FieldElement)> = self.terms.iter().collect();
        let vals: Vec<Result<FieldElement>> =
            entries.par_iter().map(|((l, x), c)| f(*l, *x, c)).collect();
        let mut terms = BTreeMap::new();
        for ((k, _), v) in entries.into_iter().zip(vals) {
            terms.insert(*k, v?);
        }
        Ok(BiSeries::new(self.region, terms))
    }

    /// f(cL·Λ, cx·x): coefficient (l, x) times cL^l·cx^x.
    pub fn rescale(&self, cl: &FieldElement, cx: &FieldElement) -> Result<BiSeries> {
        let lpow = PowerCache::new(cl)?;
        let xpow = PowerCache::new(cx)?;
        self.map_coeffs(|l, x, c| Ok(c * lpow.get(l as i64)? * xpow.get(x as i64)?))
    }

    /// Multiplicative inverse; requires a nonzero constant term and a
    /// region anchored at the origin.
    pub fn inverse(&self) -> Result<BiSeries> {
        let r = self.region;
        let c0 = self.terms.get(&(0, 0)).cloned().unwrap_or_else(FieldElement::zero);
        if c0.is_zero() || r.lmin != 0 || r.hmin != 0 {
            return Err(Error::NonInvertible);
        }
        if !r.is_bounded() {
            return Err(Error::Usage("inverse of an exact polynomial needs a region".into()));
        }
        let inv0 = c0.inv()?;
        let d = r.depth;
        let mut levels: BTreeMap<i32, Vec<(i32, i32)>> = BTreeMap::new();
        for (l, x) in r.keys() {
            levels.entry(l + x + d * l).or_default().push((l, x));
        }
        let rest: Vec<(&(i32, i32), &FieldElement)> =
            self.terms.iter().filter(|(k, _)| **k != (0, 0)).collect();
        let mut out: BTreeMap<(i32, i32), FieldElement> = BTreeMap::new();
        for (lev, keys) in levels {
            if lev == 0 {
                out.insert((0, 0), inv0.clone());
                continue;
            }
            let vals: Vec<FieldElement> = keys
                .par_iter()
                .map(|&(l, x)| {
                    let parts = rest.iter().filter_map(|((l1, x1), c1)| {
                        out.get(&(l - l1, x - x1)).map(|g| *c1 * g)
                    });
                    -(sum_elements(parts.collect::<Vec<_>>()) * &inv0)
                })
                .collect();
            for (k, v) in keys.into_iter().zip(vals) {
                if !v.is_zero() {
                    out.insert(k, v);
                }
            }
        }
        Ok(BiSeries::new(r, out))
    }

    /// Sorted (dl, dx, canonical text) triples.
    pub fn entries(&self) -> Vec<(i32, i32, String)> {
        self.terms.iter().map(|((l, x), c)| (*l, *x, c.to_string())).collect()
    }

    /// All nonzero coefficients inside `w`.
    pub fn in_window(&self, w: &DegreeWindow) -> impl Iterator<Item = (&(i32, i32), &FieldElement)> {
        let w = *w;
        self.terms.iter().filter(move |((l, x), _)| w.contains(*l, *x))
    }
}

/// Integer powers of one element, computed on demand.
pub struct PowerCache {
    base: FieldElement,
    inv: Option<FieldElement>,
    cache: std::sync::Mutex<BTreeMap<i64, FieldElement>>,
}

impl PowerCache {
    pub fn new(base: &FieldElement) -> Result<PowerCache> {
        let inv = if base.is_zero() { None } else { Some(base.inv()?) };
        Ok(PowerCache { base: base.clone(), inv, cache: Default::default() })
    }

    pub fn get(&self, k: i64) -> Result<FieldElement> {
        if k == 0 {
            return Ok(FieldElement::one());
        }
        if let Some(v) = self.cache.lock().expect("power cache").get(&k) {
            return Ok(v.clone());
        }
        let v = if k > 0 {
            self.base.pow(k)?
        } else {
            self.inv
                .as_ref()
                .ok_or_else(|| Error::Domain("negative power of zero".into()))?
                .pow(-k)?
        };
        self.cache.lock().expect("power cache").insert(k, v.clone());
        Ok(v)
    }
}

/// Coefficient of (dl, dx); errors outside the determined region.
pub fn series_extract(a: &BiSeries, dl: i32, dx: i32) -> Result<FieldElement> {
    a.get(dl, dx)
}

/// Compares two series on `w`; `Ok(None)` means equal there.
pub fn series_equal(a: &BiSeries, b: &BiSeries, w: &DegreeWindow) -> Result<Option<Mismatch>> {
    for (name, s) in [("left", a), ("right", b)] {
        if !s.region().certifies(w) {
            return Err(Error::Usage(format!(
                "window {w} is not contained in the {name} operand's region {}",
                s.region()
            )));
        }
    }
    let mut keys: Vec<(i32, i32)> =
        a.in_window(w).map(|(k, _)| *k).chain(b.in_window(w).map(|(k, _)| *k)).collect();
    keys.sort_unstable();
    keys.dedup();
    for (l, x) in keys {
        let (p, q) = (a.get(l, x)?, b.get(l, x)?);
        if !p.equal(&q)? {
            return Ok(Some(Mismatch { dl: l, dx: x, left: p, right: q }));
        }
    }
    Ok(None)
}

/// Outcome of comparing two sides of an identity.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub pass: bool,
    pub requested: DegreeWindow,
    pub certified: DegreeWindow,
    pub mismatch: Option<Mismatch>,
    /// Coefficients that were nonzero on at least one side.
    pub compared: usize,
    pub notes: Vec<String>,
}

impl Verdict {
    /// Compares `lhs` and `rhs` on `requested`, which both must determine.
    pub fn compare(lhs: &BiSeries, rhs: &BiSeries, requested: &DegreeWindow) -> Result<Verdict> {
        let common = lhs.region().sum(rhs.region());
        if !common.certifies(requested) {
            return Err(Error::WindowUnderflow(format!(
                "requested {requested} but only {} is determined ({common})",
                common.certified_window(requested.xmin)
            )));
        }
        let mut keys: Vec<(i32, i32)> = lhs
            .in_window(requested)
            .map(|(k, _)| *k)
            .chain(rhs.in_window(requested).map(|(k, _)| *k))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let mismatch = series_equal(lhs, rhs, requested)?;
        Ok(Verdict {
            pass: mismatch.is_none(),
            requested: *requested,
            certified: common.certified_window(requested.xmin),
            mismatch,
            compared: keys.len(),
            notes: Vec::new(),
        })
    }

    /// A verdict for checks that are not series comparisons.
    pub fn plain(pass: bool, window: DegreeWindow, compared: usize) -> Verdict {
        Verdict {
            pass,
            requested: window,
            certified: window,
            mismatch: None,
            compared,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.notes.push(note.into());
        self
    }

    /// All of `parts` must pass; the first failure is kept.
    pub fn all(window: DegreeWindow, parts: Vec<Verdict>) -> Verdict {
        let mut out = Verdict::plain(true, window, 0);
        for p in parts {
            out.compared += p.compared;
            out.notes.extend(p.notes);
            if !p.pass && out.pass {
                out.pass = false;
                out.mismatch = p.mismatch;
                out.certified = p.certified;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn poly(lend: i32, hend: i32, terms: &[((i32, i32), i64)]) -> BiSeries {
        BiSeries::from_terms(
            Region::anchored(1, lend, hend),
            terms.iter().map(|(k, c)| (*k, fe(*c))),
        )
    }

    #[test]
    fn product_of_binomials() {
        let a = poly(2, 4, &[((0, 0), 1), ((1, 0), 1)]);
        let b = poly(2, 4, &[((0, 0), 1), ((1, 0), -1)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.get(0, 0).unwrap(), fe(1));
        assert_eq!(p.get(1, 0).unwrap(), fe(0));
        assert_eq!(p.get(2, 0).unwrap(), fe(-1));
    }

    #[test]
    fn x_times_lambda_over_x() {
        let x = BiSeries::monomial(fe(1), 0, 1);
        let y = BiSeries::monomial(fe(1), 1, -1);
        let p = x.mul(&y).unwrap();
        assert_eq!(p.get(1, 0).unwrap(), fe(1));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn geometric_inverse() {
        let a = poly(3, 3, &[((0, 0), 1), ((1, 0), -1)]);
        let inv = a.inverse().unwrap();
        for l in 0..=3 {
            assert_eq!(inv.get(l, 0).unwrap(), fe(1));
        }
        let y = poly(3, 3, &[((0, 0), 1), ((1, -1), -5)]);
        let yi = y.inverse().unwrap();
        assert_eq!(yi.get(3, -3).unwrap(), fe(125));
        let one = y.mul(&yi).unwrap();
        assert_eq!(one.len(), 1);
        assert!(matches!(poly(1, 1, &[((1, 0), 1)]).inverse(), Err(Error::NonInvertible)));
    }

    #[test]
    fn extraction_and_window() {
        let a = poly(1, 2, &[((0, 0), 1), ((1, 1), 3)]);
        assert_eq!(series_extract(&a, 1, 1).unwrap(), fe(3));
        assert_eq!(series_extract(&a, 0, 0).unwrap(), fe(1));
        assert!(matches!(series_extract(&a, 2, 0), Err(Error::OutOfWindow(2, 0))));
        // below the support is known to vanish
        assert_eq!(series_extract(&a, 0, -4).unwrap(), fe(0));
    }

    #[test]
    fn equality_on_windows() {
        let a = poly(1, 1, &[((0, 0), 1), ((1, 0), 1)]);
        let b = poly(1, 1, &[((0, 0), 1)]);
        assert!(series_equal(&a, &b, &DegreeWindow::new(0, 0, 0)).unwrap().is_none());
        let m = series_equal(&a, &b, &DegreeWindow::new(1, 0, 0)).unwrap().unwrap();
        assert_eq!((m.dl, m.dx), (1, 0));
        assert!(series_equal(&a, &b, &DegreeWindow::new(2, 0, 0)).is_err());
    }

    #[test]
    fn rescale_bookkeeping() {
        let y = poly(2, 2, &[((1, -1), 1)]);
        let r = y.rescale(&fe(3), &FieldElement::ratio(1, 2)).unwrap();
        assert_eq!(r.get(1, -1).unwrap(), fe(6));
    }

    #[test]
    fn region_product_with_low_monomial() {
        // x^-3 times a depth-1 series keeps the series' relative reach
        let k = poly(2, 4, &[((0, 0), 1), ((0, 1), 1), ((1, -1), 1)]);
        let m = BiSeries::monomial(fe(1), 0, -3);
        let p = k.mul(&m).unwrap();
        assert_eq!(p.region().hend, 1);
        assert_eq!(p.get(0, -2).unwrap(), fe(1));
        assert!(p.get(0, 2).is_err());
    }
}
