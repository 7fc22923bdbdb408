use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::partition::Partition;
use crate::coeffield::FieldElement;
use crate::error::Result;
use crate::series::PowerCache;

/// Exponents (a, b) with N_{λ,η}(z) = ∏ (1 − z·q^a·t^b).
pub fn box_exponents(lam: &Partition, eta: &Partition) -> Vec<(i32, i32)> {
    let lt = lam.transpose();
    let et = eta.transpose();
    let mut out = Vec::with_capacity((lam.size() + eta.size()) as usize);
    for (i, j) in lam.boxes() {
        out.push((
            lam.part(i) as i32 - j as i32,
            et.part(j) as i32 - i as i32 + 1,
        ));
    }
    for (i, j) in eta.boxes() {
        out.push((
            -(eta.part(i) as i32) + j as i32 - 1,
            -(lt.part(j) as i32) + i as i32,
        ));
    }
    out
}

/// Memo of box exponents per diagram pair, safe to share across threads.
#[derive(Default)]
pub struct FactorMemo {
    map: RwLock<HashMap<(Partition, Partition), Arc<Vec<(i32, i32)>>>>,
}

impl FactorMemo {
    pub fn get(&self, lam: &Partition, eta: &Partition) -> Arc<Vec<(i32, i32)>> {
        let key = (lam.clone(), eta.clone());
        if let Some(v) = self.map.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = Arc::new(box_exponents(lam, eta));
        self.map.write().expect("memo lock").entry(key).or_insert(v).clone()
    }
}

/// Cached q^a·t^b.
pub struct QtPowers {
    q: PowerCache,
    t: PowerCache,
    both: RwLock<HashMap<(i32, i32), FieldElement>>,
}

impl QtPowers {
    pub fn new(q: &FieldElement, t: &FieldElement) -> Result<QtPowers> {
        Ok(QtPowers { q: PowerCache::new(q)?, t: PowerCache::new(t)?, both: Default::default() })
    }

    pub fn get(&self, a: i32, b: i32) -> Result<FieldElement> {
        if let Some(v) = self.both.read().expect("power lock").get(&(a, b)) {
            return Ok(v.clone());
        }
        let v = self.q.get(a as i64)? * self.t.get(b as i64)?;
        self.both.write().expect("power lock").insert((a, b), v.clone());
        Ok(v)
    }
}

/// N_{λ,η}(z) = ∏_{(i,j)∈λ}(1 − z q^{λ_i−j} t^{η'_j−i+1}) ∏_{(i,j)∈η}(1 − z q^{−η_i+j−1} t^{−λ'_j+i}).
pub fn nekrasov_factor(
    lam: &Partition,
    eta: &Partition,
    z: &FieldElement,
    q: &FieldElement,
    t: &FieldElement,
) -> Result<FieldElement> {
    let pw = QtPowers::new(q, t)?;
    let mut r = FieldElement::one();
    for (a, b) in box_exponents(lam, eta) {
        r = r * (FieldElement::one() - z * pw.get(a, b)?);
    }
    Ok(r)
}
