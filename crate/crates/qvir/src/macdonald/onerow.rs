//! One-row Macdonald polynomials in three variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffield::FieldElement;
use crate::error::Result;
use crate::qkit::qpoch;

/// A homogeneous polynomial in x1, x2, x3 keyed by exponent triples.
#[derive(Clone, Debug)]
pub struct SymmetricPolynomial3 {
    degree: u32,
    coeffs: BTreeMap<[u32; 3], FieldElement>,
}

impl SymmetricPolynomial3 {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<[u32; 3], FieldElement> {
        &self.coeffs
    }

    pub fn get(&self, e: [u32; 3]) -> FieldElement {
        self.coeffs.get(&e).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn set(&mut self, e: [u32; 3], c: FieldElement) {
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    /// Invariant under every permutation of the three variables.
    pub fn is_symmetric(&self) -> Result<bool> {
        const PERMS: [[usize; 3]; 5] = [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for (e, c) in &self.coeffs {
            for p in PERMS {
                if !self.get([e[p[0]], e[p[1]], e[p[2]]]).equal(c)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SymmetricPolynomial3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{k}", i + 1)?,
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// P_[r,0,0]: the z^r coefficient of ∏ φ(t·x_i·z)/φ(x_i·z), scaled so that
/// x1^r has coefficient 1.
pub fn macdonald_onerow(r: u32, q: &FieldElement, t: &FieldElement) -> Result<SymmetricPolynomial3> {
    let ratio = |n: u32| -> Result<FieldElement> { qpoch(t, n as i64, q)?.try_div(&qpoch(q, n as i64, q)?) };
    let w: Vec<FieldElement> = (0..=r).map(ratio).collect::<Result<_>>()?;
    let norm = w[r as usize].inv()?;
    let mut p = SymmetricPolynomial3 { degree: r, coeffs: BTreeMap::new() };
    for a in 0..=r {
        for b in 0..=r - a {
            let c = r - a - b;
            p.set([a, b, c], &w[a as usize] * &w[b as usize] * &w[c as usize] * &norm);
        }
    }
    Ok(p)
}
