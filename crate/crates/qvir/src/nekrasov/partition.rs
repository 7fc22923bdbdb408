use std::fmt;

use crate::error::{Error, Result};

/// A Young diagram: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Usage(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// The one-row diagram [n] (empty for n = 0).
    pub fn row(n: u32) -> Partition {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// λ_i for 1-based i, zero past the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.part(1);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Boxes (i, j), 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

fn fill(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    for k in (1..=n.min(max)).rev() {
        prefix.push(k);
        fill(n - k, k, prefix, out);
        prefix.pop();
    }
}

/// All partitions of n, largest first part first.
pub fn partitions_of(n: i64) -> Result<Vec<Partition>> {
    if n < 0 {
        return Err(Error::Usage(format!("cannot partition {n}")));
    }
    let mut out = Vec::new();
    fill(n as u32, n as u32, &mut Vec::new(), &mut out);
    Ok(out)
}

/// All partitions of size ≤ n, by size.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(|k| partitions_of(k as i64).expect("nonnegative")).collect()
}

/// Ordered pairs (λ, η) with |λ| + |η| ≤ n.
pub fn partition_pairs_up_to(n: u32) -> Vec<(Partition, Partition)> {
    let all = partitions_up_to(n);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if a.size() + b.size() <= n {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(partitions_of(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(2).unwrap(),
            vec![Partition(vec![2]), Partition(vec![1, 1])]
        );
        assert_eq!(partitions_of(4).unwrap().len(), 5);
        assert!(partitions_of(-1).is_err());
    }

    #[test]
    fn transpose_and_boxes() {
        let l = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(l.transpose().parts(), &[2, 1, 1]);
        assert_eq!(l.boxes().count(), 4);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
