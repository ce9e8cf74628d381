//! Integer partitions.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates and wraps a list of parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts.into_iter().map(i64::from).collect()));
        }
        Ok(Partition(parts))
    }

    /// Like [`Partition::new`] but accepts signed input, as parsed from JSON.
    pub fn from_signed(parts: &[i64]) -> Result<Self> {
        if parts.iter().any(|&p| p <= 0 || p > u32::MAX as i64) {
            return Err(Error::InvalidPartition(parts.to_vec()));
        }
        Self::new(parts.iter().map(|&p| p as u32).collect())
    }

    /// The single row `(k)`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    /// The single column `(1^k)`.
    pub fn column(k: u32) -> Self {
        Partition(vec![1; k as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` with 0-based `i`; zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `l(λ)`
    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// `|λ|`
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `κ(λ) = Σ λ_i(λ_i - 2i + 1)`, always even.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let l = l as i64;
                l * (l - 2 * (i as i64 + 1) + 1)
            })
            .sum()
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        Partition((1..=first).map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32).collect())
    }

    /// Hook lengths `h(i,j) = λ_i - i + λ'_j - j + 1`, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let t = self.conjugate();
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &li) in self.0.iter().enumerate() {
            for j in 0..li as usize {
                out.push(li - j as u32 + t.0[j] - i as u32 - 1);
            }
        }
        out
    }

    /// `λ_i ≥ μ_i` for all `i`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.length() <= self.length() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    /// All `μ ⊂ λ`, in weight order.
    pub fn sub_partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(lam: &[u32], i: usize, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if i >= lam.len() {
                return;
            }
            for p in 1..=bound.min(lam[i]) {
                cur.push(p);
                rec(lam, i + 1, p, cur, out);
                cur.pop();
            }
        }
        rec(&self.0, 0, u32::MAX, &mut cur, &mut out);
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.cmp(a)));
        out
    }

    /// The intersection `λ ∩ μ` of diagrams.
    pub fn intersection(&self, mu: &Partition) -> Partition {
        Partition(self.0.iter().zip(&mu.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<i64> = Vec::deserialize(d)?;
        Partition::from_signed(&raw).map_err(D::Error::custom)
    }
}

/// Partitions of a fixed weight in reverse lexicographic order.
#[derive(Clone, Debug)]
pub struct PartitionsOfWeight {
    next: Option<Vec<u32>>,
}

impl PartitionsOfWeight {
    pub fn new(n: u32) -> Self {
        PartitionsOfWeight { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
    }
}

impl Iterator for PartitionsOfWeight {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.next.take()?;
        // strip trailing ones, decrease the last larger part, refill greedily
        let mut p = cur.clone();
        let mut ones = 0;
        while p.last() == Some(&1) {
            p.pop();
            ones += 1;
        }
        if let Some(last) = p.pop() {
            let k = last - 1;
            let mut rem = ones + last;
            p.push(k);
            rem -= k;
            while rem > 0 {
                let take = rem.min(k);
                p.push(take);
                rem -= take;
            }
            self.next = Some(p);
        }
        Some(Partition(cur))
    }
}

/// Every partition with `|λ| ≤ weight_max`, grouped by increasing weight.
pub fn enumerate(weight_max: u32) -> impl Iterator<Item = Partition> + Clone {
    (0..=weight_max).flat_map(PartitionsOfWeight::new)
}

/// Partitions of exactly `n`.
pub fn of_weight(n: u32) -> PartitionsOfWeight {
    PartitionsOfWeight::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn statistics() {
        assert_eq!((p(&[2]).length(), p(&[2]).weight(), p(&[2]).kappa()), (1, 2, 2));
        assert_eq!(p(&[1, 1]).kappa(), -2);
        assert_eq!(Partition::empty().kappa(), 0);
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::row(5).conjugate(), Partition::column(5));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(p(&[2, 1]).hooks(), vec![3, 1, 1]);
        assert_eq!(p(&[2, 2]).hooks(), vec![3, 2, 2, 1]);
    }

    #[test]
    fn containment() {
        assert!(p(&[2, 1]).contains(&Partition::empty()));
        assert!(p(&[2, 1]).contains(&p(&[1, 1])));
        assert!(!p(&[3]).contains(&p(&[1, 1])));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::from_signed(&[2, 0]).is_err());
        assert!(serde_json::from_str::<Partition>("[3,-1]").is_err());
        assert_eq!(serde_json::from_str::<Partition>("[3,1]").unwrap(), p(&[3, 1]));
    }

    #[test]
    fn weight_four() {
        let got: Vec<Partition> = of_weight(4).collect();
        assert_eq!(got, vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
    }

    #[test]
    fn sub_partitions_of_square() {
        let subs = p(&[2, 2]).sub_partitions();
        assert_eq!(subs, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])]);
    }
}
