//! Integer partitions and the dominance combinatorics used by the
//! triangular solves.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers (trailing zeros trimmed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

/// Summary statistics of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: u32,
    pub conjugate: Partition,
    pub nstat: u32,
    pub doubled: Partition,
}

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts any weakly decreasing list; zeros at the end are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    /// `"2,1"` / `"[2,1]"` / `""`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            panic!("partition parts are 1-indexed");
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of positive parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest part (0 for the empty partition).
    pub fn width(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.width();
        Partition((1..=w).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn nstat(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// The partition `2λ²`: parts `2λ_1, 2λ_1, 2λ_2, 2λ_2, ...`.
    pub fn doubled(&self) -> Partition {
        Partition(self.0.iter().flat_map(|&p| [2 * p, 2 * p]).collect())
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            conjugate: self.conjugate(),
            nstat: self.nstat(),
            doubled: self.doubled(),
        }
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// `λ + 1^n`.
    pub fn add_column(&self, n: usize) -> Partition {
        Partition(self.padded(n).into_iter().map(|p| p + 1).collect())
    }

    /// `λ - 1^n`, if `ℓ(λ) = n`.
    pub fn remove_column(&self, n: usize) -> Option<Partition> {
        if self.len() != n {
            return None;
        }
        Partition::new(self.0.iter().map(|p| p - 1).collect()).ok()
    }

    /// Dominance for partitions of possibly different size: every partial
    /// sum of `other` is at most the matching partial sum of `self`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let a: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        let b: Vec<i64> = other.0.iter().map(|&p| p as i64).collect();
        vector_dominates(&a, &b)
    }

    /// `μ ⊆ λ` as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    /// `λ_1 <= m` and `ℓ(λ) <= n`.
    pub fn fits_box(&self, m: u32, n: usize) -> bool {
        self.width() <= m && self.len() <= n
    }

    /// `n^m - λ'` for `λ` inside the `m × n` box (`λ_1 <= m`, `ℓ(λ) <= n`).
    pub fn complement_conjugate(&self, m: u32, n: usize) -> Partition {
        debug_assert!(self.fits_box(m, n));
        let conj = self.conjugate();
        let parts: Vec<u32> = (1..=m as usize).rev().map(|i| n as u32 - conj.part(i)).collect();
        Partition::new(parts).expect("complement of a box partition is a partition")
    }

    /// Total order refining dominance: by size, then lexicographically.
    pub fn graded_cmp(&self, other: &Partition) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Partial-sum dominance on integer vectors (entries may be negative).
pub fn vector_dominates(upper: &[i64], lower: &[i64]) -> bool {
    let len = upper.len().max(lower.len());
    let (mut su, mut sl) = (0i64, 0i64);
    for i in 0..len {
        su += upper.get(i).copied().unwrap_or(0);
        sl += lower.get(i).copied().unwrap_or(0);
        if sl > su {
            return false;
        }
    }
    true
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The graded total order; see [`Partition::graded_cmp`].
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graded_cmp(other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// All partitions with `λ_1 <= m` and `ℓ(λ) <= n`: graded ascending and,
/// inside one size, lexicographically descending.
pub fn box_partitions(m: u32, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition(cur.clone()));
        if slots == 0 {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            rec(p, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(m, n, &mut cur, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    out
}

/// Every partition with at most `n` parts that `lambda` dominates
/// (including `lambda`), in ascending graded order.
pub fn dominated_by(lambda: &Partition, n: usize) -> Vec<Partition> {
    let mut v: Vec<Partition> = box_partitions(lambda.width(), n)
        .into_iter()
        .filter(|mu| lambda.dominates(mu))
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn stats_examples() {
        let s = p(&[2, 1]).stats();
        assert_eq!((s.size, s.nstat), (3, 1));
        assert_eq!(s.conjugate, p(&[2, 1]));
        assert_eq!(s.doubled, p(&[4, 4, 2, 2]));

        let e = Partition::empty().stats();
        assert_eq!((e.size, e.nstat), (0, 0));
        assert!(e.conjugate.is_empty() && e.doubled.is_empty());

        let r = p(&[3]).stats();
        assert_eq!((r.size, r.nstat), (3, 0));
        assert_eq!(r.conjugate, p(&[1, 1, 1]));
        assert_eq!(r.doubled, p(&[6, 6]));
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2]).dominates(&p(&[1, 1])));
        assert!(!p(&[2, 2]).dominates(&p(&[3])));
        assert!(p(&[2, 1]).dominates(&p(&[2, 1])));
        assert!(p(&[2, 1]).dominates(&p(&[1])));
        assert!(!p(&[2]).dominates(&p(&[1, 1, 1])));
        assert!(!p(&[1, 1, 1]).dominates(&p(&[2])));
    }

    #[test]
    fn box_examples() {
        assert_eq!(box_partitions(1, 1), vec![Partition::empty(), p(&[1])]);
        let b = box_partitions(2, 2);
        assert_eq!(
            b,
            vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])]
        );
        assert_eq!(p(&[1]).complement_conjugate(2, 2), p(&[2, 1]));
        assert_eq!(box_partitions(3, 3).len(), 20);
        assert_eq!(box_partitions(0, 4), vec![Partition::empty()]);
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 0, 0]).unwrap(), p(&[2]));
        assert_eq!(Partition::parse("2,1").unwrap(), p(&[2, 1]));
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert!(Partition::parse("1,x").is_err());
    }

    #[test]
    fn complement_is_bijective_between_boxes() {
        for (m, n) in [(1u32, 1usize), (2, 3), (3, 2), (3, 3), (0, 2)] {
            let lhs = box_partitions(m, n);
            let mut imgs: Vec<Partition> =
                lhs.iter().map(|l| l.complement_conjugate(m, n)).collect();
            imgs.sort();
            let mut rhs = box_partitions(n as u32, m as usize);
            rhs.sort();
            assert_eq!(imgs, rhs);
            for l in &lhs {
                let back = l.complement_conjugate(m, n).complement_conjugate(n as u32, m as usize);
                assert_eq!(&back, l);
            }
        }
    }

    #[test]
    fn complement_reverses_dominance() {
        let (m, n) = (3u32, 3usize);
        let b = box_partitions(m, n);
        for l in &b {
            for mu in &b {
                let lhs = l.dominates(mu);
                let rhs = mu
                    .complement_conjugate(m, n)
                    .dominates(&l.complement_conjugate(m, n));
                assert_eq!(lhs, rhs, "{l} {mu}");
            }
        }
    }

    #[test]
    fn graded_order_refines_dominance() {
        let b = box_partitions(3, 3);
        for l in &b {
            for mu in &b {
                if l != mu && l.dominates(mu) {
                    assert!(mu < l);
                }
            }
        }
    }

    #[test]
    fn dominated_set() {
        let d = dominated_by(&p(&[2]), 2);
        assert_eq!(d, vec![Partition::empty(), p(&[1]), p(&[1, 1]), p(&[2])]);
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0u32..6, 0..6).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn conjugation_involution(l in arb_partition()) {
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().size(), l.size());
        }

        #[test]
        fn nstat_via_conjugate(l in arb_partition()) {
            let c = l.conjugate();
            let alt: u32 = c.parts().iter().map(|&k| k * k.saturating_sub(1) / 2).sum();
            prop_assert_eq!(l.nstat(), alt);
        }
    }
}
