//! Integer partitions stored without trailing zeros.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates that `parts` is weakly decreasing; trailing zeros are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    /// Sorts arbitrary nonnegative entries into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(m: u32) -> Self {
        Self::from_sorted(vec![m])
    }

    /// (n^len), the rectangle with `len` rows of length `n`.
    pub fn rectangle(n: u32, len: usize) -> Self {
        Self::from_sorted(vec![n; len])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// m_j with 1-based `j`; zero beyond the length.
    pub fn part(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn conjugate(&self) -> Self {
        let m1 = self.part(1);
        Partition((1..=m1).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// µ + ε_j (1-based), if still a partition.
    pub fn add_box(&self, j: usize) -> Option<Self> {
        if j == 0 || j > self.len() + 1 {
            return None;
        }
        if j > 1 && self.part(j - 1) == self.part(j) {
            return None;
        }
        let mut v = self.padded(j);
        v[j - 1] += 1;
        Some(Partition(v))
    }

    /// µ − ε_j (1-based), if still a partition.
    pub fn remove_box(&self, j: usize) -> Option<Self> {
        if j == 0 || j > self.len() || self.part(j) == self.part(j + 1) {
            return None;
        }
        let mut v = self.0.clone();
        v[j - 1] -= 1;
        Some(Self::from_sorted(v))
    }

    /// µ + (n^len).
    pub fn plus_rectangle(&self, n: u32, len: usize) -> Self {
        let mut v = self.padded(len);
        for x in v.iter_mut().take(len) {
            *x += n;
        }
        Self::from_sorted(v)
    }

    /// Dominance order on partitions of equal weight.
    pub fn dominates(&self, other: &Self) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for j in 1..=n {
            a += self.part(j);
            b += other.part(j);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Arm+leg+1 hook lengths of every box, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u32 - 1;
                let leg = conj.0[j] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Contents j − i of every box (0-based), row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as i64 {
                out.push(j - i as i64);
            }
        }
        out
    }

    /// Number of distinct permutations of µ padded to `n` entries.
    pub fn orbit_size(&self, n: usize) -> u128 {
        let v = self.padded(n);
        let mut denom: u128 = 1;
        let mut run = 1u128;
        for w in v.windows(2) {
            if w[0] == w[1] {
                run += 1;
                denom *= run;
            } else {
                run = 1;
            }
        }
        (1..=v.len() as u128).product::<u128>() / denom
    }
}

/// Partitions of `n` with at most `max_len` parts, in decreasing lexicographic order.
pub fn partitions_of(n: u32, max_len: usize) -> Vec<Partition> {
    fn rec(rem: u32, cap: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if left == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions with weight ≤ `max_weight` and length ≤ `max_len`, by weight.
pub fn partitions_up_to(max_weight: u32, max_len: usize) -> Vec<Partition> {
    (0..=max_weight).flat_map(|n| partitions_of(n, max_len)).collect()
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

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if body.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad partition {s:?}")))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
