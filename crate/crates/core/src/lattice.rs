//! Partitions, signed index-subset pairs and the combinatorial bookkeeping
//! shared by every coefficient formula.
//!
//! Indices are 1-based throughout: `j` ranges over `1..=n` exactly as in the
//! exponents `t^{n-j}` of the coefficient formulas.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing, nonnegative integer vector of fixed length `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("partition must have at least one part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn zero(n: usize) -> Self {
        Partition(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_j` for 1-based `j`.
    pub fn part(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    /// Largest part `λ_1`.
    pub fn max_part(&self) -> u32 {
        self.0[0]
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
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

/// Disjoint pair of sorted 1-based index sets `(J+, J-)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftPair {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl ShiftPair {
    pub fn new(mut plus: Vec<usize>, mut minus: Vec<usize>) -> Result<Self> {
        plus.sort_unstable();
        plus.dedup();
        minus.sort_unstable();
        minus.dedup();
        if plus.iter().any(|j| minus.binary_search(j).is_ok()) {
            return Err(Error::Invalid("J+ and J- must be disjoint".into()));
        }
        if plus.iter().chain(&minus).any(|&j| j == 0) {
            return Err(Error::IndexOutOfRange { index: 0, n: 0 });
        }
        Ok(ShiftPair { plus, minus })
    }

    pub fn empty() -> Self {
        ShiftPair { plus: Vec::new(), minus: Vec::new() }
    }

    /// `|J+| + |J-|`.
    pub fn size(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn swapped(&self) -> Self {
        ShiftPair { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    pub fn signs(&self, n: usize) -> Result<SignVector> {
        SignVector::from_pair(n, self)
    }

    /// Indices of `1..=n` in neither set: `J+^c ∩ J-^c`.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|j| !self.plus.contains(j) && !self.minus.contains(j)).collect()
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.plus.iter().chain(&self.minus).find(|&&j| j > n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }
}

/// Entries `ε_j ∈ {-1, 0, +1}` indexed 1-based via [`SignVector::get`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn from_pair(n: usize, pair: &ShiftPair) -> Result<Self> {
        pair.check_range(n)?;
        let mut eps = vec![0i8; n];
        for &j in &pair.plus {
            eps[j - 1] = 1;
        }
        for &j in &pair.minus {
            eps[j - 1] = -1;
        }
        Ok(SignVector(eps))
    }

    pub fn get(&self, j: usize) -> i8 {
        self.0[j - 1]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }
}

/// `ε_j(J+, J-)`.
pub fn epsilon(j: usize, pair: &ShiftPair, n: usize) -> Result<i8> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    Ok(if pair.plus.contains(&j) {
        1
    } else if pair.minus.contains(&j) {
        -1
    } else {
        0
    })
}

/// `λ + e_{J+} - e_{J-}` if it stays in the cone, `None` otherwise.
pub fn shift_partition(lambda: &Partition, pair: &ShiftPair) -> Option<Partition> {
    let n = lambda.n();
    if pair.check_range(n).is_err() {
        return None;
    }
    let mut parts: Vec<i64> = lambda.0.iter().map(|&p| p as i64).collect();
    for &j in &pair.plus {
        parts[j - 1] += 1;
    }
    for &j in &pair.minus {
        parts[j - 1] -= 1;
    }
    if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(Partition(parts.into_iter().map(|p| p as u32).collect()))
}

/// All disjoint `(J+, J-)` over `1..=n` with `|J+| + |J-| <= l`.
///
/// Order: by total size; within a size by the support in lexicographic order;
/// within a support by sign pattern, reading `+` before `-` from the smallest
/// index onwards.
pub fn enumerate_shift_pairs(n: usize, l: usize) -> Result<Vec<ShiftPair>> {
    if l < 1 || l > n {
        return Err(Error::InvalidOrder { l, n });
    }
    Ok(enumerate_signed_subsets(&(1..=n).collect::<Vec<_>>(), 0, l))
}

/// Disjoint `(I+, I-)` inside `universe` with `min <= |I+|+|I-| <= max`, in the
/// same order as [`enumerate_shift_pairs`].
pub fn enumerate_signed_subsets(universe: &[usize], min: usize, max: usize) -> Vec<ShiftPair> {
    let mut out = Vec::new();
    for size in min..=max.min(universe.len()) {
        for support in combinations(universe, size) {
            for mask in 0u32..(1 << size) {
                let mut plus = Vec::new();
                let mut minus = Vec::new();
                for (i, &j) in support.iter().enumerate() {
                    // bit (size-1-i) set means '-' at position i
                    if mask >> (size - 1 - i) & 1 == 1 {
                        minus.push(j);
                    } else {
                        plus.push(j);
                    }
                }
                out.push(ShiftPair { plus, minus });
            }
        }
    }
    out
}

/// Size-`k` subsets of `items` in lexicographic order.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `m_level(λ)`, or `m_level^+(λ)` when `restrict = Some(J+)`.
pub fn multiplicity(lambda: &Partition, level: u32, restrict: Option<&[usize]>) -> usize {
    match restrict {
        None => lambda.0.iter().filter(|&&p| p == level).count(),
        Some(set) => set.iter().filter(|&&j| lambda.part(j) == level).count(),
    }
}

/// Every partition of length `n` with `λ_1 <= cutoff`.
///
/// Ordered co-lexicographically: compare the last part first, then the one
/// before it, and so on.
pub fn enumerate_partitions(n: usize, cutoff: u32) -> Vec<Partition> {
    fn rec(n: usize, bound: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if prefix.len() == n {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 0..=bound {
            prefix.push(p);
            rec(n, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, cutoff, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn pair(p: &[usize], m: &[usize]) -> ShiftPair {
        ShiftPair::new(p.to_vec(), m.to_vec()).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn epsilon_definition() {
        let p = pair(&[2], &[3]);
        assert_eq!(epsilon(2, &p, 3).unwrap(), 1);
        assert_eq!(epsilon(3, &p, 3).unwrap(), -1);
        assert_eq!(epsilon(1, &p, 3).unwrap(), 0);
        assert_eq!(epsilon(4, &p, 3), Err(Error::IndexOutOfRange { index: 4, n: 3 }));
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_partition(&part(&[2, 1]), &pair(&[1], &[2])), Some(part(&[3, 0])));
        assert_eq!(shift_partition(&part(&[1, 1]), &pair(&[2], &[])), None);
        assert_eq!(shift_partition(&part(&[0]), &pair(&[], &[1])), None);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(ShiftPair::new(vec![1], vec![1]).is_err());
        assert!(serde_json::from_str::<Partition>("[0,1]").is_err());
    }

    #[test]
    fn shift_pair_listing() {
        let got = enumerate_shift_pairs(2, 1).unwrap();
        let want = vec![
            pair(&[], &[]),
            pair(&[1], &[]),
            pair(&[], &[1]),
            pair(&[2], &[]),
            pair(&[], &[2]),
        ];
        assert_eq!(got, want);
        assert_eq!(enumerate_shift_pairs(2, 2).unwrap().len(), 9);
        assert_eq!(enumerate_shift_pairs(1, 1).unwrap().len(), 3);
        assert_eq!(enumerate_shift_pairs(2, 3), Err(Error::InvalidOrder { l: 3, n: 2 }));
        assert_eq!(enumerate_shift_pairs(2, 0), Err(Error::InvalidOrder { l: 0, n: 2 }));
    }

    #[test]
    fn shift_pair_counts() {
        for n in 1..=5 {
            for l in 1..=n {
                let want: usize = (0..=l).map(|m| binom(n, m) << m).sum();
                let got = enumerate_shift_pairs(n, l).unwrap();
                assert_eq!(got.len(), want, "n={n} l={l}");
                for p in &got {
                    let s = p.signs(n).unwrap();
                    for j in 1..=n {
                        assert_eq!(s.get(j) == 1, p.plus.contains(&j));
                        assert_eq!(s.get(j), epsilon(j, p, n).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicities() {
        let l = part(&[2, 1, 1, 0]);
        assert_eq!(multiplicity(&l, 1, None), 2);
        assert_eq!(multiplicity(&l, 0, None), 1);
        assert_eq!(multiplicity(&part(&[1, 1]), 1, Some(&[1])), 1);
    }

    #[test]
    fn partition_listing() {
        let got = enumerate_partitions(2, 1);
        assert_eq!(got, vec![part(&[0, 0]), part(&[1, 0]), part(&[1, 1])]);
        assert_eq!(
            enumerate_partitions(1, 3),
            vec![part(&[0]), part(&[1]), part(&[2]), part(&[3])]
        );
        assert_eq!(enumerate_partitions(3, 2).len(), binom(5, 3));
        for n in 1..=4 {
            for c in 0..=4u32 {
                let all = enumerate_partitions(n, c);
                assert_eq!(all.len(), binom(n + c as usize, n));
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
                assert!(all.iter().all(|p| Partition::new(p.parts().to_vec()).is_ok()));
            }
        }
    }

    fn arb_case() -> impl Strategy<Value = (Partition, ShiftPair)> {
        (1usize..=5).prop_flat_map(|n| {
            (
                prop::collection::vec(0u32..=4, n),
                prop::collection::vec(-1i8..=1, n),
            )
                .prop_map(|(mut parts, signs)| {
                    parts.sort_unstable_by(|a, b| b.cmp(a));
                    let plus = (1..=parts.len()).filter(|&j| signs[j - 1] == 1).collect();
                    let minus = (1..=parts.len()).filter(|&j| signs[j - 1] == -1).collect();
                    (Partition(parts), ShiftPair { plus, minus })
                })
        })
    }

    proptest! {
        #[test]
        fn shift_back_is_inverse((lambda, p) in arb_case()) {
            if let Some(mu) = shift_partition(&lambda, &p) {
                prop_assert_eq!(shift_partition(&mu, &p.swapped()), Some(lambda));
            }
        }
    }
}
