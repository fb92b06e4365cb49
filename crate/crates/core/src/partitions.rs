//! Partition sequences `A_n`.
//!
//! A partition sequence of length `n` starts with `1` and each further entry
//! is at most one more than the running maximum. Its level sets are the
//! blocks of a set partition of `{1,…,n}`, ordered by their minima.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default upper bound on the length of enumerated sequences.
pub const DEFAULT_CAP: usize = 12;

/// Largest label of a sequence (`0` when empty).
pub fn max_label(a: &[u32]) -> u32 {
    a.iter().copied().max().unwrap_or(0)
}

/// Whether `a` is a partition sequence.
pub fn is_partition_seq(a: &[u32]) -> bool {
    let mut m = 0;
    for &v in a {
        if v == 0 || v > m + 1 {
            return false;
        }
        m = m.max(v);
    }
    true
}

pub fn validate(a: &[u32]) -> Result<()> {
    if is_partition_seq(a) {
        Ok(())
    } else {
        Err(Error::InvalidSequence(format!("{a:?} is not a partition sequence")))
    }
}

/// All of `A_n` in lexicographic order.
pub fn enum_a(n: usize, cap: usize) -> Result<Vec<Vec<u32>>> {
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    extend_rec(&mut cur, 0, n, &mut out);
    Ok(out)
}

fn extend_rec(cur: &mut Vec<u32>, m: u32, n: usize, out: &mut Vec<Vec<u32>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for v in 1..=m + 1 {
        cur.push(v);
        extend_rec(cur, m.max(v), n, out);
        cur.pop();
    }
}

/// A set partition with blocks sorted internally and ordered by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Sorts each block and orders blocks by their minima.
    pub fn canonical(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b.first().copied());
        SetPartition { blocks }
    }

    /// Number of elements in the ground set.
    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

/// The blocks `a^{-1}[k]`, `k = 1..m[a]`, over the ground set `{1,…,|a|}`.
pub fn to_partition(a: &[u32]) -> Result<SetPartition> {
    validate(a)?;
    let mut blocks = vec![Vec::new(); max_label(a) as usize];
    for (i, &v) in a.iter().enumerate() {
        blocks[v as usize - 1].push(i + 1);
    }
    Ok(SetPartition { blocks })
}

/// Inverse of [`to_partition`]; block labels follow the order of block minima.
pub fn from_partition(p: &SetPartition) -> Result<Vec<u32>> {
    let n = p.ground_size();
    let mut a = vec![0u32; n];
    let canon = SetPartition::canonical(p.blocks.clone());
    for (k, block) in canon.blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidPartition(format!("block {k} is empty")));
        }
        for &x in block {
            if x == 0 || x > n {
                return Err(Error::InvalidPartition(format!("element {x} outside 1..={n}")));
            }
            if a[x - 1] != 0 {
                return Err(Error::InvalidPartition(format!("element {x} appears twice")));
            }
            a[x - 1] = k as u32 + 1;
        }
    }
    Ok(a)
}

/// First-occurrence relabeling `⟦b⟧` of a label sequence.
pub fn equiv_class<L: PartialEq>(b: &[L]) -> Vec<u32> {
    let mut seen: Vec<&L> = Vec::new();
    b.iter()
        .map(|l| match seen.iter().position(|s| *s == l) {
            Some(k) => k as u32 + 1,
            None => {
                seen.push(l);
                seen.len() as u32
            }
        })
        .collect()
}

/// Whether every block of `a` lies inside a block of `a2`.
pub fn refines(a: &[u32], a2: &[u32]) -> Result<bool> {
    if a.len() != a2.len() {
        return Err(Error::LengthMismatch(a.len(), a2.len()));
    }
    Ok(label_map(a, a2).is_some())
}

/// Map from labels of `a` to labels of `b`, if `b` is constant on the blocks of `a`.
pub(crate) fn label_map<L: PartialEq + Clone>(a: &[u32], b: &[L]) -> Option<Vec<Option<L>>> {
    let mut map: Vec<Option<L>> = vec![None; max_label(a) as usize + 1];
    for (&k, l) in a.iter().zip(b) {
        match &map[k as usize] {
            Some(prev) if prev != l => return None,
            Some(_) => {}
            None => map[k as usize] = Some(l.clone()),
        }
    }
    Some(map)
}

/// `b∘(a)`: the common `b`-label on each block `a^{-1}[j]`, `j = 1..m[a]`.
pub fn compose<L: PartialEq + Clone>(b: &[L], a: &[u32]) -> Result<Vec<L>> {
    validate(a)?;
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let map = label_map(a, b).ok_or(Error::CompositionDomain)?;
    Ok(map.into_iter().skip(1).flatten().collect())
}

/// Bell numbers `B_0..=B_n` from the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<u128> {
    let mut out = vec![1u128];
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        out.push(next[0]);
        row = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_and_a0() {
        assert_eq!(enum_a(2, DEFAULT_CAP).unwrap(), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(enum_a(0, DEFAULT_CAP).unwrap(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn a4_endpoints() {
        let a4 = enum_a(4, DEFAULT_CAP).unwrap();
        assert_eq!(a4.len(), 15);
        assert_eq!(a4[0], vec![1, 1, 1, 1]);
        assert_eq!(a4[14], vec![1, 2, 3, 4]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enum_a(13, 12), Err(Error::EnumerationCap { n: 13, cap: 12 }));
    }

    #[test]
    fn counts_are_bell() {
        let bell = bell_numbers(10);
        assert_eq!(&bell[..8], &[1, 1, 2, 5, 15, 52, 203, 877]);
        for n in 0..=10 {
            assert_eq!(enum_a(n, DEFAULT_CAP).unwrap().len() as u128, bell[n]);
        }
    }

    #[test]
    fn partition_examples() {
        let p = to_partition(&[1, 2, 1]).unwrap();
        assert_eq!(p.blocks, vec![vec![1, 3], vec![2]]);
        assert_eq!(to_partition(&[1, 1, 1]).unwrap().blocks, vec![vec![1, 2, 3]]);
        assert_eq!(
            to_partition(&[1, 2, 3]).unwrap().blocks,
            vec![vec![1], vec![2], vec![3]]
        );
        let swapped = SetPartition { blocks: vec![vec![2], vec![1, 3]] };
        assert_eq!(from_partition(&swapped).unwrap(), vec![1, 2, 1]);
        let overlap = SetPartition { blocks: vec![vec![1, 2], vec![2]] };
        assert!(from_partition(&overlap).is_err());
        let gap = SetPartition { blocks: vec![vec![1, 4]] };
        assert!(from_partition(&gap).is_err());
    }

    #[test]
    fn equiv_class_examples() {
        assert_eq!(equiv_class(&['i', 'i', 'j']), vec![1, 1, 2]);
        assert_eq!(equiv_class(&[4, 5]), vec![1, 2]);
        assert_eq!(equiv_class(&[7, 7, 7]), vec![1, 1, 1]);
    }

    #[test]
    fn refines_examples() {
        assert!(refines(&[1, 2, 3], &[1, 1, 2]).unwrap());
        assert!(refines(&[1, 1, 2], &[1, 1, 2]).unwrap());
        assert!(!refines(&[1, 1, 2], &[1, 2, 3]).unwrap());
        assert!(refines(&[1], &[1, 1]).is_err());
    }

    #[test]
    fn compose_examples() {
        let b = ['i', 'i', 'j'];
        assert_eq!(compose(&b, &[1, 1, 2]).unwrap(), vec!['i', 'j']);
        assert_eq!(compose(&b, &[1, 2, 3]).unwrap(), vec!['i', 'i', 'j']);
        assert_eq!(compose(&[5, 5], &[1, 1]).unwrap(), vec![5]);
        assert_eq!(compose(&b, &[1, 2, 2]), Err(Error::CompositionDomain));
    }
}
