//! Tagged sequences `A_n[0]`, extended sequences `A_n[a]`, gradings and
//! the three boundary families of a graded expansion.
//!
//! A tagged sequence interleaves zeros (spatial derivatives) with a
//! partition sequence (measure derivatives). Over a fixed base `a`, the
//! labels `0..=m[a]` play the role of the tag and only larger labels open
//! new free variables.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partitions::{self, max_label, SetPartition};
use crate::ring::{int, Rational};

/// Whether the positive entries of `a` form a partition sequence.
pub fn is_tagged_seq(a: &[u32]) -> bool {
    let mut m = 0;
    for &v in a {
        if v > m + 1 {
            return false;
        }
        m = m.max(v);
    }
    true
}

pub fn validate(a: &[u32]) -> Result<()> {
    if is_tagged_seq(a) {
        Ok(())
    } else {
        Err(Error::InvalidSequence(format!("{a:?} is not a tagged sequence")))
    }
}

pub fn zero_count(a: &[u32]) -> usize {
    a.iter().filter(|&&v| v == 0).count()
}

/// All of `A_n[0]` in lexicographic order.
pub fn enum_a0(n: usize, cap: usize) -> Result<Vec<Vec<u32>>> {
    enum_a_ext(&[], n, cap)
}

/// All shuffles of `k` zeros into an element of `A_n`, in lexicographic order.
pub fn enum_akn0(k: usize, n: usize, cap: usize) -> Result<Vec<Vec<u32>>> {
    if k + n > cap {
        return Err(Error::EnumerationCap { n: k + n, cap });
    }
    let mut out = Vec::new();
    for a in partitions::enum_a(n, cap)? {
        for mask in zero_positions(k, k + n) {
            let mut it = a.iter();
            let s: Vec<u32> = mask
                .iter()
                .map(|&z| if z { 0 } else { *it.next().unwrap() })
                .collect();
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// All boolean masks of length `len` with exactly `k` set entries.
fn zero_positions(k: usize, len: usize) -> Vec<Vec<bool>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    if k > 0 {
        for mut rest in zero_positions(k - 1, len - 1) {
            rest.insert(0, true);
            out.push(rest);
        }
    }
    if len > k {
        for mut rest in zero_positions(k, len - 1) {
            rest.insert(0, false);
            out.push(rest);
        }
    }
    out
}

/// `⟦b⟧_tag`: entries equal to `tag` become `0`, the rest are relabeled by first occurrence.
pub fn equiv_class_tagged<L: PartialEq>(b: &[L], tag: &L) -> Vec<u32> {
    let mut seen: Vec<&L> = Vec::new();
    b.iter()
        .map(|l| {
            if l == tag {
                return 0;
            }
            match seen.iter().position(|s| *s == l) {
                Some(k) => k as u32 + 1,
                None => {
                    seen.push(l);
                    seen.len() as u32
                }
            }
        })
        .collect()
}

/// Tagged refinement: zeros of `a` are zeros of `a2`, and each positive block
/// of `a` lies inside one block of `a2` (possibly its zero block).
pub fn refines_tagged(a: &[u32], a2: &[u32]) -> Result<bool> {
    if a.len() != a2.len() {
        return Err(Error::LengthMismatch(a.len(), a2.len()));
    }
    if a.iter().zip(a2).any(|(&x, &y)| x == 0 && y != 0) {
        return Ok(false);
    }
    Ok(partitions::label_map(a, a2).is_some())
}

/// `b∘(a)` for tagged `a`: the common `b`-label on each positive block.
pub fn compose_tagged<L: PartialEq + Clone>(b: &[L], a: &[u32]) -> Result<Vec<L>> {
    validate(a)?;
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let map = partitions::label_map(a, b).ok_or(Error::CompositionDomain)?;
    Ok(map.into_iter().skip(1).flatten().collect())
}

/// Weights `α` (tagged letters) and `β` (measure letters) with threshold `γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl Grading {
    /// Requires `α, β > 0` and `γ > min(α, β)`.
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self> {
        let g = Grading { alpha, beta, gamma };
        g.check_weights()?;
        if g.gamma <= *g.min_weight() {
            return Err(Error::InvalidGrading(format!(
                "gamma {} must exceed min(alpha, beta) = {}",
                g.gamma,
                g.min_weight()
            )));
        }
        Ok(g)
    }

    /// Same weights with a different threshold; only requires `γ ≥ 0`.
    ///
    /// Used for the shifted threshold `γ − 𝒢[a]` of a derivative expansion.
    pub fn with_threshold(&self, gamma: Rational) -> Result<Self> {
        if gamma.is_negative() {
            return Err(Error::InvalidGrading(format!("threshold {gamma} is negative")));
        }
        Ok(Grading { alpha: self.alpha.clone(), beta: self.beta.clone(), gamma })
    }

    fn check_weights(&self) -> Result<()> {
        if !self.alpha.is_positive() || !self.beta.is_positive() {
            return Err(Error::InvalidGrading(format!(
                "weights must be positive, got alpha {} beta {}",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    pub fn min_weight(&self) -> &Rational {
        if self.alpha <= self.beta {
            &self.alpha
        } else {
            &self.beta
        }
    }

    pub fn max_weight(&self) -> &Rational {
        if self.alpha >= self.beta {
            &self.alpha
        } else {
            &self.beta
        }
    }
}

/// `α·#zeros + β·#positive`.
pub fn grade(a: &[u32], g: &Grading) -> Rational {
    let z = zero_count(a);
    &g.alpha * int(z as i64) + &g.beta * int((a.len() - z) as i64)
}

/// Grade of `ā` over a base with largest label `m`: letters `≤ m` weigh `α`.
pub fn grade_ext(base: &[u32], abar: &[u32], g: &Grading) -> Rational {
    let m = max_label(base);
    let low = abar.iter().filter(|&&v| v <= m).count();
    &g.alpha * int(low as i64) + &g.beta * int((abar.len() - low) as i64)
}

/// Whether `abar` is an element of `A_n[a]`.
pub fn is_ext_seq(base: &[u32], abar: &[u32]) -> bool {
    let mut m = max_label(base);
    for &v in abar {
        if v > m + 1 {
            return false;
        }
        m = m.max(v);
    }
    true
}

/// All of `A_n[a]` in lexicographic order.
pub fn enum_a_ext(base: &[u32], n: usize, cap: usize) -> Result<Vec<Vec<u32>>> {
    validate(base)?;
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    ext_rec(&mut cur, max_label(base), n, &mut out);
    Ok(out)
}

fn ext_rec(cur: &mut Vec<u32>, m: u32, n: usize, out: &mut Vec<Vec<u32>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for v in 0..=m + 1 {
        cur.push(v);
        ext_rec(cur, m.max(v), n, out);
        cur.pop();
    }
}

/// Concatenation `(a·ā)`.
pub fn iso_j(base: &[u32], abar: &[u32]) -> Result<Vec<u32>> {
    validate(base)?;
    if !is_ext_seq(base, abar) {
        return Err(Error::InvalidSequence(format!("{abar:?} is not admissible over {base:?}")));
    }
    let mut out = base.to_vec();
    out.extend_from_slice(abar);
    Ok(out)
}

/// Inverse of [`iso_j`]: strips the prefix `a`.
pub fn iso_j_inv(base: &[u32], full: &[u32]) -> Result<Vec<u32>> {
    if !full.starts_with(base) {
        return Err(Error::InvalidSequence(format!("{full:?} does not start with {base:?}")));
    }
    let abar = &full[base.len()..];
    if !is_ext_seq(base, abar) {
        return Err(Error::InvalidSequence(format!("{full:?} is not a tagged sequence")));
    }
    Ok(abar.to_vec())
}

/// Partition of `{0,…,|a|}`: the block of `0` is `{0} ∪ a^{-1}[0]`, the others are `a^{-1}[k]`.
pub fn to_partition_tagged(a: &[u32]) -> Result<SetPartition> {
    validate(a)?;
    let mut blocks = vec![vec![0usize]];
    blocks.resize(max_label(a) as usize + 1, Vec::new());
    for (i, &v) in a.iter().enumerate() {
        blocks[v as usize].push(i + 1);
    }
    Ok(SetPartition { blocks })
}

/// Inverse of [`to_partition_tagged`].
pub fn from_partition_tagged(p: &SetPartition) -> Result<Vec<u32>> {
    let canon = SetPartition::canonical(p.blocks.clone());
    let n = canon.ground_size().checked_sub(1).ok_or_else(|| {
        Error::InvalidPartition("the ground set must contain 0".into())
    })?;
    let mut a = vec![None; n];
    for (k, block) in canon.blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidPartition(format!("block {k} is empty")));
        }
        if (k == 0) != (block[0] == 0) {
            return Err(Error::InvalidPartition("0 must be present exactly once".into()));
        }
        for &x in block.iter().skip(usize::from(k == 0)) {
            if x == 0 || x > n || a[x - 1].is_some() {
                return Err(Error::InvalidPartition(format!("element {x} is repeated or outside 0..={n}")));
            }
            a[x - 1] = Some(k as u32);
        }
    }
    Ok(a.into_iter().map(|v| v.expect("ground set has n+1 elements")).collect())
}

/// A graded set together with its three boundary families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RemainderFamilies {
    pub core: Vec<Vec<u32>>,
    pub star: Vec<Vec<u32>>,
    pub plus: Vec<Vec<u32>>,
    pub cross: Vec<Vec<u32>>,
}

/// Families of `A[0]` under the grading `g`.
pub fn enum_graded(g: &Grading, cap: usize) -> Result<RemainderFamilies> {
    enum_graded_ext(&[], g, cap)
}

/// Families of `A[a]` under `g`, with `𝒢^a` as the grade.
///
/// * core: grade `≤ γ`
/// * plus: grade in `(γ − max(α,β), γ − min(α,β)]`, no strict prefix in plus
/// * star: grade in `(γ − min(α,β), γ]`, no strict prefix in plus
/// * cross: grade in `(γ − min(α,β), γ]`, some strict prefix in plus
///
/// Prefixes range over lengths `0..|ā|`, so the empty word counts.
pub fn enum_graded_ext(base: &[u32], g: &Grading, cap: usize) -> Result<RemainderFamilies> {
    validate(base)?;
    g.check_weights()?;
    if g.gamma.is_negative() {
        return Err(Error::InvalidGrading(format!("threshold {} is negative", g.gamma)));
    }
    let depth = (&g.gamma / g.min_weight()).floor().to_integer().to_usize().unwrap_or(usize::MAX);
    if depth > cap {
        return Err(Error::EnumerationCap { n: depth, cap });
    }
    let mut fam = RemainderFamilies::default();
    let ctx = GradedCtx {
        m_base: max_label(base),
        g,
        hi: &g.gamma - g.min_weight(),
        lo: &g.gamma - g.max_weight(),
    };
    let mut cur = Vec::new();
    graded_rec(&ctx, &mut cur, ctx.m_base, Rational::zero(), false, &mut fam);
    Ok(fam)
}

struct GradedCtx<'a> {
    m_base: u32,
    g: &'a Grading,
    hi: Rational,
    lo: Rational,
}

fn graded_rec(
    ctx: &GradedCtx<'_>,
    cur: &mut Vec<u32>,
    m: u32,
    grade: Rational,
    plus_prefix: bool,
    fam: &mut RemainderFamilies,
) {
    fam.core.push(cur.clone());
    let in_plus = !plus_prefix && grade > ctx.lo && grade <= ctx.hi;
    if grade > ctx.hi {
        if plus_prefix {
            fam.cross.push(cur.clone());
        } else {
            fam.star.push(cur.clone());
        }
    }
    if in_plus {
        fam.plus.push(cur.clone());
    }
    for v in 0..=m + 1 {
        let w = if v <= ctx.m_base { &ctx.g.alpha } else { &ctx.g.beta };
        let next = &grade + w;
        if next > ctx.g.gamma {
            continue;
        }
        cur.push(v);
        graded_rec(ctx, cur, m.max(v), next, plus_prefix || in_plus, fam);
        cur.pop();
    }
}
