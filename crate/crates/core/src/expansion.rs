//! Jet operators `D^a`, graded Lions-Taylor expansions and their remainders.
//!
//! Along the straight-line path, let `Φ_a(s, t)` be `∂_a f` evaluated at
//! `x₀ + s(y₀−x₀)` and `Π_t`, with each free variable at `x_i + t(y_i−x_i)`,
//! contracted against the fixed gaps. Jet terms are `Φ_a(0, 0)/|a|!`.
//! Remainder terms integrate differences of `Φ_a` against
//! `(1−ξ)^{|a|−1}/(|a|−1)!`. Both are polynomial in `ξ`, so the integrals
//! are exact. For `|a| = 0` the kernel is the point mass at `ξ = 1`.
//!
//! For expansions of `∂_a f` itself, the free variables of the base `a`
//! move with `s` like `x₀`, and only the letters of `ā` are contracted.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functional::{
    contract_tail, eval_derivative, odometer, sup_on_box, BoxRegion, DerivTermSum, PolyKernel,
};
use crate::measures::{norm, sub, Coupling, EmpiricalMeasure};
use crate::partitions::{self, max_label};
use crate::ring::{factorial, int, Numeric, Poly1, Ring};
use crate::tagged::{self, Grading};

/// One term `D^a f / |a|!` of a jet.
#[derive(Clone, Debug, PartialEq)]
pub struct JetTerm<C> {
    pub seq: Vec<u32>,
    /// `D^a f` before division by `|a|!`.
    pub raw: Vec<C>,
    pub value: Vec<C>,
}

/// Boundary family of a remainder term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Star,
    Plus,
    Cross,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Star => "*",
            Family::Plus => "+",
            Family::Cross => "x",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RemainderTerm<C> {
    pub family: Family,
    pub seq: Vec<u32>,
    pub value: Vec<C>,
}

/// Contribution of one remainder term to the certified bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundTerm {
    pub family: Family,
    pub seq: Vec<u32>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionResult<C> {
    pub jet: Vec<JetTerm<C>>,
    pub predicted: Vec<C>,
    pub actual: Vec<C>,
    pub remainder_exact: Vec<C>,
    pub remainder_terms: Vec<RemainderTerm<C>>,
    pub remainder_bound: f64,
    pub bound_terms: Vec<BoundTerm>,
}

impl<C: Numeric> ExpansionResult<C> {
    /// `predicted + Σ remainder_terms − actual`; zero when the expansion is exact.
    pub fn identity_defect(&self) -> Vec<C> {
        let mut acc = self.predicted.clone();
        for t in &self.remainder_terms {
            acc = add_vec(&acc, &t.value);
        }
        sub(&acc, &self.actual)
    }

    pub fn remainder_norm(&self) -> f64 {
        norm(&self.remainder_exact)
    }

    /// `Σ_{|a| = k} D^a f / |a|!`.
    pub fn jet_order(&self, k: usize) -> Vec<C> {
        let zero = vec![C::zero(); self.predicted.len()];
        self.jet.iter().filter(|t| t.seq.len() == k).fold(zero, |acc, t| add_vec(&acc, &t.value))
    }

    /// Sum of the remainder terms.
    pub fn remainder_sum(&self) -> Vec<C> {
        let zero = vec![C::zero(); self.predicted.len()];
        self.remainder_terms.iter().fold(zero, |acc, t| add_vec(&acc, &t.value))
    }
}

fn add_vec<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// Position on the path parameter: `0`, `ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum At {
    Zero,
    Xi,
}

/// Which of `α`, `β` is larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Branch {
    SpatialCheaper,
    MeasureCheaper,
    Equal,
}

impl Branch {
    fn of(g: &Grading) -> Branch {
        use core::cmp::Ordering::*;
        match g.alpha.cmp(&g.beta) {
            Less => Branch::SpatialCheaper,
            Greater => Branch::MeasureCheaper,
            Equal => Branch::Equal,
        }
    }

    /// `(s, t)` endpoints of the difference integrated for a family.
    fn endpoints(self, fam: Family) -> Option<((At, At), (At, At))> {
        use At::*;
        match (fam, self) {
            (Family::Star, _) => Some(((Xi, Xi), (Zero, Zero))),
            (_, Branch::Equal) => None,
            (Family::Plus, Branch::SpatialCheaper) => Some(((Xi, Xi), (Xi, Zero))),
            (Family::Plus, Branch::MeasureCheaper) => Some(((Xi, Xi), (Zero, Xi))),
            (Family::Cross, Branch::SpatialCheaper) => Some(((Xi, Zero), (Zero, Zero))),
            (Family::Cross, Branch::MeasureCheaper) => Some(((Zero, Xi), (Zero, Zero))),
        }
    }

    /// Whether the difference for a family moves the spatial and measure arguments.
    fn moves(self, fam: Family) -> (bool, bool) {
        match (fam, self) {
            (Family::Star, _) => (true, true),
            (_, Branch::Equal) => (false, false),
            (Family::Plus, Branch::SpatialCheaper) | (Family::Cross, Branch::MeasureCheaper) => {
                (false, true)
            }
            (Family::Plus, Branch::MeasureCheaper) | (Family::Cross, Branch::SpatialCheaper) => {
                (true, false)
            }
        }
    }
}

/// Inputs of one expansion, with gaps precomputed.
struct Problem<'a, C> {
    f: &'a PolyKernel,
    base: Vec<u32>,
    x0: Option<Vec<C>>,
    g0: Option<Vec<C>>,
    bx: Vec<Vec<C>>,
    bg: Vec<Vec<C>>,
    ax: Vec<Vec<C>>,
    ag: Vec<Vec<C>>,
    ay: Vec<Vec<C>>,
    y0: Option<Vec<C>>,
    by: Vec<Vec<C>>,
}

impl<'a, C: Numeric> Problem<'a, C> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        f: &'a PolyKernel,
        base: &[u32],
        x0: Option<&[C]>,
        y0: Option<&[C]>,
        free_x: &[Vec<C>],
        free_y: &[Vec<C>],
        c: &Coupling<C>,
    ) -> Result<Self> {
        tagged::validate(base)?;
        let e = f.e;
        if c.is_empty() || c.dim() != e {
            return Err(Error::Dimension(format!("coupling must be non-empty in dimension {e}")));
        }
        if f.spatial != x0.is_some() || x0.is_some() != y0.is_some() {
            return Err(Error::Domain(
                "spatial points must be given exactly when the functional has x0".into(),
            ));
        }
        if x0.is_some_and(|p| p.len() != e) || y0.is_some_and(|p| p.len() != e) {
            return Err(Error::Dimension(format!("spatial points must have dimension {e}")));
        }
        let m = max_label(base) as usize;
        if free_x.len() != m || free_y.len() != m {
            return Err(Error::Dimension(format!(
                "{} and {} free points given, {m} required",
                free_x.len(),
                free_y.len()
            )));
        }
        if free_x.iter().chain(free_y).any(|p| p.len() != e) {
            return Err(Error::Dimension(format!("free points must have dimension {e}")));
        }
        Ok(Problem {
            f,
            base: base.to_vec(),
            x0: x0.map(<[C]>::to_vec),
            g0: x0.zip(y0).map(|(x, y)| sub(y, x)),
            bx: free_x.to_vec(),
            bg: free_x.iter().zip(free_y).map(|(x, y)| sub(y, x)).collect(),
            ax: c.pairs.iter().map(|p| p.0.clone()).collect(),
            ag: c.gaps(),
            ay: c.pairs.iter().map(|p| p.1.clone()).collect(),
            y0: y0.map(<[C]>::to_vec),
            by: free_y.to_vec(),
        })
    }

    fn mb(&self) -> u32 {
        max_label(&self.base)
    }

    /// `Φ` at the base point, in the scalar ring itself.
    fn jet_raw(&self, dsum: &DerivTermSum) -> Result<Vec<C>> {
        eval_jet(
            dsum,
            self.base.len(),
            self.mb(),
            self.x0.as_deref(),
            self.g0.as_deref(),
            &self.bx,
            &self.bg,
            &self.ax,
            &self.ag,
        )
    }

    /// `Φ(s, t)` as polynomials in `ξ`.
    fn phi(&self, dsum: &DerivTermSum, s: At, t: At) -> Result<Vec<Poly1<C>>> {
        let lift = |x: &[C], g: &[C], at: At| -> Vec<Poly1<C>> {
            x.iter()
                .zip(g)
                .map(|(a, b)| match at {
                    At::Zero => Poly1::constant(a.clone()),
                    At::Xi => Poly1::affine(a, b),
                })
                .collect()
        };
        let consts = |v: &[C]| -> Vec<Poly1<C>> { v.iter().cloned().map(Poly1::constant).collect() };
        let x0 = self.x0.as_ref().zip(self.g0.as_ref()).map(|(x, g)| lift(x, g, s));
        let g0 = self.g0.as_deref().map(consts);
        let bx: Vec<_> = self.bx.iter().zip(&self.bg).map(|(x, g)| lift(x, g, s)).collect();
        let bg: Vec<_> = self.bg.iter().map(|g| consts(g)).collect();
        let ax: Vec<_> = self.ax.iter().zip(&self.ag).map(|(x, g)| lift(x, g, t)).collect();
        let ag: Vec<_> = self.ag.iter().map(|g| consts(g)).collect();
        eval_jet(dsum, self.base.len(), self.mb(), x0.as_deref(), g0.as_deref(), &bx, &bg, &ax, &ag)
    }

    /// `∂_a f(y₀, ν, y_1..y_m)`.
    fn actual(&self) -> Result<Vec<C>> {
        let d = crate::functional::lions_derivative(self.f, &self.base)?;
        eval_derivative(&d, self.y0.as_deref(), &self.ay, &self.by)
    }

    fn points(&self) -> Vec<&[C]> {
        let mut pts: Vec<&[C]> = Vec::new();
        pts.extend(self.x0.as_deref());
        pts.extend(self.y0.as_deref());
        pts.extend(self.bx.iter().map(Vec::as_slice));
        pts.extend(self.by.iter().map(Vec::as_slice));
        pts.extend(self.ax.iter().map(Vec::as_slice));
        pts.extend(self.ay.iter().map(Vec::as_slice));
        pts
    }

    fn hull(&self) -> Result<BoxRegion> {
        BoxRegion::hull(&self.points())
    }

    fn check_box(&self, bx: &BoxRegion) -> Result<()> {
        if self.points().iter().all(|p| bx.contains(p)) {
            Ok(())
        } else {
            Err(Error::Domain("some points lie outside the box".into()))
        }
    }

    /// Remainder value of one word, integrated exactly.
    fn remainder(
        &self,
        dsum: &DerivTermSum,
        k: usize,
        ends: ((At, At), (At, At)),
    ) -> Result<Vec<C>> {
        let ((s1, t1), (s0, t0)) = ends;
        let hi = self.phi(dsum, s1, t1)?;
        let lo = self.phi(dsum, s0, t0)?;
        Ok(hi.iter().zip(&lo).map(|(a, b)| a.sub(b).integrate_taylor_kernel(k)).collect())
    }

    /// Certified bound for the remainder term of one word.
    fn bound_term(
        &self,
        dsum: &DerivTermSum,
        moves: (bool, bool),
        bx: &BoxRegion,
        samples: usize,
    ) -> Result<f64> {
        let (spatial_moves, measure_moves) = moves;
        if !spatial_moves && !measure_moves {
            return Ok(0.0);
        }
        let la = self.base.len();
        let mb = self.mb();
        let letters = &dsum.seq[la..];
        let g0 = self.g0.as_deref().map_or(0.0, norm);
        let bg: Vec<f64> = self.bg.iter().map(|g| norm(g)).collect();
        let r: Vec<f64> = self.ag.iter().map(|g| norm(g)).collect();
        let moment = |p: usize| r.iter().map(|x| libm::pow(*x, p as f64)).sum::<f64>() / r.len() as f64;
        let count = |l: u32| letters.iter().filter(|&&v| v == l).count();
        let new_free: Vec<u32> = (mb + 1..=dsum.nfree).collect();

        let base_prod = |extra: Option<u32>| -> f64 {
            let mut p = libm::pow(g0, (count(0) + usize::from(extra == Some(0))) as f64);
            for k in 1..=mb {
                let c = count(k) + usize::from(extra == Some(k));
                p *= libm::pow(bg[k as usize - 1], c as f64);
            }
            p
        };
        let new_prod = |extra: Option<u32>| -> f64 {
            new_free.iter().map(|&j| moment(count(j) + usize::from(extra == Some(j)))).product()
        };
        let lip = |letter: u32| -> Result<f64> { Ok(sup_on_box(&dsum.extend(letter)?, bx, samples)?.certified) };

        let mut total = 0.0;
        if spatial_moves {
            if self.f.spatial {
                total += lip(0)? * base_prod(Some(0)) * new_prod(None);
            }
            for k in 1..=mb {
                total += lip(k)? * base_prod(Some(k)) * new_prod(None);
            }
        }
        if measure_moves {
            total += lip(dsum.nfree + 1)? * moment(1) * base_prod(None) * new_prod(None);
            for &j in &new_free {
                total += lip(j)? * base_prod(None) * new_prod(Some(j));
            }
        }
        let k = letters.len();
        Ok(total / Numeric::to_f64(&factorial(k + 1)))
    }
}

/// `Φ`: contracts the letters after the base against gaps and averages the
/// new free variables over the coupling.
#[allow(clippy::too_many_arguments)]
fn eval_jet<R: Ring>(
    dsum: &DerivTermSum,
    la: usize,
    mb: u32,
    x0: Option<&[R]>,
    g0: Option<&[R]>,
    bfree: &[Vec<R>],
    bgap: &[Vec<R>],
    atoms: &[Vec<R>],
    gaps: &[Vec<R>],
) -> Result<Vec<R>> {
    let e = dsum.e;
    let rank = dsum.rank();
    let n = atoms.len();
    let mn = (dsum.nfree - mb) as usize;
    let letters = &dsum.seq[la..];
    let mut total = vec![R::zero(); dsum.d * e.pow(la as u32)];
    if dsum.is_zero() {
        return Ok(total);
    }
    let mut idx = vec![0usize; mn];
    loop {
        let mut free = bfree.to_vec();
        free.extend(idx.iter().map(|&i| atoms[i].clone()));
        let t = eval_derivative(dsum, x0, atoms, &free)?;
        let dirs: Vec<&[R]> = letters
            .iter()
            .map(|&l| {
                if l == 0 {
                    g0.expect("spatial gap")
                } else if l <= mb {
                    &bgap[l as usize - 1][..]
                } else {
                    &gaps[idx[(l - mb) as usize - 1]][..]
                }
            })
            .collect();
        let v = contract_tail(&t, e, rank, &dirs);
        total = add_vec(&total, &v);
        if !odometer(&mut idx, n) {
            break;
        }
    }
    let w = int(1) / int(n as i64).pow(mn as i32);
    Ok(total.iter().map(|v| v.scale(&w)).collect())
}

/// `D^a f(x₀, μ)[y₀ − x₀, Π]`.
pub fn eval_da<C: Numeric>(
    f: &PolyKernel,
    a: &[u32],
    x0: Option<&[C]>,
    displacement: Option<&[C]>,
    mu: &EmpiricalMeasure<C>,
    c: &Coupling<C>,
) -> Result<Vec<C>> {
    if c.left() != *mu {
        return Err(Error::Domain("left marginal of the coupling differs from mu".into()));
    }
    let y0: Option<Vec<C>> = x0.zip(displacement).map(|(x, g)| add_vec(x, g));
    if x0.is_some() != displacement.is_some() {
        return Err(Error::Domain("x0 and displacement must be given together".into()));
    }
    let p = Problem::new(f, &[], x0, y0.as_deref(), &[], &[], c)?;
    let d = crate::functional::lions_derivative(f, a)?;
    p.jet_raw(&d)
}

/// Expansion of `f(ν)` of order `n` for a functional without `x₀`.
///
/// Jet over all partition sequences of length `≤ n`; one remainder term per
/// sequence of length `n`. The bound uses the hull of all atoms as the box.
pub fn taylor1<C: Numeric>(f: &PolyKernel, c: &Coupling<C>, n: usize) -> Result<ExpansionResult<C>> {
    if f.spatial {
        return Err(Error::Domain("taylor1 expects a functional without x0".into()));
    }
    let p = Problem::new(f, &[], None, None, &[], &[], c)?;
    let mut cache: BTreeMap<Vec<u32>, DerivTermSum> = BTreeMap::new();
    cache.insert(Vec::new(), DerivTermSum::identity(f));
    let mut words = Vec::new();
    for k in 0..=n {
        for a in partitions::enum_a(k, usize::MAX)? {
            let parent = &cache[&a[..k.saturating_sub(1)]];
            let d = if k == 0 { parent.clone() } else { parent.extend(a[k - 1])? };
            cache.insert(a.clone(), d);
            words.push(a);
        }
    }
    let jet = jet_terms(&p, &words, &cache)?;
    let top: Vec<(Family, Vec<u32>)> =
        words.iter().filter(|a| a.len() == n).map(|a| (Family::Star, a.clone())).collect();
    finish(&p, jet, &top, &cache, Branch::Equal, &p.hull()?, 0)
}

/// Graded expansion of `f(y₀, ν)` around `(x₀, μ)` along the coupling.
pub fn taylor2<C: Numeric>(
    f: &PolyKernel,
    x0: &[C],
    y0: &[C],
    c: &Coupling<C>,
    g: &Grading,
) -> Result<ExpansionResult<C>> {
    if !f.spatial {
        return Err(Error::Domain("taylor2 expects a functional with x0".into()));
    }
    let g = Grading::new(g.alpha.clone(), g.beta.clone(), g.gamma.clone())?;
    graded(f, &[], Some(x0), Some(y0), &[], &[], c, &g)
}

/// Graded expansion of `∂_a f(y₀, ν, y_1..y_m)` over `A[a]` with threshold `γ − 𝒢[a]`.
#[allow(clippy::too_many_arguments)]
pub fn taylor_derivative<C: Numeric>(
    f: &PolyKernel,
    a: &[u32],
    x0: Option<&[C]>,
    y0: Option<&[C]>,
    free_x: &[Vec<C>],
    free_y: &[Vec<C>],
    c: &Coupling<C>,
    g: &Grading,
) -> Result<ExpansionResult<C>> {
    tagged::validate(a)?;
    let eta = &g.gamma - tagged::grade(a, g);
    let shifted = g.with_threshold(eta)?;
    graded(f, a, x0, y0, free_x, free_y, c, &shifted)
}

#[allow(clippy::too_many_arguments)]
fn graded<C: Numeric>(
    f: &PolyKernel,
    base: &[u32],
    x0: Option<&[C]>,
    y0: Option<&[C]>,
    free_x: &[Vec<C>],
    free_y: &[Vec<C>],
    c: &Coupling<C>,
    g: &Grading,
) -> Result<ExpansionResult<C>> {
    let p = Problem::new(f, base, x0, y0, free_x, free_y, c)?;
    let fam = tagged::enum_graded_ext(base, g, usize::MAX)?;
    let cache = derivative_cache(f, base, &fam.core)?;
    let jet = jet_terms(&p, &fam.core, &cache)?;
    let words = family_words(&fam);
    finish(&p, jet, &words, &cache, Branch::of(g), &p.hull()?, 0)
}

fn family_words(fam: &tagged::RemainderFamilies) -> Vec<(Family, Vec<u32>)> {
    let mut words = Vec::new();
    words.extend(fam.star.iter().map(|a| (Family::Star, a.clone())));
    words.extend(fam.plus.iter().map(|a| (Family::Plus, a.clone())));
    words.extend(fam.cross.iter().map(|a| (Family::Cross, a.clone())));
    words
}

/// `∂_{(a·ā)} f` for every `ā` in a prefix-closed list, keyed by `ā`.
fn derivative_cache(
    f: &PolyKernel,
    base: &[u32],
    words: &[Vec<u32>],
) -> Result<BTreeMap<Vec<u32>, DerivTermSum>> {
    let mut cache = BTreeMap::new();
    cache.insert(Vec::new(), crate::functional::lions_derivative(f, base)?);
    for w in words {
        if w.is_empty() {
            continue;
        }
        let parent = cache
            .get(&w[..w.len() - 1])
            .ok_or_else(|| Error::InvalidSequence(format!("prefix of {w:?} missing")))?;
        let d = parent.extend(*w.last().unwrap())?;
        cache.insert(w.clone(), d);
    }
    Ok(cache)
}

fn jet_terms<C: Numeric>(
    p: &Problem<'_, C>,
    words: &[Vec<u32>],
    cache: &BTreeMap<Vec<u32>, DerivTermSum>,
) -> Result<Vec<JetTerm<C>>> {
    words
        .iter()
        .map(|w| {
            let raw = p.jet_raw(&cache[w])?;
            let inv = int(1) / factorial(w.len());
            let value = raw.iter().map(|v| v.scale(&inv)).collect();
            Ok(JetTerm { seq: w.clone(), raw, value })
        })
        .collect()
}

fn finish<C: Numeric>(
    p: &Problem<'_, C>,
    jet: Vec<JetTerm<C>>,
    words: &[(Family, Vec<u32>)],
    cache: &BTreeMap<Vec<u32>, DerivTermSum>,
    branch: Branch,
    bx: &BoxRegion,
    samples: usize,
) -> Result<ExpansionResult<C>> {
    let width = cache[&Vec::new()].ncomps();
    let predicted = jet.iter().fold(vec![C::zero(); width], |acc, t| add_vec(&acc, &t.value));
    let actual = p.actual()?;
    let remainder_exact = sub(&actual, &predicted);
    let mut remainder_terms = Vec::new();
    let mut bound_terms = Vec::new();
    for (fam, w) in words {
        let d = &cache[w];
        let value = match branch.endpoints(*fam) {
            Some(ends) => p.remainder(d, w.len(), ends)?,
            None => vec![C::zero(); width],
        };
        remainder_terms.push(RemainderTerm { family: *fam, seq: w.clone(), value });
        let b = p.bound_term(d, branch.moves(*fam), bx, samples)?;
        bound_terms.push(BoundTerm { family: *fam, seq: w.clone(), value: b });
    }
    let remainder_bound = bound_terms.iter().map(|b| b.value).sum();
    Ok(ExpansionResult {
        jet,
        predicted,
        actual,
        remainder_exact,
        remainder_terms,
        remainder_bound,
        bound_terms,
    })
}

/// Certified bound on the order-`n` remainder of [`taylor1`] over an explicit box.
///
/// Each sequence `a` of length `n` contributes
/// `(lip_μ·M₁·Π_j M_{c_j} + Σ_q lip_q·Π_j M_{c_j+δ_{jq}}) / (n+1)!`,
/// with `c_j = |a^{-1}[j]|` and `M_k` the `k`-th coupling moment. The norms
/// are suprema over the box of the derivative with one more letter.
pub fn remainder_bound1<C: Numeric>(
    f: &PolyKernel,
    c: &Coupling<C>,
    n: usize,
    bx: &BoxRegion,
    samples: usize,
) -> Result<f64> {
    if f.spatial {
        return Err(Error::Domain("expected a functional without x0".into()));
    }
    let p = Problem::new(f, &[], None, None, &[], &[], c)?;
    p.check_box(bx)?;
    let mut total = 0.0;
    for a in partitions::enum_a(n, usize::MAX)? {
        let d = crate::functional::lions_derivative(f, &a)?;
        total += p.bound_term(&d, (true, true), bx, samples)?;
    }
    Ok(total)
}

/// Certified bound on the remainder of [`taylor2`] over an explicit box.
///
/// Star terms move both arguments; plus and cross terms move only the
/// argument their difference varies (spatial or measure, depending on
/// whether `α < β`). The measure term uses the first coupling moment.
pub fn remainder_bound2<C: Numeric>(
    f: &PolyKernel,
    x0: &[C],
    y0: &[C],
    c: &Coupling<C>,
    g: &Grading,
    bx: &BoxRegion,
    samples: usize,
) -> Result<f64> {
    remainder_bound_derivative(f, &[], Some(x0), Some(y0), &[], &[], c, g, bx, samples)
}

/// Certified bound on the remainder of [`taylor_derivative`] over an explicit box.
#[allow(clippy::too_many_arguments)]
pub fn remainder_bound_derivative<C: Numeric>(
    f: &PolyKernel,
    a: &[u32],
    x0: Option<&[C]>,
    y0: Option<&[C]>,
    free_x: &[Vec<C>],
    free_y: &[Vec<C>],
    c: &Coupling<C>,
    g: &Grading,
    bx: &BoxRegion,
    samples: usize,
) -> Result<f64> {
    let p = Problem::new(f, a, x0, y0, free_x, free_y, c)?;
    p.check_box(bx)?;
    let eta = &g.gamma - tagged::grade(a, g);
    let shifted = g.with_threshold(eta)?;
    let fam = tagged::enum_graded_ext(a, &shifted, usize::MAX)?;
    let cache = derivative_cache(f, a, &fam.core)?;
    let branch = Branch::of(g);
    let mut total = 0.0;
    for (family, w) in family_words(&fam) {
        total += p.bound_term(&cache[&w], branch.moves(family), bx, samples)?;
    }
    Ok(total)
}
