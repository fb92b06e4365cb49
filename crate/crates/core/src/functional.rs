//! Cylindrical polynomial functionals and their mixed Lions derivatives.
//!
//! A functional is `f(x₀, μ) = ∫…∫ k(x₀, z₁, …, z_p) dμ(z₁)…dμ(z_p)` for a
//! vector-valued polynomial kernel `k`. Its derivative `∂_a f` is again a
//! finite sum of kernel derivatives in which some integrated slots have
//! been pinned to free variables, so every derivative stays symbolic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{int, Numeric, Rational, Ring};
use crate::tagged;

/// Polynomial kernel `k: (ℝ^e)^{slots} → ℝ^d`.
///
/// Slot `0` is `x₀` when `spatial` is set; the remaining `arity` slots are
/// integrated against the measure. Variable `slot·e + c` is coordinate `c`
/// of that slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyKernel {
    pub e: usize,
    pub d: usize,
    pub arity: usize,
    pub spatial: bool,
    comps: Vec<Poly>,
}

/// A functional is identified with its kernel.
pub type PolyFunctional = PolyKernel;

/// One monomial of a kernel: `coeff · Π_{slot,c} x_{slot,c}^{exps[slot][c]}` in output `out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTerm {
    pub out: usize,
    pub coeff: Rational,
    pub exps: Vec<Vec<u32>>,
}

impl PolyKernel {
    pub fn new(e: usize, d: usize, arity: usize, spatial: bool) -> Result<Self> {
        if e == 0 || d == 0 {
            return Err(Error::Dimension(format!("e = {e} and d = {d} must be positive")));
        }
        let nvars = (arity + usize::from(spatial)) * e;
        Ok(PolyKernel { e, d, arity, spatial, comps: vec![Poly::zero(nvars); d] })
    }

    pub fn from_terms(
        e: usize,
        d: usize,
        arity: usize,
        spatial: bool,
        terms: &[KernelTerm],
    ) -> Result<Self> {
        let mut k = Self::new(e, d, arity, spatial)?;
        for t in terms {
            k.add_term(t)?;
        }
        Ok(k)
    }

    /// Builds a kernel from one polynomial per output component.
    pub fn from_components(
        e: usize,
        arity: usize,
        spatial: bool,
        comps: Vec<Poly>,
    ) -> Result<Self> {
        let mut k = Self::new(e, comps.len(), arity, spatial)?;
        for p in &comps {
            if p.nvars() != k.nvars() {
                return Err(Error::Dimension(format!(
                    "component has {} variables, expected {}",
                    p.nvars(),
                    k.nvars()
                )));
            }
        }
        k.comps = comps;
        Ok(k)
    }

    pub fn nslots(&self) -> usize {
        self.arity + usize::from(self.spatial)
    }

    pub fn nvars(&self) -> usize {
        self.nslots() * self.e
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn add_term(&mut self, t: &KernelTerm) -> Result<()> {
        if t.out >= self.d {
            return Err(Error::Dimension(format!("output {} out of range 0..{}", t.out, self.d)));
        }
        if t.exps.len() != self.nslots() || t.exps.iter().any(|r| r.len() != self.e) {
            return Err(Error::Dimension(format!(
                "exponent table must be {} x {}",
                self.nslots(),
                self.e
            )));
        }
        let flat: Vec<u32> = t.exps.iter().flatten().copied().collect();
        let mut p = Poly::zero(self.nvars());
        p.add_term(flat, t.coeff.clone());
        self.comps[t.out] = self.comps[t.out].add(&p);
        Ok(())
    }

    /// Terms in canonical order (output component, then exponent table).
    pub fn terms(&self) -> Vec<KernelTerm> {
        let mut out = Vec::new();
        for (o, p) in self.comps.iter().enumerate() {
            for (e, c) in p.terms() {
                out.push(KernelTerm {
                    out: o,
                    coeff: c.clone(),
                    exps: e.chunks(self.e).map(<[u32]>::to_vec).collect(),
                });
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &PolyKernel) -> Result<PolyKernel> {
        if (self.e, self.d, self.arity, self.spatial)
            != (other.e, other.d, other.arity, other.spatial)
        {
            return Err(Error::Dimension("kernels have different shapes".into()));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        Ok(PolyKernel { comps, ..self.clone() })
    }
}

/// Role of a kernel slot inside one derivative term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Spatial,
    Free(u32),
    Integrated,
}

/// One kernel derivative with its slot assignment.
///
/// `comps[out·e^r + i₁·e^{r−1} + … + i_r]` is the component for output
/// `out` and directions `i₁..i_r`, direction `k` belonging to letter `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivTerm {
    pub slots: Vec<Slot>,
    pub comps: Vec<Poly>,
}

impl DerivTerm {
    pub fn integrated_slots(&self) -> Vec<usize> {
        (0..self.slots.len()).filter(|&s| self.slots[s] == Slot::Integrated).collect()
    }

    pub fn free_slot(&self, j: u32) -> Option<usize> {
        self.slots.iter().position(|&s| s == Slot::Free(j))
    }
}

/// Symbolic `∂_a f` as a sum of kernel-derivative terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivTermSum {
    pub seq: Vec<u32>,
    pub e: usize,
    pub d: usize,
    pub spatial: bool,
    pub nfree: u32,
    pub terms: Vec<DerivTerm>,
}

impl DerivTermSum {
    /// `∂_∅ f = f`.
    pub fn identity(f: &PolyKernel) -> Self {
        let mut slots = vec![Slot::Integrated; f.nslots()];
        if f.spatial {
            slots[0] = Slot::Spatial;
        }
        let nonzero = f.comps.iter().any(|p| !p.is_zero());
        let terms = if nonzero {
            vec![DerivTerm { slots, comps: f.comps.clone() }]
        } else {
            Vec::new()
        };
        DerivTermSum { seq: Vec::new(), e: f.e, d: f.d, spatial: f.spatial, nfree: 0, terms }
    }

    pub fn rank(&self) -> usize {
        self.seq.len()
    }

    /// Number of tensor components `d·e^{|a|}`.
    pub fn ncomps(&self) -> usize {
        self.d * self.e.pow(self.rank() as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn nslots(&self) -> usize {
        self.terms.first().map_or(0, |t| t.slots.len())
    }

    /// Applies one more letter: `0` is `∇_{x₀}`, `j ≤ m` is `∇_{x_j}`, `m+1` is `∂_μ`.
    pub fn extend(&self, letter: u32) -> Result<DerivTermSum> {
        if letter > self.nfree + 1 {
            return Err(Error::InvalidSequence(format!(
                "letter {letter} exceeds {} after {:?}",
                self.nfree + 1,
                self.seq
            )));
        }
        if letter == 0 && !self.spatial {
            return Err(Error::Domain("spatial derivative of a functional without x0".into()));
        }
        let e = self.e;
        let mut merged: BTreeMap<Vec<Slot>, Vec<Poly>> = BTreeMap::new();
        let mut push = |slots: Vec<Slot>, comps: Vec<Poly>| {
            if comps.iter().all(Poly::is_zero) {
                return;
            }
            match merged.get_mut(&slots) {
                Some(acc) => {
                    for (a, c) in acc.iter_mut().zip(&comps) {
                        *a = a.add(c);
                    }
                }
                None => {
                    merged.insert(slots, comps);
                }
            }
        };
        for t in &self.terms {
            let target = match letter {
                0 => Some(Slot::Spatial),
                j if j <= self.nfree => Some(Slot::Free(j)),
                _ => None,
            };
            match target {
                Some(role) => {
                    for s in (0..t.slots.len()).filter(|&s| t.slots[s] == role) {
                        push(t.slots.clone(), differentiate(&t.comps, s, e));
                    }
                }
                None => {
                    for s in t.integrated_slots() {
                        let mut slots = t.slots.clone();
                        slots[s] = Slot::Free(letter);
                        push(slots, differentiate(&t.comps, s, e));
                    }
                }
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.iter().any(|p| !p.is_zero()))
            .map(|(slots, comps)| DerivTerm { slots, comps })
            .collect();
        let mut seq = self.seq.clone();
        seq.push(letter);
        Ok(DerivTermSum {
            seq,
            e,
            d: self.d,
            spatial: self.spatial,
            nfree: self.nfree.max(letter),
            terms,
        })
    }

    /// For each term, the kernel slot differentiated by each direction.
    pub fn direction_order(&self) -> Vec<Vec<usize>> {
        self.terms
            .iter()
            .map(|t| {
                self.seq
                    .iter()
                    .map(|&l| {
                        let role = if l == 0 { Slot::Spatial } else { Slot::Free(l) };
                        t.slots.iter().position(|&s| s == role).unwrap_or(usize::MAX)
                    })
                    .collect()
            })
            .collect()
    }

    /// All terms merged into one polynomial map on `[x₀ | x_1..x_m | z_1..z_p]`,
    /// where the `z`'s stand for the integrated slots.
    ///
    /// Integrating this map against `μ^{⊗p}` recovers `∂_a f`.
    pub fn combined(&self) -> (usize, Vec<Poly>) {
        let e = self.e;
        let sp = usize::from(self.spatial);
        let nslots = self.nslots();
        let arity = nslots.saturating_sub(sp);
        let nblocks = sp + self.nfree as usize + arity;
        let nvars = nblocks * e;
        let mut out = vec![Poly::zero(nvars); self.ncomps()];
        for t in &self.terms {
            let mut map = Vec::with_capacity(nslots * e);
            for (s, role) in t.slots.iter().enumerate() {
                let block = match role {
                    Slot::Spatial => 0,
                    Slot::Free(j) => sp + *j as usize - 1,
                    Slot::Integrated => sp + self.nfree as usize + (s - sp),
                };
                map.extend((0..e).map(|c| block * e + c));
            }
            for (o, p) in out.iter_mut().zip(&t.comps) {
                *o = o.add(&p.rename(&map, nvars));
            }
        }
        (nblocks, out)
    }
}

fn differentiate(comps: &[Poly], slot: usize, e: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(comps.len() * e);
    for p in comps {
        for c in 0..e {
            out.push(p.derivative(slot * e + c));
        }
    }
    out
}

/// Symbolic `∂_a f`, built letter by letter.
pub fn lions_derivative(f: &PolyKernel, a: &[u32]) -> Result<DerivTermSum> {
    tagged::validate(a)?;
    let mut d = DerivTermSum::identity(f);
    for &l in a {
        d = d.extend(l)?;
    }
    Ok(d)
}

/// Evaluates `∂_a f(x₀, μ, x_1..x_m)` as a tensor of `d·e^{|a|}` components.
pub fn eval_derivative<R: Ring>(
    dsum: &DerivTermSum,
    x0: Option<&[R]>,
    atoms: &[Vec<R>],
    free: &[Vec<R>],
) -> Result<Vec<R>> {
    let e = dsum.e;
    if free.len() != dsum.nfree as usize {
        return Err(Error::Dimension(format!(
            "{} free points given, {} required",
            free.len(),
            dsum.nfree
        )));
    }
    if dsum.spatial && x0.is_none() {
        return Err(Error::Dimension("missing spatial point".into()));
    }
    if atoms.is_empty() {
        return Err(Error::Dimension("empty measure".into()));
    }
    let dims_ok = x0.is_none_or(|p| p.len() == e)
        && free.iter().all(|p| p.len() == e)
        && atoms.iter().all(|p| p.len() == e);
    if !dims_ok {
        return Err(Error::Dimension(format!("points must have dimension {e}")));
    }
    let n = atoms.len();
    let mut total = vec![R::zero(); dsum.ncomps()];
    for t in &dsum.terms {
        let mut vars = vec![R::zero(); t.slots.len() * e];
        for (s, role) in t.slots.iter().enumerate() {
            let src = match role {
                Slot::Spatial => x0.unwrap(),
                Slot::Free(j) => &free[*j as usize - 1][..],
                Slot::Integrated => continue,
            };
            vars[s * e..(s + 1) * e].clone_from_slice(src);
        }
        let integ = t.integrated_slots();
        let mut idx = vec![0usize; integ.len()];
        let mut acc = vec![R::zero(); t.comps.len()];
        loop {
            for (&s, &i) in integ.iter().zip(&idx) {
                vars[s * e..(s + 1) * e].clone_from_slice(&atoms[i]);
            }
            for (a, p) in acc.iter_mut().zip(&t.comps) {
                *a = a.add(&p.eval(&vars));
            }
            if !odometer(&mut idx, n) {
                break;
            }
        }
        let w = int(1) / int(n as i64).pow(integ.len() as i32);
        for (tot, a) in total.iter_mut().zip(&acc) {
            *tot = tot.add(&a.scale(&w));
        }
    }
    Ok(total)
}

/// Advances a base-`n` counter; `false` once it wraps around.
pub(crate) fn odometer(idx: &mut [usize], n: usize) -> bool {
    for v in idx.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

/// `f(x₀, μ)`.
pub fn eval<R: Ring>(f: &PolyKernel, x0: Option<&[R]>, atoms: &[Vec<R>]) -> Result<Vec<R>> {
    eval_derivative(&DerivTermSum::identity(f), x0, atoms, &[])
}

/// Contracts the last `dirs.len()` directions of a rank-`rank` tensor.
pub fn contract_tail<R: Ring>(t: &[R], e: usize, rank: usize, dirs: &[&[R]]) -> Vec<R> {
    let k = dirs.len();
    debug_assert!(k <= rank);
    let tail = e.pow(k as u32);
    let mut out = Vec::with_capacity(t.len() / tail);
    for block in t.chunks(tail) {
        let mut acc = R::zero();
        let mut idx = vec![0usize; k];
        for v in block {
            if !v.is_zero() {
                let mut w = v.clone();
                for (d, &i) in dirs.iter().zip(&idx) {
                    w = w.mul(&d[i]);
                }
                acc = acc.add(&w);
            }
            odometer(&mut idx, e);
        }
        out.push(acc);
    }
    out
}

/// Axis-aligned box `Π [lo_c, hi_c] ⊂ ℝ^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxRegion {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() || lo.iter().zip(&hi).any(|(l, h)| !(l <= h)) {
            return Err(Error::Domain("box must be non-empty with lo <= hi".into()));
        }
        Ok(BoxRegion { lo, hi })
    }

    /// Smallest box containing all points.
    pub fn hull<R: Numeric>(points: &[&[R]]) -> Result<Self> {
        let first = points.first().ok_or_else(|| Error::Domain("no points".into()))?;
        let mut lo: Vec<f64> = first.iter().map(Numeric::to_f64).collect();
        let mut hi = lo.clone();
        for p in points {
            for (c, v) in p.iter().enumerate() {
                let v = v.to_f64();
                lo[c] = lo[c].min(v);
                hi[c] = hi[c].max(v);
            }
        }
        Ok(BoxRegion { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains<R: Numeric>(&self, p: &[R]) -> bool {
        p.len() == self.dim()
            && p.iter().enumerate().all(|(c, v)| {
                let v = v.to_f64();
                let tol = 1e-12 * (1.0 + v.abs());
                v >= self.lo[c] - tol && v <= self.hi[c] + tol
            })
    }

    fn radius(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(l, h)| l.abs().max(h.abs())).collect()
    }
}

/// Grid estimate and certified upper bound of a supremum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormBound {
    /// Largest value seen on the grid, when the grid was affordable.
    pub grid: Option<f64>,
    /// Guaranteed upper bound over the whole box.
    pub certified: f64,
}

/// Box-restricted norms of `∂_a f`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimates {
    pub sup: NormBound,
    /// Lipschitz constant in `x₀`, when the functional has a spatial slot.
    pub lip_spatial: Option<NormBound>,
    pub lip_measure: NormBound,
    /// Lipschitz constants in the free variables `x_1..x_m`.
    pub lip_free: Vec<NormBound>,
}

/// Grid points allowed per supremum before falling back to coefficient bounds.
const GRID_BUDGET: usize = 20_000;

/// Supremum of the Frobenius norm of `∂_a f` over measures and points in the box.
///
/// Integrated slots are bounded pointwise, which dominates every average
/// against a measure supported in the box. With `samples < 2` only the
/// coefficient bound is used.
pub fn sup_on_box(dsum: &DerivTermSum, bx: &BoxRegion, samples: usize) -> Result<NormBound> {
    if bx.dim() != dsum.e {
        return Err(Error::Dimension(format!("box has dimension {}, need {}", bx.dim(), dsum.e)));
    }
    if dsum.is_zero() {
        return Ok(NormBound { grid: Some(0.0), certified: 0.0 });
    }
    let (nblocks, comps) = dsum.combined();
    let e = dsum.e;
    let nvars = nblocks * e;
    let lo: Vec<f64> = (0..nvars).map(|v| bx.lo[v % e]).collect();
    let hi: Vec<f64> = (0..nvars).map(|v| bx.hi[v % e]).collect();
    let radius: Vec<f64> = (0..nvars).map(|v| bx.radius()[v % e]).collect();
    let coeff_bound = libm::sqrt(comps.iter().map(|p| sq(p.abs_bound(&radius))).sum());

    if samples < 2 && nvars > 0 {
        return Ok(NormBound { grid: None, certified: coeff_bound });
    }
    let mut per_axis = samples.max(2);
    while per_axis > 2 && libm::pow(per_axis as f64, nvars as f64) > GRID_BUDGET as f64 {
        per_axis -= 1;
    }
    if nvars > 0 && libm::pow(per_axis as f64, nvars as f64) > GRID_BUDGET as f64 {
        return Ok(NormBound { grid: None, certified: coeff_bound });
    }
    let mut grid_max: f64 = 0.0;
    let mut idx = vec![0usize; nvars];
    let mut point = vec![0.0f64; nvars];
    loop {
        for v in 0..nvars {
            let step = (hi[v] - lo[v]) / (per_axis - 1) as f64;
            point[v] = lo[v] + step * idx[v] as f64;
        }
        let val = libm::sqrt(comps.iter().map(|p| sq(p.eval(&point))).sum());
        grid_max = grid_max.max(val);
        if !odometer(&mut idx, per_axis) {
            break;
        }
    }
    // Any point of the box is within `delta` of a grid point.
    let delta =
        libm::sqrt((0..nvars).map(|v| sq((hi[v] - lo[v]) / (2 * (per_axis - 1)) as f64)).sum());
    let radius = &radius;
    let grad = libm::sqrt(
        comps
            .iter()
            .flat_map(|p| (0..nvars).map(move |v| sq(p.derivative(v).abs_bound(&radius))))
            .sum(),
    );
    let certified = coeff_bound.min(grid_max + grad * delta);
    Ok(NormBound { grid: Some(grid_max), certified })
}

fn sq(x: f64) -> f64 {
    x * x
}

/// Supremum and Lipschitz constants of `∂_a f` on the box.
///
/// Each Lipschitz constant is the supremum of the derivative obtained by
/// appending one more letter: `0` for `x₀`, `j` for `x_j`, `m+1` for `μ`.
pub fn norms_on_box(dsum: &DerivTermSum, bx: &BoxRegion, samples: usize) -> Result<NormEstimates> {
    let sup = sup_on_box(dsum, bx, samples)?;
    let lip_spatial = if dsum.spatial {
        Some(sup_on_box(&dsum.extend(0)?, bx, samples)?)
    } else {
        None
    };
    let lip_measure = sup_on_box(&dsum.extend(dsum.nfree + 1)?, bx, samples)?;
    let lip_free = (1..=dsum.nfree)
        .map(|j| sup_on_box(&dsum.extend(j)?, bx, samples))
        .collect::<Result<Vec<_>>>()?;
    Ok(NormEstimates { sup, lip_spatial, lip_measure, lip_free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn kernel_1d(arity: usize, spatial: bool, terms: &[(i64, &[u32])]) -> PolyKernel {
        let ts: Vec<KernelTerm> = terms
            .iter()
            .map(|(c, ex)| KernelTerm {
                out: 0,
                coeff: int(*c),
                exps: ex.iter().map(|&x| vec![x]).collect(),
            })
            .collect();
        PolyKernel::from_terms(1, 1, arity, spatial, &ts).unwrap()
    }

    fn q(v: i64) -> Vec<Rational> {
        vec![int(v)]
    }

    #[test]
    fn first_derivative_is_kernel_gradient() {
        // k(z) = z³: ∂_μ f(μ, x) = 3x², independent of μ.
        let f = kernel_1d(1, false, &[(1, &[3])]);
        let d = lions_derivative(&f, &[1]).unwrap();
        let atoms = vec![q(5), q(-2)];
        let v = eval_derivative(&d, None, &atoms, &[q(2)]).unwrap();
        assert_eq!(v, vec![int(12)]);
        let hess = eval_derivative(&lions_derivative(&f, &[1, 1]).unwrap(), None, &atoms, &[q(2)]);
        assert_eq!(hess.unwrap(), vec![int(12)]);
    }

    #[test]
    fn linear_functional_has_no_second_measure_derivative() {
        let f = kernel_1d(1, false, &[(1, &[3]), (2, &[1])]);
        assert!(lions_derivative(&f, &[1, 2]).unwrap().is_zero());
    }

    #[test]
    fn convolution_kernel_sign() {
        // k(x₀ − y) with k(u) = u²: ∂_μ f(x₀, μ, x₁) = −2(x₀ − x₁).
        let f = kernel_1d(1, true, &[(1, &[2, 0]), (-2, &[1, 1]), (1, &[0, 2])]);
        let d = lions_derivative(&f, &[1]).unwrap();
        let v = eval_derivative(&d, Some(&q(3)), &[q(0)], &[q(1)]).unwrap();
        assert_eq!(v, vec![int(-4)]);
    }

    #[test]
    fn empty_sequence_evaluates_functional() {
        // f(μ) = ∫∫ z₁z₂ = (mean)².
        let f = kernel_1d(2, false, &[(1, &[1, 1])]);
        let atoms = vec![q(1), q(2), q(6)];
        assert_eq!(eval(&f, None, &atoms).unwrap(), vec![int(9)]);
        // ∂_{(1,2)} f(μ, x₁, x₂) = 2 for the product kernel.
        let d = lions_derivative(&f, &[1, 2]).unwrap();
        assert_eq!(d.terms.len(), 2);
        let v = eval_derivative(&d, None, &atoms, &[q(7), q(8)]).unwrap();
        assert_eq!(v, vec![int(2)]);
    }

    #[test]
    fn spatial_letter_requires_spatial_slot() {
        let f = kernel_1d(1, false, &[(1, &[1])]);
        assert!(lions_derivative(&f, &[0]).is_err());
        assert!(lions_derivative(&f, &[2]).is_err());
    }

    #[test]
    fn free_variable_arity_checked() {
        let f = kernel_1d(1, false, &[(1, &[2])]);
        let d = lions_derivative(&f, &[1]).unwrap();
        assert!(eval_derivative::<Rational>(&d, None, &[q(0)], &[]).is_err());
    }

    #[test]
    fn contraction_of_matrix() {
        // t = [[1,2],[3,4]] with e = 2, rank 2; contract last direction by (1, 1).
        let t: Vec<Rational> = [1, 2, 3, 4].iter().map(|&v| int(v)).collect();
        let one = [int(1), int(1)];
        assert_eq!(contract_tail(&t, 2, 2, &[&one]), vec![int(3), int(7)]);
        let full = contract_tail(&t, 2, 2, &[&one, &[int(0), int(1)]]);
        assert_eq!(full, vec![int(6)]);
    }

    #[test]
    fn norms_of_simple_kernels() {
        let bx = BoxRegion::new(vec![-1.0], vec![1.0]).unwrap();
        let c = kernel_1d(1, false, &[(5, &[0])]);
        let n = norms_on_box(&DerivTermSum::identity(&c), &bx, 9).unwrap();
        assert_eq!(n.sup.grid, Some(5.0));
        assert_eq!(n.lip_measure.certified, 0.0);

        let lin = kernel_1d(1, false, &[(1, &[1])]);
        let n = norms_on_box(&lions_derivative(&lin, &[1]).unwrap(), &bx, 9).unwrap();
        assert_eq!(n.sup.certified, 1.0);
        assert_eq!(n.lip_free[0].certified, 0.0);
        assert_eq!(n.lip_measure.certified, 0.0);

        let sq = kernel_1d(1, false, &[(1, &[2])]);
        let n = norms_on_box(&lions_derivative(&sq, &[1]).unwrap(), &bx, 9).unwrap();
        assert_eq!(n.sup.grid, Some(2.0));
        assert_eq!(n.sup.certified, 2.0);
        assert_eq!(n.lip_free[0].certified, 2.0);
    }

    #[test]
    fn kernel_terms_roundtrip() {
        let f = kernel_1d(2, true, &[(3, &[1, 0, 2]), (-1, &[0, 1, 1])]);
        let again = PolyKernel::from_terms(1, 1, 2, true, &f.terms()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f.degree(), 3);
        let bad = KernelTerm { out: 1, coeff: rat(1, 2), exps: vec![vec![0]; 3] };
        assert!(PolyKernel::new(1, 1, 2, true).unwrap().add_term(&bad).is_err());
    }
}
