//! Classical calculus on the lifted functions `f̄(x) = f(μ̄_N[x])` and
//! `f̄_i(x) = f(x_i, μ̄_N[x])`, used as ground truth.
//!
//! Nothing here calls the Lions-derivative machinery to produce the
//! reference side: lifts are expanded into ordinary polynomials in the
//! `N·e` particle coordinates and differentiated coordinate by coordinate.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expansion::{taylor1, taylor2, ExpansionResult};
use crate::functional::{
    contract_tail, eval_derivative, lions_derivative, odometer, PolyKernel,
};
use crate::measures::{pair_coupling, sub, EmpiricalMeasure};
use crate::partitions::{self, compose, equiv_class, refines};
use crate::poly::Poly;
use crate::ring::{abs_f64, int, rat, Poly1, Rational, Ring};
use crate::tagged::{self, compose_tagged, equiv_class_tagged, refines_tagged, Grading};

/// `f̄` (or `f̄_i`) as a polynomial in `N·e` variables, one per output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPoly {
    pub n: usize,
    pub e: usize,
    /// Particle substituted for `x₀`, 0-based.
    pub distinguished: Option<usize>,
    pub comps: Vec<Poly>,
}

impl LiftedPoly {
    pub fn eval<R: Ring>(&self, x: &[Vec<R>]) -> Vec<R> {
        let flat: Vec<R> = x.iter().flatten().cloned().collect();
        self.comps.iter().map(|p| p.eval(&flat)).collect()
    }
}

/// Expands the nested sums of `f` over `N` particles.
///
/// `i` (0-based) is required exactly when `f` has a spatial slot.
pub fn lift(f: &PolyKernel, n: usize, i: Option<usize>) -> Result<LiftedPoly> {
    if n == 0 {
        return Err(Error::Domain("need at least one particle".into()));
    }
    if f.spatial != i.is_some() || i.is_some_and(|i| i >= n) {
        return Err(Error::Domain("distinguished particle must match the spatial slot".into()));
    }
    let e = f.e;
    let nvars = n * e;
    let sp = usize::from(f.spatial);
    let mut comps = vec![Poly::zero(nvars); f.d];
    let mut idx = vec![0usize; f.arity];
    loop {
        let mut map = Vec::with_capacity(f.nvars());
        if let Some(i) = i {
            map.extend((0..e).map(|c| i * e + c));
        }
        for &p in &idx {
            map.extend((0..e).map(|c| p * e + c));
        }
        debug_assert_eq!(map.len(), (f.arity + sp) * e);
        for (acc, k) in comps.iter_mut().zip(f.components()) {
            *acc = acc.add(&k.rename(&map, nvars));
        }
        if !odometer(&mut idx, n) {
            break;
        }
    }
    let w = int(1) / int(n as i64).pow(f.arity as i32);
    let comps = comps.iter().map(|p| p.scale(&w)).collect();
    Ok(LiftedPoly { n, e, distinguished: i, comps })
}

/// `∇_{i_k} … ∇_{i_1}` of the lift, as a tensor of `d·e^{|idx|}` polynomials.
///
/// Direction `k` is the coordinate of particle `idx[k]` (0-based).
pub fn classical_grad(l: &LiftedPoly, idx: &[usize]) -> Result<Vec<Poly>> {
    if idx.iter().any(|&p| p >= l.n) {
        return Err(Error::Domain(format!("particle index out of range 0..{}", l.n)));
    }
    let mut t = l.comps.clone();
    for &p in idx {
        let mut next = Vec::with_capacity(t.len() * l.e);
        for q in &t {
            for c in 0..l.e {
                next.push(q.derivative(p * l.e + c));
            }
        }
        t = next;
    }
    Ok(t)
}

/// Central-difference step of the float sanity tier.
pub const FD_STEP: f64 = 1e-4;
/// Agreement tolerance of the float sanity tier.
pub const FD_TOLERANCE: f64 = 1e-6;

/// Largest gap between `∇_{particle} L` and its central difference at `x`, in floats.
pub fn finite_difference_gap(l: &LiftedPoly, x: &[Vec<f64>], particle: usize) -> Result<f64> {
    let exact = classical_grad(l, &[particle])?;
    let flat: Vec<f64> = x.iter().flatten().copied().collect();
    let mut gap: f64 = 0.0;
    for c in 0..l.e {
        let (mut fwd, mut bwd) = (x.to_vec(), x.to_vec());
        fwd[particle][c] += FD_STEP;
        bwd[particle][c] -= FD_STEP;
        let (hi, lo) = (l.eval(&fwd), l.eval(&bwd));
        for o in 0..l.comps.len() {
            let fd = (hi[o] - lo[o]) / (2.0 * FD_STEP);
            gap = gap.max((fd - exact[o * l.e + c].eval(&flat)).abs());
        }
    }
    Ok(gap)
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub identity: String,
    pub seed: Option<u64>,
    /// Largest componentwise absolute difference between the two sides.
    pub max_abs_difference: f64,
    /// The two sides agree exactly.
    pub pass: bool,
}

fn compare(identity: String, lhs: &[Rational], rhs: &[Rational]) -> Report {
    let diff: Vec<Rational> = sub(lhs, rhs);
    let pass = lhs.len() == rhs.len() && diff.iter().all(Ring::is_zero);
    let max_abs_difference = diff.iter().map(abs_f64).fold(0.0, f64::max);
    Report { identity, seed: None, max_abs_difference, pass }
}

fn eval_polys(t: &[Poly], x: &[Vec<Rational>]) -> Vec<Rational> {
    let flat: Vec<Rational> = x.iter().flatten().cloned().collect();
    t.iter().map(|p| p.eval(&flat)).collect()
}

/// `∇_𝒊 f̄(x) = Σ_{a ⊆ ⟦𝒊⟧} N^{−m[a]} ∂_a f(μ̄_N[x], x_{𝒊∘(a)})`.
pub fn verify_empirical_deriv(
    f: &PolyKernel,
    x: &[Vec<Rational>],
    idx: &[usize],
) -> Result<Report> {
    if f.spatial {
        return Err(Error::Domain("expected a functional without x0".into()));
    }
    let n = x.len();
    let lhs = eval_polys(&classical_grad(&lift(f, n, None)?, idx)?, x);
    let pattern = equiv_class(idx);
    let mut rhs = vec![int(0); lhs.len()];
    for a in partitions::enum_a(idx.len(), usize::MAX)? {
        if !refines(&a, &pattern)? {
            continue;
        }
        let particles = compose(idx, &a)?;
        let free: Vec<Vec<Rational>> = particles.iter().map(|&p| x[p].clone()).collect();
        let v = eval_derivative(&lions_derivative(f, &a)?, None, x, &free)?;
        let w = int(1) / int(n as i64).pow(particles.len() as i32);
        for (r, t) in rhs.iter_mut().zip(&v) {
            *r += t * &w;
        }
    }
    Ok(compare(format!("empirical-deriv N={n} idx={idx:?}"), &lhs, &rhs))
}

/// `∇_𝒋 f̄_i(x) = Σ_{a ⊆ ⟦𝒋⟧_i} N^{−m[a]} ∂_a f(x_i, μ̄_N[x], x_{𝒋∘(a)})`.
pub fn verify_fullsystem(
    f: &PolyKernel,
    x: &[Vec<Rational>],
    i: usize,
    idx: &[usize],
) -> Result<Report> {
    if !f.spatial {
        return Err(Error::Domain("expected a functional with x0".into()));
    }
    let n = x.len();
    let lhs = eval_polys(&classical_grad(&lift(f, n, Some(i))?, idx)?, x);
    let pattern = equiv_class_tagged(idx, &i);
    let mut rhs = vec![int(0); lhs.len()];
    for a in tagged::enum_a0(idx.len(), usize::MAX)? {
        if !refines_tagged(&a, &pattern)? {
            continue;
        }
        let particles = compose_tagged(idx, &a)?;
        let free: Vec<Vec<Rational>> = particles.iter().map(|&p| x[p].clone()).collect();
        let v = eval_derivative(&lions_derivative(f, &a)?, Some(&x[i]), x, &free)?;
        let w = int(1) / int(n as i64).pow(particles.len() as i32);
        for (r, t) in rhs.iter_mut().zip(&v) {
            *r += t * &w;
        }
    }
    Ok(compare(format!("fullsystem N={n} i={i} idx={idx:?}"), &lhs, &rhs))
}

/// `g(ξ) = L(x + ξ(y − x))` per output component.
fn line_restriction(l: &LiftedPoly, x: &[Vec<Rational>], y: &[Vec<Rational>]) -> Vec<Poly1<Rational>> {
    let path: Vec<Vec<Poly1<Rational>>> = x
        .iter()
        .zip(y)
        .map(|(a, b)| a.iter().zip(b).map(|(p, q)| Poly1::affine(p, &(q - p))).collect())
        .collect();
    l.eval(&path)
}

/// Classical order-`n` Taylor data of `g`: coefficients `g^{(k)}(0)/k!`, `k ≤ n`,
/// and the integral remainder `∫₀¹ (g^{(n)}(ξ) − g^{(n)}(0)) (1−ξ)^{n−1}/(n−1)! dξ`.
fn classical_taylor(g: &Poly1<Rational>, n: usize) -> (Vec<Rational>, Rational) {
    let coeffs = (0..=n).map(|k| g.coeffs().get(k).cloned().unwrap_or_else(|| int(0))).collect();
    let mut dn = g.clone();
    for _ in 0..n {
        dn = dn.derivative();
    }
    let at0 = dn.eval(&int(0));
    let rem = dn.sub(&Poly1::constant(at0)).integrate_taylor_kernel(n);
    (coeffs, rem)
}

/// Outcome of matching a Lions expansion against the classical one.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionMatch {
    pub report: Report,
    /// Largest `|remainder|` over particles (one entry when `f` has no `x₀`).
    pub remainder: f64,
    /// Smallest `bound − |remainder|` over particles.
    pub bound_margin: f64,
}

/// Jets and remainders of the Lions expansion agree with the classical
/// Taylor expansion of the lift along `x + ξ(y − x)`.
///
/// Without `x₀`, the lift `f̄` is compared with `taylor1`. With `x₀`, each
/// `f̄_i` is compared with `taylor2` at `α = β = 1`, `γ = n + 1/2`, with
/// `x₀ = x_i` and `y₀ = y_i`.
pub fn verify_expansion_match(
    f: &PolyKernel,
    x: &[Vec<Rational>],
    y: &[Vec<Rational>],
    n: usize,
) -> Result<ExpansionMatch> {
    let c = pair_coupling(x, y)?;
    let targets: Vec<Option<usize>> =
        if f.spatial { (0..x.len()).map(Some).collect() } else { vec![None] };
    let mut worst = 0.0f64;
    let mut remainder = 0.0f64;
    let mut margin = f64::INFINITY;
    let mut pass = true;
    for i in targets {
        let l = lift(f, x.len(), i)?;
        let r: ExpansionResult<Rational> = match i {
            None => taylor1(f, &c, n)?,
            Some(i) => {
                let g = Grading::new(int(1), int(1), int(n as i64) + rat(1, 2))?;
                taylor2(f, &x[i], &y[i], &c, &g)?
            }
        };
        let line = line_restriction(&l, x, y);
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (comp, g) in line.iter().enumerate() {
            let (coeffs, rem) = classical_taylor(g, n);
            for (k, ck) in coeffs.iter().enumerate() {
                lhs.push(ck.clone());
                rhs.push(r.jet_order(k)[comp].clone());
            }
            lhs.push(rem);
            rhs.push(r.remainder_sum()[comp].clone());
        }
        let rep = compare(String::new(), &lhs, &rhs);
        pass &= rep.pass;
        worst = worst.max(rep.max_abs_difference);
        let rn = r.remainder_norm();
        remainder = remainder.max(rn);
        margin = margin.min(r.remainder_bound - rn);
        pass &= r.remainder_bound * (1.0 + 1e-9) >= rn;
    }
    let report = Report {
        identity: format!("expansion-match N={} n={n}", x.len()),
        seed: None,
        max_abs_difference: worst,
        pass,
    };
    Ok(ExpansionMatch { report, remainder, bound_margin: margin })
}

/// `∂_a f(x₀, μ, x)·⊗v_i = ∂_{⟦σ[a]⟧₀} f(x₀, μ, x')·⊗v_{σ(i)}`, where
/// `σ[a]_i = a_{σ(i)}` and `x'` lists the free points in the order their
/// labels first occur in `σ[a]`.
///
/// `sigma` is a 0-based permutation of `0..|a|`.
pub fn schwarz_check(
    f: &PolyKernel,
    a: &[u32],
    sigma: &[usize],
    x0: Option<&[Rational]>,
    mu: &EmpiricalMeasure<Rational>,
    free: &[Vec<Rational>],
    dirs: &[Vec<Rational>],
) -> Result<Report> {
    tagged::validate(a)?;
    let k = a.len();
    let mut seen = vec![false; k];
    if sigma.len() != k || sigma.iter().any(|&s| s >= k || core::mem::replace(&mut seen[s], true))
    {
        return Err(Error::Domain(format!("{sigma:?} is not a permutation of 0..{k}")));
    }
    if dirs.len() != k {
        return Err(Error::LengthMismatch(dirs.len(), k));
    }
    let lhs = contract_all(f, a, x0, mu, free, dirs)?;
    let permuted: Vec<u32> = sigma.iter().map(|&s| a[s]).collect();
    let a2 = equiv_class_tagged(&permuted, &0);
    let m2 = partitions::max_label(&a2) as usize;
    let mut free2 = vec![Vec::new(); m2];
    for (new, old) in a2.iter().zip(&permuted) {
        if *new > 0 {
            free2[*new as usize - 1] = free[*old as usize - 1].clone();
        }
    }
    let dirs2: Vec<Vec<Rational>> = sigma.iter().map(|&s| dirs[s].clone()).collect();
    let rhs = contract_all(f, &a2, x0, mu, &free2, &dirs2)?;
    Ok(compare(format!("schwarz a={a:?} sigma={sigma:?}"), &lhs, &rhs))
}

fn contract_all(
    f: &PolyKernel,
    a: &[u32],
    x0: Option<&[Rational]>,
    mu: &EmpiricalMeasure<Rational>,
    free: &[Vec<Rational>],
    dirs: &[Vec<Rational>],
) -> Result<Vec<Rational>> {
    let t = eval_derivative(&lions_derivative(f, a)?, x0, &mu.atoms, free)?;
    let refs: Vec<&[Rational]> = dirs.iter().map(Vec::as_slice).collect();
    Ok(contract_tail(&t, f.e, a.len(), &refs))
}

/// Swaps the two directions of a rank-2 tensor with `d·e²` components.
fn transpose2(t: &[Rational], e: usize) -> Vec<Rational> {
    let mut out = t.to_vec();
    for (o, block) in t.chunks(e * e).enumerate() {
        for i in 0..e {
            for j in 0..e {
                out[o * e * e + j * e + i] = block[i * e + j].clone();
            }
        }
    }
    out
}

/// Tensor-level symmetry checks of second derivatives:
/// `∂_{(0,1)} = ∂_{(1,0)}^T`, `∂_{(1,1)} = ∂_{(1,1)}^T` and
/// `∂_{(1,2)}(x₁, x₂) = ∂_{(1,2)}(x₂, x₁)^T`.
pub fn named_symmetry_checks(
    f: &PolyKernel,
    x0: Option<&[Rational]>,
    mu: &EmpiricalMeasure<Rational>,
    x1: &[Rational],
    x2: &[Rational],
) -> Result<Vec<Report>> {
    let e = f.e;
    let at = |a: &[u32], free: &[Vec<Rational>]| -> Result<Vec<Rational>> {
        eval_derivative(&lions_derivative(f, a)?, x0, &mu.atoms, free)
    };
    let (p1, p2) = (x1.to_vec(), x2.to_vec());
    let mut out = Vec::new();
    if f.spatial {
        let t01 = at(&[0, 1], &[p1.clone()])?;
        let t10 = at(&[1, 0], &[p1.clone()])?;
        out.push(compare("d01-transpose".into(), &t01, &transpose2(&t10, e)));
    }
    let t11 = at(&[1, 1], &[p1.clone()])?;
    out.push(compare("d11-transpose".into(), &t11, &transpose2(&t11, e)));
    let t12 = at(&[1, 2], &[p1.clone(), p2.clone()])?;
    let t21 = at(&[1, 2], &[p2, p1])?;
    out.push(compare("d12-exchange".into(), &t12, &transpose2(&t21, e)));
    Ok(out)
}

/// `#{𝒊 ∈ {1..N}^n : ⟦𝒊⟧ = a}` by enumeration.
pub fn count_pattern_indices(n_particles: usize, a: &[u32]) -> u128 {
    let n = a.len();
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        if equiv_class(&idx) == a {
            count += 1;
        }
        if !odometer(&mut idx, n_particles) {
            break;
        }
    }
    count
}

/// `N(N−1)…(N−m+1)`.
pub fn falling_factorial(n: usize, m: usize) -> u128 {
    (0..m).map(|k| n.saturating_sub(k) as u128).product()
}

/// Expansion order used in a convergence study.
#[derive(Clone, Debug, PartialEq)]
pub enum StudyOrder {
    /// `taylor1` of order `n`.
    Order(usize),
    /// `taylor2` with this grading; `x₀` is fixed and `y₀ = x₀ + h·Δ₀`.
    Graded { grading: Grading, x0: Vec<Rational>, delta0: Vec<Rational> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub remainder: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log₂|R|` against `log₂ h`; `None` when the
    /// remainder vanishes identically.
    pub slope: Option<f64>,
}

/// Remainders and bounds for `y = x + h·Δ` over the given `h` values.
pub fn convergence_study(
    f: &PolyKernel,
    x: &[Vec<Rational>],
    delta: &[Vec<Rational>],
    order: &StudyOrder,
    hs: &[Rational],
) -> Result<ConvergenceTable> {
    if x.len() != delta.len() {
        return Err(Error::LengthMismatch(x.len(), delta.len()));
    }
    if hs.windows(2).any(|w| w[1] >= w[0]) || hs.iter().any(|h| *h <= int(0)) {
        return Err(Error::Domain("h values must be positive and decreasing".into()));
    }
    let mut rows = Vec::new();
    for h in hs {
        let shift = |p: &[Rational], d: &[Rational]| -> Vec<Rational> {
            p.iter().zip(d).map(|(a, b)| a + h * b).collect()
        };
        let y: Vec<Vec<Rational>> = x.iter().zip(delta).map(|(p, d)| shift(p, d)).collect();
        let c = pair_coupling(x, &y)?;
        let r = match order {
            StudyOrder::Order(n) => taylor1(f, &c, *n)?,
            StudyOrder::Graded { grading, x0, delta0 } => {
                taylor2(f, x0, &shift(x0, delta0), &c, grading)?
            }
        };
        rows.push(ConvergenceRow {
            h: abs_f64(h),
            remainder: r.remainder_norm(),
            bound: r.remainder_bound,
        });
    }
    let slope = fit_slope(&rows);
    Ok(ConvergenceTable { rows, slope })
}

/// Ordinary least squares on `(log₂ h, log₂ |R|)`, ignoring rows with `|R| < 1e-14`.
pub fn fit_slope(rows: &[ConvergenceRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.remainder >= 1e-14)
        .map(|r| (libm::log2(r.h), libm::log2(r.remainder)))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::KernelTerm;

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

    fn pts(v: &[i64]) -> Vec<Vec<Rational>> {
        v.iter().map(|&c| vec![int(c)]).collect()
    }

    #[test]
    fn lift_examples() {
        let mean = kernel_1d(1, false, &[(1, &[1])]);
        let l = lift(&mean, 2, None).unwrap();
        let half = Poly::var(2, 0).add(&Poly::var(2, 1)).scale(&rat(1, 2));
        assert_eq!(l.comps[0], half);

        let prod = kernel_1d(2, false, &[(1, &[1, 1])]);
        let l = lift(&prod, 2, None).unwrap();
        let s = Poly::var(2, 0).add(&Poly::var(2, 1));
        assert_eq!(l.comps[0], s.mul(&s).scale(&rat(1, 4)));
        let g11 = classical_grad(&l, &[0, 0]).unwrap();
        let g12 = classical_grad(&l, &[0, 1]).unwrap();
        assert_eq!(g11[0], Poly::constant(2, rat(1, 2)));
        assert_eq!(g12[0], Poly::constant(2, rat(1, 2)));

        let sp = kernel_1d(1, true, &[(1, &[1, 1])]);
        let l = lift(&sp, 2, Some(0)).unwrap();
        assert_eq!(l.comps[0], Poly::var(2, 0).mul(&s).scale(&rat(1, 2)));
    }

    #[test]
    fn first_and_second_order_identities() {
        let f = kernel_1d(2, false, &[(1, &[2, 1]), (-3, &[1, 0]), (1, &[3, 0])]);
        let x = pts(&[1, -2, 3]);
        for idx in [vec![0], vec![1, 1], vec![0, 2], vec![2, 0, 2]] {
            assert!(verify_empirical_deriv(&f, &x, &idx).unwrap().pass);
        }
        let g = kernel_1d(2, true, &[(1, &[1, 2, 1]), (2, &[2, 1, 0])]);
        for idx in [vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 2, 0]] {
            assert!(verify_fullsystem(&g, &x, 0, &idx).unwrap().pass);
        }
    }

    #[test]
    fn expansion_match_small() {
        let f = kernel_1d(2, false, &[(1, &[1, 1])]);
        let m = verify_expansion_match(&f, &pts(&[0, 1]), &pts(&[2, -1]), 2).unwrap();
        assert!(m.report.pass);
        assert_eq!(m.remainder, 0.0);
        let cubic = kernel_1d(2, false, &[(1, &[2, 1]), (1, &[3, 0])]);
        let m = verify_expansion_match(&cubic, &pts(&[0, 1, 2]), &pts(&[1, -1, 3]), 2).unwrap();
        assert!(m.report.pass && m.remainder > 0.0);
    }

    #[test]
    fn schwarz_swap_and_transpose() {
        let f = kernel_1d(2, true, &[(1, &[1, 2, 1]), (1, &[1, 1, 0]), (3, &[0, 2, 2])]);
        let mu = EmpiricalMeasure::new(pts(&[1, 2, -1])).unwrap();
        let free = pts(&[2, -1]);
        let dirs = pts(&[3, 5]);
        let x0 = [int(1)];
        assert!(schwarz_check(&f, &[1, 2], &[1, 0], Some(&x0), &mu, &free, &dirs).unwrap().pass);
        assert!(schwarz_check(&f, &[0, 1], &[1, 0], Some(&x0), &mu, &free[..1], &dirs).unwrap().pass);
        for r in named_symmetry_checks(&f, Some(&x0), &mu, &free[0], &free[1]).unwrap() {
            assert!(r.pass, "{}", r.identity);
        }
    }

    #[test]
    fn finite_differences_agree() {
        let f = kernel_1d(2, false, &[(1, &[2, 1]), (-3, &[1, 0])]);
        let l = lift(&f, 3, None).unwrap();
        let x = [vec![0.5], vec![-1.0], vec![0.25]];
        for p in 0..3 {
            assert!(finite_difference_gap(&l, &x, p).unwrap() < FD_TOLERANCE);
        }
    }

    #[test]
    fn regrouping_counts() {
        assert_eq!(count_pattern_indices(3, &[1, 2, 1]), 6);
        assert_eq!(count_pattern_indices(2, &[1, 2, 3]), 0);
        assert_eq!(falling_factorial(3, 2), 6);
    }
}
