//! Uniform empirical measures, diagonal couplings and Wasserstein distances.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::{int, Numeric, Rational, Ring};

/// `(1/N) Σ δ_{x_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMeasure<R> {
    pub atoms: Vec<Vec<R>>,
}

impl<R: Numeric> EmpiricalMeasure<R> {
    pub fn new(atoms: Vec<Vec<R>>) -> Result<Self> {
        check_points(&atoms)?;
        Ok(EmpiricalMeasure { atoms })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].len()
    }
}

fn check_points<R>(pts: &[Vec<R>]) -> Result<()> {
    let e = pts.first().map(Vec::len).ok_or_else(|| Error::Domain("no atoms".into()))?;
    if e == 0 || pts.iter().any(|p| p.len() != e) {
        return Err(Error::Dimension("atoms must share a positive dimension".into()));
    }
    Ok(())
}

/// `(1/N) Σ δ_{(x_i, y_i)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling<R> {
    pub pairs: Vec<(Vec<R>, Vec<R>)>,
}

/// Pairs `x_i` with `y_i`.
pub fn pair_coupling<R: Numeric>(x: &[Vec<R>], y: &[Vec<R>]) -> Result<Coupling<R>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    check_points(x)?;
    check_points(y)?;
    if x[0].len() != y[0].len() {
        return Err(Error::Dimension(format!("{} vs {}", x[0].len(), y[0].len())));
    }
    Ok(Coupling { pairs: x.iter().cloned().zip(y.iter().cloned()).collect() })
}

impl<R: Numeric> Coupling<R> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.pairs[0].0.len()
    }

    pub fn left(&self) -> EmpiricalMeasure<R> {
        EmpiricalMeasure { atoms: self.pairs.iter().map(|p| p.0.clone()).collect() }
    }

    pub fn right(&self) -> EmpiricalMeasure<R> {
        EmpiricalMeasure { atoms: self.pairs.iter().map(|p| p.1.clone()).collect() }
    }

    /// Gaps `y_i − x_i`.
    pub fn gaps(&self) -> Vec<Vec<R>> {
        self.pairs.iter().map(|(x, y)| sub(y, x)).collect()
    }

    /// `Π_ξ`: atoms `x_i + ξ(y_i − x_i)`.
    pub fn interpolate(&self, xi: &R) -> Result<EmpiricalMeasure<R>> {
        if *xi < R::zero() || *xi > R::one() {
            return Err(Error::Domain(format!("xi = {} outside [0, 1]", xi.to_f64())));
        }
        let atoms = self
            .pairs
            .iter()
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a.add(&xi.mul(&b.sub(a)))).collect())
            .collect();
        Ok(EmpiricalMeasure { atoms })
    }
}

pub(crate) fn sub<R: Ring>(y: &[R], x: &[R]) -> Vec<R> {
    y.iter().zip(x).map(|(a, b)| a.sub(b)).collect()
}

/// Euclidean norm as a float.
pub fn norm<R: Numeric>(v: &[R]) -> f64 {
    libm::sqrt(v.iter().map(|c| c.to_f64() * c.to_f64()).sum())
}

/// `(1/N) Σ |y_i − x_i|^p`.
pub fn coupling_moment<R: Numeric>(c: &Coupling<R>, p: u32) -> f64 {
    let n = c.len() as f64;
    c.gaps().iter().map(|g| libm::pow(norm(g), p as f64)).sum::<f64>() / n
}

/// Exact `(1/N) Σ |y_i − x_i|^p` for even `p`.
pub fn coupling_moment_exact(c: &Coupling<Rational>, p: u32) -> Result<Rational> {
    if p % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "moment of odd order {p} is irrational in general; use float mode"
        )));
    }
    let mut acc = int(0);
    for g in c.gaps() {
        let sq = g.iter().fold(int(0), |s, v| s + v * v);
        acc += Ring::pow(&sq, p / 2);
    }
    Ok(acc / int(c.len() as i64))
}

/// `W^{(q)}` between equal-size empirical measures via optimal assignment.
pub fn wasserstein<R: Numeric>(
    mu: &EmpiricalMeasure<R>,
    nu: &EmpiricalMeasure<R>,
    q: u32,
) -> Result<f64> {
    let cost = transport_costs(mu, nu, q)?;
    let n = mu.len();
    let (_, total) = assignment::solve(&cost, n);
    Ok(root(total / n as f64, q))
}

/// `W^{(q)}` in dimension one by matching sorted atoms.
pub fn wasserstein_sorted_1d<R: Numeric>(
    mu: &EmpiricalMeasure<R>,
    nu: &EmpiricalMeasure<R>,
    q: u32,
) -> Result<f64> {
    transport_costs(mu, nu, q)?;
    if mu.dim() != 1 {
        return Err(Error::Unsupported("sorted matching needs dimension 1".into()));
    }
    let sorted = |m: &EmpiricalMeasure<R>| {
        let mut v: Vec<f64> = m.atoms.iter().map(|p| p[0].to_f64()).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let (a, b) = (sorted(mu), sorted(nu));
    let total: f64 = a.iter().zip(&b).map(|(x, y)| libm::pow((x - y).abs(), q as f64)).sum();
    Ok(root(total / a.len() as f64, q))
}

fn root(x: f64, q: u32) -> f64 {
    match q {
        1 => x,
        2 => libm::sqrt(x),
        _ => libm::pow(x, 1.0 / q as f64),
    }
}

fn transport_costs<R: Numeric>(
    mu: &EmpiricalMeasure<R>,
    nu: &EmpiricalMeasure<R>,
    q: u32,
) -> Result<Vec<f64>> {
    if q == 0 {
        return Err(Error::Domain("order q must be positive".into()));
    }
    if mu.len() != nu.len() {
        return Err(Error::Unsupported(format!(
            "measures with {} and {} atoms; only equal sizes are supported",
            mu.len(),
            nu.len()
        )));
    }
    if mu.is_empty() || mu.dim() != nu.dim() {
        return Err(Error::Dimension("measures must be non-empty and share dimension".into()));
    }
    let mut cost = Vec::with_capacity(mu.len() * nu.len());
    for x in &mu.atoms {
        for y in &nu.atoms {
            cost.push(libm::pow(norm(&sub(y, x)), q as f64));
        }
    }
    Ok(cost)
}

/// Minimum-cost perfect matching on a dense square matrix.
pub mod assignment {
    use super::*;

    /// Returns `(col_of_row, total_cost)` for the row-major `n×n` matrix `cost`.
    ///
    /// Shortest augmenting paths with row and column potentials, `O(n³)`.
    pub fn solve(cost: &[f64], n: usize) -> (Vec<usize>, f64) {
        assert_eq!(cost.len(), n * n);
        // 1-based arrays; column 0 is a virtual source.
        let mut u = vec![0.0f64; n + 1];
        let mut v = vec![0.0f64; n + 1];
        let mut row_of_col = vec![0usize; n + 1];
        let mut way = vec![0usize; n + 1];
        for i in 1..=n {
            row_of_col[0] = i;
            let mut j0 = 0;
            let mut minv = vec![f64::INFINITY; n + 1];
            let mut used = vec![false; n + 1];
            loop {
                used[j0] = true;
                let i0 = row_of_col[j0];
                let mut delta = f64::INFINITY;
                let mut j1 = 0;
                for j in 1..=n {
                    if used[j] {
                        continue;
                    }
                    let cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
                for j in 0..=n {
                    if used[j] {
                        u[row_of_col[j]] += delta;
                        v[j] -= delta;
                    } else {
                        minv[j] -= delta;
                    }
                }
                j0 = j1;
                if row_of_col[j0] == 0 {
                    break;
                }
            }
            loop {
                let j1 = way[j0];
                row_of_col[j0] = row_of_col[j1];
                j0 = j1;
                if j0 == 0 {
                    break;
                }
            }
        }
        let mut col_of_row = vec![0usize; n];
        for j in 1..=n {
            if row_of_col[j] > 0 {
                col_of_row[row_of_col[j] - 1] = j - 1;
            }
        }
        let total = (0..n).map(|i| cost[i * n + col_of_row[i]]).sum();
        (col_of_row, total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&c| int(c)).collect()).collect()
    }

    #[test]
    fn coupling_examples() {
        let c = pair_coupling(&pts(&[&[0], &[1]]), &pts(&[&[1], &[3]])).unwrap();
        assert_eq!(coupling_moment(&c, 1), 1.5);
        assert_eq!(c.left().atoms, pts(&[&[0], &[1]]));
        let c = pair_coupling(&pts(&[&[0], &[0]]), &pts(&[&[1], &[-1]])).unwrap();
        assert_eq!(coupling_moment(&c, 2), 1.0);
        assert_eq!(coupling_moment_exact(&c, 2).unwrap(), int(1));
        assert!(coupling_moment_exact(&c, 1).is_err());
        let c = pair_coupling(&pts(&[&[0, 0]]), &pts(&[&[3, 4]])).unwrap();
        assert_eq!(coupling_moment(&c, 1), 5.0);
        assert!(pair_coupling(&pts(&[&[0]]), &pts(&[&[0], &[1]])).is_err());
    }

    #[test]
    fn interpolation_endpoints() {
        let c = pair_coupling(&pts(&[&[0], &[4]]), &pts(&[&[2], &[0]])).unwrap();
        assert_eq!(c.interpolate(&int(0)).unwrap(), c.left());
        assert_eq!(c.interpolate(&int(1)).unwrap(), c.right());
        assert_eq!(c.interpolate(&rat(1, 2)).unwrap().atoms, pts(&[&[1], &[2]]));
        assert!(c.interpolate(&int(2)).is_err());
    }

    #[test]
    fn wasserstein_examples() {
        let mu = EmpiricalMeasure::new(pts(&[&[0], &[1]])).unwrap();
        let nu = EmpiricalMeasure::new(pts(&[&[3], &[1]])).unwrap();
        assert_eq!(wasserstein(&mu, &nu, 1).unwrap(), 1.5);
        assert_eq!(wasserstein_sorted_1d(&mu, &nu, 1).unwrap(), 1.5);
        assert_eq!(wasserstein(&mu, &mu, 2).unwrap(), 0.0);
        let three = EmpiricalMeasure::new(pts(&[&[0], &[1], &[2]])).unwrap();
        assert!(wasserstein(&mu, &three, 1).is_err());
    }

    #[test]
    fn assignment_small() {
        let cost = [4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0];
        let (cols, total) = assignment::solve(&cost, 3);
        assert_eq!(total, 5.0);
        assert_eq!(cols, vec![1, 0, 2]);
    }
}
