//! Scalar rings used for evaluation.
//!
//! Every evaluator in the crate is generic over [`Ring`], so the same code
//! runs on exact rationals, on `f64`, and on polynomials in the path
//! parameter `ξ` (see [`Poly1`]).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Builds the rational `p / q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Commutative ring with rational constants.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }

    fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Ordered scalar that can be reported as a float.
pub trait Numeric: Ring + PartialOrd {
    fn to_f64(&self) -> f64;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Numeric for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Numeric for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Absolute value of a rational as a float.
pub fn abs_f64(r: &Rational) -> f64 {
    Numeric::to_f64(&r.abs())
}

/// Univariate polynomial in the path parameter `ξ`, coefficients lowest first.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly1<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly1<C> {
    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `ξ`.
    pub fn xi() -> Self {
        Self::from_coeffs(vec![C::zero(), C::one()])
    }

    /// `a + ξ·b`.
    pub fn affine(a: &C, b: &C) -> Self {
        Self::from_coeffs(vec![a.clone(), b.clone()])
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `d/dξ`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&int(j as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `∫₀¹ p(ξ) (1−ξ)^{k−1}/(k−1)! dξ`, and `p(1)` for `k = 0`.
    ///
    /// Uses `∫₀¹ ξ^j (1−ξ)^{k−1} dξ / (k−1)! = j!/(j+k)!`.
    pub fn integrate_taylor_kernel(&self, k: usize) -> C {
        if k == 0 {
            return self.eval(&C::one());
        }
        let mut acc = C::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            let w = factorial(j) / factorial(j + k);
            acc = acc.add(&c.scale(&w));
        }
        acc
    }
}

impl<C: Ring> Ring for Poly1<C> {
    fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = C::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = rhs.coeffs.get(i).unwrap_or(&z);
                a.add(b)
            })
            .collect();
        Self::from_coeffs(coeffs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = C::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = rhs.coeffs.get(i).unwrap_or(&z);
                a.sub(b)
            })
            .collect();
        Self::from_coeffs(coeffs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_integral_of_constant_is_inverse_factorial() {
        for k in 1..8 {
            let one = Poly1::<Rational>::one();
            assert_eq!(one.integrate_taylor_kernel(k), int(1) / factorial(k));
        }
    }

    #[test]
    fn kernel_zero_is_evaluation_at_one() {
        let p = Poly1::from_coeffs(vec![int(2), int(3), int(-1)]);
        assert_eq!(p.integrate_taylor_kernel(0), int(4));
    }

    #[test]
    fn kernel_integral_matches_gauss_legendre() {
        // 64-node Gauss-Legendre on [0,1], nodes from Newton iteration on P_64.
        let (nodes, weights) = gauss_legendre(64);
        let p = Poly1::from_coeffs(vec![0.3, -1.2, 2.5, 0.7, -0.4]);
        for k in 1..6usize {
            let exact = p.integrate_taylor_kernel(k);
            let mut fact = 1.0;
            for i in 1..k {
                fact *= i as f64;
            }
            let quad: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(x, w)| w * p.eval(x) * libm::pow(1.0 - x, (k - 1) as f64) / fact)
                .sum();
            assert!((exact - quad).abs() < 1e-13, "k={k}: {exact} vs {quad}");
        }
    }

    fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for i in 0..n {
            let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes.push(0.5 * (1.0 - x));
            weights.push(1.0 / ((1.0 - x * x) * dp * dp));
        }
        (nodes, weights)
    }

    #[test]
    fn poly1_ring_ops() {
        let a = Poly1::<Rational>::affine(&int(1), &int(2));
        let sq = a.mul(&a);
        assert_eq!(sq.coeffs(), &[int(1), int(4), int(4)]);
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(sq.derivative().coeffs(), &[int(4), int(8)]);
    }
}
