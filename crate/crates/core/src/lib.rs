//! Partition-sequence combinatorics, symbolic Lions derivatives of polynomial
//! functionals of empirical measures, and exact Taylor expansions along
//! couplings with certified remainder bounds.
//!
//! Builds without `std`; `alloc` is required.

#![no_std]

extern crate alloc;

pub mod error;
pub mod expansion;
pub mod functional;
pub mod measures;
pub mod oracle;
pub mod partitions;
pub mod poly;
pub mod ring;
pub mod tagged;

pub use error::{Error, Result};
pub use expansion::{
    eval_da, remainder_bound1, remainder_bound2, remainder_bound_derivative, taylor1, taylor2,
    taylor_derivative, ExpansionResult, Family,
};
pub use functional::{
    eval_derivative, lions_derivative, sup_on_box, BoxRegion, DerivTermSum, KernelTerm,
    PolyFunctional, PolyKernel,
};
pub use measures::{pair_coupling, wasserstein, Coupling, EmpiricalMeasure};
pub use poly::Poly;
pub use ring::{Numeric, Poly1, Rational, Ring};
pub use tagged::{Grading, RemainderFamilies};
