//! Seeded random instances for the verification suites.
//!
//! An instance carries everything needed to rerun it, so a failing one can
//! be written to disk and replayed with `verify --replay`.

use std::fmt;
use std::str::FromStr;

use lions_jet_core::functional::{KernelTerm, PolyKernel};
use lions_jet_core::measures::EmpiricalMeasure;
use lions_jet_core::oracle::{
    named_symmetry_checks, schwarz_check, verify_empirical_deriv, verify_expansion_match,
    verify_fullsystem, Report,
};
use lions_jet_core::partitions::max_label;
use lions_jet_core::ring::{rat, Rational};
use lions_jet_core::tagged;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::formats::{points_from_strings, points_to_strings, KernelJson};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Empirical,
    Fullsystem,
    Expansion,
    Schwarz,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Empirical, Suite::Fullsystem, Suite::Expansion, Suite::Schwarz];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Empirical => "empirical",
            Suite::Fullsystem => "fullsystem",
            Suite::Expansion => "expansion",
            Suite::Schwarz => "schwarz",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| CliError::Parse(format!("unknown suite `{s}`")))
    }
}

/// A self-contained verification case. Particle indices are 0-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub suite: Suite,
    pub seed: u64,
    pub kernel: KernelJson,
    pub points: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particle: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<Vec<Vec<String>>>,
}

/// Shape limits for random kernels.
#[derive(Clone, Copy, Debug)]
pub struct KernelShape {
    pub e: usize,
    pub d: usize,
    pub arity: usize,
    pub spatial: bool,
    pub max_degree: u32,
    pub max_terms: usize,
}

/// Small rationals `p/q` with `|p| ≤ 6`, `q ≤ 4`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_points(rng: &mut impl Rng, n: usize, e: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|_| (0..e).map(|_| random_rational(rng)).collect()).collect()
}

pub fn random_kernel(rng: &mut impl Rng, s: KernelShape) -> PolyKernel {
    let slots = s.arity + usize::from(s.spatial);
    let nterms = rng.gen_range(1..=s.max_terms);
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut exps = vec![vec![0u32; s.e]; slots];
        for _ in 0..rng.gen_range(0..=s.max_degree) {
            exps[rng.gen_range(0..slots)][rng.gen_range(0..s.e)] += 1;
        }
        let coeff = rat(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3));
        terms.push(KernelTerm { out: rng.gen_range(0..s.d), coeff, exps });
    }
    PolyKernel::from_terms(s.e, s.d, s.arity, s.spatial, &terms).expect("generated kernel is well formed")
}

fn blank(suite: Suite, seed: u64, f: &PolyKernel, x: &[Vec<Rational>]) -> Instance {
    Instance {
        suite,
        seed,
        kernel: KernelJson::from_kernel(f),
        points: points_to_strings(x),
        targets: None,
        index: None,
        particle: None,
        order: None,
        seq: None,
        permutation: None,
        x0: None,
        free: None,
        directions: None,
    }
}

/// The instance of `suite` determined by `seed`.
pub fn generate(suite: Suite, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = rng.gen_range(1..=2);
    match suite {
        Suite::Empirical | Suite::Fullsystem => {
            let spatial = suite == Suite::Fullsystem;
            let shape = KernelShape {
                e,
                d: rng.gen_range(1..=2),
                arity: rng.gen_range(1..=3),
                spatial,
                max_degree: 3,
                max_terms: 4,
            };
            let f = random_kernel(&mut rng, shape);
            let n = rng.gen_range(1..=5);
            let x = random_points(&mut rng, n, e);
            let len = rng.gen_range(1..=3);
            let index: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
            let mut inst = blank(suite, seed, &f, &x);
            inst.index = Some(index);
            if spatial {
                inst.particle = Some(rng.gen_range(0..n));
            }
            inst
        }
        Suite::Expansion => {
            let order = rng.gen_range(1..=3);
            let shape = KernelShape {
                e,
                d: 1,
                arity: rng.gen_range(1..=2),
                spatial: rng.gen_bool(0.5),
                max_degree: order as u32 + 2,
                max_terms: 3,
            };
            let f = random_kernel(&mut rng, shape);
            let n = rng.gen_range(1..=3);
            let x = random_points(&mut rng, n, e);
            let y = random_points(&mut rng, n, e);
            let mut inst = blank(suite, seed, &f, &x);
            inst.targets = Some(points_to_strings(&y));
            inst.order = Some(order);
            inst
        }
        Suite::Schwarz => {
            let shape = KernelShape { e, d: 1, arity: 2, spatial: true, max_degree: 4, max_terms: 4 };
            let f = random_kernel(&mut rng, shape);
            let words = tagged::enum_a0(rng.gen_range(1..=3), usize::MAX).expect("small enumeration");
            let a = words.choose(&mut rng).expect("non-empty").clone();
            let mut sigma: Vec<usize> = (0..a.len()).collect();
            sigma.shuffle(&mut rng);
            let x = random_points(&mut rng, 3, e);
            // Free points are taken from the support of the measure.
            let m = max_label(&a) as usize;
            let free: Vec<Vec<Rational>> = (0..m.max(2)).map(|_| x[rng.gen_range(0..3)].clone()).collect();
            let mut inst = blank(suite, seed, &f, &x);
            inst.x0 = Some(points_to_strings(&random_points(&mut rng, 1, e)).remove(0));
            inst.free = Some(points_to_strings(&free));
            inst.directions = Some(points_to_strings(&random_points(&mut rng, a.len(), e)));
            inst.seq = Some(a);
            inst.permutation = Some(sigma);
            inst
        }
    }
}

fn need<T: Clone>(v: &Option<T>, what: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Parse(format!("instance is missing `{what}`")))
}

/// Runs one instance. Core errors propagate; a mismatch is a failing report.
pub fn check(inst: &Instance) -> Result<Report, CliError> {
    let f = inst.kernel.to_kernel()?;
    let x = points_from_strings(&inst.points)?;
    let mut report = match inst.suite {
        Suite::Empirical => verify_empirical_deriv(&f, &x, &need(&inst.index, "index")?)?,
        Suite::Fullsystem => {
            verify_fullsystem(&f, &x, need(&inst.particle, "particle")?, &need(&inst.index, "index")?)?
        }
        Suite::Expansion => {
            let y = points_from_strings(&need(&inst.targets, "targets")?)?;
            verify_expansion_match(&f, &x, &y, need(&inst.order, "order")?)?.report
        }
        Suite::Schwarz => {
            let a = need(&inst.seq, "seq")?;
            let sigma = need(&inst.permutation, "permutation")?;
            let x0 = points_from_strings(&[need(&inst.x0, "x0")?])?.remove(0);
            let free = points_from_strings(&need(&inst.free, "free")?)?;
            let dirs = points_from_strings(&need(&inst.directions, "directions")?)?;
            let mu = EmpiricalMeasure::new(x)?;
            let m = max_label(&a) as usize;
            let x0 = f.spatial.then_some(x0.as_slice());
            let mut r = schwarz_check(&f, &a, &sigma, x0, &mu, &free[..m], &dirs)?;
            if free.len() >= 2 {
                for sub in named_symmetry_checks(&f, x0, &mu, &free[0], &free[1])? {
                    r.pass &= sub.pass;
                    r.max_abs_difference = r.max_abs_difference.max(sub.max_abs_difference);
                }
                r.identity.push_str(" +transpose");
            }
            r
        }
    };
    report.seed = Some(inst.seed);
    Ok(report)
}

/// Seed of trial `t` in a batch started at `seed`.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    seed.wrapping_add(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        for s in Suite::ALL {
            assert_eq!(generate(s, 7), generate(s, 7));
        }
        assert_ne!(generate(Suite::Empirical, 1), generate(Suite::Empirical, 2));
    }

    #[test]
    fn instances_roundtrip_through_json() {
        for s in Suite::ALL {
            let inst = generate(s, 11);
            let text = serde_json::to_string(&inst).unwrap();
            let back: Instance = serde_json::from_str(&text).unwrap();
            assert_eq!(back, inst);
        }
    }

    #[test]
    fn generated_instances_pass() {
        for s in Suite::ALL {
            for seed in 0..5 {
                let r = check(&generate(s, seed)).unwrap();
                assert!(r.pass, "{s} seed {seed}: {}", r.identity);
            }
        }
    }
}
