use lions_jet_core::expansion::{remainder_bound1, remainder_bound2};
use lions_jet_core::functional::{lions_derivative, BoxRegion, KernelTerm, PolyKernel};
use lions_jet_core::measures::{pair_coupling, wasserstein, wasserstein_sorted_1d, EmpiricalMeasure};
use lions_jet_core::partitions::{self, compose, equiv_class, from_partition, refines, to_partition};
use lions_jet_core::ring::{int, rat, Numeric, Rational, Ring};
use lions_jet_core::tagged::{self, Grading};
use lions_jet_core::{taylor1, taylor2};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn random_kernel(seed: u64, e: usize, arity: usize, spatial: bool, degree: u32) -> PolyKernel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slots = arity + usize::from(spatial);
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let mut exps = vec![vec![0u32; e]; slots];
        for _ in 0..rng.gen_range(0..=degree) {
            exps[rng.gen_range(0..slots)][rng.gen_range(0..e)] += 1;
        }
        terms.push(KernelTerm { out: 0, coeff: small_rat(&mut rng), exps });
    }
    PolyKernel::from_terms(e, 1, arity, spatial, &terms).unwrap()
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, e: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|_| (0..e).map(|_| small_rat(rng)).collect()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn refinement_is_a_partial_order_on_a4() {
    let all = partitions::enum_a(4, 12).unwrap();
    for a in &all {
        assert!(refines(a, a).unwrap());
        for b in &all {
            let ab = refines(a, b).unwrap();
            if ab && refines(b, a).unwrap() {
                assert_eq!(a, b);
            }
            for c in &all {
                if ab && refines(b, c).unwrap() {
                    assert!(refines(a, c).unwrap());
                }
            }
        }
    }
}

#[test]
fn composition_recovers_the_index() {
    // For a ⊆ ⟦𝒊⟧, composing 𝒊 with a and then re-expanding through a gives 𝒊 back.
    let idx = [2usize, 0, 2, 1];
    let pattern = equiv_class(&idx);
    for a in partitions::enum_a(4, 12).unwrap() {
        if !refines(&a, &pattern).unwrap() {
            assert!(compose(&idx, &a).is_err());
            continue;
        }
        let reps = compose(&idx, &a).unwrap();
        let back: Vec<usize> = a.iter().map(|&l| reps[l as usize - 1]).collect();
        assert_eq!(back, idx);
    }
}

proptest! {
    #[test]
    fn remainder_families_are_disjoint_subsets_of_core(a in 1i64..6, b in 1i64..6, g in 1i64..16) {
        let (alpha, beta, gamma) = (rat(a, 2), rat(b, 2), rat(g, 2));
        prop_assume!(g > a.min(b) && g <= 6 * a.min(b));
        let gr = Grading::new(alpha.clone(), beta.clone(), gamma.clone()).unwrap();
        let fam = tagged::enum_graded(&gr, 12).unwrap();
        for w in fam.star.iter().chain(&fam.plus).chain(&fam.cross) {
            prop_assert!(fam.core.contains(w));
        }
        for w in &fam.star {
            prop_assert!(!fam.cross.contains(w));
        }
        for w in &fam.core {
            prop_assert!(tagged::grade(w, &gr) <= gamma);
        }
        if alpha == beta {
            prop_assert!(fam.plus.is_empty() && fam.cross.is_empty());
        }
    }

    #[test]
    fn equiv_class_is_invariant_under_relabelling(
        b in prop::collection::vec(0u8..4, 0..8),
        shift in 1u8..50,
    ) {
        let relabelled: Vec<u16> = b.iter().map(|&v| u16::from(v) * 7 + u16::from(shift)).collect();
        prop_assert_eq!(equiv_class(&b), equiv_class(&relabelled));
        let a = equiv_class(&b);
        prop_assert!(partitions::is_partition_seq(&a));
        prop_assert_eq!(from_partition(&to_partition(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn tagged_class_is_a_tagged_sequence(b in prop::collection::vec(0u8..4, 0..8), tag in 0u8..4) {
        let a = tagged::equiv_class_tagged(&b, &tag);
        prop_assert!(tagged::is_tagged_seq(&a));
        prop_assert_eq!(a.iter().filter(|&&v| v == 0).count(), b.iter().filter(|&&v| v == tag).count());
    }

    #[test]
    fn lions_derivative_is_linear(s1 in any::<u64>(), s2 in any::<u64>(), k in 0usize..5) {
        let words = tagged::enum_a0(2, 12).unwrap();
        let a = &words[k];
        let f = random_kernel(s1, 1, 2, true, 3);
        let g = random_kernel(s2, 1, 2, true, 3);
        let lhs = lions_derivative(&f.add(&g).unwrap(), a).unwrap();
        let df = lions_derivative(&f, a).unwrap();
        let dg = lions_derivative(&g, a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(s1 ^ s2);
        let atoms = random_points(&mut rng, 3, 1);
        let free = random_points(&mut rng, 2, 1);
        let x0 = random_points(&mut rng, 1, 1).remove(0);
        let m = partitions::max_label(a) as usize;
        let ev = |d| lions_jet_core::eval_derivative::<Rational>(d, Some(&x0), &atoms, &free[..m]).unwrap();
        let (l, u, v) = (ev(&lhs), ev(&df), ev(&dg));
        let sum: Vec<Rational> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
        prop_assert_eq!(l, sum);
    }

    #[test]
    fn first_derivative_is_additive_in_direction(seed in any::<u64>()) {
        let f = random_kernel(seed, 2, 2, false, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let atoms = random_points(&mut rng, 3, 2);
        let x1 = random_points(&mut rng, 1, 2);
        let t = lions_jet_core::eval_derivative::<Rational>(
            &lions_derivative(&f, &[1]).unwrap(), None, &atoms, &x1).unwrap();
        let u = random_points(&mut rng, 1, 2).remove(0);
        let v = random_points(&mut rng, 1, 2).remove(0);
        let dot = |w: &[Rational]| t[0].clone() * &w[0] + &t[1] * &w[1];
        let uv: Vec<Rational> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
        prop_assert_eq!(dot(&uv), dot(&u) + dot(&v));
    }

    #[test]
    fn wasserstein_matches_brute_force(seed in any::<u64>(), n in 1usize..6, e in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = EmpiricalMeasure::new(random_points(&mut rng, n, e)).unwrap();
        let nu = EmpiricalMeasure::new(random_points(&mut rng, n, e)).unwrap();
        let rho = EmpiricalMeasure::new(random_points(&mut rng, n, e)).unwrap();
        for q in [1u32, 2] {
            let best = permutations(n)
                .iter()
                .map(|p| {
                    (0..n)
                        .map(|i| {
                            let d: f64 = mu.atoms[i]
                                .iter()
                                .zip(&nu.atoms[p[i]])
                                .map(|(a, b)| (b.clone() - a).to_f64().powi(2))
                                .sum();
                            d.sqrt().powi(q as i32)
                        })
                        .sum::<f64>()
                })
                .fold(f64::INFINITY, f64::min);
            let exact = (best / n as f64).powf(1.0 / q as f64);
            let w = wasserstein(&mu, &nu, q).unwrap();
            prop_assert!((w - exact).abs() <= 1e-9 * (1.0 + exact));
            prop_assert!((w - wasserstein(&nu, &mu, q).unwrap()).abs() <= 1e-9 * (1.0 + w));
            let tri = wasserstein(&mu, &rho, q).unwrap() + wasserstein(&rho, &nu, q).unwrap();
            prop_assert!(w <= tri + 1e-9);
            if e == 1 {
                prop_assert!((w - wasserstein_sorted_1d(&mu, &nu, q).unwrap()).abs() <= 1e-9 * (1.0 + w));
            }
        }
        prop_assert!(wasserstein(&mu, &nu, 1).unwrap() <= wasserstein(&mu, &nu, 2).unwrap() + 1e-9);
    }

    #[test]
    fn regrading_moves_terms_between_jet_and_remainder(seed in any::<u64>()) {
        // Lowering α so one more grade level enters the jet changes the split
        // between jet and remainder but not their sum.
        let f = random_kernel(seed, 1, 2, true, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(3));
        let x = random_points(&mut rng, 3, 1);
        let y = random_points(&mut rng, 3, 1);
        let x0 = random_points(&mut rng, 1, 1).remove(0);
        let y0 = random_points(&mut rng, 1, 1).remove(0);
        let c = pair_coupling(&x, &y).unwrap();
        let coarse = Grading::new(int(1), int(1), rat(5, 2)).unwrap();
        let fine = Grading::new(rat(4, 5), int(1), rat(5, 2)).unwrap();
        let r1 = taylor2(&f, &x0, &y0, &c, &coarse).unwrap();
        let r2 = taylor2(&f, &x0, &y0, &c, &fine).unwrap();
        prop_assert!(r2.jet.len() > r1.jet.len());
        prop_assert_eq!(&r1.actual, &r2.actual);
        for r in [&r1, &r2] {
            prop_assert!(r.identity_defect().iter().all(Ring::is_zero));
        }
    }

    #[test]
    fn explicit_box_bounds_dominate(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_points(&mut rng, 2, 1);
        let y = random_points(&mut rng, 2, 1);
        let c = pair_coupling(&x, &y).unwrap();
        let bx = BoxRegion::new(vec![-4.0], vec![4.0]).unwrap();

        let f = random_kernel(seed, 1, 2, false, 4);
        let r = taylor1(&f, &c, n).unwrap();
        let b = remainder_bound1(&f, &c, n, &bx, 5).unwrap();
        prop_assert!(r.remainder_norm() <= b * (1.0 + 1e-9));

        let g = random_kernel(seed ^ 1, 1, 1, true, 4);
        let x0 = random_points(&mut rng, 1, 1).remove(0);
        let y0 = random_points(&mut rng, 1, 1).remove(0);
        let gr = Grading::new(rat(1, 2), int(1), rat(7, 4)).unwrap();
        let r = taylor2(&g, &x0, &y0, &c, &gr).unwrap();
        let b = remainder_bound2(&g, &x0, &y0, &c, &gr, &bx, 5).unwrap();
        prop_assert!(r.remainder_norm() <= b * (1.0 + 1e-9));
    }
}
