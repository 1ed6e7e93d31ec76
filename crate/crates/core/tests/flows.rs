mod common;

use common::*;
use entrolab::{
    algebraic_entropy, growth_classify, n_trajectory, tau, tau_sequence, trajectory_subgroup, ElementSet, Endo, Group,
    GrowthKind, GrowthMode, GrowthOptions, DEFAULT_EPSILON,
};
use entrolab_oracle as oracle;
use rand::Rng;

#[test]
fn compose_and_power_match_oracle_application() {
    let mut rng = rng(101);
    for _ in 0..60 {
        let a = random_finite_flow(&mut rng, 3, 300);
        let b = second_endo(&mut rng, &a);
        let (pa, pb) = (a.core_endo(), b.core_endo());
        let ab = pa.compose(&pb).unwrap();
        let cube = pa.power(3);
        for x in a.enumerate().unwrap().elements {
            let want = a.apply(&b.apply(&x));
            assert_eq!(ab.apply_coords(&big(&x)), big(&want));
            let want3 = a.apply(&a.apply(&a.apply(&x)));
            assert_eq!(cube.apply_coords(&big(&x)), big(&want3));
        }
    }
}

/// Another endomorphism of the same finite group.
fn second_endo<R: Rng>(rng: &mut R, a: &oracle::FiniteFlow) -> oracle::FiniteFlow {
    let k = a.rank();
    let o = &a.orders;
    let matrix = (0..k).map(|i| (0..k).map(|j| o[i] / gcd(o[i], o[j]) * rng.gen_range(0..o[i])).collect()).collect();
    oracle::FiniteFlow::new(o.clone(), matrix).unwrap()
}

#[test]
fn induced_map_commutes_with_projection() {
    let mut rng = rng(102);
    for _ in 0..40 {
        let flow = random_finite_flow(&mut rng, 3, 300);
        let phi = flow.core_endo();
        let g = flow.core_group();
        let seed = random_finite_set(&mut rng, &flow, 1, false);
        let h = trajectory_subgroup(&phi, &set(&seed)).unwrap();
        let (bar, proj) = phi.induce(&h).unwrap();
        for x in flow.enumerate().unwrap().elements {
            let e = g.element_i64(&x).unwrap();
            let left = proj.apply(&phi.apply(&e).unwrap()).unwrap();
            let right = bar.apply(&proj.apply(&e).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn trajectory_size_bounds_and_monotonicity() {
    let mut rng = rng(103);
    for _ in 0..80 {
        let flow = random_finite_flow(&mut rng, 3, 500);
        let phi = flow.core_endo();
        let size = rng.gen_range(1..=3);
        let with_zero = rng.gen_bool(0.5);
        let f = random_finite_set(&mut rng, &flow, size, with_zero);
        let seq = tau_sequence(&phi, &set(&f), 6, 1 << 20).unwrap();
        for n in 1..=6 {
            let t = seq.get(n);
            assert!(*t >= f.len().into());
            assert!(*t <= num_traits::pow(num_bigint::BigInt::from(f.len()), n));
            if with_zero && n > 1 {
                let prev = n_trajectory(&phi, &set(&f), n - 1, 1 << 20).unwrap();
                let cur = n_trajectory(&phi, &set(&f), n, 1 << 20).unwrap();
                assert!(prev.is_subset(&cur));
            }
        }
    }
}

#[test]
fn singleton_sets_have_constant_trajectories() {
    for flow in full_corpus() {
        let phi = flow.endo();
        let g = &flow.group;
        let x: Vec<i64> = (0..g.rank()).map(|i| (i as i64) + 1).collect();
        let f = ElementSet::in_group(g, &[x]).unwrap();
        assert!(tau_sequence(&phi, &f, 5, 1 << 10).unwrap().values.iter().all(|v| *v == 1u32.into()), "{}", flow.name);
    }
}

#[test]
fn trajectory_subgroup_examples() {
    let z2 = Group::free(2);
    let shear = Endo::from_rows(&z2, &[[1, 0], [1, 1]]).unwrap();
    assert!(trajectory_subgroup(&shear, &set(&[vec![1, 0]])).unwrap().is_whole());
    assert!(trajectory_subgroup(&shear, &set(&[vec![0, 0]])).unwrap().is_trivial());
    let id = Endo::identity(&z2);
    assert_eq!(trajectory_subgroup(&id, &set(&[vec![0, 1]])).unwrap(), z2.subgroup_i64(&[[0, 1]]).unwrap());
}

#[test]
fn shear_tau_matches_oracle() {
    let a = vec![vec![1, 0], vec![1, 1]];
    let f = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
    let phi = Endo::from_rows(&Group::free(2), &a).unwrap();
    for n in 1..=8 {
        assert_eq!(tau(&phi, &set(&f), n, 1 << 20).unwrap(), oracle::brute_tau_free(&a, &f, n, 1 << 20).unwrap());
    }
    assert_eq!(tau(&phi, &set(&f), 2, 1 << 20).unwrap(), 7);
}

#[test]
fn exact_verdict_is_invariant_under_change_of_basis() {
    let mut rng = rng(104);
    let opts = GrowthOptions { max_n: 8, budget: 1 << 12, epsilon: DEFAULT_EPSILON };
    for flow in free_corpus() {
        let r = flow.matrix.len();
        let (u, v) = random_unimodular(&mut rng, r);
        let conj = mat_mul(&mat_mul(&u, &flow.matrix), &v);
        let g = Group::free(r);
        let eta = Endo::from_rows(&g, &conj).unwrap();
        // F is carried along by the same change of basis
        let f2: Vec<Vec<i64>> = flow
            .f
            .iter()
            .map(|x| (0..r).map(|i| (0..r).map(|k| u[i][k] * x[k]).sum()).collect())
            .collect();
        let a = growth_classify(&flow.endo(), &flow.set(), GrowthMode::Exact, &opts).unwrap();
        let b = growth_classify(&eta, &set(&f2), GrowthMode::Exact, &opts).unwrap();
        assert_eq!(a.kind, b.kind, "{}", flow.name);
        assert!((a.entropy - b.entropy).abs() < 1e-9, "{}", flow.name);
    }
}

#[test]
fn exact_verdict_agrees_for_powers() {
    let opts = GrowthOptions { max_n: 8, budget: 1 << 12, epsilon: DEFAULT_EPSILON };
    for flow in full_corpus() {
        let phi = flow.endo();
        let f = flow.set();
        let v = trajectory_subgroup(&phi, &f).unwrap();
        let base = growth_classify(&phi, &f, GrowthMode::Exact, &opts).unwrap();
        let restricted = phi.restrict(&v).unwrap();
        for k in 2..=3u64 {
            let hk = algebraic_entropy(&restricted.endo.power(k), DEFAULT_EPSILON).unwrap();
            let kind = if hk.exact_zero { GrowthKind::Polynomial } else { GrowthKind::Exponential };
            assert_eq!(kind, base.kind, "{} k={k}", flow.name);
            assert!((hk.nats() - k as f64 * base.entropy).abs() < 1e-6, "{} k={k}", flow.name);
        }
    }
}

#[test]
fn identity_estimate_tends_to_zero() {
    let g = Group::free(2);
    let id = Endo::identity(&g);
    let f = set(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
    let seq = tau_sequence(&id, &f, 32, 1 << 16).unwrap();
    for n in 1..=32usize {
        let want = (n + 1) * (n + 2) / 2;
        assert_eq!(*seq.get(n), want.into());
    }
    assert!(seq.entropy_estimate().unwrap() < 0.02);
}
