mod common;

use common::*;
use entrolab::{
    algebraic_entropy, growth_classify, has_completely_positive_entropy, is_algebraically_ergodic, phi_torsion_subgroup,
    pinsker_subgroup, q_chain, quasiperiodic_subgroup, trajectory_subgroup, Endo, Group, GrowthKind, GrowthMode, GrowthOptions,
    Subgroup, DEFAULT_EPSILON,
};
use rand::Rng;

/// Random invariant subgroups `V(φ, {x})` together with the flows they live in.
fn invariant_cases(seed: u64, count: usize) -> Vec<(Endo, Subgroup)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let corpus = full_corpus();
    for i in 0..count {
        let flow = &corpus[i % corpus.len()];
        let phi = flow.endo();
        let r = flow.group.rank();
        let x: Vec<Vec<i64>> = (0..rng.gen_range(1..=2)).map(|_| (0..r).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let h = trajectory_subgroup(&phi, &set(&x)).unwrap();
        out.push((phi, h));
    }
    for _ in 0..count / 2 {
        let r = rng.gen_range(2..=4);
        let g = Group::free(r);
        let phi = Endo::from_rows(&g, &random_singular(&mut rng, r)).unwrap();
        let x: Vec<Vec<i64>> = vec![(0..r).map(|_| rng.gen_range(-2..=2)).collect()];
        let h = trajectory_subgroup(&phi, &set(&x)).unwrap();
        out.push((phi, h));
    }
    out
}

#[test]
fn chain_terms_are_invariant_and_closed_under_preimage() {
    let mut rng = rng(201);
    let mut flows: Vec<Endo> = full_corpus().iter().map(|f| f.endo()).collect();
    for _ in 0..30 {
        let r = rng.gen_range(2..=4);
        flows.push(Endo::from_rows(&Group::free(r), &random_singular(&mut rng, r)).unwrap());
    }
    for phi in flows {
        let chain = q_chain(&phi).unwrap();
        assert!(chain.certified);
        for w in chain.terms.windows(2) {
            assert!(w[1].contains_subgroup(&w[0]) && w[1] != w[0]);
        }
        // from Q_1 on; Q_0 = 0 pulls back to the kernel
        for q in &chain.terms[1..] {
            assert!(phi.is_invariant(q));
            assert_eq!(phi.preimage(q).unwrap(), *q);
        }
    }
}

#[test]
fn chain_quotients_of_free_groups_are_free() {
    let mut rng = rng(202);
    let mut flows: Vec<Endo> = free_corpus().iter().map(|f| f.endo()).collect();
    for _ in 0..30 {
        let r = rng.gen_range(2..=4);
        flows.push(Endo::from_rows(&Group::free(r), &random_matrix(&mut rng, r, -2, 2)).unwrap());
    }
    for phi in flows {
        for q in q_chain(&phi).unwrap().terms {
            let (quot, _) = phi.group().quotient(&q).unwrap();
            assert!(quot.invariant_factors().is_empty(), "{:?} has torsion quotient", q);
        }
    }
}

#[test]
fn quasiperiodic_points_of_an_invariant_subgroup() {
    for (phi, h) in invariant_cases(203, 60) {
        let res = phi.restrict(&h).unwrap();
        let inner = res.embed_subgroup(&quasiperiodic_subgroup(&res.endo).unwrap()).unwrap();
        assert_eq!(inner, quasiperiodic_subgroup(&phi).unwrap().intersect(&h).unwrap());
    }
}

#[test]
fn pinsker_subgroup_of_an_invariant_subgroup() {
    for (phi, h) in invariant_cases(204, 40) {
        let res = phi.restrict(&h).unwrap();
        let inner = res.embed_subgroup(&pinsker_subgroup(&res.endo).unwrap()).unwrap();
        assert_eq!(inner, pinsker_subgroup(&phi).unwrap().intersect(&h).unwrap());
    }
}

#[test]
fn pinsker_subgroup_is_maximal_with_zero_entropy() {
    let mut rng = rng(205);
    let opts = GrowthOptions { max_n: 8, budget: 1 << 12, epsilon: DEFAULT_EPSILON };
    for flow in full_corpus() {
        let phi = flow.endo();
        let p = pinsker_subgroup(&phi).unwrap();
        let r = flow.group.rank();
        for _ in 0..3 {
            let x: Vec<i64> = (0..r).map(|_| rng.gen_range(-2..=2)).collect();
            if p.contains_coords(&big(&x)) {
                continue;
            }
            let v = trajectory_subgroup(&phi, &set(&[x.clone()])).unwrap();
            let bigger = p.join(&v).unwrap();
            let verdict = growth_classify(&phi, &set(&[vec![0; r], x]), GrowthMode::Exact, &opts).unwrap();
            let e = algebraic_entropy(&phi.restrict(&bigger).unwrap().endo, DEFAULT_EPSILON).unwrap();
            if verdict.kind == GrowthKind::Exponential {
                assert!(!e.exact_zero && e.nats() > 0.0, "{}", flow.name);
            }
            // anything outside the Pinsker subgroup adds entropy
            assert!(!e.exact_zero, "{}", flow.name);
        }
    }
}

#[test]
fn predicates_on_small_examples() {
    let z2 = Group::free(2);
    let cat = Endo::from_rows(&z2, &[[2, 1], [1, 1]]).unwrap();
    assert!(is_algebraically_ergodic(&cat).unwrap());
    assert!(has_completely_positive_entropy(&cat).unwrap());
    let z = Group::free(1);
    assert!(!is_algebraically_ergodic(&Endo::identity(&z)).unwrap());
    assert!(!is_algebraically_ergodic(&Endo::zero(&z2)).unwrap());
    assert!(is_algebraically_ergodic(&Endo::zero(&Group::free(0))).unwrap());

    let g = Group::from_invariants(&[0, 4]);
    let phi = Endo::from_rows(&g, &[[2, 0], [0, 3]]).unwrap();
    assert_eq!(phi_torsion_subgroup(&phi).unwrap(), g.subgroup_i64(&[[0, 1]]).unwrap());
    let finite = Group::from_invariants(&[6, 4]);
    let psi = Endo::from_rows(&finite, &[[2, 0], [0, 2]]).unwrap();
    assert!(phi_torsion_subgroup(&psi).unwrap().is_whole());
}

#[test]
fn chain_report_serializes_bases_and_quotients() {
    let z2 = Group::free(2);
    let phi = Endo::from_rows(&z2, &[[1, 1], [0, 1]]).unwrap();
    let v = serde_json::to_value(q_chain(&phi).unwrap()).unwrap();
    assert_eq!(v["kind"], "Q");
    assert_eq!(v["stabilization_index"], 2);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[1]["quotient_free_rank"], 1);
    assert_eq!(terms[1]["hnf_basis"], serde_json::json!([[1, 0]]));
}
