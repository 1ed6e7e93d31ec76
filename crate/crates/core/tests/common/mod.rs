#![allow(dead_code)]

use entrolab::{ElementSet, Endo, Group, IntMatrix};
use entrolab_oracle::FiniteFlow;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

pub fn set(items: &[Vec<i64>]) -> ElementSet {
    ElementSet::from_coords(items.iter().map(|x| big(x)).collect())
}

pub fn rows_of(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

pub fn block_diag(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![0; p + q]; p + q];
    for i in 0..p {
        out[i][..p].copy_from_slice(&a[i]);
    }
    for i in 0..q {
        out[p + i][p..].copy_from_slice(&b[i]);
    }
    out
}

pub fn companion(coeffs_low_to_high: &[i64]) -> Vec<Vec<i64>> {
    // monic polynomial t^d + c_{d-1} t^{d-1} + ... + c_0, given c_0..c_{d-1}
    let d = coeffs_low_to_high.len();
    let mut m = vec![vec![0; d]; d];
    for i in 1..d {
        m[i][i - 1] = 1;
    }
    for i in 0..d {
        m[i][d - 1] = -coeffs_low_to_high[i];
    }
    m
}

pub struct Flow {
    pub name: &'static str,
    pub group: Group,
    pub matrix: Vec<Vec<i64>>,
    pub f: Vec<Vec<i64>>,
}

impl Flow {
    pub fn endo(&self) -> Endo {
        Endo::from_rows(&self.group, &self.matrix).unwrap()
    }

    pub fn set(&self) -> ElementSet {
        set(&self.f)
    }
}

fn free(name: &'static str, matrix: Vec<Vec<i64>>, f: Vec<Vec<i64>>) -> Flow {
    Flow { name, group: Group::free(matrix.len()), matrix, f }
}

/// Flows on `Z^r`, `r <= 4`, with a finite set each: finite-order,
/// unipotent, nilpotent and hyperbolic blocks and mixtures of them.
pub fn free_corpus() -> Vec<Flow> {
    let e = |r: usize, i: usize| unit(r, i);
    let z = |r: usize| vec![0; r];
    let rot4 = vec![vec![0, -1], vec![1, 0]];
    let rot3 = vec![vec![0, -1], vec![1, -1]];
    let rot6 = vec![vec![1, -1], vec![1, 0]];
    let fib = vec![vec![0, 1], vec![1, 1]];
    let cat = vec![vec![2, 1], vec![1, 1]];
    let shear = vec![vec![1, 0], vec![1, 1]];
    let nil2 = vec![vec![0, 0], vec![1, 0]];
    vec![
        free("rot4", rot4.clone(), vec![z(2), e(2, 0)]),
        free("rot3", rot3.clone(), vec![z(2), e(2, 0)]),
        free("rot6", rot6.clone(), vec![z(2), e(2, 0), e(2, 1)]),
        free("perm3", vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], vec![z(3), e(3, 0)]),
        free("rot5", companion(&[1, 1, 1, 1]), vec![z(4), e(4, 0)]),
        free("rot8", companion(&[1, 0, 0, 0]), vec![z(4), e(4, 0)]),
        free("minus-id", vec![vec![-1, 0], vec![0, -1]], vec![z(2), e(2, 0), e(2, 1)]),
        free("id3", vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![z(3), e(3, 0), e(3, 2)]),
        free("swap", vec![vec![0, 1], vec![1, 0]], vec![z(2), e(2, 0)]),
        free("shear", shear.clone(), vec![z(2), e(2, 0), e(2, 1)]),
        free("shear-t", vec![vec![1, 1], vec![0, 1]], vec![z(2), e(2, 1)]),
        free("jordan3", vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]], vec![z(3), e(3, 0)]),
        free("neg-jordan2", vec![vec![-1, 0], vec![1, -1]], vec![z(2), e(2, 0)]),
        free("shear+rot4", block_diag(&shear, &rot4), vec![z(4), e(4, 0), e(4, 2)]),
        free("nil2", nil2.clone(), vec![z(2), e(2, 0)]),
        free("nil3", vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]], vec![z(3), e(3, 0)]),
        free("zero2", vec![vec![0, 0], vec![0, 0]], vec![z(2), e(2, 0), e(2, 1)]),
        free("nil-rank1", vec![vec![1, -1], vec![1, -1]], vec![z(2), e(2, 0)]),
        free("fib", fib.clone(), vec![z(2), e(2, 0)]),
        free("cat", cat.clone(), vec![z(2), e(2, 0)]),
        free("trace4", vec![vec![3, 1], vec![2, 1]], vec![z(2), e(2, 0)]),
        free("double", vec![vec![2]], vec![z(1), e(1, 0)]),
        free("triple", vec![vec![3]], vec![z(1), e(1, 0)]),
        free("neg-double", vec![vec![-2]], vec![z(1), e(1, 0)]),
        free("pisot3", companion(&[-1, -1, 0]), vec![z(3), e(3, 0)]),
        free("quartic", companion(&[-1, 0, 0, -1]), vec![z(4), e(4, 0)]),
        free("cat+id", block_diag(&cat, &[vec![1, 0], vec![0, 1]]), vec![z(4), e(4, 0), e(4, 2)]),
        free("fib+nil", block_diag(&fib, &nil2), vec![z(4), e(4, 0), e(4, 2)]),
        free("shear+fib on shear", block_diag(&shear, &fib), vec![z(4), e(4, 0)]),
        free("fib+rot4 on rot4", block_diag(&fib, &rot4), vec![z(4), e(4, 2)]),
        free("triangular on fixed line", vec![vec![2, 0], vec![1, 1]], vec![z(2), e(2, 1)]),
        free("triangular", vec![vec![2, 0], vec![1, 1]], vec![z(2), e(2, 0)]),
        free("singular hyperbolic", vec![vec![2, 1], vec![4, 2]], vec![z(2), e(2, 0)]),
        free("sqrt2", vec![vec![1, 1], vec![1, -1]], vec![z(2), e(2, 0)]),
        free("rot3+double", block_diag(&rot3, &[vec![2]]), vec![z(3), e(3, 0), e(3, 2)]),
        free("rot6 singleton", rot6, vec![e(2, 0)]),
    ]
}

/// Flows on groups with torsion.
pub fn torsion_corpus() -> Vec<Flow> {
    let g = |orders: &[u64]| Group::from_invariants(orders);
    vec![
        Flow { name: "z4 times 3", group: g(&[4]), matrix: vec![vec![3]], f: vec![vec![0], vec![1]] },
        Flow { name: "z6 times 2", group: g(&[6]), matrix: vec![vec![2]], f: vec![vec![0], vec![1]] },
        Flow { name: "z2^3 shift", group: g(&[2, 2, 2]), matrix: vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]], f: vec![vec![0, 0, 0], vec![1, 0, 0]] },
        Flow { name: "z+z4", group: g(&[0, 4]), matrix: vec![vec![2, 0], vec![0, 3]], f: vec![vec![0, 0], vec![1, 1]] },
        Flow {
            name: "fib+z4",
            group: g(&[0, 0, 4]),
            matrix: vec![vec![0, 1, 0], vec![1, 1, 0], vec![1, 0, 3]],
            f: vec![vec![0, 0, 0], vec![1, 0, 0]],
        },
        Flow { name: "z+z2 mixing", group: g(&[0, 2]), matrix: vec![vec![1, 0], vec![1, 1]], f: vec![vec![0, 0], vec![1, 0]] },
        Flow { name: "z3+z9", group: g(&[3, 9]), matrix: vec![vec![1, 0], vec![3, 2]], f: vec![vec![0, 0], vec![1, 0], vec![0, 1]] },
    ]
}

pub fn full_corpus() -> Vec<Flow> {
    let mut out = free_corpus();
    out.extend(torsion_corpus());
    out
}

pub fn random_matrix<R: Rng>(rng: &mut R, r: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..r).map(|_| (0..r).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

/// A random integer matrix with a nontrivial kernel: one column is an integer
/// combination of the others.
pub fn random_singular<R: Rng>(rng: &mut R, r: usize) -> Vec<Vec<i64>> {
    let mut m = random_matrix(rng, r, -2, 2);
    let target = rng.gen_range(0..r);
    let coef: Vec<i64> = (0..r).map(|j| if j == target { 0 } else { rng.gen_range(-1..=1) }).collect();
    for row in m.iter_mut() {
        row[target] = (0..r).map(|j| coef[j] * row[j]).sum();
    }
    m
}

/// Product of random elementary operations; determinant ±1.
pub fn random_unimodular<R: Rng>(rng: &mut R, r: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(r);
    for _ in 0..3 * r {
        let i = rng.gen_range(0..r);
        let j = rng.gen_range(0..r);
        if i == j {
            continue;
        }
        let q = BigInt::from(rng.gen_range(-2i64..=2));
        // U <- E U and V <- V E^{-1}, with E adding q times row j to row i
        u.add_row_multiple(i, j, &q);
        v.add_col_multiple(j, i, &(-q));
    }
    (rows_of(&u), rows_of(&v))
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// A random well-defined endomorphism of `Z(d_1) + ... + Z(d_k)`:
/// entry `(i, j)` is a multiple of `d_i / gcd(d_i, d_j)`.
pub fn random_finite_flow<R: Rng>(rng: &mut R, max_rank: usize, order_cap: usize) -> FiniteFlow {
    loop {
        let k = rng.gen_range(1..=max_rank);
        let orders: Vec<i64> = (0..k).map(|_| *[2, 3, 4, 5, 6, 8, 9].choose(rng).unwrap()).collect();
        if orders.iter().map(|&d| d as usize).product::<usize>() > order_cap {
            continue;
        }
        let matrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let step = orders[i] / gcd(orders[i], orders[j]);
                        step * rng.gen_range(0..orders[i])
                    })
                    .collect()
            })
            .collect();
        return FiniteFlow::new(orders, matrix).expect("constructed to be well defined");
    }
}

pub fn random_finite_set<R: Rng>(rng: &mut R, flow: &FiniteFlow, size: usize, with_zero: bool) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    if with_zero {
        out.push(vec![0; flow.rank()]);
    }
    while out.len() < size {
        let x: Vec<i64> = flow.orders.iter().map(|&d| rng.gen_range(0..d)).collect();
        if !out.contains(&x) {
            out.push(x);
        }
        if out.len() >= flow.order() {
            break;
        }
    }
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Box points of `Z^r` contained in a core subgroup.
pub fn box_members(h: &entrolab::Subgroup, r: usize, bound: i64) -> Vec<Vec<i64>> {
    entrolab_oracle::box_points(r, bound).into_iter().filter(|x| h.contains_coords(&big(x))).collect()
}

/// Elements of a finite flow's group contained in a core subgroup.
pub fn finite_members(flow: &FiniteFlow, h: &entrolab::Subgroup) -> Vec<Vec<i64>> {
    flow.enumerate().unwrap().elements.into_iter().filter(|x| h.contains_coords(&big(x))).collect()
}
