//! Brute-force reference computations.
//!
//! Everything here is written directly from the definitions with machine
//! integers and exhaustive search, and shares nothing with the main
//! algorithms except the conversion into their types. It is meant for tests
//! on small instances only.

use std::collections::{BTreeSet, HashMap};

use entrolab::{ElementSet, Endo, Group};
use num_bigint::BigInt;

/// Cap on the number of elements any finite scan may visit.
pub const SIZE_CAP: usize = 100_000;

/// `Z(d_1) + ... + Z(d_k)` with an endomorphism acting on columns, all
/// arithmetic done on residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFlow {
    pub orders: Vec<i64>,
    pub matrix: Vec<Vec<i64>>,
}

impl FiniteFlow {
    /// `None` unless every order is at least 2 and the matrix respects the orders:
    /// the image of `d_j e_j` must vanish, i.e. `d_i | a_ij d_j`.
    pub fn new(orders: Vec<i64>, matrix: Vec<Vec<i64>>) -> Option<Self> {
        let k = orders.len();
        if orders.iter().any(|&d| d < 2) || matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return None;
        }
        for i in 0..k {
            for j in 0..k {
                if (matrix[i][j] * orders[j]).rem_euclid(orders[i]) != 0 {
                    return None;
                }
            }
        }
        Some(FiniteFlow { orders, matrix })
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&d| d as usize).product()
    }

    pub fn normalize(&self, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.orders).map(|(v, d)| v.rem_euclid(*d)).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let y: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| (a * b) as i128).sum::<i128>() as i64)
            .collect();
        self.normalize(&y)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&s)
    }

    pub fn enumerate(&self) -> Option<FiniteEnumeration> {
        FiniteEnumeration::new(&self.orders)
    }

    pub fn core_group(&self) -> Group {
        let orders: Vec<u64> = self.orders.iter().map(|&d| d as u64).collect();
        Group::from_invariants(&orders)
    }

    pub fn core_endo(&self) -> Endo {
        Endo::from_rows(&self.core_group(), &self.matrix).expect("well-defined flow")
    }
}

/// Every element of a finite diagonal group, in lexicographic order.
#[derive(Debug, Clone)]
pub struct FiniteEnumeration {
    pub orders: Vec<i64>,
    pub elements: Vec<Vec<i64>>,
}

impl FiniteEnumeration {
    pub fn new(orders: &[i64]) -> Option<Self> {
        let total: usize = orders.iter().map(|&d| d as usize).product();
        if total > SIZE_CAP {
            return None;
        }
        let mut elements = vec![Vec::new()];
        for &d in orders {
            let mut next = Vec::with_capacity(elements.len() * d as usize);
            for e in &elements {
                for v in 0..d {
                    let mut x = e.clone();
                    x.push(v);
                    next.push(x);
                }
            }
            elements = next;
        }
        Some(FiniteEnumeration { orders: orders.to_vec(), elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `T_n(φ, F)` from scratch: the sets `φ^i(F)` are built by applying `φ`
/// `i` times to each element, then summed one after another.
pub fn brute_trajectory(flow: &FiniteFlow, f: &[Vec<i64>], n: usize, cap: usize) -> Option<BTreeSet<Vec<i64>>> {
    let mut total: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; flow.rank()]]);
    for i in 0..n {
        let layer: BTreeSet<Vec<i64>> = f
            .iter()
            .map(|x| {
                let mut y = flow.normalize(x);
                for _ in 0..i {
                    y = flow.apply(&y);
                }
                y
            })
            .collect();
        let mut next = BTreeSet::new();
        for a in &total {
            for b in &layer {
                next.insert(flow.add(a, b));
                if next.len() > cap {
                    return None;
                }
            }
        }
        total = next;
    }
    Some(total)
}

pub fn brute_tau(flow: &FiniteFlow, f: &[Vec<i64>], n: usize, cap: usize) -> Option<usize> {
    brute_trajectory(flow, f, n, cap).map(|t| t.len())
}

/// Orbit of `x`: returns `(preperiod, period)` of `x, φ(x), φ²(x), ...`.
fn orbit_shape(flow: &FiniteFlow, x: &[i64]) -> (usize, usize) {
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut y = x.to_vec();
    let mut k = 0;
    loop {
        if let Some(&first) = seen.get(&y) {
            return (first, k - first);
        }
        seen.insert(y.clone(), k);
        y = flow.apply(&y);
        k += 1;
    }
}

/// Elements with `φ^k(x) = x` for some `k >= 1`.
pub fn brute_p1(flow: &FiniteFlow) -> Option<Vec<Vec<i64>>> {
    let all = flow.enumerate()?;
    Some(all.elements.into_iter().filter(|x| orbit_shape(flow, x).0 == 0).collect())
}

/// Elements with `φ^n(x) = φ^m(x)` for some `n > m`: in a finite group, all of them.
pub fn brute_q1(flow: &FiniteFlow) -> Option<Vec<Vec<i64>>> {
    let all = flow.enumerate()?;
    Some(all.elements.into_iter().filter(|x| orbit_shape(flow, x).1 >= 1).collect())
}

/// Subgroup generated by `gens`, by closing `{0}` under adding generators.
pub fn brute_span(flow: &FiniteFlow, gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let zero = vec![0; flow.rank()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = flow.add(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Elements sent to zero.
pub fn brute_kernel(flow: &FiniteFlow) -> Option<Vec<Vec<i64>>> {
    let zero = vec![0; flow.rank()];
    Some(flow.enumerate()?.elements.into_iter().filter(|x| flow.apply(x) == zero).collect())
}

/// Elements sent into the subgroup generated by `gens`.
pub fn brute_preimage(flow: &FiniteFlow, gens: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let h = brute_span(flow, gens);
    Some(flow.enumerate()?.elements.into_iter().filter(|x| h.contains(&flow.apply(x))).collect())
}

fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i128> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| *p as i128 * *q as i128).sum()).collect()
}

/// All points of `[-bound, bound]^r`.
pub fn box_points(r: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for p in &pts {
            for v in -bound..=bound {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        pts = next;
    }
    pts
}

/// Box points with `A x = 0`.
pub fn brute_box_kernel(a: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let r = a.first().map_or(0, |row| row.len());
    box_points(r, bound).into_iter().filter(|x| mat_vec(a, x).iter().all(|v| *v == 0)).collect()
}

/// Whether `y` is an integer combination of linearly independent `gens`,
/// by Gaussian elimination over the rationals.
pub fn in_integer_span(gens: &[Vec<i64>], y: &[i128]) -> bool {
    let m = y.len();
    let k = gens.len();
    // augmented system [g_1 ... g_k | y] with rational entries (num, den)
    let mut rows: Vec<Vec<(i128, i128)>> = (0..m)
        .map(|i| {
            let mut r: Vec<(i128, i128)> = gens.iter().map(|g| (g[i] as i128, 1)).collect();
            r.push((y[i], 1));
            r
        })
        .collect();
    fn norm((n, d): (i128, i128)) -> (i128, i128) {
        let g = gcd(n.abs(), d.abs()).max(1);
        let s = if d < 0 { -1 } else { 1 };
        (s * n / g, s * d / g)
    }
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let sub = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.1 - b.0 * a.1, a.1 * b.1));
    let mul = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.0, a.1 * b.1));
    let div = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.1, a.1 * b.0));
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (pivot_row..m).find(|&i| rows[i][col].0 != 0) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let pv = rows[pivot_row][col];
        for j in 0..=k {
            rows[pivot_row][j] = div(rows[pivot_row][j], pv);
        }
        for i in 0..m {
            if i != pivot_row && rows[i][col].0 != 0 {
                let factor = rows[i][col];
                for j in 0..=k {
                    rows[i][j] = sub(rows[i][j], mul(factor, rows[pivot_row][j]));
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if (pivot_row..m).any(|i| rows[i][k].0 != 0) {
        return false;
    }
    pivots.iter().enumerate().all(|(r, _)| rows[r][k].1 == 1)
}

/// Box points with `A x` in the integer span of the independent `gens`.
pub fn brute_box_preimage(a: &[Vec<i64>], gens: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let r = a.first().map_or(0, |row| row.len());
    box_points(r, bound).into_iter().filter(|x| in_integer_span(gens, &mat_vec(a, x))).collect()
}

/// Box points of `Z^r` whose orbit under `A` returns to the start within
/// `max_period` steps.
pub fn brute_box_periodic(a: &[Vec<i64>], bound: i64, max_period: usize) -> Vec<Vec<i64>> {
    let r = a.len();
    box_points(r, bound)
        .into_iter()
        .filter(|x| {
            let start: Vec<i128> = x.iter().map(|&v| v as i128).collect();
            let mut y = start.clone();
            for _ in 0..max_period {
                y = a.iter().map(|row| row.iter().zip(&y).map(|(p, q)| *p as i128 * q).sum()).collect();
                if y == start {
                    return true;
                }
            }
            false
        })
        .collect()
}

/// Box points of `Z^r` with a finite orbit, detected as a repeat within
/// `max_steps` iterations.
pub fn brute_box_quasiperiodic(a: &[Vec<i64>], bound: i64, max_steps: usize) -> Vec<Vec<i64>> {
    let r = a.len();
    box_points(r, bound)
        .into_iter()
        .filter(|x| {
            let mut seen = BTreeSet::new();
            let mut y: Vec<i128> = x.iter().map(|&v| v as i128).collect();
            for _ in 0..max_steps {
                if !seen.insert(y.clone()) {
                    return true;
                }
                if y.iter().any(|v| v.abs() > 1 << 60) {
                    return false;
                }
                y = a.iter().map(|row| row.iter().zip(&y).map(|(p, q)| *p as i128 * q).sum()).collect();
            }
            false
        })
        .collect()
}

/// Sizes of trajectories in `Z^r` by direct set sums.
pub fn brute_tau_free(a: &[Vec<i64>], f: &[Vec<i64>], n: usize, cap: usize) -> Option<usize> {
    let r = a.len();
    let step = |x: &Vec<i128>| -> Vec<i128> { a.iter().map(|row| row.iter().zip(x).map(|(p, q)| *p as i128 * q).sum()).collect() };
    let mut total: BTreeSet<Vec<i128>> = BTreeSet::from([vec![0; r]]);
    for i in 0..n {
        let layer: BTreeSet<Vec<i128>> = f
            .iter()
            .map(|x| {
                let mut y: Vec<i128> = x.iter().map(|&v| v as i128).collect();
                for _ in 0..i {
                    y = step(&y);
                }
                y
            })
            .collect();
        let mut next = BTreeSet::new();
        for p in &total {
            for q in &layer {
                next.insert(p.iter().zip(q).map(|(u, v)| u + v).collect::<Vec<i128>>());
                if next.len() > cap {
                    return None;
                }
            }
        }
        total = next;
    }
    Some(total.len())
}

pub fn to_big(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&v| BigInt::from(v)).collect()
}

/// An oracle set as an `ElementSet` of the core group.
pub fn element_set(items: &[Vec<i64>]) -> ElementSet {
    ElementSet::from_coords(items.iter().map(|x| to_big(x)).collect())
}
