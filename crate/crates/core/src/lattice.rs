//! Integer lattice algebra: Hermite and Smith normal forms, integer kernels,
//! membership and coset reduction.
//!
//! Lattices are spanned by columns. The Hermite form used throughout is the
//! lower echelon column form: pivot rows strictly increase from left to
//! right, every pivot is positive, entries above a pivot are zero and the
//! entries to the left of a pivot (in the pivot row) lie in `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;

/// Output of [`hnf_with_transform`].
#[derive(Debug, Clone)]
pub struct HnfTransform {
    /// Echelon basis of the column lattice, one vector per column.
    pub basis: Vec<Vec<BigInt>>,
    /// Pivot row of each basis column.
    pub pivots: Vec<usize>,
    /// Basis of the integer relation module `{c : M c = 0}`.
    pub kernel: Vec<Vec<BigInt>>,
}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d += q * s;
    }
}

/// Column echelon reduction with an optional record of the column operations.
fn echelon(rows: usize, mut cols: Vec<Vec<BigInt>>, track: bool) -> HnfTransform {
    let m = cols.len();
    let mut trans: Vec<Vec<BigInt>> = if track {
        (0..m)
            .map(|j| {
                let mut e = vec![BigInt::zero(); m];
                e[j] = BigInt::one();
                e
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..rows {
        if k == m {
            break;
        }
        loop {
            // minimal nonzero absolute value in row i among the active columns
            let pick = (k..m)
                .filter(|&j| !cols[j][i].is_zero())
                .min_by(|&a, &b| cols[a][i].abs().cmp(&cols[b][i].abs()));
            let Some(p) = pick else { break };
            cols.swap(k, p);
            if track {
                trans.swap(k, p);
            }
            let mut done = true;
            for j in k + 1..m {
                if cols[j][i].is_zero() {
                    continue;
                }
                let q = -(&cols[j][i] / &cols[k][i]);
                let (head, tail) = cols.split_at_mut(j);
                axpy(&mut tail[0], &q, &head[k]);
                if track {
                    let (th, tt) = trans.split_at_mut(j);
                    axpy(&mut tt[0], &q, &th[k]);
                }
                if !cols[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if k < m && !cols[k][i].is_zero() {
            if cols[k][i].is_negative() {
                for v in cols[k].iter_mut() {
                    *v = -std::mem::take(v);
                }
                if track {
                    for v in trans[k].iter_mut() {
                        *v = -std::mem::take(v);
                    }
                }
            }
            for j in 0..k {
                let q = -cols[j][i].div_floor(&cols[k][i]);
                let (head, tail) = cols.split_at_mut(k);
                axpy(&mut head[j], &q, &tail[0]);
                if track {
                    let (th, tt) = trans.split_at_mut(k);
                    axpy(&mut th[j], &q, &tt[0]);
                }
            }
            pivots.push(i);
            k += 1;
        }
    }
    debug_assert!(cols[k..].iter().all(|c| is_zero_vec(c)));
    let kernel = if track { trans.split_off(k) } else { Vec::new() };
    cols.truncate(k);
    HnfTransform { basis: cols, pivots, kernel }
}

/// Column Hermite normal form of the lattice spanned by the columns of `m`.
/// Zero columns are dropped; the result has full column rank.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let t = echelon(m.rows(), m.columns(), false);
    IntMatrix::from_columns(m.rows(), &t.basis)
}

/// Hermite form together with a basis of the integer kernel of `m`.
pub fn hnf_with_transform(m: &IntMatrix) -> HnfTransform {
    echelon(m.rows(), m.columns(), true)
}

/// Basis of `{x in Z^cols : m x = 0}`, in Hermite form.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let t = hnf_with_transform(m);
    let k = IntMatrix::from_columns(m.cols(), &t.kernel);
    hnf(&k)
}

/// Smith normal form `U * M * V = S`, plus `U^{-1}`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let r = self.s.rows().min(self.s.cols());
        (0..r)
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen with minimal absolute value, and the diagonal is
/// made nonnegative with `d_1 | d_2 | ...`.
pub fn snf(m: &IntMatrix) -> Smith {
    let (n, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(c);

    for t in 0..n.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..c {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..n {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                u_inv.add_col_multiple(t, i, &-&q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let mut offender = None;
            'scan: for i in t + 1..n {
                for j in t + 1..c {
                    if !(&a[(i, j)] % &a[(t, t)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    Smith { u, u_inv, s: a, v }
}

/// A full-rank sublattice of `Z^n` held in canonical Hermite form.
///
/// Two lattices are equal iff their canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_generators(dim, IntMatrix::identity(dim).columns())
    }

    pub fn from_generators(dim: usize, gens: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == dim));
        let t = echelon(dim, gens, false);
        Lattice { dim, basis: t.basis, pivots: t.pivots }
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), m.columns())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the lattice (number of basis vectors).
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    /// Canonical coset representative of `x` modulo the lattice.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = x.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let q = y[p].div_floor(&b[p]);
            if !q.is_zero() {
                axpy(&mut y, &-q, b);
            }
        }
        y
    }

    /// Coefficients `c` with `x = basis * c`, if `x` lies in the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut y = x.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = y[p].div_rem(&b[p]);
            if !r.is_zero() {
                return None;
            }
            axpy(&mut y, &-&q, b);
            coeffs.push(q);
        }
        is_zero_vec(&y).then_some(coeffs)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        is_zero_vec(&self.reduce(x))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn join(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Self::from_generators(self.dim, gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let k1 = self.rank();
        if k1 == 0 || other.rank() == 0 {
            return Lattice::zero(self.dim);
        }
        // solve B1 y = B2 z; the intersection is spanned by B1 y
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|v| -v).collect()));
        let t = echelon(self.dim, cols, true);
        let b1 = self.basis_matrix();
        let gens = t.kernel.iter().map(|c| b1.mul_vec(&c[..k1])).collect();
        Self::from_generators(self.dim, gens)
    }

    /// `{x : m x in self}` for an `n x dim` matrix `m` acting on `Z^n`.
    pub fn preimage(&self, m: &IntMatrix) -> Lattice {
        assert_eq!(m.rows(), self.dim);
        let n = m.cols();
        let mut cols = m.columns();
        cols.extend(self.basis.iter().map(|b| b.iter().map(|v| -v).collect()));
        let t = echelon(self.dim, cols, true);
        let gens = t.kernel.into_iter().map(|mut c| {
            c.truncate(n);
            c
        });
        Self::from_generators(n, gens.collect())
    }

    /// Index `[Z^dim : self]` when the lattice has full rank.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.dim)
            .then(|| self.basis.iter().zip(&self.pivots).map(|(b, &p)| b[p].clone()).product())
    }
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice{:?}", self.basis_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_identity_and_zero() {
        let s = snf(&IntMatrix::identity(2));
        assert_eq!(s.s, IntMatrix::identity(2));
        let z = snf(&IntMatrix::zeros(2, 3));
        assert!(z.s.is_zero());
    }

    #[test]
    fn snf_two_by_two() {
        let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = snf(&m);
        assert_eq!(s.s, IntMatrix::diagonal(&[2, 4]));
        assert_eq!(&(&s.u * &m) * &s.v, s.s);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(2));
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
    }

    #[test]
    fn snf_known_four_by_four() {
        let m = IntMatrix::from_rows(&[
            [-6, 111, -36, 6],
            [5, -672, 210, 74],
            [0, -255, 81, 24],
            [-7, 255, -81, -10],
        ]);
        let s = snf(&m);
        assert_eq!(s.s, IntMatrix::diagonal(&[1, 3, 21, 0]));
        assert_eq!(&(&s.u * &m) * &s.v, s.s);
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&IntMatrix::identity(2)), IntMatrix::identity(2));
        let h = hnf(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(h, IntMatrix::from_rows(&[[2, 0], [2, 4]]));
        assert_eq!(hnf(&h), h);
        let col = IntMatrix::from_rows(&[[3], [6]]);
        assert_eq!(hnf(&col), col);
        assert_eq!(hnf(&IntMatrix::from_rows(&[[-3], [-6]])), col);
    }

    #[test]
    fn hnf_drops_dependent_columns() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let h = hnf(&m);
        assert_eq!(h, IntMatrix::from_rows(&[[1], [2]]));
    }

    #[test]
    fn kernel_of_nilpotent() {
        let k = integer_kernel(&IntMatrix::from_rows(&[[0, 1], [0, 0]]));
        assert_eq!(k, IntMatrix::from_rows(&[[1], [0]]));
    }

    #[test]
    fn reduce_and_solve() {
        let l = Lattice::from_matrix(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(l.reduce(&big(&[5, -1])), big(&[1, 2]));
        assert_eq!(l.solve(&big(&[4, -3])), Some(big(&[2, -1])));
        assert_eq!(l.solve(&big(&[1, 0])), None);
        assert_eq!(l.index(), Some(BigInt::from(6)));
    }

    #[test]
    fn join_and_intersect() {
        let a = Lattice::from_generators(2, vec![big(&[2, 0])]);
        let b = Lattice::from_generators(2, vec![big(&[0, 3])]);
        assert_eq!(a.join(&b), Lattice::from_matrix(&IntMatrix::diagonal(&[2, 3])));
        assert_eq!(a.intersect(&b), Lattice::zero(2));
        let c = Lattice::from_generators(2, vec![big(&[4, 6])]);
        let d = Lattice::from_generators(2, vec![big(&[2, 0]), big(&[0, 2])]);
        assert_eq!(c.intersect(&d), c);
        let e = Lattice::from_generators(2, vec![big(&[3, 0]), big(&[0, 1])]);
        assert_eq!(d.intersect(&e), Lattice::from_matrix(&IntMatrix::diagonal(&[6, 2])));
    }

    #[test]
    fn preimage_under_shear() {
        // {(x,y) : (x, x+y) in span(e2)} = span(e2)
        let a = IntMatrix::from_rows(&[[1, 0], [1, 1]]);
        let h = Lattice::from_generators(2, vec![big(&[0, 1])]);
        assert_eq!(h.preimage(&a), h);
    }
}
