//! Rational matrices and characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{IntPoly, RatPoly};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rational matrix must be square".into()));
        }
        Ok(RatMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    /// Entries given as `(numerator, denominator)`.
    pub fn from_fractions<R: AsRef<[(i64, i64)]>>(rows: &[R]) -> Result<Self> {
        let mut out = Vec::new();
        for r in rows {
            let mut row = Vec::new();
            for &(p, q) in r.as_ref() {
                if q == 0 {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                row.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
            out.push(row);
        }
        Self::from_rows(out)
    }

    pub fn from_int(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("rational matrix must be square".into()));
        }
        Ok(RatMatrix {
            n: m.rows(),
            data: m.to_rows().into_iter().flatten().map(BigRational::from_integer).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `D * A` as an integer matrix, where `D` is the denominator lcm.
    pub fn scaled_integer(&self) -> (BigInt, IntMatrix) {
        let d = self.denominator_lcm();
        let dq = BigRational::from_integer(d.clone());
        let data = self.data.iter().map(|c| (c * &dq).to_integer()).collect();
        (d, IntMatrix::from_vec(self.n, self.n, data).expect("square"))
    }

    pub fn char_poly(&self) -> RatPoly {
        char_poly(self)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(tI - B)` of an integer matrix.
///
/// Fraction-free Bareiss elimination over `Z[t]`. Every pivot is a leading
/// principal minor of `tI - B`, hence monic, so no pivoting is needed and all
/// divisions are exact.
pub fn int_char_poly(b: &IntMatrix) -> IntPoly {
    assert!(b.is_square());
    let n = b.rows();
    if n == 0 {
        return IntPoly::one();
    }
    let mut m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = IntPoly::constant(-b[(i, j)].clone());
                    if i == j {
                        c.add(&IntPoly::monomial(1))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact_monic(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone()
}

/// Monic characteristic polynomial over `Q`.
///
/// With `D` the denominator lcm and `B = D A`, `p_A(t) = D^{-n} p_B(D t)`.
pub fn char_poly(a: &RatMatrix) -> RatPoly {
    let (d, b) = a.scaled_integer();
    let pb = int_char_poly(&b);
    let n = a.dim();
    let dn = num_traits::pow(d.clone(), n);
    let mut dk = BigInt::one();
    let mut out = Vec::with_capacity(n + 1);
    for c in pb.coeffs() {
        // coefficient of t^k in p_B(t) contributes c * D^{k-n}
        out.push(BigRational::new(c.clone(), BigInt::one()) * BigRational::new(dk.clone(), dn.clone()));
        dk *= &d;
    }
    let p = RatPoly::new(out);
    debug_assert!(p.is_monic() && !p.is_zero());
    p
}

/// Faddeev–LeVerrier, used as an independent check.
#[cfg(test)]
pub(crate) fn faddeev_leverrier(a: &RatMatrix) -> RatPoly {
    use num_traits::Zero;
    let n = a.dim();
    let mul = |x: &Vec<BigRational>, y: &Vec<BigRational>| {
        let mut out = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i * n + j] += &x[i * n + k] * &y[k * n + j];
                }
            }
        }
        out
    };
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk = vec![BigRational::zero(); n * n];
    for k in 1..=n {
        let mut next = mul(&a.data, &mk);
        for i in 0..n {
            next[i * n + i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(&a.data, &mk);
        let tr: BigRational = (0..n).map(|i| am[i * n + i].clone()).sum();
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
    }
    RatPoly::new(c)
}
