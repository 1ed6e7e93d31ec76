//! Univariate polynomials over `Z` and `Q`, cyclotomic polynomials and
//! square-free decomposition.
//!
//! Coefficients are stored low degree first and kept trimmed, so the last
//! coefficient is the leading one (the zero polynomial has no coefficients).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        (0..k).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder by a monic divisor (exact over `Z`).
    pub fn divrem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact quotient by a monic divisor, if it divides.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Exact quotient by an arbitrary nonzero divisor, if the division is exact over `Z`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree();
        let lead = divisor.lead();
        if self.coeffs.len() < divisor.coeffs.len() {
            return self.is_zero().then(IntPoly::zero);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let (c, r) = rem[k + dd].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    /// `p(t) -> p(c t)`.
    pub fn scale_variable(&self, c: &BigInt) -> IntPoly {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        IntPoly::new(out)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + big_to_f64(c))
    }
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

fn fmt_poly<T: fmt::Display + Zero + One + PartialEq + Clone + std::ops::Neg<Output = T>>(
    coeffs: &[T],
    f: &mut fmt::Formatter<'_>,
    is_negative: impl Fn(&T) -> bool,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = abs.is_one();
        match (k, unit) {
            (0, _) => write!(f, "{abs}")?,
            (1, true) => write!(f, "t")?,
            (1, false) => write!(f, "{abs}*t")?,
            (_, true) => write!(f, "t^{k}")?,
            (_, false) => write!(f, "{abs}*t^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f, |c| c.is_negative())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// Coefficients given as `(numerator, denominator)` pairs.
    pub fn from_fractions(coeffs: &[(i64, i64)]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn one() -> Self {
        RatPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        RatPoly { coeffs: self.coeffs.iter().map(|c| c / &l).collect() }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `s * p` for `s` the denominator lcm, as an integer polynomial.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let s = self.denominator_lcm();
        let c = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(s.clone())).to_integer())
            .collect();
        (s, IntPoly::new(c))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn divrem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (RatPoly::new(Vec::new()), self.clone());
        }
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: returns monic `a_1, a_2, ...` with
    /// `monic(self) = a_1 * a_2^2 * a_3^3 * ...`, pairwise coprime and square-free.
    pub fn squarefree_decomposition(&self) -> Vec<RatPoly> {
        let f = self.monic();
        if f.degree() == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divrem(&a0).0;
        let c = fp.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let nb = b.divrem(&a).0;
            let nc = d.divrem(&a).0;
            d = nc.sub(&nb.derivative());
            b = nb;
            out.push(a);
        }
        out
    }

    /// Integer polynomial with the same roots: denominators cleared and content removed.
    pub fn primitive_part(&self) -> IntPoly {
        let (_, p) = self.clear_denominators();
        let c = p.content();
        if c.is_zero() || c.is_one() {
            return p;
        }
        IntPoly::new(p.coeffs().iter().map(|x| x / &c).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f, |c| c.is_negative())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// Smallest `s >= 1` with `s * p` integral, for monic `p`.
pub fn denominator_lcm(p: &RatPoly) -> Result<BigInt> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(p.denominator_lcm())
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `d`-th cyclotomic polynomial, from `t^d - 1 = prod_{e | d} Φ_e`.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1);
    let mut p = IntPoly::monomial(d as usize).sub(&IntPoly::one());
    for e in 1..d {
        if d % e == 0 {
            p = p.div_exact_monic(&cyclotomic(e)).expect("Φ_e divides t^d - 1");
        }
    }
    p
}

/// All `d` with `φ(d) <= bound`, ascending.
pub fn cyclotomic_indices_up_to_degree(bound: usize) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    // φ(d) >= sqrt(d/2), so d <= 2 * bound^2 covers every candidate
    let limit = 2 * (bound as u64) * (bound as u64) + 2;
    (1..=limit).filter(|&d| euler_phi(d) as usize <= bound).collect()
}

/// `p = t^{t_power} * cyclo * rest`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSplit {
    pub cyclo: IntPoly,
    pub rest: IntPoly,
    pub t_power: usize,
    /// `(d, multiplicity)` for every `Φ_d` found.
    pub factors: Vec<(u64, usize)>,
}

/// Strips the power of `t` and every cyclotomic factor (with multiplicity) by
/// exact trial division by `Φ_d` for all `d` with `φ(d) <= deg p`.
pub fn cyclotomic_split(p: &IntPoly) -> Result<CyclotomicSplit> {
    if p.is_zero() {
        return Err(Error::Invalid("cyclotomic split of the zero polynomial".into()));
    }
    let t_power = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut rest = IntPoly::new(p.coeffs()[t_power..].to_vec());
    let mut cyclo = IntPoly::one();
    let mut factors = Vec::new();
    for d in cyclotomic_indices_up_to_degree(rest.degree()) {
        if euler_phi(d) as usize > rest.degree() {
            continue;
        }
        let phi_d = cyclotomic(d);
        let mut mult = 0;
        while rest.degree() >= phi_d.degree() {
            match rest.div_exact_monic(&phi_d) {
                Some(q) => {
                    rest = q;
                    cyclo = cyclo.mul(&phi_d);
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            factors.push((d, mult));
        }
    }
    Ok(CyclotomicSplit { cyclo, rest, t_power, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        for d in 1..=30 {
            assert_eq!(cyclotomic(d).degree() as u64, euler_phi(d));
        }
    }

    #[test]
    fn candidate_indices() {
        assert_eq!(cyclotomic_indices_up_to_degree(2), vec![1, 2, 3, 4, 6]);
        assert_eq!(cyclotomic_indices_up_to_degree(4), vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
    }

    #[test]
    fn split_examples() {
        let s = cyclotomic_split(&IntPoly::from_i64(&[1, -2, 1])).unwrap();
        assert_eq!(s.cyclo, IntPoly::from_i64(&[1, -2, 1]));
        assert!(s.rest.is_one());
        assert_eq!(s.t_power, 0);

        let g = IntPoly::from_i64(&[-1, -1, 1]);
        let s = cyclotomic_split(&g).unwrap();
        assert!(s.cyclo.is_one());
        assert_eq!(s.rest, g);

        let s = cyclotomic_split(&IntPoly::from_i64(&[0, 0, 1, 1])).unwrap();
        assert_eq!(s.t_power, 2);
        assert_eq!(s.cyclo, cyclotomic(2));
        assert!(s.rest.is_one());
    }

    #[test]
    fn denominators() {
        assert_eq!(RatPoly::from_fractions(&[(-1, 1), (-1, 1), (1, 1)]).denominator_lcm(), BigInt::from(1));
        assert_eq!(RatPoly::from_fractions(&[(-1, 2), (1, 1)]).denominator_lcm(), BigInt::from(2));
        let p = RatPoly::from_fractions(&[(5, 6), (-3, 4), (1, 1)]);
        assert_eq!(p.denominator_lcm(), BigInt::from(12));
        assert_eq!(p.clear_denominators().1, IntPoly::from_i64(&[10, -9, 12]));
    }

    #[test]
    fn denominator_lcm_needs_monic() {
        assert_eq!(denominator_lcm(&RatPoly::from_fractions(&[(-1, 2), (1, 1)])), Ok(BigInt::from(2)));
        assert_eq!(denominator_lcm(&RatPoly::from_fractions(&[(1, 1), (2, 1)])), Err(Error::NotMonic));
    }

    #[test]
    fn squarefree_parts() {
        // (t-1)^2 (t+2)^3 (t^2 - 3)
        let a = IntPoly::from_i64(&[-1, 1]).pow(2);
        let b = IntPoly::from_i64(&[2, 1]).pow(3);
        let c = IntPoly::from_i64(&[-3, 0, 1]);
        let f = a.mul(&b).mul(&c).to_rat();
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], c.to_rat());
        assert_eq!(parts[1], IntPoly::from_i64(&[-1, 1]).to_rat());
        assert_eq!(parts[2], IntPoly::from_i64(&[2, 1]).to_rat());
    }

    #[test]
    fn exact_division() {
        let p = IntPoly::from_i64(&[2, 3, 1]);
        assert_eq!(p.div_exact(&IntPoly::from_i64(&[1, 1])), Some(IntPoly::from_i64(&[2, 1])));
        assert_eq!(p.div_exact(&IntPoly::from_i64(&[1, 2])), None);
        assert_eq!(IntPoly::from_i64(&[4, 6]).div_exact(&IntPoly::from_i64(&[2, 3])), Some(IntPoly::from_i64(&[2])));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-1, -1, 1]).to_string(), "t^2 - t - 1");
        assert_eq!(RatPoly::from_fractions(&[(-1, 2), (1, 1)]).to_string(), "t - 1/2");
    }
}
