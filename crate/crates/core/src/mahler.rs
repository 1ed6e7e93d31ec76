//! Certified logarithmic Mahler measure.
//!
//! Roots are approximated by Aberth iteration in fixed-point Gaussian integer
//! arithmetic and then certified a posteriori with Weierstrass inclusion
//! disks: with `W_i = p(z_i) / (lead * prod_{j != i} (z_i - z_j))`, every
//! connected component formed by `k` of the disks `D(z_i, n |W_i|)` holds
//! exactly `k` roots. All certification arithmetic is exact; only the final
//! logarithms are taken in `f64` and padded outward.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{cyclotomic_split, IntPoly};

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo + o.lo, hi: self.hi + o.hi }
    }

    pub fn scale(&self, k: f64) -> Interval {
        Interval { lo: self.lo * k, hi: self.hi * k }
    }
}

const PRECISIONS: [u32; 4] = [64, 128, 256, 512];
pub const PRECISION_CEILING: u32 = 512;

/// `ln |x|` for a nonzero big integer.
pub(crate) fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let top = (x.abs() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `a / b` in `f64` for `b > 0`, accurate even when both are huge.
fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    let shift = b.bits().saturating_sub(60);
    let bf = (b >> shift).to_f64().unwrap();
    let af = if a.sign() == Sign::Minus { -((-a) >> shift).to_f64().unwrap() } else { (a >> shift).to_f64().unwrap() };
    af / bf
}

/// `ln(x / s)` for `x > 0`, `s > 0`, keeping relative accuracy near 1.
fn ln_ratio(x: &BigInt, s: &BigInt) -> f64 {
    let d = x - s;
    let r = ratio_f64(&d, s);
    if r.abs() < 0.5 {
        r.ln_1p()
    } else {
        ln_big(x) - ln_big(s)
    }
}

fn pad_outward(iv: Interval) -> Interval {
    let pad = |v: f64| 1e-14 * (1.0 + v.abs());
    Interval { lo: (iv.lo - pad(iv.lo)).max(0.0), hi: iv.hi + pad(iv.hi) }
}

/// Fixed-point complex number `(re + i im) / 2^prec`.
#[derive(Clone, Debug, PartialEq)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

impl Cx {
    fn zero() -> Self {
        Cx { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm_sq(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Cx, prec: u32) -> Cx {
        Cx {
            re: (&self.re * &o.re - &self.im * &o.im) >> prec,
            im: (&self.re * &o.im + &self.im * &o.re) >> prec,
        }
    }

    fn div(&self, o: &Cx, prec: u32) -> Option<Cx> {
        let d = o.norm_sq();
        if d.is_zero() {
            return None;
        }
        Some(Cx {
            re: ((&self.re * &o.re + &self.im * &o.im) << prec) / &d,
            im: ((&self.im * &o.re - &self.re * &o.im) << prec) / &d,
        })
    }

    fn shl(&self, k: u32) -> Cx {
        Cx { re: &self.re << k, im: &self.im << k }
    }

    /// Exact Gaussian integer product.
    fn gauss_mul(&self, o: &Cx) -> Cx {
        Cx { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

fn fixed_from_f64(x: f64, prec: u32) -> BigInt {
    use num_traits::FromPrimitive;
    BigInt::from_f64(x * 2f64.powi(prec as i32)).unwrap_or_default()
}

/// `p(z)` and `p'(z)` by Horner in fixed point.
fn eval_with_derivative(coeffs: &[BigInt], z: &Cx, prec: u32) -> (Cx, Cx) {
    let n = coeffs.len() - 1;
    let mut p = Cx { re: &coeffs[n] << prec, im: BigInt::zero() };
    let mut dp = Cx::zero();
    for c in coeffs[..n].iter().rev() {
        dp = dp.mul(z, prec).add(&p);
        p = p.mul(z, prec);
        p.re += c << prec;
    }
    (p, dp)
}

/// Initial points on a circle whose radius is a Fujiwara-style root bound.
fn initial_points(coeffs: &[BigInt], prec: u32) -> Vec<Cx> {
    let n = coeffs.len() - 1;
    let ln_lead = ln_big(&coeffs[n]);
    let mut ln_r = f64::NEG_INFINITY;
    for (k, c) in coeffs[..n].iter().enumerate() {
        if !c.is_zero() {
            ln_r = ln_r.max((ln_big(c) - ln_lead) / (n - k) as f64);
        }
    }
    let radius = ln_r.exp().clamp(1e-6, 1e150);
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Cx { re: fixed_from_f64(radius * theta.cos(), prec), im: fixed_from_f64(radius * theta.sin(), prec) }
        })
        .collect()
}

/// Aberth iteration in place; returns when the largest correction is within
/// `2^16` units in the last place or after `max_iter` sweeps.
fn aberth(coeffs: &[BigInt], z: &mut [Cx], prec: u32, max_iter: usize) {
    let n = z.len();
    let one = Cx { re: BigInt::one() << prec, im: BigInt::zero() };
    let tol = BigInt::one() << 32u32;
    // a nudge used to escape exact coincidences and critical points
    let nudge = Cx { re: BigInt::one() << (prec / 2), im: BigInt::one() << (prec / 3) };
    for _ in 0..max_iter {
        let mut worst = BigInt::zero();
        for i in 0..n {
            let (pv, dv) = eval_with_derivative(coeffs, &z[i], prec);
            if pv.is_zero() {
                continue;
            }
            let Some(newton) = pv.div(&dv, prec) else {
                z[i] = z[i].add(&nudge);
                worst = worst.max(nudge.norm_sq());
                continue;
            };
            let mut sum = Cx::zero();
            let mut clash = false;
            for j in 0..n {
                if j != i {
                    match one.div(&z[i].sub(&z[j]), prec) {
                        Some(inv) => sum = sum.add(&inv),
                        None => clash = true,
                    }
                }
            }
            if clash {
                z[i] = z[i].add(&nudge);
                worst = worst.max(nudge.norm_sq());
                continue;
            }
            let denom = one.sub(&newton.mul(&sum, prec));
            let w = newton.div(&denom, prec).unwrap_or(newton);
            worst = worst.max(w.norm_sq());
            z[i] = z[i].sub(&w);
        }
        if worst <= tol {
            return;
        }
    }
}

/// Certified enclosure of `sum log+ |λ|` over the roots of a square-free `p`,
/// from approximations at scale `2^prec`. `None` when two approximations coincide.
fn certify(coeffs: &[BigInt], z: &[Cx], prec: u32) -> Option<Interval> {
    let n = z.len();
    let lead = &coeffs[n];
    let s = BigInt::one() << prec;
    let s_pows: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x << prec)).take(n + 1).collect();

    let mut radius = Vec::with_capacity(n);
    for i in 0..n {
        // P = p(z_i) * S^n exactly
        let mut acc = Cx { re: coeffs[n].clone(), im: BigInt::zero() };
        for k in (0..n).rev() {
            acc = acc.gauss_mul(&z[i]);
            acc.re += &coeffs[k] * &s_pows[n - k];
        }
        let mut q = Cx { re: BigInt::one(), im: BigInt::zero() };
        for j in 0..n {
            if j != i {
                q = q.gauss_mul(&z[i].sub(&z[j]));
            }
        }
        let q2 = q.norm_sq();
        if q2.is_zero() {
            return None;
        }
        // (r S)^2 = n^2 |P|^2 / (lead^2 |Q|^2)
        let num = BigInt::from(n * n) * acc.norm_sq();
        let den = lead * lead * q2;
        let ceil = (&num + &den - 1u32) / &den;
        radius.push(ceil.sqrt() + 1u32);
    }

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let rr = &radius[i] + &radius[j];
            if rr.clone() * rr >= z[i].sub(&z[j]).norm_sq() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }

    let mut comps: std::collections::BTreeMap<usize, (usize, BigInt, BigInt)> = Default::default();
    for i in 0..n {
        let m = z[i].norm_sq().sqrt();
        let lo = (&m - &radius[i]).max(BigInt::zero());
        let hi = &m + 1u32 + &radius[i];
        let root = find(&mut parent, i);
        let e = comps.entry(root).or_insert((0, lo.clone(), hi.clone()));
        e.0 += 1;
        if lo < e.1 {
            e.1 = lo;
        }
        if hi > e.2 {
            e.2 = hi;
        }
    }

    let mut total = Interval::ZERO;
    for (_, (k, lo, hi)) in comps {
        let k = k as f64;
        let part = if lo > s {
            Interval { lo: ln_ratio(&lo, &s), hi: ln_ratio(&hi, &s) }
        } else if hi <= s {
            Interval::ZERO
        } else {
            Interval { lo: 0.0, hi: ln_ratio(&hi, &s) }
        };
        total = total.add(&pad_outward(part).scale(k));
    }
    Some(total)
}

/// `sum log+ |λ|` over the roots of a square-free integer polynomial, to width `target`.
fn squarefree_excess(p: &IntPoly, target: f64) -> Result<Interval> {
    let coeffs = p.coeffs();
    match p.degree() {
        0 => return Ok(Interval::ZERO),
        1 => {
            let (a, b) = (coeffs[0].abs(), coeffs[1].abs());
            if a <= b {
                return Ok(Interval::ZERO);
            }
            return Ok(pad_outward(Interval::point(ln_big(&a) - ln_big(&b))));
        }
        _ => {}
    }
    let mut prec = PRECISIONS[0];
    let mut z = initial_points(coeffs, prec);
    aberth(coeffs, &mut z, prec, 600);
    for (level, &bits) in PRECISIONS.iter().enumerate() {
        if level > 0 {
            z = z.iter().map(|c| c.shl(bits - prec)).collect();
            prec = bits;
            aberth(coeffs, &mut z, prec, 200);
        }
        if let Some(iv) = certify(coeffs, &z, prec) {
            if iv.width() <= target {
                return Ok(iv);
            }
        }
    }
    Err(Error::NonConvergence { bits: PRECISION_CEILING })
}

/// `sum_{|λ| > 1} log |λ|` over the roots of `p` counted with multiplicity.
///
/// Zero roots and cyclotomic factors are removed exactly first; the rest is
/// split into square-free parts so that root isolation never meets a
/// repeated root.
pub fn root_excess(p: &IntPoly, eps: f64) -> Result<Interval> {
    let split = cyclotomic_split(p)?;
    if split.rest.degree() == 0 {
        return Ok(Interval::ZERO);
    }
    let parts = split.rest.to_rat().squarefree_decomposition();
    let weight: usize = parts.iter().enumerate().filter(|(_, a)| a.degree() > 0).map(|(i, _)| i + 1).sum();
    let mut total = Interval::ZERO;
    for (i, a) in parts.iter().enumerate() {
        if a.degree() == 0 {
            continue;
        }
        let mult = (i + 1) as f64;
        let target = eps / (weight as f64).max(1.0);
        total = total.add(&squarefree_excess(&a.primitive_part(), target)?.scale(mult));
    }
    Ok(total)
}

/// Certified interval for `log M(p) = log |lead| + sum_{|λ| > 1} log |λ|`,
/// of width at most `eps`.
pub fn mahler_measure(p: &IntPoly, eps: f64) -> Result<Interval> {
    if p.is_zero() {
        return Err(Error::Invalid("Mahler measure of the zero polynomial".into()));
    }
    let lead = ln_big(&p.lead());
    Ok(root_excess(p, eps)?.add(&Interval::point(lead)))
}
