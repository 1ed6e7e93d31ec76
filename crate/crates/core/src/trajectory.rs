//! Trajectories `T_n(φ, F) = F + φ(F) + ... + φ^{n-1}(F)`, their sizes, the
//! trajectory subgroup `V(φ, F)`, growth classification, and the Bernoulli
//! shift on finitely supported sequences.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::entropy::{algebraic_entropy, EntropyValue};
use crate::error::{Error, Result};
use crate::group::{ElementSet, Endo, Group, Subgroup};
use crate::mahler::ln_big;

pub const DEFAULT_SET_BUDGET: usize = 2_000_000;
pub const DEFAULT_MAX_N: usize = 32;
/// Empirical verdicts call a flow exponential above this estimate (nats).
pub const EMPIRICAL_THRESHOLD: f64 = 0.02;
/// Fewest τ values the estimator accepts.
pub const MIN_TERMS: usize = 8;

/// A map on canonical coordinate vectors together with the group law.
pub trait Dynamics {
    fn image(&self, x: &[BigInt]) -> Vec<BigInt>;
    fn sum(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt>;
    fn canonical(&self, x: &[BigInt]) -> Vec<BigInt>;
}

impl Dynamics for Endo {
    fn image(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.apply_coords(x)
    }

    fn sum(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.group().add(a, b)
    }

    fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group().reduce(x)
    }
}

fn check_nonempty(f: &ElementSet) -> Result<()> {
    if f.is_empty() {
        return Err(Error::Invalid("the finite set F must be non-empty".into()));
    }
    Ok(())
}

fn sumset<D: Dynamics>(phi: &D, a: &ElementSet, b: &ElementSet, budget: usize) -> Result<ElementSet> {
    let mut out: HashSet<Vec<BigInt>> = HashSet::with_capacity(a.len().max(b.len()));
    for x in a.iter() {
        for y in b.iter() {
            out.insert(phi.sum(x, y));
            if out.len() > budget {
                return Err(Error::BudgetExceeded { budget });
            }
        }
    }
    Ok(ElementSet::from_coords(out.into_iter().collect()))
}

fn image_set<D: Dynamics>(phi: &D, a: &ElementSet) -> ElementSet {
    ElementSet::from_coords(a.iter().map(|x| phi.image(x)).collect())
}

/// Incremental trajectories: each step adds `φ^{n-1}(F)` to `T_{n-1}`.
pub struct Trajectories<'a, D: Dynamics> {
    phi: &'a D,
    power_image: ElementSet,
    current: ElementSet,
    n: usize,
    budget: usize,
}

impl<'a, D: Dynamics> Trajectories<'a, D> {
    pub fn new(phi: &'a D, f: &ElementSet, budget: usize) -> Result<Self> {
        check_nonempty(f)?;
        let f = ElementSet::from_coords(f.iter().map(|x| phi.canonical(x)).collect());
        if f.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        Ok(Trajectories { phi, power_image: f.clone(), current: f, n: 1, budget })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn current(&self) -> &ElementSet {
        &self.current
    }

    /// Advances from `T_n` to `T_{n+1}`.
    pub fn step(&mut self) -> Result<&ElementSet> {
        self.power_image = image_set(self.phi, &self.power_image);
        self.current = sumset(self.phi, &self.current, &self.power_image, self.budget)?;
        self.n += 1;
        Ok(&self.current)
    }
}

pub fn n_trajectory<D: Dynamics>(phi: &D, f: &ElementSet, n: usize, budget: usize) -> Result<ElementSet> {
    if n == 0 {
        return Err(Error::Invalid("trajectory length must be at least 1".into()));
    }
    let mut t = Trajectories::new(phi, f, budget)?;
    while t.n() < n {
        t.step()?;
    }
    Ok(t.current)
}

pub fn tau<D: Dynamics>(phi: &D, f: &ElementSet, n: usize, budget: usize) -> Result<usize> {
    Ok(n_trajectory(phi, f, n, budget)?.len())
}

/// `τ(1), ..., τ(N)` in full, or the budget error.
pub fn tau_sequence<D: Dynamics>(phi: &D, f: &ElementSet, max_n: usize, budget: usize) -> Result<TauSequence> {
    let seq = tau_prefix(phi, f, max_n, budget)?;
    match seq.stopped_by_budget {
        Some(b) => Err(Error::BudgetExceeded { budget: b }),
        None => Ok(seq),
    }
}

/// As many leading terms of the τ-sequence as fit in the budget.
pub fn tau_prefix<D: Dynamics>(phi: &D, f: &ElementSet, max_n: usize, budget: usize) -> Result<TauSequence> {
    if max_n == 0 {
        return Err(Error::Invalid("max_n must be at least 1".into()));
    }
    let mut t = Trajectories::new(phi, f, budget)?;
    let mut values = vec![BigInt::from(t.current().len())];
    let mut stopped = None;
    while values.len() < max_n {
        match t.step() {
            Ok(s) => values.push(BigInt::from(s.len())),
            Err(Error::BudgetExceeded { budget }) => {
                stopped = Some(budget);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(TauSequence { values, requested: max_n, stopped_by_budget: stopped })
}

/// `τ(1..N)`; `values[n-1] = τ(n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauSequence {
    #[serde(serialize_with = "ser_counts")]
    pub values: Vec<BigInt>,
    pub requested: usize,
    /// Set when the computation stopped early at the set budget.
    pub stopped_by_budget: Option<usize>,
}

fn ser_counts<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl TauSequence {
    pub fn from_counts<I: IntoIterator<Item = u64>>(counts: I) -> Self {
        let values: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
        let requested = values.len();
        TauSequence { values, requested, stopped_by_budget: None }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `τ(n)` for `1 <= n <= len`.
    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n - 1]
    }

    pub fn log_values(&self) -> Vec<f64> {
        self.values.iter().map(ln_big).collect()
    }

    /// CSV with header `n,tau,log_tau`, logarithms in nats to 12 decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,tau,log_tau\n");
        for (i, (v, l)) in self.values.iter().zip(self.log_values()).enumerate() {
            writeln!(out, "{},{},{:.12}", i + 1, v, l).unwrap();
        }
        out
    }

    pub fn entropy_estimate(&self) -> Result<f64> {
        entropy_estimate(self)
    }

    pub fn degree_estimate(&self) -> Option<f64> {
        degree_estimate(self)
    }
}

fn window_start(len: usize) -> usize {
    // 1-based index of the first n in the last ⌈len/3⌉ terms
    len - len.div_ceil(3) + 1
}

/// Ordinary least squares `y = a + b x`; returns `(a, b)`.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return (my, 0.0);
    }
    let b = sxy / sxx;
    (my - b * mx, b)
}

/// Estimate of `lim log τ(n) / n`.
///
/// The forward differences `Δ(n) = log τ(n) - log τ(n-1)` of a sequence
/// growing like `b^n n^d` behave like `log b + d/n + O(1/n^2)`. The
/// differences over the last third of the sequence are fitted against `1/n`
/// and the intercept is returned, clamped at zero. Plain averaging would
/// leave the `d/n` drift in the estimate. Constant differences are returned
/// as they are.
pub fn entropy_estimate(seq: &TauSequence) -> Result<f64> {
    let n = seq.len();
    if n < MIN_TERMS {
        return Err(Error::SequenceTooShort { needed: MIN_TERMS, got: n });
    }
    let logs = seq.log_values();
    let start = window_start(n).max(2);
    let diffs: Vec<f64> = (start..=n).map(|k| logs[k - 1] - logs[k - 2]).collect();
    let avg = diffs.iter().sum::<f64>() / diffs.len() as f64;
    if diffs.iter().all(|d| (d - avg).abs() <= 1e-12 * (1.0 + avg.abs())) {
        return Ok(avg.max(0.0));
    }
    // Δ(k) ≈ H + d/k: fit on 1/k and read off the intercept
    let xs: Vec<f64> = (start..=n).map(|k| 1.0 / k as f64).collect();
    let (intercept, _) = least_squares(&xs, &diffs);
    Ok(intercept.max(0.0))
}

/// Least-squares slope of `log τ` against `log n` over the last third,
/// rounded to one decimal. Informational only.
pub fn degree_estimate(seq: &TauSequence) -> Option<f64> {
    let n = seq.len();
    if n < 3 {
        return None;
    }
    let logs = seq.log_values();
    let start = window_start(n).max(2);
    let xs: Vec<f64> = (start..=n).map(|k| (k as f64).ln()).collect();
    let ys: Vec<f64> = (start..=n).map(|k| logs[k - 1]).collect();
    if xs.len() < 2 {
        return None;
    }
    let (_, slope) = least_squares(&xs, &ys);
    Some((slope.max(0.0) * 10.0).round() / 10.0)
}

/// `V(φ, F)`: the smallest φ-invariant subgroup containing `F`.
pub fn trajectory_subgroup(phi: &Endo, f: &ElementSet) -> Result<Subgroup> {
    check_nonempty(f)?;
    let mut h = phi.group().subgroup(f.as_slice())?;
    loop {
        let next = h.join(&phi.image_of(&h)?)?;
        if next == h {
            return Ok(h);
        }
        h = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthKind {
    Polynomial,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthMode {
    Exact,
    Empirical,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthVerdict {
    pub kind: GrowthKind,
    pub mode: GrowthMode,
    /// `H(φ, F)` in nats: exact in Exact mode, estimated otherwise.
    pub entropy: f64,
    /// Growth rate `log b` for exponential verdicts.
    pub rate: Option<f64>,
    /// Polynomial degree estimate, informational.
    pub degree: Option<f64>,
    /// Number of τ terms behind the estimate.
    pub terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<EntropyValue>,
}

#[derive(Debug, Clone, Copy)]
pub struct GrowthOptions {
    pub max_n: usize,
    pub budget: usize,
    pub epsilon: f64,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions { max_n: DEFAULT_MAX_N, budget: DEFAULT_SET_BUDGET, epsilon: crate::entropy::DEFAULT_EPSILON }
    }
}

/// Verdict from a τ-sequence alone.
pub fn empirical_verdict(seq: &TauSequence) -> Result<GrowthVerdict> {
    let h = entropy_estimate(seq)?;
    let exponential = h > EMPIRICAL_THRESHOLD;
    Ok(GrowthVerdict {
        kind: if exponential { GrowthKind::Exponential } else { GrowthKind::Polynomial },
        mode: GrowthMode::Empirical,
        entropy: h,
        rate: exponential.then_some(h),
        degree: if exponential { None } else { degree_estimate(seq) },
        terms: seq.len(),
        exact: None,
    })
}

/// Classifies the growth of `τ_{φ,F}`. Exact mode computes the entropy of
/// `φ` restricted to `V(φ, F)`, which is positive exactly for exponential
/// growth; Empirical mode thresholds the estimate from the τ-sequence.
pub fn growth_classify(phi: &Endo, f: &ElementSet, mode: GrowthMode, opts: &GrowthOptions) -> Result<GrowthVerdict> {
    check_nonempty(f)?;
    match mode {
        GrowthMode::Empirical => empirical_verdict(&tau_prefix(phi, f, opts.max_n, opts.budget)?),
        GrowthMode::Exact => {
            let v = trajectory_subgroup(phi, f)?;
            let restricted = phi.restrict(&v)?;
            let e = algebraic_entropy(&restricted.endo, opts.epsilon)?;
            let exponential = !e.is_exactly_zero();
            let degree = if exponential {
                None
            } else {
                tau_prefix(phi, f, opts.max_n.min(16), opts.budget.min(1 << 16)).ok().and_then(|s| degree_estimate(&s))
            };
            Ok(GrowthVerdict {
                kind: if exponential { GrowthKind::Exponential } else { GrowthKind::Polynomial },
                mode: GrowthMode::Exact,
                entropy: e.nats(),
                rate: exponential.then(|| e.nats()),
                degree,
                terms: 0,
                exact: Some(e),
            })
        }
    }
}

/// Finitely supported sequences `N -> K` over a finite group `K`.
///
/// An element is stored as the concatenation of its canonical base blocks
/// with trailing zeros removed, so the empty vector is zero.
#[derive(Clone, Debug)]
pub struct ShiftGroup {
    base: Group,
}

impl ShiftGroup {
    pub fn new(base: &Group) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::Invalid("shift groups need a finite base group".into()));
        }
        if base.rank() == 0 {
            return Err(Error::Invalid("shift base must have positive rank".into()));
        }
        Ok(ShiftGroup { base: base.clone() })
    }

    /// Sequences over `Z(q)`.
    pub fn cyclic(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Invalid(format!("shift base order must be at least 2, got {q}")));
        }
        Self::new(&Group::cyclic(q))
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn block_len(&self) -> usize {
        self.base.rank()
    }

    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        let k = self.block_len();
        let mut out = Vec::with_capacity(x.len().div_ceil(k) * k);
        for chunk in x.chunks(k) {
            let mut block = chunk.to_vec();
            block.resize(k, BigInt::zero());
            out.extend(self.base.reduce(&block));
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// Generator `j` of the base placed at position `i`.
    pub fn unit(&self, i: usize, j: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); i * self.block_len() + self.block_len()];
        v[i * self.block_len() + j] = BigInt::one();
        self.canonical(&v)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let s: Vec<BigInt> = (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
        self.canonical(&s)
    }

    pub fn set(&self, items: &[Vec<BigInt>]) -> ElementSet {
        ElementSet::from_coords(items.iter().map(|x| self.canonical(x)).collect())
    }

    fn blocks(&self, x: &[BigInt], count: usize) -> Vec<Vec<BigInt>> {
        let k = self.block_len();
        (0..count)
            .map(|b| (0..k).map(|j| x.get(b * k + j).cloned().unwrap_or_default()).collect())
            .collect()
    }
}

/// The right shift `(x_0, x_1, ...) -> (0, x_0, x_1, ...)`.
#[derive(Clone, Debug)]
pub struct Bernoulli {
    shift: ShiftGroup,
}

pub fn bernoulli(sg: &ShiftGroup) -> Bernoulli {
    Bernoulli { shift: sg.clone() }
}

impl Dynamics for Bernoulli {
    fn image(&self, x: &[BigInt]) -> Vec<BigInt> {
        if x.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigInt::zero(); self.shift.block_len()];
        v.extend_from_slice(x);
        v
    }

    fn sum(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.shift.add(a, b)
    }

    fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.shift.canonical(x)
    }
}

impl Bernoulli {
    pub fn shift_group(&self) -> &ShiftGroup {
        &self.shift
    }

    /// `τ(1..N)` without enumerating trajectories.
    ///
    /// Reading `Σ β^i f_i` block by block is a nondeterministic transducer
    /// whose state is the carry of not yet emitted blocks; determinizing it
    /// counts distinct sums as distinct output words. `budget` caps the number
    /// of determinized states alive at once.
    pub fn tau_sequence(&self, f: &ElementSet, max_n: usize, budget: usize) -> Result<TauSequence> {
        check_nonempty(f)?;
        if max_n == 0 {
            return Err(Error::Invalid("max_n must be at least 1".into()));
        }
        let sg = &self.shift;
        let k = sg.block_len();
        let elems: Vec<Vec<BigInt>> = f.iter().map(|x| sg.canonical(x)).collect();
        let width = elems.iter().map(|x| x.len().div_ceil(k)).max().unwrap_or(0).max(1);
        let choices: Vec<Vec<Vec<BigInt>>> = elems.iter().map(|x| sg.blocks(x, width)).collect::<BTreeSet<_>>().into_iter().collect();
        let zero_block = vec![BigInt::zero(); k];
        let add_block = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
            let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            sg.base.reduce(&s)
        };

        type Carry = Vec<Vec<BigInt>>;
        let start: Carry = vec![zero_block.clone(); width - 1];
        let mut states: BTreeMap<BTreeSet<Carry>, BigInt> = BTreeMap::new();
        states.insert(BTreeSet::from([start]), BigInt::one());
        let mut values = Vec::with_capacity(max_n);
        for _ in 0..max_n {
            let mut next: BTreeMap<BTreeSet<Carry>, BigInt> = BTreeMap::new();
            for (set, count) in &states {
                let mut by_output: BTreeMap<Vec<BigInt>, BTreeSet<Carry>> = BTreeMap::new();
                for carry in set {
                    for f in &choices {
                        let head = carry.first().unwrap_or(&zero_block);
                        let out = add_block(head, &f[0]);
                        let new_carry: Carry = (0..width - 1)
                            .map(|j| match carry.get(j + 1) {
                                Some(c) => add_block(c, &f[j + 1]),
                                None => f[j + 1].clone(),
                            })
                            .collect();
                        by_output.entry(out).or_default().insert(new_carry);
                    }
                }
                for (_, s) in by_output {
                    *next.entry(s).or_insert_with(BigInt::zero) += count;
                }
                if next.len() > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
            }
            states = next;
            // every pending carry flushes to a distinct suffix
            let total: BigInt = states.iter().map(|(s, c)| c * BigInt::from(s.len())).sum();
            values.push(total);
        }
        Ok(TauSequence { values, requested: max_n, stopped_by_budget: None })
    }

    pub fn growth_verdict(&self, f: &ElementSet, max_n: usize, budget: usize) -> Result<GrowthVerdict> {
        empirical_verdict(&self.tau_sequence(f, max_n, budget)?)
    }
}
