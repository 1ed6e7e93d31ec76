//! Periodic and quasi-periodic points, the chains `P_n ⊆ P_{n+1}` and
//! `Q_n ⊆ Q_{n+1}`, and the Pinsker subgroup.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{lcm_all, Endo, Subgroup};
use crate::poly::cyclotomic_split;
use crate::ratmat::int_char_poly;

pub const DEFAULT_PROBE_BUDGET: usize = 10_000;

/// How `P_1 = ker(φ^N - 1)` was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodCertificate {
    /// lcm of the `d` with `Φ_d` dividing the characteristic polynomial of
    /// the action on `G / t(G)`.
    pub k_free: u64,
    /// Period of `φ^k` restricted to `t(G)`; absent when the probe budget ran out.
    pub k_tor: Option<u64>,
    pub torsion_exponent: u64,
    /// The exponent `N` actually used.
    pub exponent: u64,
    pub certified: bool,
}

/// `P_1` with its certificate.
#[derive(Debug, Clone)]
pub struct Periodic {
    pub subgroup: Subgroup,
    pub certificate: PeriodCertificate,
}

fn k_free(phi: &Endo) -> Result<u64> {
    let b = phi.free_part();
    if b.rows() == 0 {
        return Ok(1);
    }
    let split = cyclotomic_split(&int_char_poly(&b))?;
    Ok(lcm_all(split.factors.iter().map(|&(d, _)| d)))
}

fn checked_exponent(parts: &[u64]) -> Result<u64> {
    parts
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Unsupported("period exponent exceeds 64 bits".into()))
}

/// `P_1(G, φ)`, the points with `φ^k(x) = x` for some `k >= 1`.
///
/// On `P_1` the map has finite order. Its action on `P_1 / t(P_1)` is a
/// restriction of the free part, so `φ^{K_free}` is the identity there;
/// `φ^{K_tor}` is the identity on `t(P_1)`; and a map that is the identity
/// on both has order dividing the torsion exponent `e`. Hence
/// `P_1 = ker(φ^N - 1)` with `N = lcm(K_free, K_tor) * e`.
///
/// If the torsion period is not found within `probe_budget` powers, the
/// exponents `K_free * e * j` are probed until two consecutive kernels
/// agree and the result is marked uncertified.
pub fn periodic_subgroup_with(phi: &Endo, probe_budget: usize) -> Result<Periodic> {
    let g = phi.group();
    let kf = k_free(phi)?;
    let e = g
        .torsion_exponent()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("torsion exponent exceeds 64 bits".into()))?;
    match phi.torsion_power_cycle(probe_budget) {
        Some((_, period)) => {
            let n = checked_exponent(&[lcm_all([kf, period]), e])?;
            Ok(Periodic {
                subgroup: phi.power_minus_identity(n).kernel(),
                certificate: PeriodCertificate { k_free: kf, k_tor: Some(period), torsion_exponent: e, exponent: n, certified: true },
            })
        }
        None => {
            let base = checked_exponent(&[kf, e])?;
            let mut j = 1u64;
            let mut current = phi.power_minus_identity(base).kernel();
            loop {
                let n = checked_exponent(&[base, j + 1])?;
                let next = phi.power_minus_identity(n).kernel();
                if next == current || j as usize >= probe_budget {
                    let exponent = checked_exponent(&[base, j])?;
                    return Ok(Periodic {
                        subgroup: current,
                        certificate: PeriodCertificate { k_free: kf, k_tor: None, torsion_exponent: e, exponent, certified: false },
                    });
                }
                j += 1;
                current = current.join(&next)?;
            }
        }
    }
}

pub fn periodic_subgroup(phi: &Endo) -> Result<Subgroup> {
    Ok(periodic_subgroup_with(phi, DEFAULT_PROBE_BUDGET)?.subgroup)
}

/// `∪_n φ^{-n}(H)` for a φ-invariant `H`; the increasing chain stops exactly.
fn saturate_preimages(phi: &Endo, h: Subgroup) -> Result<Subgroup> {
    let mut h = h;
    loop {
        let next = phi.preimage(&h)?;
        if next == h {
            return Ok(h);
        }
        h = next;
    }
}

/// `Q_1(G, φ) = ∪_n φ^{-n}(P_1)`, with the certification flag of `P_1`.
pub fn quasiperiodic_subgroup_with(phi: &Endo, probe_budget: usize) -> Result<(Subgroup, bool)> {
    let p = periodic_subgroup_with(phi, probe_budget)?;
    Ok((saturate_preimages(phi, p.subgroup)?, p.certificate.certified))
}

pub fn quasiperiodic_subgroup(phi: &Endo) -> Result<Subgroup> {
    Ok(quasiperiodic_subgroup_with(phi, DEFAULT_PROBE_BUDGET)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainKind {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "Q")]
    Q,
}

/// The distinct terms `X_0 = 0 ⊂ X_1 ⊂ ... ⊂ X_s` of a chain; `X_{s+1} = X_s`.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub kind: ChainKind,
    pub terms: Vec<Subgroup>,
    pub stabilization_index: usize,
    pub certified: bool,
}

impl ChainReport {
    pub fn last(&self) -> &Subgroup {
        self.terms.last().expect("a chain has at least the zero term")
    }
}

fn chain(phi: &Endo, kind: ChainKind, probe_budget: usize) -> Result<ChainReport> {
    let g = phi.group();
    let mut terms = vec![g.trivial_subgroup()];
    let mut certified = true;
    loop {
        let current = terms.last().unwrap();
        let (bar, proj) = phi.induce(current)?;
        let (first, ok) = match kind {
            ChainKind::Q => quasiperiodic_subgroup_with(&bar, probe_budget)?,
            ChainKind::P => {
                let p = periodic_subgroup_with(&bar, probe_budget)?;
                (p.subgroup, p.certificate.certified)
            }
        };
        certified &= ok;
        let next = proj.pull_back(&first)?;
        if next == *current {
            break;
        }
        terms.push(next);
    }
    let stabilization_index = terms.len() - 1;
    Ok(ChainReport { kind, terms, stabilization_index, certified })
}

pub fn q_chain_with(phi: &Endo, probe_budget: usize) -> Result<ChainReport> {
    chain(phi, ChainKind::Q, probe_budget)
}

pub fn p_chain_with(phi: &Endo, probe_budget: usize) -> Result<ChainReport> {
    chain(phi, ChainKind::P, probe_budget)
}

pub fn q_chain(phi: &Endo) -> Result<ChainReport> {
    q_chain_with(phi, DEFAULT_PROBE_BUDGET)
}

pub fn p_chain(phi: &Endo) -> Result<ChainReport> {
    p_chain_with(phi, DEFAULT_PROBE_BUDGET)
}

/// `𝔔(G, φ)`, the union of the `Q_n`.
pub fn q_infinity(phi: &Endo) -> Result<Subgroup> {
    Ok(q_chain(phi)?.last().clone())
}

/// The Pinsker subgroup, the largest invariant subgroup on which `φ` has
/// zero entropy. It coincides with `𝔔(G, φ)`.
pub fn pinsker_subgroup(phi: &Endo) -> Result<Subgroup> {
    q_infinity(phi)
}

/// `t_φ(G) = t(G) ∩ Q_1(G, φ)`.
pub fn phi_torsion_subgroup(phi: &Endo) -> Result<Subgroup> {
    phi.group().torsion_subgroup().intersect(&quasiperiodic_subgroup(phi)?)
}

/// No nonzero quasi-periodic point. Equivalent to `𝔔(G, φ) = 0`.
pub fn is_algebraically_ergodic(phi: &Endo) -> Result<bool> {
    Ok(quasiperiodic_subgroup(phi)?.is_trivial())
}

/// Every nonzero invariant subgroup carries positive entropy, i.e. the Pinsker
/// subgroup vanishes; this happens exactly when `Q_1 = 0`.
pub fn has_completely_positive_entropy(phi: &Endo) -> Result<bool> {
    is_algebraically_ergodic(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    #[test]
    fn periodic_examples() {
        let z2 = Group::free(2);
        let shear = Endo::from_rows(&z2, &[[1, 1], [0, 1]]).unwrap();
        assert_eq!(periodic_subgroup(&shear).unwrap(), z2.subgroup_i64(&[[1, 0]]).unwrap());
        let rot = Endo::from_rows(&z2, &[[0, -1], [1, 0]]).unwrap();
        let p = periodic_subgroup_with(&rot, 100).unwrap();
        assert!(p.subgroup.is_whole());
        assert_eq!(p.certificate.exponent, 4);
        let cat = Endo::from_rows(&z2, &[[2, 1], [1, 1]]).unwrap();
        assert!(periodic_subgroup(&cat).unwrap().is_trivial());
    }

    #[test]
    fn quasiperiodic_examples() {
        let z2 = Group::free(2);
        let nil = Endo::from_rows(&z2, &[[0, 0], [1, 0]]).unwrap();
        assert!(quasiperiodic_subgroup(&nil).unwrap().is_whole());
        let a = Endo::from_rows(&z2, &[[2, 0], [0, 0]]).unwrap();
        assert_eq!(quasiperiodic_subgroup(&a).unwrap(), z2.subgroup_i64(&[[0, 1]]).unwrap());
    }

    #[test]
    fn mixed_periods_need_the_torsion_exponent() {
        // Z + Z(2): (x, t) -> (x, t + x). Period 2 on the quotient and trivial
        // on the torsion, yet (1, 0) has period 2 only after two steps.
        let g = Group::from_invariants(&[0, 2]);
        let phi = Endo::from_rows(&g, &[[1, 0], [1, 1]]).unwrap();
        let p = periodic_subgroup_with(&phi, 100).unwrap();
        assert!(p.certificate.certified);
        assert!(p.subgroup.is_whole());
        assert!(!phi.power_minus_identity(1).kernel().is_whole());
    }

    #[test]
    fn shear_chain() {
        let z2 = Group::free(2);
        let shear = Endo::from_rows(&z2, &[[1, 1], [0, 1]]).unwrap();
        let c = q_chain(&shear).unwrap();
        assert_eq!(c.stabilization_index, 2);
        assert!(c.terms[0].is_trivial());
        assert_eq!(c.terms[1], z2.subgroup_i64(&[[1, 0]]).unwrap());
        assert!(c.terms[2].is_whole());
        assert!(c.certified);
        let transposed = Endo::from_rows(&z2, &[[1, 0], [1, 1]]).unwrap();
        let c = q_chain(&transposed).unwrap();
        assert_eq!(c.terms[1], z2.subgroup_i64(&[[0, 1]]).unwrap());
    }

    #[test]
    fn hyperbolic_chain_is_trivial() {
        let z2 = Group::free(2);
        let cat = Endo::from_rows(&z2, &[[2, 1], [1, 1]]).unwrap();
        let c = q_chain(&cat).unwrap();
        assert_eq!(c.stabilization_index, 0);
        assert!(is_algebraically_ergodic(&cat).unwrap());
        assert!(has_completely_positive_entropy(&cat).unwrap());
    }

    #[test]
    fn torsion_part() {
        let g = Group::from_invariants(&[0, 4]);
        let phi = Endo::from_rows(&g, &[[2, 0], [0, 3]]).unwrap();
        assert_eq!(phi_torsion_subgroup(&phi).unwrap(), g.torsion_subgroup());
        let f = Group::from_invariants(&[6]);
        let z = Endo::zero(&f);
        assert!(phi_torsion_subgroup(&z).unwrap().is_whole());
        assert!(!is_algebraically_ergodic(&z).unwrap());
        assert!(!is_algebraically_ergodic(&Endo::identity(&Group::free(1))).unwrap());
    }

    #[test]
    fn fibonacci_plus_identity() {
        let g = Group::free(4);
        let phi = Endo::from_rows(&g, &[[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(pinsker_subgroup(&phi).unwrap(), g.subgroup_i64(&[[0, 0, 1, 0], [0, 0, 0, 1]]).unwrap());
    }
}
