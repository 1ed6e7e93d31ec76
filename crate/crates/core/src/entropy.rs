//! Exact algebraic entropy.
//!
//! For a rational matrix with monic characteristic polynomial `p` and `s` the
//! least common multiple of its coefficient denominators,
//! `h = log s + sum_{|λ| > 1} log |λ|`. Zero eigenvalues contribute nothing,
//! so singular matrices are accepted.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::Endo;
use crate::mahler::{ln_big, root_excess, Interval};
use crate::poly::cyclotomic_split;
use crate::ratmat::RatMatrix;

pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyValue {
    /// Denominator lcm of the characteristic polynomial.
    pub s: BigInt,
    /// Enclosure of `sum_{|λ| > 1} log |λ|`.
    pub mahler: Interval,
    /// Set only from the algebraic certificate: `s = 1` and every nonzero
    /// eigenvalue is a root of unity.
    pub exact_zero: bool,
}

impl EntropyValue {
    pub fn zero() -> Self {
        EntropyValue { s: BigInt::one(), mahler: Interval::ZERO, exact_zero: true }
    }

    pub fn log_s(&self) -> f64 {
        ln_big(&self.s)
    }

    /// Enclosure of the entropy in nats.
    pub fn interval(&self) -> Interval {
        self.mahler.add(&Interval::point(self.log_s()))
    }

    pub fn nats(&self) -> f64 {
        if self.exact_zero {
            0.0
        } else {
            self.interval().mid()
        }
    }

    pub fn bits(&self) -> f64 {
        self.nats() / std::f64::consts::LN_2
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.exact_zero
    }

    /// Sum of two entropies; used for block decompositions.
    pub fn plus(&self, other: &EntropyValue) -> EntropyValue {
        EntropyValue {
            s: &self.s * &other.s,
            mahler: self.mahler.add(&other.mahler),
            exact_zero: self.exact_zero && other.exact_zero,
        }
    }
}

impl Serialize for EntropyValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("EntropyValue", 5)?;
        match self.s.to_u64() {
            Some(v) => st.serialize_field("s", &v)?,
            None => st.serialize_field("s", &self.s.to_string())?,
        }
        st.serialize_field("mahler_lo", &self.mahler.lo)?;
        st.serialize_field("mahler_hi", &self.mahler.hi)?;
        st.serialize_field("exact_zero", &self.exact_zero)?;
        st.serialize_field("nats", &self.nats())?;
        st.end()
    }
}

fn check_epsilon(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::Invalid(format!("epsilon must be positive, got {eps}")));
    }
    Ok(())
}

/// Entropy of the linear flow `x -> A x` on `Q^n`.
pub fn yuzvinski_entropy(a: &RatMatrix, eps: f64) -> Result<EntropyValue> {
    check_epsilon(eps)?;
    let p = a.char_poly();
    let (s, sp) = p.clear_denominators();
    let exact_zero = s.is_one() && cyclotomic_split(&sp)?.rest.degree() == 0;
    if exact_zero {
        return Ok(EntropyValue { s, mahler: Interval::ZERO, exact_zero });
    }
    let mahler = root_excess(&sp, eps)?;
    Ok(EntropyValue { s, mahler, exact_zero })
}

/// Algebraic entropy of `φ` on its finitely generated group: the torsion
/// part is finite and contributes nothing, so this is the entropy of the
/// induced integer matrix on `G / t(G)`.
pub fn algebraic_entropy(phi: &Endo, eps: f64) -> Result<EntropyValue> {
    check_epsilon(eps)?;
    let free = phi.free_part();
    if free.rows() == 0 {
        return Ok(EntropyValue::zero());
    }
    yuzvinski_entropy(&RatMatrix::from_int(&free)?, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::matrix::IntMatrix;

    fn int(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int(&IntMatrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn examples() {
        let e = yuzvinski_entropy(&int(&[&[1, 0], &[1, 1]]), DEFAULT_EPSILON).unwrap();
        assert!(e.exact_zero);
        assert_eq!(e.nats(), 0.0);

        let half = RatMatrix::from_fractions(&[[(1, 2)]]).unwrap();
        let e = yuzvinski_entropy(&half, DEFAULT_EPSILON).unwrap();
        assert_eq!(e.s, BigInt::from(2));
        assert!((e.nats() - 2f64.ln()).abs() < 1e-12);

        let e = yuzvinski_entropy(&int(&[&[2]]), DEFAULT_EPSILON).unwrap();
        assert_eq!(e.s, BigInt::one());
        assert!((e.nats() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn singular_and_triangular() {
        let e = yuzvinski_entropy(&int(&[&[0, 0], &[0, 0]]), DEFAULT_EPSILON).unwrap();
        assert!(e.exact_zero);
        let e = yuzvinski_entropy(&int(&[&[2, 0, 5], &[0, 3, -1], &[0, 0, 1]]), DEFAULT_EPSILON).unwrap();
        assert!((e.nats() - 6f64.ln()).abs() < 1e-9);
        let e = yuzvinski_entropy(&int(&[&[2, 1], &[4, 2]]), DEFAULT_EPSILON).unwrap();
        assert!((e.nats() - 4f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn finite_groups_and_mixed() {
        let g = Group::from_invariants(&[6, 4]);
        let phi = Endo::from_rows(&g, &[[5, 0], [0, 3]]).unwrap();
        assert!(algebraic_entropy(&phi, DEFAULT_EPSILON).unwrap().exact_zero);

        let g = Group::from_invariants(&[0, 0, 4]);
        let phi = Endo::from_rows(&g, &[[0, 1, 0], [1, 1, 0], [1, 0, 3]]).unwrap();
        let e = algebraic_entropy(&phi, DEFAULT_EPSILON).unwrap();
        assert!((e.nats() - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-9);
    }

    #[test]
    fn serializes_with_fixed_keys() {
        let e = yuzvinski_entropy(&int(&[&[2]]), DEFAULT_EPSILON).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["exact_zero", "mahler_hi", "mahler_lo", "nats", "s"]);
        assert_eq!(v["s"], 1);
    }
}
