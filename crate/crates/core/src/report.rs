//! Serializable views of groups, subgroups and chains.
//!
//! Integers are written as JSON numbers when they fit in 64 bits and as
//! decimal strings otherwise; both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::group::{Endo, Group, Subgroup};
use crate::matrix::IntMatrix;
use crate::pinsker::{ChainKind, ChainReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigNum(pub BigInt);

impl Serialize for BigNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct BigNumVisitor;

impl Visitor<'_> for BigNumVisitor {
    type Value = BigNum;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigNum, E> {
        Ok(BigNum(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigNum, E> {
        Ok(BigNum(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<BigNum, E> {
        if v.fract() == 0.0 && v.abs() < 9.007_199_254_740_992e15 {
            Ok(BigNum((v as i64).into()))
        } else {
            Err(E::custom(format!("expected an integer, got {v}")))
        }
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigNum, E> {
        v.trim().parse::<BigInt>().map(BigNum).map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for BigNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<BigNum, D::Error> {
        d.deserialize_any(BigNumVisitor)
    }
}

pub fn nums(v: &[BigInt]) -> Vec<BigNum> {
    v.iter().cloned().map(BigNum).collect()
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<BigNum>> {
    m.to_rows().iter().map(|r| nums(r)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub rank: usize,
    /// Relation matrix; its columns span the relation lattice.
    pub relations: Vec<Vec<BigNum>>,
    pub free_rank: usize,
    pub invariant_factors: Vec<BigNum>,
    pub description: String,
}

impl GroupReport {
    pub fn new(g: &Group) -> Self {
        GroupReport {
            rank: g.rank(),
            relations: matrix_rows(g.relations()),
            free_rank: g.free_rank(),
            invariant_factors: nums(&g.invariant_factors()),
            description: g.describe(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupReport {
    /// Canonical generator lifts (relations omitted).
    pub generators: Vec<Vec<BigNum>>,
    /// Hermite basis of generators together with relations.
    pub hnf_basis: Vec<Vec<BigNum>>,
    pub trivial: bool,
    pub whole: bool,
    /// Invariant factors of the quotient `G / H`.
    pub quotient: String,
    pub quotient_free_rank: usize,
    pub quotient_invariant_factors: Vec<BigNum>,
}

impl SubgroupReport {
    pub fn new(h: &Subgroup) -> Self {
        let (q, _) = h.group().quotient(h).expect("subgroup of its own group");
        SubgroupReport {
            generators: h.generators().iter().map(|g| nums(g)).collect(),
            hnf_basis: h.lattice().basis().iter().map(|b| nums(b)).collect(),
            trivial: h.is_trivial(),
            whole: h.is_whole(),
            quotient: q.describe(),
            quotient_free_rank: q.free_rank(),
            quotient_invariant_factors: nums(&q.invariant_factors()),
        }
    }
}

/// A group with an endomorphism acting on its generators.
#[derive(Debug, Clone, Serialize)]
pub struct FlowReport {
    pub group: GroupReport,
    pub endomorphism: Vec<Vec<BigNum>>,
}

impl FlowReport {
    pub fn new(phi: &Endo) -> Self {
        FlowReport { group: GroupReport::new(phi.group()), endomorphism: matrix_rows(phi.matrix()) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainJson {
    pub kind: ChainKind,
    pub stabilization_index: usize,
    pub certified: bool,
    pub terms: Vec<SubgroupReport>,
}

impl From<&ChainReport> for ChainJson {
    fn from(c: &ChainReport) -> Self {
        ChainJson {
            kind: c.kind,
            stabilization_index: c.stabilization_index,
            certified: c.certified,
            terms: c.terms.iter().map(SubgroupReport::new).collect(),
        }
    }
}

impl Serialize for ChainReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChainJson::from(self).serialize(s)
    }
}
