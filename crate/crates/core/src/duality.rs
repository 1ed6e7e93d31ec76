//! Statements about the dual compact flow, computed on the discrete side.
//!
//! For `φ` on a discrete group `G`, the dual `φ^` on the compact group
//! `K = G^` has topological entropy `h(φ)`. The topological Pinsker factor
//! of `φ^` is dual to `P(G, φ)`, and when `φ` is surjective the greatest
//! domain of ergodicity `E(K, φ^)` is the annihilator of `P(G, φ)`, whose
//! dual is the flow induced on `G / P(G, φ)`.

use serde::Serialize;

use crate::entropy::{algebraic_entropy, EntropyValue};
use crate::error::Result;
use crate::group::Endo;
use crate::pinsker::{periodic_subgroup_with, q_chain_with, quasiperiodic_subgroup_with};
use crate::report::{FlowReport, SubgroupReport};

/// The four conditions that coincide for automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErgodicityWitnesses {
    pub periodic_trivial: bool,
    pub quasiperiodic_trivial: bool,
    pub pinsker_trivial: bool,
    pub completely_positive_entropy: bool,
}

impl ErgodicityWitnesses {
    pub fn agree(&self) -> bool {
        let v = self.periodic_trivial;
        self.quasiperiodic_trivial == v && self.pinsker_trivial == v && self.completely_positive_entropy == v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualReport {
    pub topological_entropy: EntropyValue,
    /// Present only when `φ` is an automorphism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ergodic: Option<bool>,
    pub witnesses: ErgodicityWitnesses,
    /// `P(G, φ)` with the restricted endomorphism; dual of the Pinsker factor.
    pub pinsker_subgroup: SubgroupReport,
    pub pinsker_factor: FlowReport,
    /// `G / P(G, φ)` with the induced endomorphism; present when `φ` is surjective.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ergodicity_domain: Option<FlowReport>,
    /// Whether the induced map on `G / P(G, φ)` is bijective.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain_is_automorphism: Option<bool>,
    pub automorphism: bool,
    pub surjective: bool,
    pub certified: bool,
    pub hypothesis_notes: Vec<String>,
}

pub fn dual_report(phi: &Endo, eps: f64, probe_budget: usize) -> Result<DualReport> {
    let entropy = algebraic_entropy(phi, eps)?;
    let surjective = phi.is_surjective();
    // a surjective endomorphism of a finitely generated abelian group is injective
    let automorphism = surjective && phi.is_injective();

    let p1 = periodic_subgroup_with(phi, probe_budget)?;
    let (q1, q_ok) = quasiperiodic_subgroup_with(phi, probe_budget)?;
    let chain = q_chain_with(phi, probe_budget)?;
    let pinsker = chain.last().clone();
    let witnesses = ErgodicityWitnesses {
        periodic_trivial: p1.subgroup.is_trivial(),
        quasiperiodic_trivial: q1.is_trivial(),
        pinsker_trivial: pinsker.is_trivial(),
        completely_positive_entropy: q1.is_trivial(),
    };

    let mut notes = Vec::new();
    let ergodic = if automorphism {
        notes.push("φ is an automorphism: the dual flow is a topological automorphism and ergodicity is decided by P1 = 0".to_string());
        Some(witnesses.periodic_trivial)
    } else {
        notes.push("φ is not an automorphism: no ergodicity verdict".to_string());
        None
    };

    let restricted = phi.restrict(&pinsker)?;
    let (domain, domain_is_automorphism) = if surjective {
        let (bar, _) = phi.induce(&pinsker)?;
        let bij = bar.is_surjective() && bar.is_injective();
        notes.push("φ is surjective: the dual is injective and its greatest ergodicity domain is dual to G/P".to_string());
        (Some(FlowReport::new(&bar)), Some(bij))
    } else {
        notes.push("φ is not surjective: no ergodicity domain reported".to_string());
        (None, None)
    };

    Ok(DualReport {
        topological_entropy: entropy,
        ergodic,
        witnesses,
        pinsker_subgroup: SubgroupReport::new(&pinsker),
        pinsker_factor: FlowReport::new(&restricted.endo),
        ergodicity_domain: domain,
        domain_is_automorphism,
        automorphism,
        surjective,
        certified: p1.certificate.certified && q_ok && chain.certified,
        hypothesis_notes: notes,
    })
}
