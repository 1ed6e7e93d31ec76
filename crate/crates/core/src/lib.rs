//! Algebraic flows on finitely generated abelian groups.
//!
//! A flow is a pair `(G, φ)` with `G = Z^n / L` finitely presented and `φ`
//! an endomorphism given by an integer matrix. The crate computes trajectory
//! growth, exact algebraic entropy from characteristic polynomials, the
//! chains of (generalized) quasi-periodic subgroups and the Pinsker subgroup,
//! and the corresponding statements about the dual compact flow.

pub mod duality;
pub mod entropy;
pub mod error;
pub mod group;
pub mod lattice;
pub mod mahler;
pub mod matrix;
pub mod pinsker;
pub mod poly;
pub mod ratmat;
pub mod report;
pub mod trajectory;

pub use duality::{dual_report, DualReport};
pub use entropy::{algebraic_entropy, yuzvinski_entropy, EntropyValue, DEFAULT_EPSILON};
pub use error::{Error, Result};
pub use group::{Element, ElementSet, Endo, Group, Projection, Restriction, Subgroup};
pub use lattice::{hnf, snf, Lattice, Smith};
pub use mahler::{mahler_measure, Interval};
pub use matrix::IntMatrix;
pub use pinsker::{
    has_completely_positive_entropy, is_algebraically_ergodic, p_chain, periodic_subgroup, phi_torsion_subgroup,
    pinsker_subgroup, q_chain, q_infinity, quasiperiodic_subgroup, ChainKind, ChainReport,
};
pub use poly::{cyclotomic, cyclotomic_split, denominator_lcm, IntPoly, RatPoly};
pub use ratmat::{char_poly, RatMatrix};
pub use trajectory::{
    bernoulli, entropy_estimate, growth_classify, n_trajectory, tau, tau_prefix, tau_sequence, trajectory_subgroup,
    GrowthKind, GrowthMode, GrowthOptions, GrowthVerdict, ShiftGroup, TauSequence,
};
