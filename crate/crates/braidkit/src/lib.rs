//! Computations in braid groups `B_n`: a complete word-problem engine based on
//! left-greedy normal forms, the action on isotopy classes of multicurves in the
//! punctured disk, labeled-multicurve classification, totally symmetric sets with
//! conjugator certificates, reduction systems of twist-form braids, and the
//! cabling decomposition of multicurve stabilizers.
//!
//! Entry points:
//! - [`BraidWord`] is the universal currency: a word in the Artin generators.
//! - [`normal_form`]/[`equal`] decide equality in `B_n`.
//! - [`CurveClass`] models isotopy classes of multicurves with an exact braid action.
//! - [`LabeledTree`] models labeled multicurves up to the braid action.
//! - [`TotallySymmetricSetCert`] packages commuting sets with conjugator certificates.
//! - The `examples/` directory has one runnable example per subsystem.

pub mod cabling;
pub mod cli;
pub mod crs;
pub mod curves;
pub mod garside;
pub mod hom;
pub mod multicurve;
pub mod report;
pub mod tss;
pub mod word;

pub use cabling::{CablePattern, CabledBraid};
pub use crs::{TwistFactorKind, TwistForm};
pub use curves::{act, class_of_round, dehn_twist, disjoint, half_twist, is_chain};
pub use curves::{CurveClass, PushedCurve, RoundCurve};
pub use garside::{braid_relation, commutes, conjugates_witness, equal, is_trivial, normal_form};
pub use garside::NormalForm;
pub use hom::{Automorphism, CommutatorMap, EquivalenceWitness, GeneratorMap};
pub use multicurve::{enumerate_totally_symmetric, Classification, LabeledTree};
pub use tss::{ExponentMatrix, TotallySymmetricSetCert};
pub use word::{BraidWord, Permutation};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("strand count {0} out of range (need {1} <= n <= {2})")]
    StrandsOutOfRange(usize, usize, usize),
    #[error("letter {0} invalid for {1} strands")]
    InvalidLetter(i32, usize),
    #[error("invalid curve interval [{0}, {1}] on {2} strands")]
    InvalidCurve(usize, usize, usize),
    #[error("curve surrounds {0} punctures, expected exactly 2")]
    NotTwoPunctured(usize),
    #[error("curve classes must be distinct")]
    ClassesEqual,
    #[error("invalid labeled multicurve: {0}")]
    InvalidMulticurve(String),
    #[error("label universe size {0} out of range (max {1})")]
    LabelUniverseTooLarge(usize, usize),
    #[error("label set must be a nonempty subset of the universe")]
    BadLabel,
    #[error("every label must be a proper subset to take complements")]
    LabelNotProper,
    #[error("invalid twist form: {0}")]
    InvalidTwistForm(String),
    #[error("invalid cable pattern: {0}")]
    InvalidPattern(String),
    #[error("exterior braid does not preserve strand labels")]
    ExteriorLabelMismatch,
    #[error("word does not stabilize the block multicurve")]
    DoesNotStabilize,
    #[error("matrix has duplicate rows")]
    DuplicateRows,
    #[error("matrix size {0} too large for brute force (max {1})")]
    MatrixTooLarge(usize, usize),
    #[error("conjugator search exhausted depth {0} without a certificate")]
    CertSearchFailed(usize),
    #[error("translate word must commute with every certificate")]
    TranslateNotCentral,
    #[error("derived difference needs at least two elements")]
    DiffTooSmall,
    #[error("transvection exponent must be zero on commutator sources")]
    TransvectionOnCommutator,
    #[error("generator map failed relation check")]
    InvalidHom,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
