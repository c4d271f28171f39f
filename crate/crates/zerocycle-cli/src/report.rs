//! JSON report objects. All output is versioned under `schema_version: 1`
//! and deterministic: rationals render as strings, permutations as
//! 1-indexed image arrays, and every collection has a fixed order.

use num_complex::Complex64;
use serde::Serialize;
use zerocycle::abelian::{
    CertificateStatus, CertificateTerm, ProjectionKind, TermProof, VanishingEvidence,
};
use zerocycle::cycles::CycleClassification;
use zerocycle::monodromy::{BlockSystem, MonodromyData};
use zerocycle::poly::Rat;
use zerocycle::ExactPoly;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct ComplexRepr {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexRepr {
    fn from(z: Complex64) -> Self {
        ComplexRepr { re: z.re, im: z.im }
    }
}

pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

pub fn poly_coeffs(p: &ExactPoly) -> Vec<String> {
    p.coeffs().iter().map(rat_string).collect()
}

#[derive(Serialize)]
pub struct PolyRepr {
    pub display: String,
    /// Coefficients ascending by degree, as exact rational strings.
    pub coeffs: Vec<String>,
}

impl From<&ExactPoly> for PolyRepr {
    fn from(p: &ExactPoly) -> Self {
        PolyRepr { display: p.to_string(), coeffs: poly_coeffs(p) }
    }
}

#[derive(Serialize)]
pub struct RootsReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub degree: isize,
    pub roots: Vec<RootEntry>,
    pub residual_bound: f64,
}

#[derive(Serialize)]
pub struct RootEntry {
    pub re: f64,
    pub im: f64,
    pub multiplicity: u32,
}

#[derive(Serialize)]
pub struct MonodromyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub m: usize,
    pub basepoint: ComplexRepr,
    pub critical_values: Vec<ComplexRepr>,
    /// Loop permutations, 1-indexed image arrays, in composition order.
    pub generators: Vec<GeneratorEntry>,
    pub tau_infinity: Vec<usize>,
    pub transitive: bool,
}

#[derive(Serialize)]
pub struct GeneratorEntry {
    pub critical_value: ComplexRepr,
    pub permutation: Vec<usize>,
}

impl MonodromyReport {
    pub fn build(data: &MonodromyData) -> Self {
        MonodromyReport {
            schema_version: SCHEMA_VERSION,
            command: "monodromy",
            m: data.m,
            basepoint: data.basepoint.into(),
            critical_values: data.critical_values.iter().map(|&c| c.into()).collect(),
            generators: data
                .critical_values
                .iter()
                .zip(&data.generators)
                .map(|(&cv, g)| GeneratorEntry {
                    critical_value: cv.into(),
                    permutation: g.images_one_indexed(),
                })
                .collect(),
            tau_infinity: data.tau_infinity.images_one_indexed(),
            transitive: true,
        }
    }
}

#[derive(Serialize)]
pub struct BlocksReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub m: usize,
    pub systems: Vec<BlockSystemEntry>,
}

#[derive(Serialize)]
pub struct BlockSystemEntry {
    pub block_size: usize,
    /// Blocks as 1-indexed label lists.
    pub blocks: Vec<Vec<usize>>,
    pub decomposition: Option<DecompositionRepr>,
}

#[derive(Serialize)]
pub struct DecompositionRepr {
    pub inner: PolyRepr,
    pub outer: PolyRepr,
}

pub fn block_entry(bs: &BlockSystem, dec: Option<&zerocycle::poly::Decomposition>) -> BlockSystemEntry {
    BlockSystemEntry {
        block_size: bs.block_size,
        blocks: bs
            .blocks
            .iter()
            .map(|b| b.iter().map(|&p| p + 1).collect())
            .collect(),
        decomposition: dec.map(|d| DecompositionRepr {
            inner: (&d.inner).into(),
            outer: (&d.outer).into(),
        }),
    }
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub m: usize,
    pub cycle: Vec<i64>,
    pub trivial: bool,
    pub balanced: bool,
    pub totally_unbalanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unbalanced_witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking: Option<BlockingRepr>,
}

#[derive(Serialize)]
pub struct BlockingRepr {
    pub inner_degree: usize,
    pub inner: PolyRepr,
    pub outer: PolyRepr,
    pub projected_cycle: Vec<i64>,
}

impl ClassifyReport {
    pub fn build(m: usize, weights: &[i64], cls: &CycleClassification) -> Self {
        ClassifyReport {
            schema_version: SCHEMA_VERSION,
            command: "classify",
            m,
            cycle: weights.to_vec(),
            trivial: cls.trivial,
            balanced: cls.balanced,
            totally_unbalanced: cls.totally_unbalanced,
            unbalanced_witness: cls
                .unbalanced_witness
                .as_ref()
                .map(|p| p.images_one_indexed()),
            blocking: cls.blocking.as_ref().map(|b| BlockingRepr {
                inner_degree: b.inner_degree,
                inner: (&b.decomposition.inner).into(),
                outer: (&b.decomposition.outer).into(),
                projected_cycle: b.projected.weights().to_vec(),
            }),
        }
    }
}

#[derive(Serialize)]
pub struct EvidenceRepr {
    pub passed: bool,
    pub sample_count: usize,
    pub worst_sample_residual: f64,
    pub puiseux_ok: bool,
    pub puiseux_order: i64,
    pub puiseux_worst: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_frequency: Option<i64>,
}

impl From<&VanishingEvidence> for EvidenceRepr {
    fn from(e: &VanishingEvidence) -> Self {
        EvidenceRepr {
            passed: e.passed,
            sample_count: e.sample_count,
            worst_sample_residual: e.worst_sample_residual,
            puiseux_ok: e.puiseux_ok,
            puiseux_order: e.puiseux_order,
            puiseux_worst: e.puiseux_worst,
            failing_frequency: e.failing_frequency,
        }
    }
}

#[derive(Serialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub status: String,
    pub terms: Vec<TermRepr>,
    pub classification: ClassifySummary,
    pub evidence: EvidenceRepr,
}

#[derive(Serialize)]
pub struct ClassifySummary {
    pub trivial: bool,
    pub balanced: bool,
    pub totally_unbalanced: bool,
}

#[derive(Serialize)]
pub struct TermRepr {
    /// h_k, coefficients ascending.
    pub h: Vec<String>,
    /// g_k, coefficients ascending.
    pub g: Vec<String>,
    pub projected_cycle: Vec<i64>,
    pub projection_kind: String,
    pub proof: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub_evidence: Option<EvidenceRepr>,
}

pub fn status_string(status: CertificateStatus) -> String {
    match status {
        CertificateStatus::VanishesTrivial => "Vanishes-Trivial",
        CertificateStatus::VanishesWithResidualBalanced => "Vanishes-With-Residual-Balanced",
        CertificateStatus::DoesNotVanish => "Does-Not-Vanish",
        CertificateStatus::UndeterminedBalancedResidual => "Undetermined-Balanced-Residual",
    }
    .to_string()
}

pub fn term_repr(term: &CertificateTerm) -> TermRepr {
    let (proof, sub) = match &term.proof {
        TermProof::TrivialProjection => ("trivial-projection".to_string(), None),
        TermProof::PowerRule => ("exact-power-rule".to_string(), None),
        TermProof::Numeric(e) => ("numeric-evidence".to_string(), Some(e.into())),
    };
    TermRepr {
        h: poly_coeffs(&term.inner),
        g: poly_coeffs(&term.g_part),
        projected_cycle: term.projected.weights().to_vec(),
        projection_kind: match term.kind {
            ProjectionKind::Trivial => "trivial",
            ProjectionKind::Balanced => "balanced",
            ProjectionKind::Unbalanced => "unbalanced",
        }
        .to_string(),
        proof,
        sub_evidence: sub,
    }
}

#[derive(Serialize)]
pub struct ZmReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub m: usize,
    pub cycle: Vec<i64>,
    pub allowed_residues: Vec<usize>,
    pub forbidden_residues: Vec<usize>,
}

#[derive(Serialize)]
pub struct MomentReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub n0: usize,
    pub n1: usize,
    pub cycle: Vec<i64>,
    pub totally_unbalanced: bool,
    /// Exact moments for k = 1..K, as rational strings.
    pub moments: Vec<String>,
    pub moments_all_zero: bool,
    pub cycle_test: EvidenceRepr,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct LaurentMomentReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub m: usize,
    pub cycle: Vec<i64>,
    /// Residues of f^k g' at 0 for k = 0..K−1; each contour moment is 2πi
    /// times the entry.
    pub moments_over_2pi_i: Vec<String>,
    pub moments_all_zero: bool,
    pub cycle_test_passed: bool,
    pub cycle_test_worst_residual: f64,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct HyperellipticReport {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_cycle: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_cycle: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_residuals: Option<Vec<f64>>,
}

#[derive(Serialize)]
pub struct SlowFastReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub gbar_numerator: PolyRepr,
    pub gbar_denominator: PolyRepr,
    pub samples: Vec<SlowFastSample>,
}

#[derive(Serialize)]
pub struct SlowFastSample {
    pub t: f64,
    pub integral: f64,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}
