use thiserror::Error;

/// Library-wide error type. Numerical failures are always certified: a
/// tracking or root-finding routine either returns labeled data that passed
/// its own guards, or one of these errors — never a silently wrong answer.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree of divisor candidate {d} does not divide deg f = {m}")]
    BadDivisor { d: usize, m: usize },

    #[error("cycle weights must sum to zero (got {0})")]
    NonZeroCycleSum(i64),

    #[error("permutation is not a single {0}-cycle")]
    NotFullCycle(usize),

    #[error("root finding stalled after {sweeps} sweeps (residual {residual:.3e}); polynomial is ill-conditioned")]
    RootFindingStalled { sweeps: u32, residual: f64 },

    #[error("path tracking failed: step size underflow near t = {re}+{im}i (min pairwise root distance {min_dist:.3e})")]
    TrackingStepUnderflow { re: f64, im: f64, min_dist: f64 },

    #[error("root matching ambiguous during tracking near t = {re}+{im}i")]
    TrackingAmbiguous { re: f64, im: f64 },

    #[error("monodromy invariant violated: {0}")]
    MonodromyInvariant(String),

    #[error("conjugacy class size exceeded cap of {cap} permutations")]
    ConjugacyCapExceeded { cap: usize },

    #[error("Puiseux matching residual {residual:.3e} above tolerance; increase the truncation order")]
    PuiseuxMatching { residual: f64 },

    #[error("inconsistent evidence: {0}")]
    InconsistentEvidence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
