//! Zero-dimensional Abelian integrals Σ nᵢ g(zᵢ(t)), the displacement
//! function of the perturbation f + εg, the calibrated vanishing
//! semi-decision, and the inductive tangential-center solver with
//! composition certificates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycles::{
    is_balanced, is_totally_unbalanced, project_cycle, CycleClassification, ZeroCycle,
    DEFAULT_CAP,
};
use crate::monodromy::{
    critical_values, minimal_block_system, monodromy_data, track_path, BlockSystem,
    MonodromyData, PathSeg,
};
use crate::poly::{rat_to_f64, ExactPoly, Rat};
use crate::puiseux::{compose_solve, extract_psi_and_w, puiseux_of_g};
use crate::{par, Error, Result};
use num_traits::{One, Signed, Zero};

/// Sample count of the numeric vanishing test.
pub const SAMPLE_COUNT: usize = 20;
/// Normalized residual threshold of the numeric vanishing test.
pub const VANISH_TOL: f64 = 1e-8;
const SAMPLE_SEED: u64 = 0x0ab5_1de5;

/// Knobs of the vanishing test and solver. The defaults are the calibrated
/// values; `order` overrides the Puiseux truncation K = m(deg g + 2).
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub cap: usize,
    pub tol: f64,
    pub order: Option<i64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { cap: DEFAULT_CAP, tol: VANISH_TOL, order: None }
    }
}

impl SolveOptions {
    fn puiseux_order(&self, m: usize, g: &ExactPoly) -> i64 {
        self.order
            .unwrap_or(m as i64 * (g.degree().max(0) as i64 + 2))
            .max(m as i64)
    }
}

/// Labeled branch transport: the basepoint fiber of f with labels aligned to
/// tau_infinity = (1,2,…,m), moved to arbitrary targets by tracking so that
/// every sample uses one consistent labeling.
pub struct BranchSystem {
    pub f: ExactPoly,
    pub data: MonodromyData,
}

impl BranchSystem {
    pub fn new(f: &ExactPoly) -> Result<Self> {
        let data = monodromy_data(f)?;
        Ok(BranchSystem { f: f.clone(), data })
    }

    pub fn from_data(f: ExactPoly, data: MonodromyData) -> Self {
        BranchSystem { f, data }
    }

    /// Labeled fiber over `t`, transported from the basepoint along the
    /// circle of the basepoint radius and then radially inward or outward.
    pub fn fiber_at(&self, t: Complex64) -> Result<Vec<Complex64>> {
        let t0 = self.data.basepoint;
        let mut sweep = t.arg() - t0.arg();
        while sweep > std::f64::consts::PI {
            sweep -= 2.0 * std::f64::consts::PI;
        }
        while sweep < -std::f64::consts::PI {
            sweep += 2.0 * std::f64::consts::PI;
        }
        let corner = Complex64::from_polar(t0.norm(), t0.arg() + sweep);
        let path = vec![
            PathSeg::Arc {
                center: Complex64::new(0.0, 0.0),
                radius: t0.norm(),
                from_angle: t0.arg(),
                to_angle: t0.arg() + sweep,
            },
            PathSeg::Line { from: corner, to: t },
        ];
        let (fiber, _) = track_path(&self.f, &path, &self.data.fiber)?;
        Ok(fiber)
    }

    /// Deterministic pseudo-random sample points outside the critical disk:
    /// the basepoint radius stays outside every critical value by
    /// construction.
    pub fn sample_points(&self, n: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r0 = self.data.basepoint.norm();
        (0..n)
            .map(|_| {
                let radius = r0 * (1.0 + 0.2 * rng.gen::<f64>());
                let angle = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
                Complex64::from_polar(radius, angle)
            })
            .collect()
    }
}

/// Σ nᵢ g(zᵢ(t)) at each sample point, with branches transported from the
/// basepoint. Sample evaluations run independently (in parallel when the
/// `parallel` feature is on).
pub fn integral_samples(
    f: &ExactPoly,
    g: &ExactPoly,
    cycle: &ZeroCycle,
    ts: &[Complex64],
) -> Result<Vec<Complex64>> {
    let branches = BranchSystem::new(f)?;
    integral_samples_with(&branches, g, cycle, ts)
}

pub fn integral_samples_with(
    branches: &BranchSystem,
    g: &ExactPoly,
    cycle: &ZeroCycle,
    ts: &[Complex64],
) -> Result<Vec<Complex64>> {
    if cycle.m() != branches.data.m {
        return Err(Error::InvalidInput("cycle size does not match the fiber".into()));
    }
    par::try_map(ts.to_vec(), |t| {
        let fiber = branches.fiber_at(t)?;
        Ok(cycle_sum(g, cycle, &fiber))
    })
}

fn cycle_sum(g: &ExactPoly, cycle: &ZeroCycle, fiber: &[Complex64]) -> Complex64 {
    cycle
        .weights()
        .iter()
        .zip(fiber)
        .map(|(&n, &z)| g.eval_complex(z) * n as f64)
        .sum()
}

/// Evidence record of the combined vanishing test: sampled residuals plus
/// the exact Puiseux frequency conditions. A pass is a calibrated
/// semi-decision, not a proof; the exact conditions are one-sided.
#[derive(Debug, Clone)]
pub struct VanishingEvidence {
    pub passed: bool,
    pub sample_count: usize,
    /// Worst |Σ nᵢ g(zᵢ)| over the samples, normalized by Σ|nᵢ|·max|g(zᵢ)|.
    pub worst_sample_residual: f64,
    pub puiseux_ok: bool,
    pub puiseux_order: i64,
    /// Numeric magnitude of the worst failing frequency condition.
    pub puiseux_worst: f64,
    pub failing_frequency: Option<i64>,
}

/// Combined vanishing test for Σ nᵢ g(zᵢ(t)):
/// (a) residuals below tolerance at pseudo-random samples, and
/// (b) every Puiseux condition s_k · Σᵢ nᵢ ε_m^{(i−1)k} = 0 up to order
///     K = m(deg g + 2), decided exactly: s_k is an exact rational of the
///     monicized polynomial and the weighted root-of-unity sum vanishes iff
///     the matching cyclotomic polynomial divides the cycle polynomial.
pub fn is_identically_zero(
    f: &ExactPoly,
    g: &ExactPoly,
    cycle: &ZeroCycle,
) -> Result<VanishingEvidence> {
    let branches = BranchSystem::new(f)?;
    is_identically_zero_with(&branches, g, cycle)
}

pub fn is_identically_zero_with(
    branches: &BranchSystem,
    g: &ExactPoly,
    cycle: &ZeroCycle,
) -> Result<VanishingEvidence> {
    is_identically_zero_opts(branches, g, cycle, &SolveOptions::default())
}

pub fn is_identically_zero_opts(
    branches: &BranchSystem,
    g: &ExactPoly,
    cycle: &ZeroCycle,
    opts: &SolveOptions,
) -> Result<VanishingEvidence> {
    let m = branches.data.m;
    if cycle.m() != m {
        return Err(Error::InvalidInput("cycle size does not match the fiber".into()));
    }

    // (a) sampled residuals
    let ts = branches.sample_points(SAMPLE_COUNT, SAMPLE_SEED);
    let samples = par::try_map(ts, |t| {
        let fiber = branches.fiber_at(t)?;
        let val = cycle_sum(g, cycle, &fiber);
        let scale: f64 = cycle
            .weights()
            .iter()
            .zip(&fiber)
            .map(|(&n, &z)| n.abs() as f64 * g.eval_complex(z).norm())
            .sum();
        Ok(val.norm() / scale.max(1e-300))
    })?;
    let worst_sample = samples.into_iter().fold(0.0f64, f64::max);

    // (b) exact frequency conditions on the monicized polynomial
    let f_hat = monicize(&branches.f);
    let order = opts.puiseux_order(m, g);
    let series = puiseux_of_g(&f_hat, g, order)?;
    let p_c = ExactPoly::new(cycle.weights().iter().map(|&w| crate::poly::rat(w)).collect());
    let mut puiseux_ok = true;
    let mut puiseux_worst = 0.0f64;
    let mut failing = None;
    let scale_s: f64 = series.terms().map(|(_, c)| rat_to_f64(&c.abs())).fold(0.0, f64::max);
    for (k, s_k) in series.terms() {
        if frequency_condition_holds(&p_c, m, k) {
            continue;
        }
        puiseux_ok = false;
        let r = k.rem_euclid(m as i64) as usize;
        let eps = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / m as f64);
        let weight_sum: Complex64 = cycle
            .weights()
            .iter()
            .enumerate()
            .map(|(i, &n)| eps.powu(i as u32) * n as f64)
            .sum();
        let magnitude = rat_to_f64(&s_k.abs()) * weight_sum.norm()
            / (scale_s.max(1e-300) * cycle.weights().iter().map(|n| n.abs()).sum::<i64>() as f64);
        if magnitude > puiseux_worst {
            puiseux_worst = magnitude;
            failing = Some(k);
        }
    }

    Ok(VanishingEvidence {
        passed: worst_sample <= opts.tol && puiseux_ok,
        sample_count: SAMPLE_COUNT,
        worst_sample_residual: worst_sample,
        puiseux_ok,
        puiseux_order: order,
        puiseux_worst,
        failing_frequency: failing,
    })
}

/// Σᵢ nᵢ ε_m^{(i−1)k} = 0, decided exactly: ε_m^k is a primitive
/// (m/gcd(m,k))-th root of unity, so the sum vanishes iff that cyclotomic
/// polynomial divides the cycle polynomial.
fn frequency_condition_holds(p_c: &ExactPoly, m: usize, k: i64) -> bool {
    let r = k.rem_euclid(m as i64) as usize;
    if r == 0 {
        // ε^0 = 1 and cycles sum to zero.
        return true;
    }
    let d = num_integer::gcd(m, r);
    crate::poly::cyclotomic(m / d).divides(p_c)
}

fn monicize(f: &ExactPoly) -> ExactPoly {
    if f.is_monic() {
        f.clone()
    } else {
        let lead = f.leading();
        f.scale(&(Rat::one() / lead))
    }
}

/// Exact solve for g = g₀ ∘ f; the triangular base-f expansion either
/// produces g₀ or proves none exists.
pub fn theorem1_check(f: &ExactPoly, g: &ExactPoly) -> Result<Option<ExactPoly>> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput("needs deg f >= 2".into()));
    }
    Ok(compose_solve(g, f))
}

/// Tangential solve on a simple cycle z_i − z_j: find the minimal block
/// containing {i, j}, map it to a decomposition f = f₀ ∘ h with
/// h(zᵢ) = h(z_j), then check g = g₀ ∘ h exactly. Labels are 0-indexed.
pub fn simple_cycle_solve(
    f: &ExactPoly,
    g: &ExactPoly,
    i: usize,
    j: usize,
) -> Result<Option<(ExactPoly, ExactPoly, ExactPoly)>> {
    if i == j {
        return Err(Error::InvalidInput("simple cycle needs two distinct labels".into()));
    }
    let data = monodromy_data(f)?;
    if i >= data.m || j >= data.m {
        return Err(Error::InvalidInput("branch label out of range".into()));
    }
    let bs = minimal_block_system(&data, i, j);
    let dec = match crate::poly::decompose_degree(f, bs.block_size)? {
        Some(d) => d,
        None => return Ok(None),
    };
    // h must identify the two branches numerically.
    let hi = dec.inner.eval_complex(data.fiber[i]);
    let hj = dec.inner.eval_complex(data.fiber[j]);
    if (hi - hj).norm() > 1e-7 * (1.0 + hi.norm().max(hj.norm())) {
        return Ok(None);
    }
    match compose_solve(g, &dec.inner) {
        Some(g0) => Ok(Some((dec.outer, g0, dec.inner))),
        None => Ok(None),
    }
}

/// True iff every critical point of f is Morse and every critical value is
/// attained by exactly one critical point: f' squarefree (exact gcd) and
/// distinct critical values (tolerance).
pub fn morse_generic_check(f: &ExactPoly) -> Result<bool> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput("needs deg f >= 2".into()));
    }
    let df = f.derivative();
    if df.gcd(&df.derivative()).degree() > 0 {
        return Ok(false);
    }
    let values = critical_values(f)?;
    Ok(values.len() == df.degree() as usize)
}

/// Displacement Δ_ε(t) = Σ nᵢ f(zᵢ(t,ε)) of the perturbation f + εg, with
/// the perturbed fiber obtained by continuation in ε from the fiber of f.
pub fn displacement(
    f: &ExactPoly,
    g: &ExactPoly,
    cycle: &ZeroCycle,
    epsilon: Complex64,
    ts: &[Complex64],
) -> Result<Vec<Complex64>> {
    let branches = BranchSystem::new(f)?;
    displacement_with(&branches, g, cycle, epsilon, ts)
}

pub fn displacement_with(
    branches: &BranchSystem,
    g: &ExactPoly,
    cycle: &ZeroCycle,
    epsilon: Complex64,
    ts: &[Complex64],
) -> Result<Vec<Complex64>> {
    if cycle.m() != branches.data.m {
        return Err(Error::InvalidInput("cycle size does not match the fiber".into()));
    }
    let fc = branches.f.complex_coeffs();
    let dfc = branches.f.derivative().complex_coeffs();
    let gc = g.complex_coeffs();
    let dgc = g.derivative().complex_coeffs();
    par::try_map(ts.to_vec(), |t| {
        let mut fiber = branches.fiber_at(t)?;
        // Homotopy in ε, 16 base sub-steps with local halving on guard
        // violations (root collision of the perturbed fiber).
        let mut s = 0.0f64;
        let mut h = 1.0f64 / 16.0;
        while s < 1.0 {
            h = h.min(1.0 - s);
            let eps_next = epsilon * (s + h);
            match epsilon_step(&fc, &dfc, &gc, &dgc, &fiber, eps_next, t) {
                Some(next) => {
                    fiber = next;
                    s += h;
                }
                None => {
                    h /= 2.0;
                    if h < 1e-9 {
                        return Err(Error::TrackingStepUnderflow {
                            re: t.re,
                            im: t.im,
                            min_dist: min_pairwise(&fiber),
                        });
                    }
                }
            }
        }
        Ok(cycle
            .weights()
            .iter()
            .zip(&fiber)
            .map(|(&n, &z)| branches.f.eval_complex(z) * n as f64)
            .sum())
    })
}

fn min_pairwise(zs: &[Complex64]) -> f64 {
    let mut min = f64::INFINITY;
    for a in 0..zs.len() {
        for b in a + 1..zs.len() {
            min = min.min((zs[a] - zs[b]).norm());
        }
    }
    min
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// One guarded Newton correction of the whole fiber onto
/// (f + εg)(z) = t.
fn epsilon_step(
    fc: &[Complex64],
    dfc: &[Complex64],
    gc: &[Complex64],
    dgc: &[Complex64],
    fiber: &[Complex64],
    eps: Complex64,
    t: Complex64,
) -> Option<Vec<Complex64>> {
    let min_d = min_pairwise(fiber);
    let mut next = Vec::with_capacity(fiber.len());
    for &z0 in fiber {
        let mut z = z0;
        let mut converged = false;
        for _ in 0..40 {
            let val = horner(fc, z) + eps * horner(gc, z) - t;
            let dv = horner(dfc, z) + eps * horner(dgc, z);
            if dv.norm() < 1e-300 {
                return None;
            }
            let delta = val / dv;
            z -= delta;
            if delta.norm() <= 1e-13 * (1.0 + z.norm()) {
                converged = true;
                break;
            }
        }
        if !converged || (z - z0).norm() >= 0.4 * min_d {
            return None;
        }
        next.push(z);
    }
    for (i, &zn) in next.iter().enumerate() {
        let mut d1 = f64::INFINITY;
        let mut d2 = f64::INFINITY;
        let mut arg = usize::MAX;
        for (j, &zo) in fiber.iter().enumerate() {
            let d = (zn - zo).norm();
            if d < d1 {
                d2 = d1;
                d1 = d;
                arg = j;
            } else if d < d2 {
                d2 = d;
            }
        }
        if arg != i || d2 < 2.0 * d1 {
            return None;
        }
    }
    Some(next)
}

/// How the integral of one certificate term is known to vanish.
#[derive(Debug, Clone)]
pub enum TermProof {
    /// The projected cycle is trivial; vanishing is structural.
    TrivialProjection,
    /// Outer polynomial is a pure power and the exact cyclotomic residue
    /// rule confirms every monomial of the term.
    PowerRule,
    /// Vanishing supported by the numeric semi-decision only.
    Numeric(VanishingEvidence),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionKind {
    Trivial,
    Balanced,
    Unbalanced,
}

/// One composition term of a certificate: g_k ∘ h_k with f = f_k ∘ h_k.
#[derive(Debug, Clone)]
pub struct CertificateTerm {
    pub inner: ExactPoly,
    pub outer: ExactPoly,
    pub g_part: ExactPoly,
    pub projected: ZeroCycle,
    pub kind: ProjectionKind,
    pub proof: TermProof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateStatus {
    /// Vanishes with every projected cycle trivial.
    VanishesTrivial,
    /// Vanishes; some projected cycle is balanced, with vanishing evidence
    /// attached (exact for pure-power outer polynomials).
    VanishesWithResidualBalanced,
    DoesNotVanish,
    /// A balanced residual outside the solvable special families.
    UndeterminedBalancedResidual,
}

#[derive(Debug, Clone)]
pub struct VanishingCertificate {
    pub status: CertificateStatus,
    pub terms: Vec<CertificateTerm>,
    pub classification: CycleClassification,
    pub evidence: VanishingEvidence,
}

impl VanishingCertificate {
    /// Σ g_k ∘ h_k, which must reproduce g exactly for vanishing statuses.
    pub fn reconstruct_g(&self) -> ExactPoly {
        let mut acc = ExactPoly::zero();
        for term in &self.terms {
            acc = acc.add(&term.g_part.compose(&term.inner));
        }
        acc
    }
}

/// f = a·z^m + c?
fn pure_power_form(f: &ExactPoly) -> Option<usize> {
    let deg = f.degree();
    if deg < 2 {
        return None;
    }
    let m = deg as usize;
    for k in 1..m {
        if !f.coeff(k).is_zero() {
            return None;
        }
    }
    Some(m)
}

/// Exact solution test for a pure power: every monomial exponent of g must
/// land on a residue j with P_C(ε_m^j) = 0.
fn power_rule_allows(g: &ExactPoly, cycle: &ZeroCycle) -> bool {
    let m = cycle.m();
    let p_c = ExactPoly::new(cycle.weights().iter().map(|&w| crate::poly::rat(w)).collect());
    for (j, c) in g.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !frequency_condition_holds(&p_c, m, j as i64) {
            return false;
        }
    }
    true
}

/// The tangential-center solver: classify the cycle, test vanishing, and
/// when it vanishes on an unbalanced cycle, peel g into composition terms
/// g = Σ g_k ∘ h_k whose projected cycles are trivial or balanced,
/// recursing on unbalanced projections. Balanced residuals are resolved
/// exactly for pure-power polynomials; anything else keeps its numeric
/// evidence and is reported as undetermined.
pub fn solve_tangential(
    f: &ExactPoly,
    cycle: &ZeroCycle,
    g: &ExactPoly,
) -> Result<VanishingCertificate> {
    solve_tangential_opts(f, cycle, g, &SolveOptions::default())
}

pub fn solve_tangential_with(
    f: &ExactPoly,
    cycle: &ZeroCycle,
    g: &ExactPoly,
    cap: usize,
) -> Result<VanishingCertificate> {
    solve_tangential_opts(f, cycle, g, &SolveOptions { cap, ..SolveOptions::default() })
}

pub fn solve_tangential_opts(
    f: &ExactPoly,
    cycle: &ZeroCycle,
    g: &ExactPoly,
    opts: &SolveOptions,
) -> Result<VanishingCertificate> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput("solver needs deg f >= 2".into()));
    }
    let m = f.degree() as usize;
    if cycle.m() != m {
        return Err(Error::InvalidInput("cycle size does not match deg f".into()));
    }
    let data = monodromy_data(f)?;
    let classification = is_totally_unbalanced(f, cycle, &data, opts.cap)?;
    let branches = BranchSystem::from_data(f.clone(), data);
    let evidence = is_identically_zero_opts(&branches, g, cycle, opts)?;

    if classification.trivial {
        let term = CertificateTerm {
            inner: ExactPoly::identity(),
            outer: f.clone(),
            g_part: g.clone(),
            projected: cycle.clone(),
            kind: ProjectionKind::Trivial,
            proof: TermProof::TrivialProjection,
        };
        return Ok(VanishingCertificate {
            status: CertificateStatus::VanishesTrivial,
            terms: vec![term],
            classification,
            evidence,
        });
    }

    if classification.balanced {
        // No decomposition step applies; the whole integral is the residual.
        if let Some(power) = pure_power_form(f) {
            debug_assert_eq!(power, m);
            let allowed = power_rule_allows(g, cycle);
            let status = if allowed {
                CertificateStatus::VanishesWithResidualBalanced
            } else {
                CertificateStatus::DoesNotVanish
            };
            let terms = if allowed {
                vec![CertificateTerm {
                    inner: ExactPoly::identity(),
                    outer: f.clone(),
                    g_part: g.clone(),
                    projected: cycle.clone(),
                    kind: ProjectionKind::Balanced,
                    proof: TermProof::PowerRule,
                }]
            } else {
                Vec::new()
            };
            return Ok(VanishingCertificate { status, terms, classification, evidence });
        }
        let status = if evidence.passed {
            CertificateStatus::VanishesWithResidualBalanced
        } else {
            CertificateStatus::DoesNotVanish
        };
        let terms = if evidence.passed {
            vec![CertificateTerm {
                inner: ExactPoly::identity(),
                outer: f.clone(),
                g_part: g.clone(),
                projected: cycle.clone(),
                kind: ProjectionKind::Balanced,
                proof: TermProof::Numeric(evidence.clone()),
            }]
        } else {
            Vec::new()
        };
        return Ok(VanishingCertificate { status, terms, classification, evidence });
    }

    if !evidence.passed {
        return Ok(VanishingCertificate {
            status: CertificateStatus::DoesNotVanish,
            terms: Vec::new(),
            classification,
            evidence,
        });
    }

    // Unbalanced vanishing integral: peel composition terms.
    let terms = peel_terms(f, cycle, g, opts)?;
    let mut any_balanced = false;
    let mut any_undetermined = false;
    for term in &terms {
        match (&term.kind, &term.proof) {
            (ProjectionKind::Balanced, TermProof::PowerRule) => any_balanced = true,
            (ProjectionKind::Balanced, _) => {
                any_balanced = true;
                any_undetermined = true;
            }
            _ => {}
        }
    }
    let status = if any_undetermined {
        CertificateStatus::UndeterminedBalancedResidual
    } else if any_balanced {
        CertificateStatus::VanishesWithResidualBalanced
    } else {
        CertificateStatus::VanishesTrivial
    };
    let cert = VanishingCertificate { status, terms, classification, evidence };
    debug_assert_eq!(cert.reconstruct_g(), *g);
    Ok(cert)
}

/// The peeling loop of the solver: repeatedly find the smallest admissible
/// inner degree whose frequencies are active in the expansion of the
/// remaining g, extract the matching composition part, project the cycle,
/// and recurse on unbalanced nontrivial projections.
fn peel_terms(
    f: &ExactPoly,
    cycle: &ZeroCycle,
    g: &ExactPoly,
    opts: &SolveOptions,
) -> Result<Vec<CertificateTerm>> {
    let m = f.degree() as usize;
    let lead = f.leading();
    let f_hat = monicize(f);
    let dset = crate::poly::decomposition_set(&f_hat)?;
    let inner_degrees: Vec<usize> = dset.iter().map(|(d, _)| *d).filter(|&d| d > 1).collect();
    let order = opts.puiseux_order(m, g);

    let mut terms = Vec::new();
    let mut g_rem = g.clone();
    let mut rounds = 0;
    while !g_rem.is_zero() {
        rounds += 1;
        if rounds > inner_degrees.len() + 2 {
            return Err(Error::InconsistentEvidence(
                "composition peeling did not terminate".into(),
            ));
        }
        if g_rem.degree() == 0 {
            // A constant factors through the full decomposition f = f₀ ∘ h.
            let dec = dset.iter().find(|(d, _)| *d == m).map(|(_, dec)| dec.clone()).unwrap();
            let g0 = compose_solve(&g_rem, &dec.inner).expect("constant digit");
            terms.push(CertificateTerm {
                inner: dec.inner,
                outer: dec.outer.scale(&lead),
                g_part: g0,
                projected: ZeroCycle::trivial(1),
                kind: ProjectionKind::Trivial,
                proof: TermProof::TrivialProjection,
            });
            break;
        }
        let series = puiseux_of_g(&f_hat, &g_rem, order)?;
        let active: Vec<usize> = inner_degrees
            .iter()
            .copied()
            .filter(|&d| series.terms().any(|(k, _)| k.rem_euclid(d as i64) == 0))
            .collect();
        // Divisibility-minimal active degrees, processed smallest first.
        let minimal: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&d| !active.iter().any(|&e| e != d && d % e == 0))
            .collect();
        let d = match minimal.iter().min() {
            Some(&d) => d,
            None => {
                return Err(Error::InconsistentEvidence(
                    "vanishing evidence but no admissible composition divisor".into(),
                ))
            }
        };
        let (w, g0, dec) = extract_psi_and_w(&f_hat, &series, m / d)?;
        let bs = BlockSystem::congruence(m, d)?;
        let projected = project_cycle(cycle, &bs)?;
        let outer = dec.outer.scale(&lead);
        if projected.is_trivial() {
            terms.push(CertificateTerm {
                inner: dec.inner,
                outer,
                g_part: g0,
                projected,
                kind: ProjectionKind::Trivial,
                proof: TermProof::TrivialProjection,
            });
        } else {
            let outer_data = monodromy_data(&outer)?;
            let outer_class = outer_data.conjugacy_class_tau(opts.cap)?;
            let (balanced, _) = is_balanced(&projected, &outer_class)?;
            if balanced {
                if pure_power_form(&outer).is_some() {
                    if !power_rule_allows(&g0, &projected) {
                        return Err(Error::InconsistentEvidence(
                            "extracted term fails the exact power rule though the total \
                             integral vanishes"
                                .into(),
                        ));
                    }
                    terms.push(CertificateTerm {
                        inner: dec.inner,
                        outer,
                        g_part: g0,
                        projected,
                        kind: ProjectionKind::Balanced,
                        proof: TermProof::PowerRule,
                    });
                } else {
                    let sub_branches = BranchSystem::from_data(outer.clone(), outer_data);
                    let sub_ev = is_identically_zero_opts(&sub_branches, &g0, &projected, opts)?;
                    terms.push(CertificateTerm {
                        inner: dec.inner,
                        outer,
                        g_part: g0,
                        projected,
                        kind: ProjectionKind::Balanced,
                        proof: TermProof::Numeric(sub_ev),
                    });
                }
            } else {
                // Unbalanced nontrivial projection: recurse on the outer
                // polynomial and compose the inner factors back.
                let sub = solve_tangential_opts(&outer, &projected, &g0, opts)?;
                if sub.status == CertificateStatus::DoesNotVanish {
                    return Err(Error::InconsistentEvidence(
                        "projected integral fails though the total integral vanishes".into(),
                    ));
                }
                for sub_term in sub.terms {
                    terms.push(CertificateTerm {
                        inner: sub_term.inner.compose(&dec.inner),
                        outer: sub_term.outer,
                        g_part: sub_term.g_part,
                        projected: sub_term.projected,
                        kind: sub_term.kind,
                        proof: sub_term.proof,
                    });
                }
            }
        }
        g_rem = g_rem.sub(&w);
    }
    Ok(terms)
}
