//! The trigonometric moment problem, after the substitution z → e^{iz}:
//! contour moments ∫_{|z|=1} f^k g' dz of Laurent polynomials, their exact
//! residue evaluation, and the reduction to a zero-dimensional cycle that
//! weights the branches near 0 against the branches near ∞.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::cycles::ZeroCycle;
use crate::parse::{parse_terms, TermMap};
use crate::poly::{rat, rat_to_f64, Rat};
use crate::{Error, Result};
use num_traits::Zero;

/// Laurent polynomial Σ c_k z^k with exact rational coefficients,
/// k ranging over a finite window of ℤ.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn new(terms: TermMap) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentPoly { terms }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(LaurentPoly::new(parse_terms(src)?))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pole order at 0 (0 when regular there).
    pub fn order_at_zero(&self) -> usize {
        self.terms
            .keys()
            .next()
            .map(|&k| if k < 0 { (-k) as usize } else { 0 })
            .unwrap_or(0)
    }

    /// Pole order at ∞ (the top positive exponent; 0 when bounded).
    pub fn order_at_infinity(&self) -> usize {
        self.terms
            .keys()
            .next_back()
            .map(|&k| if k > 0 { k as usize } else { 0 })
            .unwrap_or(0)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        LaurentPoly { terms }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let e = terms.entry(ka + kb).or_insert_with(Rat::zero);
                *e += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn derivative(&self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, c)| (k - 1, c * rat(k)))
            .collect();
        LaurentPoly { terms }
    }

    /// Coefficient of z^{−1}: the residue at 0 up to the 2πi factor.
    pub fn residue(&self) -> Rat {
        self.coeff(-1)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, c)| rat_to_f64(c) * z.powi(k as i32))
            .sum()
    }
}

/// Contour moments ∫_{|z|=1} f^k g' dz for k = 0..K−1, as exact rationals:
/// each moment equals 2πi times the returned value (the residue of f^k g'
/// at 0). The k = 0 moment vanishes automatically: the derivative of a
/// Laurent polynomial has no z^{−1} term.
pub fn laurent_moment_oracle(f: &LaurentPoly, g: &LaurentPoly, k_max: usize) -> Vec<Rat> {
    let dg = g.derivative();
    let mut out = Vec::with_capacity(k_max);
    let mut fk = LaurentPoly::new(TermMap::from([(0i64, rat(1))]));
    for _ in 0..k_max {
        out.push(fk.mul(&dg).residue());
        fk = fk.mul(f);
    }
    out
}

/// The moment cycle of a proper Laurent polynomial, with the labeled base
/// fiber needed to sample integrals consistently.
#[derive(Debug, Clone)]
pub struct LaurentMomentReport {
    pub cycle: ZeroCycle,
    /// Pole order at 0 (number of branches tending to 0).
    pub n: usize,
    /// Pole order at ∞ (number of branches tending to ∞).
    pub m: usize,
    pub base_t: Complex64,
    /// Fiber of f(z) = base_t; the first n labels are the branches near 0.
    pub base_fiber: Vec<Complex64>,
}

/// Coefficients of z^n·f(z), a genuine polynomial when n = order at 0.
fn numerator_coeffs(f: &LaurentPoly) -> Vec<Complex64> {
    let n = f.order_at_zero() as i64;
    let top = f.order_at_infinity() as i64;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (top + n) as usize + 1];
    for (k, c) in f.terms() {
        coeffs[(k + n) as usize] = Complex64::new(rat_to_f64(c), 0.0);
    }
    coeffs
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Fiber of f(z) = t as roots of z^n f(z) − t z^n.
fn laurent_fiber(a: &[Complex64], n: usize, t: Complex64) -> Result<Vec<Complex64>> {
    let mut coeffs = a.to_vec();
    coeffs[n] -= t;
    crate::roots::roots_complex(&coeffs)
}

/// Build the moment cycle of a proper Laurent polynomial (n, m ≥ 1): weight
/// m on the n branches tending to 0 and −n on the m branches tending to ∞,
/// classified along a ray of ascending |t|.
pub fn laurent_moment_cycle(f: &LaurentPoly) -> Result<LaurentMomentReport> {
    let n = f.order_at_zero();
    let m = f.order_at_infinity();
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput(
            "the Laurent moment cycle needs a proper Laurent polynomial (poles at 0 and ∞)"
                .into(),
        ));
    }
    let a = numerator_coeffs(f);
    let scale = 1.0 + a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut radius = 4.0 * scale;
    for _ in 0..60 {
        let t = Complex64::new(radius, 0.0);
        let mut fiber = laurent_fiber(&a, n, t)?;
        fiber.sort_by(|x, y| {
            (x.norm(), x.arg())
                .partial_cmp(&(y.norm(), y.arg()))
                .unwrap()
        });
        // A clear modulus gap between the n small and m large branches.
        if fiber.len() == n + m && fiber[n].norm() >= 16.0 * fiber[n - 1].norm() {
            let mut weights = vec![0i64; n + m];
            for w in weights.iter_mut().take(n) {
                *w = m as i64;
            }
            for w in weights.iter_mut().skip(n) {
                *w = -(n as i64);
            }
            return Ok(LaurentMomentReport {
                cycle: ZeroCycle::new(weights)?,
                n,
                m,
                base_t: t,
                base_fiber: fiber,
            });
        }
        radius *= 2.0;
    }
    Err(Error::InconsistentEvidence(
        "branches near 0 and ∞ did not separate along the ray".into(),
    ))
}

/// Guarded Newton step of the Laurent fiber from t0 to t1.
fn laurent_step(
    a: &[Complex64],
    da: &[Complex64],
    n: usize,
    fiber: &[Complex64],
    t1: Complex64,
) -> Option<Vec<Complex64>> {
    let mut min_d = f64::INFINITY;
    for i in 0..fiber.len() {
        for j in i + 1..fiber.len() {
            min_d = min_d.min((fiber[i] - fiber[j]).norm());
        }
    }
    let mut next = Vec::with_capacity(fiber.len());
    for &z0 in fiber {
        let mut z = z0;
        let mut ok = false;
        for _ in 0..40 {
            let val = horner(a, z) - t1 * z.powu(n as u32);
            let dv = horner(da, z) - t1 * (n as f64) * z.powu(n as u32 - 1);
            if dv.norm() < 1e-300 {
                return None;
            }
            let delta = val / dv;
            z -= delta;
            if delta.norm() <= 1e-13 * (1.0 + z.norm()) {
                ok = true;
                break;
            }
        }
        // Relative movement guard: branch moduli differ by orders of
        // magnitude, so the guard scales per root.
        if !ok || (z - z0).norm() >= 0.25 * (min_d.min(z0.norm())) {
            return None;
        }
        next.push(z);
    }
    Some(next)
}

/// Sampling test for Σ nᵢ g(zᵢ(t)) ≡ 0 along the Laurent moment cycle:
/// the fiber is continued around the circle |t| = |base_t| and the residual
/// is normalized by Σ|nᵢ||g(zᵢ)|.
pub fn laurent_is_identically_zero(
    f: &LaurentPoly,
    g: &LaurentPoly,
    report: &LaurentMomentReport,
) -> Result<(bool, f64)> {
    let a = numerator_coeffs(f);
    let da: Vec<Complex64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let n = report.n;
    let radius = report.base_t.norm();
    let samples = 12usize;
    let mut fiber = report.base_fiber.clone();
    let mut angle = 0.0f64;
    let mut worst = 0.0f64;
    for s in 1..=samples {
        let target_angle = 2.0 * std::f64::consts::PI * s as f64 / (samples as f64 + 1.0);
        // Continue the fiber in small angle steps with halving on guard
        // violations.
        let mut h = (target_angle - angle) / 8.0;
        while angle < target_angle - 1e-15 {
            h = h.min(target_angle - angle);
            let t1 = Complex64::from_polar(radius, angle + h);
            match laurent_step(&a, &da, n, &fiber, t1) {
                Some(next) => {
                    fiber = next;
                    angle += h;
                    h *= 1.7;
                }
                None => {
                    h /= 2.0;
                    if h < 1e-12 {
                        return Err(Error::TrackingStepUnderflow {
                            re: radius * angle.cos(),
                            im: radius * angle.sin(),
                            min_dist: 0.0,
                        });
                    }
                }
            }
        }
        let mut val = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for (&w, &z) in report.cycle.weights().iter().zip(&fiber) {
            let gv = g.eval_complex(z);
            val += gv * w as f64;
            scale += w.abs() as f64 * gv.norm();
        }
        worst = worst.max(val.norm() / scale.max(1e-300));
    }
    Ok((worst <= crate::abelian::VANISH_TOL, worst))
}
