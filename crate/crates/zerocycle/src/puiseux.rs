//! Puiseux expansions at infinity. A branch of f(z) = t for monic f of
//! degree m is a series Σ s_k t^{−k/m}; we compute it by Newton iteration in
//! the formal Laurent algebra in u = t^{−1/m}. Coefficients stay exact
//! rationals, which is what lets the solver emit exact certificates.

use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::poly::{rat, rat_to_f64, Decomposition, ExactPoly, Rat};
use crate::{Error, Result};

/// Truncation marker for exactly-known series (no unknown tail).
const EXACT_TRUNC: i64 = i64::MAX / 8;

/// Truncated series Σ_{k ≥ k_min} s_k t^{−k/m} with exponents in the
/// fractional grid k/m. Coefficients are known for k ≤ trunc; the tail is
/// O(t^{−(trunc+1)/m}).
#[derive(Clone, PartialEq)]
pub struct PuiseuxSeries {
    pub ramification: usize,
    trunc: i64,
    terms: BTreeMap<i64, Rat>,
}

impl std::fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[m={}]", self.ramification)?;
        for (k, c) in &self.terms {
            write!(f, " + ({c})·t^{{-{k}/{}}}", self.ramification)?;
        }
        write!(f, " + O(t^{{-{}/{}}})", self.trunc + 1, self.ramification)
    }
}

impl PuiseuxSeries {
    pub fn zero(m: usize, trunc: i64) -> Self {
        PuiseuxSeries { ramification: m, trunc, terms: BTreeMap::new() }
    }

    /// c · t^{−k/m}
    pub fn monomial(m: usize, k: i64, c: Rat, trunc: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && k <= trunc {
            terms.insert(k, c);
        }
        PuiseuxSeries { ramification: m, trunc, terms }
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent index present (the dominant term as t → ∞).
    pub fn k_min(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn insert(&mut self, k: i64, c: Rat) {
        if k > self.trunc || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let mut out = PuiseuxSeries::zero(self.ramification, self.trunc.min(other.trunc));
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> PuiseuxSeries {
        PuiseuxSeries {
            ramification: self.ramification,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> PuiseuxSeries {
        if s.is_zero() {
            return PuiseuxSeries::zero(self.ramification, self.trunc);
        }
        PuiseuxSeries {
            ramification: self.ramification,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        // Unknown tails start at trunc+1; the product is reliable up to
        // min over the cross terms.
        let ka = self.k_min().unwrap_or(self.trunc + 1);
        let kb = other.k_min().unwrap_or(other.trunc + 1);
        let trunc = (self.trunc + kb)
            .min(other.trunc + ka)
            .min(self.trunc + other.trunc + 1)
            .min(EXACT_TRUNC);
        let mut out = PuiseuxSeries::zero(self.ramification, trunc);
        for (ks, cs) in &self.terms {
            for (ko, co) in &other.terms {
                let k = ks + ko;
                if k > trunc {
                    break;
                }
                out.insert(k, cs * co);
            }
        }
        out
    }

    /// Multiplicative inverse by Newton doubling; the leading term must be
    /// exactly known.
    pub fn inv(&self) -> Result<PuiseuxSeries> {
        let k0 = self
            .k_min()
            .ok_or_else(|| Error::InvalidInput("inverse of zero series".into()))?;
        let a = self.coeff(k0);
        let trunc = (self.trunc - 2 * k0).min(EXACT_TRUNC);
        let mut x = PuiseuxSeries::monomial(self.ramification, -k0, Rat::one() / a, trunc);
        // x ← x(2 − s·x) doubles the number of correct terms.
        let one = PuiseuxSeries::monomial(self.ramification, 0, Rat::one(), trunc - k0);
        let two = PuiseuxSeries::monomial(self.ramification, 0, rat(2), trunc - k0);
        for _ in 0..70 {
            let sx = self.mul(&x);
            if sx.sub(&one).is_zero() {
                break;
            }
            x = x.mul(&two.sub(&sx));
            x.trunc = trunc;
        }
        x.terms.retain(|k, _| *k <= trunc);
        Ok(x)
    }

    /// Evaluate the polynomial `p` at this series (Horner).
    pub fn eval_poly(&self, p: &ExactPoly) -> PuiseuxSeries {
        let mut acc = PuiseuxSeries::zero(self.ramification, EXACT_TRUNC);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.insert(0, c.clone());
        }
        acc
    }

    /// Numeric value of the branch rule Σ s_k ε_m^{(i−1)k} t^{−k/m} for the
    /// i-th branch (0-indexed), with the principal t^{1/m}.
    pub fn eval_branch(&self, t: Complex64, branch: usize) -> Complex64 {
        let m = self.ramification as f64;
        let log_t = t.ln();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let phase = Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * (branch as f64) * (*k as f64) / m,
            );
            let power = (-(*k as f64) / m * log_t).exp();
            acc += rat_to_f64(c) * phase * power;
        }
        acc
    }
}

/// Puiseux branch z₁(t) = t^{1/m}(1 + …) of a monic polynomial, to
/// truncation `order`: f(z₁(t)) − t = O(t^{−(order−m)/m}).
pub fn puiseux_branch(f: &ExactPoly, order: i64) -> Result<PuiseuxSeries> {
    let deg = f.degree();
    if deg < 1 {
        return Err(Error::InvalidInput("branch needs deg f >= 1".into()));
    }
    if !f.is_monic() {
        return Err(Error::InvalidInput(
            "puiseux_branch needs a monic polynomial; divide by the leading coefficient first"
                .into(),
        ));
    }
    let m = deg as usize;
    let trunc = order.max(1);
    // t as a series in u = t^{-1/m}: exactly u^{-m}, no unknown tail.
    let t_series = PuiseuxSeries::monomial(m, -(m as i64), Rat::one(), EXACT_TRUNC);
    let mut z = PuiseuxSeries::monomial(m, -1, Rat::one(), trunc);
    let df = f.derivative();
    // Newton doubles the correct order each step.
    let steps = 64 - (trunc as u64).max(1).leading_zeros() as i64 + 3;
    for _ in 0..steps {
        let residual = z.eval_poly(f).sub(&t_series);
        if residual.is_zero() {
            break;
        }
        let deriv = z.eval_poly(&df);
        let delta = residual.mul(&deriv.inv()?);
        z = z.sub(&delta);
        z.trunc = trunc;
        z.terms.retain(|k, _| *k <= trunc);
    }
    // Defining property, checked on the reliable part of the residual.
    let residual = z.eval_poly(f).sub(&t_series);
    let reliable = trunc - m as i64;
    if let Some(k) = residual.k_min() {
        if k <= reliable {
            return Err(Error::PuiseuxMatching {
                residual: rat_to_f64(&residual.coeff(k)).abs(),
            });
        }
    }
    Ok(z)
}

/// Expansion of g(z₁(t)) = Σ s_k t^{−k/m} to coefficient order `order`,
/// for monic f. The i-th branch follows by the phase rule
/// g(zᵢ(t)) = Σ s_k ε_m^{(i−1)k} t^{−k/m}.
pub fn puiseux_of_g(f: &ExactPoly, g: &ExactPoly, order: i64) -> Result<PuiseuxSeries> {
    let dg = g.degree().max(0) as i64;
    let branch = puiseux_branch(f, order + dg + 1)?;
    let mut s = branch.eval_poly(g);
    s.terms.retain(|k, _| *k <= order);
    s.trunc = s.trunc.min(order);
    Ok(s)
}

/// The sub-series of `s` supported on frequencies k ≡ 0 (mod m/c) — the
/// part of g(z₁(t)) that factors through an inner polynomial of degree m/c.
pub fn psi_subseries(s: &PuiseuxSeries, c: usize) -> Result<PuiseuxSeries> {
    let m = s.ramification;
    if c == 0 || !m.is_multiple_of(c) {
        return Err(Error::BadDivisor { d: c, m });
    }
    let step = (m / c) as i64;
    let mut out = PuiseuxSeries::zero(m, s.trunc);
    for (k, coeff) in &s.terms {
        if k.rem_euclid(step) == 0 {
            out.insert(*k, coeff.clone());
        }
    }
    Ok(out)
}

/// Given the expansion `s` of g(z₁(t)) for monic f and a proper divisor c of
/// D(f)∖{m} (outer degree), extract ψ_c, recover the polynomial w with
/// w(z₁(t)) = ψ_c by triangular matching of leading terms of the monomial
/// basis, and split w = g₀ ∘ h through the degree-(m/c) inner factor of f.
pub fn extract_psi_and_w(
    f: &ExactPoly,
    s: &PuiseuxSeries,
    c: usize,
) -> Result<(ExactPoly, ExactPoly, Decomposition)> {
    let m = f.degree() as usize;
    if c == 0 || !m.is_multiple_of(c) || c == m {
        return Err(Error::BadDivisor { d: c, m });
    }
    let inner_degree = m / c;
    let dec = crate::poly::decompose_degree(f, inner_degree)?.ok_or_else(|| {
        Error::InvalidInput(format!(
            "f has no decomposition with inner degree {inner_degree}"
        ))
    })?;
    let psi = psi_subseries(s, c)?;
    let degree_bound = psi.k_min().map(|k| (-k).max(0)).unwrap_or(0);
    let branch = puiseux_branch(f, s.trunc + degree_bound + 1)?;

    // Triangular matching: z₁^j has leading term t^{j/m}, so the top
    // remaining frequency pins one coefficient of w at a time.
    let mut w_coeffs = vec![Rat::zero(); degree_bound as usize + 1];
    let mut remainder = psi.clone();
    let mut power = PuiseuxSeries::monomial(m, 0, Rat::one(), branch.truncation());
    let mut powers = vec![power.clone()];
    for _ in 0..degree_bound {
        power = power.mul(&branch);
        powers.push(power.clone());
    }
    for j in (0..=degree_bound as usize).rev() {
        let coeff = remainder.coeff(-(j as i64));
        if !coeff.is_zero() {
            w_coeffs[j] = coeff.clone();
            remainder = remainder.sub(&powers[j].scale(&coeff));
        }
    }
    if let Some(k) = remainder.k_min() {
        if k <= remainder.truncation() {
            return Err(Error::PuiseuxMatching {
                residual: rat_to_f64(&remainder.coeff(k)).abs(),
            });
        }
    }
    let w = ExactPoly::new(w_coeffs);

    // w must factor through the inner polynomial: base-h digits of w are
    // constants, giving g₀ exactly.
    let g0 = compose_solve(&w, &dec.inner).ok_or_else(|| Error::InconsistentEvidence(
        "recovered w does not factor through the inner polynomial".into(),
    ))?;
    Ok((w, g0, dec))
}

/// Solve w = g₀ ∘ h exactly (base-h expansion); `None` when no polynomial
/// g₀ exists.
pub fn compose_solve(w: &ExactPoly, h: &ExactPoly) -> Option<ExactPoly> {
    if h.degree() < 1 {
        return None;
    }
    if h.degree() == 1 {
        // g₀(z) = w((z - h₀)/h₁)
        let h0 = h.coeff(0);
        let h1 = h.coeff(1);
        let lin = ExactPoly::new(vec![-h0 / h1.clone(), Rat::one() / h1]);
        return Some(w.compose(&lin));
    }
    let mut digits = Vec::new();
    let mut rem = w.clone();
    while !rem.is_zero() {
        let (q, r) = rem.div_rem(h).ok()?;
        if r.degree() > 0 {
            return None;
        }
        digits.push(r.coeff(0));
        rem = q;
    }
    if digits.is_empty() {
        digits.push(Rat::zero());
    }
    Some(ExactPoly::new(digits))
}
