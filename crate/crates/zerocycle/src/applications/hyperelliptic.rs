//! Hyper-elliptic one-cycles on y² + f(x) = t and their reduction to
//! zero-dimensional cycles on the ramification points, including the fully
//! worked case f = x^m with the exact residue rule for the form κ(x)·y·dx.

use num_complex::Complex64;

use crate::cycles::{p_poly, ZeroCycle};
use crate::perm::Permutation;
use crate::poly::{rat_to_f64, ExactPoly};
use crate::{Error, Result};
use num_traits::Zero;

/// One-cycle on the hyper-elliptic curve, written on the basis of simple
/// cycles γ_{i,i+1} joining consecutive ramification points (m even).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCycle {
    m: usize,
    coeffs: Vec<i64>,
}

impl OneCycle {
    pub fn new(m: usize, coeffs: Vec<i64>) -> Result<Self> {
        if !m.is_multiple_of(2) {
            return Err(Error::Unsupported(
                "one-cycle basis implemented for even m only".into(),
            ));
        }
        if coeffs.len() != m - 1 {
            return Err(Error::InvalidInput(format!(
                "one-cycle on {m} points needs {} basis coefficients",
                m - 1
            )));
        }
        Ok(OneCycle { m, coeffs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

/// The isomorphism onto zero-cycles: γ_{i,i+1} ↦ x_{i+1} − x_i, extended
/// linearly. Weights: w₁ = −n₁, wᵢ = n_{i−1} − nᵢ, w_m = n_{m−1}.
pub fn hyperelliptic_phi(gamma: &OneCycle) -> ZeroCycle {
    let m = gamma.m;
    let n = &gamma.coeffs;
    let mut w = vec![0i64; m];
    w[0] = -n[0];
    for i in 1..m - 1 {
        w[i] = n[i - 1] - n[i];
    }
    w[m - 1] = n[m - 2];
    ZeroCycle::new(w).expect("telescoping weights sum to zero")
}

/// Inverse of the isomorphism: nᵢ = −(w₁ + … + wᵢ).
pub fn hyperelliptic_phi_inverse(cycle: &ZeroCycle) -> Result<OneCycle> {
    let m = cycle.m();
    if !m.is_multiple_of(2) {
        return Err(Error::Unsupported(
            "one-cycle basis implemented for even m only".into(),
        ));
    }
    let mut coeffs = Vec::with_capacity(m - 1);
    let mut acc = 0i64;
    for &w in &cycle.weights()[..m - 1] {
        acc += w;
        coeffs.push(-acc);
    }
    OneCycle::new(m, coeffs)
}

/// Exact vanishing rule for ∫_γ κ(x)·y·dx on F = y² + x^m (m even) along a
/// balanced cycle. Near infinity √(t − x^m) contributes m/2 powers of x and
/// the integration one more, so the monomial x^e of κ generates powers in
/// the residue class e + m/2 + 1 — with two exceptional classes:
///
/// - e ≡ m−1 (mod m): the antiderivative is an exact multiple of
///   (t − x^m)^{3/2}, which vanishes at every ramification point, so the
///   monomial is always allowed (the ladder sum has a Γ-pole zero there);
/// - e ≡ m/2−1 (mod m): the generated powers fold onto multiples of m plus
///   one x^{−1} term whose integral is logarithmic; it is obstructed unless
///   the derivative of the cycle polynomial at 1 vanishes.
///
/// Otherwise the class must satisfy the power rule P_C(ε^{e+m/2+1}) = 0,
/// decided by cyclotomic divisibility.
pub fn hyperelliptic_xm_condition(
    m: usize,
    cycle: &ZeroCycle,
    kappa: &ExactPoly,
) -> Result<bool> {
    if !m.is_multiple_of(2) || m < 2 {
        return Err(Error::Unsupported(
            "the exact rule applies to y² + x^m with m even".into(),
        ));
    }
    let allowed = super::zm_solutions(m, cycle)?;
    let tau = Permutation::full_cycle(m);
    let p_c = p_poly(cycle, &tau)?;
    for (e, c) in kappa.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if e % m == m - 1 {
            continue;
        }
        let residue_class = (e + m / 2 + 1) % m;
        if residue_class == 0 {
            if !p_c.derivative().eval(&crate::poly::rat(1)).is_zero() {
                return Ok(false);
            }
        } else if !allowed.contains(&residue_class) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sampling oracle for the same integrals: evaluate
/// Σᵢ nᵢ g(xᵢ(t), t), with g the truncated series antiderivative of
/// κ(x)√(t − x^m), at each t. Returns residuals normalized by the term
/// magnitude scale, so a vanishing integral reads below ~1e-8.
pub fn hyperelliptic_series_oracle(
    m: usize,
    cycle: &ZeroCycle,
    kappa: &ExactPoly,
    ts: &[Complex64],
) -> Result<Vec<f64>> {
    if !m.is_multiple_of(2) || m < 2 {
        return Err(Error::Unsupported(
            "the sampling oracle applies to y² + x^m with m even".into(),
        ));
    }
    if cycle.m() != m {
        return Err(Error::InvalidInput("cycle size does not match m".into()));
    }
    let tau = Permutation::full_cycle(m);
    let p_c = p_poly(cycle, &tau)?;
    // P_C(ε^r) for each residue class r, numerically.
    let eps = |r: i64| -> Complex64 {
        Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * (r.rem_euclid(m as i64) as f64) / m as f64,
        )
    };
    let p_at: Vec<Complex64> = (0..m as i64)
        .map(|r| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, c) in p_c.coeffs().iter().enumerate() {
                acc += rat_to_f64(c) * eps(r).powu(i as u32);
            }
            acc
        })
        .collect();
    // Σ nᵢ (i−1): coefficient of the logarithmic obstruction.
    let w1: f64 = cycle
        .weights()
        .iter()
        .enumerate()
        .map(|(i, &n)| n as f64 * i as f64)
        .sum();
    let total_weight: f64 = cycle.weights().iter().map(|&n| n.abs() as f64).sum();

    const TERMS: usize = 600_000;
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let log_t = t.ln();
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for (e, c) in kappa.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ce = rat_to_f64(c);
            // Constant magnitude of every ladder term: |t|^{(e + m/2 + 1)/m}.
            let lead_pow = (e as f64 + m as f64 / 2.0 + 1.0) / m as f64;
            let t_lead = (lead_pow * log_t).exp();
            scale += ce.abs() * t_lead.norm() * total_weight;
            let mut binom = 1.0f64; // C(1/2, j), iteratively
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..TERMS {
                if j > 0 {
                    binom *= (0.5 - (j as f64 - 1.0)) / j as f64;
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let p = e as i64 + m as i64 / 2 - (m as i64) * j as i64 + 1;
                if p == 0 {
                    // log x summed over the branches
                    let log_sum = Complex64::new(0.0, 2.0 * std::f64::consts::PI / m as f64) * w1;
                    acc += binom * sign * log_sum;
                } else {
                    let pr = p_at[p.rem_euclid(m as i64) as usize];
                    if pr.norm() > 1e-13 {
                        acc += binom * sign / p as f64 * pr;
                    }
                }
            }
            value += Complex64::new(0.0, ce) * t_lead * acc;
        }
        out.push(value.norm() / scale.max(1e-300));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn phi_on_basis_elements() {
        // γ_{12} ↦ x₂ − x₁
        let gamma = OneCycle::new(4, vec![1, 0, 0]).unwrap();
        assert_eq!(hyperelliptic_phi(&gamma).weights(), &[-1, 1, 0, 0]);
        // telescoping: n = (1,1,0) ↦ x₃ − x₁
        let gamma = OneCycle::new(4, vec![1, 1, 0]).unwrap();
        assert_eq!(hyperelliptic_phi(&gamma).weights(), &[-1, 0, 1, 0]);
    }

    #[test]
    fn phi_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = 2 * rng.gen_range(1..=5usize);
            let coeffs: Vec<i64> = (0..m - 1).map(|_| rng.gen_range(-9..=9)).collect();
            let gamma = OneCycle::new(m, coeffs).unwrap();
            let cycle = hyperelliptic_phi(&gamma);
            assert_eq!(hyperelliptic_phi_inverse(&cycle).unwrap(), gamma);
        }
    }

    #[test]
    fn phi_rejects_odd_m() {
        assert!(OneCycle::new(5, vec![1, 0, 0, 0]).is_err());
        let c = ZeroCycle::new(vec![1, -1, 0]).unwrap();
        assert!(hyperelliptic_phi_inverse(&c).is_err());
    }

    fn alternating(m: usize) -> ZeroCycle {
        ZeroCycle::new((0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()).unwrap()
    }

    #[test]
    fn x4_condition_table() {
        let c = alternating(4);
        let x = ExactPoly::identity();
        let x2 = ExactPoly::monomial(rat(1), 2);
        let x3 = ExactPoly::monomial(rat(1), 3);
        // κ₁(x⁴) with a constant shift
        let shifted = ExactPoly::monomial(rat(2), 4).add(&ExactPoly::one());
        assert!(hyperelliptic_xm_condition(4, &c, &x2).unwrap());
        assert!(hyperelliptic_xm_condition(4, &c, &x3).unwrap());
        assert!(!hyperelliptic_xm_condition(4, &c, &x).unwrap());
        assert!(hyperelliptic_xm_condition(4, &c, &shifted).unwrap());
        assert!(hyperelliptic_xm_condition(4, &c, &ExactPoly::zero()).unwrap());
    }

    #[test]
    fn oracle_cross_validates_the_table() {
        let c = alternating(4);
        let ts: Vec<Complex64> = (0..6)
            .map(|k| Complex64::from_polar(2.0 + 0.3 * k as f64, 0.5 + 0.4 * k as f64))
            .collect();
        for (kappa, expect) in [
            (ExactPoly::monomial(rat(1), 2), true),
            (ExactPoly::monomial(rat(1), 3), true),
            (ExactPoly::identity(), false),
            (ExactPoly::monomial(rat(2), 4).add(&ExactPoly::one()), true),
        ] {
            let residuals = hyperelliptic_series_oracle(4, &c, &kappa, &ts).unwrap();
            let worst = residuals.iter().fold(0.0f64, |a, &b| a.max(b));
            if expect {
                assert!(worst < 1e-8, "κ = {kappa}: residual {worst}");
            } else {
                assert!(worst > 1e-4, "κ = {kappa}: residual {worst}");
            }
        }
    }
}
