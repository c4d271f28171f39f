//! The polynomial moment problem ∫₀¹ f^k q = 0 (k ≥ 1) as a tangential
//! center problem on the special cycle that weights the branches near 0
//! against the branches near 1.

use num_complex::Complex64;

use crate::abelian::BranchSystem;
use crate::cycles::{is_totally_unbalanced, ZeroCycle, DEFAULT_CAP};
use crate::monodromy::monodromy_data;
use crate::poly::{rat, ExactPoly, Rat};
use crate::{Error, Result};
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct MomentCycleReport {
    pub cycle: ZeroCycle,
    /// Multiplicity of the root 0 of f − f(0).
    pub n0: usize,
    /// Multiplicity of the root 1 of f − f(1).
    pub n1: usize,
    pub totally_unbalanced: bool,
}

/// Build the moment cycle of f (requires f(0) = f(1) exactly): weight n₁ on
/// each branch that continues to 0 and −n₀ on each branch that continues to
/// 1 as t approaches f(0). The report asserts total unbalancedness; a
/// numerical contradiction is an error, not a report.
pub fn moment_cycle(f: &ExactPoly) -> Result<MomentCycleReport> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput("moment cycle needs deg f >= 2".into()));
    }
    let f0 = f.eval(&Rat::zero());
    let f1 = f.eval(&rat(1));
    if f0 != f1 {
        return Err(Error::InvalidInput(format!(
            "moment problem needs f(0) = f(1); got {f0} and {f1}"
        )));
    }
    let shifted = f.sub(&ExactPoly::constant(f0.clone()));
    let n0 = shifted
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(0);
    let mut n1 = 0usize;
    let mut rem = shifted.clone();
    let z_minus_1 = ExactPoly::from_ints(&[-1, 1]);
    loop {
        let (q, r) = rem.div_rem(&z_minus_1)?;
        if !r.is_zero() {
            break;
        }
        n1 += 1;
        rem = q;
    }
    if n0 == 0 || n1 == 0 {
        return Err(Error::InvalidInput(
            "f - f(0) must vanish at both 0 and 1".into(),
        ));
    }

    // Separation radii: a tenth of the distance to the nearest other root.
    let all_roots = crate::roots::roots_of(&shifted)?.roots;
    let dist_to_other = |p: Complex64| -> f64 {
        all_roots
            .iter()
            .map(|&r| (r - p).norm())
            .filter(|&d| d > 1e-9)
            .fold(f64::INFINITY, f64::min)
    };
    let r0 = 0.1 * dist_to_other(Complex64::new(0.0, 0.0));
    let r1 = 0.1 * dist_to_other(Complex64::new(1.0, 0.0));

    let data = monodromy_data(f)?;
    let t_c = Complex64::new(crate::poly::rat_to_f64(&f0), 0.0);
    let rho_start = {
        let nearest_other_cv = data
            .critical_values
            .iter()
            .map(|&cv| (cv - t_c).norm())
            .filter(|&d| d > 1e-9)
            .fold(f64::INFINITY, f64::min);
        if nearest_other_cv.is_finite() {
            0.5 * nearest_other_cv
        } else {
            0.5 * (1.0 + t_c.norm())
        }
    };
    let branches = BranchSystem::from_data(f.clone(), data);

    // Track toward t = f(0) along a few directions, shrinking the offset
    // until exactly n₀ branches sit near 0 and n₁ near 1.
    let mut identified: Option<(Vec<usize>, Vec<usize>)> = None;
    'outer: for theta in [0.9f64, 2.1, 3.9, 5.1] {
        let mut rho = rho_start;
        for _ in 0..40 {
            let target = t_c + Complex64::from_polar(rho, theta);
            match branches.fiber_at(target) {
                Ok(fiber) => {
                    let near0: Vec<usize> = fiber
                        .iter()
                        .enumerate()
                        .filter(|(_, z)| z.norm() <= r0)
                        .map(|(i, _)| i)
                        .collect();
                    let near1: Vec<usize> = fiber
                        .iter()
                        .enumerate()
                        .filter(|(_, z)| (*z - Complex64::new(1.0, 0.0)).norm() <= r1)
                        .map(|(i, _)| i)
                        .collect();
                    if near0.len() == n0 && near1.len() == n1 {
                        identified = Some((near0, near1));
                        break 'outer;
                    }
                    rho /= 2.0;
                }
                Err(_) => {
                    // Path clipped a critical value; try another direction.
                    continue 'outer;
                }
            }
        }
    }
    let (near0, near1) = identified.ok_or_else(|| {
        Error::InconsistentEvidence("could not identify the branches near 0 and 1".into())
    })?;

    let mut weights = vec![0i64; branches.data.m];
    for &i in &near0 {
        weights[i] = n1 as i64;
    }
    for &i in &near1 {
        weights[i] = -(n0 as i64);
    }
    let cycle = ZeroCycle::new(weights)?;

    let classification = is_totally_unbalanced(f, &cycle, &branches.data, DEFAULT_CAP)?;
    if !classification.totally_unbalanced {
        return Err(Error::InconsistentEvidence(
            "moment cycle classified as not totally unbalanced".into(),
        ));
    }
    Ok(MomentCycleReport { cycle, n0, n1, totally_unbalanced: true })
}

/// Exact moments ∫₀¹ f^k(w) q(w) dw for k = 1..=K, by the antiderivative of
/// the polynomial integrand — no quadrature.
pub fn moment_oracle(f: &ExactPoly, q: &ExactPoly, k_max: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(k_max);
    let mut fk = f.clone();
    for _ in 1..=k_max {
        let anti = fk.mul(q).antiderivative();
        out.push(anti.eval(&rat(1)) - anti.eval(&Rat::zero()));
        fk = fk.mul(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::is_identically_zero;
    use crate::poly::ratio;

    fn moment_f() -> ExactPoly {
        // z²(z−1)²
        ExactPoly::from_ints(&[0, 0, 1]).mul(&ExactPoly::from_ints(&[-1, 1]).pow(2))
    }

    #[test]
    fn moment_cycle_of_squared_product() {
        let report = moment_cycle(&moment_f()).unwrap();
        assert_eq!(report.n0, 2);
        assert_eq!(report.n1, 2);
        assert!(report.totally_unbalanced);
        let weights = report.cycle.weights();
        assert_eq!(weights.iter().filter(|&&w| w == 2).count(), 2);
        assert_eq!(weights.iter().filter(|&&w| w == -2).count(), 2);
    }

    #[test]
    fn moment_cycle_of_simple_parabola() {
        // f = z² − z: one branch near each endpoint, a simple cycle.
        let f = ExactPoly::from_ints(&[0, -1, 1]);
        let report = moment_cycle(&f).unwrap();
        assert_eq!((report.n0, report.n1), (1, 1));
        let mut w = report.cycle.weights().to_vec();
        w.sort_unstable();
        assert_eq!(w, vec![-1, 1]);
    }

    #[test]
    fn moment_cycle_with_asymmetric_multiplicities() {
        // f = z²(z−1)(z−3): double root at 0, simple roots at 1 and 3;
        // weights n1 = 1 on the two branches near 0 and −n0 = −2 near 1.
        let f = ExactPoly::from_ints(&[0, 0, 1])
            .mul(&ExactPoly::from_ints(&[-1, 1]))
            .mul(&ExactPoly::from_ints(&[-3, 1]));
        let report = moment_cycle(&f).unwrap();
        assert_eq!((report.n0, report.n1), (2, 1));
        let mut w = report.cycle.weights().to_vec();
        w.sort_unstable();
        assert_eq!(w, vec![-2, 0, 1, 1]);
        assert!(report.totally_unbalanced);
        // Equivalence spot check: q = f' telescopes, q = 1 does not.
        assert!(moment_oracle(&f, &f.derivative(), 10).iter().all(|m| m.is_zero()));
        assert!(!moment_oracle(&f, &ExactPoly::one(), 10)[0].is_zero());
    }

    #[test]
    fn rejects_unequal_endpoints() {
        let f = ExactPoly::from_ints(&[0, 0, 1]); // z², f(0) ≠ f(1)
        assert!(moment_cycle(&f).is_err());
    }

    #[test]
    fn exact_moments() {
        let f = moment_f();
        // q = f': every moment telescopes to zero.
        let zeros = moment_oracle(&f, &f.derivative(), 12);
        assert!(zeros.iter().all(|m| m.is_zero()));
        // q = 1: first moment is ∫₀¹ f = 1/30.
        let ones = moment_oracle(&f, &ExactPoly::one(), 3);
        assert_eq!(ones[0], ratio(1, 30));
        assert!(!ones[1].is_zero());
        // q = g' for g = g₀∘h with f = f₀∘h and h(0) = h(1): all moments 0.
        let h = ExactPoly::from_ints(&[0, -1, 1]); // z² − z, h(0) = h(1)
        let g = ExactPoly::from_ints(&[0, 3, 1]).compose(&h);
        let all = moment_oracle(&f, &g.derivative(), 12);
        assert!(all.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn moment_equivalence_with_cycle_test() {
        // Vanishing of the first 12 exact moments matches the vanishing
        // test on the moment cycle with g the antiderivative of q.
        let f = moment_f();
        let report = moment_cycle(&f).unwrap();
        let cases: Vec<(ExactPoly, bool)> = vec![
            (f.derivative(), true),
            (ExactPoly::one(), false),
            (
                ExactPoly::from_ints(&[0, 3, 1])
                    .compose(&ExactPoly::from_ints(&[0, -1, 1]))
                    .derivative(),
                true,
            ),
        ];
        for (q, expect) in cases {
            let moments = moment_oracle(&f, &q, 12);
            let all_zero = moments.iter().all(|m| m.is_zero());
            assert_eq!(all_zero, expect, "moments for q = {q}");
            let g = q.antiderivative();
            let ev = is_identically_zero(&f, &g, &report.cycle).unwrap();
            assert_eq!(ev.passed, expect, "cycle test for q = {q}");
        }
    }
}
