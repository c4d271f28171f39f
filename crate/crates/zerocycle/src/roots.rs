//! Simultaneous complex root finding (Aberth–Ehrlich iteration), with exact
//! squarefree deflation for multiple roots of rational polynomials.

use num_complex::Complex64;

use crate::poly::ExactPoly;
use crate::{Error, Result};

const MAX_SWEEPS: u32 = 200;
const CONVERGENCE: f64 = 1e-14;

/// Roots of a polynomial with the worst attained residual `|p(root)|`.
#[derive(Debug, Clone)]
pub struct ComplexRootSet {
    pub roots: Vec<Complex64>,
    pub multiplicities: Vec<u32>,
    pub residual_bound: f64,
}

impl ComplexRootSet {
    /// Roots repeated according to multiplicity.
    pub fn with_multiplicity(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for (r, &m) in self.roots.iter().zip(&self.multiplicities) {
            for _ in 0..m {
                out.push(*r);
            }
        }
        out
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn derivative_coeffs(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

/// Initial guesses on a circle slightly inside the Cauchy root bound, with
/// an irrational angular offset so that symmetric polynomials do not start
/// on a symmetry axis.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    let radius = radius.clamp(1e-3, 1e8);
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.437;
            Complex64::from_polar(0.7 * radius, theta)
        })
        .collect()
}

/// All roots of a complex-coefficient polynomial, assumed squarefree (or
/// close to it). Returns the roots in the iteration's order together with
/// the worst residual.
pub fn roots_complex(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut cs: Vec<Complex64> = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.norm() == 0.0) {
        cs.pop();
    }
    if cs.len() < 2 {
        return Err(Error::InvalidInput(
            "root finding needs degree >= 1".into(),
        ));
    }
    let deriv = derivative_coeffs(&cs);
    let mut zs = initial_guesses(&cs);
    let n = zs.len();
    for sweep in 0..MAX_SWEEPS {
        let mut max_update = 0.0f64;
        for i in 0..n {
            let zi = zs[i];
            let p = horner(&cs, zi);
            let dp = horner(&deriv, zi);
            if !p.is_finite() || !dp.is_finite() {
                return Err(Error::RootFindingStalled {
                    sweeps: sweep,
                    residual: f64::INFINITY,
                });
            }
            let newton = if dp.norm() == 0.0 {
                // Nudge off an exact critical point.
                Complex64::new(1e-12, 1e-12)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    if d.norm() > 0.0 {
                        repulsion += 1.0 / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let delta = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            zs[i] = zi - delta;
            let rel = delta.norm() / (1.0 + zs[i].norm());
            max_update = max_update.max(rel);
        }
        if max_update < CONVERGENCE {
            return Ok(zs);
        }
    }
    let residual = zs.iter().map(|&z| horner(&cs, z).norm()).fold(0.0, f64::max);
    // Accept a stalled iterate only if the residuals are already tiny.
    let scale = cs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if residual <= 1e-10 * (1.0 + scale) {
        return Ok(zs);
    }
    Err(Error::RootFindingStalled {
        sweeps: MAX_SWEEPS,
        residual,
    })
}

fn residual_of(coeffs: &[Complex64], roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|&z| horner(coeffs, z).norm())
        .fold(0.0, f64::max)
}

/// All roots of an exact rational polynomial, with multiplicity recovered by
/// Yun's squarefree decomposition so every numeric solve sees simple roots.
/// The residual bound is the attained maximum of |p(root)| on the source
/// polynomial itself.
pub fn roots_of(p: &ExactPoly) -> Result<ComplexRootSet> {
    if p.degree() < 1 {
        return Err(Error::InvalidInput(
            "root finding needs degree >= 1".into(),
        ));
    }
    let mut roots = Vec::new();
    let mut multiplicities = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let cs = factor.complex_coeffs();
        for r in roots_complex(&cs)? {
            roots.push(r);
            multiplicities.push(mult);
        }
    }
    let source = p.complex_coeffs();
    let residual = residual_of(&source, &roots);
    Ok(ComplexRootSet {
        roots,
        multiplicities,
        residual_bound: residual.max(1e-15),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn sort_by_arg(mut zs: Vec<Complex64>) -> Vec<Complex64> {
        zs.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        zs
    }

    #[test]
    fn quadratic_roots() {
        let p = ExactPoly::from_ints(&[-1, 0, 1]); // z^2 - 1
        let rs = roots_of(&p).unwrap();
        let mut re: Vec<f64> = rs.roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cube_roots_of_eight() {
        let p = ExactPoly::from_ints(&[-8, 0, 0, 1]); // z^3 - 8
        let rs = sort_by_arg(roots_of(&p).unwrap().roots);
        let expect = sort_by_arg(
            (0..3)
                .map(|k| {
                    Complex64::from_polar(2.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0)
                })
                .collect(),
        );
        for (a, b) in rs.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn critical_points_of_biquadratic() {
        // (z^4 - z^2)' = 4z^3 - 2z has roots 0, ±1/√2; critical values 0, -1/4
        let f = ExactPoly::from_ints(&[0, 0, -1, 0, 1]);
        let rs = roots_of(&f.derivative()).unwrap();
        let mut crit: Vec<f64> = rs.roots.iter().map(|&z| f.eval_complex(z).re).collect();
        crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((crit[0] + 0.25).abs() < 1e-10);
        assert!(crit[2].abs() < 1e-10);
    }

    #[test]
    fn multiple_roots_deflated() {
        // z^2 (z-1)^3
        let p = ExactPoly::from_ints(&[0, 0, 1]).mul(&ExactPoly::from_ints(&[-1, 1]).pow(3));
        let rs = roots_of(&p).unwrap();
        let mut pairs: Vec<(f64, u32)> = rs
            .roots
            .iter()
            .zip(&rs.multiplicities)
            .map(|(z, &m)| (z.re, m))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert_eq!(pairs.len(), 2);
        assert!(pairs[0].0.abs() < 1e-12 && pairs[0].1 == 2);
        assert!((pairs[1].0 - 1.0).abs() < 1e-12 && pairs[1].1 == 3);
        assert_eq!(rs.with_multiplicity().len(), 5);
    }

    #[test]
    fn residual_bound_on_random_polynomials() {
        // max |p(root)| <= 1e-9 (1 + max |coeff|) for degree <= 10,
        // coefficients in [-10, 10]
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let deg = rng.gen_range(1..=10);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10..=10)).collect();
            // Keep the Cauchy root bound ≤ 3: past that the f64 ulp floor at
            // the root exceeds the absolute residual bound asserted below.
            let lead = rng.gen_range(5..=10) * if rng.gen_bool(0.5) { 1 } else { -1 };
            coeffs[deg] = lead;
            let p = ExactPoly::from_ints(&coeffs);
            if p.degree() < 1 {
                continue;
            }
            let rs = roots_of(&p).unwrap();
            let cs = p.complex_coeffs();
            let worst = rs
                .with_multiplicity()
                .iter()
                .map(|&z| horner(&cs, z).norm())
                .fold(0.0, f64::max);
            let bound = 1e-9 * (1.0 + p.max_coeff_abs());
            assert!(
                worst <= bound,
                "residual {worst:.3e} over bound {bound:.3e} for {p}"
            );
            assert!(rs.residual_bound <= bound);
        }
    }

    #[test]
    fn high_degree_power() {
        let mut coeffs = vec![rat(0); 211];
        coeffs[210] = rat(1);
        coeffs[0] = rat(-3);
        let p = ExactPoly::new(coeffs); // z^210 - 3
        let rs = roots_of(&p).unwrap();
        assert_eq!(rs.roots.len(), 210);
        for z in &rs.roots {
            assert!((z.norm() - 3f64.powf(1.0 / 210.0)).abs() < 1e-9);
        }
    }
}
