//! Tangential canard centers of slow-fast systems x' = y − f(x),
//! y' = ε(a₀ − x·Ḡ(x)): given a Morse-normalized f and a compositional
//! factor identifying the two local branches, synthesize the slow divergence
//! ratio Ḡ that kills the first-order return integral, and the quadrature
//! oracle for that integral.

use crate::poly::{ExactPoly, Rat};
use crate::puiseux::compose_solve;
use crate::{Error, Result};
use num_traits::{One, Zero};

/// Exact ratio of polynomials, reduced.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn {
    pub num: ExactPoly,
    pub den: ExactPoly,
}

impl RationalFn {
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        // Normalize the denominator monic.
        let lead = den.leading();
        Ok(RationalFn {
            num: num.scale(&(Rat::one() / lead.clone())),
            den: den.scale(&(Rat::one() / lead)),
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let z = num_complex::Complex64::new(x, 0.0);
        (self.num.eval_complex(z) / self.den.eval_complex(z)).re
    }
}

/// The two local branches z₁(t) < 0 < z₂(t) of f(x) = t near the Morse
/// point at the origin, for small real t > 0.
fn local_branches(f: &ExactPoly, t: f64) -> Result<(f64, f64)> {
    let newton = |start: f64| -> Option<f64> {
        let mut x = start;
        for _ in 0..80 {
            let val = rat_eval(f, x) - t;
            let d = rat_eval(&f.derivative(), x);
            if d.abs() < 1e-300 {
                return None;
            }
            let step = val / d;
            x -= step;
            if step.abs() < 1e-14 * (1.0 + x.abs()) {
                return Some(x);
            }
        }
        None
    };
    let seed = (2.0 * t).sqrt();
    let z1 = newton(-seed).ok_or_else(|| Error::InvalidInput("branch iteration diverged".into()))?;
    let z2 = newton(seed).ok_or_else(|| Error::InvalidInput("branch iteration diverged".into()))?;
    if !(z1 < 0.0 && 0.0 < z2) {
        return Err(Error::InvalidInput(
            "local branches did not straddle the origin".into(),
        ));
    }
    Ok((z1, z2))
}

fn rat_eval(p: &ExactPoly, x: f64) -> f64 {
    p.eval_complex(num_complex::Complex64::new(x, 0.0)).re
}

fn check_morse_normalized(f: &ExactPoly) -> Result<()> {
    let ok = f.coeff(0).is_zero()
        && f.coeff(1).is_zero()
        && f.coeff(2) == crate::poly::ratio(1, 2);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "slow-fast synthesis needs f(x) = x²/2 + O(x³)".into(),
        ))
    }
}

/// Synthesize Ḡ(x) = −f'(x)² / (g₀'(h(x))·h'(x)) for a factor h with
/// f = f₀ ∘ h and h equal on the two local Morse branches. Errors when h is
/// not a compositional factor of f or not constant on the branch pair.
pub fn slow_fast_gbar(f: &ExactPoly, h: &ExactPoly, g0: &ExactPoly) -> Result<RationalFn> {
    check_morse_normalized(f)?;
    if compose_solve(f, h).is_none() {
        return Err(Error::InvalidInput(
            "h is not a compositional factor of f".into(),
        ));
    }
    // h must identify the local branch pair.
    let (z1, z2) = local_branches(f, 1e-2)?;
    let h1 = rat_eval(h, z1);
    let h2 = rat_eval(h, z2);
    if (h1 - h2).abs() > 1e-8 * (1.0 + h1.abs().max(h2.abs())) {
        return Err(Error::InvalidInput(
            "h does not identify the two local branches".into(),
        ));
    }
    let df = f.derivative();
    let num = df.mul(&df).neg();
    let den = g0.compose(h).derivative();
    if den.is_zero() {
        return Err(Error::InvalidInput("g₀∘h has zero derivative".into()));
    }
    RationalFn::new(num, den)
}

/// Return integral I(t) = ∫_{z₁(t)}^{z₂(t)} x·w(x)·F²(x) dx with
/// w = −x/Ḡ and F = f'(x)/x, i.e. the quadrature of −f'(x)²/Ḡ(x) between
/// the two tracked local branches. Used as the oracle that a synthesized Ḡ
/// produces a first-order center.
pub fn slow_fast_i(f: &ExactPoly, gbar: &RationalFn, ts: &[f64]) -> Result<Vec<f64>> {
    check_morse_normalized(f)?;
    let df = f.derivative();
    let integrand_num = df.mul(&df).neg().mul(&gbar.den);
    let integrand = RationalFn::new(integrand_num, gbar.num.clone())?;
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        if t <= 0.0 {
            return Err(Error::InvalidInput(
                "samples must be small positive t".into(),
            ));
        }
        let (z1, z2) = local_branches(f, t)?;
        out.push(adaptive_simpson(
            &|x| integrand.eval_f64(x),
            z1,
            z2,
            1e-12,
            24,
        ));
    }
    Ok(out)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let mid = 0.5 * (a + b);
        let left = simpson(f, a, mid);
        let right = simpson(f, mid, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, mid, left, tol / 2.0, depth - 1)
                + rec(f, mid, b, right, tol / 2.0, depth - 1)
        }
    }
    let whole = simpson(f, a, b);
    rec(f, a, b, whole, tol, depth)
}
