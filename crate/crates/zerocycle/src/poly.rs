//! Exact univariate polynomial arithmetic over ℚ: composition and
//! decomposition, cyclotomic polynomials, exact division and gcd.
//!
//! All arithmetic in this module is exact; nothing here rounds. Floating
//! point appears only in the conversion helpers used by the numeric kernels.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::{divisors, Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// The zero polynomial is the empty coefficient vector, with degree −1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    coeffs: Vec<Rat>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ExactPoly::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        ExactPoly::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn identity() -> Self {
        ExactPoly::new(vec![rat(0), rat(1)])
    }

    /// `c · z^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        ExactPoly::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ExactPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Degree, with −1 as the zero-polynomial sentinel.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rat_to_f64(c);
        }
        acc
    }

    pub fn complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(rat_to_f64(c), 0.0))
            .collect()
    }

    pub fn derivative(&self) -> ExactPoly {
        if self.coeffs.len() <= 1 {
            return ExactPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        ExactPoly::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> ExactPoly {
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = c / rat(k as i64 + 1);
        }
        ExactPoly::new(coeffs)
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        ExactPoly::new(coeffs)
    }

    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rat) -> ExactPoly {
        if s.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        if self.is_zero() || other.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        ExactPoly::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> ExactPoly {
        let mut base = self.clone();
        let mut acc = ExactPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact Euclidean division: `self = q · d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &ExactPoly) -> Result<(ExactPoly, ExactPoly)> {
        if d.is_zero() {
            return Err(Error::InvalidInput("division by zero polynomial".into()));
        }
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if rem.len() <= dd {
            return Ok((ExactPoly::zero(), self.clone()));
        }
        let lead = d.coeffs.last().unwrap();
        let mut q = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] / lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                let sub = dc * &c;
                rem[idx] -= sub;
            }
            q[k - dd] = c;
        }
        Ok((ExactPoly::new(q), ExactPoly::new(rem)))
    }

    /// Exact divisibility test: true iff division of `p` by `self` leaves
    /// zero remainder.
    pub fn divides(&self, p: &ExactPoly) -> bool {
        match p.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading();
            a.scale(&(Rat::one() / lead))
        }
    }

    /// Squarefree part `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> ExactPoly {
        if self.degree() <= 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g).expect("gcd divides");
        let lead = q.leading();
        q.scale(&(Rat::one() / lead))
    }

    /// Yun's squarefree decomposition: returns `(aᵢ, i)` with
    /// `self = lc · Π aᵢ^i`, each `aᵢ` monic squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(ExactPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() <= 0 {
            return out;
        }
        let f = {
            let lead = self.leading();
            self.scale(&(Rat::one() / lead))
        };
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).expect("gcd divides").0;
        let mut c = df.div_rem(&a).expect("gcd divides").0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        while b.degree() > 0 {
            let a_i = b.gcd(&d);
            if a_i.degree() > 0 {
                out.push((a_i.clone(), i));
            }
            b = b.div_rem(&a_i).expect("gcd divides").0;
            c = d.div_rem(&a_i).expect("gcd divides").0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// `self(q(z))`, exact.
    pub fn compose(&self, q: &ExactPoly) -> ExactPoly {
        let mut acc = ExactPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q);
            acc = acc.add(&ExactPoly::constant(c.clone()));
        }
        acc
    }

    /// Largest absolute value among the coefficients, as f64.
    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| rat_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }

    /// True when every coefficient is an integer.
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back on a quotient of leading digits for giant numerators.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// A functional decomposition `source = outer ∘ inner`, with the inner
/// factor normalized monic with zero constant term; the affine freedom in a
/// decomposition class is absorbed into the outer factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub outer: ExactPoly,
    pub inner: ExactPoly,
}

impl Decomposition {
    pub fn recompose(&self) -> ExactPoly {
        self.outer.compose(&self.inner)
    }
}

/// Find `f = outer ∘ inner` with `deg inner = d`, inner monic with zero
/// constant term, by matching the top coefficients of `f` against the powers
/// of the candidate inner factor, then expanding `f` in base `inner`.
/// Returns `None` when no such decomposition exists.
pub fn decompose_degree(f: &ExactPoly, d: usize) -> Result<Option<Decomposition>> {
    let deg = f.degree();
    if deg < 1 {
        return Err(Error::InvalidInput("cannot decompose a constant".into()));
    }
    let m = deg as usize;
    if d == 0 || !m.is_multiple_of(d) {
        return Err(Error::BadDivisor { d, m });
    }
    if d == 1 {
        return Ok(Some(Decomposition {
            outer: f.clone(),
            inner: ExactPoly::identity(),
        }));
    }
    if d == m {
        // inner = (f - f(0)) / lc, outer = lc·z + f(0)
        let lc = f.leading();
        let c0 = f.coeff(0);
        let inner = f
            .sub(&ExactPoly::constant(c0.clone()))
            .scale(&(Rat::one() / lc.clone()));
        let outer = ExactPoly::new(vec![c0, lc]);
        return Ok(Some(Decomposition { outer, inner }));
    }

    let e = (m / d) as u32;
    let lc = f.leading();
    // Solve for the inner coefficients one at a time from the top of
    // lc·inner^e, which determines coefficients m-1 .. m-d+1 of f.
    let mut inner = ExactPoly::monomial(Rat::one(), d);
    for k in 1..d {
        let p = inner.pow(e);
        let target = f.coeff(m - k) / &lc;
        let current = p.coeff(m - k);
        let c = (target - current) / rat(e as i64);
        if !c.is_zero() {
            let mut coeffs = inner.coeffs.clone();
            coeffs[d - k] = c;
            inner = ExactPoly::new(coeffs);
        }
    }

    // Base-inner expansion of f: every digit must be a constant.
    let mut digits = Vec::with_capacity(e as usize + 1);
    let mut rem = f.clone();
    for _ in 0..=e {
        let (q, r) = rem.div_rem(&inner)?;
        if r.degree() > 0 {
            return Ok(None);
        }
        digits.push(r.coeff(0));
        rem = q;
    }
    if !rem.is_zero() {
        return Ok(None);
    }
    let outer = ExactPoly::new(digits);
    debug_assert_eq!(outer.compose(&inner), *f);
    Ok(Some(Decomposition { outer, inner }))
}

/// The divisor set D(f): divisors `d` of `deg f` admitting a decomposition
/// with inner degree `d`, each with one normalized representative. Always
/// contains 1 and `deg f`.
pub fn decomposition_set(f: &ExactPoly) -> Result<Vec<(usize, Decomposition)>> {
    let deg = f.degree();
    if deg < 2 {
        return Err(Error::InvalidInput(format!(
            "decomposition set needs deg f >= 2, got {deg}"
        )));
    }
    let m = deg as usize;
    let mut out = Vec::new();
    for d in divisors(m as u64) {
        if let Some(dec) = decompose_degree(f, d as usize)? {
            out.push((d as usize, dec));
        }
    }
    Ok(out)
}

/// The m-th cyclotomic polynomial Φ_m, by iterated exact division of
/// `z^m − 1` by Φ_d over the proper divisors d of m. Integer coefficients.
pub fn cyclotomic(m: usize) -> ExactPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut cache: Vec<Option<ExactPoly>> = vec![None; m + 1];
    cyclotomic_memo(m, &mut cache)
}

fn cyclotomic_memo(m: usize, cache: &mut Vec<Option<ExactPoly>>) -> ExactPoly {
    if let Some(p) = &cache[m] {
        return p.clone();
    }
    // z^m - 1
    let mut coeffs = vec![Rat::zero(); m + 1];
    coeffs[0] = rat(-1);
    coeffs[m] = rat(1);
    let mut p = ExactPoly::new(coeffs);
    for d in divisors(m as u64) {
        let d = d as usize;
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_memo(d, cache);
        let (q, r) = p.div_rem(&phi_d).expect("cyclotomic division is exact");
        debug_assert!(r.is_zero());
        p = q;
    }
    cache[m] = Some(p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::totient;

    fn z_pow(k: usize) -> ExactPoly {
        ExactPoly::monomial(rat(1), k)
    }

    #[test]
    fn compose_power_law() {
        let z2 = z_pow(2);
        assert_eq!(z2.compose(&z2), z_pow(4));
    }

    #[test]
    fn compose_chebyshev_t2_t2_gives_t4() {
        // T2 = 2z^2 - 1, T4 = 8z^4 - 8z^2 + 1
        let t2 = ExactPoly::from_ints(&[-1, 0, 2]);
        let t4 = ExactPoly::from_ints(&[1, 0, -8, 0, 8]);
        assert_eq!(t2.compose(&t2), t4);
    }

    #[test]
    fn compose_identity() {
        let p = ExactPoly::from_ints(&[3, -1, 0, 7]);
        assert_eq!(p.compose(&ExactPoly::identity()), p);
        assert_eq!(ExactPoly::identity().compose(&p), p);
    }

    #[test]
    fn div_rem_exact() {
        let p = ExactPoly::from_ints(&[-1, 1, -1, 1]); // z^3 - z^2 + z - 1
        let d = ExactPoly::from_ints(&[1, 0, 1]); // z^2 + 1
        let (q, r) = p.div_rem(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, ExactPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn divides_examples() {
        // (z-1)(z^2+1) divides z^3 - z^2 + z - 1
        let d = ExactPoly::from_ints(&[-1, 1]).mul(&ExactPoly::from_ints(&[1, 0, 1]));
        let p = ExactPoly::from_ints(&[-1, 1, -1, 1]);
        assert!(d.divides(&p));
        assert!(!ExactPoly::from_ints(&[1, 1]).divides(&p));
        // z - 1 divides any polynomial with zero coefficient sum
        let q = ExactPoly::from_ints(&[2, -1, -1, 2, -1, -1]);
        assert!(ExactPoly::from_ints(&[-1, 1]).divides(&q));
    }

    #[test]
    fn decompose_power_split() {
        let dec = decompose_degree(&z_pow(4), 2).unwrap().unwrap();
        assert_eq!(dec.inner, z_pow(2));
        assert_eq!(dec.outer, z_pow(2));
    }

    #[test]
    fn decompose_t4() {
        // T4 = 8z^4 - 8z^2 + 1 = (8z^2 - 8z + 1) ∘ z^2; verified by expansion
        let t4 = ExactPoly::from_ints(&[1, 0, -8, 0, 8]);
        let dec = decompose_degree(&t4, 2).unwrap().unwrap();
        assert_eq!(dec.inner, z_pow(2));
        assert_eq!(dec.outer, ExactPoly::from_ints(&[1, -8, 8]));
        assert_eq!(dec.recompose(), t4);
    }

    #[test]
    fn decompose_biquadratic() {
        let f = z_pow(4).sub(&z_pow(2)); // z^4 - z^2
        let dec = decompose_degree(&f, 2).unwrap().unwrap();
        assert_eq!(dec.inner, z_pow(2));
        assert_eq!(dec.outer, ExactPoly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn decompose_rejects_bad_divisor() {
        assert!(decompose_degree(&z_pow(4), 3).is_err());
    }

    #[test]
    fn decompose_indecomposable() {
        // z^4 + z has no degree-2 inner factor
        let f = z_pow(4).add(&ExactPoly::identity());
        assert!(decompose_degree(&f, 2).unwrap().is_none());
    }

    #[test]
    fn decomposition_set_examples() {
        let sizes = |f: &ExactPoly| -> Vec<usize> {
            decomposition_set(f).unwrap().iter().map(|(d, _)| *d).collect()
        };
        assert_eq!(sizes(&z_pow(6)), vec![1, 2, 3, 6]);
        assert_eq!(sizes(&z_pow(4).sub(&z_pow(2))), vec![1, 2, 4]);
        // (z^2 + z)^6
        let f = z_pow(2).add(&ExactPoly::identity()).pow(6);
        assert_eq!(sizes(&f), vec![1, 2, 4, 6, 12]);
    }

    #[test]
    fn decomposition_set_of_power_is_all_divisors() {
        for m in 2..=24usize {
            let sizes: Vec<usize> = decomposition_set(&z_pow(m))
                .unwrap()
                .iter()
                .map(|(d, _)| *d)
                .collect();
            let expect: Vec<usize> =
                crate::divisors(m as u64).iter().map(|&d| d as usize).collect();
            assert_eq!(sizes, expect, "m = {m}");
        }
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), ExactPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), ExactPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ExactPoly::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_vs_primitive_root_product() {
        // Brute-force oracle: expand Π (z - ε) over primitive m-th roots,
        // numerically, and round to integers.
        for m in [6usize, 8, 12] {
            let mut prod = vec![Complex64::new(1.0, 0.0)];
            for k in 1..=m {
                if num_integer::gcd(k, m) != 1 {
                    continue;
                }
                let e = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
                let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                for (i, c) in prod.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * e;
                }
                prod = next;
            }
            let oracle: Vec<i64> = prod.iter().map(|c| c.re.round() as i64).collect();
            assert_eq!(cyclotomic(m), ExactPoly::from_ints(&oracle), "m = {m}");
        }
    }

    #[test]
    fn cyclotomic_product_and_degree() {
        for m in 1..=64usize {
            let mut prod = ExactPoly::one();
            for d in crate::divisors(m as u64) {
                prod = prod.mul(&cyclotomic(d as usize));
            }
            let mut coeffs = vec![Rat::zero(); m + 1];
            coeffs[0] = rat(-1);
            coeffs[m] = rat(1);
            assert_eq!(prod, ExactPoly::new(coeffs), "product over divisors of {m}");
            assert_eq!(cyclotomic(m).degree(), totient(m as u64) as isize);
        }
    }

    #[test]
    fn yun_decomposition() {
        // z^2 (z-1)^3 (z+2)
        let f = z_pow(2)
            .mul(&ExactPoly::from_ints(&[-1, 1]).pow(3))
            .mul(&ExactPoly::from_ints(&[2, 1]));
        let parts = f.squarefree_decomposition();
        let mut rebuilt = ExactPoly::one();
        for (a, i) in &parts {
            rebuilt = rebuilt.mul(&a.pow(*i));
        }
        assert_eq!(rebuilt, f);
        let mults: Vec<u32> = parts.iter().map(|(_, i)| *i).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn display_roundtrips_signs() {
        let f = ExactPoly::from_ints(&[1, 0, -8, 0, 8]);
        assert_eq!(format!("{f}"), "8*z^4 - 8*z^2 + 1");
    }
}
