//! Special families and reductions: the complete solution for pure powers,
//! Chebyshev polynomials, the polynomial and Laurent moment problems as
//! cycle problems, hyper-elliptic one-cycles, and slow-fast center
//! synthesis.

mod hyperelliptic;
mod laurent;
mod moment;
mod slowfast;

pub use hyperelliptic::{
    hyperelliptic_phi, hyperelliptic_phi_inverse, hyperelliptic_series_oracle,
    hyperelliptic_xm_condition, OneCycle,
};
pub use laurent::{
    laurent_is_identically_zero, laurent_moment_cycle, laurent_moment_oracle, LaurentMomentReport,
    LaurentPoly,
};
pub use moment::{moment_cycle, moment_oracle, MomentCycleReport};
pub use slowfast::{slow_fast_gbar, slow_fast_i, RationalFn};

use std::collections::BTreeSet;

use crate::cycles::{is_balanced, p_poly, ZeroCycle};
use crate::perm::Permutation;
use crate::poly::{cyclotomic, rat, ExactPoly};
use crate::{Error, Result};
use num_traits::Zero;

/// Complete solution for f = z^m and a balanced cycle: the residues j mod m
/// whose monomials z^j are permitted in solutions g. Decided by exact
/// cyclotomic divisibility: z^j is allowed iff P_C(ε_m^j) = 0, i.e. iff
/// Φ_{m/gcd(m,j)} divides P_C (with j ≡ 0 always allowed from the zero sum).
pub fn zm_solutions(m: usize, cycle: &ZeroCycle) -> Result<BTreeSet<usize>> {
    if cycle.m() != m {
        return Err(Error::InvalidInput("cycle size does not match m".into()));
    }
    let tau = Permutation::full_cycle(m);
    let (balanced, _) = is_balanced(cycle, std::slice::from_ref(&tau))?;
    if !balanced {
        return Err(Error::InvalidInput(
            "the pure-power rule needs a balanced cycle".into(),
        ));
    }
    let p_c = p_poly(cycle, &tau)?;
    let mut allowed = BTreeSet::new();
    for j in 0..m {
        if j == 0 {
            allowed.insert(0);
            continue;
        }
        let d = num_integer::gcd(m, j);
        if cyclotomic(m / d).divides(&p_c) {
            allowed.insert(j);
        }
    }
    Ok(allowed)
}

/// Residues mod m that are forbidden for the balanced cycle.
pub fn zm_forbidden(m: usize, cycle: &ZeroCycle) -> Result<BTreeSet<usize>> {
    let allowed = zm_solutions(m, cycle)?;
    Ok((0..m).filter(|j| !allowed.contains(j)).collect())
}

/// Chebyshev polynomial T_m by the three-term recurrence, exact integers.
pub fn chebyshev(m: usize) -> ExactPoly {
    let mut prev = ExactPoly::one();
    let mut cur = ExactPoly::identity();
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = cur.scale(&rat(2)).mul(&ExactPoly::identity()).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// True when g uses only allowed residues of the pure-power rule.
pub fn zm_allows(allowed: &BTreeSet<usize>, m: usize, g: &ExactPoly) -> bool {
    g.coeffs()
        .iter()
        .enumerate()
        .all(|(j, c)| c.is_zero() || allowed.contains(&(j % m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating(m: usize) -> ZeroCycle {
        ZeroCycle::new((0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()).unwrap()
    }

    #[test]
    fn zm_rule_degree_four() {
        let allowed = zm_solutions(4, &alternating(4)).unwrap();
        assert_eq!(allowed, BTreeSet::from([0, 1, 3]));
        assert_eq!(zm_forbidden(4, &alternating(4)).unwrap(), BTreeSet::from([2]));
    }

    #[test]
    fn zm_rule_degree_six_cycles() {
        // C2 = (2,-1,-1,2,-1,-1): forbidden {2,4}
        let c2 = ZeroCycle::new(vec![2, -1, -1, 2, -1, -1]).unwrap();
        assert_eq!(zm_forbidden(6, &c2).unwrap(), BTreeSet::from([2, 4]));
        // C3 alternating: forbidden {3}
        assert_eq!(zm_forbidden(6, &alternating(6)).unwrap(), BTreeSet::from([3]));
        // C1 = (-1,2,-2,1,0,0): forbidden {2,3,4}
        let c1 = ZeroCycle::new(vec![-1, 2, -2, 1, 0, 0]).unwrap();
        assert_eq!(zm_forbidden(6, &c1).unwrap(), BTreeSet::from([2, 3, 4]));
    }

    #[test]
    fn zm_rejects_unbalanced() {
        let c = ZeroCycle::new(vec![1, -1, 0, 0]).unwrap();
        assert!(zm_solutions(4, &c).is_err());
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev(0), ExactPoly::one());
        assert_eq!(chebyshev(2), ExactPoly::from_ints(&[-1, 0, 2]));
        assert_eq!(chebyshev(4), ExactPoly::from_ints(&[1, 0, -8, 0, 8]));
    }

    #[test]
    fn chebyshev_semigroup() {
        for a in 1..=6usize {
            for b in 1..=6usize {
                if a * b > 12 {
                    continue;
                }
                assert_eq!(
                    chebyshev(a).compose(&chebyshev(b)),
                    chebyshev(a * b),
                    "T_{a} ∘ T_{b}"
                );
            }
        }
    }

    #[test]
    fn zm_rule_agrees_with_vanishing_test_both_directions() {
        use crate::abelian::is_identically_zero;
        use crate::poly::Rat;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let m = 6usize;
        let f = ExactPoly::monomial(rat(1), m);
        for cycle in [
            ZeroCycle::new(vec![2, -1, -1, 2, -1, -1]).unwrap(),
            alternating(6),
        ] {
            let allowed = zm_solutions(m, &cycle).unwrap();
            let forbidden: Vec<usize> = (0..m).filter(|j| !allowed.contains(j)).collect();
            // Random g supported on allowed residues: vanishes.
            let mut coeffs = vec![Rat::zero(); 2 * m];
            for (j, c) in coeffs.iter_mut().enumerate() {
                if allowed.contains(&(j % m)) {
                    *c = rat(rng.gen_range(-4i64..=4));
                }
            }
            let g = ExactPoly::new(coeffs);
            assert!(is_identically_zero(&f, &g, &cycle).unwrap().passed, "g = {g}");
            // Adding any forbidden monomial breaks it.
            for &j in &forbidden {
                let spoiled = g.add(&ExactPoly::monomial(rat(3), j));
                assert!(
                    !is_identically_zero(&f, &spoiled, &cycle).unwrap().passed,
                    "forbidden residue {j} not detected"
                );
            }
        }
    }
}
