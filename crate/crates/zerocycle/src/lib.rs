//! Zero-dimensional Abelian integrals: given polynomials `f`, `g` and an
//! integer-weighted cycle on the fiber `f⁻¹(t)`, decide whether
//! `t ↦ Σ nᵢ g(zᵢ(t))` vanishes identically, and when it does, produce a
//! certificate built from compositional factors of `f`.
//!
//! The building blocks are exact rational polynomial arithmetic ([`poly`]),
//! numerical monodromy by root tracking ([`monodromy`]), cycle classification
//! through cyclotomic divisibility ([`cycles`]), Puiseux expansions at
//! infinity ([`puiseux`]), the inductive tangential-center solver
//! ([`abelian`]) and reductions from the moment problem, hyper-elliptic
//! one-cycles and slow-fast systems ([`applications`]).

pub mod abelian;
pub mod applications;
pub mod cycles;
mod error;
pub mod monodromy;
pub mod par;
pub mod parse;
pub mod perm;
pub mod poly;
pub mod puiseux;
pub mod roots;

pub use error::Error;
pub use poly::ExactPoly;

pub type Result<T> = std::result::Result<T, Error>;

/// Euler's totient by the product formula. Used throughout as an
/// independent cross-check on cyclotomic degrees and cycle-space dimensions.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Prime factors of `m`, ascending, without multiplicity.
pub fn prime_factors(m: u64) -> Vec<u64> {
    let mut n = m;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Divisors of `m`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            if d != m / d {
                out.push(m / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}
