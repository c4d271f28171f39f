//! Zero-dimensional cycles on the fiber of a polynomial and their exact
//! classification: balanced, unbalanced, totally unbalanced. Balancedness is
//! decided over the integers through cyclotomic divisibility of the
//! associated polynomial, never through floating evaluation at roots of
//! unity.

use crate::monodromy::{block_systems, block_to_decomposition, BlockSystem, MonodromyData};
use crate::perm::Permutation;
use crate::poly::{cyclotomic, rat, Decomposition, ExactPoly, Rat};
use crate::{totient, Error, Result};
use num_traits::Zero;

/// Default cap on conjugacy-class enumeration, shared with the solver.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Integer weight vector (n₁,…,n_m) with zero sum, attached to the labeled
/// fiber of a degree-m polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroCycle {
    weights: Vec<i64>,
}

impl ZeroCycle {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        let sum: i64 = weights.iter().sum();
        if sum != 0 {
            return Err(Error::NonZeroCycleSum(sum));
        }
        Ok(ZeroCycle { weights })
    }

    pub fn trivial(m: usize) -> Self {
        ZeroCycle { weights: vec![0; m] }
    }

    /// The simple cycle z_j − z_i (0-indexed labels).
    pub fn simple(m: usize, j: usize, i: usize) -> Self {
        let mut weights = vec![0; m];
        weights[j] += 1;
        weights[i] -= 1;
        ZeroCycle { weights }
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// Weight vector permuted by σ: the cycle Σ nᵢ z_{σ(i)}.
    pub fn permuted(&self, sigma: &Permutation) -> ZeroCycle {
        let mut weights = vec![0; self.weights.len()];
        for (i, &w) in self.weights.iter().enumerate() {
            weights[sigma.apply(i)] = w;
        }
        ZeroCycle { weights }
    }
}

impl std::fmt::Debug for ZeroCycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.weights)
    }
}

/// The polynomial P_{C,σ} = n_{p₁} + n_{p₂} z + … + n_{p_m} z^{m−1} built
/// from the written form (p₁, p₂, …) of the m-cycle σ, starting at label 1.
/// Well defined up to the invertible unit \[z\] modulo z^m − 1, which leaves
/// cyclotomic divisibility unchanged.
pub fn p_poly(cycle: &ZeroCycle, sigma: &Permutation) -> Result<ExactPoly> {
    if sigma.len() != cycle.m() {
        return Err(Error::InvalidInput(format!(
            "cycle on {} points but permutation on {}",
            cycle.m(),
            sigma.len()
        )));
    }
    let order = sigma.cycle_order()?;
    let coeffs: Vec<Rat> = order.iter().map(|&p| rat(cycle.weights[p])).collect();
    Ok(ExactPoly::new(coeffs))
}

/// Exact balancedness test: C is balanced iff Φ₁·Φ_m divides P_{C,σ} for
/// every σ in the conjugacy class of the permutation at infinity. On
/// failure returns the witness σ.
pub fn is_balanced(
    cycle: &ZeroCycle,
    class: &[Permutation],
) -> Result<(bool, Option<Permutation>)> {
    if class.is_empty() {
        return Err(Error::InvalidInput("empty conjugacy class".into()));
    }
    let m = cycle.m();
    let phi = cyclotomic(1).mul(&cyclotomic(m));
    for sigma in class {
        let p = p_poly(cycle, sigma)?;
        if !phi.divides(&p) {
            return Ok((false, Some(sigma.clone())));
        }
    }
    Ok((true, None))
}

/// Projected cycle: one point per block, weighted by the block sum.
/// Blocks are taken in the stored order (sorted by minimal element), which
/// for congruence-class systems is the labeling aligned with the projected
/// permutation at infinity.
pub fn project_cycle(cycle: &ZeroCycle, bs: &BlockSystem) -> Result<ZeroCycle> {
    if bs.m != cycle.m() {
        return Err(Error::InvalidInput(format!(
            "cycle on {} points but block system on {}",
            cycle.m(),
            bs.m
        )));
    }
    let weights: Vec<i64> = bs
        .blocks
        .iter()
        .map(|block| block.iter().map(|&p| cycle.weights[p]).sum())
        .collect();
    ZeroCycle::new(weights)
}

/// A decomposition of f whose projected cycle is balanced and nontrivial,
/// blocking total unbalancedness.
#[derive(Debug, Clone)]
pub struct BlockingProjection {
    pub inner_degree: usize,
    pub decomposition: Decomposition,
    pub projected: ZeroCycle,
}

/// Outcome of the balanced / totally-unbalanced classification.
#[derive(Debug, Clone)]
pub struct CycleClassification {
    pub trivial: bool,
    pub balanced: bool,
    pub totally_unbalanced: bool,
    /// For an unbalanced cycle, a σ in the class of τ∞ whose weighted
    /// root-of-unity sum does not vanish.
    pub unbalanced_witness: Option<Permutation>,
    /// For a cycle that is not totally unbalanced, the projection that is
    /// balanced and nontrivial.
    pub blocking: Option<BlockingProjection>,
}

/// Classify a cycle of `f`: iterate over every imprimitivity system, project,
/// and test each nontrivial projection for balancedness against the
/// conjugacy class of the outer polynomial's own permutation at infinity.
pub fn is_totally_unbalanced(
    f: &ExactPoly,
    cycle: &ZeroCycle,
    data: &MonodromyData,
    cap: usize,
) -> Result<CycleClassification> {
    if cycle.m() != data.m {
        return Err(Error::InvalidInput(format!(
            "cycle on {} points but fiber has {}",
            cycle.m(),
            data.m
        )));
    }
    if cycle.is_trivial() {
        return Ok(CycleClassification {
            trivial: true,
            balanced: true,
            totally_unbalanced: false,
            unbalanced_witness: None,
            blocking: None,
        });
    }
    let class = data.conjugacy_class_tau(cap)?;
    let (balanced, witness) = is_balanced(cycle, &class)?;
    if balanced {
        // The identity decomposition already projects to a balanced
        // nontrivial cycle.
        return Ok(CycleClassification {
            trivial: false,
            balanced: true,
            totally_unbalanced: false,
            unbalanced_witness: None,
            blocking: Some(BlockingProjection {
                inner_degree: 1,
                decomposition: Decomposition {
                    outer: f.clone(),
                    inner: ExactPoly::identity(),
                },
                projected: cycle.clone(),
            }),
        });
    }

    for bs in block_systems(data) {
        if bs.block_size == 1 || bs.block_size == data.m {
            // Size-1 blocks reproduce the cycle itself (tested above);
            // the one-block system always projects to the trivial cycle.
            continue;
        }
        let projected = project_cycle(cycle, &bs)?;
        if projected.is_trivial() {
            continue;
        }
        let dec = block_to_decomposition(f, data, &bs)?.ok_or_else(|| {
            Error::InconsistentEvidence(format!(
                "block system of size {} has no matching decomposition",
                bs.block_size
            ))
        })?;
        let outer_data = crate::monodromy::monodromy_data(&dec.outer)?;
        // Cross-check: the pushforward of τ∞ permutes the residue blocks
        // cyclically, so the projected labels are aligned.
        let pushed = pushforward_tau(&bs, &data.tau_infinity)?;
        if !pushed.is_full_cycle() {
            return Err(Error::MonodromyInvariant(
                "pushforward of tau_infinity is not a full cycle on the blocks".into(),
            ));
        }
        let outer_class = outer_data.conjugacy_class_tau(cap)?;
        let (proj_balanced, _) = is_balanced(&projected, &outer_class)?;
        if proj_balanced {
            return Ok(CycleClassification {
                trivial: false,
                balanced: false,
                totally_unbalanced: false,
                unbalanced_witness: witness,
                blocking: Some(BlockingProjection {
                    inner_degree: bs.block_size,
                    decomposition: dec,
                    projected,
                }),
            });
        }
    }

    Ok(CycleClassification {
        trivial: false,
        balanced: false,
        totally_unbalanced: true,
        unbalanced_witness: witness,
        blocking: None,
    })
}

/// The permutation induced on the blocks by σ (blocks in stored order).
fn pushforward_tau(bs: &BlockSystem, sigma: &Permutation) -> Result<Permutation> {
    let images: Vec<usize> = bs
        .blocks
        .iter()
        .map(|block| bs.block_index_of(sigma.apply(block[0])))
        .collect();
    Permutation::new(images)
}

/// Integer basis of the space of cycles whose projection is trivial for
/// every prime block partition of {1..m}: the stacked block-sum equations
/// pin the associated polynomial to a multiple of (z^m − 1)/Φ_m, so the
/// shifts of that cofactor form a basis, returned Hermite-reduced.
/// Dimension φ(m).
pub fn trivial_projection_space(m: usize) -> Result<Vec<ZeroCycle>> {
    if m < 2 {
        return Err(Error::InvalidInput(
            "trivial projection space needs m >= 2".into(),
        ));
    }
    let phi = totient(m as u64) as usize;
    // (z^m - 1) / Φ_m, the product of Φ_d over proper divisors d | m.
    let mut coeffs = vec![Rat::zero(); m + 1];
    coeffs[0] = rat(-1);
    coeffs[m] = rat(1);
    let (cofactor, r) = ExactPoly::new(coeffs).div_rem(&cyclotomic(m))?;
    debug_assert!(r.is_zero());
    let base: Vec<i64> = (0..=cofactor.degree() as usize)
        .map(|k| {
            let c = cofactor.coeff(k);
            debug_assert!(c.is_integer());
            i64::try_from(c.numer().clone()).expect("small cyclotomic cofactor coefficient")
        })
        .collect();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(phi);
    for shift in 0..phi {
        let mut row = vec![0i64; m];
        for (k, &c) in base.iter().enumerate() {
            row[k + shift] = c;
        }
        rows.push(row);
    }
    let reduced = hermite_reduce(rows);
    debug_assert_eq!(reduced.len(), phi);
    reduced.into_iter().map(ZeroCycle::new).collect()
}

/// Row-style Hermite normal form over ℤ (Euclidean elimination by columns,
/// positive pivots, entries above each pivot reduced).
#[allow(clippy::needless_range_loop)]
fn hermite_reduce(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            let mut best: Option<(usize, i64)> = None;
            for (r, row) in rows.iter().enumerate().skip(pivot_row) {
                let v = row[col];
                if v != 0 && best.is_none_or(|(_, bv)| v.abs() < bv.abs()) {
                    best = Some((r, v));
                }
            }
            let (r, v) = match best {
                Some(b) => b,
                None => break,
            };
            rows.swap(pivot_row, r);
            let mut done = true;
            for r2 in pivot_row + 1..rows.len() {
                let q = rows[r2][col].div_euclid(v);
                if q != 0 {
                    for c in 0..ncols {
                        rows[r2][c] -= q * rows[pivot_row][c];
                    }
                }
                if rows[r2][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] == 0 {
            continue;
        }
        if rows[pivot_row][col] < 0 {
            for c in 0..ncols {
                rows[pivot_row][c] = -rows[pivot_row][c];
            }
        }
        let pivot = rows[pivot_row][col];
        for r in 0..pivot_row {
            let q = rows[r][col].div_euclid(pivot);
            if q != 0 {
                for c in 0..ncols {
                    rows[r][c] -= q * rows[pivot_row][c];
                }
            }
        }
        pivot_row += 1;
    }
    rows
}

/// Dimension of the rational span of the orbit of the weight vector under
/// the generated group, computed by closing the subspace under the
/// generators (so no enumeration cap can be hit).
pub fn orbit_span_dimension(data: &MonodromyData, cycle: &ZeroCycle) -> Result<usize> {
    Ok(orbit_span_basis(data, cycle)?.len())
}

fn orbit_span_basis(data: &MonodromyData, cycle: &ZeroCycle) -> Result<Vec<Vec<Rat>>> {
    if cycle.m() != data.m {
        return Err(Error::InvalidInput("label count mismatch".into()));
    }
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    fn insert(mut v: Vec<Rat>, basis: &mut Vec<Vec<Rat>>, pivots: &mut Vec<usize>) -> bool {
        for (b, &p) in basis.iter().zip(pivots.iter()) {
            if !v[p].is_zero() {
                let factor = v[p].clone() / b[p].clone();
                for (vi, bi) in v.iter_mut().zip(b.iter()) {
                    *vi -= &factor * bi;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                basis.push(v);
                pivots.push(p);
                true
            }
            None => false,
        }
    }
    let start: Vec<Rat> = cycle.weights.iter().map(|&w| rat(w)).collect();
    if !insert(start, &mut basis, &mut pivots) {
        return Ok(basis);
    }
    loop {
        let mut grew = false;
        let snapshot = basis.clone();
        for g in &data.generators {
            for b in &snapshot {
                let mut permuted = vec![Rat::zero(); data.m];
                for (i, val) in b.iter().enumerate() {
                    permuted[g.apply(i)] = val.clone();
                }
                if insert(permuted, &mut basis, &mut pivots) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(basis)
}

/// True when the orbit span of the cycle is not orthogonal to the primitive
/// m-th character: some vector in the span has an associated polynomial not
/// divisible by Φ_m. Exact, via the span basis.
pub fn span_meets_primitive_character(
    data: &MonodromyData,
    cycle: &ZeroCycle,
) -> Result<bool> {
    let phi_m = cyclotomic(data.m);
    for v in orbit_span_basis(data, cycle)? {
        let p = ExactPoly::new(v);
        if !phi_m.divides(&p) {
            return Ok(true);
        }
    }
    Ok(false)
}
