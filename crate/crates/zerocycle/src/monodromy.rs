//! Numerical monodromy of a polynomial: critical values, root tracking along
//! loops, the permutation at infinity, and imprimitivity (block) systems of
//! the generated permutation group.
//!
//! Tracking is certified by construction: a step is accepted only when every
//! root moved less than 0.4× the minimum pairwise root distance at the step
//! start and the nearest-neighbor relabeling is unambiguous, so a returned
//! permutation can be wrong only if the polynomial itself is degenerate
//! enough to defeat step halving — which surfaces as an error, never as a
//! silent mismatch.

use num_complex::Complex64;

use crate::perm::{is_transitive, Permutation};
use crate::poly::{Decomposition, ExactPoly};
use crate::roots::roots_complex;
use crate::{par, Error, Result};

/// Minimum relative step before tracking gives up.
const MIN_STEP: f64 = 1e-12;
/// Movement guard: max root movement per step, as a fraction of the minimum
/// pairwise root distance at the step start.
const GUARD: f64 = 0.4;
/// Candidate basepoint rotations, tried in order until the loop spokes clear
/// every non-target critical value.
const ROTATION_LADDER: [f64; 13] = [
    0.0, 0.05, -0.05, 0.11, -0.11, 0.23, -0.23, 0.47, -0.47, 0.9, -0.9, 1.7, -1.7,
];

/// A path in the t-plane made of line segments and circular arcs.
#[derive(Debug, Clone)]
pub enum PathSeg {
    Line { from: Complex64, to: Complex64 },
    Arc { center: Complex64, radius: f64, from_angle: f64, to_angle: f64 },
}

impl PathSeg {
    fn at(&self, s: f64) -> Complex64 {
        match self {
            PathSeg::Line { from, to } => from + (to - from) * s,
            PathSeg::Arc { center, radius, from_angle, to_angle } => {
                let theta = from_angle + (to_angle - from_angle) * s;
                center + Complex64::from_polar(*radius, theta)
            }
        }
    }
}

/// Distinct critical values of `f`. Critical points come out of exact
/// squarefree deflation at full f64 accuracy, so critical values carry only
/// the evaluation rounding of f; two values merge when they agree within
/// that noise floor (with a small relative safety term). A coarser
/// tolerance silently merges genuinely distinct near-coincident critical
/// values and collapses the monodromy group to a proper subgroup.
pub fn critical_values(f: &ExactPoly) -> Result<Vec<Complex64>> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput("critical values need deg f >= 2".into()));
    }
    let crit_pts = crate::roots::roots_of(&f.derivative())?;
    let f_abs: Vec<f64> = f.complex_coeffs().iter().map(|c| c.norm()).collect();
    let mut entries: Vec<(Complex64, f64)> = crit_pts
        .roots
        .iter()
        .map(|&z| {
            let noise = 512.0 * f64::EPSILON * horner_abs(&f_abs, z.norm());
            (f.eval_complex(z), noise)
        })
        .collect();
    entries.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
    let scale = 1.0 + entries.iter().map(|(v, _)| v.norm()).fold(0.0, f64::max);
    let mut out: Vec<(Complex64, f64)> = Vec::new();
    for (v, noise) in entries {
        let tol = 1e-12 * scale + noise;
        if out
            .iter()
            .all(|(u, un)| (u - v).norm() > tol.max(1e-12 * scale + un))
        {
            out.push((v, noise));
        }
    }
    Ok(out.into_iter().map(|(v, _)| v).collect())
}

fn min_pairwise(zs: &[Complex64]) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            min = min.min((zs[i] - zs[j]).norm());
        }
    }
    min
}

/// Tracking context: complex coefficient arrays of f and f', plus the
/// absolute-value coefficients used to estimate the f64 evaluation noise
/// floor.
struct Tracker {
    f: Vec<Complex64>,
    df: Vec<Complex64>,
    f_abs: Vec<f64>,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn horner_abs(coeffs_abs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs_abs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

impl Tracker {
    fn new(f: &ExactPoly) -> Self {
        let fc = f.complex_coeffs();
        let dc = f.derivative().complex_coeffs();
        let fa = fc.iter().map(|c| c.norm()).collect();
        Tracker { f: fc, df: dc, f_abs: fa }
    }

    /// Newton-correct a single root of f(z) = t starting from `z0`.
    /// Accepts either a tiny relative update or a residual at the rounding
    /// floor of the evaluation (which an update-size criterion alone cannot
    /// reach when |f'| is small).
    fn correct(&self, z0: Complex64, t: Complex64) -> Option<Complex64> {
        let mut z = z0;
        for _ in 0..40 {
            let val = horner(&self.f, z) - t;
            let noise = 128.0 * f64::EPSILON * (horner_abs(&self.f_abs, z.norm()) + t.norm());
            if val.norm() <= noise {
                return Some(z);
            }
            let d = horner(&self.df, z);
            if d.norm() < 1e-300 {
                return None;
            }
            let delta = val / d;
            z -= delta;
            if delta.norm() <= 1e-14 * (1.0 + z.norm()) {
                return Some(z);
            }
        }
        None
    }

    /// One guarded continuation step of the whole fiber from t0 to t1.
    fn step(&self, fiber: &[Complex64], t0: Complex64, t1: Complex64) -> Option<Vec<Complex64>> {
        let min_d = min_pairwise(fiber);
        let dt = t1 - t0;
        let mut next = Vec::with_capacity(fiber.len());
        for &z in fiber {
            let d = horner(&self.df, z);
            let predicted = if d.norm() > 1e-12 { z + dt / d } else { z };
            let corrected = self.correct(predicted, t1)?;
            if (corrected - z).norm() >= GUARD * min_d {
                return None;
            }
            next.push(corrected);
        }
        // Nearest-neighbor relabeling must be the identity and unambiguous.
        for (i, &zn) in next.iter().enumerate() {
            let mut d1 = f64::INFINITY;
            let mut d2 = f64::INFINITY;
            let mut arg = usize::MAX;
            for (j, &zo) in fiber.iter().enumerate() {
                let d = (zn - zo).norm();
                if d < d1 {
                    d2 = d1;
                    d1 = d;
                    arg = j;
                } else if d < d2 {
                    d2 = d;
                }
            }
            if arg != i || d2 < 2.0 * d1 {
                return None;
            }
        }
        Some(next)
    }
}

/// Track the full fiber of `f` along `path`. Returns the final fiber and,
/// for a closed path, the monodromy permutation mapping start labels to end
/// labels (identity for open paths).
pub fn track_path(
    f: &ExactPoly,
    path: &[PathSeg],
    fiber: &[Complex64],
) -> Result<(Vec<Complex64>, Permutation)> {
    let tracker = Tracker::new(f);
    let start_fiber = fiber.to_vec();
    let mut current = fiber.to_vec();
    let mut t_cur = match path.first() {
        Some(seg) => seg.at(0.0),
        None => return Ok((current, Permutation::identity(fiber.len()))),
    };
    let path_start = t_cur;
    // The fiber must actually solve f(z) = t at the path start.
    for &z in &current {
        let residual = (horner(&tracker.f, z) - t_cur).norm();
        let noise = 1e-8 * (horner_abs(&tracker.f_abs, z.norm()) + t_cur.norm() + 1.0);
        if residual > noise {
            return Err(Error::InvalidInput(format!(
                "fiber does not match f at the path start (residual {residual:.3e})"
            )));
        }
    }
    for seg in path {
        let mut s = 0.0f64;
        let mut h = 0.125f64;
        while s < 1.0 {
            h = h.min(1.0 - s);
            let t_next = seg.at(s + h);
            match tracker.step(&current, t_cur, t_next) {
                Some(next) => {
                    current = next;
                    t_cur = t_next;
                    s += h;
                    h = (h * 1.9).min(0.25);
                }
                None => {
                    h /= 2.0;
                    if h < MIN_STEP {
                        return Err(Error::TrackingStepUnderflow {
                            re: t_cur.re,
                            im: t_cur.im,
                            min_dist: min_pairwise(&current),
                        });
                    }
                }
            }
        }
    }
    let path_end = t_cur;
    let closed = (path_end - path_start).norm() <= 1e-9 * (1.0 + path_start.norm());
    if !closed {
        return Ok((current, Permutation::identity(start_fiber.len())));
    }
    // Read off the permutation: branch i ended at the point initially
    // labeled sigma(i).
    let min_d = min_pairwise(&start_fiber);
    let mut images = vec![usize::MAX; start_fiber.len()];
    let mut taken = vec![false; start_fiber.len()];
    for (i, &zf) in current.iter().enumerate() {
        let mut d1 = f64::INFINITY;
        let mut d2 = f64::INFINITY;
        let mut arg = usize::MAX;
        for (j, &z0) in start_fiber.iter().enumerate() {
            let d = (zf - z0).norm();
            if d < d1 {
                d2 = d1;
                d1 = d;
                arg = j;
            } else if d < d2 {
                d2 = d;
            }
        }
        if d1 > 0.3 * min_d || d2 < 2.0 * d1 || taken[arg] {
            return Err(Error::TrackingAmbiguous {
                re: path_end.re,
                im: path_end.im,
            });
        }
        taken[arg] = true;
        images[i] = arg;
    }
    Ok((current, Permutation::new(images)?))
}

/// Monodromy of `f`: labeled basepoint fiber, one permutation per critical
/// value (in the composition order whose product is the permutation at
/// infinity), and the permutation at infinity itself, normalized to
/// (1, 2, …, m) by relabeling the fiber.
#[derive(Debug, Clone)]
pub struct MonodromyData {
    pub m: usize,
    pub basepoint: Complex64,
    /// Critical values, in generator composition order.
    pub critical_values: Vec<Complex64>,
    /// Fiber over the basepoint, labeled so that tau_infinity = (1,2,…,m).
    pub fiber: Vec<Complex64>,
    /// Loop permutations around each critical value, parallel to
    /// `critical_values`; their left-to-right product equals tau_infinity.
    pub generators: Vec<Permutation>,
    pub tau_infinity: Permutation,
}

/// Loop geometry around one critical value: straight spoke from the
/// basepoint to the circle of radius `r` around `cv`, the full circle
/// counter-clockwise, and the spoke back.
fn lasso(basepoint: Complex64, cv: Complex64, r: f64) -> Vec<PathSeg> {
    let dir = (basepoint - cv) / (basepoint - cv).norm();
    let entry = cv + dir * r;
    let entry_angle = (entry - cv).arg();
    vec![
        PathSeg::Line { from: basepoint, to: entry },
        PathSeg::Arc {
            center: cv,
            radius: r,
            from_angle: entry_angle,
            to_angle: entry_angle + 2.0 * std::f64::consts::PI,
        },
        PathSeg::Line { from: entry, to: basepoint },
    ]
}

fn dist_point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Choose the basepoint per the fixed policy: radius 1 + 2·max|σ| on the
/// positive real axis, rotated through a fixed ladder of angles until every
/// spoke clears all non-target critical values by at least the loop radius
/// (best-effort fallback when no rotation fully clears).
fn choose_basepoint(crit: &[Complex64], loop_radius: f64) -> Complex64 {
    let max_abs = crit.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = 1.0 + 2.0 * max_abs;
    let clearance = |t0: Complex64| -> f64 {
        let mut worst = f64::INFINITY;
        for (k, &cv) in crit.iter().enumerate() {
            let dir = (t0 - cv) / (t0 - cv).norm();
            let entry = cv + dir * loop_radius;
            for (j, &other) in crit.iter().enumerate() {
                if j != k {
                    worst = worst.min(dist_point_segment(other, t0, entry));
                }
            }
        }
        worst
    };
    let mut best = Complex64::new(radius, 0.0);
    let mut best_clear = f64::NEG_INFINITY;
    for theta in ROTATION_LADDER {
        let t0 = Complex64::from_polar(radius, theta);
        // Basepoint alignment rule: skip rotations that leave t0 within 1e-6
        // of the direction of a critical value.
        let aligned = crit.iter().any(|c| {
            c.norm() > 0.0 && {
                let mut d = (c.arg() - theta).abs();
                if d > std::f64::consts::PI {
                    d = 2.0 * std::f64::consts::PI - d;
                }
                d < 1e-6
            }
        });
        if aligned {
            continue;
        }
        let c = clearance(t0);
        if c >= loop_radius {
            return t0;
        }
        if c > best_clear {
            best_clear = c;
            best = t0;
        }
    }
    best
}

/// Compute [`MonodromyData`] for `f`. Loops around the critical values are
/// tracked independently (in parallel when the `parallel` feature is on).
pub fn monodromy_data(f: &ExactPoly) -> Result<MonodromyData> {
    let deg = f.degree();
    if deg < 2 {
        return Err(Error::InvalidInput("monodromy needs deg f >= 2".into()));
    }
    let m = deg as usize;
    let crit = critical_values(f)?;
    let max_abs = crit.iter().map(|c| c.norm()).fold(0.0, f64::max);

    // Loop radius: 0.4× the minimum pairwise distance within the critical
    // set (including the basepoint radius when only one value exists).
    let basepoint_radius = 1.0 + 2.0 * max_abs;
    let mut min_dist = f64::INFINITY;
    for i in 0..crit.len() {
        for j in i + 1..crit.len() {
            min_dist = min_dist.min((crit[i] - crit[j]).norm());
        }
        min_dist = min_dist.min(basepoint_radius - crit[i].norm());
    }
    let loop_radius = 0.4 * min_dist;
    let basepoint = choose_basepoint(&crit, loop_radius);

    // Labeled fiber at the basepoint.
    let mut fc = f.complex_coeffs();
    fc[0] -= basepoint;
    let fiber = roots_complex(&fc)?;

    // Composition order: spoke angle relative to the inward direction,
    // ascending. All spokes point inward, so there is no branch-cut wrap.
    let inward = (-basepoint).arg();
    let rel_angle = |cv: Complex64| -> f64 {
        let mut a = (cv - basepoint).arg() - inward;
        while a > std::f64::consts::PI {
            a -= 2.0 * std::f64::consts::PI;
        }
        while a < -std::f64::consts::PI {
            a += 2.0 * std::f64::consts::PI;
        }
        a
    };
    let mut ordered: Vec<Complex64> = crit.clone();
    ordered.sort_by(|a, b| rel_angle(*a).partial_cmp(&rel_angle(*b)).unwrap());

    let loops: Vec<(ExactPoly, Vec<PathSeg>, Vec<Complex64>)> = ordered
        .iter()
        .map(|&cv| (f.clone(), lasso(basepoint, cv, loop_radius), fiber.clone()))
        .collect();
    let tracked = par::try_map(loops, |(fp, path, fib)| {
        track_path(&fp, &path, &fib).map(|(_, sigma)| sigma)
    })?;

    // Permutation at infinity from the big counter-clockwise circle.
    let inf_radius = (2.0 * max_abs).max(0.5 * basepoint_radius);
    let entry = basepoint / basepoint.norm() * inf_radius;
    let entry_angle = entry.arg();
    let big_circle = vec![
        PathSeg::Line { from: basepoint, to: entry },
        PathSeg::Arc {
            center: Complex64::new(0.0, 0.0),
            radius: inf_radius,
            from_angle: entry_angle,
            to_angle: entry_angle + 2.0 * std::f64::consts::PI,
        },
        PathSeg::Line { from: entry, to: basepoint },
    ];
    let (_, tau_raw) = track_path(f, &big_circle, &fiber)?;
    if !tau_raw.is_full_cycle() {
        return Err(Error::MonodromyInvariant(format!(
            "permutation at infinity is not an m-cycle: {tau_raw:?}"
        )));
    }

    // Relabel so tau_infinity = (1, 2, …, m), keeping the first root first.
    let order = tau_raw.cycle_order()?;
    let mut relab_images = vec![0usize; m];
    for (new, &old) in order.iter().enumerate() {
        relab_images[old] = new;
    }
    let relab = Permutation::new(relab_images)?;
    let fiber_relabeled: Vec<Complex64> = order.iter().map(|&old| fiber[old]).collect();
    let generators: Vec<Permutation> = tracked.iter().map(|g| g.relabeled(&relab)).collect();
    let tau = tau_raw.relabeled(&relab);
    debug_assert_eq!(tau, Permutation::full_cycle(m));

    let data = MonodromyData {
        m,
        basepoint,
        critical_values: ordered,
        fiber: fiber_relabeled,
        generators,
        tau_infinity: tau,
    };
    data.check_invariants()?;
    Ok(data)
}

impl MonodromyData {
    fn check_invariants(&self) -> Result<()> {
        if !self.tau_infinity.is_full_cycle() || self.tau_infinity != Permutation::full_cycle(self.m)
        {
            return Err(Error::MonodromyInvariant(
                "tau_infinity is not (1,2,…,m) after relabeling".into(),
            ));
        }
        let mut product = Permutation::identity(self.m);
        for g in &self.generators {
            product = product.then(g);
        }
        if product != self.tau_infinity {
            return Err(Error::MonodromyInvariant(format!(
                "generator product {product:?} differs from tau_infinity"
            )));
        }
        if !is_transitive(&self.generators, self.m) {
            return Err(Error::MonodromyInvariant(
                "generated group is not transitive".into(),
            ));
        }
        Ok(())
    }

    /// Orbit of tau_infinity under conjugation by the generated group: the
    /// permutations induced by loops winding once around infinity.
    pub fn conjugacy_class_tau(&self, cap: usize) -> Result<Vec<Permutation>> {
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![self.tau_infinity.clone()];
        seen.insert(self.tau_infinity.clone());
        let mut k = 0;
        while k < queue.len() {
            let sigma = queue[k].clone();
            k += 1;
            for g in &self.generators {
                let conj = sigma.conjugate_by(g);
                if seen.insert(conj.clone()) {
                    if seen.len() > cap {
                        return Err(Error::ConjugacyCapExceeded { cap });
                    }
                    queue.push(conj);
                }
            }
        }
        Ok(queue)
    }
}

/// An imprimitivity system: a partition of {1..m} into equal-size blocks
/// mapped onto each other by every group element. Blocks are sorted by
/// their minimum element; points are 0-indexed internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub m: usize,
    pub block_size: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    fn from_classes(m: usize, class_of: &[usize]) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (i, &c) in class_of.iter().enumerate() {
            map.entry(c).or_insert_with(Vec::new).push(i);
        }
        let mut blocks: Vec<Vec<usize>> = map.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        let block_size = blocks[0].len();
        BlockSystem { m, block_size, blocks }
    }

    pub fn singletons(m: usize) -> Self {
        BlockSystem {
            m,
            block_size: 1,
            blocks: (0..m).map(|i| vec![i]).collect(),
        }
    }

    pub fn one_block(m: usize) -> Self {
        BlockSystem {
            m,
            block_size: m,
            blocks: vec![(0..m).collect()],
        }
    }

    /// Congruence-class system: blocks of size `d` collecting labels equal
    /// modulo m/d. With tau_infinity = (1,2,…,m) in the group, every block
    /// system of size d has this shape.
    pub fn congruence(m: usize, d: usize) -> Result<Self> {
        if d == 0 || !m.is_multiple_of(d) {
            return Err(Error::BadDivisor { d, m });
        }
        let step = m / d;
        let blocks: Vec<Vec<usize>> = (0..step)
            .map(|r| (0..d).map(|k| r + k * step).collect())
            .collect();
        Ok(BlockSystem { m, block_size: d, blocks })
    }

    pub fn block_index_of(&self, point: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&point))
            .expect("point in some block")
    }

    /// Every generator must map each block onto a block of the partition.
    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        let mut class_of = vec![0usize; self.m];
        for (bi, block) in self.blocks.iter().enumerate() {
            for &p in block {
                class_of[p] = bi;
            }
        }
        for g in gens {
            for block in &self.blocks {
                let target = class_of[g.apply(block[0])];
                if block.iter().any(|&p| class_of[g.apply(p)] != target) {
                    return false;
                }
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// The finest block system putting labels `a` and `b` in one block.
pub fn minimal_block_system(data: &MonodromyData, a: usize, b: usize) -> BlockSystem {
    let classes = minimal_block_partition(&data.generators, data.m, a, b);
    BlockSystem::from_classes(data.m, &classes)
}

/// Atkinson's minimal-block closure: the finest G-invariant partition with
/// `a` and `b` in the same block.
fn minimal_block_partition(gens: &[Permutation], m: usize, a: usize, b: usize) -> Vec<usize> {
    let mut uf = UnionFind::new(m);
    uf.union(a, b);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    (0..m).map(|i| uf.find(i)).collect()
}

/// Join of two partitions (finest common coarsening).
fn join_partitions(m: usize, p: &BlockSystem, q: &BlockSystem) -> Vec<usize> {
    let mut uf = UnionFind::new(m);
    for block in p.blocks.iter().chain(q.blocks.iter()) {
        for w in block.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    (0..m).map(|i| uf.find(i)).collect()
}

/// All imprimitivity systems of the group generated by `data.generators`,
/// via Atkinson closures over seed pairs {1, j} plus join closure. Includes
/// both trivial systems. Sorted by block size.
pub fn block_systems(data: &MonodromyData) -> Vec<BlockSystem> {
    let m = data.m;
    let gens = &data.generators;
    let mut found: Vec<BlockSystem> = vec![BlockSystem::singletons(m), BlockSystem::one_block(m)];
    let push_unique = |found: &mut Vec<BlockSystem>, bs: BlockSystem| -> bool {
        if bs.block_size == 0 || !m.is_multiple_of(bs.block_size) {
            return false;
        }
        if bs.blocks.iter().any(|b| b.len() != bs.block_size) {
            return false;
        }
        if found.contains(&bs) {
            return false;
        }
        found.push(bs);
        true
    };
    for j in 1..m {
        let classes = minimal_block_partition(gens, m, 0, j);
        let bs = BlockSystem::from_classes(m, &classes);
        if bs.block_size < m {
            push_unique(&mut found, bs);
        }
    }
    // Join closure.
    loop {
        let mut added = false;
        let snapshot = found.clone();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let classes = join_partitions(m, &snapshot[i], &snapshot[j]);
                let bs = BlockSystem::from_classes(m, &classes);
                if bs.block_size < m && push_unique(&mut found, bs) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    found.retain(|bs| bs.is_invariant_under(gens));
    found.sort_by_key(|bs| bs.block_size);
    found
}

/// Match a block system against a functional decomposition of `f`: find the
/// decomposition with inner degree equal to the block size and verify
/// numerically that the inner factor is constant on each block of the fiber.
pub fn block_to_decomposition(
    f: &ExactPoly,
    data: &MonodromyData,
    bs: &BlockSystem,
) -> Result<Option<Decomposition>> {
    let dec = match crate::poly::decompose_degree(f, bs.block_size)? {
        Some(d) => d,
        None => return Ok(None),
    };
    let values: Vec<Complex64> = data
        .fiber
        .iter()
        .map(|&z| dec.inner.eval_complex(z))
        .collect();
    let scale = 1.0 + values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for block in &bs.blocks {
        let v0 = values[block[0]];
        for &p in block {
            if (values[p] - v0).norm() > 1e-7 * scale {
                return Ok(None);
            }
        }
    }
    Ok(Some(dec))
}
