//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured values (visible with `cargo test -- --nocapture`).

use num_complex::Complex64;
use std::collections::BTreeSet;
use std::time::Instant;

use zerocycle::abelian::{
    displacement_with, integral_samples_with, is_identically_zero,
    solve_tangential, BranchSystem, CertificateStatus, ProjectionKind,
};
use zerocycle::applications::{
    chebyshev, hyperelliptic_series_oracle, hyperelliptic_xm_condition, moment_cycle,
    moment_oracle, zm_forbidden, zm_solutions,
};
use zerocycle::cycles::{
    is_balanced, is_totally_unbalanced, project_cycle, trivial_projection_space, ZeroCycle,
    DEFAULT_CAP,
};
use zerocycle::monodromy::{block_systems, monodromy_data};
use zerocycle::parse::parse_poly;
use zerocycle::perm::Permutation;
use zerocycle::poly::{rat, ExactPoly};
use zerocycle::totient;

fn z_pow(k: usize) -> ExactPoly {
    ExactPoly::monomial(rat(1), k)
}

fn alternating(m: usize) -> ZeroCycle {
    ZeroCycle::new((0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()).unwrap()
}

#[test]
fn criterion_01_deg4_power_rule_and_vanishing() {
    let start = Instant::now();
    let f = z_pow(4);
    let cycle = alternating(4);
    let allowed = zm_solutions(4, &cycle).unwrap();
    assert_eq!(allowed, BTreeSet::from([0, 1, 3]));

    let pass = is_identically_zero(&f, &z_pow(3), &cycle).unwrap();
    assert!(pass.passed);
    assert_eq!(pass.sample_count, 20);
    assert!(pass.worst_sample_residual <= 1e-8);

    let fail = is_identically_zero(&f, &z_pow(2), &cycle).unwrap();
    assert!(!fail.passed);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "PASS criterion 1 (deg4): allowed {{0,1,3}}, z^3 vanishes, z^2 does not, in {elapsed:?}"
    );
}

#[test]
fn criterion_02_chebyshev_t4_closed_form() {
    // Branch values straight from the explicit root formulas:
    // z1 = sqrt(1/2 + sqrt(1+t)/(2*sqrt 2)), z2 = sqrt(1/2 - ...),
    // z3 = -z1, z4 = -z2; cycle a(z1 - z2 + z3 - z4) with a = 1.
    let a = [rat(2), rat(-3), rat(5), rat(7)];
    let g = ExactPoly::new(a.to_vec());
    let a2 = 5.0f64;
    let mut worst = 0.0f64;
    for k in 0..10 {
        let t = 0.3 + 0.9 * k as f64;
        let s = (1.0 + t).sqrt() / (2.0 * 2.0f64.sqrt());
        let z1 = (0.5 + s).sqrt();
        let z2 = (0.5 - s).sqrt();
        let roots = [z1, z2, -z1, -z2];
        let weights = [1.0, -1.0, 1.0, -1.0];
        let integral: f64 = roots
            .iter()
            .zip(&weights)
            .map(|(&z, &n)| n * g.eval_complex(Complex64::new(z, 0.0)).re)
            .sum();
        let closed_form = a2 * (2.0 + 2.0 * t).sqrt();
        worst = worst.max((integral - closed_form).abs());
    }
    assert!(worst < 1e-8, "worst deviation {worst:.3e}");

    // And the vanishing test accepts g = z^3 on the balanced cycle.
    let t4 = chebyshev(4);
    let ev = is_identically_zero(&t4, &z_pow(3), &alternating(4)).unwrap();
    assert!(ev.passed, "worst residual {}", ev.worst_sample_residual);
    println!(
        "PASS criterion 2 (Chebyshev T4): closed form matched to {worst:.2e}, z^3 vanishes"
    );
}

#[test]
fn criterion_03_six_point_forbidden_residues() {
    let c1 = ZeroCycle::new(vec![-1, 2, -2, 1, 0, 0]).unwrap();
    let c2 = ZeroCycle::new(vec![2, -1, -1, 2, -1, -1]).unwrap();
    let c3 = alternating(6);
    assert_eq!(zm_forbidden(6, &c1).unwrap(), BTreeSet::from([2, 3, 4]));
    assert_eq!(zm_forbidden(6, &c2).unwrap(), BTreeSet::from([2, 4]));
    assert_eq!(zm_forbidden(6, &c3).unwrap(), BTreeSet::from([3]));
    println!("PASS criterion 3 (six-point cycles): forbidden sets {{2,3,4}}, {{2,4}}, {{3}}");
}

#[test]
fn criterion_04_trivial_projection_dimensions() {
    for (m, expect) in [(4usize, 2usize), (6, 2), (12, 4), (30, 8)] {
        let basis = trivial_projection_space(m).unwrap();
        assert_eq!(basis.len(), expect, "m = {m}");
        assert_eq!(expect as u64, totient(m as u64));
    }
    let start = Instant::now();
    let basis = trivial_projection_space(210).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(basis.len(), 48);
    assert!(elapsed.as_secs_f64() < 10.0, "m = 210 took {elapsed:?}");
    println!(
        "PASS criterion 4 (cycle space dimensions): 2, 2, 4, 8, 48; m = 210 in {elapsed:?}"
    );
}

#[test]
fn criterion_05_degree_210_certificate() {
    let start = Instant::now();
    let f = z_pow(210);
    let basis = trivial_projection_space(210).unwrap();
    let data = monodromy_data(&f).unwrap();
    let cycle = basis
        .iter()
        .find(|c| {
            is_totally_unbalanced(&f, c, &data, DEFAULT_CAP)
                .map(|cls| cls.totally_unbalanced)
                .unwrap_or(false)
        })
        .expect("a totally unbalanced basis cycle")
        .clone();

    let g = parse_poly("z^2+z^3+z^5+z^7").unwrap();
    let cert = solve_tangential(&f, &cycle, &g).unwrap();
    assert_eq!(cert.status, CertificateStatus::VanishesTrivial);
    assert_eq!(cert.terms.len(), 4, "one term per prime part");
    for term in &cert.terms {
        assert_eq!(term.kind, ProjectionKind::Trivial);
        assert!(term.projected.is_trivial());
    }
    assert_eq!(cert.reconstruct_g(), g);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "PASS criterion 5 (degree 210): 4 terms, all projections trivial, in {elapsed:?}"
    );
}

#[test]
fn criterion_06_prime_degrees_totally_unbalanced() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut checked = 0usize;
    for p in [2usize, 3, 5, 7, 11, 13] {
        let f = z_pow(p);
        let data = monodromy_data(&f).unwrap();
        for _ in 0..100 {
            let cycle = loop {
                let mut w: Vec<i64> = (0..p).map(|_| rng.gen_range(-9..=9)).collect();
                let sum: i64 = w.iter().sum();
                w[0] -= sum;
                if w.iter().any(|&x| x != 0) && w[0].abs() <= 18 {
                    break ZeroCycle::new(w).unwrap();
                }
            };
            let cls = is_totally_unbalanced(&f, &cycle, &data, DEFAULT_CAP).unwrap();
            assert!(cls.totally_unbalanced, "m = {p}, cycle {cycle:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 600);
    println!("PASS criterion 6 (prime degrees): 600/600 cycles totally unbalanced");
}

#[test]
fn criterion_07_moment_equivalence() {
    let f = parse_poly("z^2*(z-1)^2").unwrap();
    let report = moment_cycle(&f).unwrap();
    assert!(report.totally_unbalanced);

    // q = f': twelve exactly-zero moments and a passing cycle test.
    let q1 = f.derivative();
    let m1 = moment_oracle(&f, &q1, 12);
    assert!(m1.iter().all(|m| m == &rat(0)));
    let ev1 = is_identically_zero(&f, &q1.antiderivative(), &report.cycle).unwrap();
    assert!(ev1.passed);

    // q = 1: first moment exactly 1/30 and a failing cycle test.
    let q2 = ExactPoly::one();
    let m2 = moment_oracle(&f, &q2, 12);
    assert_eq!(m2[0], zerocycle::poly::ratio(1, 30));
    let ev2 = is_identically_zero(&f, &q2.antiderivative(), &report.cycle).unwrap();
    assert!(!ev2.passed);
    println!(
        "PASS criterion 7 (moment problem): q = f' vanishes 12/12 + cycle pass; q = 1 gives 1/30 + cycle fail"
    );
}

#[test]
fn criterion_08_monodromy_sanity_suite() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5A11);
    let mut count = 0usize;
    while count < 50 {
        let deg = rng.gen_range(2..=8usize);
        let coeffs: Vec<zerocycle::poly::Rat> = (0..=deg)
            .map(|k| {
                let num = rng.gen_range(-5i64..=5);
                let den = *[1i64, 1, 2, 3].get(rng.gen_range(0..4)).unwrap();
                if k == deg && num == 0 {
                    rat(1)
                } else {
                    zerocycle::poly::ratio(num, den)
                }
            })
            .collect();
        let f = ExactPoly::new(coeffs);
        if f.degree() < 2 {
            continue;
        }
        let data = monodromy_data(&f).expect("monodromy of a random polynomial");
        // tau_infinity is an m-cycle in normalized labels.
        assert_eq!(data.tau_infinity, Permutation::full_cycle(data.m));
        // Generator product equals tau_infinity (also asserted internally).
        let mut product = Permutation::identity(data.m);
        for g in &data.generators {
            product = product.then(g);
        }
        assert_eq!(product, data.tau_infinity);
        // Transitivity.
        assert!(zerocycle::perm::is_transitive(&data.generators, data.m));
        // Stability: recomputing from scratch reproduces the permutations.
        let data2 = monodromy_data(&f).unwrap();
        assert_eq!(data.generators, data2.generators);
        count += 1;
    }
    println!("PASS criterion 8 (monodromy sanity): 50/50 random polynomials");
}

#[test]
fn criterion_09_displacement_first_order() {
    // Ten corpus triples with a genuine second-order remainder.
    let cubic = parse_poly("z^3-3*z").unwrap();
    let biquad = parse_poly("z^4-z^2").unwrap();
    let quartic = parse_poly("z^4+4*z").unwrap();
    let triples: Vec<(ExactPoly, ExactPoly, ZeroCycle)> = vec![
        (cubic.clone(), z_pow(2), ZeroCycle::simple(3, 1, 0)),
        (cubic.clone(), z_pow(2), ZeroCycle::simple(3, 2, 0)),
        (cubic.clone(), parse_poly("z^2+z").unwrap(), ZeroCycle::simple(3, 2, 1)),
        (biquad.clone(), z_pow(2), ZeroCycle::simple(4, 1, 0)),
        (biquad.clone(), z_pow(3), ZeroCycle::simple(4, 1, 0)),
        (biquad.clone(), parse_poly("z^3+z^2").unwrap(), ZeroCycle::simple(4, 3, 2)),
        (quartic.clone(), z_pow(2), ZeroCycle::simple(4, 1, 0)),
        (quartic.clone(), z_pow(3), ZeroCycle::simple(4, 2, 0)),
        (quartic.clone(), parse_poly("z^2-z").unwrap(), ZeroCycle::simple(4, 3, 0)),
        (
            quartic.clone(),
            parse_poly("z^3+z^2").unwrap(),
            ZeroCycle::new(vec![1, 1, -1, -1]).unwrap(),
        ),
    ];
    for (f, g, cycle) in &triples {
        let branches = BranchSystem::new(f).unwrap();
        let eps_scale =
            1e-3 * (1.0 + branches.data.basepoint.norm()) / (1.0 + g.max_coeff_abs());
        let eps = Complex64::new(eps_scale, 0.0);
        let ts = branches.sample_points(3, 17);
        let integral = integral_samples_with(&branches, g, cycle, &ts).unwrap();
        let d_full = displacement_with(&branches, g, cycle, eps, &ts).unwrap();
        let d_half = displacement_with(&branches, g, cycle, eps / 2.0, &ts).unwrap();
        let mut checked = false;
        for i in 0..ts.len() {
            let r_full = (d_full[i] + eps * integral[i]).norm();
            let r_half = (d_half[i] + eps / 2.0 * integral[i]).norm();
            if r_half < 1e-12 {
                continue;
            }
            let ratio = r_full / r_half;
            assert!(
                (3.5..=4.5).contains(&ratio),
                "ratio {ratio} for f = {f}, g = {g} at t = {}",
                ts[i]
            );
            checked = true;
            break;
        }
        assert!(checked, "no usable sample for f = {f}, g = {g}");
    }

    // Persistent center: g = g0 ∘ f along simple cycles has |Δ| < 1e-10.
    for f in [cubic, biquad] {
        let branches = BranchSystem::new(&f).unwrap();
        let g = f.scale(&rat(2)).add(&ExactPoly::one()).compose(&ExactPoly::identity());
        let m = f.degree() as usize;
        let eps = Complex64::new(1e-3, 0.0);
        let ts = branches.sample_points(3, 23);
        for j in 1..m {
            let cycle = ZeroCycle::simple(m, j, 0);
            let vals = displacement_with(&branches, &g, &cycle, eps, &ts).unwrap();
            for v in &vals {
                assert!(v.norm() < 1e-10, "|Δ| = {} for {f}", v.norm());
            }
        }
    }
    println!("PASS criterion 9 (displacement): Richardson ratios in [3.5, 4.5]; persistent centers below 1e-10");
}

#[test]
fn criterion_10_composite_sextic_projections() {
    // f = (z^2 + z)^6 with the weighted cycle: projections through the
    // three inner factors are trivial, unbalanced, balanced.
    let f = parse_poly("(z^2+z)^6").unwrap();
    let data = monodromy_data(&f).unwrap();
    let mut w = vec![0i64; 12];
    w[..6].copy_from_slice(&[2, -1, -1, 2, -1, -1]);
    let cycle = ZeroCycle::new(w).unwrap();

    let systems = block_systems(&data);
    // h1 = (z^2+z)^3, inner degree 6: trivial projection.
    let bs6 = systems.iter().find(|b| b.block_size == 6).unwrap();
    assert!(project_cycle(&cycle, bs6).unwrap().is_trivial());
    // h2 = (z^2+z)^2, inner degree 4: (4,-2,-2), unbalanced for z^3.
    let bs4 = systems.iter().find(|b| b.block_size == 4).unwrap();
    let p4 = project_cycle(&cycle, bs4).unwrap();
    assert_eq!(p4.weights(), &[4, -2, -2]);
    let outer3 = monodromy_data(&z_pow(3)).unwrap();
    let class3 = outer3.conjugacy_class_tau(DEFAULT_CAP).unwrap();
    assert!(!is_balanced(&p4, &class3).unwrap().0);
    // h3 = z^2+z, inner degree 2: (2,-1,-1,2,-1,-1), balanced for z^6.
    let bs2 = systems.iter().find(|b| b.block_size == 2).unwrap();
    let p2 = project_cycle(&cycle, bs2).unwrap();
    assert_eq!(p2.weights(), &[2, -1, -1, 2, -1, -1]);
    let outer6 = monodromy_data(&z_pow(6)).unwrap();
    let class6 = outer6.conjugacy_class_tau(DEFAULT_CAP).unwrap();
    assert!(is_balanced(&p2, &class6).unwrap().0);

    // The classifier agrees: not totally unbalanced, blocked by the
    // degree-2 inner factor.
    let cls = is_totally_unbalanced(&f, &cycle, &data, DEFAULT_CAP).unwrap();
    assert!(!cls.totally_unbalanced && !cls.balanced && !cls.trivial);
    assert_eq!(cls.blocking.as_ref().unwrap().inner_degree, 2);
    println!("PASS criterion 10 (composite sextic): projections trivial / unbalanced / balanced");
}

#[test]
fn criterion_11_hyperelliptic_x4_rule() {
    let cycle = alternating(4);
    let table: Vec<(ExactPoly, bool)> = vec![
        (z_pow(2), true),
        (z_pow(3), true),
        (ExactPoly::identity(), false),
        // 1-shifted kappa_1(x^4)
        (ExactPoly::monomial(rat(3), 4).add(&ExactPoly::one()), true),
    ];
    let ts: Vec<Complex64> = (0..10)
        .map(|k| Complex64::from_polar(2.0 + 0.25 * k as f64, 0.3 + 0.5 * k as f64))
        .collect();
    for (kappa, expect) in &table {
        let cond = hyperelliptic_xm_condition(4, &cycle, kappa).unwrap();
        assert_eq!(cond, *expect, "rule for kappa = {kappa}");
        let residuals = hyperelliptic_series_oracle(4, &cycle, kappa, &ts).unwrap();
        let worst = residuals.iter().fold(0.0f64, |a, &b| a.max(b));
        if *expect {
            assert!(worst < 1e-8, "kappa = {kappa}: oracle residual {worst:.3e}");
        } else {
            assert!(worst > 1e-4, "kappa = {kappa}: oracle residual {worst:.3e}");
        }
    }
    println!("PASS criterion 11 (hyper-elliptic x^4): membership table and oracle agree");
}
