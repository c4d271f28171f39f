//! Plain-text table rendering for `--table` output.

use crate::report::*;
use std::fmt::Write;

fn cplx(c: &ComplexRepr) -> String {
    format!("{:+.6}{:+.6}i", c.re, c.im)
}

pub fn roots(r: &RootsReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree {}   residual bound {:.3e}", r.degree, r.residual_bound);
    let _ = writeln!(out, "{:>14} {:>14} {:>5}", "re", "im", "mult");
    for e in &r.roots {
        let _ = writeln!(out, "{:>14.8} {:>14.8} {:>5}", e.re, e.im, e.multiplicity);
    }
    out
}

pub fn monodromy(r: &MonodromyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "m = {}   basepoint {}", r.m, cplx(&r.basepoint));
    for g in &r.generators {
        let _ = writeln!(out, "cv {}  ->  {:?}", cplx(&g.critical_value), g.permutation);
    }
    let _ = writeln!(out, "tau_infinity: {:?}", r.tau_infinity);
    out
}

pub fn blocks(r: &BlocksReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "m = {}", r.m);
    for s in &r.systems {
        let dec = s
            .decomposition
            .as_ref()
            .map(|d| format!("inner {}  outer {}", d.inner.display, d.outer.display))
            .unwrap_or_else(|| "no matching decomposition".to_string());
        let _ = writeln!(out, "block size {:>3}  blocks {:?}  {}", s.block_size, s.blocks, dec);
    }
    out
}

pub fn classify(r: &ClassifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cycle {:?} on m = {}", r.cycle, r.m);
    let _ = writeln!(
        out,
        "trivial {}   balanced {}   totally_unbalanced {}",
        r.trivial, r.balanced, r.totally_unbalanced
    );
    if let Some(w) = &r.unbalanced_witness {
        let _ = writeln!(out, "unbalanced witness sigma: {w:?}");
    }
    if let Some(b) = &r.blocking {
        let _ = writeln!(
            out,
            "blocking projection through inner degree {}: {:?}",
            b.inner_degree, b.projected_cycle
        );
    }
    out
}

pub fn solve(r: &SolveReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "status: {}", r.status);
    let _ = writeln!(
        out,
        "worst sample residual {:.3e}   puiseux ok {}",
        r.evidence.worst_sample_residual, r.evidence.puiseux_ok
    );
    for (i, t) in r.terms.iter().enumerate() {
        let _ = writeln!(
            out,
            "term {}: h coeffs {:?}  g coeffs {:?}  projection {} ({})",
            i + 1,
            t.h,
            t.g,
            t.projection_kind,
            t.proof
        );
    }
    out
}

pub fn zm(r: &ZmReport) -> String {
    format!(
        "m = {}  allowed residues {:?}  forbidden {:?}\n",
        r.m, r.allowed_residues, r.forbidden_residues
    )
}

pub fn moment(r: &MomentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n0 = {}  n1 = {}  cycle {:?}", r.n0, r.n1, r.cycle);
    let _ = writeln!(out, "moments (k = 1..): {:?}", r.moments);
    let _ = writeln!(
        out,
        "all zero: {}   cycle test passed: {}   verdict: {}",
        r.moments_all_zero, r.cycle_test.passed, r.verdict
    );
    out
}

pub fn laurent_moment(r: &LaurentMomentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}  m = {}  cycle {:?}", r.n, r.m, r.cycle);
    let _ = writeln!(out, "moments / 2πi (k = 0..): {:?}", r.moments_over_2pi_i);
    let _ = writeln!(
        out,
        "all zero: {}   cycle test passed: {}   verdict: {}",
        r.moments_all_zero, r.cycle_test_passed, r.verdict
    );
    out
}

pub fn hyperelliptic(r: &HyperellipticReport) -> String {
    let mut out = String::new();
    if let Some(z) = &r.zero_cycle {
        let _ = writeln!(out, "zero-cycle {z:?}");
    }
    if let Some(o) = &r.one_cycle {
        let _ = writeln!(out, "one-cycle basis coefficients {o:?}");
    }
    if let Some(c) = r.condition {
        let _ = writeln!(out, "condition: {c}");
    }
    if let Some(res) = &r.oracle_residuals {
        let _ = writeln!(out, "oracle residuals {res:?}");
    }
    out
}

pub fn slowfast(r: &SlowFastReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Gbar = ({}) / ({})",
        r.gbar_numerator.display, r.gbar_denominator.display
    );
    for s in &r.samples {
        let _ = writeln!(out, "I({}) = {:.3e}", s.t, s.integral);
    }
    out
}
