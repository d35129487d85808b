//! Named property suites.
//!
//! Every trial draws its instances from its own ChaCha8 stream
//! `(seed, trial index)`, so a report depends only on `(suite, seed, trials)`.
//! Each trial yields a residual: for an equality the observed error, for an
//! inequality `lhs - rhs` (negative when it holds with room to spare). The
//! report keeps the largest residual as `worst_slack`.

use std::f64::consts::PI;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bv::BVFunction;
use crate::convolution::{
    convolve_bv, convolve_derivative, convolve_functions, convolve_l1, convolve_primitive, convolve_with_primitive_of,
    mollify, pairing_convolution,
};
use crate::error::{CpintError, Result};
use crate::ext::ExtReal;
use crate::fixtures;
use crate::harness::fubini::{fubini_check, Kernel};
use crate::harness::limit::verify_l1defn_limit;
use crate::harness::oracle::{oracle_convolve, reversed_order_oracle, OracleConfig};
use crate::harness::quadrature::{power_law_closed_form, power_law_self_convolution};
use crate::harness::random::*;
use crate::piecewise::{closed_grid, PiecewisePolynomial};
use crate::primitive::Distribution;
use crate::stieltjes::{holder_check, holder_check_ebv, integrate_product, integrate_product_normalized};

pub const EXACT_TOL: f64 = 1e-12;
pub const ORACLE_TOL: f64 = 1e-8;
pub const INEQ_SLACK: f64 = 1e-9;
pub const PRIMITIVE_TOL: f64 = 1e-10;
pub const FD_STEP: f64 = 1e-4;
pub const FD_REL_TOL: f64 = 1e-6;
pub const BETA_HALF_TOL: f64 = 1e-6;
pub const BETA_THREE_QUARTER_TOL: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub suite: String,
    pub trials: usize,
    pub failures: usize,
    pub worst_slack: f64,
    pub seed: u64,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

#[derive(Debug, Clone, Copy)]
struct Outcome {
    residual: f64,
    pass: bool,
}

impl Outcome {
    fn within(err: f64, tol: f64) -> Self {
        Outcome { residual: err, pass: err <= tol }
    }

    fn both(self, other: Outcome) -> Self {
        Outcome { residual: self.residual.max(other.residual), pass: self.pass && other.pass }
    }
}

type Trial = fn(&mut ChaCha8Rng) -> Result<Outcome>;

struct Suite {
    name: &'static str,
    trial: Trial,
    /// Deterministic suites run once whatever the requested trial count.
    fixed: bool,
}

const REGISTRY: &[Suite] = &[
    Suite { name: "step_kernel", trial: step_kernel, fixed: false },
    Suite { name: "null_kernel", trial: null_kernel, fixed: false },
    Suite { name: "constant_kernel", trial: constant_kernel, fixed: false },
    Suite { name: "holder", trial: holder, fixed: false },
    Suite { name: "uniform_bound", trial: uniform_bound, fixed: false },
    Suite { name: "young", trial: young, fixed: false },
    Suite { name: "commutativity", trial: commutativity, fixed: false },
    Suite { name: "associativity", trial: associativity, fixed: false },
    Suite { name: "translation", trial: translation, fixed: false },
    Suite { name: "derivative", trial: derivative, fixed: false },
    Suite { name: "primitive_identity", trial: primitive_identity, fixed: false },
    Suite { name: "l1defn_limit", trial: l1defn_limit, fixed: false },
    Suite { name: "mollifier", trial: mollifier, fixed: true },
    Suite { name: "beta", trial: beta, fixed: true },
    Suite { name: "fubini", trial: fubini, fixed: false },
    Suite { name: "pairing", trial: pairing, fixed: false },
    Suite { name: "density", trial: density, fixed: false },
    Suite { name: "equality_witness", trial: equality_witness, fixed: false },
    Suite { name: "oracle_calibration", trial: oracle_calibration, fixed: false },
    Suite { name: "norm_equivalence", trial: norm_equivalence, fixed: false },
    Suite { name: "additivity", trial: additivity, fixed: false },
    Suite { name: "variation_bound", trial: variation_bound, fixed: false },
    Suite { name: "gamma_independence", trial: gamma_independence, fixed: false },
];

/// Names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "step_kernel",
    "null_kernel",
    "constant_kernel",
    "holder",
    "uniform_bound",
    "young",
    "commutativity",
    "associativity",
    "translation",
    "derivative",
    "primitive_identity",
    "l1defn_limit",
    "mollifier",
    "beta",
    "fubini",
    "pairing",
    "density",
    "equality_witness",
    "oracle_calibration",
    "norm_equivalence",
    "additivity",
    "variation_bound",
    "gamma_independence",
];

pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<PropertyReport> {
    let suite = REGISTRY
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CpintError::UnknownSuite(name.to_string()))?;
    let trials = if suite.fixed { 1 } else { trials };
    let start = Instant::now();
    let outcomes: Vec<Option<Outcome>> = (0..trials)
        .into_par_iter()
        .map(|i| (suite.trial)(&mut rng_for(seed, i as u64)).ok())
        .collect();
    let failures = outcomes.iter().filter(|o| !o.is_some_and(|o| o.pass)).count();
    let worst_slack = outcomes
        .iter()
        .flatten()
        .map(|o| o.residual)
        .filter(|r| r.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(PropertyReport {
        suite: name.to_string(),
        trials,
        failures,
        worst_slack: if worst_slack.is_finite() { worst_slack } else { 0.0 },
        seed,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Runs every suite in [`SUITES`] order.
pub fn run_all(seed: u64, trials: usize) -> Vec<PropertyReport> {
    SUITES.iter().map(|s| run_suite(s, seed, trials).expect("registered suite")).collect()
}

fn params() -> RandomParams {
    RandomParams::default()
}

/// `n` evenly spaced points covering `[lo - 1, hi + 1]`.
fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo - 1.0, hi + 1.0);
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn max_abs_diff(xs: &[f64], a: impl Fn(f64) -> f64, b: impl Fn(f64) -> f64) -> f64 {
    xs.iter().map(|&x| (a(x) - b(x)).abs()).fold(0.0, f64::max)
}

fn step_kernel(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let h = convolve_bv(&f, &BVFunction::indicator_open_ray(0.0));
    let big_f = f.primitive();
    let xs = grid(big_f.rep().first(), big_f.rep().last(), 500);
    Ok(Outcome::within(max_abs_diff(&xs, |x| h.eval(x), |x| big_f.eval(x)), EXACT_TOL))
}

fn null_kernel(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let z = dyadic(rng, -2.0, 2.0, 4);
    let h = convolve_bv(&f, &BVFunction::indicator_point(z));
    Ok(Outcome { residual: h.sup_norm(), pass: h.rep().is_identically_zero() })
}

fn constant_kernel(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let h = convolve_bv(&f, &BVFunction::constant(1.0));
    let total = f.total();
    let rep = f.primitive().rep();
    let xs = grid(rep.first(), rep.last(), 200);
    let err = max_abs_diff(&xs, |x| h.eval(x), |_| total)
        .max((h.left_tail() - total).abs())
        .max((h.right_tail() - total).abs());
    Ok(Outcome::within(err, EXACT_TOL))
}

fn holder(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_bv(rng, &params());
    let gamma = rng.gen_range(0.0..=1.0);
    let plain = holder_check(&f, &g);
    let ebv = holder_check_ebv(&f, &g, gamma)?;
    let residual = [plain, ebv]
        .iter()
        .map(|h| (h.lhs - h.bound_tight).max(h.bound_tight - h.bound_norm))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(Outcome::within(residual, INEQ_SLACK))
}

fn uniform_bound(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_bv(rng, &params());
    let h = convolve_bv(&f, &g);
    let norm = f.alexiewicz_norm();
    let tight = f.total().abs() * g.inf_abs() + norm * g.variation();
    let sup = h.sup_norm();
    let ineq = Outcome::within((sup - tight).max(tight - norm * g.bv_norm()), INEQ_SLACK);
    let tails = Outcome::within(
        (h.left_tail() - g.left_tail() * f.total())
            .abs()
            .max((h.right_tail() - g.right_tail() * f.total()).abs()),
        EXACT_TOL,
    );
    Ok(ineq.both(tails))
}

fn young(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_l1(rng, &params().with_degree(2));
    let c = convolve_l1(&f, &g)?;
    Ok(Outcome::within(c.alexiewicz_norm() - f.alexiewicz_norm() * g.l1_norm(), INEQ_SLACK))
}

fn commutativity(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_bv_normalized(rng, &params());
    let h = convolve_bv(&f, &g);
    let (fr, gr) = (f.primitive().rep(), g.rep());
    let (lo, hi) = (fr.first() + gr.first() - 1.0, fr.last() + gr.last() + 1.0);
    let xs: Vec<f64> = (0..50).map(|_| dyadic(rng, lo, hi, 6)).collect();
    Ok(Outcome::within(max_abs_diff(&xs, |x| h.eval(x), |x| reversed_order_oracle(&f, &g, x)), ORACLE_TOL))
}

fn associativity(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_l1(rng, &params());
    let h = random_l1(rng, &params());
    let left = convolve_functions(convolve_bv(&f, &g.as_bv()).rep(), &h);
    let right = convolve_bv(&f, &BVFunction::from_rep(convolve_functions(g.rep(), &h)));
    let xs = grid(left.first(), left.last(), 200);
    Ok(Outcome::within(max_abs_diff(&xs, |x| left.eval(x), |x| right.eval(x)), ORACLE_TOL))
}

fn translation(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_bv(rng, &params());
    let gl = random_l1(rng, &params().with_degree(2));
    let z = dyadic(rng, -4.0, 4.0, 5);
    let a = convolve_bv(&f, &g).translate(z);
    let b = convolve_bv(&f.translate(z), &g);
    let c = convolve_bv(&f, &g.translate(z));
    let la = convolve_l1(&f, &gl)?.translate(z);
    let lb = convolve_l1(&f.translate(z), &gl)?;
    let lc = convolve_l1(&f, &gl.translate(z))?;
    let pairs: [(&PiecewisePolynomial, &PiecewisePolynomial); 4] = [
        (a.rep(), b.rep()),
        (a.rep(), c.rep()),
        (la.primitive().rep(), lb.primitive().rep()),
        (la.primitive().rep(), lc.primitive().rep()),
    ];
    let exact = pairs.iter().all(|(p, q)| p == q);
    let residual = pairs.iter().map(|(p, q)| p.max_coeff_diff(q)).fold(0.0, f64::max);
    Ok(Outcome { residual, pass: exact })
}

fn derivative(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_smooth_bv(rng, &params());
    let h = convolve_bv(&f, &g);
    let d1 = convolve_derivative(&f, &g, 1)?;
    let symbolic = h.derivative(1);
    let scale = d1.rep().scale_hint().max(1.0);
    let coeff = Outcome::within(symbolic.max_coeff_diff(d1.rep()) / scale, EXACT_TOL);

    let d2 = convolve_derivative(&f, &g, 2)?;
    let bps = h.rep().breakpoints();
    let (lo, hi) = (bps[0] - 0.5, bps[bps.len() - 1] + 0.5);
    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < 10 {
        let x: f64 = rng.gen_range(lo..hi);
        // Central differences straddling a kink of h'' are only first-order accurate.
        if bps.iter().any(|b| (b - x).abs() < 2.0 * FD_STEP) {
            continue;
        }
        let fd = (h.eval(x + FD_STEP) - 2.0 * h.eval(x) + h.eval(x - FD_STEP)) / (FD_STEP * FD_STEP);
        let exact = d2.eval(x);
        worst = worst.max((fd - exact).abs() / exact.abs().max(1.0));
        taken += 1;
    }
    Ok(coeff.both(Outcome::within(worst, FD_REL_TOL)))
}

fn primitive_identity(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_l1(rng, &params().with_degree(2));
    let via_bv = convolve_with_primitive_of(&f, &g);
    let via_lebesgue = convolve_primitive(f.primitive(), &g)?;
    let pointwise = via_bv.rep().max_diff_at_breakpoints(via_lebesgue.rep());
    let mut ab = [rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0)];
    ab.sort_by(f64::total_cmp);
    let [alpha, beta] = ab;
    // ∫_α^β f ∗ g with f ∗ g computed as a function through the BV path.
    let lhs = convolve_bv(&f, &g.as_bv()).rep().integral_over(alpha, beta);
    let rhs = via_lebesgue.eval(beta) - via_lebesgue.eval(alpha);
    Ok(Outcome::within(pointwise.max((lhs - rhs).abs()), PRIMITIVE_TOL))
}

fn l1defn_limit(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_l1(rng, &params().with_degree(2));
    let terms = verify_l1defn_limit(&f, &g, 6)?;
    let bound = Outcome::within(
        terms.iter().map(|t| t.distance - t.bound).fold(f64::NEG_INFINITY, f64::max),
        INEQ_SLACK,
    );
    let target = 1e-3 * f.alexiewicz_norm() * g.l1_norm();
    let last = terms.last().expect("steps >= 2").distance;
    let reached = Outcome { residual: last - target, pass: last < target || last == 0.0 };
    Ok(bound.both(reached))
}

/// `‖f_tent ∗ g_t - f_tent‖` for `t = 2^-k`, `k = 0..=8`, with a unit-mass C¹ kernel.
pub fn mollifier_sequence() -> Result<Vec<f64>> {
    let f = fixtures::f_tent();
    let g = fixtures::c1_tent_kernel();
    (0..=8)
        .map(|k| Ok(mollify(&f, &g, 0.5f64.powi(k))?.sub(&f).alexiewicz_norm()))
        .collect()
}

fn mollifier(_: &mut ChaCha8Rng) -> Result<Outcome> {
    let norms = mollifier_sequence()?;
    let target = 0.01 * fixtures::f_tent().alexiewicz_norm();
    let last = *norms.last().expect("nine terms");
    Ok(Outcome { residual: last - target, pass: last < target })
}

/// `(x, oracle, expected, tolerance)` rows for the power-law example.
pub fn beta_rows() -> Vec<(f64, f64, f64, f64, f64)> {
    let mut rows = Vec::new();
    for &x in &[0.25, 0.5, 1.0] {
        rows.push((0.5, x, power_law_self_convolution(0.5, x), PI, BETA_HALF_TOL));
    }
    for &x in &[0.25, 0.5, 1.0] {
        rows.push((0.75, x, power_law_self_convolution(0.75, x), power_law_closed_form(0.75, x), BETA_THREE_QUARTER_TOL));
    }
    rows
}

fn beta(_: &mut ChaCha8Rng) -> Result<Outcome> {
    let rows = beta_rows();
    let residual = rows.iter().map(|r| (r.2 - r.3).abs() - r.4).fold(f64::NEG_INFINITY, f64::max);
    Ok(Outcome { residual, pass: residual <= 0.0 })
}

/// A random kernel from the supported family; the family cycles with the draw.
pub fn random_kernel(rng: &mut ChaCha8Rng) -> Kernel {
    match rng.gen_range(0..3) {
        0 => {
            let gn = random_l1(rng, &params()).as_bv();
            let mut ab = [dyadic(rng, -8.0, 8.0, 4), dyadic(rng, -8.0, 8.0, 4)];
            ab.sort_by(f64::total_cmp);
            Kernel::Shifted { gn, alpha: ab[0], beta: ab[1] }
        }
        1 => Kernel::Separable { a: random_l1(rng, &params()), b: random_bv(rng, &params()) },
        _ => Kernel::CompactShift { gn: random_l1(rng, &params()).as_bv() },
    }
}

fn fubini(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let kernel = random_kernel(rng);
    let (i1, i2) = fubini_check(&f, &kernel, &OracleConfig::default())?;
    Ok(Outcome { residual: (i1 - i2).abs(), pass: (i1 - i2).abs() < ORACLE_TOL })
}

fn pairing(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_l1(rng, &params().with_degree(2));
    let phi = random_test(rng, &params());
    let direct = pairing_convolution(&f, &g, &phi);
    let via = convolve_l1(&f, &g)?.pairing(&phi);
    Ok(Outcome::within((direct - via).abs(), ORACLE_TOL))
}

fn density(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let mut out = Outcome { residual: f64::NEG_INFINITY, pass: true };
    for eps in [0.1, 0.01] {
        let d = f.approximate_by_l1(eps)?.sub(&f).alexiewicz_norm();
        out = out.both(Outcome { residual: d - 3.0 * eps, pass: d < 3.0 * eps });
    }
    Ok(out)
}

fn equality_witness(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let sup = convolve_bv(&f, &BVFunction::indicator_open_ray(0.0)).sup_norm();
    let prime = f.alexiewicz_norm_prime();
    Ok(Outcome { residual: (sup - prime).abs(), pass: sup == prime })
}

fn oracle_calibration(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_bv_normalized(rng, &params());
    let h = convolve_bv(&f, &g);
    let cfg = OracleConfig { tolerance: ORACLE_TOL, ..OracleConfig::default() };
    let (fr, gr) = (f.primitive().rep(), g.rep());
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let x = dyadic(rng, fr.first() + gr.first() - 1.0, fr.last() + gr.last() + 1.0, 6);
        worst = worst.max((oracle_convolve(&f, &g, x, &cfg)? - h.eval(x)).abs());
    }
    Ok(Outcome::within(worst, cfg.tolerance))
}

fn norm_equivalence(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let (n, p) = (f.alexiewicz_norm(), f.alexiewicz_norm_prime());
    Ok(Outcome::within((p - n).max(n - 2.0 * p), 0.0))
}

fn additivity(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let mut pts: Vec<f64> = (0..3).map(|_| rng.gen_range(-6.0..6.0)).collect();
    pts.sort_by(f64::total_cmp);
    let ends = [ExtReal::NegInf, ExtReal::Finite(pts[0]), ExtReal::Finite(pts[1]), ExtReal::Finite(pts[2]), ExtReal::PosInf];
    let mut worst: f64 = 0.0;
    for i in 0..ends.len() {
        for j in i..ends.len() {
            for k in j..ends.len() {
                let split = f.integral(ends[i], ends[j]) + f.integral(ends[j], ends[k]);
                worst = worst.max((split - f.integral(ends[i], ends[k])).abs());
            }
        }
    }
    Ok(Outcome::within(worst, EXACT_TOL))
}

fn variation_bound(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = random_bv(rng, &params());
    let h = random_l1(rng, &params());
    let gh = BVFunction::from_rep(convolve_functions(g.rep(), &h));
    Ok(Outcome::within(gh.variation() - g.variation() * h.l1_norm(), INEQ_SLACK))
}

fn gamma_independence(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = random_distribution(rng, &params());
    let g = random_bv(rng, &params());
    let base = integrate_product(&f, &g);
    let mut worst: f64 = 0.0;
    for gamma in [0.0, 0.5, 1.0, rng.gen_range(0.0..=1.0)] {
        worst = worst.max((integrate_product_normalized(&f, &g, gamma)? - base).abs());
        let h = convolve_bv(&f, &g.normalize(gamma)?);
        worst = worst.max(h.rep().max_coeff_diff(convolve_bv(&f, &g).rep()));
    }
    Ok(Outcome::within(worst, 0.0))
}

/// Samples of `h` on a closed grid, for the CLI.
pub fn sample_rep(rep: &PiecewisePolynomial, lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)> {
    closed_grid(lo, hi, step).into_iter().map(|x| (x, rep.eval(x))).collect()
}

/// Convenience for tests: a distribution together with its random stream.
pub fn sample_distribution(seed: u64, stream: u64) -> Distribution {
    random_distribution(&mut rng_for(seed, stream), &params())
}
