//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use cpint::harness::random::{random_distribution, random_l1, rng_for};
use cpint::harness::suites::{
    beta_rows, mollifier_sequence, EXACT_TOL, FD_REL_TOL, INEQ_SLACK, ORACLE_TOL, PRIMITIVE_TOL,
};
use cpint::harness::{fubini_check, run_suite, Kernel, OracleConfig, PropertyReport, RandomParams};

const SEED: u64 = 42;

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn suite(name: &str, trials: usize) -> PropertyReport {
    run_suite(name, SEED, trials).expect("registered suite")
}

fn describe(r: &PropertyReport, tol: f64) -> String {
    format!(
        "{} trials {} failures {} worst {:.3e} tol {:.0e} {:.2}s",
        r.suite, r.trials, r.failures, r.worst_slack, tol, r.elapsed
    )
}

/// A suite criterion with zero allowed failures and an optional time limit.
fn from_suite(id: u32, name: &'static str, suite_name: &str, trials: usize, tol: f64, limit: Option<f64>) -> Line {
    let r = suite(suite_name, trials);
    let in_time = limit.is_none_or(|l| r.elapsed < l);
    let mut detail = describe(&r, tol);
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {l}s)"));
    }
    Line { id, name, pass: r.failures == 0 && in_time, detail }
}

fn commutativity_and_associativity() -> Line {
    let c = suite("commutativity", 100);
    let a = suite("associativity", 50);
    Line {
        id: 7,
        name: "commutativity/associativity",
        pass: c.failures == 0 && a.failures == 0,
        detail: format!("{}; {}", describe(&c, ORACLE_TOL), describe(&a, ORACLE_TOL)),
    }
}

fn mollifier() -> Line {
    let start = Instant::now();
    let norms = mollifier_sequence().expect("mollifier sequence");
    let elapsed = start.elapsed().as_secs_f64();
    let target = 0.01 * cpint::fixtures::f_tent().alexiewicz_norm();
    let last = *norms.last().expect("nine terms");
    Line {
        id: 12,
        name: "mollifier",
        pass: last < target && elapsed < 10.0,
        detail: format!(
            "norms {} target {target:.0e} {elapsed:.2}s (limit 10s)",
            norms.iter().map(|n| format!("{n:.2e}")).collect::<Vec<_>>().join(" ")
        ),
    }
}

fn beta() -> Line {
    let start = Instant::now();
    let rows = beta_rows();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = rows.iter().all(|r| (r.2 - r.3).abs() <= r.4) && elapsed < 30.0;
    let cells: Vec<String> = rows
        .iter()
        .map(|(alpha, x, got, want, tol)| format!("a={alpha} x={x} err {:.1e}/{tol:.0e}", (got - want).abs()))
        .collect();
    Line { id: 13, name: "beta", pass, detail: format!("{} {elapsed:.2}s (limit 30s)", cells.join(", ")) }
}

fn fubini() -> Line {
    let r = suite("fubini", 200);
    // The compact-support variant on its own, so its presence does not depend on the draw.
    let cfg = OracleConfig::default();
    let p = RandomParams::default();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for i in 0..50 {
        let mut rng = rng_for(SEED ^ 0xF0B1, i);
        let f = random_distribution(&mut rng, &p);
        let gn = random_l1(&mut rng, &p).as_bv();
        match fubini_check(&f, &Kernel::CompactShift { gn }, &cfg) {
            Ok((i1, i2)) => {
                worst = worst.max((i1 - i2).abs());
                failures += usize::from((i1 - i2).abs() >= ORACLE_TOL);
            }
            Err(_) => failures += 1,
        }
    }
    Line {
        id: 14,
        name: "fubini",
        pass: r.failures == 0 && failures == 0,
        detail: format!("{}; compact_shift trials 50 failures {failures} worst {worst:.3e}", describe(&r, ORACLE_TOL)),
    }
}

fn main() -> ExitCode {
    let lines = vec![
        from_suite(1, "step kernel", "step_kernel", 100, EXACT_TOL, Some(5.0)),
        from_suite(2, "null kernel", "null_kernel", 100, 0.0, None),
        from_suite(3, "constant kernel", "constant_kernel", 100, EXACT_TOL, None),
        from_suite(4, "holder", "holder", 1000, INEQ_SLACK, None),
        from_suite(5, "uniform bound and tails", "uniform_bound", 1000, EXACT_TOL, None),
        from_suite(6, "young", "young", 1000, INEQ_SLACK, None),
        commutativity_and_associativity(),
        from_suite(8, "translation", "translation", 100, 0.0, None),
        from_suite(9, "derivative", "derivative", 50, FD_REL_TOL, None),
        from_suite(10, "primitive identities", "primitive_identity", 100, PRIMITIVE_TOL, None),
        from_suite(11, "l1 definition limit", "l1defn_limit", 50, INEQ_SLACK, None),
        mollifier(),
        beta(),
        fubini(),
        from_suite(15, "pairing", "pairing", 50, ORACLE_TOL, None),
        from_suite(16, "density", "density", 50, 0.0, None),
        from_suite(17, "equality witness", "equality_witness", 100, 0.0, None),
    ];
    let mut failed = 0;
    for l in &lines {
        println!("criterion {:>2} {:<28} {} {}", l.id, l.name, if l.pass { "PASS" } else { "FAIL" }, l.detail);
        failed += usize::from(!l.pass);
    }
    println!("acceptance: {} of {} criteria passed", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
