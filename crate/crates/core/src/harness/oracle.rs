//! Brute-force evaluations of `f ∗ g` used as references for the exact path.

use serde::{Deserialize, Serialize};

use crate::bv::BVFunction;
use crate::error::{CpintError, Result};
use crate::harness::quadrature::GaussRule;
use crate::primitive::Distribution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Maximum number of partition doublings.
    pub partitions: usize,
    /// Width of the cells of the coarsest partition. When it divides the
    /// spacing of all breakpoints of `F` and of `x - (breakpoints of g)`,
    /// every kink of the integrand is a partition node from the first level on.
    pub grid_step: f64,
    /// Stop once successive levels differ by less than this.
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { partitions: 16, grid_step: 1.0 / 64.0, tolerance: 1e-10 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.partitions < 1 || !(self.grid_step > 0.0) || !(self.tolerance > 0.0) {
            return Err(CpintError::InvalidParameter(format!("bad oracle configuration {self:?}")));
        }
        Ok(())
    }
}

/// Riemann–Stieltjes sum `Σ g(x - z_n) [F(t_n) - F(t_{n-1})]` with midpoint
/// tags over a uniform partition of the window where `F` varies.
fn riemann_stieltjes(f: &Distribution, g: &BVFunction, x: f64, lo: f64, hi: f64, cells: usize) -> f64 {
    let big_f = f.primitive();
    let h = (hi - lo) / cells as f64;
    let mut sum = 0.0;
    let mut prev = big_f.eval(lo);
    for k in 0..cells {
        let next = big_f.eval(lo + (k + 1) as f64 * h);
        let z = lo + (k as f64 + 0.5) * h;
        sum += g.eval(x - z) * (next - prev);
        prev = next;
    }
    sum
}

/// Refined Riemann–Stieltjes sums for `(f ∗ g)(x) = ∫ g(x - y) dF(y)`.
///
/// Partitions are doubled from `cfg.grid_step`. Midpoint sums on nested
/// partitions have an even error expansion once every kink of the integrand is
/// a partition node, so successive levels are combined by one Richardson step;
/// the loop stops when three consecutive extrapolated values agree within `cfg.tolerance`.
pub fn oracle_convolve(f: &Distribution, g: &BVFunction, x: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let rep = f.primitive().rep();
    let (lo, last) = (rep.first(), rep.last());
    if last <= lo {
        return Ok(0.0);
    }
    // Stretch the window to grid_step · 2^k so that cell widths stay dyadic
    // multiples of grid_step; F is constant past its last breakpoint.
    let mut cells = 1usize;
    while cells as f64 * cfg.grid_step < last - lo {
        cells *= 2;
    }
    let hi = lo + cells as f64 * cfg.grid_step;
    let mut prev_sum = riemann_stieltjes(f, g, x, lo, hi, cells);
    let mut prev_extrap = f64::NAN;
    let mut prev_change = f64::INFINITY;
    let mut change = f64::INFINITY;
    for _ in 0..cfg.partitions {
        cells *= 2;
        let sum = riemann_stieltjes(f, g, x, lo, hi, cells);
        let extrap = (4.0 * sum - prev_sum) / 3.0;
        change = (extrap - prev_extrap).abs();
        // Coarse partitions that miss a jump can agree by accident, so two
        // consecutive small changes are required.
        if change < cfg.tolerance && prev_change < cfg.tolerance {
            return Ok(extrap);
        }
        prev_change = change;
        prev_sum = sum;
        prev_extrap = extrap;
    }
    Err(CpintError::NonConvergence { levels: cfg.partitions, change })
}

/// `∫ f(x - y) g(y) dy` with `f = F'` as a piecewise-polynomial function,
/// by Gauss–Legendre on every interval between kinks of the integrand.
/// This is the integration order opposite to the one used by `convolve_bv`.
pub fn reversed_order_oracle(f: &Distribution, g: &BVFunction, x: f64) -> f64 {
    let density = f.primitive().rep().derivative();
    let (a0, a1) = (density.first(), density.last());
    let (lo, hi) = (x - a1, x - a0);
    let mut knots = vec![lo, hi];
    knots.extend(density.breakpoints().iter().map(|a| x - a).filter(|&y| y > lo && y < hi));
    knots.extend(g.rep().breakpoints().iter().copied().filter(|&y| y > lo && y < hi));
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let rule = GaussRule::new(12);
    knots
        .windows(2)
        .map(|w| {
            // Evaluate both factors strictly inside the interval so that
            // breakpoint conventions and point values never matter.
            let (p, q) = (density.poly_on(x - w[1], x - w[0]), g.rep().poly_on(w[0], w[1]));
            let span = w[1] - w[0];
            rule.integrate(0.0, span, |t| p.eval(span - t) * q.eval(t))
        })
        .sum()
}
