//! Step-function approximation of the integrable-kernel convolution.

use serde::Serialize;

use crate::bv::L1Function;
use crate::convolution::{convolve_bv, convolve_l1};
use crate::error::{CpintError, Result};
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Poly;
use crate::primitive::Distribution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitTerm {
    /// `‖f ∗ g_n - f ∗ g‖`.
    pub distance: f64,
    /// `‖f‖ ‖g_n - g‖_1`.
    pub bound: f64,
}

/// Cell averages of `g` on `cells` equal cells of its breakpoint hull.
pub fn step_approximant(g: &L1Function, cells: usize) -> L1Function {
    let rep = g.rep();
    let (lo, hi) = (rep.first(), rep.last());
    if hi <= lo {
        return L1Function::zero();
    }
    let h = (hi - lo) / cells as f64;
    let big_g = g.primitive();
    let knots: Vec<f64> = (0..=cells).map(|k| if k == cells { hi } else { lo + k as f64 * h }).collect();
    let pieces = knots
        .windows(2)
        .map(|w| Poly::constant((big_g.eval(w[1]) - big_g.eval(w[0])) / (w[1] - w[0])))
        .collect();
    L1Function::new(PiecewisePolynomial::from_polys(knots, pieces, 0.0, 0.0).expect("valid grid")).expect("zero tails")
}

/// For `n = 1..=steps`, approximates `g` by cell averages on `2^(n+3)` cells
/// and measures the distance from `f ∗ g_n` (computed as a function through
/// the BV path, then read as a distribution) to `f ∗ g`.
pub fn verify_l1defn_limit(f: &Distribution, g: &L1Function, steps: usize) -> Result<Vec<LimitTerm>> {
    if steps < 2 {
        return Err(CpintError::InvalidParameter("need at least two steps".into()));
    }
    let target = convolve_l1(f, g)?;
    let fnorm = f.alexiewicz_norm();
    (1..=steps)
        .map(|n| {
            let gn = step_approximant(g, 1 << (n + 3));
            let h = convolve_bv(f, &gn.as_bv());
            // f ∗ g_n is integrable; force exact zero tails before integrating
            // (they are F(inf)·(sums of jumps) and vanish up to rounding).
            let rep = h.rep();
            let trimmed = PiecewisePolynomial::from_polys(rep.breakpoints().to_vec(), rep.pieces().to_vec(), 0.0, 0.0)
                .unwrap_or_else(|_| rep.clone());
            let as_dist = Distribution::from_primitive(trimmed.antiderivative()?)?;
            Ok(LimitTerm { distance: as_dist.sub(&target).alexiewicz_norm(), bound: fnorm * gn.sub(g).l1_norm() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn step_kernel_is_reproduced() {
        let terms = verify_l1defn_limit(&f_tent(), &l1_box(), 3).unwrap();
        for t in terms {
            assert!(t.distance < 1e-14 && t.bound < 1e-14, "{t:?}");
        }
    }

    #[test]
    fn tent_kernel_decreases() {
        let terms = verify_l1defn_limit(&f_tent(), &l1_tent(), 6).unwrap();
        for w in terms.windows(2) {
            assert!(w[1].distance < w[0].distance);
        }
        for t in &terms {
            assert!(t.distance <= t.bound + 1e-9);
        }
    }
}
