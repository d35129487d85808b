//! Both iterated integrals of `∫∫ f(y) g(x, y)` for a family of kernels.

use crate::bv::{BVFunction, L1Function};
use crate::convolution::convolve_bv;
use crate::error::{CpintError, Result};
use crate::harness::oracle::OracleConfig;
use crate::piecewise::PiecewisePolynomial;
use crate::primitive::Distribution;
use crate::stieltjes::integrate_product;

/// Supported two-variable kernels.
#[derive(Debug, Clone)]
pub enum Kernel {
    /// `g(x, y) = g_n(x - y) χ_[α,β](x)` with `g_n` of bounded variation and compact support.
    Shifted { gn: BVFunction, alpha: f64, beta: f64 },
    /// `g(x, y) = a(x) b(y)`.
    Separable { a: L1Function, b: BVFunction },
    /// `g(x, y) = g_n(x - y)` over all `x`; requires `f` of compact support.
    CompactShift { gn: BVFunction },
}

fn compact(gn: &BVFunction) -> Result<L1Function> {
    if gn.left_tail() != 0.0 || gn.right_tail() != 0.0 {
        return Err(CpintError::UnsupportedKernel("g_n must vanish outside a bounded interval".into()));
    }
    L1Function::new(gn.rep().clone())
}

/// `y ↦ ∫_α^β g_n(x - y) dx = G_n(β - y) - G_n(α - y)`.
fn window_kernel(big_gn: &PiecewisePolynomial, alpha: f64, beta: f64) -> BVFunction {
    let r = big_gn.reflect();
    BVFunction::from_rep(r.translate(beta).sub(&r.translate(alpha)))
}

/// Returns `(I1, I2)`: `I1` integrates over `y` first, `I2` over `x` first.
/// Inner integrals are exact; outer ones are exact piecewise integrals or
/// Stieltjes products.
pub fn fubini_check(f: &Distribution, kernel: &Kernel, cfg: &OracleConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    match kernel {
        Kernel::Shifted { gn, alpha, beta } => {
            let gl1 = compact(gn)?;
            if !(alpha <= beta) {
                return Err(CpintError::UnsupportedKernel("need alpha <= beta".into()));
            }
            let i1 = convolve_bv(f, gn).rep().integral_over(*alpha, *beta);
            let big_gn = gl1.primitive();
            let i2 = integrate_product(f, &window_kernel(big_gn.rep(), *alpha, *beta));
            Ok((i1, i2))
        }
        Kernel::Separable { a, b } => {
            let i1 = integrate_product(f, b) * a.integral();
            let i2 = integrate_product(f, &BVFunction::from_rep(b.rep().scale(a.integral())));
            Ok((i1, i2))
        }
        Kernel::CompactShift { gn } => {
            let gl1 = compact(gn)?;
            let h = convolve_bv(f, gn);
            let rep = h.rep();
            let i1 = rep.integral_over(rep.first(), rep.last());
            let i2 = f.total() * gl1.integral();
            Ok((i1, i2))
        }
    }
}
