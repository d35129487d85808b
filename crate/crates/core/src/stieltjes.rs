//! Henstock–Stieltjes integrals of continuous primitives against BV integrators.
//!
//! For continuous `F` the Stieltjes integral `∫ F dg_γ` equals `∫ F dμ_g`, so
//! every integral here is a finite sum over the density pieces and the atoms of
//! the derivative measure. Point values of `g` never enter.

use serde::Serialize;

use crate::bv::BVFunction;
use crate::error::Result;
use crate::primitive::{ContinuousPrimitive, Distribution};

/// `∫ F dμ_g = ∫ F ρ + Σ F(x_j) m_j`.
pub fn hs_integral(f: &ContinuousPrimitive, g: &BVFunction) -> f64 {
    g.measure_of().integrate(f.rep())
}

/// `∫ f g = F(inf) g(inf) - ∫ F dg` (integration by parts).
pub fn integrate_product(f: &Distribution, g: &BVFunction) -> f64 {
    let primitive = f.primitive();
    primitive.at_infinity() * g.right_tail() - hs_integral(primitive, g)
}

/// [`integrate_product`] after replacing `g` by its γ-normalization.
pub fn integrate_product_normalized(f: &Distribution, g: &BVFunction, gamma: f64) -> Result<f64> {
    Ok(integrate_product(f, &g.normalize(gamma)?))
}

/// `inf_ℝ |g|`.
pub fn inf_abs(g: &BVFunction) -> f64 {
    g.inf_abs()
}

/// The three sides of the Hölder inequality
/// `|∫ fg| ≤ |∫ f| inf|g| + ‖f‖ V g ≤ ‖f‖ ‖g‖_BV`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderBounds {
    pub lhs: f64,
    pub bound_tight: f64,
    pub bound_norm: f64,
}

impl HolderBounds {
    /// Largest violation of the chain, zero when it holds.
    pub fn violation(&self) -> f64 {
        (self.lhs - self.bound_tight).max(self.bound_tight - self.bound_norm).max(0.0)
    }

    pub fn holds(&self, slack: f64) -> bool {
        self.violation() <= slack
    }
}

pub fn holder_check(f: &Distribution, g: &BVFunction) -> HolderBounds {
    let norm = f.alexiewicz_norm();
    HolderBounds {
        lhs: integrate_product(f, g).abs(),
        bound_tight: f.total().abs() * g.inf_abs() + norm * g.variation(),
        bound_norm: norm * g.bv_norm(),
    }
}

/// Hölder bounds for an a.e.-defined integrator, evaluated on `g_γ`.
pub fn holder_check_ebv(f: &Distribution, g: &BVFunction, gamma: f64) -> Result<HolderBounds> {
    Ok(holder_check(f, &g.normalize(gamma)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f_ramp, f_tent, f_tent_centered};

    #[test]
    fn atom_picks_primitive_value() {
        let step = BVFunction::indicator_open_ray(0.0);
        assert_eq!(hs_integral(f_ramp().primitive(), &step), 0.0);
        assert_eq!(hs_integral(f_tent_centered().primitive(), &step), 1.0);
    }

    #[test]
    fn product_integrals() {
        assert_eq!(integrate_product(&f_ramp(), &BVFunction::constant(1.0)), 1.0);
        assert_eq!(integrate_product(&f_ramp(), &BVFunction::indicator_point(0.0)), 0.0);
        assert_eq!(integrate_product(&f_ramp(), &BVFunction::indicator_open_ray(0.0)), 1.0);
        let g = BVFunction::indicator_open_ray(0.5);
        let a = integrate_product_normalized(&f_ramp(), &g, 0.0).unwrap();
        let b = integrate_product_normalized(&f_ramp(), &g, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn holder_examples() {
        let h = holder_check(&f_tent(), &BVFunction::constant(1.0));
        assert_eq!((h.lhs, h.bound_tight, h.bound_norm), (0.0, 0.0, 1.0));
        let h = holder_check(&f_ramp(), &BVFunction::indicator_open_ray(0.0));
        assert_eq!((h.lhs, h.bound_tight, h.bound_norm), (1.0, 1.0, 1.0));
        assert!(h.holds(0.0));
    }
}
