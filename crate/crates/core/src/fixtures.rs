//! Named example functions used across the tests, the harness and the CLI.

use crate::bv::{BVFunction, L1Function};
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Poly;
use crate::primitive::Distribution;

fn dist(breaks: Vec<f64>, rows: Vec<Vec<f64>>, right: f64) -> Distribution {
    Distribution::from_primitive(PiecewisePolynomial::new(breaks, rows, 0.0, right).unwrap()).unwrap()
}

/// Primitive 0 / x / 1 on `(-inf,0] / [0,1] / [1,inf)`; `f = χ_{(0,1)}`.
pub fn f_ramp() -> Distribution {
    dist(vec![0.0, 1.0], vec![vec![0.0, 1.0]], 1.0)
}

/// Primitive 0 / x / 2-x / 0 with knots 0, 1, 2.
pub fn f_tent() -> Distribution {
    dist(vec![0.0, 1.0, 2.0], vec![vec![0.0, 1.0], vec![1.0, -1.0]], 0.0)
}

/// Primitive 0 / -x / x-2 / 0 with knots 0, 1, 2.
pub fn f_dip() -> Distribution {
    dist(vec![0.0, 1.0, 2.0], vec![vec![0.0, -1.0], vec![-1.0, 1.0]], 0.0)
}

/// The tent shifted so that its peak `F(0) = 1` sits at the origin.
pub fn f_tent_centered() -> Distribution {
    f_tent().translate(-1.0)
}

/// Continuous ramp from 0 to 1 on `[0, 1]` as a BV function.
pub fn bv_ramp() -> BVFunction {
    BVFunction::from_rep(PiecewisePolynomial::new(vec![0.0, 1.0], vec![vec![0.0, 1.0]], 0.0, 1.0).unwrap())
}

/// Tent of height 1 on `[0, 2]`.
pub fn l1_tent() -> L1Function {
    L1Function::tent(0.0, 1.0, 2.0, 1.0).unwrap()
}

/// `χ_{(0,1)}`.
pub fn l1_box() -> L1Function {
    L1Function::indicator(0.0, 1.0, 1.0).unwrap()
}

/// Quadratic B-spline with knot spacing `h` starting at `start`, scaled to
/// total mass `mass`. It is C¹ and supported on `[start, start + 3h]`.
pub fn quadratic_bspline(start: f64, h: f64, mass: f64) -> L1Function {
    let unit = [
        Poly::new(vec![0.0, 0.0, 0.5]),
        Poly::new(vec![0.5, 1.0, -1.0]),
        Poly::new(vec![0.5, -1.0, 0.5]),
    ];
    let pieces = unit.iter().map(|p| p.compose_linear(1.0 / h, 0.0).scale(mass / h)).collect();
    let breaks = (0..4).map(|k| start + k as f64 * h).collect();
    L1Function::new(PiecewisePolynomial::from_polys(breaks, pieces, 0.0, 0.0).unwrap()).unwrap()
}

/// Unit-mass C¹ tent-shaped kernel centred at 0 (quadratic B-spline on `[-1.5, 1.5]`).
pub fn c1_tent_kernel() -> L1Function {
    quadratic_bspline(-1.5, 1.0, 1.0)
}

/// Cubic B-spline bump with knot spacing `h` starting at `start`, peak height
/// `height · 2/3`. It is C² with zero tails.
pub fn cubic_bspline(start: f64, h: f64, height: f64) -> PiecewisePolynomial {
    let unit = [
        Poly::new(vec![0.0, 0.0, 0.0, 1.0 / 6.0]),
        Poly::new(vec![1.0 / 6.0, 0.5, 0.5, -0.5]),
        Poly::new(vec![2.0 / 3.0, 0.0, -1.0, 0.5]),
        Poly::new(vec![1.0 / 6.0, -0.5, 0.5, -1.0 / 6.0]),
    ];
    let pieces = unit.iter().map(|p| p.compose_linear(1.0 / h, 0.0).scale(height)).collect();
    let breaks = (0..5).map(|k| start + k as f64 * h).collect();
    PiecewisePolynomial::from_polys(breaks, pieces, 0.0, 0.0).unwrap()
}

/// C² ramp from 0 to `height` over `[start, start + 3h]` (primitive of a quadratic B-spline).
pub fn smooth_ramp(start: f64, h: f64, height: f64) -> BVFunction {
    quadratic_bspline(start, h, height).primitive()
}
