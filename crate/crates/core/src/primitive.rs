//! Continuous primitives, integrable distributions and test functions.
//!
//! An integrable distribution `f` is stored through its unique primitive
//! `F`, continuous on the extended line with `F(-inf) = 0`. Every quantity
//! in this module is read off `F`: integrals are differences of `F`, the
//! Alexiewicz norm is the oscillation of `F`, and pairings integrate `F`
//! against the derivative of the test function.

use crate::error::{CpintError, Result};
use crate::ext::ExtReal;
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Poly;

/// Relative tolerance for continuity and smoothness checks on coefficients.
pub const CONTINUITY_TOL: f64 = 1e-9;

/// Tolerance used by [`Distribution::equals`].
pub const EQUALITY_TOL: f64 = 1e-12;

fn continuity_bound(rep: &PiecewisePolynomial) -> f64 {
    CONTINUITY_TOL * rep.scale_hint().max(1.0)
}

pub(crate) fn check_continuous(rep: &PiecewisePolynomial) -> Result<()> {
    let bound = continuity_bound(rep);
    for k in 0..rep.breakpoints().len() {
        let (l, r) = rep.limits_at(k);
        if (r - l).abs() > bound {
            return Err(CpintError::Discontinuous { at: rep.breakpoints()[k], jump: r - l });
        }
    }
    Ok(())
}

/// An element of the primitive space: continuous, vanishing at `-inf`, with a
/// finite limit at `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousPrimitive {
    rep: PiecewisePolynomial,
}

impl ContinuousPrimitive {
    pub fn new(rep: PiecewisePolynomial) -> Result<Self> {
        if rep.left_tail() != 0.0 {
            return Err(CpintError::NonzeroLeftTail(rep.left_tail()));
        }
        if !rep.right_tail().is_finite() {
            return Err(CpintError::NonFinite("right tail".into()));
        }
        check_continuous(&rep)?;
        Ok(ContinuousPrimitive { rep })
    }

    pub fn zero() -> Self {
        ContinuousPrimitive { rep: PiecewisePolynomial::zero() }
    }

    pub fn rep(&self) -> &PiecewisePolynomial {
        &self.rep
    }

    pub fn into_rep(self) -> PiecewisePolynomial {
        self.rep
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.rep.eval(x)
    }

    pub fn eval_ext(&self, x: ExtReal) -> f64 {
        self.rep.eval_ext(x)
    }

    /// `F(inf)`, the integral of the distribution over the whole line.
    pub fn at_infinity(&self) -> f64 {
        self.rep.right_tail()
    }
}

/// An integrable distribution `f = F'`, identified with its primitive.
#[derive(Debug, Clone)]
pub struct Distribution {
    primitive: ContinuousPrimitive,
}

/// Wraps a validated primitive as the distribution it differentiates to.
pub fn make_distribution(primitive: ContinuousPrimitive) -> Distribution {
    Distribution { primitive }
}

impl Distribution {
    /// Builds the distribution whose primitive is `rep`, validating it.
    pub fn from_primitive(rep: PiecewisePolynomial) -> Result<Self> {
        Ok(make_distribution(ContinuousPrimitive::new(rep)?))
    }

    pub fn zero() -> Self {
        make_distribution(ContinuousPrimitive::zero())
    }

    pub fn primitive(&self) -> &ContinuousPrimitive {
        &self.primitive
    }

    /// `∫_a^b f = F(b) - F(a)`.
    pub fn integral(&self, a: ExtReal, b: ExtReal) -> f64 {
        self.primitive.eval_ext(b) - self.primitive.eval_ext(a)
    }

    /// `∫ f` over the whole line.
    pub fn total(&self) -> f64 {
        self.primitive.at_infinity()
    }

    /// `sup_I |∫_I f|`, the oscillation of `F` over the extended line.
    pub fn alexiewicz_norm(&self) -> f64 {
        let (lo, hi) = self.primitive.rep.range();
        hi - lo
    }

    /// `sup_x |F(x)|`.
    pub fn alexiewicz_norm_prime(&self) -> f64 {
        self.primitive.rep.sup_abs()
    }

    /// `τ_z f`, whose primitive is `y ↦ F(y - z)`.
    pub fn translate(&self, z: f64) -> Self {
        Distribution {
            primitive: ContinuousPrimitive { rep: self.primitive.rep.translate(z) },
        }
    }

    /// `a f + b g`.
    pub fn linear_combine(a: f64, f: &Self, b: f64, g: &Self) -> Self {
        let rep = PiecewisePolynomial::linear_combine(a, &f.primitive.rep, b, &g.primitive.rep);
        Distribution { primitive: ContinuousPrimitive { rep } }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::linear_combine(1.0, self, -1.0, other)
    }

    /// `⟨f, φ⟩ = -∫ F φ'`.
    pub fn pairing(&self, phi: &TestFunction) -> f64 {
        let dphi = phi.rep.derivative();
        // φ' has zero tails, so the product integral always converges.
        -self
            .primitive
            .rep
            .integrate_product(&dphi)
            .expect("test function derivative has compact support")
    }

    /// `max |F_1 - F_2|` over the merged breakpoints and tails.
    pub fn distance_at_breakpoints(&self, other: &Self) -> f64 {
        self.primitive.rep.max_diff_at_breakpoints(&other.primitive.rep)
    }

    /// Equality up to [`EQUALITY_TOL`] on the merged breakpoint set.
    pub fn equals(&self, other: &Self) -> bool {
        self.distance_at_breakpoints(other) <= EQUALITY_TOL
    }

    /// Returns `f_n` with an absolutely continuous, piecewise-linear primitive
    /// and `‖f_n - f‖ < 3ε`.
    ///
    /// Outside the breakpoint window `[-M, M]` the primitive is exactly constant,
    /// so only the interpolation error inside the window matters. The mesh is
    /// uniform on `[-M, M]` plus the breakpoints of `F`, and is doubled until
    /// `sup |P - F| < ε`, which gives `‖P' - f‖ ≤ 2 sup |P - F| < 2ε`.
    pub fn approximate_by_l1(&self, eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(CpintError::InvalidParameter(format!("epsilon must be positive, got {eps}")));
        }
        let rep = &self.primitive.rep;
        if rep.max_degree() <= 1 {
            return Ok(self.clone());
        }
        let m = rep.first().abs().max(rep.last().abs()).max(f64::MIN_POSITIVE);
        let mut cells = 2 * rep.pieces().len().max(1);
        for _ in 0..40 {
            let uniform: Vec<f64> = (0..=cells)
                .map(|k| -m + 2.0 * m * k as f64 / cells as f64)
                .collect();
            let nodes = crate::piecewise::merge_sorted(&uniform, rep.breakpoints());
            let values: Vec<f64> = nodes.iter().map(|&x| rep.eval(x)).collect();
            let pieces = nodes
                .windows(2)
                .zip(values.windows(2))
                .map(|(x, v)| Poly::linear(v[0], (v[1] - v[0]) / (x[1] - x[0])))
                .collect();
            let interp = PiecewisePolynomial::raw(nodes, pieces, 0.0, rep.right_tail());
            if interp.sub(rep).sup_abs() < eps {
                return Distribution::from_primitive(interp);
            }
            cells *= 2;
        }
        Err(CpintError::InvalidParameter(format!("could not reach epsilon {eps} by mesh refinement")))
    }
}

impl PartialEq for Distribution {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

/// A compactly supported, twice continuously differentiable piecewise polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    rep: PiecewisePolynomial,
}

impl TestFunction {
    pub fn new(rep: PiecewisePolynomial) -> Result<Self> {
        if rep.left_tail() != 0.0 || rep.right_tail() != 0.0 {
            return Err(CpintError::InvalidRepresentation("test functions need zero tails".into()));
        }
        let mut d = rep.clone();
        for order in 0..=2 {
            let bound = continuity_bound(&d);
            for k in 0..d.breakpoints().len() {
                let (l, r) = d.limits_at(k);
                if (r - l).abs() > bound {
                    return Err(CpintError::Smoothness(format!(
                        "derivative of order {order} jumps by {:e} at x = {}",
                        r - l,
                        d.breakpoints()[k]
                    )));
                }
            }
            d = d.derivative();
        }
        Ok(TestFunction { rep })
    }

    pub fn rep(&self) -> &PiecewisePolynomial {
        &self.rep
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.rep.eval(x)
    }

    /// `(1 - ((x - c)/r)^2)^3` on `[c - r, c + r]`, a C² bump of height 1.
    pub fn bump(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(CpintError::InvalidParameter("bump radius must be positive".into()));
        }
        // In s = (x - c)/r: (1 - s^2)^3 = 1 - 3 s^2 + 3 s^4 - s^6; two halves in local t.
        let base = Poly::new(vec![1.0, 0.0, -3.0, 0.0, 3.0, 0.0, -1.0]);
        let left = base.compose_linear(1.0 / radius, -1.0);
        let right = base.compose_linear(1.0 / radius, 0.0);
        let rep = PiecewisePolynomial::from_polys(
            vec![center - radius, center, center + radius],
            vec![left, right],
            0.0,
            0.0,
        )?;
        TestFunction::new(rep)
    }

    /// Equals 1 on `[a, b]`, rises on `[a - ramp, a]` and falls on
    /// `[b, b + ramp]` through the quintic smoothstep `10u³ - 15u⁴ + 6u⁵`.
    pub fn plateau(a: f64, b: f64, ramp: f64) -> Result<Self> {
        if !(ramp > 0.0) || !(b > a) {
            return Err(CpintError::InvalidParameter("plateau needs a < b and ramp > 0".into()));
        }
        let smooth = Poly::new(vec![0.0, 0.0, 0.0, 10.0, -15.0, 6.0]);
        let rise = smooth.compose_linear(1.0 / ramp, 0.0);
        let fall = smooth.compose_linear(-1.0 / ramp, 1.0);
        let rep = PiecewisePolynomial::from_polys(
            vec![a - ramp, a, b, b + ramp],
            vec![rise, Poly::constant(1.0), fall],
            0.0,
            0.0,
        )?;
        TestFunction::new(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f_dip, f_ramp, f_tent};

    #[test]
    fn rejects_nonzero_left_tail_and_jumps() {
        let rep = PiecewisePolynomial::new(vec![0.0], vec![], 0.5, 0.5).unwrap();
        assert_eq!(ContinuousPrimitive::new(rep).unwrap_err(), CpintError::NonzeroLeftTail(0.5));
        let jump = PiecewisePolynomial::new(vec![0.0, 1.0], vec![vec![0.0, 1.0]], 0.0, 2.0).unwrap();
        assert!(matches!(ContinuousPrimitive::new(jump), Err(CpintError::Discontinuous { .. })));
    }

    #[test]
    fn integrals_of_named_examples() {
        let r = f_ramp();
        assert_eq!(r.integral(0.0.into(), 1.0.into()), 1.0);
        assert_eq!(f_tent().integral(ExtReal::NegInf, ExtReal::PosInf), 0.0);
        assert_eq!(r.integral(0.3.into(), 0.3.into()), 0.0);
        assert_eq!(r.integral(1.0.into(), 0.0.into()), -1.0);
    }

    #[test]
    fn norms_of_named_examples() {
        assert_eq!(f_tent().alexiewicz_norm(), 1.0);
        assert_eq!(f_ramp().alexiewicz_norm(), 1.0);
        assert_eq!(Distribution::zero().alexiewicz_norm(), 0.0);
        assert_eq!(f_tent().alexiewicz_norm_prime(), 1.0);
        assert_eq!(f_dip().alexiewicz_norm_prime(), 1.0);
        assert_eq!(f_dip().alexiewicz_norm(), 1.0);
        assert_eq!(f_tent().translate(5.0).alexiewicz_norm(), 1.0);
    }

    #[test]
    fn translate_moves_breakpoints() {
        let t = f_ramp().translate(1.0);
        assert_eq!(t.primitive().rep().breakpoints(), &[1.0, 2.0]);
        assert_eq!(f_ramp().translate(0.0), f_ramp());
    }

    #[test]
    fn linear_structure() {
        let f = f_tent();
        let z = Distribution::linear_combine(1.0, &f, -1.0, &f);
        assert_eq!(z.alexiewicz_norm(), 0.0);
        let two = Distribution::linear_combine(2.0, &f_ramp(), 0.0, &f_tent());
        assert!((two.primitive().eval(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(two.total(), 2.0);
    }

    #[test]
    fn pairing_with_plateau() {
        let phi = TestFunction::plateau(-0.1, 1.1, 0.5).unwrap();
        assert!((f_ramp().pairing(&phi) - 1.0).abs() < 1e-13);
        assert_eq!(Distribution::zero().pairing(&phi), 0.0);
    }

    #[test]
    fn bump_is_c2() {
        let phi = TestFunction::bump(0.5, 1.5).unwrap();
        assert!((phi.eval(0.5) - 1.0).abs() < 1e-15);
        // A tent is not C¹.
        let tent = f_tent().primitive().rep().clone();
        assert!(matches!(TestFunction::new(tent), Err(CpintError::Smoothness(_))));
    }

    #[test]
    fn approximation_trivial_cases() {
        assert!(matches!(f_tent().approximate_by_l1(0.0), Err(CpintError::InvalidParameter(_))));
        let same = f_tent().approximate_by_l1(0.1).unwrap();
        assert_eq!(same.sub(&f_tent()).alexiewicz_norm(), 0.0);
        let z = Distribution::zero().approximate_by_l1(0.5).unwrap();
        assert_eq!(z.alexiewicz_norm(), 0.0);
    }
}
