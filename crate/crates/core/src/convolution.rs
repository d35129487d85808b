//! Convolutions of distributions with BV and integrable functions.
//!
//! Everything here reduces to the exact piecewise engine: a distribution is
//! convolved through its primitive, a BV kernel through its derivative
//! measure (density plus atoms).

use serde::Serialize;

use crate::bv::{BVFunction, L1Function};
use crate::engine::{self, Contribution};
use crate::error::{CpintError, Result};
use crate::ext::ExtReal;
use crate::piecewise::{PiecewisePolynomial, DEFAULT_DEGREE_CAP};
use crate::primitive::{make_distribution, ContinuousPrimitive, Distribution, TestFunction};

/// Relative tolerance for deciding that a piece vanishes in [`support_of`].
pub const SUPPORT_TOL: f64 = 1e-12;

/// A continuous function on the extended real line: a continuous piecewise
/// polynomial whose tails are its limits at `-inf` and `inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedContinuousFunction {
    rep: PiecewisePolynomial,
}

impl ExtendedContinuousFunction {
    /// Validates finite tails and continuity (up to [`crate::primitive::CONTINUITY_TOL`], relative).
    pub fn new(rep: PiecewisePolynomial) -> Result<Self> {
        if !rep.left_tail().is_finite() || !rep.right_tail().is_finite() {
            return Err(CpintError::NonFinite("tail values".into()));
        }
        crate::primitive::check_continuous(&rep)?;
        Ok(ExtendedContinuousFunction { rep })
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

    pub fn left_tail(&self) -> f64 {
        self.rep.left_tail()
    }

    pub fn right_tail(&self) -> f64 {
        self.rep.right_tail()
    }

    /// `sup |h|` over the extended line.
    pub fn sup_norm(&self) -> f64 {
        self.rep.sup_abs()
    }

    /// The `n`-th piecewise derivative of the representation.
    pub fn derivative(&self, n: usize) -> PiecewisePolynomial {
        (0..n).fold(self.rep.clone(), |d, _| d.derivative())
    }

    pub fn translate(&self, z: f64) -> Self {
        ExtendedContinuousFunction { rep: self.rep.translate(z) }
    }

    pub fn as_bv(&self) -> BVFunction {
        BVFunction::from_rep(self.rep.clone())
    }

    /// The function as an integrable function, if both tails vanish.
    pub fn as_l1(&self) -> Result<L1Function> {
        L1Function::new(self.rep.clone())
    }

    /// Total variation over the line.
    pub fn variation(&self) -> f64 {
        self.as_bv().variation()
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > DEFAULT_DEGREE_CAP {
        Err(CpintError::DegreeOverflow { degree, cap: DEFAULT_DEGREE_CAP })
    } else {
        Ok(())
    }
}

fn nonzero_degree(p: &PiecewisePolynomial) -> Option<usize> {
    p.pieces().iter().filter(|q| !q.is_zero()).map(|q| q.degree()).max()
}

/// `f ∗ g (x) = ∫ f(y) g(x - y) dy` for a BV kernel.
///
/// With `μ` the derivative measure of `g` (density `ρ`, atoms `m_j` at `s_j`)
/// this is `F(∞) g(-∞) + Σ m_j F(x - s_j) + (F ∗ ρ)(x)`. Point values of `g`
/// play no role. The result degree is not capped.
pub fn convolve_bv(f: &Distribution, g: &BVFunction) -> ExtendedContinuousFunction {
    let big_f = f.primitive().rep();
    let mu = g.measure_of();
    let base = big_f.right_tail() * g.left_tail();
    let mut contribs: Vec<Contribution> = mu
        .atoms()
        .iter()
        .map(|&(s, m)| engine::shifted_copy(big_f, s, m))
        .collect();
    contribs.extend(engine::lebesgue_contributions(big_f, mu.density()));
    ExtendedContinuousFunction { rep: engine::assemble(base, &contribs) }
}

/// Lebesgue convolution `∫ F(x - y) g(y) dy`. Fails if the result would exceed the degree cap.
pub fn convolve_primitive(big_f: &ContinuousPrimitive, g: &L1Function) -> Result<ContinuousPrimitive> {
    if let (Some(df), Some(dg)) = (nonzero_degree(big_f.rep()), nonzero_degree(g.rep())) {
        check_degree(df + dg + 1)?;
    }
    ContinuousPrimitive::new(engine::lebesgue(big_f.rep(), g.rep()))
}

/// The distribution whose primitive is `F ∗ g`.
pub fn convolve_l1(f: &Distribution, g: &L1Function) -> Result<Distribution> {
    Ok(make_distribution(convolve_primitive(f.primitive(), g)?))
}

/// `f ∗ g_t` with `g_t(x) = g(x/t)/t`.
pub fn mollify(f: &Distribution, g: &L1Function, t: f64) -> Result<Distribution> {
    convolve_l1(f, &g.scaled(t)?)
}

/// `f ∗ g^{(n)}` after checking that `g` is `C^n` across its breakpoints.
pub fn convolve_derivative(f: &Distribution, g: &BVFunction, n: usize) -> Result<ExtendedContinuousFunction> {
    if n == 0 {
        return Err(CpintError::InvalidParameter("derivative order must be at least 1".into()));
    }
    Ok(convolve_bv(f, &g.smooth_derivative(n)?))
}

/// `f ∗ G` where `G(x) = ∫_{-inf}^x g`.
pub fn convolve_with_primitive_of(f: &Distribution, g: &L1Function) -> ExtendedContinuousFunction {
    convolve_bv(f, &g.primitive())
}

/// Plain function convolution `∫ a(x - y) b(y) dy`; `a` may have nonzero tails.
pub fn convolve_functions(a: &PiecewisePolynomial, b: &L1Function) -> PiecewisePolynomial {
    engine::lebesgue(a, b.rep())
}

/// `∬ F(y) G(x) φ''(x + y) dx dy` with `G` the primitive of `g`.
///
/// The inner integral `H(y) = ∫ G(x) φ''(x + y) dx` is the Lebesgue
/// convolution of the reflected `G` with `φ''`; the outer one is an exact
/// product integral against `F`.
pub fn pairing_convolution(f: &Distribution, g: &L1Function, phi: &TestFunction) -> f64 {
    let big_g = g.primitive();
    let d2 = phi.rep().derivative().derivative();
    let h = engine::lebesgue(&big_g.rep().reflect(), &d2);
    f.primitive()
        .rep()
        .integrate_product(&h)
        .expect("F vanishes at -inf and H vanishes at +inf")
}

/// Closed interval hull with possibly infinite endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hull {
    #[serde(serialize_with = "ser_ext")]
    pub lo: ExtReal,
    #[serde(serialize_with = "ser_ext")]
    pub hi: ExtReal,
}

fn ser_ext<S: serde::Serializer>(x: &ExtReal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ext_key(x: ExtReal) -> f64 {
    match x {
        ExtReal::NegInf => f64::NEG_INFINITY,
        ExtReal::Finite(v) => v,
        ExtReal::PosInf => f64::INFINITY,
    }
}

fn ext_add(a: ExtReal, b: ExtReal) -> ExtReal {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => ExtReal::Finite(x + y),
        (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => ExtReal::NegInf,
        _ => ExtReal::PosInf,
    }
}

impl Hull {
    /// Minkowski sum of two hulls. Only used with hulls that cannot pair `-inf` with `inf`.
    pub fn sum(&self, other: &Hull) -> Hull {
        Hull { lo: ext_add(self.lo, other.lo), hi: ext_add(self.hi, other.hi) }
    }

    /// Whether `self ⊆ other` up to an absolute slack on finite endpoints.
    pub fn within(&self, other: &Hull, slack: f64) -> bool {
        ext_key(self.lo) >= ext_key(other.lo) - slack && ext_key(self.hi) <= ext_key(other.hi) + slack
    }
}

/// Anything with a closed support hull; `None` is the empty support.
pub trait Supported {
    fn support_hull(&self) -> Option<Hull>;
}

pub fn support_of<T: Supported + ?Sized>(h: &T) -> Option<Hull> {
    h.support_hull()
}

fn hull_of(rep: &PiecewisePolynomial, active: impl Fn(usize) -> bool, left_active: bool, right_active: bool) -> Option<Hull> {
    let bps = rep.breakpoints();
    let n = rep.pieces().len();
    let first = (0..n).find(|&i| active(i));
    let last = (0..n).rev().find(|&i| active(i));
    let lo = if left_active {
        ExtReal::NegInf
    } else if let Some(i) = first {
        ExtReal::Finite(bps[i])
    } else if right_active {
        ExtReal::Finite(rep.last())
    } else {
        return None;
    };
    let hi = if right_active {
        ExtReal::PosInf
    } else if let Some(i) = last {
        ExtReal::Finite(bps[i + 1])
    } else {
        ExtReal::Finite(rep.first())
    };
    Some(Hull { lo, hi })
}

impl Supported for PiecewisePolynomial {
    fn support_hull(&self) -> Option<Hull> {
        let tol = SUPPORT_TOL * self.scale_hint().max(1.0);
        let active = |i: usize| {
            let l = self.piece_len(i);
            let mut pow = 1.0;
            self.pieces()[i].coeffs().iter().any(|c| {
                let v = (c * pow).abs();
                pow *= l;
                v > tol
            })
        };
        hull_of(self, active, self.left_tail().abs() > tol, self.right_tail().abs() > tol)
    }
}

impl Supported for ExtendedContinuousFunction {
    fn support_hull(&self) -> Option<Hull> {
        self.rep.support_hull()
    }
}

impl Supported for L1Function {
    fn support_hull(&self) -> Option<Hull> {
        self.rep().support_hull()
    }
}

impl Supported for BVFunction {
    fn support_hull(&self) -> Option<Hull> {
        self.rep().support_hull()
    }
}

/// The support of `f = F'`: the hull of the pieces on which `F` is not constant.
impl Supported for Distribution {
    fn support_hull(&self) -> Option<Hull> {
        let rep = self.primitive().rep();
        let tol = SUPPORT_TOL * rep.scale_hint().max(1.0);
        let active = |i: usize| {
            let l = rep.piece_len(i);
            let mut pow = l;
            rep.pieces()[i].coeffs().iter().skip(1).any(|c| {
                let v = (c * pow).abs();
                pow *= l;
                v > tol
            })
        };
        hull_of(rep, active, false, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn step_kernel_reproduces_primitive() {
        let f = f_tent();
        let h = convolve_bv(&f, &BVFunction::indicator_open_ray(0.0));
        for k in -10..40 {
            let x = k as f64 * 0.0625;
            assert_eq!(h.eval(x), f.primitive().eval(x));
        }
    }

    #[test]
    fn constant_kernel_gives_total() {
        let f = f_ramp();
        let h = convolve_bv(&f, &BVFunction::constant(1.0));
        assert_eq!(h.eval(-3.0), 1.0);
        assert_eq!(h.eval(0.3), 1.0);
        assert!(!h.rep().is_identically_zero());
    }

    #[test]
    fn point_kernel_gives_zero() {
        let h = convolve_bv(&f_tent(), &BVFunction::indicator_point(0.0));
        assert!(h.rep().is_identically_zero());
    }

    #[test]
    fn primitive_example_at_two() {
        let r = convolve_primitive(f_ramp().primitive(), &l1_box()).unwrap();
        assert!((r.eval(2.0) - 1.0).abs() < 1e-15);
        assert!((r.at_infinity() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn box_convolution_is_difference_of_shifts() {
        let f = f_tent();
        let c = convolve_l1(&f, &l1_box()).unwrap();
        for k in -4..30 {
            let x = k as f64 * 0.125;
            let e = f.primitive().eval(x) - f.primitive().eval(x - 1.0);
            // The primitive of f ∗ χ_(0,1) is ∫_{x-1}^x F.
            let big_f = f.primitive().rep();
            let direct = (0..2000)
                .map(|j| big_f.eval(x - 1.0 + (j as f64 + 0.5) / 2000.0))
                .sum::<f64>()
                / 2000.0;
            assert!((c.primitive().eval(x) - direct).abs() < 1e-6);
            let d = c.primitive().rep().derivative();
            assert!((d.eval(x + 1e-9) - e).abs() < 1e-6 || x.fract() == 0.0);
        }
    }

    #[test]
    fn degree_cap_rejects_cubic_against_cubic() {
        let big_f = ContinuousPrimitive::new(
            PiecewisePolynomial::new(vec![0.0, 1.0], vec![vec![0.0, 0.0, 0.0, 1.0]], 0.0, 1.0).unwrap(),
        )
        .unwrap();
        let g = L1Function::new(PiecewisePolynomial::new(vec![0.0, 1.0], vec![vec![0.0, 0.0, 0.0, 1.0]], 0.0, 0.0).unwrap())
            .unwrap();
        let quad = L1Function::new(
            PiecewisePolynomial::new(vec![0.0, 1.0], vec![vec![0.0, 0.0, 1.0]], 0.0, 0.0).unwrap(),
        )
        .unwrap();
        assert_eq!(convolve_primitive(&big_f, &quad).unwrap().rep().max_degree(), 6);
        let r = convolve_primitive(&big_f, &g);
        assert!(matches!(r, Err(CpintError::DegreeOverflow { degree: 7, cap: 6 })), "{r:?}");
    }

    #[test]
    fn primitive_of_kernel_matches_lebesgue_path() {
        let f = f_dip();
        let g = l1_tent();
        let a = convolve_with_primitive_of(&f, &g);
        let b = convolve_primitive(f.primitive(), &g).unwrap();
        assert!(a.rep().max_diff_at_breakpoints(b.rep()) < 1e-12);
    }

    #[test]
    fn pairing_paths_agree() {
        let f = f_ramp();
        let g = l1_box();
        let phi = TestFunction::bump(1.5, 2.5).unwrap();
        let lhs = pairing_convolution(&f, &g, &phi);
        let rhs = convolve_l1(&f, &g).unwrap().pairing(&phi);
        assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn supports() {
        let s = support_of(&f_tent()).unwrap();
        assert_eq!(s, Hull { lo: ExtReal::Finite(0.0), hi: ExtReal::Finite(2.0) });
        let h = convolve_bv(&f_tent(), &l1_box().as_bv());
        let sh = support_of(&h).unwrap();
        assert!(sh.within(&Hull { lo: ExtReal::Finite(0.0), hi: ExtReal::Finite(3.0) }, 0.0));
        assert!(support_of(&Distribution::zero()).is_none());
        assert!(support_of(&PiecewisePolynomial::zero()).is_none());
        let ramp = convolve_bv(&f_ramp(), &BVFunction::indicator_open_ray(0.0));
        assert_eq!(support_of(&ramp).unwrap().hi, ExtReal::PosInf);
    }

    #[test]
    fn mollify_at_unit_scale_is_plain_convolution() {
        let f = f_tent();
        let g = l1_tent();
        assert_eq!(mollify(&f, &g, 1.0).unwrap(), convolve_l1(&f, &g).unwrap());
        assert!(mollify(&f, &g, 0.0).is_err());
    }
}
