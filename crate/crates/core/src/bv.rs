//! Functions of bounded variation, L¹ functions and signed measures.

use crate::error::{CpintError, Result};
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Poly;

/// A piecewise-polynomial function of bounded variation.
///
/// Between breakpoints the value is given by `rep`; at a breakpoint it is the
/// right limit unless an explicit entry in `point_values` overrides it (this is
/// how `χ_{(0,∞)}` gets the value 0 at 0 and `χ_{{0}}` gets 1).
#[derive(Debug, Clone, PartialEq)]
pub struct BVFunction {
    rep: PiecewisePolynomial,
    point_values: Vec<(f64, f64)>,
}

impl BVFunction {
    pub fn new(rep: PiecewisePolynomial, mut point_values: Vec<(f64, f64)>) -> Result<Self> {
        point_values.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in point_values.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CpintError::InvalidRepresentation(format!("duplicate point value at {}", w[0].0)));
            }
        }
        for &(x, v) in &point_values {
            if !v.is_finite() {
                return Err(CpintError::NonFinite(format!("point value at {x}")));
            }
            if rep.breakpoints().binary_search_by(|b| b.total_cmp(&x)).is_err() {
                return Err(CpintError::InvalidRepresentation(format!(
                    "point value at {x} is not on a breakpoint"
                )));
            }
        }
        Ok(BVFunction { rep, point_values })
    }

    pub fn from_rep(rep: PiecewisePolynomial) -> Self {
        BVFunction { rep, point_values: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_rep(PiecewisePolynomial::constant(c))
    }

    /// Right-continuous step from `left` to `right` at `at`.
    pub fn step(at: f64, left: f64, right: f64) -> Self {
        Self::from_rep(PiecewisePolynomial::raw(vec![at], Vec::new(), left, right))
    }

    /// `χ_{(a,∞)}`: zero up to and including `a`, one afterwards.
    pub fn indicator_open_ray(a: f64) -> Self {
        BVFunction { rep: PiecewisePolynomial::raw(vec![a], Vec::new(), 0.0, 1.0), point_values: vec![(a, 0.0)] }
    }

    /// `χ_{{a}}`: one at `a`, zero elsewhere.
    pub fn indicator_point(a: f64) -> Self {
        BVFunction { rep: PiecewisePolynomial::zero().translate(a), point_values: vec![(a, 1.0)] }
    }

    pub fn rep(&self) -> &PiecewisePolynomial {
        &self.rep
    }

    pub fn point_values(&self) -> &[(f64, f64)] {
        &self.point_values
    }

    fn point_value(&self, x: f64) -> Option<f64> {
        self.point_values
            .binary_search_by(|(p, _)| p.total_cmp(&x))
            .ok()
            .map(|i| self.point_values[i].1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.point_value(x).unwrap_or_else(|| self.rep.eval(x))
    }

    pub fn left_limit(&self, x: f64) -> f64 {
        self.rep.left_limit(x)
    }

    pub fn right_limit(&self, x: f64) -> f64 {
        self.rep.right_limit(x)
    }

    /// `g(-inf)`.
    pub fn left_tail(&self) -> f64 {
        self.rep.left_tail()
    }

    /// `g(inf)`.
    pub fn right_tail(&self) -> f64 {
        self.rep.right_tail()
    }

    /// Exact variation: `∫|p'|` over every piece plus the breakpoint contributions
    /// `|g(x) - g(x-)| + |g(x+) - g(x)|`.
    pub fn variation(&self) -> f64 {
        let rep = &self.rep;
        let arcs: f64 = rep
            .pieces()
            .iter()
            .enumerate()
            .map(|(i, p)| p.derivative().abs_integral(0.0, rep.piece_len(i)))
            .sum();
        let jumps: f64 = (0..rep.breakpoints().len())
            .map(|k| {
                let (l, r) = rep.limits_at(k);
                let v = self.point_value(rep.breakpoints()[k]).unwrap_or(r);
                (v - l).abs() + (r - v).abs()
            })
            .sum();
        arcs + jumps
    }

    /// `|g(-inf)| + V g`.
    pub fn bv_norm(&self) -> f64 {
        self.left_tail().abs() + self.variation()
    }

    /// `g_γ(x) = (1 - γ) g(x-) + γ g(x+)`.
    pub fn normalize(&self, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(CpintError::InvalidParameter(format!("gamma must lie in [0, 1], got {gamma}")));
        }
        let rep = &self.rep;
        let point_values = (0..rep.breakpoints().len())
            .filter_map(|k| {
                let (l, r) = rep.limits_at(k);
                let v = (1.0 - gamma) * l + gamma * r;
                (v != r).then_some((rep.breakpoints()[k], v))
            })
            .collect();
        Ok(BVFunction { rep: rep.clone(), point_values })
    }

    /// Variation of the right-continuous representative of the a.e. class.
    pub fn essential_variation(&self) -> f64 {
        self.normalize(1.0).expect("gamma = 1 is valid").variation()
    }

    /// The derivative measure: piecewise density plus one atom per jump.
    /// Point values are a.e.-invisible and contribute nothing.
    pub fn measure_of(&self) -> SignedMeasure {
        let rep = &self.rep;
        let atoms = (0..rep.breakpoints().len())
            .filter_map(|k| {
                let (l, r) = rep.limits_at(k);
                (r != l).then_some((rep.breakpoints()[k], r - l))
            })
            .collect();
        SignedMeasure { density: rep.derivative(), atoms }
    }

    /// `inf_ℝ |g|` including tails, one-sided limits and point values.
    pub fn inf_abs(&self) -> f64 {
        self.point_values
            .iter()
            .fold(self.rep.inf_abs(), |m, &(_, v)| m.min(v.abs()))
    }

    /// `sup_ℝ |g|` including point values.
    pub fn sup_abs(&self) -> f64 {
        self.point_values
            .iter()
            .fold(self.rep.sup_abs(), |m, &(_, v)| m.max(v.abs()))
    }

    pub fn translate(&self, z: f64) -> Self {
        BVFunction {
            rep: self.rep.translate(z),
            point_values: self.point_values.iter().map(|&(x, v)| (x + z, v)).collect(),
        }
    }

    /// `a g + b h`, with point values combined wherever either side has one.
    pub fn linear_combine(a: f64, g: &Self, b: f64, h: &Self) -> Self {
        let rep = PiecewisePolynomial::linear_combine(a, &g.rep, b, &h.rep);
        let mut keys: Vec<f64> = g.point_values.iter().chain(&h.point_values).map(|p| p.0).collect();
        keys.sort_by(f64::total_cmp);
        keys.dedup();
        let point_values = keys
            .into_iter()
            .filter_map(|x| {
                let v = a * g.eval(x) + b * h.eval(x);
                (v != rep.eval(x)).then_some((x, v))
            })
            .collect();
        BVFunction { rep, point_values }
    }

    /// The `n`-th piecewise derivative as a BV function (tails zero), after
    /// checking that `g` is `C^n` across every breakpoint including the tails.
    pub fn smooth_derivative(&self, n: usize) -> Result<Self> {
        if !self.point_values.is_empty() {
            return Err(CpintError::Smoothness("isolated point values present".into()));
        }
        let mut d = self.rep.clone();
        for order in 0..=n {
            let bound = crate::primitive::CONTINUITY_TOL * d.scale_hint().max(1.0);
            let jump = d.max_jump();
            if jump > bound {
                return Err(CpintError::Smoothness(format!("derivative of order {order} jumps by {jump:e}")));
            }
            if order < n {
                d = d.derivative();
            }
        }
        Ok(BVFunction::from_rep(d))
    }
}

/// An integrable function with compact support (zero tails).
#[derive(Debug, Clone, PartialEq)]
pub struct L1Function {
    rep: PiecewisePolynomial,
}

impl L1Function {
    pub fn new(rep: PiecewisePolynomial) -> Result<Self> {
        if rep.left_tail() != 0.0 || rep.right_tail() != 0.0 {
            return Err(CpintError::InvalidRepresentation("L1 functions need zero tails".into()));
        }
        Ok(L1Function { rep })
    }

    pub fn zero() -> Self {
        L1Function { rep: PiecewisePolynomial::zero() }
    }

    /// `height · χ_{(a,b)}`.
    pub fn indicator(a: f64, b: f64, height: f64) -> Result<Self> {
        let rep = PiecewisePolynomial::from_polys(vec![a, b], vec![Poly::constant(height)], 0.0, 0.0)?;
        Ok(L1Function { rep })
    }

    /// Tent rising linearly from `a` to `height` at `peak`, back to 0 at `b`.
    pub fn tent(a: f64, peak: f64, b: f64, height: f64) -> Result<Self> {
        let rep = PiecewisePolynomial::from_polys(
            vec![a, peak, b],
            vec![
                Poly::linear(0.0, height / (peak - a)),
                Poly::linear(height, -height / (b - peak)),
            ],
            0.0,
            0.0,
        )?;
        Ok(L1Function { rep })
    }

    pub fn rep(&self) -> &PiecewisePolynomial {
        &self.rep
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.rep.eval(x)
    }

    /// `∫ |g|`.
    pub fn l1_norm(&self) -> f64 {
        self.rep.abs_integral()
    }

    /// `∫ g`.
    pub fn integral(&self) -> f64 {
        self.rep.piece_integral()
    }

    pub fn translate(&self, z: f64) -> Self {
        L1Function { rep: self.rep.translate(z) }
    }

    /// `g_t(x) = g(x/t)/t`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(CpintError::InvalidParameter(format!("scale must be positive, got {t}")));
        }
        Ok(L1Function { rep: self.rep.dilate(t).scale(1.0 / t) })
    }

    pub fn sub(&self, other: &Self) -> Self {
        L1Function { rep: self.rep.sub(&other.rep) }
    }

    /// The same function viewed as a BV function.
    pub fn as_bv(&self) -> BVFunction {
        BVFunction::from_rep(self.rep.clone())
    }

    /// `G(x) = ∫_{-inf}^x g`, continuous and of bounded variation.
    pub fn primitive(&self) -> BVFunction {
        BVFunction::from_rep(self.rep.antiderivative().expect("zero tails"))
    }
}

/// A finite signed measure: piecewise-polynomial density plus point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMeasure {
    density: PiecewisePolynomial,
    atoms: Vec<(f64, f64)>,
}

impl SignedMeasure {
    pub fn new(density: PiecewisePolynomial, mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if density.left_tail() != 0.0 || density.right_tail() != 0.0 {
            return Err(CpintError::InvalidRepresentation("measure density needs zero tails".into()));
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CpintError::InvalidRepresentation("atoms must sit at distinct locations".into()));
        }
        Ok(SignedMeasure { density, atoms })
    }

    pub fn density(&self) -> &PiecewisePolynomial {
        &self.density
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.density.is_identically_zero()
    }

    /// `∫ |density| + Σ |mass|`.
    pub fn total_variation(&self) -> f64 {
        self.density.abs_integral() + self.atoms.iter().map(|a| a.1.abs()).sum::<f64>()
    }

    /// `μ(ℝ)`.
    pub fn total_mass(&self) -> f64 {
        self.density.piece_integral() + self.atoms.iter().map(|a| a.1).sum::<f64>()
    }

    /// `∫ F dμ` for a continuous `F`.
    pub fn integrate(&self, f: &PiecewisePolynomial) -> f64 {
        let smooth = f
            .integrate_product(&self.density)
            .expect("density has zero tails");
        smooth + self.atoms.iter().map(|&(x, m)| f.eval(x) * m).sum::<f64>()
    }
}
