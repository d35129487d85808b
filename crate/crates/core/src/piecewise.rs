//! The shared function carrier: piecewise polynomials with constant tails.
//!
//! A [`PiecewisePolynomial`] is defined by breakpoints `x_0 < ... < x_n`, one
//! polynomial per open interval `(x_{i-1}, x_i)` written in the local variable
//! `t = x - x_{i-1}`, and constant values on `(-inf, x_0]` and `[x_n, inf)`.
//! Local coordinates keep translation exact: shifting a function only moves its
//! breakpoints.
//!
//! Point evaluation at a breakpoint is right-continuous; use [`left_limit`] and
//! [`right_limit`] for one-sided values.
//!
//! [`left_limit`]: PiecewisePolynomial::left_limit
//! [`right_limit`]: PiecewisePolynomial::right_limit

use crate::error::{CpintError, Result};
use crate::ext::ExtReal;
use crate::poly::Poly;

/// Largest piece degree accepted by the validating constructors.
pub const DEFAULT_DEGREE_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<f64>,
    pieces: Vec<Poly>,
    left_tail: f64,
    right_tail: f64,
    degree_cap: usize,
}

/// Where a point falls relative to the breakpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    LeftTail,
    /// Inside piece `i` at local coordinate `t`.
    Piece(usize, f64),
    RightTail,
}

impl PiecewisePolynomial {
    /// Validating constructor with the default degree cap.
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>, left_tail: f64, right_tail: f64) -> Result<Self> {
        Self::with_degree_cap(breakpoints, pieces, left_tail, right_tail, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(
        breakpoints: Vec<f64>,
        pieces: Vec<Vec<f64>>,
        left_tail: f64,
        right_tail: f64,
        degree_cap: usize,
    ) -> Result<Self> {
        let pieces = pieces.into_iter().map(Poly::new).collect();
        let pp = PiecewisePolynomial { breakpoints, pieces, left_tail, right_tail, degree_cap };
        pp.validate()?;
        Ok(pp)
    }

    pub fn from_polys(breakpoints: Vec<f64>, pieces: Vec<Poly>, left_tail: f64, right_tail: f64) -> Result<Self> {
        let pp = PiecewisePolynomial {
            breakpoints,
            pieces,
            left_tail,
            right_tail,
            degree_cap: DEFAULT_DEGREE_CAP,
        };
        pp.validate()?;
        Ok(pp)
    }

    /// Unvalidated constructor for intermediate results whose degree may exceed
    /// the cap (products, nested convolutions inside pairings).
    pub(crate) fn raw(breakpoints: Vec<f64>, pieces: Vec<Poly>, left_tail: f64, right_tail: f64) -> Self {
        let deg = pieces.iter().map(Poly::degree).max().unwrap_or(0);
        PiecewisePolynomial {
            breakpoints,
            pieces,
            left_tail,
            right_tail,
            degree_cap: deg.max(DEFAULT_DEGREE_CAP),
        }
    }

    /// The constant function `c` (single breakpoint at 0, no pieces).
    pub fn constant(c: f64) -> Self {
        PiecewisePolynomial::raw(vec![0.0], Vec::new(), c, c)
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    fn validate(&self) -> Result<()> {
        if self.breakpoints.is_empty() {
            return Err(CpintError::InvalidRepresentation("at least one breakpoint is required".into()));
        }
        if self.breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(CpintError::NonFinite("breakpoints".into()));
        }
        if self.breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CpintError::InvalidRepresentation("breakpoints must be strictly increasing".into()));
        }
        if self.pieces.len() + 1 != self.breakpoints.len() {
            return Err(CpintError::InvalidRepresentation(format!(
                "{} breakpoints need {} pieces, got {}",
                self.breakpoints.len(),
                self.breakpoints.len() - 1,
                self.pieces.len()
            )));
        }
        if !self.left_tail.is_finite() || !self.right_tail.is_finite() {
            return Err(CpintError::NonFinite("tail values".into()));
        }
        if self.pieces.iter().any(|p| !p.is_finite()) {
            return Err(CpintError::NonFinite("piece coefficients".into()));
        }
        let deg = self.max_degree();
        if deg > self.degree_cap {
            return Err(CpintError::DegreeOverflow { degree: deg, cap: self.degree_cap });
        }
        Ok(())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn left_tail(&self) -> f64 {
        self.left_tail
    }

    pub fn right_tail(&self) -> f64 {
        self.right_tail
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn first(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn last(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn piece_len(&self, i: usize) -> f64 {
        self.breakpoints[i + 1] - self.breakpoints[i]
    }

    /// Coefficient rows, constant term first, in local coordinates.
    pub fn coefficient_rows(&self) -> Vec<Vec<f64>> {
        self.pieces.iter().map(|p| p.coeffs().to_vec()).collect()
    }

    pub fn locate(&self, x: f64) -> Location {
        let k = self.breakpoints.partition_point(|&b| b <= x);
        if k == 0 {
            Location::LeftTail
        } else if k == self.breakpoints.len() {
            Location::RightTail
        } else {
            Location::Piece(k - 1, x - self.breakpoints[k - 1])
        }
    }

    /// Value at `x`, right-continuous at breakpoints.
    pub fn eval(&self, x: f64) -> f64 {
        match self.locate(x) {
            Location::LeftTail => self.left_tail,
            Location::Piece(i, t) => self.pieces[i].eval(t),
            Location::RightTail => self.right_tail,
        }
    }

    pub fn eval_ext(&self, x: ExtReal) -> f64 {
        match x {
            ExtReal::NegInf => self.left_tail,
            ExtReal::Finite(x) => self.eval(x),
            ExtReal::PosInf => self.right_tail,
        }
    }

    pub fn right_limit(&self, x: f64) -> f64 {
        self.eval(x)
    }

    pub fn left_limit(&self, x: f64) -> f64 {
        match self.breakpoints.binary_search_by(|b| b.total_cmp(&x)) {
            Ok(0) => self.left_tail,
            Ok(k) => self.pieces[k - 1].eval(self.piece_len(k - 1)),
            Err(_) => self.eval(x),
        }
    }

    /// `(g(x_k-), g(x_k+))` at breakpoint index `k`.
    pub fn limits_at(&self, k: usize) -> (f64, f64) {
        let left = if k == 0 {
            self.left_tail
        } else {
            self.pieces[k - 1].eval(self.piece_len(k - 1))
        };
        let right = if k + 1 == self.breakpoints.len() {
            self.right_tail
        } else {
            self.pieces[k].coeff(0)
        };
        (left, right)
    }

    /// Largest one-sided mismatch over all breakpoints.
    pub fn max_jump(&self) -> f64 {
        (0..self.breakpoints.len())
            .map(|k| {
                let (l, r) = self.limits_at(k);
                (r - l).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest coefficient or tail magnitude, used to scale tolerances.
    pub fn scale_hint(&self) -> f64 {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let l = self.piece_len(i);
                let mut pow = 1.0;
                p.coeffs()
                    .iter()
                    .map(|c| {
                        let v = (c * pow).abs();
                        pow *= l;
                        v
                    })
                    .fold(0.0, f64::max)
            })
            .fold(self.left_tail.abs().max(self.right_tail.abs()), f64::max)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.left_tail == 0.0 && self.right_tail == 0.0 && self.pieces.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, s: f64) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(s)).collect(),
            left_tail: self.left_tail * s,
            right_tail: self.right_tail * s,
            degree_cap: self.degree_cap,
        }
    }

    /// `x ↦ self(x - z)`: only the breakpoints move.
    pub fn translate(&self, z: f64) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.iter().map(|b| b + z).collect(),
            pieces: self.pieces.clone(),
            left_tail: self.left_tail,
            right_tail: self.right_tail,
            degree_cap: self.degree_cap,
        }
    }

    /// `x ↦ self(-x)`.
    pub fn reflect(&self) -> Self {
        let n = self.pieces.len();
        let pieces = (0..n)
            .rev()
            .map(|i| self.pieces[i].compose_linear(-1.0, self.piece_len(i)))
            .collect();
        PiecewisePolynomial {
            breakpoints: self.breakpoints.iter().rev().map(|b| -b).collect(),
            pieces,
            left_tail: self.right_tail,
            right_tail: self.left_tail,
            degree_cap: self.degree_cap,
        }
    }

    /// `x ↦ self(x / t)` for `t > 0`.
    pub fn dilate(&self, t: f64) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.iter().map(|b| b * t).collect(),
            pieces: self.pieces.iter().map(|p| p.compose_linear(1.0 / t, 0.0)).collect(),
            left_tail: self.left_tail,
            right_tail: self.right_tail,
            degree_cap: self.degree_cap,
        }
    }

    /// Piecewise derivative; jumps are dropped and tails become zero.
    pub fn derivative(&self) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(Poly::derivative).collect(),
            left_tail: 0.0,
            right_tail: 0.0,
            degree_cap: self.degree_cap,
        }
    }

    /// `x ↦ ∫_{-inf}^x self`, continuous, for a function with zero tails.
    pub fn antiderivative(&self) -> Result<Self> {
        if self.left_tail != 0.0 || self.right_tail != 0.0 {
            return Err(CpintError::InvalidParameter(
                "antiderivative needs zero tails (otherwise it is unbounded)".into(),
            ));
        }
        let mut acc = 0.0;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (i, p) in self.pieces.iter().enumerate() {
            let mut a = p.antiderivative();
            if a.is_empty() {
                a = Poly::constant(acc);
            } else {
                let mut c = a.into_coeffs();
                c[0] = acc;
                a = Poly::new(c);
            }
            acc = a.eval(self.piece_len(i));
            pieces.push(a);
        }
        Ok(PiecewisePolynomial::raw(self.breakpoints.clone(), pieces, 0.0, acc))
    }

    /// Polynomial describing `self` on `[lo, hi]` (which must not straddle a
    /// breakpoint), written in the local variable `t = x - lo`.
    pub fn poly_on(&self, lo: f64, hi: f64) -> Poly {
        match self.locate(0.5 * (lo + hi)) {
            Location::LeftTail => Poly::constant(self.left_tail),
            Location::RightTail => Poly::constant(self.right_tail),
            Location::Piece(i, _) => self.pieces[i].shift(lo - self.breakpoints[i]),
        }
    }

    /// Sorted union of both breakpoint sets.
    pub fn merged_breakpoints(&self, other: &Self) -> Vec<f64> {
        merge_sorted(&self.breakpoints, &other.breakpoints)
    }

    /// Re-expresses both functions on the merged grid. Returns the grid and,
    /// per interval, the two local polynomials.
    pub fn align(&self, other: &Self) -> (Vec<f64>, Vec<(Poly, Poly)>) {
        let grid = self.merged_breakpoints(other);
        let pairs = grid
            .windows(2)
            .map(|w| (self.poly_on(w[0], w[1]), other.poly_on(w[0], w[1])))
            .collect();
        (grid, pairs)
    }

    /// `a * self + b * other` on the merged grid.
    pub fn linear_combine(a: f64, f: &Self, b: f64, g: &Self) -> Self {
        let (grid, pairs) = f.align(g);
        let pieces = pairs.iter().map(|(p, q)| p.scale(a).add(&q.scale(b))).collect();
        let mut out = PiecewisePolynomial::raw(
            grid,
            pieces,
            a * f.left_tail + b * g.left_tail,
            a * f.right_tail + b * g.right_tail,
        );
        out.degree_cap = f.degree_cap.max(g.degree_cap);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::linear_combine(1.0, self, 1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::linear_combine(1.0, self, -1.0, other)
    }

    /// `(inf, sup)` over the extended line of the closure of the graph
    /// (tails and one-sided limits; right-continuous point values are included).
    pub fn range(&self) -> (f64, f64) {
        let mut lo = self.left_tail.min(self.right_tail);
        let mut hi = self.left_tail.max(self.right_tail);
        for (i, p) in self.pieces.iter().enumerate() {
            let (a, b) = p.range_on(0.0, self.piece_len(i));
            lo = lo.min(a);
            hi = hi.max(b);
        }
        (lo, hi)
    }

    pub fn sup_abs(&self) -> f64 {
        let (lo, hi) = self.range();
        lo.abs().max(hi.abs())
    }

    /// Infimum of `|self|` over the closure of the graph.
    pub fn inf_abs(&self) -> f64 {
        let mut m = self.left_tail.abs().min(self.right_tail.abs());
        for (i, p) in self.pieces.iter().enumerate() {
            let l = self.piece_len(i);
            if !p.roots_in(0.0, l).is_empty() {
                return 0.0;
            }
            let (a, b) = p.range_on(0.0, l);
            let piece_min = if a <= 0.0 && b >= 0.0 { 0.0 } else { a.abs().min(b.abs()) };
            m = m.min(piece_min);
        }
        m
    }

    /// `∫ |self|` over the pieces; infinite if a tail is nonzero.
    pub fn abs_integral(&self) -> f64 {
        if self.left_tail != 0.0 || self.right_tail != 0.0 {
            return f64::INFINITY;
        }
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| p.abs_integral(0.0, self.piece_len(i)))
            .sum()
    }

    /// `∫ self` over the pieces (the tails are ignored).
    pub fn piece_integral(&self) -> f64 {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| p.integral(0.0, self.piece_len(i)))
            .sum()
    }

    /// `∫_a^b self` for finite `a <= b`, tails included.
    pub fn integral_over(&self, a: f64, b: f64) -> f64 {
        if b < a {
            return -self.integral_over(b, a);
        }
        if b == a {
            return 0.0;
        }
        let mut knots = vec![a];
        knots.extend(self.breakpoints.iter().copied().filter(|&x| x > a && x < b));
        knots.push(b);
        knots.windows(2).map(|w| self.poly_on(w[0], w[1]).integral(0.0, w[1] - w[0])).sum()
    }

    /// `∫ self * other` over the real line; one factor of each tail pair must vanish.
    pub fn integrate_product(&self, other: &Self) -> Result<f64> {
        if self.left_tail * other.left_tail != 0.0 || self.right_tail * other.right_tail != 0.0 {
            return Err(CpintError::InvalidParameter(
                "product integral diverges: both factors have a nonzero tail".into(),
            ));
        }
        let (grid, pairs) = self.align(other);
        Ok(grid
            .windows(2)
            .zip(&pairs)
            .map(|(w, (p, q))| p.mul(q).integral(0.0, w[1] - w[0]))
            .sum())
    }

    /// `max |self - other|` over the merged breakpoints and both tails.
    pub fn max_diff_at_breakpoints(&self, other: &Self) -> f64 {
        let grid = self.merged_breakpoints(other);
        let mut m = (self.left_tail - other.left_tail)
            .abs()
            .max((self.right_tail - other.right_tail).abs());
        for &x in &grid {
            m = m
                .max((self.left_limit(x) - other.left_limit(x)).abs())
                .max((self.right_limit(x) - other.right_limit(x)).abs());
        }
        m
    }

    /// Largest coefficient difference after aligning both functions on a
    /// common grid, with the `k`-th coefficient of a piece of length `L`
    /// weighted by `L^k` (coefficients in the variable `t / L`).
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let (grid, pairs) = self.align(other);
        let mut m = (self.left_tail - other.left_tail)
            .abs()
            .max((self.right_tail - other.right_tail).abs());
        for (w, (p, q)) in grid.windows(2).zip(&pairs) {
            let len = w[1] - w[0];
            let mut pow = 1.0;
            for c in p.sub(q).coeffs() {
                m = m.max((c * pow).abs());
                pow *= len;
            }
        }
        m
    }

    /// Samples on the closed grid `lo, lo + step, ..., hi`.
    pub fn sample(&self, lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)> {
        closed_grid(lo, hi, step).into_iter().map(|x| (x, self.eval(x))).collect()
    }
}

/// Closed-closed grid with explicit step; the last point is `hi` when it is
/// reached within rounding.
pub fn closed_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0) || hi < lo {
        return Vec::new();
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| if k == n && ((lo + k as f64 * step) - hi).abs() < 1e-9 * step { hi } else { lo + k as f64 * step }).collect()
}

pub(crate) fn merge_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
            i += 1;
            a[i - 1]
        } else {
            j += 1;
            b[j - 1]
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tent() -> PiecewisePolynomial {
        PiecewisePolynomial::new(vec![0.0, 1.0, 2.0], vec![vec![0.0, 1.0], vec![1.0, -1.0]], 0.0, 0.0).unwrap()
    }

    #[test]
    fn rejects_bad_breakpoints_and_counts() {
        assert!(PiecewisePolynomial::new(vec![], vec![], 0.0, 0.0).is_err());
        assert!(PiecewisePolynomial::new(vec![1.0, 1.0], vec![vec![0.0]], 0.0, 0.0).is_err());
        assert!(PiecewisePolynomial::new(vec![0.0, 1.0], vec![], 0.0, 0.0).is_err());
        assert!(PiecewisePolynomial::new(vec![0.0, 1.0], vec![vec![f64::NAN]], 0.0, 0.0).is_err());
        assert!(PiecewisePolynomial::new(vec![0.0], vec![], 0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn degree_cap_enforced() {
        let row = vec![0.0; 8];
        let mut row7 = row.clone();
        row7[7] = 1.0;
        let err = PiecewisePolynomial::new(vec![0.0, 1.0], vec![row7], 0.0, 1.0).unwrap_err();
        assert_eq!(err, CpintError::DegreeOverflow { degree: 7, cap: 6 });
    }

    #[test]
    fn evaluation_and_limits() {
        let f = tent();
        assert_eq!(f.eval(-3.0), 0.0);
        assert_eq!(f.eval(0.5), 0.5);
        assert_eq!(f.eval(1.0), 1.0);
        assert_eq!(f.left_limit(1.0), 1.0);
        assert_eq!(f.eval(1.5), 0.5);
        assert_eq!(f.eval_ext(ExtReal::PosInf), 0.0);
    }

    #[test]
    fn reflect_and_translate() {
        let f = tent().translate(1.0).reflect();
        // tent on [1, 3] reflected lives on [-3, -1] with peak at -2.
        assert_eq!(f.breakpoints(), &[-3.0, -2.0, -1.0]);
        assert!((f.eval(-2.0) - 1.0).abs() < 1e-15);
        assert!((f.eval(-1.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn antiderivative_of_tent() {
        let a = tent().antiderivative().unwrap();
        assert_eq!(a.right_tail(), 1.0);
        assert!((a.eval(1.0) - 0.5).abs() < 1e-15);
        assert_eq!(a.max_jump(), 0.0);
    }

    #[test]
    fn closed_grid_includes_both_ends() {
        let g = closed_grid(0.0, 1.0, 0.1);
        assert_eq!(g.len(), 11);
        assert_eq!(*g.last().unwrap(), 1.0);
    }
}
