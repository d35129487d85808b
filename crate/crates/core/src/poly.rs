//! Dense univariate polynomials with `f64` coefficients.
//!
//! Coefficients are stored constant term first. Every piece of a
//! [`PiecewisePolynomial`](crate::piecewise::PiecewisePolynomial) is one of these,
//! written in the local variable `t = x - x_left` of its interval.

use std::fmt;

/// Absolute tolerance in `x` for bisection root refinement.
pub const ROOT_TOL: f64 = 1e-14;

#[derive(Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// `c0 + c1 t`.
    pub fn linear(c0: f64, c1: f64) -> Self {
        Poly { coeffs: vec![c0, c1] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Number of stored coefficients (may exceed `degree() + 1` when the top ones are zero).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree ignoring trailing zero coefficients. The zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Drops trailing zero coefficients.
    pub fn trimmed(&self) -> Poly {
        let n = self.coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1);
        Poly { coeffs: self.coeffs[..n].to_vec() }
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        }
    }

    /// The `n`-th derivative.
    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at `t = 0`.
    pub fn antiderivative(&self) -> Poly {
        if self.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k as f64 + 1.0)),
        );
        Poly { coeffs: out }
    }

    /// `∫_lo^hi p(t) dt`.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let a = self.antiderivative();
        a.eval(hi) - a.eval(lo)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly {
            coeffs: (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0.0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly { coeffs: out }
    }

    /// Taylor shift: returns `q(t) = p(t + h)`.
    pub fn shift(&self, h: f64) -> Poly {
        if h == 0.0 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut a = self.coeffs.clone();
        let n = a.len() - 1;
        for k in 0..n {
            for j in (k..n).rev() {
                a[j] += h * a[j + 1];
            }
        }
        Poly { coeffs: a }
    }

    /// Returns `q(t) = p(alpha t + beta)`.
    pub fn compose_linear(&self, alpha: f64, beta: f64) -> Poly {
        let shifted = self.shift(beta);
        let mut pow = 1.0;
        Poly {
            coeffs: shifted
                .coeffs
                .iter()
                .map(|&c| {
                    let v = c * pow;
                    pow *= alpha;
                    v
                })
                .collect(),
        }
    }

    /// Real roots in the open interval `(lo, hi)`, sorted ascending.
    ///
    /// Degree one and two use closed forms; higher degrees split the interval at
    /// the (recursively isolated) roots of the derivative and bisect every
    /// monotone segment showing a sign change. Identically zero input yields no roots.
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let p = self.trimmed();
        if p.coeffs.len() <= 1 || lo >= hi {
            return Vec::new();
        }
        let inside = |r: f64| r > lo && r < hi;
        let mut roots = match p.coeffs.len() {
            2 => {
                let r = -p.coeffs[0] / p.coeffs[1];
                if inside(r) { vec![r] } else { vec![] }
            }
            3 => {
                let (c, b, a) = (p.coeffs[0], p.coeffs[1], p.coeffs[2]);
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 {
                    vec![]
                } else {
                    let q = -0.5 * (b + b.signum() * disc.sqrt());
                    let mut rs = Vec::with_capacity(2);
                    if q != 0.0 {
                        rs.push(q / a);
                        rs.push(c / q);
                    } else {
                        // b == 0 and disc == 0 forces c == 0: double root at 0.
                        rs.push(0.0);
                    }
                    rs.retain(|&r| inside(r));
                    rs
                }
            }
            _ => {
                let crit = p.derivative().roots_in(lo, hi);
                let mut knots = Vec::with_capacity(crit.len() + 2);
                knots.push(lo);
                knots.extend(crit);
                knots.push(hi);
                let mut rs = Vec::new();
                for w in knots.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let fa = p.eval(a);
                    let fb = p.eval(b);
                    if fa == 0.0 && a > lo {
                        rs.push(a);
                    } else if fa * fb < 0.0 {
                        rs.push(bisect(&p, a, b, fa));
                    }
                }
                rs
            }
        };
        roots.sort_by(|a, b| a.total_cmp(b));
        roots.dedup();
        roots
    }

    /// `∫_lo^hi |p(t)| dt`, split exactly at sign changes.
    pub fn abs_integral(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        let a = self.antiderivative();
        let mut knots = vec![lo];
        knots.extend(self.roots_in(lo, hi));
        knots.push(hi);
        knots
            .windows(2)
            .map(|w| (a.eval(w[1]) - a.eval(w[0])).abs())
            .sum()
    }

    /// `(min, max)` of `p` over the closed interval `[lo, hi]`.
    pub fn range_on(&self, lo: f64, hi: f64) -> (f64, f64) {
        let mut lo_v = self.eval(lo).min(self.eval(hi));
        let mut hi_v = self.eval(lo).max(self.eval(hi));
        for r in self.derivative().roots_in(lo, hi) {
            let v = self.eval(r);
            lo_v = lo_v.min(v);
            hi_v = hi_v.max(v);
        }
        (lo_v, hi_v)
    }
}

fn bisect(p: &Poly, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        if b - a <= ROOT_TOL {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = Poly::new(vec![1.0, -2.0, 0.5, 3.0]);
        let q = p.shift(0.75);
        for &t in &[-1.0, 0.0, 0.3, 2.0] {
            assert!((q.eval(t) - p.eval(t + 0.75)).abs() < 1e-12);
        }
    }

    #[test]
    fn compose_linear_matches() {
        let p = Poly::new(vec![0.2, 1.0, -1.0, 0.25, 0.1]);
        let q = p.compose_linear(-0.5, 1.5);
        for &t in &[-1.0, 0.0, 0.3, 2.0] {
            assert!((q.eval(t) - p.eval(-0.5 * t + 1.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn roots_of_quintic() {
        // (t-0.1)(t-0.4)(t-0.5)(t-0.9)(t+3)
        let mut p = Poly::constant(1.0);
        for r in [0.1, 0.4, 0.5, 0.9, -3.0] {
            p = p.mul(&Poly::linear(-r, 1.0));
        }
        let rs = p.roots_in(0.0, 1.0);
        assert_eq!(rs.len(), 4);
        for (r, e) in rs.iter().zip([0.1, 0.4, 0.5, 0.9]) {
            assert!((r - e).abs() < 1e-12, "{r} vs {e}");
        }
    }

    #[test]
    fn abs_integral_of_sine_like_cubic() {
        // t(t-1)(t-2) on [0, 2]: two lobes of area 1/4 each.
        let p = Poly::new(vec![0.0, 2.0, -3.0, 1.0]);
        assert!((p.abs_integral(0.0, 2.0) - 0.5).abs() < 1e-14);
        assert!(p.integral(0.0, 2.0).abs() < 1e-14);
    }

    #[test]
    fn range_finds_interior_extremum() {
        let p = Poly::new(vec![0.0, 2.0, -1.0]); // max 1 at t = 1
        let (lo, hi) = p.range_on(0.0, 3.0);
        assert_eq!(hi, 1.0);
        assert_eq!(lo, -3.0);
    }

    #[test]
    fn degree_ignores_trailing_zeros() {
        assert_eq!(Poly::new(vec![1.0, 2.0, 0.0, 0.0]).degree(), 1);
        assert_eq!(Poly::zero().degree(), 0);
    }
}
