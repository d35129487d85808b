//! Gauss–Legendre quadrature and the singular power-law convolution oracle.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = x;
                p0 = 1.0;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// A Gauss–Legendre rule reusable across intervals.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        GaussRule { nodes, weights }
    }

    /// `∫_a^b f`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        r * self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(m + r * x)).sum::<f64>()
    }

    /// Sum of [`GaussRule::integrate`] over consecutive knots.
    pub fn integrate_knots(&self, knots: &[f64], f: impl Fn(f64) -> f64) -> f64 {
        knots.windows(2).map(|w| self.integrate(w[0], w[1], &f)).sum()
    }
}

/// Graded mesh `a + (b - a) (k/n)²`, fine near `a`.
pub fn graded_mesh(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| a + (b - a) * (k as f64 / n as f64).powi(2)).collect()
}

/// `∫_0^h s^{-α} w(s) ds` for smooth `w`, by geometric splitting towards 0
/// plus the leading-order remainder on the last tiny cell.
fn singular_cell(rule: &GaussRule, h: f64, alpha: f64, w: &impl Fn(f64) -> f64) -> f64 {
    let mut sum = 0.0;
    let mut hi = h;
    for _ in 0..80 {
        let lo = 0.5 * hi;
        sum += rule.integrate(lo, hi, |s| s.powf(-alpha) * w(s));
        hi = lo;
    }
    sum + w(0.0) * hi.powf(1.0 - alpha) / (1.0 - alpha)
}

/// Oracle for `(f ∗ f)(x)` with `f(y) = y^{-α} χ_{(0,1)}(y)` and `0 < x <= 1`:
/// `∫_0^x y^{-α} (x - y)^{-α} dy`, split at `x/2` with a graded mesh
/// (`N = 10⁴` cells) toward each singular endpoint.
pub fn power_law_self_convolution(alpha: f64, x: f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0 && x > 0.0 && x <= 1.0);
    let rule = GaussRule::new(10);
    let half = 0.5 * x;
    let mesh = graded_mesh(0.0, half, 10_000);
    // The integrand is symmetric about x/2; integrate [0, x/2] and double.
    let w = |s: f64| (x - s).powf(-alpha);
    let first = singular_cell(&rule, mesh[1], alpha, &w);
    let rest = rule.integrate_knots(&mesh[1..], |s| s.powf(-alpha) * w(s));
    2.0 * (first + rest)
}

/// Closed form `x^{1-2α} Γ(1-α)² / Γ(2-2α)`.
pub fn power_law_closed_form(alpha: f64, x: f64) -> f64 {
    x.powf(1.0 - 2.0 * alpha) * gamma(1.0 - alpha).powi(2) / gamma(2.0 - 2.0 * alpha)
}
