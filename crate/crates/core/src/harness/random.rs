//! Seeded random instances.
//!
//! Breakpoints are dyadic (multiples of `2^-bits`), so sums and shifts of
//! breakpoints are exact in floating point. Coefficients are drawn as
//! `d_k / L^k` with `d_k` uniform in `[-1, 1]` and `L` the piece length, which
//! keeps every piece of order one on its interval.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bv::{BVFunction, L1Function};
use crate::error::{CpintError, Result};
use crate::fixtures;
use crate::io::Kind;
use crate::piecewise::PiecewisePolynomial;
use crate::poly::Poly;
use crate::primitive::{make_distribution, ContinuousPrimitive, Distribution, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    /// Breakpoints fall in `[-window, window]`.
    pub window: f64,
    pub max_pieces: usize,
    pub max_degree: usize,
    /// Breakpoints are multiples of `2^-bits`.
    pub bits: u32,
    /// Probability that a BV instance carries an isolated point value.
    pub point_value_prob: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { window: 4.0, max_pieces: 6, max_degree: 3, bits: 5, point_value_prob: 0.25 }
    }
}

impl RandomParams {
    pub fn with_degree(self, max_degree: usize) -> Self {
        RandomParams { max_degree, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.window > 0.0) || self.max_pieces == 0 || self.bits > 20 || !(0.0..=1.0).contains(&self.point_value_prob) {
            return Err(CpintError::InvalidParameter(format!("bad random parameters {self:?}")));
        }
        Ok(())
    }
}

/// A value produced by [`random_instances`].
#[derive(Debug, Clone, PartialEq)]
pub enum RandomValue {
    Primitive(ContinuousPrimitive),
    Bv(BVFunction),
    L1(L1Function),
    Test(TestFunction),
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_instances(kind: Kind, seed: u64, params: &RandomParams) -> Result<RandomValue> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match kind {
        Kind::Primitive => RandomValue::Primitive(random_distribution(&mut rng, params).primitive().clone()),
        Kind::Bv => RandomValue::Bv(random_bv(&mut rng, params)),
        Kind::L1 => RandomValue::L1(random_l1(&mut rng, params)),
        Kind::Test => RandomValue::Test(random_test(&mut rng, params)),
    })
}

/// A dyadic point in `[lo, hi]`.
pub fn dyadic(rng: &mut ChaCha8Rng, lo: f64, hi: f64, bits: u32) -> f64 {
    let scale = (1u64 << bits) as f64;
    let (a, b) = ((lo * scale).ceil() as i64, (hi * scale).floor() as i64);
    rng.gen_range(a..=b) as f64 / scale
}

fn breakpoints(rng: &mut ChaCha8Rng, p: &RandomParams) -> Vec<f64> {
    let n = rng.gen_range(1..=p.max_pieces);
    let mut pts: Vec<f64> = Vec::with_capacity(n + 1);
    while pts.len() < n + 1 {
        let x = dyadic(rng, -p.window, p.window, p.bits);
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize, len: f64, c0: f64) -> Poly {
    let mut c = vec![c0];
    let mut pow = 1.0;
    for _ in 0..degree {
        pow *= len;
        c.push(rng.gen_range(-1.0..=1.0) / pow);
    }
    Poly::new(c)
}

/// Piecewise polynomial with independent pieces; `continuous` chains each
/// constant term to the previous end value.
fn random_rep(rng: &mut ChaCha8Rng, p: &RandomParams, left: f64, continuous: bool) -> (Vec<f64>, Vec<Poly>, f64) {
    let bps = breakpoints(rng, p);
    let mut pieces = Vec::with_capacity(bps.len() - 1);
    let mut end = left;
    for w in bps.windows(2) {
        let len = w[1] - w[0];
        let c0 = if continuous { end } else { rng.gen_range(-1.0..=1.0) };
        let deg = rng.gen_range(0..=p.max_degree);
        let piece = random_poly(rng, deg.max(usize::from(continuous)), len, c0);
        end = piece.eval(len);
        pieces.push(piece);
    }
    (bps, pieces, end)
}

/// Random distribution: the primitive starts at 0 and is continuous.
pub fn random_distribution(rng: &mut ChaCha8Rng, p: &RandomParams) -> Distribution {
    let (bps, pieces, end) = random_rep(rng, p, 0.0, true);
    let rep = PiecewisePolynomial::from_polys(bps, pieces, 0.0, end).expect("valid by construction");
    make_distribution(ContinuousPrimitive::new(rep).expect("continuous by construction"))
}

/// Random BV function: independent pieces (jumps), random tails, sometimes a point value.
pub fn random_bv(rng: &mut ChaCha8Rng, p: &RandomParams) -> BVFunction {
    let left = rng.gen_range(-1.0..=1.0);
    let (bps, pieces, _) = random_rep(rng, p, left, false);
    let right = rng.gen_range(-1.0..=1.0);
    let rep = PiecewisePolynomial::from_polys(bps.clone(), pieces, left, right).expect("valid");
    let mut point_values = Vec::new();
    if rng.gen_bool(p.point_value_prob) {
        let x = bps[rng.gen_range(0..bps.len())];
        point_values.push((x, rng.gen_range(-2.0..=2.0)));
    }
    BVFunction::new(rep, point_values).expect("keys are breakpoints")
}

/// Random BV function without point values (already normalized).
pub fn random_bv_normalized(rng: &mut ChaCha8Rng, p: &RandomParams) -> BVFunction {
    random_bv(rng, &RandomParams { point_value_prob: 0.0, ..*p })
}

/// Random compactly supported function, discontinuities allowed.
pub fn random_l1(rng: &mut ChaCha8Rng, p: &RandomParams) -> L1Function {
    let (bps, pieces, _) = random_rep(rng, p, 0.0, false);
    L1Function::new(PiecewisePolynomial::from_polys(bps, pieces, 0.0, 0.0).expect("valid")).expect("zero tails")
}

/// Sum of one to three C² cubic B-spline bumps with dyadic knots.
pub fn random_test(rng: &mut ChaCha8Rng, p: &RandomParams) -> TestFunction {
    let n = rng.gen_range(1..=3);
    let mut acc = PiecewisePolynomial::zero();
    for _ in 0..n {
        let h = dyadic(rng, 0.25, 1.0, p.bits.min(3));
        let start = dyadic(rng, -p.window, p.window - 4.0 * h, p.bits);
        let height = rng.gen_range(-1.5..=1.5);
        acc = acc.add(&fixtures::cubic_bspline(start, h, height));
    }
    TestFunction::new(acc).expect("sum of C² bumps")
}

/// C² function of bounded variation: constant plus smooth ramps and bumps.
pub fn random_smooth_bv(rng: &mut ChaCha8Rng, p: &RandomParams) -> BVFunction {
    let mut acc = PiecewisePolynomial::constant(rng.gen_range(-1.0..=1.0));
    for _ in 0..rng.gen_range(1..=2) {
        let h = dyadic(rng, 0.25, 1.0, p.bits.min(3));
        let start = dyadic(rng, -p.window, p.window - 3.0 * h, p.bits);
        acc = acc.add(fixtures::smooth_ramp(start, h, rng.gen_range(-1.0..=1.0)).rep());
    }
    for _ in 0..rng.gen_range(0..=2) {
        let h = dyadic(rng, 0.25, 1.0, p.bits.min(3));
        let start = dyadic(rng, -p.window, p.window - 4.0 * h, p.bits);
        acc = acc.add(&fixtures::cubic_bspline(start, h, rng.gen_range(-1.0..=1.0)));
    }
    BVFunction::from_rep(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let p = RandomParams::default();
        for kind in [Kind::Primitive, Kind::Bv, Kind::L1, Kind::Test] {
            assert_eq!(random_instances(kind, 9, &p).unwrap(), random_instances(kind, 9, &p).unwrap());
        }
    }

    #[test]
    fn kinds_are_valid() {
        let p = RandomParams::default();
        for seed in 0..200 {
            let mut rng = rng_for(seed, 0);
            let f = random_distribution(&mut rng, &p);
            assert_eq!(f.primitive().rep().left_tail(), 0.0);
            let g = random_l1(&mut rng, &p);
            assert_eq!((g.rep().left_tail(), g.rep().right_tail()), (0.0, 0.0));
            random_test(&mut rng, &p);
            random_smooth_bv(&mut rng, &p).smooth_derivative(2).unwrap();
        }
    }
}
