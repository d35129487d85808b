//! Exact convolution of piecewise polynomials.
//!
//! A convolution is a sum of elementary contributions, each of which is a
//! short piecewise polynomial (at most three segments) plus constant values to
//! the left and right of its span. [`assemble`] adds them up on the sorted
//! union of all segment boundaries, which is the pairwise-sum grid of the
//! input breakpoints. All arithmetic depends on breakpoint differences only,
//! so translating an input translates the output without touching a coefficient.

use crate::piecewise::PiecewisePolynomial;
use crate::poly::Poly;

#[derive(Debug, Clone)]
pub(crate) struct Segment {
    pub start: f64,
    pub end: f64,
    /// Local polynomial in `t = x - start`.
    pub poly: Poly,
}

#[derive(Debug, Clone)]
pub(crate) struct Contribution {
    pub span: (f64, f64),
    pub segments: Vec<Segment>,
    /// Value on `(-inf, span.0]`.
    pub before: f64,
    /// Value on `[span.1, inf)`.
    pub after: f64,
}

fn index_of(grid: &[f64], x: f64) -> usize {
    grid.binary_search_by(|g| g.total_cmp(&x)).expect("boundary present in grid")
}

/// Sums `base` and every contribution into one piecewise polynomial.
pub(crate) fn assemble(base: f64, contribs: &[Contribution]) -> PiecewisePolynomial {
    let mut grid: Vec<f64> = Vec::new();
    for c in contribs {
        grid.push(c.span.0);
        grid.push(c.span.1);
        for s in &c.segments {
            grid.push(s.start);
            grid.push(s.end);
        }
    }
    if grid.is_empty() {
        return PiecewisePolynomial::constant(base);
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let n_int = grid.len() - 1;

    let mut before_at = vec![0.0; grid.len()];
    let mut after_at = vec![0.0; grid.len()];
    let mut left_tail = base;
    let mut right_tail = base;
    for c in contribs {
        before_at[index_of(&grid, c.span.0)] += c.before;
        after_at[index_of(&grid, c.span.1)] += c.after;
        left_tail += c.before;
        right_tail += c.after;
    }
    // Interval k lies left of every span starting at index > k and right of
    // every span ending at index <= k.
    let mut constants = vec![base; n_int];
    let mut acc = 0.0;
    for k in (0..n_int).rev() {
        acc += before_at[k + 1];
        constants[k] += acc;
    }
    let mut acc = 0.0;
    for k in 0..n_int {
        acc += after_at[k];
        constants[k] += acc;
    }
    let mut pieces: Vec<Poly> = constants.into_iter().map(Poly::constant).collect();
    for c in contribs {
        for s in &c.segments {
            let (si, ei) = (index_of(&grid, s.start), index_of(&grid, s.end));
            for k in si..ei {
                pieces[k].add_assign(&s.poly.shift(grid[k] - s.start));
            }
        }
    }
    let pieces = pieces.iter().map(Poly::trimmed).collect();
    PiecewisePolynomial::raw(grid, pieces, left_tail, right_tail)
}

fn binomial_row(k: usize) -> Vec<f64> {
    let mut row = vec![1.0; k + 1];
    for m in 1..k {
        row[m] = row[m - 1] * (k - m + 1) as f64 / m as f64;
    }
    row
}

/// `s ↦ ∫_{lo(s)}^{hi(s)} P(u) L(s - u) du` with linear bounds `(α, β) ↦ α s + β`.
fn segment_poly(p: &Poly, l: &Poly, lo: (f64, f64), hi: (f64, f64)) -> Poly {
    let deg_l = l.len().saturating_sub(1);
    // L(s - u) = Σ_i s^i T_i(u).
    let mut rows = vec![vec![0.0; deg_l + 1]; deg_l + 1];
    for (k, &lk) in l.coeffs().iter().enumerate() {
        if lk == 0.0 {
            continue;
        }
        let binom = binomial_row(k);
        for m in 0..=k {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            rows[k - m][m] += lk * binom[m] * sign;
        }
    }
    let mut out = Poly::zero();
    for (i, row) in rows.into_iter().enumerate() {
        let r = p.mul(&Poly::new(row)).antiderivative();
        let diff = r.compose_linear(hi.0, hi.1).sub(&r.compose_linear(lo.0, lo.1));
        let mut c = vec![0.0; i];
        c.extend_from_slice(diff.coeffs());
        out.add_assign(&Poly::new(c));
    }
    out
}

/// `x ↦ ∫ P(y - a0) Q(x - y - b0) dy` over the overlap of the piece `P` on
/// `[a0, a1]` and the piece `Q` on `[b0, b1]`.
///
/// The shorter piece is integrated against the longer one, and the longer one
/// is re-expanded at the start of every segment, so each monomial stays of the
/// size of the piece it came from.
pub(crate) fn pair_contribution(p: &Poly, a0: f64, a1: f64, q: &Poly, b0: f64, b1: f64) -> Contribution {
    let la = a1 - a0;
    let lb = b1 - b0;
    let (short, long, ls, ll) = if la <= lb { (p, q, la, lb) } else { (q, p, lb, la) };

    let x0 = a0 + b0;
    let mid1 = if la <= lb { a1 + b0 } else { a0 + b1 };
    let mid2 = if la <= lb { a0 + b1 } else { a1 + b0 };
    let x1 = mid1.max(x0);
    let x2 = if la == lb { x1 } else { mid2.max(x1) };
    let x3 = (a1 + b1).max(x2);

    let mut segments = Vec::with_capacity(3);
    if x1 > x0 {
        // u ∈ [0, s]
        segments.push(Segment { start: x0, end: x1, poly: segment_poly(short, long, (0.0, 0.0), (1.0, 0.0)) });
    }
    if x2 > x1 {
        // w = ls + s, u ∈ [0, ls]
        let poly = segment_poly(short, &long.shift(ls), (0.0, 0.0), (0.0, ls));
        segments.push(Segment { start: x1, end: x2, poly });
    }
    if x3 > x2 {
        // w = ll + s, u ∈ [s, ls]
        let poly = segment_poly(short, &long.shift(ll), (1.0, 0.0), (0.0, ls));
        segments.push(Segment { start: x2, end: x3, poly });
    }
    Contribution { span: (x0, x3), segments, before: 0.0, after: 0.0 }
}

/// Contribution of a constant tail of the first factor against one piece `Q` on `[b0, b1]`.
/// `left == true` means the constant occupies `(-inf, anchor]`.
pub(crate) fn tail_contribution(value: f64, anchor: f64, left: bool, q: &Poly, b0: f64, b1: f64) -> Contribution {
    let lb = b1 - b0;
    let prim = q.antiderivative();
    let mass = prim.eval(lb);
    let start = anchor + b0;
    let end = (anchor + b1).max(start);
    let (poly, before, after) = if left {
        (Poly::constant(mass).sub(&prim).scale(value), value * mass, 0.0)
    } else {
        (prim.scale(value), 0.0, value * mass)
    };
    let segments = if end > start { vec![Segment { start, end, poly }] } else { Vec::new() };
    Contribution { span: (start, end), segments, before, after }
}

/// `m · A(x - s)` as a contribution.
pub(crate) fn shifted_copy(a: &PiecewisePolynomial, s: f64, m: f64) -> Contribution {
    let bps = a.breakpoints();
    let segments = a
        .pieces()
        .iter()
        .enumerate()
        .map(|(i, p)| Segment { start: bps[i] + s, end: bps[i + 1] + s, poly: p.scale(m) })
        .collect();
    Contribution {
        span: (a.first() + s, a.last() + s),
        segments,
        before: m * a.left_tail(),
        after: m * a.right_tail(),
    }
}

/// All contributions of the Lebesgue convolution `A ∗ B` for `B` with zero tails.
pub(crate) fn lebesgue_contributions(a: &PiecewisePolynomial, b: &PiecewisePolynomial) -> Vec<Contribution> {
    debug_assert!(b.left_tail() == 0.0 && b.right_tail() == 0.0);
    let ab = a.breakpoints();
    let bb = b.breakpoints();
    let mut out = Vec::new();
    for (j, q) in b.pieces().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let (b0, b1) = (bb[j], bb[j + 1]);
        if a.left_tail() != 0.0 {
            out.push(tail_contribution(a.left_tail(), a.first(), true, q, b0, b1));
        }
        for (i, p) in a.pieces().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            out.push(pair_contribution(p, ab[i], ab[i + 1], q, b0, b1));
        }
        if a.right_tail() != 0.0 {
            out.push(tail_contribution(a.right_tail(), a.last(), false, q, b0, b1));
        }
    }
    out
}

/// Lebesgue convolution `x ↦ ∫ A(x - y) B(y) dy` for `B` with zero tails.
pub(crate) fn lebesgue(a: &PiecewisePolynomial, b: &PiecewisePolynomial) -> PiecewisePolynomial {
    assemble(0.0, &lebesgue_contributions(a, b))
}
