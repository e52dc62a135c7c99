//! Adaptive Gauss–Legendre quadrature by interval bisection.
//!
//! Each panel is integrated with a fixed `n`-point Gauss–Legendre rule and
//! with the same rule on its two halves; the difference is the panel error
//! estimate and the halves' sum is the accepted value. Panels are refined
//! globally, worst first, until the summed error estimate meets the
//! tolerance. Caller-supplied breakpoints always become panel edges, so a
//! known singular point is never a quadrature node.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: a vector space with a norm.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn norm(&self) -> f64;
    fn is_finite(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }
}

/// Fixed-size real vector, used for tensor-valued integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vector<const N: usize>(pub [f64; N]);

impl<const N: usize> Add for Vector<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        self
    }
}

impl<const N: usize> Sub for Vector<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a -= b);
        self
    }
}

impl<const N: usize> Mul<f64> for Vector<N> {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        self.0.iter_mut().for_each(|a| *a *= rhs);
        self
    }
}

impl<const N: usize> QuadValue for Vector<N> {
    fn zero() -> Self {
        Vector([0.0; N])
    }
    fn norm(&self) -> f64 {
        self.0.iter().map(|a| a * a).sum::<f64>().sqrt()
    }
    fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.is_finite())
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Applies the rule on `[a, b]`.
    pub fn apply<V: QuadValue>(&self, f: &mut impl FnMut(f64) -> V, a: f64, b: f64) -> V {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = V::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * *w;
        }
        acc * half
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule15() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(15))
}

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 0.0,
            max_panels: 4000,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            ..Self::default()
        }
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<V> {
    pub value: V,
    pub error: f64,
    pub panels: usize,
}

/// Result of a quadrature that failed to meet its tolerance.
#[derive(Debug, Clone, Copy)]
pub struct Unconverged<V> {
    pub value: V,
    pub error: f64,
    pub panels: usize,
}

impl<V> From<Unconverged<V>> for Error {
    fn from(u: Unconverged<V>) -> Self {
        Error::NoConvergence {
            panels: u.panels,
            error: u.error,
        }
    }
}

struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<V> Eq for Panel<V> {}
impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Panel<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn estimate<V: QuadValue>(f: &mut impl FnMut(f64) -> V, a: f64, b: f64) -> Panel<V> {
    let rule = rule15();
    let mid = 0.5 * (a + b);
    let whole = rule.apply(f, a, b);
    let halves = rule.apply(f, a, mid) + rule.apply(f, mid, b);
    Panel {
        a,
        b,
        value: halves,
        error: (halves - whole).norm(),
    }
}

/// Integrates `f` over `[points[0], points[last]]`, with every entry of
/// `points` used as an initial panel edge. `points` must be sorted.
///
/// On failure the partial result is returned in the `Err` variant so callers
/// can inspect the divergence.
pub fn integrate_detailed<V: QuadValue>(
    mut f: impl FnMut(f64) -> V,
    points: &[f64],
    tol: Tolerance,
) -> std::result::Result<QuadResult<V>, Unconverged<V>> {
    debug_assert!(points.len() >= 2);
    debug_assert!(points.windows(2).all(|w| w[0] <= w[1]));
    let mut heap = BinaryHeap::new();
    let mut total = V::zero();
    let mut err = 0.0;
    let mut nonfinite = false;
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let p = estimate(&mut f, w[0], w[1]);
        nonfinite |= !p.value.is_finite();
        total = total + p.value;
        err += p.error;
        heap.push(p);
    }
    let mut panels = heap.len();
    loop {
        if nonfinite || !err.is_finite() {
            return Err(Unconverged {
                value: total,
                error: f64::INFINITY,
                panels,
            });
        }
        if err <= tol.abs.max(tol.rel * total.norm()) {
            break;
        }
        if panels >= tol.max_panels {
            return Err(Unconverged {
                value: total,
                error: err,
                panels,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at machine resolution.
            return Err(Unconverged {
                value: total,
                error: err,
                panels,
            });
        }
        let left = estimate(&mut f, worst.a, mid);
        let right = estimate(&mut f, mid, worst.b);
        nonfinite |= !left.value.is_finite() || !right.value.is_finite();
        total = total - worst.value + left.value + right.value;
        err = err - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }
    // Re-sum from the panels to shed the drift of the running total.
    let mut value = V::zero();
    let mut error = 0.0;
    let mut sorted: Vec<_> = heap.into_vec();
    sorted.sort_by(|p, q| p.a.total_cmp(&q.a));
    for p in &sorted {
        value = value + p.value;
        error += p.error;
    }
    Ok(QuadResult {
        value,
        error,
        panels,
    })
}

/// Same as [`integrate_detailed`] with the failure mapped to [`Error`].
pub fn integrate<V: QuadValue>(
    f: impl FnMut(f64) -> V,
    points: &[f64],
    tol: Tolerance,
) -> Result<QuadResult<V>> {
    integrate_detailed(f, points, tol).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(15);
        for deg in 0..30 {
            let v = rule.apply(&mut |x: f64| x.powi(deg), -1.0, 1.0);
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((v - exact).abs() < 1e-14, "degree {deg}: {v} vs {exact}");
        }
        let s: f64 = rule.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_inverse_sqrt_endpoint() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), &[0.0, 1.0], Tolerance::new(1e-10, 0.0)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn adaptive_reports_divergence() {
        let r = integrate_detailed(|x: f64| 1.0 / x, &[0.0, 1.0], Tolerance::new(1e-10, 0.0));
        assert!(r.is_err());
    }

    #[test]
    fn complex_and_vector_values() {
        let r = integrate(
            |x: f64| Complex64::new(x.cos(), x.sin()),
            &[0.0, std::f64::consts::PI],
            Tolerance::new(1e-13, 0.0),
        )
        .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
        let v = integrate(|x: f64| Vector([x, x * x]), &[0.0, 1.0], Tolerance::default()).unwrap();
        assert!((v.value.0[0] - 0.5).abs() < 1e-14 && (v.value.0[1] - 1.0 / 3.0).abs() < 1e-14);
    }
}
