//! Smooth compactly supported test functions.
//!
//! Two profile shapes are provided, both radial and equal to 1 at the center:
//!
//! * [`Shape::Bump`]: `exp(1 - 1/(1 - t²))` for `|t| < 1`;
//! * [`Shape::FlatTop`]: identically 1 for `|t| <= 1/2`, glued to 0 at
//!   `|t| = 1` by the exponential smooth step
//!   `S(s) = ψ(s)/(ψ(s) + ψ(1 - s))`, `ψ(s) = exp(-1/s)`, with `s = 2 - 2|t|`.
//!
//! Here `t = |x - center| / radius`. Derivatives come from [`Jet`] arithmetic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{Jet, MAX_ORDER};

/// Exponent beyond which `exp(-x)` is treated as an exact zero.
const UNDERFLOW: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    Bump,
    FlatTop,
}

impl std::str::FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bump" => Ok(Shape::Bump),
            "flattop" | "flat-top" => Ok(Shape::FlatTop),
            other => Err(Error::InvalidParameter {
                name: "shape",
                reason: format!("unknown shape `{other}` (expected bump or flattop)"),
            }),
        }
    }
}

impl Shape {
    /// Jet of the profile in the scaled variable `t >= 0`.
    fn jet_nonneg(self, t: f64) -> Jet {
        debug_assert!(t >= 0.0);
        if t >= 1.0 {
            return Jet::ZERO;
        }
        match self {
            Shape::Bump => {
                let x = Jet::variable(t);
                let gap = -(x * x) + 1.0;
                if 1.0 / gap.value() - 1.0 > UNDERFLOW {
                    return Jet::ZERO;
                }
                (-gap.recip() + 1.0).exp()
            }
            Shape::FlatTop => {
                if t <= 0.5 {
                    return Jet::constant(1.0);
                }
                // s = 2 - 2t runs from 1 (t = 1/2) down to 0 (t = 1).
                let s = Jet::variable(t).scale(-2.0) + 2.0;
                smooth_step(s)
            }
        }
    }

    /// Jet in the signed variable `t`, using evenness for `t < 0`.
    pub fn jet(self, t: f64) -> Jet {
        let j = self.jet_nonneg(t.abs());
        if t < 0.0 {
            j.chain_linear(-1.0)
        } else {
            j
        }
    }

    pub fn value(self, t: f64) -> f64 {
        let t = t.abs();
        if t >= 1.0 {
            return 0.0;
        }
        match self {
            Shape::Bump => {
                let inv = 1.0 / (1.0 - t * t);
                if inv - 1.0 > UNDERFLOW {
                    0.0
                } else {
                    (1.0 - inv).exp()
                }
            }
            Shape::FlatTop if t <= 0.5 => 1.0,
            Shape::FlatTop => smooth_step(Jet::constant(2.0 - 2.0 * t)).value(),
        }
    }
}

/// `ψ(s)/(ψ(s) + ψ(1 - s))` with `ψ(s) = exp(-1/s)`, for `0 < s < 1`.
fn smooth_step(s: Jet) -> Jet {
    let s0 = s.value();
    if s0 <= 0.0 || 1.0 / s0 > UNDERFLOW {
        return Jet::ZERO;
    }
    if s0 >= 1.0 || 1.0 / (1.0 - s0) > UNDERFLOW {
        return Jet::constant(1.0);
    }
    let a = (-s.recip()).exp();
    let b = (-(-s + 1.0).recip()).exp();
    a * (a + b).recip()
}

/// A smooth function of one real variable with derivatives up to fourth order.
pub trait Smooth1d {
    fn jet(&self, x: f64) -> Jet;

    fn value(&self, x: f64) -> f64 {
        self.jet(x).value()
    }

    /// Closed interval outside of which the function is exactly zero.
    fn support(&self) -> Option<(f64, f64)>;

    fn derivative(&self, x: f64, k: usize) -> Result<f64> {
        if k > MAX_ORDER {
            return Err(Error::UnsupportedOrder(k));
        }
        Ok(self.jet(x).derivative(k))
    }
}

impl<T: Smooth1d + ?Sized> Smooth1d for &T {
    fn jet(&self, x: f64) -> Jet {
        (**self).jet(x)
    }
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn support(&self) -> Option<(f64, f64)> {
        (**self).support()
    }
}

impl<T: Smooth1d + ?Sized> Smooth1d for Box<T> {
    fn jet(&self, x: f64) -> Jet {
        (**self).jet(x)
    }
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn support(&self) -> Option<(f64, f64)> {
        (**self).support()
    }
}

/// Radial test function `ρ(x) = shape(|x - center| / radius)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BumpProfile {
    radius: f64,
    shape: Shape,
    center: Vec<f64>,
}

impl BumpProfile {
    pub fn new(shape: Shape, radius: f64, center: Vec<f64>) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "radius",
                reason: format!("must be positive and finite, got {radius}"),
            });
        }
        Ok(Self { radius, shape, center })
    }

    /// One-dimensional profile centered at `center`.
    pub fn on_line(shape: Shape, radius: f64, center: f64) -> Result<Self> {
        Self::new(shape, radius, vec![center])
    }

    /// One-dimensional profile centered at the origin.
    pub fn centered(shape: Shape, radius: f64) -> Result<Self> {
        Self::on_line(shape, radius, 0.0)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Value at a point of the same dimension as the center.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.center.len());
        let r2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum();
        self.eval_radius(r2.sqrt())
    }

    /// Value at distance `r` from the center.
    pub fn eval_radius(&self, r: f64) -> f64 {
        if r >= self.radius {
            return 0.0;
        }
        self.shape.value(r / self.radius)
    }
}

impl Smooth1d for BumpProfile {
    fn jet(&self, x: f64) -> Jet {
        let t = (x - self.center[0]) / self.radius;
        self.shape.jet(t).chain_linear(1.0 / self.radius)
    }

    fn value(&self, x: f64) -> f64 {
        self.eval_radius((x - self.center[0]).abs())
    }

    fn support(&self) -> Option<(f64, f64)> {
        let c = self.center[0];
        Some((c - self.radius, c + self.radius))
    }
}

/// Polynomial `Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial(pub Vec<f64>);

impl Smooth1d for Polynomial {
    fn jet(&self, x: f64) -> Jet {
        let v = Jet::variable(x);
        self.0.iter().rev().fold(Jet::ZERO, |acc, &c| acc * v + c)
    }
    fn support(&self) -> Option<(f64, f64)> {
        None
    }
}

/// `cos(frequency · x + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cosine {
    pub frequency: f64,
    pub phase: f64,
}

impl Smooth1d for Cosine {
    fn jet(&self, x: f64) -> Jet {
        (Jet::variable(x).scale(self.frequency) + self.phase).cos()
    }
    fn support(&self) -> Option<(f64, f64)> {
        None
    }
}

/// Pointwise product; supported where both factors are.
#[derive(Debug, Clone, PartialEq)]
pub struct Product<A, B>(pub A, pub B);

impl<A: Smooth1d, B: Smooth1d> Smooth1d for Product<A, B> {
    fn jet(&self, x: f64) -> Jet {
        self.0.jet(x) * self.1.jet(x)
    }
    fn value(&self, x: f64) -> f64 {
        let a = self.0.value(x);
        if a == 0.0 {
            return 0.0;
        }
        a * self.1.value(x)
    }
    fn support(&self) -> Option<(f64, f64)> {
        match (self.0.support(), self.1.support()) {
            (Some((a, b)), Some((c, d))) => Some((a.max(c), b.min(d))),
            (Some(s), None) | (None, Some(s)) => Some(s),
            (None, None) => None,
        }
    }
}

/// Linear combination `a·f + b·g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Combination<A, B> {
    pub a: f64,
    pub f: A,
    pub b: f64,
    pub g: B,
}

impl<A: Smooth1d, B: Smooth1d> Smooth1d for Combination<A, B> {
    fn jet(&self, x: f64) -> Jet {
        self.f.jet(x).scale(self.a) + self.g.jet(x).scale(self.b)
    }
    fn value(&self, x: f64) -> f64 {
        self.a * self.f.value(x) + self.b * self.g.value(x)
    }
    fn support(&self) -> Option<(f64, f64)> {
        let (p, q) = (self.f.support()?, self.g.support()?);
        Some((p.0.min(q.0), p.1.max(q.1)))
    }
}

/// Partition of unity on an interval built from shifted profiles,
/// normalized as `f_i / Σ_j f_j`.
#[derive(Debug, Clone)]
pub struct PartitionOfUnity {
    interval: (f64, f64),
    spacing: f64,
    overlap: f64,
    members: Vec<BumpProfile>,
}

impl PartitionOfUnity {
    /// Builds the partition with member radius `(spacing / 2)(1 + overlap)`.
    /// `overlap = 0` leaves neighbouring supports touching at a single point
    /// and is rejected as a coverage gap.
    pub fn build(interval: (f64, f64), spacing: f64, overlap: f64, shape: Shape) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo < hi) {
            return Err(Error::InvalidParameter {
                name: "interval",
                reason: format!("empty interval [{lo}, {hi}]"),
            });
        }
        if !(spacing > 0.0) {
            return Err(Error::InvalidParameter {
                name: "spacing",
                reason: format!("must be positive, got {spacing}"),
            });
        }
        if !(0.0..=1.0).contains(&overlap) {
            return Err(Error::InvalidParameter {
                name: "overlap",
                reason: format!("must lie in [0, 1], got {overlap}"),
            });
        }
        let radius = 0.5 * spacing * (1.0 + overlap);
        let count = ((hi - lo) / spacing).ceil() as usize + 1;
        let members = (0..count)
            .map(|i| BumpProfile::on_line(shape, radius, lo + i as f64 * spacing))
            .collect::<Result<Vec<_>>>()?;
        let pou = Self {
            interval,
            spacing,
            overlap,
            members,
        };
        // The weakest points are the midpoints between centers; also sample
        // the interval uniformly.
        let mids = pou.members.windows(2).map(|w| 0.5 * (w[0].center[0] + w[1].center[0]));
        let samples = (0..=1000).map(|i| lo + (hi - lo) * i as f64 / 1000.0);
        for x in mids.chain(samples).filter(|x| (lo..=hi).contains(x)) {
            if pou.raw_sum(x) <= 0.0 {
                return Err(Error::CoverageGap { at: x });
            }
        }
        Ok(pou)
    }

    pub fn members(&self) -> &[BumpProfile] {
        &self.members
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    fn raw_sum(&self, x: f64) -> f64 {
        self.members.iter().map(|m| m.value(x)).sum()
    }

    /// Normalized member `i` at `x`.
    pub fn member_value(&self, i: usize, x: f64) -> f64 {
        let s = self.raw_sum(x);
        if s == 0.0 {
            0.0
        } else {
            self.members[i].value(x) / s
        }
    }

    /// `Σ_i` of the normalized members at `x`.
    pub fn sum(&self, x: f64) -> f64 {
        (0..self.members.len()).map(|i| self.member_value(i, x)).sum()
    }
}

/// Builds a partition of unity on `interval` with a default overlap of one half.
pub fn pou_build(interval: (f64, f64), spacing: f64) -> Result<PartitionOfUnity> {
    PartitionOfUnity::build(interval, spacing, 0.5, Shape::Bump)
}

/// Jet-subtraction weight `w` with `w(0) = 1`.
///
/// Besides `w(0) = 1`, the derivatives `w^(j)(0)` for `1 <= j <= order` must
/// vanish, otherwise `f - w·T_n f` would not vanish to order `n` at 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorWeight {
    w: BumpProfile,
    order: usize,
}

impl TaylorWeight {
    pub fn new(w: BumpProfile, order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        let jet = w.jet(0.0);
        if jet.value() != 1.0 {
            return Err(Error::InvalidParameter {
                name: "w",
                reason: format!("w(0) must be 1, got {}", jet.value()),
            });
        }
        for j in 1..=order {
            let d = jet.derivative(j);
            if d.abs() > 1e-12 {
                return Err(Error::InvalidParameter {
                    name: "w",
                    reason: format!("w^({j})(0) = {d} must vanish for subtraction order {order}"),
                });
            }
        }
        Ok(Self { w, order })
    }

    pub fn weight(&self) -> &BumpProfile {
        &self.w
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// `x ↦ f(x) - w(x) Σ_{k <= n} x^k f^(k)(0)/k!`.
#[derive(Debug, Clone)]
pub struct JetSubtracted<'a, F: ?Sized> {
    f: &'a F,
    weight: &'a TaylorWeight,
    taylor: Polynomial,
}

impl<'a, F: Smooth1d + ?Sized> JetSubtracted<'a, F> {
    pub fn weight(&self) -> &TaylorWeight {
        self.weight
    }

    /// The discarded Taylor polynomial of `f` at 0.
    pub fn taylor(&self) -> &Polynomial {
        &self.taylor
    }
}

impl<F: Smooth1d + ?Sized> Smooth1d for JetSubtracted<'_, F> {
    fn jet(&self, x: f64) -> Jet {
        self.f.jet(x) - self.weight.w.jet(x) * self.taylor.jet(x)
    }

    fn value(&self, x: f64) -> f64 {
        let w = self.weight.w.value(x);
        let t = if w == 0.0 { 0.0 } else { w * self.taylor.value(x) };
        self.f.value(x) - t
    }

    fn support(&self) -> Option<(f64, f64)> {
        let (a, b) = self.f.support()?;
        let (c, d) = self.weight.w.support()?;
        Some((a.min(c), b.max(d)))
    }
}

pub fn jet_subtract<'a, F: Smooth1d + ?Sized>(f: &'a F, w: &'a TaylorWeight) -> JetSubtracted<'a, F> {
    let at0 = f.jet(0.0);
    let taylor = Polynomial(at0.coeffs()[..=w.order].to_vec());
    JetSubtracted { f, weight: w, taylor }
}

/// Radial momentum-space profile `ρ̃(p²) = base(p²/Λ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumProfile {
    shape: Shape,
    scale: f64,
}

impl MomentumProfile {
    pub fn new(shape: Shape, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "scale",
                reason: format!("must be positive and finite, got {scale}"),
            });
        }
        Ok(Self { shape, scale })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Jet of `ρ̃` as a function of `p²`.
    pub fn jet(&self, psq: f64) -> Jet {
        let s2 = self.scale * self.scale;
        self.shape.jet(psq / s2).chain_linear(1.0 / s2)
    }

    /// Largest `p²` at which the profile is nonzero.
    pub fn support_end(&self) -> f64 {
        self.scale * self.scale
    }
}

/// `ρ̃(p²/Λ²)`.
pub fn momentum_scale(p: &MomentumProfile, psq: f64) -> Result<f64> {
    if !(psq >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "psq",
            reason: format!("must be nonnegative, got {psq}"),
        });
    }
    Ok(p.shape.value(psq / (p.scale * p.scale)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(r: f64) -> BumpProfile {
        BumpProfile::centered(Shape::Bump, r).unwrap()
    }

    fn flat(r: f64) -> BumpProfile {
        BumpProfile::centered(Shape::FlatTop, r).unwrap()
    }

    #[test]
    fn center_and_edge_values() {
        for p in [bump(0.7), flat(0.7)] {
            assert_eq!(p.eval(&[0.0]), 1.0);
            assert_eq!(p.eval(&[0.7]), 0.0);
            assert_eq!(p.eval(&[-0.7]), 0.0);
            assert_eq!(p.eval(&[3.0]), 0.0);
        }
        let p2 = BumpProfile::new(Shape::Bump, 1.0, vec![0.5, -0.5]).unwrap();
        assert_eq!(p2.eval(&[0.5, -0.5]), 1.0);
        assert_eq!(p2.eval(&[1.5, -0.5]), 0.0);
    }

    #[test]
    fn bump_at_half_radius() {
        let expected = (1.0f64 - 4.0 / 3.0).exp();
        assert!((bump(2.0).eval(&[1.0]) - expected).abs() < 1e-15);
    }

    #[test]
    fn symmetric_first_derivative_vanishes_at_center() {
        assert_eq!(bump(1.3).derivative(0.0, 1).unwrap(), 0.0);
        assert_eq!(flat(1.3).derivative(0.0, 1).unwrap(), 0.0);
    }

    #[test]
    fn flat_region_derivatives_vanish() {
        let f = flat(2.0);
        for x in [-0.9, -0.3, 0.0, 0.4, 1.0] {
            for k in 1..=4 {
                assert_eq!(f.derivative(x, k).unwrap(), 0.0);
            }
            assert_eq!(f.value(x), 1.0);
        }
    }

    #[test]
    fn derivative_order_is_bounded() {
        assert!(matches!(bump(1.0).derivative(0.2, 5), Err(Error::UnsupportedOrder(5))));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for p in [bump(1.0), flat(1.0), BumpProfile::on_line(Shape::Bump, 0.8, 0.1).unwrap()] {
            for &x in &[0.5, -0.35, 0.62, 0.8] {
                for k in 0..4 {
                    let h = 1e-5;
                    let fd = (p.derivative(x + h, k).unwrap() - p.derivative(x - h, k).unwrap()) / (2.0 * h);
                    let exact = p.derivative(x, k + 1).unwrap();
                    assert!(
                        (fd - exact).abs() < 1e-7 * (1.0 + exact.abs()),
                        "{:?} x={x} k={k}: {fd} vs {exact}",
                        p.shape()
                    );
                }
            }
        }
    }

    #[test]
    fn smooth_at_support_boundary() {
        for p in [bump(1.0), flat(1.0)] {
            for k in 0..=4 {
                let inside = p.derivative(1.0 - 1e-4, k).unwrap();
                let outside = p.derivative(1.0 + 1e-4, k).unwrap();
                assert!((inside - outside).abs() < 1e-8, "{:?} k={k}: {inside}", p.shape());
                // exact zero outside, never a denormal tail
                assert_eq!(outside, 0.0);
            }
        }
    }

    #[test]
    fn partition_sums_to_one() {
        let pou = pou_build((-2.0, 3.0), 0.4).unwrap();
        for i in 0..=997 {
            let x = -2.0 + 5.0 * i as f64 / 997.0;
            assert!((pou.sum(x) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn partition_overlap_region() {
        let pou = PartitionOfUnity::build((0.0, 1.0), 1.0, 0.5, Shape::Bump).unwrap();
        assert_eq!(pou.members().len(), 2);
        let x = 0.5;
        let (a, b) = (pou.member_value(0, x), pou.member_value(1, x));
        assert!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0);
        assert!((a + b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partition_gap_detected() {
        let err = PartitionOfUnity::build((0.0, 10.0), 1.0, 0.0, Shape::Bump);
        assert!(matches!(err, Err(Error::CoverageGap { .. })));
        let single = PartitionOfUnity::build((0.0, 10.0), 20.0, 0.0, Shape::FlatTop);
        assert!(matches!(single, Err(Error::CoverageGap { .. })));
    }

    #[test]
    fn weight_must_equal_one_at_origin() {
        let off = BumpProfile::on_line(Shape::Bump, 1.0, 0.3).unwrap();
        assert!(TaylorWeight::new(off, 0).is_err());
        // the exponential bump has w''(0) != 0, so it only supports order <= 1
        assert!(TaylorWeight::new(bump(1.0), 1).is_ok());
        assert!(TaylorWeight::new(bump(1.0), 2).is_err());
        assert!(TaylorWeight::new(flat(1.0), 4).is_ok());
    }

    #[test]
    fn jet_subtract_order_zero() {
        let f = BumpProfile::on_line(Shape::Bump, 1.0, 0.2).unwrap();
        let w = TaylorWeight::new(bump(0.5), 0).unwrap();
        let r = jet_subtract(&f, &w);
        assert_eq!(r.value(0.0), 0.0);
    }

    #[test]
    fn jet_subtract_leaves_flat_functions_alone() {
        // f vanishes identically near 0, so its jet is zero
        let f = BumpProfile::on_line(Shape::Bump, 0.3, 0.6).unwrap();
        let w = TaylorWeight::new(flat(1.0), 2).unwrap();
        let r = jet_subtract(&f, &w);
        for i in 0..200 {
            let x = -1.0 + 2.0 * i as f64 / 199.0;
            assert!((r.value(x) - f.value(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn jet_subtract_vanishes_to_requested_order() {
        let f = Product(Cosine { frequency: 1.0, phase: 0.0 }, bump(1.0));
        let w = TaylorWeight::new(bump(1.0), 1).unwrap();
        let r = jet_subtract(&f, &w);
        let ratios: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6].iter().map(|&x| r.value(x) / (x * x)).collect();
        for q in &ratios {
            assert!(q.abs() < 10.0, "{ratios:?}");
        }
        for k in 0..=1 {
            assert!(r.derivative(0.0, k).unwrap().abs() < 1e-9);
        }
        let w4 = TaylorWeight::new(flat(0.5), 4).unwrap();
        let r4 = jet_subtract(&f, &w4);
        for k in 0..=4 {
            assert!(r4.derivative(0.0, k).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn momentum_profile() {
        let p = MomentumProfile::new(Shape::Bump, 3.0).unwrap();
        assert_eq!(momentum_scale(&p, 0.0).unwrap(), 1.0);
        assert_eq!(momentum_scale(&p, 9.0).unwrap(), 0.0);
        assert_eq!(momentum_scale(&p, 100.0).unwrap(), 0.0);
        assert!(momentum_scale(&p, -1.0).is_err());
        let q = MomentumProfile::new(Shape::Bump, 6.0).unwrap();
        for psq in [0.5, 2.0, 7.0] {
            assert_eq!(momentum_scale(&q, psq).unwrap(), momentum_scale(&p, psq / 4.0).unwrap());
        }
    }
}
