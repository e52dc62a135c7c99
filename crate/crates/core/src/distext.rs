//! Finite-part extension of the power singularities `x^(-k)` on the line.
//!
//! The extension pairs `x^(-k)` with the jet-subtracted test function
//! `f - w·T_ω f`, where `ω = k - 1` is the singular order. The subtracted
//! function vanishes to order `ω + 1` at 0, so the integrand is bounded and
//! the integral is computed by adaptive quadrature with 0 as a panel edge.
//! Different weights `w` give results differing by local terms only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::MAX_ORDER;
use crate::quad::{self, Tolerance};
use crate::testfn::{jet_subtract, Smooth1d, TaylorWeight};

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// The distribution `x^(-k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerSingularity {
    exponent: u32,
}

impl PowerSingularity {
    pub fn new(exponent: u32) -> Result<Self> {
        if exponent == 0 || exponent as usize > MAX_ORDER + 1 {
            return Err(Error::InvalidParameter {
                name: "k",
                reason: format!("exponent must lie in 1..={}, got {exponent}", MAX_ORDER + 1),
            });
        }
        Ok(Self { exponent })
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `ω = k - 1`.
    pub fn singular_order(&self) -> usize {
        self.exponent as usize - 1
    }

    fn kernel(&self, x: f64) -> f64 {
        x.powi(-(self.exponent as i32))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairingResult {
    pub value: f64,
    pub quadrature_error: f64,
    pub subtraction_order_used: usize,
}

/// `⟨x^(-k), f⟩` extended by weighted jet subtraction, with the default tolerance.
pub fn pair_finite_part<F: Smooth1d + ?Sized>(s: PowerSingularity, f: &F, w: &TaylorWeight) -> Result<PairingResult> {
    pair_finite_part_with(s, f, w, Tolerance::new(DEFAULT_TOL, 0.0))
}

pub fn pair_finite_part_with<F: Smooth1d + ?Sized>(
    s: PowerSingularity,
    f: &F,
    w: &TaylorWeight,
    tol: Tolerance,
) -> Result<PairingResult> {
    let (lo, hi) = f.support().ok_or(Error::NoCompactSupport)?;
    let sub = jet_subtract(f, w);
    let (wlo, whi) = w.weight().support().ok_or(Error::NoCompactSupport)?;
    let (lo, hi) = (lo.min(wlo), hi.max(whi));
    let mut points = vec![lo.min(0.0), hi.max(0.0)];
    if lo < 0.0 && hi > 0.0 {
        points.insert(1, 0.0);
    }
    if points[0] == points[points.len() - 1] {
        return Ok(PairingResult {
            value: 0.0,
            quadrature_error: 0.0,
            subtraction_order_used: w.order(),
        });
    }
    let integrand = |x: f64| s.kernel(x) * sub.value(x);
    match quad::integrate_detailed(integrand, &points, tol) {
        Ok(r) => Ok(PairingResult {
            value: r.value,
            quadrature_error: r.error,
            subtraction_order_used: w.order(),
        }),
        Err(u) => Err(Error::Divergent {
            order_used: w.order(),
            singular_order: s.singular_order(),
            value: u.value,
            error: u.error,
        }),
    }
}

/// One row of the subtraction demonstrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BphzRow {
    pub cutoff: f64,
    /// `∫₀^Λ k dk / (k² + m²)`.
    pub raw: f64,
    /// `∫₀^Λ k dk [1/(k² + m²) - 1/(k² + μ²)]`.
    pub subtracted: f64,
    pub raw_error: f64,
    pub subtracted_error: f64,
}

/// The log-divergent integral `∫₀^Λ k dk/(k² + m²)` and its once-subtracted
/// version with subtraction point `μ`, by quadrature, for each cutoff.
/// The subtracted column converges to `log(μ²/m²)/2`.
pub fn bphz_demo(mass: f64, mu: f64, cutoffs: &[f64]) -> Result<Vec<BphzRow>> {
    for (name, v) in [("m", mass), ("mu", mu)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be positive, got {v}"),
            });
        }
    }
    let (m2, mu2) = (mass * mass, mu * mu);
    cutoffs
        .iter()
        .map(|&cutoff| {
            if !(cutoff > 0.0 && cutoff.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "cutoffs",
                    reason: format!("cutoff must be positive, got {cutoff}"),
                });
            }
            let raw = log_integral(|k2| 1.0 / (k2 + m2), cutoff)?;
            let subtracted = log_integral(|k2| (mu2 - m2) / ((k2 + m2) * (k2 + mu2)), cutoff)?;
            Ok(BphzRow {
                cutoff,
                raw: raw.0,
                subtracted: subtracted.0,
                raw_error: raw.1,
                subtracted_error: subtracted.1,
            })
        })
        .collect()
}

/// `∫₀^Λ k g(k²) dk`, integrated in `ln k` above `k = 1`.
fn log_integral(g: impl Fn(f64) -> f64, cutoff: f64) -> Result<(f64, f64)> {
    let tol = Tolerance::new(1e-12, 1e-14).with_max_panels(20_000);
    let head_end = cutoff.min(1.0);
    let head = quad::integrate(|k| k * g(k * k), &[0.0, head_end], tol)?;
    if cutoff <= 1.0 {
        return Ok((head.value, head.error));
    }
    let top = cutoff.ln();
    let mut points: Vec<f64> = (0..=top.ceil() as usize).map(|i| i as f64).filter(|&s| s < top).collect();
    points.push(top);
    let tail = quad::integrate(
        |s: f64| {
            let k = s.exp();
            k * k * g(k * k)
        },
        &points,
        tol,
    )?;
    Ok((head.value + tail.value, head.error + tail.error))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{BumpProfile, Shape};

    fn bump(r: f64, c: f64) -> BumpProfile {
        BumpProfile::on_line(Shape::Bump, r, c).unwrap()
    }

    #[test]
    fn no_subtraction_needed_for_flat_test_function() {
        // even f vanishing near 0: two bumps placed symmetrically
        let f = crate::testfn::Combination {
            a: 1.0,
            f: bump(0.3, 0.6),
            b: 1.0,
            g: bump(0.3, -0.6),
        };
        let w = TaylorWeight::new(bump(1.0, 0.0), 1).unwrap();
        let s = PowerSingularity::new(2).unwrap();
        let r = pair_finite_part(s, &f, &w).unwrap();
        let direct = quad::integrate(|x: f64| f.value(x) / (x * x), &[-0.9, -0.3, 0.3, 0.9], Tolerance::new(1e-13, 0.0))
            .unwrap()
            .value;
        assert!((r.value - direct).abs() < 1e-9, "{} vs {direct}", r.value);
    }

    #[test]
    fn odd_kernel_with_even_function_gives_zero() {
        let f = bump(1.0, 0.0);
        let w = TaylorWeight::new(bump(1.0, 0.0), 0).unwrap();
        let r = pair_finite_part(PowerSingularity::new(1).unwrap(), &f, &w).unwrap();
        assert!(r.value.abs() < 1e-12);
        assert_eq!(r.subtraction_order_used, 0);
    }

    #[test]
    fn insufficient_order_diverges() {
        let f = bump(1.0, 0.2);
        let w = TaylorWeight::new(bump(1.0, 0.0), 0).unwrap();
        let err = pair_finite_part(PowerSingularity::new(2).unwrap(), &f, &w).unwrap_err();
        assert!(matches!(err, Error::Divergent { order_used: 0, singular_order: 1, .. }), "{err:?}");
    }

    #[test]
    fn requires_compact_support() {
        let f = crate::testfn::Cosine { frequency: 1.0, phase: 0.0 };
        let w = TaylorWeight::new(bump(1.0, 0.0), 0).unwrap();
        assert_eq!(
            pair_finite_part(PowerSingularity::new(1).unwrap(), &f, &w).unwrap_err(),
            Error::NoCompactSupport
        );
    }

    #[test]
    fn bphz_columns() {
        let rows = bphz_demo(1.0, 1.0, &[1e2, 1e4]).unwrap();
        assert!(rows.iter().all(|r| r.subtracted.abs() < 1e-12));
        let rows = bphz_demo(1.0, 2.0, &[1e6]).unwrap();
        assert!((rows[0].subtracted - 4f64.ln() / 2.0).abs() < 1e-6);
        let (a, b) = (bphz_demo(1.0, 2.0, &[1e5]).unwrap()[0], bphz_demo(1.0, 2.0, &[2e5]).unwrap()[0]);
        assert!((b.raw - a.raw - 2f64.ln()).abs() < 1e-6);
        let closed = |l: f64| 0.5 * ((l * l + 1.0) / 1.0f64).ln();
        assert!((a.raw - closed(1e5)).abs() < 1e-9);
    }
}
