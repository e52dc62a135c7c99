//! Chiral anomaly from a test-function regulated fermion measure.
//!
//! The regulated Jacobian reduces to a radial momentum integral of the
//! regulator `f(u) = ρ̃²(u)`, `u = y²`, times a γ-trace. Writing
//! `D̸² = D² + X` with `X = -(e/2) σ_E^{ab} F_ab` (Euclidean, `D = ∂ + ieA`),
//! only one term of the expansion of `f(-D̸²)` survives the γ5 trace:
//!
//! * D = 4: `(1/2) f''` times `X²`, giving
//!   `B = (e²/8) tr[γ5 (σ_E F)²] ∫ d⁴y/(2π)⁴ f''(y²)`;
//! * D = 2: `f'` times `X`, giving
//!   `B = -(e/2) tr[γ5 σ_E^{ab}] F_ab ∫ d²y/(2π)² f'(y²)`.
//!
//! Both radial integrals are boundary terms fixed by `f(0) = 1` alone:
//! `1/(16π²)` and `-1/(4π)`. They are evaluated here by quadrature.
//!
//! In D = 2 this is the Jacobian density for one of ψ, ψ̄; the divergence of
//! the axial current picks up both, hence twice the reported coefficient.
//!
//! Field strengths are given in Euclidean components with the time direction
//! last, matching [`GammaBasis::euclidean_gammas`], and `*F·F` means
//! `ε_{abcd} F_ab F_cd / 2` with `ε_{0123} = +1`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::{euclidean_epsilon, trace_product, GammaBasis};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quad::{self, Tolerance};
use crate::testfn::{MomentumProfile, Smooth1d};

/// Antisymmetric real field strength in D = 2 or 4.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldStrength {
    dim: usize,
    f: Vec<f64>,
}

impl FieldStrength {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(Self {
            dim,
            f: vec![0.0; dim * dim],
        })
    }

    /// Row-major `dim × dim` matrix; must be exactly antisymmetric.
    pub fn from_matrix(dim: usize, entries: &[f64]) -> Result<Self> {
        let mut out = Self::zero(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        for a in 0..dim {
            for b in 0..dim {
                if entries[a * dim + b] != -entries[b * dim + a] {
                    return Err(Error::InvalidParameter {
                        name: "F",
                        reason: format!("F[{a}][{b}] != -F[{b}][{a}]"),
                    });
                }
            }
        }
        out.f.copy_from_slice(entries);
        Ok(out)
    }

    /// Sets `F_ab = v` and `F_ba = -v` for each `(a, b, v)`.
    pub fn from_components(dim: usize, comps: &[(usize, usize, f64)]) -> Result<Self> {
        let mut out = Self::zero(dim)?;
        for &(a, b, v) in comps {
            out.set(a, b, v)?;
        }
        Ok(out)
    }

    pub fn set(&mut self, a: usize, b: usize, v: f64) -> Result<()> {
        let dim = self.dim;
        for i in [a, b] {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
        }
        if a == b && v != 0.0 {
            return Err(Error::InvalidParameter {
                name: "F",
                reason: format!("diagonal component F[{a}][{a}] must vanish"),
            });
        }
        self.f[a * dim + b] = v;
        self.f[b * dim + a] = -v;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.f[a * self.dim + b]
    }

    /// `*F·F = ε_{abcd} F_ab F_cd / 2` (D = 4 only; zero otherwise).
    pub fn dual_contraction(&self) -> f64 {
        if self.dim != 4 {
            return 0.0;
        }
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let e = euclidean_epsilon(&[a, b, c, d]);
                        if e != 0.0 {
                            s += e * self.get(a, b) * self.get(c, d);
                        }
                    }
                }
            }
        }
        0.5 * s
    }
}

enum ProfileKind {
    Squared(MomentumProfile),
    Custom(Arc<dyn Smooth1d + Send + Sync>),
}

/// Regulator `f(u) = ρ̃²(u)` of the radial variable `u = y² >= 0`.
#[derive(Clone)]
pub struct RegulatorProfile {
    kind: Arc<ProfileKind>,
    end: f64,
}

impl fmt::Debug for RegulatorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            ProfileKind::Squared(p) => f.debug_tuple("RegulatorProfile::Squared").field(p).finish(),
            ProfileKind::Custom(_) => f
                .debug_struct("RegulatorProfile::Custom")
                .field("support_end", &self.end)
                .finish(),
        }
    }
}

impl RegulatorProfile {
    /// `f = ρ̃²` for a momentum-space profile `ρ̃`.
    pub fn squared(rho: MomentumProfile) -> Self {
        Self {
            end: rho.support_end(),
            kind: Arc::new(ProfileKind::Squared(rho)),
        }
    }

    /// Arbitrary smooth `f` on `u >= 0`. Requires `f(0) = 1` and that `f`
    /// and `f'` vanish at the right end of its support.
    pub fn custom(f: Arc<dyn Smooth1d + Send + Sync>) -> Result<Self> {
        let (_, end) = f.support().ok_or(Error::NoCompactSupport)?;
        if !end.is_finite() || end <= 0.0 {
            return Err(Error::NoCompactSupport);
        }
        let f0 = f.value(0.0);
        if (f0 - 1.0).abs() > 1e-14 {
            return Err(Error::InvalidParameter {
                name: "profile",
                reason: format!("f(0) = {f0}, expected 1"),
            });
        }
        let j = f.jet(end);
        if j.value().abs() > 1e-12 || j.derivative(1).abs() > 1e-12 {
            return Err(Error::BoundaryTerms { at: end });
        }
        Ok(Self {
            kind: Arc::new(ProfileKind::Custom(f)),
            end,
        })
    }

    pub fn jet(&self, u: f64) -> Jet {
        match &*self.kind {
            ProfileKind::Squared(p) => {
                let j = p.jet(u);
                j * j
            }
            ProfileKind::Custom(f) => f.jet(u),
        }
    }

    pub fn value(&self, u: f64) -> f64 {
        self.jet(u).value()
    }

    /// Largest `u` with `f(u) != 0`.
    pub fn support_end(&self) -> f64 {
        self.end
    }

    fn breakpoints(&self) -> Vec<f64> {
        [0.0, 0.25, 0.5, 0.75, 0.9, 1.0].iter().map(|t| t * self.end).collect()
    }
}

const TOL: Tolerance = Tolerance {
    abs: 1e-15,
    rel: 1e-13,
    max_panels: 4000,
};

/// `∫ d⁴y/(2π)⁴ f''(y²) = (π²/(2π)⁴) ∫₀^∞ u f''(u) du`, by quadrature.
pub fn radial_integral_4d(r: &RegulatorProfile) -> Result<f64> {
    let v = quad::integrate(|u| u * r.jet(u).derivative(2), &r.breakpoints(), TOL)?;
    Ok(PI * PI / (2.0 * PI).powi(4) * v.value)
}

/// `∫ d²y/(2π)² f'(y²) = (π/(2π)²) ∫₀^∞ f'(u) du`, by quadrature.
pub fn radial_integral_2d(r: &RegulatorProfile) -> Result<f64> {
    let v = quad::integrate(|u| r.jet(u).derivative(1), &r.breakpoints(), TOL)?;
    Ok(PI / (2.0 * PI).powi(2) * v.value)
}

fn real_trace(ms: &[&crate::clifford::DiracMatrix]) -> Result<f64> {
    let t: Complex64 = trace_product(ms)?;
    debug_assert!(t.im.abs() <= 1e-12 * t.norm().max(1.0));
    Ok(t.re)
}

fn check_dim(f: &FieldStrength, basis: &GammaBasis) -> Result<()> {
    if f.dim != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: f.dim,
        });
    }
    Ok(())
}

/// `σ_E^{ab} F_ab`.
fn sigma_f(f: &FieldStrength, basis: &GammaBasis) -> Result<crate::clifford::DiracMatrix> {
    let mut m = crate::clifford::DiracMatrix::zeros(basis.spinor_dim());
    for a in 0..f.dim {
        for b in 0..f.dim {
            let v = f.get(a, b);
            if v != 0.0 {
                m = m + basis.euclidean_sigma(a, b)?.scale(Complex64::new(v, 0.0));
            }
        }
    }
    Ok(m)
}

/// `tr[γ5 (σ_E^{ab} F_ab)²]` in D = 4.
pub fn trace_factor_4d_in(f: &FieldStrength, basis: &GammaBasis) -> Result<f64> {
    if basis.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: basis.dim(),
        });
    }
    check_dim(f, basis)?;
    let s = sigma_f(f, basis)?;
    real_trace(&[basis.gamma5(), &s, &s])
}

pub fn trace_factor_4d(f: &FieldStrength) -> Result<f64> {
    trace_factor_4d_in(f, &GammaBasis::standard(4)?)
}

/// `Σ_ab tr[γ5 σ_E^{ab}] F_ab` in D = 2.
pub fn trace_factor_2d_in(f: &FieldStrength, basis: &GammaBasis) -> Result<f64> {
    if basis.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: basis.dim(),
        });
    }
    check_dim(f, basis)?;
    let s = sigma_f(f, basis)?;
    real_trace(&[basis.gamma5(), &s])
}

pub fn trace_factor_2d(f: &FieldStrength) -> Result<f64> {
    trace_factor_2d_in(f, &GammaBasis::standard(2)?)
}

/// Measured `tr[γ5 σ_E^{ab} σ_E^{cd}] = κ ε_{abcd}` over all index tuples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceConvention {
    pub kappa: f64,
    /// Largest `|tr - κ ε|` over all 256 index tuples.
    pub max_deviation: f64,
}

pub fn trace_convention_4d(basis: &GammaBasis) -> Result<TraceConvention> {
    if basis.dim() != 4 {
        return Err(Error::UnsupportedDimension(basis.dim()));
    }
    let sig: Vec<_> = (0..16)
        .map(|i| basis.euclidean_sigma(i / 4, i % 4))
        .collect::<Result<_>>()?;
    let g5 = basis.gamma5();
    let kappa = real_trace(&[g5, &sig[1], &sig[2 * 4 + 3]])?;
    let mut max_deviation: f64 = 0.0;
    for i in 0..16 {
        for j in 0..16 {
            let t = trace_product(&[g5, &sig[i], &sig[j]])?;
            let eps = euclidean_epsilon(&[i / 4, i % 4, j / 4, j % 4]);
            max_deviation = max_deviation.max((t - Complex64::new(kappa * eps, 0.0)).norm());
        }
    }
    Ok(TraceConvention { kappa, max_deviation })
}

/// `tr[γ5 σ_E^{01}]` in D = 2.
pub fn trace_convention_2d(basis: &GammaBasis) -> Result<f64> {
    if basis.dim() != 2 {
        return Err(Error::UnsupportedDimension(basis.dim()));
    }
    real_trace(&[basis.gamma5(), &basis.euclidean_sigma(0, 1)?])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnomalyReport {
    pub dim: usize,
    pub e: f64,
    pub radial_integral: f64,
    pub trace_factor: f64,
    pub density: f64,
    /// D = 4: density per unit `*F·F`; D = 2: density per unit `F_01`.
    pub coefficient: f64,
}

pub fn anomaly_density_in(
    f: &FieldStrength,
    e: f64,
    profile: &RegulatorProfile,
    basis: &GammaBasis,
) -> Result<AnomalyReport> {
    check_dim(f, basis)?;
    if !e.is_finite() {
        return Err(Error::InvalidParameter {
            name: "e",
            reason: format!("must be finite, got {e}"),
        });
    }
    match f.dim {
        4 => {
            let radial = radial_integral_4d(profile)?;
            let trace = trace_factor_4d_in(f, basis)?;
            let kappa = trace_convention_4d(basis)?.kappa;
            let pre = e * e / 8.0;
            // tr[γ5 (σF)²] = κ ε F F = 2κ *F·F
            Ok(AnomalyReport {
                dim: 4,
                e,
                radial_integral: radial,
                trace_factor: trace,
                density: pre * trace * radial,
                coefficient: pre * 2.0 * kappa * radial,
            })
        }
        _ => {
            let radial = radial_integral_2d(profile)?;
            let trace = trace_factor_2d_in(f, basis)?;
            let t01 = trace_convention_2d(basis)?;
            let pre = -e / 2.0;
            Ok(AnomalyReport {
                dim: 2,
                e,
                radial_integral: radial,
                trace_factor: trace,
                density: pre * trace * radial,
                coefficient: pre * 2.0 * t01 * radial,
            })
        }
    }
}

pub fn anomaly_density(f: &FieldStrength, e: f64, profile: &RegulatorProfile) -> Result<AnomalyReport> {
    anomaly_density_in(f, e, profile, &GammaBasis::standard(f.dim)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{MetricSignature, Representation};
    use crate::testfn::{Polynomial, Shape};

    fn profile(shape: Shape, scale: f64) -> RegulatorProfile {
        RegulatorProfile::squared(MomentumProfile::new(shape, scale).unwrap())
    }

    #[test]
    fn radial_integrals_are_boundary_terms() {
        for shape in [Shape::Bump, Shape::FlatTop] {
            for scale in [0.5, 1.0, 7.0] {
                let p = profile(shape, scale);
                let i4 = radial_integral_4d(&p).unwrap();
                let i2 = radial_integral_2d(&p).unwrap();
                assert!((i4 - 1.0 / (16.0 * PI * PI)).abs() < 1e-10, "{shape:?} {scale}: {i4}");
                assert!((i2 + 1.0 / (4.0 * PI)).abs() < 1e-10, "{shape:?} {scale}: {i2}");
            }
        }
    }

    #[test]
    fn custom_profile_validation() {
        struct Trunc(Polynomial);
        impl Smooth1d for Trunc {
            fn jet(&self, x: f64) -> Jet {
                if x > 1.0 { Jet::constant(0.0) } else { self.0.jet(x) }
            }
            fn support(&self) -> Option<(f64, f64)> {
                Some((0.0, 1.0))
            }
        }
        // 1 - u: f(1) = 0 but f'(1) = -1
        let bad = Trunc(Polynomial(vec![1.0, -1.0]));
        assert_eq!(RegulatorProfile::custom(Arc::new(bad)).unwrap_err(), Error::BoundaryTerms { at: 1.0 });
        // (1 - u)² (1 + 2u): f(0) = 1, f(1) = f'(1) = 0
        let ok = Trunc(Polynomial(vec![1.0, 0.0, -3.0, 2.0]));
        let p = RegulatorProfile::custom(Arc::new(ok)).unwrap();
        assert!((radial_integral_2d(&p).unwrap() + 1.0 / (4.0 * PI)).abs() < 1e-13);
        let shifted = Trunc(Polynomial(vec![2.0, 0.0, -6.0, 4.0]));
        assert!(RegulatorProfile::custom(Arc::new(shifted)).is_err());
    }

    #[test]
    fn trace_is_proportional_to_epsilon() {
        for rep in [Representation::Dirac, Representation::Chiral] {
            let b = GammaBasis::new(MetricSignature::minkowski(4).unwrap(), rep);
            let c = trace_convention_4d(&b).unwrap();
            assert_eq!(c.kappa, 4.0);
            assert!(c.max_deviation < 1e-13);
        }
        let b = GammaBasis::standard(2).unwrap();
        assert_eq!(trace_convention_2d(&b).unwrap(), -2.0);
    }

    #[test]
    fn trace_factor_cases() {
        let only01 = FieldStrength::from_components(4, &[(0, 1, 2.5)]).unwrap();
        assert!(trace_factor_4d(&only01).unwrap().abs() < 1e-14);
        let f = |a, b| FieldStrength::from_components(4, &[(0, 1, a), (2, 3, b)]).unwrap();
        let t = trace_factor_4d(&f(1.0, 1.0)).unwrap();
        assert!((trace_factor_4d(&f(2.0, 1.0)).unwrap() - 2.0 * t).abs() < 1e-12);
        assert!((trace_factor_4d(&f(1.0, -3.0)).unwrap() + 3.0 * t).abs() < 1e-12);
        assert!((t - 8.0 * f(1.0, 1.0).dual_contraction()).abs() < 1e-12);
    }

    #[test]
    fn assembled_coefficients() {
        let p = profile(Shape::Bump, 1.0);
        let f = FieldStrength::from_components(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let r = anomaly_density(&f, 1.0, &p).unwrap();
        assert!((r.coefficient * 16.0 * PI * PI - 1.0).abs() < 1e-8);
        assert!((r.density - r.coefficient * f.dual_contraction()).abs() < 1e-14);

        let zero = FieldStrength::zero(4).unwrap();
        assert_eq!(anomaly_density(&zero, 1.0, &p).unwrap().density, 0.0);

        let f2 = FieldStrength::from_components(2, &[(0, 1, 0.7)]).unwrap();
        let one = anomaly_density(&f2, 1.0, &p).unwrap();
        let two = anomaly_density(&f2, 2.0, &p).unwrap();
        assert!((two.density - 2.0 * one.density).abs() < 1e-15);
        assert!((one.coefficient + 1.0 / (2.0 * PI)).abs() < 1e-10);

        let bad = FieldStrength::zero(2).unwrap();
        assert!(anomaly_density_in(&bad, 1.0, &p, &GammaBasis::standard(4).unwrap()).is_err());
    }

    #[test]
    fn antisymmetry_enforced() {
        assert!(FieldStrength::from_matrix(2, &[0.0, 1.0, 1.0, 0.0]).is_err());
        assert!(FieldStrength::from_matrix(2, &[0.0, 1.0, -1.0, 0.0]).is_ok());
        assert_eq!(FieldStrength::zero(3).unwrap_err(), Error::UnsupportedDimension(3));
    }
}
