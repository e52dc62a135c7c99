//! Causal vacuum polarization of two-dimensional QED (Schwinger model).
//!
//! Metric `diag(+, -)`. With `k² > 4m²` the absorptive density is
//!
//! ```text
//! d̂(k) = (4m²/k⁴) (1 - 4m²/k²)^(-1/2) sign(k⁰),
//! ```
//!
//! and the causal amplitude is rebuilt from it by the once-subtracted
//! dispersion integral
//!
//! ```text
//! r̂(k) = (i/2π) ∫ dt d̂(tk)(tk)² / ((t - i0)(1 - t + i0)).
//! ```
//!
//! The support of `d̂(tk)` is `|t| >= 2m/√k²`, which excludes the pole at
//! `t = 0`; the pole at `t = 1` is taken as principal value plus `-iπ` times
//! the residue, as the `+i0` in `1 - t + i0` dictates. With `t = t₀ cosh u`,
//! `t₀ = 2m/√k²`, the inverse square root at the threshold endpoint is
//! absorbed into the measure: `d̂(tk)(tk)² dt = t₀ du / cosh u`.
//!
//! In closed form, writing `a = 4m²/k²` and `s = √(1 - a)`,
//!
//! ```text
//! r̂ = i/π + (i/π)(a/2s)[log((1 + s)/(1 - s)) - iπ],
//! ```
//!
//! which tends to `i/π` as `m → 0`: the polarization becomes
//! `Π_μν = i(e²/π)(g_μν - k_μk_ν/k²)` and the photon acquires mass² `e²/π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{self, Tolerance, Vector};

/// Two-momentum with upper components `(k⁰, k¹)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Momentum2 {
    pub k0: f64,
    pub k1: f64,
}

impl Momentum2 {
    pub fn new(k0: f64, k1: f64) -> Self {
        Self { k0, k1 }
    }

    /// Rest-frame momentum `(√k², 0)`, or the boost of it with rapidity `eta`.
    pub fn timelike(ksq: f64, eta: f64) -> Self {
        let m = ksq.sqrt();
        Self::new(m * eta.cosh(), m * eta.sinh())
    }

    pub fn ksq(&self) -> f64 {
        self.k0 * self.k0 - self.k1 * self.k1
    }

    pub fn sign_k0(&self) -> f64 {
        self.k0.signum()
    }

    pub fn upper(&self) -> [f64; 2] {
        [self.k0, self.k1]
    }

    pub fn lower(&self) -> [f64; 2] {
        [self.k0, -self.k1]
    }

    /// Euclidean length `√(k0² + k1²)`, used to normalize contractions.
    pub fn euclidean_norm(&self) -> f64 {
        self.k0.hypot(self.k1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    m: f64,
    e: f64,
}

impl ModelParams {
    pub fn new(m: f64, e: f64) -> Result<Self> {
        if !(m >= 0.0 && m.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "m",
                reason: format!("mass must be nonnegative, got {m}"),
            });
        }
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "e",
                reason: format!("coupling must be positive, got {e}"),
            });
        }
        Ok(Self { m, e })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn e(&self) -> f64 {
        self.e
    }
}

const METRIC: [f64; 2] = [1.0, -1.0];

/// `g_μν - k_μ k_ν / k²` (lower indices).
pub fn transverse_projector(k: &Momentum2) -> [[f64; 2]; 2] {
    let kl = k.lower();
    let ksq = k.ksq();
    let mut p = [[0.0; 2]; 2];
    for mu in 0..2 {
        for nu in 0..2 {
            let g = if mu == nu { METRIC[mu] } else { 0.0 };
            p[mu][nu] = g - kl[mu] * kl[nu] / ksq;
        }
    }
    p
}

/// The absorptive density `d̂(k)` at finite mass.
pub fn dhat(k: &Momentum2, m: f64) -> Result<f64> {
    let ksq = k.ksq();
    let threshold = 4.0 * m * m;
    if ksq == threshold {
        return Err(Error::AtThreshold(threshold));
    }
    if ksq < threshold {
        return Ok(0.0);
    }
    let a = threshold / ksq;
    Ok(threshold / (ksq * ksq) / (1.0 - a).sqrt() * k.sign_k0())
}

/// Tensor estimate from the smeared-δ oracle at one width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhatSample {
    pub width: f64,
    /// `P̂_μν` with lower indices.
    pub tensor: [[f64; 2]; 2],
    pub quadrature_error: f64,
}

/// Width-extrapolated oracle tensor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhatEstimate {
    pub tensor: [[f64; 2]; 2],
    /// `g^{μν} P̂_μν`, equal to the coefficient of `g_μν - k_μk_ν/k²`.
    pub coefficient: f64,
    /// Change between the last two extrapolation levels.
    pub extrapolation_change: f64,
    pub samples: Vec<PhatSample>,
}

fn gaussian(x: f64, width: f64) -> f64 {
    (-0.5 * (x / width).powi(2)).exp() / (width * (2.0 * PI).sqrt())
}

/// Brute-force evaluation of the p-integral defining `P̂_μν(k)`, with each
/// δ replaced by a normalized Gaussian of standard deviation `width`.
pub fn phat_oracle(k: &Momentum2, m: f64, width: f64) -> Result<PhatSample> {
    let ksq = k.ksq();
    if !(k.k0 > 0.0 && ksq > 4.0 * m * m) {
        return Err(Error::BelowThreshold {
            ksq,
            threshold: 4.0 * m * m,
        });
    }
    if !(width > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta_width",
            reason: format!("must be positive, got {width}"),
        });
    }
    let (k0, k1) = (k.k0, k.k1);
    let msq = m * m;
    let kl = k.lower();

    // On-shell points p = k/2 ± λ n, used only to seed panel edges.
    let lambda = (ksq / 4.0 - msq).sqrt();
    let norm = ksq.sqrt();
    let n = [k1 / norm, k0 / norm];
    let peaks: Vec<[f64; 2]> = [-1.0, 1.0]
        .iter()
        .map(|s| [k0 / 2.0 + s * lambda * n[0], k1 / 2.0 + s * lambda * n[1]])
        .collect();

    let reach = 12.0 * width;
    let inner = |p0: f64| -> Result<Vector<3>> {
        let top = p0 * p0 - msq + reach;
        if top <= 0.0 {
            return Ok(Vector([0.0; 3]));
        }
        let lim = top.sqrt();
        let mut pts = vec![-lim, lim];
        let shell = p0 * p0 - msq;
        let mut centers = Vec::new();
        if shell > 0.0 {
            let r = shell.sqrt();
            let w = width / (2.0 * r.max(width.sqrt()));
            centers.push((r, w));
            centers.push((-r, w));
        }
        if k1 != 0.0 {
            let c = (2.0 * k0 * p0 - ksq) / (2.0 * k1);
            centers.push((c, width / (2.0 * k1.abs())));
        }
        for (c, w) in centers {
            for f in [0.0, -1.0, 1.0, -3.0, 3.0, -8.0, 8.0] {
                pts.push(c + f * w);
            }
        }
        pts.retain(|x| (-lim..=lim).contains(x));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let f = |p1: f64| {
            let u = p0 * p0 - p1 * p1 - msq;
            let v = ksq - 2.0 * (k0 * p0 - k1 * p1);
            let weight = -2.0 * gaussian(u, width) * gaussian(v, width);
            if weight == 0.0 {
                return Vector([0.0; 3]);
            }
            let pl = [p0, -p1];
            let t = |mu: usize, nu: usize| {
                let g = if mu == nu { METRIC[mu] } else { 0.0 };
                pl[mu] * kl[nu] + pl[nu] * kl[mu] - 2.0 * pl[mu] * pl[nu] - 0.5 * ksq * g
            };
            Vector([weight * t(0, 0), weight * t(0, 1), weight * t(1, 1)])
        };
        Ok(quad::integrate(f, &pts, Tolerance::new(1e-15, 1e-11).with_max_panels(20_000))?.value)
    };

    let mut outer_pts = vec![0.0, k0];
    for p in &peaks {
        let det = 4.0 * (p[0] * k1 - p[1] * k0);
        let w = width * 2.0 * (k1 * k1 + p[1] * p[1]).sqrt() / det.abs();
        for f in [0.0, -0.5, 0.5, -1.0, 1.0, -2.0, 2.0, -4.0, 4.0, -8.0, 8.0] {
            outer_pts.push(p[0] + f * w);
        }
    }
    outer_pts.retain(|x| (0.0..=k0).contains(x));
    outer_pts.sort_by(f64::total_cmp);
    outer_pts.dedup();

    let mut failure = None;
    let result = quad::integrate(
        |p0| match inner(p0) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Vector([f64::NAN; 3])
            }
        },
        &outer_pts,
        Tolerance::new(1e-13, 1e-10).with_max_panels(20_000),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let r = result?;
    let [t00, t01, t11] = r.value.0;
    Ok(PhatSample {
        width,
        tensor: [[t00, t01], [t01, t11]],
        quadrature_error: r.error,
    })
}

/// Runs [`phat_oracle`] at `width`, `width/2`, `width/4` and extrapolates
/// the `O(width²)` smearing error away (two Richardson levels).
pub fn phat_extrapolated(k: &Momentum2, m: f64, width: f64) -> Result<PhatEstimate> {
    let samples = [width, width / 2.0, width / 4.0]
        .iter()
        .map(|&w| phat_oracle(k, m, w))
        .collect::<Result<Vec<_>>>()?;
    let mut tensor = [[0.0; 2]; 2];
    let mut change: f64 = 0.0;
    for mu in 0..2 {
        for nu in 0..2 {
            let c: Vec<f64> = samples.iter().map(|s| s.tensor[mu][nu]).collect();
            let r1 = (4.0 * c[1] - c[0]) / 3.0;
            let r2 = (4.0 * c[2] - c[1]) / 3.0;
            let r3 = (16.0 * r2 - r1) / 15.0;
            tensor[mu][nu] = r3;
            change = change.max((r3 - r2).abs());
        }
    }
    let coefficient = tensor[0][0] - tensor[1][1];
    Ok(PhatEstimate {
        tensor,
        coefficient,
        extrapolation_change: change,
        samples,
    })
}

/// Principal-value / pole decomposition of `r̂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PvSplit {
    /// `(i/2π) PV∫ ...`, purely imaginary.
    pub principal_value: Complex64,
    /// Contribution of the `t = 1` pole, `d̂(k)k²/2`, purely real.
    pub pole_residue: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionResult {
    pub value: Complex64,
    pub quadrature_error: f64,
    pub pv_split: PvSplit,
}

fn check_above_threshold(ksq: f64, msq: f64) -> Result<()> {
    if !(msq >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "msq",
            reason: format!("must be nonnegative, got {msq}"),
        });
    }
    if !(ksq > 4.0 * msq) {
        return Err(Error::BelowThreshold {
            ksq,
            threshold: 4.0 * msq,
        });
    }
    Ok(())
}

/// `r̂` by quadrature of the dispersion integral (`k⁰ > 0`).
pub fn rhat_quadrature(ksq: f64, msq: f64) -> Result<DispersionResult> {
    check_above_threshold(ksq, msq)?;
    if msq == 0.0 {
        return Err(Error::InvalidParameter {
            name: "msq",
            reason: "the density is δ-supported at m = 0; use rhat_closed or massless_limit".into(),
        });
    }
    let a = 4.0 * msq / ksq;
    let s = ((ksq - 4.0 * msq) / ksq).sqrt();
    let t0 = a.sqrt();
    // t₀ cosh u₁ = 1
    let u1 = (s / t0).asinh();
    let tol = Tolerance::new(1e-14, 1e-13).with_max_panels(20_000);
    let top = 2.0 * u1 + 45.0;

    // t < 0 branch: no poles.
    let neg = quad::integrate(
        |u: f64| {
            let c = u.cosh();
            1.0 / (c * c * (1.0 + t0 * c))
        },
        &[0.0, 1.0, 4.0, 12.0, top],
        tol,
    )?;

    // t > 0 branch: 1 - t₀ cosh u = -2 t₀ sinh((u+u₁)/2) sinh((u-u₁)/2).
    let h = |u: f64| {
        let c = u.cosh();
        let gap = -2.0 * t0 * (0.5 * (u + u1)).sinh() * (0.5 * (u - u1)).sinh();
        1.0 / (c * c * gap)
    };
    let ch = u1.cosh();
    let residue = -1.0 / (t0 * u1.sinh() * ch * ch);
    let near = quad::integrate(
        |u: f64| h(u) - residue / (u - u1),
        &[0.0, 0.5 * u1, u1, 1.5 * u1, 2.0 * u1],
        tol,
    )?;
    let mut far_pts = vec![2.0 * u1];
    far_pts.extend([1.0, 4.0, 12.0].iter().map(|d| 2.0 * u1 + d));
    far_pts.push(top);
    let far = quad::integrate(h, &far_pts, tol)?;

    let pv = neg.value + near.value + far.value;
    let principal_value = Complex64::new(0.0, pv / (2.0 * PI));
    let pole_residue = Complex64::new(0.5 * a / s, 0.0);
    Ok(DispersionResult {
        value: principal_value + pole_residue,
        quadrature_error: (neg.error + near.error + far.error) / (2.0 * PI),
        pv_split: PvSplit {
            principal_value,
            pole_residue,
        },
    })
}

/// Closed form of `r̂` above threshold (`k⁰ > 0`); `msq = 0` gives `i/π`.
pub fn rhat_closed(ksq: f64, msq: f64) -> Result<Complex64> {
    check_above_threshold(ksq, msq)?;
    let subtraction = Complex64::new(0.0, 1.0 / PI);
    if msq == 0.0 {
        return Ok(subtraction);
    }
    let a = 4.0 * msq / ksq;
    let s = ((ksq - 4.0 * msq) / ksq).sqrt();
    // log((s + 1)/(s - 1)) = log((1 + s)/(1 - s)) - iπ. The -iπ sheet is the
    // one the dispersion integral lands on; it supplies the real part a/(2s).
    let log = 2.0 * s.atanh();
    let coeff = a / (2.0 * s);
    Ok(subtraction + Complex64::new(coeff, coeff * log / PI))
}

/// Analytic continuation of the closed form to spacelike `k² < 0`, where the
/// logarithm's argument is positive and `r̂` is purely imaginary.
pub fn rhat_spacelike(ksq: f64, msq: f64) -> Result<Complex64> {
    if !(ksq < 0.0) {
        return Err(Error::InvalidParameter {
            name: "ksq",
            reason: format!("must be negative, got {ksq}"),
        });
    }
    if !(msq >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "msq",
            reason: format!("must be nonnegative, got {msq}"),
        });
    }
    if msq == 0.0 {
        return Ok(Complex64::new(0.0, 1.0 / PI));
    }
    let a = 4.0 * msq / ksq;
    let s = (1.0 - a).sqrt();
    let log = 2.0 * (1.0 / s).atanh();
    Ok(Complex64::new(0.0, (1.0 + a / (2.0 * s) * log) / PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation {
    pub value: Complex64,
    /// Difference between the two highest extrapolation levels.
    pub change: f64,
}

/// `lim_{m²/k² → 0} r̂` by Richardson extrapolation of the closed form in
/// `x = m²/k²` from `x = 10⁻⁴ … 10⁻⁷`.
pub fn massless_limit(ksq: f64) -> Result<Extrapolation> {
    if !(ksq > 0.0) {
        return Err(Error::BelowThreshold { ksq, threshold: 0.0 });
    }
    let xs = [1e-4, 1e-5, 1e-6, 1e-7];
    let mut table: Vec<Complex64> = xs
        .iter()
        .map(|x| rhat_closed(ksq, x * ksq))
        .collect::<Result<_>>()?;
    // Neville tableau evaluated at x = 0.
    let mut last_change = 0.0;
    for level in 1..xs.len() {
        for i in (level..xs.len()).rev() {
            let (xi, xj) = (xs[i], xs[i - level]);
            let next = (table[i] * xj - table[i - 1] * xi) / (xj - xi);
            if i == xs.len() - 1 {
                last_change = (next - table[i]).norm();
            }
            table[i] = next;
        }
    }
    Ok(Extrapolation {
        value: table[xs.len() - 1],
        change: last_change,
    })
}

/// Induced photon mass² `e² · Im r̂(m → 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BosonMass {
    pub e: f64,
    pub boson_mass_squared: f64,
    pub extrapolation_change: f64,
}

pub fn boson_mass_squared(e: f64) -> Result<BosonMass> {
    let params = ModelParams::new(0.0, e)?;
    let lim = massless_limit(1.0)?;
    Ok(BosonMass {
        e,
        boson_mass_squared: params.e * params.e * lim.value.im,
        extrapolation_change: params.e * params.e * lim.change,
    })
}

/// `Π_μν = e²(g_μν - k_μk_ν/k²) r̂(k)` with lower indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarizationTensor {
    pub components: [[Complex64; 2]; 2],
    pub k: Momentum2,
    pub params: ModelParams,
}

impl PolarizationTensor {
    /// `k^μ Π_μν`.
    pub fn contract_k(&self) -> [Complex64; 2] {
        let ku = self.k.upper();
        [0, 1].map(|nu| ku[0] * self.components[0][nu] + ku[1] * self.components[1][nu])
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.components.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|k^μ Π_μν| / (|k| ‖Π‖)` with Euclidean norms.
    pub fn transversality_defect(&self) -> f64 {
        let c = self.contract_k();
        (c[0].norm_sqr() + c[1].norm_sqr()).sqrt() / (self.k.euclidean_norm() * self.norm())
    }

    pub fn is_symmetric(&self) -> bool {
        self.components[0][1] == self.components[1][0]
    }
}

/// The causal polarization tensor for timelike `k` above threshold.
pub fn polarization(k: &Momentum2, p: &ModelParams) -> Result<PolarizationTensor> {
    let ksq = k.ksq();
    if ksq.abs() <= 1e-14 * (k.k0 * k.k0 + k.k1 * k.k1) {
        return Err(Error::Lightlike);
    }
    let r = rhat_closed(ksq, p.m * p.m)? * k.sign_k0();
    let proj = transverse_projector(k);
    let e2 = p.e * p.e;
    let components = proj.map(|row| row.map(|x| r * (e2 * x)));
    Ok(PolarizationTensor {
        components,
        k: *k,
        params: *p,
    })
}

/// Euclidean one-loop polarization with a sharp cutoff `|p| < Λ`:
///
/// ```text
/// Π_μν(k) = ∫ d²p/(2π)² [2(p_μq_ν + p_νq_μ) - 2δ_μν(p·q + m²)] / ((p² + m²)(q² + m²)),
/// ```
///
/// `q = p + k`. No subtraction is applied, so `k^μ Π_μν` does not vanish.
pub fn naive_cutoff_polarization(k: [f64; 2], m: f64, cutoff: f64) -> Result<[[f64; 2]; 2]> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("must be positive, got {m}"),
        });
    }
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "cutoff",
            reason: format!("must be positive, got {cutoff}"),
        });
    }
    let msq = m * m;
    let kn = k[0].hypot(k[1]);
    let theta_star = if kn > 0.0 { (-k[1]).atan2(-k[0]) } else { 0.0 };
    let inner = |r: f64| -> Result<Vector<3>> {
        let f = |th: f64| {
            let p = [r * th.cos(), r * th.sin()];
            let q = [p[0] + k[0], p[1] + k[1]];
            let pq = p[0] * q[0] + p[1] * q[1];
            let den = (r * r + msq) * (q[0] * q[0] + q[1] * q[1] + msq);
            let n = |mu: usize, nu: usize| {
                let d = if mu == nu { 1.0 } else { 0.0 };
                2.0 * (p[mu] * q[nu] + p[nu] * q[mu]) - 2.0 * d * (pq + msq)
            };
            Vector([n(0, 0), n(0, 1), n(1, 1)]) * (r / den)
        };
        let mut pts = vec![theta_star - PI, theta_star + PI];
        if kn > 0.0 && r > 0.0 {
            let w = ((r - kn).powi(2) + msq).sqrt() / (r * kn).sqrt();
            for fac in [0.0, -1.0, 1.0, -4.0, 4.0, -16.0, 16.0] {
                pts.push(theta_star + fac * w);
            }
        }
        pts.retain(|x| (theta_star - PI..=theta_star + PI).contains(x));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Ok(quad::integrate(f, &pts, Tolerance::new(1e-13, 1e-11).with_max_panels(20_000))?.value)
    };
    let mut pts = vec![0.0, cutoff];
    if kn > 0.0 {
        for fac in [-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0] {
            pts.push(kn + fac * m);
        }
        pts.push(0.5 * kn);
    }
    let mut r = 2.0 * kn.max(m);
    while r < cutoff {
        pts.push(r);
        r *= 2.0;
    }
    pts.retain(|x| (0.0..=cutoff).contains(x));
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let mut failure = None;
    let res = quad::integrate(
        |r| match inner(r) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Vector([f64::NAN; 3])
            }
        },
        &pts,
        Tolerance::new(1e-13, 1e-11).with_max_panels(20_000),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let [a, b, c] = res?.value.0;
    let norm = 1.0 / (4.0 * PI * PI);
    Ok([[a * norm, b * norm], [b * norm, c * norm]])
}

/// Decomposition of a Euclidean 2×2 tensor along `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeDiagnostics {
    /// `|k^μ Π_μν| / (|k| ‖Π‖)`.
    pub longitudinal_defect: f64,
    /// Coefficient of `δ - kk/k²`.
    pub transverse: f64,
    /// Coefficient of `kk/k²`; zero for a gauge-invariant tensor.
    pub longitudinal: f64,
}

impl GaugeDiagnostics {
    /// Transverse coefficient with the `δ_μν`-proportional surface term removed.
    pub fn transverse_without_surface_term(&self) -> f64 {
        self.transverse - self.longitudinal
    }
}

pub fn euclidean_gauge_diagnostics(k: [f64; 2], t: &[[f64; 2]; 2]) -> GaugeDiagnostics {
    let ksq = k[0] * k[0] + k[1] * k[1];
    let c = [0, 1].map(|nu| k[0] * t[0][nu] + k[1] * t[1][nu]);
    let norm = t.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let mut transverse = 0.0;
    let mut longitudinal = 0.0;
    for mu in 0..2 {
        for nu in 0..2 {
            let kk = k[mu] * k[nu] / ksq;
            let d = if mu == nu { 1.0 } else { 0.0 };
            transverse += (d - kk) * t[mu][nu];
            longitudinal += kk * t[mu][nu];
        }
    }
    GaugeDiagnostics {
        longitudinal_defect: c[0].hypot(c[1]) / (ksq.sqrt() * norm),
        transverse,
        longitudinal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dhat_cases() {
        let m = 1.0;
        assert_eq!(dhat(&Momentum2::new(1.0, 0.0), m).unwrap(), 0.0);
        let k = Momentum2::new(8f64.sqrt(), 0.0);
        assert!((dhat(&k, m).unwrap() - 2f64.sqrt() / 16.0).abs() < 1e-15);
        let mirrored = Momentum2::new(-k.k0, -k.k1);
        assert_eq!(dhat(&mirrored, m).unwrap(), -dhat(&k, m).unwrap());
        assert!(matches!(dhat(&Momentum2::new(2.0, 0.0), m), Err(Error::AtThreshold(_))));
    }

    #[test]
    fn closed_form_limits() {
        let r = rhat_closed(1.0, 0.0).unwrap();
        assert_eq!(r, Complex64::new(0.0, 1.0 / PI));
        let small = rhat_closed(1.0, 1e-10).unwrap();
        assert!((small - r).norm() < 1e-8);
        assert!(rhat_closed(1.0, 0.25).is_err());
        assert!(rhat_closed(1.0, 0.3).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for x in [1e-2, 0.1, 0.2, 0.24] {
            let q = rhat_quadrature(1.0, x).unwrap();
            let c = rhat_closed(1.0, x).unwrap();
            assert!((q.value - c).norm() <= 1e-6 * c.norm(), "x={x}: {} vs {c}", q.value);
        }
    }

    #[test]
    fn absorptive_part_is_half_the_density() {
        for x in [1e-3, 0.05, 0.2] {
            let ksq = 3.0;
            let r = rhat_closed(ksq, x * ksq).unwrap();
            let k = Momentum2::timelike(ksq, 0.4);
            let d = dhat(&k, (x * ksq).sqrt()).unwrap();
            assert!((r.re - 0.5 * ksq * d).abs() < 1e-12 * r.re.abs().max(1.0));
        }
    }

    #[test]
    fn polarization_is_transverse_and_symmetric() {
        let p = ModelParams::new(0.3, 1.2).unwrap();
        let t = polarization(&Momentum2::timelike(2.0, -0.7), &p).unwrap();
        assert!(t.is_symmetric());
        assert!(t.transversality_defect() < 1e-12);
        assert_eq!(
            polarization(&Momentum2::new(1.0, 1.0), &p).unwrap_err(),
            Error::Lightlike
        );
        assert!(matches!(
            polarization(&Momentum2::new(0.1, 0.0), &p),
            Err(Error::BelowThreshold { .. })
        ));
    }

    #[test]
    fn massless_polarization_and_mass() {
        let p = ModelParams::new(0.0, 1.0).unwrap();
        let k = Momentum2::timelike(5.0, 0.3);
        let t = polarization(&k, &p).unwrap();
        let proj = transverse_projector(&k);
        for mu in 0..2 {
            for nu in 0..2 {
                let expected = Complex64::new(0.0, proj[mu][nu] / PI);
                assert!((t.components[mu][nu] - expected).norm() < 1e-14);
            }
        }
        let mass = boson_mass_squared(1.0).unwrap();
        assert!((mass.boson_mass_squared - 1.0 / PI).abs() < 1e-4);
    }

    #[test]
    fn spacelike_continuation_tends_to_massless_value() {
        let r = rhat_spacelike(-1.0, 1e-12).unwrap();
        assert!((r.im - 1.0 / PI).abs() < 1e-9);
        assert_eq!(r.re, 0.0);
    }

    #[test]
    fn naive_cutoff_at_zero_momentum_is_diagonal() {
        let t = naive_cutoff_polarization([0.0, 0.0], 0.5, 50.0).unwrap();
        assert!(t[0][1].abs() < 1e-12);
        assert!((t[0][0] - t[1][1]).abs() < 1e-10);
        // -2m² ∫ d²p/(2π)² 1/(p²+m²)² = -(1/2π) Λ²/(Λ²+m²)
        let expected = -(1.0 / (2.0 * PI)) * 2500.0 / (2500.0 + 0.25);
        assert!((t[0][0] - expected).abs() < 1e-9, "{} vs {expected}", t[0][0]);
    }
}
