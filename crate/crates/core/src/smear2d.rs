//! Gauge-covariant smearing of a fermion field on a periodic 2D lattice.
//!
//! The smeared field is
//!
//! ```text
//! Ψ(x) = Σ_y a² ρ(y - x) exp[ie Σ_z a² ∂⁺_μ C_{x,y}(z) A_μ(z)] ψ(y),
//! ```
//!
//! where the scalar kernel solves `Δ C_{x,y} = δ_x - δ_y` with the lattice
//! delta `δ_x(z) = δ_{z,x}/a²` and `Δ = ∂⁻_μ ∂⁺_μ`. Forward differences
//! `∂⁺` in the phase are paired with the backward divergence `∂⁻` in the
//! Laplacian, so summation by parts is exact:
//! `Σ_z a² ∂⁺f · V = -Σ_z a² f ∂⁻·V`. Under `ψ → e^{ieΛ}ψ`,
//! `A → A - ∂⁺Λ` the phase picks up exactly `e^{ie(Λ(x) - Λ(y))}`, so `Ψ`
//! transforms like `ψ` up to rounding.
//!
//! Indices are Euclidean, direction 0 along the first lattice axis, with
//! `ε_01 = +1`. `C_{x,y}(z) = G(z - x) - G(z - y)` where `G` is the periodic
//! Green's function of `δ_0` with its zero mode removed.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::clifford::{duality_identity_2d, DiracMatrix, GammaBasis, LeviCivita};
use crate::error::{Error, Result};
use crate::testfn::BumpProfile;

/// Lattice site `(i, j)`, `0 <= i, j < n`.
pub type Site = (usize, usize);

/// Periodic `n × n` grid with spacing `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid2 {
    n: usize,
    a: f64,
}

impl Grid2 {
    /// Unit box: `a = 1/n`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_spacing(n, 1.0 / n as f64)
    }

    pub fn with_spacing(n: usize, a: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("must be a power of two >= 8, got {n}"),
            });
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "a",
                reason: format!("must be positive, got {a}"),
            });
        }
        Ok(Self { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, s: Site) -> usize {
        (s.0 % self.n) * self.n + s.1 % self.n
    }

    pub fn site(&self, idx: usize) -> Site {
        (idx / self.n, idx % self.n)
    }

    /// Site displaced by `step` along direction `dir`.
    pub fn shift(&self, s: Site, dir: usize, step: isize) -> Site {
        let n = self.n as isize;
        let wrap = |v: usize| (((v as isize + step) % n + n) % n) as usize;
        if dir == 0 {
            (wrap(s.0), s.1)
        } else {
            (s.0, wrap(s.1))
        }
    }

    /// `s - t`, wrapped to the nearest periodic image, in lattice units.
    pub fn offset(&self, s: Site, t: Site) -> [isize; 2] {
        let n = self.n as isize;
        let wrap = |d: isize| {
            let d = d.rem_euclid(n);
            if d > n / 2 { d - n } else { d }
        };
        [wrap(s.0 as isize - t.0 as isize), wrap(s.1 as isize - t.1 as isize)]
    }

    fn check(&self, field: &[f64]) -> Result<()> {
        if field.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: field.len(),
            });
        }
        Ok(())
    }

    fn shifted(&self, f: &[f64], dir: usize, step: isize) -> Vec<f64> {
        (0..self.len()).map(|i| f[self.index(self.shift(self.site(i), dir, step))]).collect()
    }

    /// `∂⁺_μ f(z) = (f(z + μ) - f(z)) / a`.
    pub fn forward_gradient(&self, f: &[f64]) -> [Vec<f64>; 2] {
        [0, 1].map(|d| {
            let up = self.shifted(f, d, 1);
            up.iter().zip(f).map(|(u, v)| (u - v) / self.a).collect()
        })
    }

    /// `∂⁻_μ f(z) = (f(z) - f(z - μ)) / a`.
    pub fn backward_gradient(&self, f: &[f64]) -> [Vec<f64>; 2] {
        [0, 1].map(|d| {
            let down = self.shifted(f, d, -1);
            f.iter().zip(&down).map(|(v, w)| (v - w) / self.a).collect()
        })
    }

    /// `∂⁻_μ V_μ`, the negative adjoint of [`Grid2::forward_gradient`].
    pub fn backward_divergence(&self, v: &[Vec<f64>; 2]) -> Vec<f64> {
        let [g0, _] = self.backward_gradient(&v[0]);
        let [_, g1] = self.backward_gradient(&v[1]);
        g0.iter().zip(&g1).map(|(x, y)| x + y).collect()
    }

    /// `Δ f = ∂⁻_μ ∂⁺_μ f`.
    pub fn laplacian(&self, f: &[f64]) -> Vec<f64> {
        self.backward_divergence(&self.forward_gradient(f))
    }

    /// `Σ_z a² f(z) g(z)`.
    pub fn pair(&self, f: &[f64], g: &[f64]) -> f64 {
        self.a * self.a * f.iter().zip(g).map(|(x, y)| x * y).sum::<f64>()
    }

    /// Solves `Δ u = rhs` spectrally; `rhs` must have zero mean, and the
    /// zero mode of `u` is set to 0.
    fn poisson(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut data: Vec<Complex64> = rhs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        fft2(&mut data, n, false);
        for (idx, v) in data.iter_mut().enumerate() {
            let (k0, k1) = self.site(idx);
            let s0 = (PI * k0 as f64 / n as f64).sin();
            let s1 = (PI * k1 as f64 / n as f64).sin();
            let lambda = -4.0 * (s0 * s0 + s1 * s1) / (self.a * self.a);
            *v = if idx == 0 { Complex64::new(0.0, 0.0) } else { *v / lambda };
        }
        fft2(&mut data, n, true);
        let norm = (n * n) as f64;
        data.iter().map(|c| c.re / norm).collect()
    }
}

fn fft2(data: &mut [Complex64], n: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    for row in data.chunks_mut(n) {
        fft.process(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for i in 0..n {
            col[i] = data[i * n + j];
        }
        fft.process(&mut col);
        for i in 0..n {
            data[i * n + j] = col[i];
        }
    }
}

/// Two-component complex spinor per site.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpinor {
    grid: Grid2,
    data: Vec<[Complex64; 2]>,
}

impl LatticeSpinor {
    pub fn from_fn(grid: Grid2, f: impl Fn(Site) -> [Complex64; 2]) -> Self {
        let data = (0..grid.len()).map(|i| f(grid.site(i))).collect();
        Self { grid, data }
    }

    pub fn zeros(grid: Grid2) -> Self {
        Self::from_fn(grid, |_| [Complex64::new(0.0, 0.0); 2])
    }

    pub fn grid(&self) -> &Grid2 {
        &self.grid
    }

    pub fn get(&self, s: Site) -> [Complex64; 2] {
        self.data[self.grid.index(s)]
    }

    pub fn set(&mut self, s: Site, v: [Complex64; 2]) {
        let i = self.grid.index(s);
        self.data[i] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().flatten().all(|c| c.is_finite())
    }
}

/// Real gauge potential `A_μ(z)`, optionally derived from a scalar `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeGauge {
    grid: Grid2,
    a: [Vec<f64>; 2],
    phi: Option<Vec<f64>>,
}

impl LatticeGauge {
    pub fn new(grid: Grid2, a: [Vec<f64>; 2]) -> Result<Self> {
        grid.check(&a[0])?;
        grid.check(&a[1])?;
        Ok(Self { grid, a, phi: None })
    }

    pub fn zero(grid: Grid2) -> Self {
        Self {
            grid,
            a: [vec![0.0; grid.len()], vec![0.0; grid.len()]],
            phi: None,
        }
    }

    /// `A_μ = ε_μν ∂⁻_ν φ`, divergence free for `∂⁻·`.
    pub fn from_phi(grid: Grid2, phi: Vec<f64>) -> Result<Self> {
        grid.check(&phi)?;
        let [d0, d1] = grid.backward_gradient(&phi);
        Ok(Self {
            grid,
            a: [d1, d0.iter().map(|x| -x).collect()],
            phi: Some(phi),
        })
    }

    pub fn components(&self) -> &[Vec<f64>; 2] {
        &self.a
    }

    pub fn phi(&self) -> Option<&[f64]> {
        self.phi.as_deref()
    }

    /// `max |∂⁻_μ A_μ|`.
    pub fn lorenz_defect(&self) -> f64 {
        self.grid.backward_divergence(&self.a).iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// `C_{x,y}(z)` for one source/sink pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeKernel {
    grid: Grid2,
    x: Site,
    y: Site,
    values: Vec<f64>,
    trivial: bool,
}

impl GaugeKernel {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// True when `x = y` and the kernel vanishes identically.
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn endpoints(&self) -> (Site, Site) {
        (self.x, self.y)
    }

    /// `𝕔_μ = ∂⁺_μ C`.
    pub fn current(&self) -> [Vec<f64>; 2] {
        self.grid.forward_gradient(&self.values)
    }

    /// `max |a² Δ C - (δ_{z,x} - δ_{z,y})|`.
    pub fn residual(&self) -> f64 {
        let a2 = self.grid.a * self.grid.a;
        let source = source(&self.grid, self.x, self.y, 1.0);
        self.grid
            .laplacian(&self.values)
            .iter()
            .zip(&source)
            .fold(0.0, |m, (l, s)| m.max((a2 * l - s).abs()))
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn source(g: &Grid2, x: Site, y: Site, scale: f64) -> Vec<f64> {
    let mut s = vec![0.0; g.len()];
    s[g.index(x)] += scale;
    s[g.index(y)] -= scale;
    s
}

/// Spectral solve of `Δ C = δ_x - δ_y`.
pub fn solve_kernel(g: &Grid2, x: Site, y: Site) -> GaugeKernel {
    let x = (x.0 % g.n, x.1 % g.n);
    let y = (y.0 % g.n, y.1 % g.n);
    let trivial = x == y;
    let values = if trivial {
        vec![0.0; g.len()]
    } else {
        g.poisson(&source(g, x, y, 1.0 / (g.a * g.a)))
    };
    GaugeKernel {
        grid: *g,
        x,
        y,
        values,
        trivial,
    }
}

/// Which difference operator pairs `C` with `A` in the phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Pairing {
    /// `∂⁺C · A`: adjoint to the Laplacian's divergence.
    #[default]
    Forward,
    /// `∂⁻C · A`: mismatched, covariance only holds to `O(a)`.
    Backward,
}

/// Green's function of `δ_0` and its gradients, reused across kernel pairs.
#[derive(Debug, Clone)]
pub struct Smearer {
    grid: Grid2,
    green: Vec<f64>,
    forward: [Vec<f64>; 2],
    backward: [Vec<f64>; 2],
}

impl Smearer {
    pub fn new(grid: Grid2) -> Self {
        let a2 = grid.a * grid.a;
        let mut rhs = vec![-1.0 / (grid.len() as f64 * a2); grid.len()];
        rhs[0] += 1.0 / a2;
        let green = grid.poisson(&rhs);
        let forward = grid.forward_gradient(&green);
        let backward = grid.backward_gradient(&green);
        Self {
            grid,
            green,
            forward,
            backward,
        }
    }

    pub fn grid(&self) -> &Grid2 {
        &self.grid
    }

    /// `G(z)` for the source at the origin.
    pub fn green(&self) -> &[f64] {
        &self.green
    }

    /// `C_{x,y}(z) = G(z - x) - G(z - y)`.
    pub fn kernel(&self, x: Site, y: Site) -> Vec<f64> {
        let g = &self.grid;
        (0..g.len())
            .map(|i| {
                let z = g.site(i);
                self.green_at(z, x) - self.green_at(z, y)
            })
            .collect()
    }

    fn green_at(&self, z: Site, w: Site) -> f64 {
        self.translated(&self.green, z, w)
    }

    fn translated(&self, f: &[f64], z: Site, w: Site) -> f64 {
        let n = self.grid.n;
        f[((z.0 + n - w.0) % n) * n + (z.1 + n - w.1) % n]
    }

    /// `Σ_z a² ∂G(z - w) · A(z)`.
    fn potential(&self, a: &LatticeGauge, w: Site, pairing: Pairing) -> f64 {
        let grad = match pairing {
            Pairing::Forward => &self.forward,
            Pairing::Backward => &self.backward,
        };
        let g = &self.grid;
        let mut s = 0.0;
        for i in 0..g.len() {
            let z = g.site(i);
            s += self.translated(&grad[0], z, w) * a.a[0][i] + self.translated(&grad[1], z, w) * a.a[1][i];
        }
        g.a * g.a * s
    }

    /// `Σ_z a² ε_μν ∂⁻_ν G(z - w) A_μ(z)`.
    fn dual_potential(&self, a: &LatticeGauge, w: Site) -> f64 {
        let g = &self.grid;
        let mut s = 0.0;
        for i in 0..g.len() {
            let z = g.site(i);
            s += self.translated(&self.backward[1], z, w) * a.a[0][i]
                - self.translated(&self.backward[0], z, w) * a.a[1][i];
        }
        g.a * g.a * s
    }

    /// `Σ_z a² ∂C_{x,y}(z) · A(z)`.
    pub fn kernel_pairing(&self, a: &LatticeGauge, x: Site, y: Site, pairing: Pairing) -> f64 {
        self.potential(a, x, pairing) - self.potential(a, y, pairing)
    }

    /// Sites `y` with `ρ(y - x) != 0` and their weights `a² ρ(y - x)`.
    fn stencil(&self, rho: &BumpProfile, x: Site) -> Result<Vec<(Site, f64)>> {
        let g = &self.grid;
        let (min, max) = (2.0 * g.a, g.n as f64 * g.a / 4.0);
        let r = rho.radius();
        if !(min..=max).contains(&r) {
            return Err(Error::RadiusOutOfRange { radius: r, min, max });
        }
        if rho.center().len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rho.center().len(),
            });
        }
        let reach = (r / g.a).ceil() as isize + 1;
        let mut out = Vec::new();
        for di in -reach..=reach {
            for dj in -reach..=reach {
                let w = rho.eval(&[di as f64 * g.a, dj as f64 * g.a]);
                if w != 0.0 {
                    out.push((g.shift(g.shift(x, 0, di), 1, dj), g.a * g.a * w));
                }
            }
        }
        Ok(out)
    }

    pub fn smear(&self, psi: &LatticeSpinor, a: &LatticeGauge, rho: &BumpProfile, x: Site, e: f64) -> Result<[Complex64; 2]> {
        self.smear_with(psi, a, rho, x, e, Pairing::Forward)
    }

    pub fn smear_with(
        &self,
        psi: &LatticeSpinor,
        a: &LatticeGauge,
        rho: &BumpProfile,
        x: Site,
        e: f64,
        pairing: Pairing,
    ) -> Result<[Complex64; 2]> {
        self.check_fields(psi, a)?;
        let stencil = self.stencil(rho, x)?;
        let px = self.potential(a, x, pairing);
        let mut out = [Complex64::new(0.0, 0.0); 2];
        for (y, w) in stencil {
            let phase = Complex64::from_polar(w, e * (px - self.potential(a, y, pairing)));
            let v = psi.get(y);
            out[0] += phase * v[0];
            out[1] += phase * v[1];
        }
        Ok(out)
    }

    fn check_fields(&self, psi: &LatticeSpinor, a: &LatticeGauge) -> Result<()> {
        for g in [psi.grid, a.grid] {
            if g != self.grid {
                return Err(Error::DimensionMismatch {
                    expected: self.grid.len(),
                    found: g.len(),
                });
            }
        }
        Ok(())
    }

    /// `|Ψ'(x) - e^{ieΛ(x)} Ψ(x)|` with `(ψ', A')` the gauge transform of `(ψ, A)`.
    #[allow(clippy::too_many_arguments)]
    pub fn covariance_check(
        &self,
        psi: &LatticeSpinor,
        a: &LatticeGauge,
        lambda: &[f64],
        rho: &BumpProfile,
        x: Site,
        e: f64,
        pairing: Pairing,
    ) -> Result<f64> {
        let (psi2, a2) = gauge_transform(psi, a, lambda, e)?;
        let lhs = self.smear_with(&psi2, &a2, rho, x, e, pairing)?;
        let rhs = self.smear_with(psi, a, rho, x, e, pairing)?;
        let phase = Complex64::from_polar(1.0, e * lambda[self.grid.index(x)]);
        Ok(spinor_distance(lhs, [phase * rhs[0], phase * rhs[1]]))
    }

    /// Compares the bosonization ansatz
    /// `exp[ieγ5 φ(x)] Σ_y a² ρ(y - x) exp[-ieγ5 φ(y)] ψ(y)`
    /// against the kernel form, in which the dual pairing
    /// `Σ_z a² ε_μν ∂⁻_ν C_{x,y} A_μ` is turned into a γ5 phase through the
    /// duality sign `s` of `γ^μ ε_μν = s γ5 γ_ν`.
    pub fn bosonization_check(
        &self,
        a: &LatticeGauge,
        psi: &LatticeSpinor,
        rho: &BumpProfile,
        x: Site,
        e: f64,
        sign_s: i32,
    ) -> Result<BosonizationReport> {
        self.check_fields(psi, a)?;
        let phi = a.phi().ok_or(Error::InvalidParameter {
            name: "A",
            reason: "gauge field was not built from a scalar potential".into(),
        })?;
        let basis = GammaBasis::standard(2)?;
        let g5 = basis.gamma5();
        let stencil = self.stencil(rho, x)?;
        let g = &self.grid;

        let mut chi = vec![Complex64::new(0.0, 0.0); 2];
        for &(y, w) in &stencil {
            let v = g5.exp_i_involution(-e * phi[g.index(y)]).apply(&psi.get(y));
            chi[0] += w * v[0];
            chi[1] += w * v[1];
        }
        let ansatz = g5.exp_i_involution(e * phi[g.index(x)]).apply(&chi);

        let s = sign_s as f64;
        let qx = self.dual_potential(a, x);
        let mut kernel = [Complex64::new(0.0, 0.0); 2];
        for &(y, w) in &stencil {
            let t = qx - self.dual_potential(a, y);
            let v = g5.exp_i_involution(e * s * t).apply(&psi.get(y));
            kernel[0] += w * v[0];
            kernel[1] += w * v[1];
        }
        let ansatz = [ansatz[0], ansatz[1]];
        Ok(BosonizationReport {
            defect: spinor_distance(ansatz, kernel),
            reference_norm: spinor_distance(ansatz, [Complex64::new(0.0, 0.0); 2]),
            sign_s,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BosonizationReport {
    /// `|Ψ_ansatz(x) - Ψ_kernel(x)|`.
    pub defect: f64,
    /// `|Ψ_ansatz(x)|`.
    pub reference_norm: f64,
    pub sign_s: i32,
}

impl BosonizationReport {
    pub fn relative(&self) -> f64 {
        self.defect / self.reference_norm
    }
}

fn spinor_distance(u: [Complex64; 2], v: [Complex64; 2]) -> f64 {
    ((u[0] - v[0]).norm_sqr() + (u[1] - v[1]).norm_sqr()).sqrt()
}

/// `ψ' = e^{ieΛ} ψ`, `A' = A - ∂⁺Λ`.
pub fn gauge_transform(psi: &LatticeSpinor, a: &LatticeGauge, lambda: &[f64], e: f64) -> Result<(LatticeSpinor, LatticeGauge)> {
    let g = psi.grid;
    g.check(lambda)?;
    let data = psi
        .data
        .iter()
        .zip(lambda)
        .map(|(v, l)| {
            let p = Complex64::from_polar(1.0, e * l);
            [p * v[0], p * v[1]]
        })
        .collect();
    let d = g.forward_gradient(lambda);
    let comps = [0, 1].map(|m| a.a[m].iter().zip(&d[m]).map(|(x, y)| x - y).collect());
    Ok((
        LatticeSpinor { grid: g, data },
        LatticeGauge {
            grid: a.grid,
            a: comps,
            phi: None,
        },
    ))
}

/// Sign `s` in `γ^μ ε_μν = s γ5 γ_ν` for the standard orientation.
pub fn duality_sign() -> Result<i32> {
    Ok(duality_identity_2d(LeviCivita::standard(2)?)?.sign)
}

/// One-shot smearing; builds the Green's function each call.
pub fn smear(psi: &LatticeSpinor, a: &LatticeGauge, rho: &BumpProfile, g: &Grid2, x: Site, e: f64) -> Result<[Complex64; 2]> {
    Smearer::new(*g).smear(psi, a, rho, x, e)
}

/// `γ5` of the two-dimensional standard basis, for callers building spinors.
pub fn gamma5_2d() -> Result<DiracMatrix> {
    Ok(GammaBasis::standard(2)?.gamma5().clone())
}
