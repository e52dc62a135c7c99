//! Truncated Taylor arithmetic.
//!
//! A [`Jet`] holds the normalized Taylor coefficients `f^(k)(x0) / k!` for
//! `k = 0..=MAX_ORDER`. Profiles are written once in terms of jets and all
//! derivatives up to fourth order come out exact to rounding, without finite
//! differences.

use std::ops::{Add, Mul, Neg, Sub};

/// Highest derivative order carried by a [`Jet`].
pub const MAX_ORDER: usize = 4;
const LEN: usize = MAX_ORDER + 1;

const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    coeffs: [f64; LEN],
}

impl Jet {
    pub const ZERO: Jet = Jet { coeffs: [0.0; LEN] };

    pub fn constant(c: f64) -> Self {
        let mut coeffs = [0.0; LEN];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The identity map `x` expanded around `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut coeffs = [0.0; LEN];
        coeffs[0] = x0;
        coeffs[1] = 1.0;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: [f64; LEN]) -> Self {
        Self { coeffs }
    }

    /// Builds a jet from plain derivatives `f, f', f'', ...`.
    pub fn from_derivatives(derivs: [f64; LEN]) -> Self {
        let mut coeffs = derivs;
        for (c, f) in coeffs.iter_mut().zip(FACTORIAL) {
            *c /= f;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64; LEN] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// k-th derivative. Panics if `k > MAX_ORDER`.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeffs[k] * FACTORIAL[k]
    }

    pub fn scale(self, s: f64) -> Self {
        let mut coeffs = self.coeffs;
        coeffs.iter_mut().for_each(|c| *c *= s);
        Self { coeffs }
    }

    /// Rescales the expansion variable: if `self` expands `g` around `t0`,
    /// the result expands `x -> g(t0 + factor (x - x0))` around `x0`.
    pub fn chain_linear(self, factor: f64) -> Self {
        let mut coeffs = self.coeffs;
        let mut p = 1.0;
        for c in coeffs.iter_mut() {
            *c *= p;
            p *= factor;
        }
        Self { coeffs }
    }

    pub fn recip(self) -> Self {
        let a = &self.coeffs;
        let mut b = [0.0; LEN];
        b[0] = 1.0 / a[0];
        for n in 1..LEN {
            let s: f64 = (1..=n).map(|k| a[k] * b[n - k]).sum();
            b[n] = -s / a[0];
        }
        Self { coeffs: b }
    }

    pub fn exp(self) -> Self {
        let a = &self.coeffs;
        let mut b = [0.0; LEN];
        b[0] = a[0].exp();
        for n in 1..LEN {
            let s: f64 = (1..=n).map(|k| k as f64 * a[k] * b[n - k]).sum();
            b[n] = s / n as f64;
        }
        Self { coeffs: b }
    }

    /// Cosine of a jet, via the shifted-phase form of the derivatives of cos.
    pub fn cos(self) -> Self {
        let x0 = self.coeffs[0];
        let mut outer = [0.0; LEN];
        for (k, o) in outer.iter_mut().enumerate() {
            *o = (x0 + k as f64 * std::f64::consts::FRAC_PI_2).cos() / FACTORIAL[k];
        }
        compose(&outer, self)
    }

    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Jet::constant(1.0), |acc, _| acc * self)
    }
}

/// Evaluates the outer series `sum_k outer[k] h^k` at `h = inner - inner(x0)`.
fn compose(outer: &[f64; LEN], inner: Jet) -> Jet {
    let mut h = inner;
    h.coeffs[0] = 0.0;
    let mut acc = Jet::constant(outer[0]);
    let mut hp = Jet::constant(1.0);
    for &o in outer.iter().skip(1) {
        hp = hp * h;
        acc = acc + hp.scale(o);
    }
    acc
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut coeffs = self.coeffs;
        coeffs.iter_mut().zip(rhs.coeffs).for_each(|(a, b)| *a += b);
        Jet { coeffs }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut coeffs = [0.0; LEN];
        for (n, c) in coeffs.iter_mut().enumerate() {
            *c = (0..=n).map(|k| self.coeffs[k] * rhs.coeffs[n - k]).sum();
        }
        Jet { coeffs }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn exp_of_linear_matches_closed_form() {
        // exp(2x) at x0 = 0.3
        let j = (Jet::variable(0.3).scale(2.0)).exp();
        for k in 0..=MAX_ORDER {
            let expected = 2f64.powi(k as i32) * (0.6f64).exp();
            assert!(close(j.derivative(k), expected, 1e-14), "k = {k}");
        }
    }

    #[test]
    fn recip_matches_closed_form() {
        // 1 / (1 - x) at x0 = 0.25 has derivatives k! / (1 - x0)^(k+1)
        let j = (-Jet::variable(0.25) + 1.0).recip();
        for k in 0..=MAX_ORDER {
            let expected = FACTORIAL[k] / 0.75f64.powi(k as i32 + 1);
            assert!(close(j.derivative(k), expected, 1e-13), "k = {k}");
        }
    }

    #[test]
    fn cos_of_scaled_variable() {
        let x0 = 0.7;
        let j = Jet::variable(x0).scale(3.0).cos();
        let expected = [
            (3.0 * x0).cos(),
            -3.0 * (3.0 * x0).sin(),
            -9.0 * (3.0 * x0).cos(),
            27.0 * (3.0 * x0).sin(),
            81.0 * (3.0 * x0).cos(),
        ];
        for k in 0..=MAX_ORDER {
            assert!(close(j.derivative(k), expected[k], 1e-13), "k = {k}");
        }
    }

    #[test]
    fn product_rule() {
        let x = Jet::variable(1.5);
        let j = x.powi(3) * x.exp();
        // d/dx (x^3 e^x) = (x^3 + 3x^2) e^x
        let e = 1.5f64.exp();
        assert!(close(j.derivative(1), (1.5f64.powi(3) + 3.0 * 2.25) * e, 1e-14));
    }
}
