//! Reference computations that share no numerical code with `causalreg`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// 5-point Gauss-Legendre nodes and weights on [-1, 1].
const NODES: [f64; 5] = [
    0.0,
    0.538_469_310_105_683_1,
    -0.538_469_310_105_683_1,
    0.906_179_845_938_664,
    -0.906_179_845_938_664,
];
const WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

/// Fixed composite 5-point Gauss-Legendre rule with `panels` equal panels.
pub fn composite_gauss(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in NODES.iter().zip(WEIGHTS) {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

/// Finite part of `⟨x^(-k), f⟩` for `k ∈ {1, 2}` with an even weight `w`
/// that is 1 near the origin, folded onto `x > 0`:
///
/// * `k = 1`: `∫₀^X (f(x) - f(-x)) / x dx`;
/// * `k = 2`: `∫₀^X (f(x) + f(-x) - 2 w(x) f(0)) / x² dx`.
pub fn folded_finite_part(k: u32, f: impl Fn(f64) -> f64, w: impl Fn(f64) -> f64, reach: f64) -> f64 {
    let f0 = f(0.0);
    match k {
        1 => composite_gauss(|x| (f(x) - f(-x)) / x, 0.0, reach, 4000),
        2 => composite_gauss(|x| (f(x) + f(-x) - 2.0 * w(x) * f0) / (x * x), 0.0, reach, 4000),
        _ => panic!("folded oracle covers k = 1, 2 only"),
    }
}

/// `*F·F = ε_{abcd} F_ab F_cd / 2 = 4 (F01 F23 - F02 F13 + F03 F12)`.
pub fn dual_contraction(f: impl Fn(usize, usize) -> f64) -> f64 {
    4.0 * (f(0, 1) * f(2, 3) - f(0, 2) * f(1, 3) + f(0, 3) * f(1, 2))
}

/// `∫ d⁴y/(2π)⁴ f''(y²)` by parts: `π² f(0) / (2π)⁴`.
pub fn radial_4d(f0: f64) -> f64 {
    PI * PI * f0 / (2.0 * PI).powi(4)
}

/// `∫ d²y/(2π)² f'(y²) = -π f(0) / (2π)²`.
pub fn radial_2d(f0: f64) -> f64 {
    -PI * f0 / (2.0 * PI).powi(2)
}

/// `k^μ T_μν` for lower-index `T` and upper `k`, in `diag(+, -)`.
pub fn contract_upper(k: [f64; 2], t: &[[Complex64; 2]; 2]) -> [Complex64; 2] {
    [0, 1].map(|nu| t[0][nu] * k[0] + t[1][nu] * k[1])
}

/// Massless Schwinger value `i/π`.
pub fn massless_rhat() -> Complex64 {
    Complex64::new(0.0, 1.0 / PI)
}

/// `log(μ²/m²)/2`.
pub fn bphz_limit(m: f64, mu: f64) -> f64 {
    0.5 * (mu * mu / (m * m)).ln()
}
