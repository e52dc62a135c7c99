//! wasm-bindgen exports backing `web/index.html`.
//!
//! Each export returns a flat `Float64Array`; the row layout is documented on
//! the function. The plain `*_rows` functions carry the logic so they can be
//! tested natively.

use causalreg::anomaly::{anomaly_density, FieldStrength, RegulatorProfile};
use causalreg::causal2d::rhat_closed;
use causalreg::testfn::{BumpProfile, MomentumProfile, Shape, Smooth1d};
use causalreg::{Error, Result};
use wasm_bindgen::prelude::*;

fn shape(name: &str) -> Result<Shape> {
    name.parse()
}

/// Rows `[m²/k², Re r̂, Im r̂]`, log-spaced in m²/k² over `[lo, hi]`.
pub fn rhat_rows(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && lo <= hi && hi < 0.25) {
        return Err(Error::InvalidParameter {
            name: "ratio",
            reason: format!("need 0 < lo <= hi < 1/4, got [{lo}, {hi}]"),
        });
    }
    let points = points.max(2);
    let mut out = Vec::with_capacity(3 * points);
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let x = (lo.ln() + (hi.ln() - lo.ln()) * t).exp();
        let r = rhat_closed(1.0, x)?;
        out.extend([x, r.re, r.im]);
    }
    Ok(out)
}

/// Rows `[x, f, f', f'']` across the support of a 1D profile centred at 0.
pub fn profile_rows(name: &str, radius: f64, points: usize) -> Result<Vec<f64>> {
    let b = BumpProfile::on_line(shape(name)?, radius, 0.0)?;
    let points = points.max(2);
    let mut out = Vec::with_capacity(4 * points);
    for i in 0..points {
        let x = radius * (2.0 * i as f64 / (points - 1) as f64 - 1.0);
        let j = b.jet(x);
        out.extend([x, j.value(), j.derivative(1), j.derivative(2)]);
    }
    Ok(out)
}

/// `[radial integral, anomaly coefficient]` followed by rows `[p, f(p²)]` of
/// the regulator profile.
pub fn anomaly_rows(dim: u32, name: &str, scale: f64, e: f64, points: usize) -> Result<Vec<f64>> {
    let profile = RegulatorProfile::squared(MomentumProfile::new(shape(name)?, scale)?);
    let comps: &[(usize, usize, f64)] = match dim {
        2 => &[(0, 1, 1.0)],
        4 => &[(0, 1, 1.0), (2, 3, 1.0)],
        _ => {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: format!("expected 2 or 4, got {dim}"),
            })
        }
    };
    let f = FieldStrength::from_components(dim as usize, comps)?;
    let r = anomaly_density(&f, e, &profile)?;
    let points = points.max(2);
    let end = profile.support_end().sqrt();
    let mut out = vec![r.radial_integral, r.coefficient];
    for i in 0..points {
        let p = end * 1.1 * i as f64 / (points - 1) as f64;
        out.extend([p, profile.value(p * p)]);
    }
    Ok(out)
}

fn js<T>(r: Result<T>) -> std::result::Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn rhat_curve(lo: f64, hi: f64, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(rhat_rows(lo, hi, points))
}

#[wasm_bindgen]
pub fn profile_samples(shape: &str, radius: f64, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(profile_rows(shape, radius, points))
}

#[wasm_bindgen]
pub fn anomaly_radial(dim: u32, shape: &str, scale: f64, e: f64, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(anomaly_rows(dim, shape, scale, e, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rhat_approaches_massless_value() {
        let rows = rhat_rows(1e-8, 0.2, 5).unwrap();
        assert!((rows[1]).abs() < 1e-6 && (rows[2] - 1.0 / PI).abs() < 1e-6);
        assert!(rhat_rows(0.1, 0.3, 5).is_err());
    }

    #[test]
    fn profile_peaks_at_one() {
        let rows = profile_rows("flattop", 2.0, 9).unwrap();
        assert_eq!(rows.len(), 36);
        assert!((rows[4 * 4 + 1] - 1.0).abs() < 1e-15);
        assert_eq!(rows[1], 0.0);
    }

    #[test]
    fn anomaly_coefficient_is_shape_independent() {
        let a = anomaly_rows(4, "bump", 1.0, 1.0, 4).unwrap();
        let b = anomaly_rows(4, "flattop", 2.5, 1.0, 4).unwrap();
        assert!((a[1] - 1.0 / (16.0 * PI * PI)).abs() < 1e-12);
        assert!((a[1] - b[1]).abs() < 1e-12);
        let c = anomaly_rows(2, "bump", 1.0, 1.0, 4).unwrap();
        assert!((c[1] + 1.0 / (2.0 * PI)).abs() < 1e-12);
        assert!(anomaly_rows(3, "bump", 1.0, 1.0, 4).is_err());
    }
}
