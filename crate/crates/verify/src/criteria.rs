use std::f64::consts::PI;
use std::time::{Duration, Instant};

use causalreg::anomaly::{
    anomaly_density, radial_integral_2d, radial_integral_4d, trace_factor_4d, FieldStrength, RegulatorProfile,
};
use causalreg::causal2d::{
    boson_mass_squared, dhat, euclidean_gauge_diagnostics, massless_limit, naive_cutoff_polarization,
    phat_extrapolated, polarization, rhat_closed, rhat_quadrature, ModelParams, Momentum2,
};
use causalreg::clifford::{
    chirality_commutator_check_in, duality_identity_2d_in, sigma_epsilon_proportionality, trace_product, DiracMatrix,
    GammaBasis, LeviCivita, MetricSignature, Representation,
};
use causalreg::distext::{bphz_demo, pair_finite_part, PowerSingularity};
use causalreg::smear2d::{duality_sign, Grid2, LatticeGauge, LatticeSpinor, Pairing, Smearer};
use causalreg::testfn::{BumpProfile, MomentumProfile, Shape, Smooth1d, TaylorWeight};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracles;
use crate::CheckOutcome;

fn timed(id: u8, name: &'static str, limit_s: u64, body: impl FnOnce() -> Result<String, String>) -> CheckOutcome {
    let start = Instant::now();
    let res = body();
    let elapsed = start.elapsed();
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        id,
        name,
        passed,
        detail,
        elapsed,
        limit: Duration::from_secs(limit_s),
    }
}

fn ensure(cond: bool, msg: String) -> Result<String, String> {
    if cond {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn err(e: causalreg::Error) -> String {
    format!("error: {e}")
}

/// 1. `lim_{m→0} r̂ = i/π` and mass² = e²/π.
pub fn schwinger_mass() -> CheckOutcome {
    timed(1, "schwinger-boson-mass", 1, || {
        let lim = massless_limit(1.0).map_err(err)?;
        let d = (lim.value - oracles::massless_rhat()).norm();
        let m = boson_mass_squared(1.0).map_err(err)?;
        let dm = (m.boson_mass_squared - 1.0 / PI).abs();
        ensure(
            d <= 1e-4 && dm <= 1e-4,
            format!("|r̂₀ - i/π| = {d:.2e}, |m² - 1/π| = {dm:.2e}"),
        )
    })
}

/// 2. Dispersion quadrature against the closed form.
pub fn dispersion_consistency() -> CheckOutcome {
    timed(2, "dispersion-consistency", 30, || {
        let (lo, hi) = (1e-6f64.ln(), 0.24f64.ln());
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let x = (lo + (hi - lo) * i as f64 / 19.0).exp();
            let q = rhat_quadrature(1.0, x).map_err(err)?;
            let c = rhat_closed(1.0, x).map_err(err)?;
            worst = worst.max((q.value - c).norm() / c.norm());
        }
        ensure(worst <= 1e-6, format!("max relative error {worst:.2e} over 20 points"))
    })
}

/// 3. `k^μ Π_μν = 0` for random momenta above threshold.
pub fn transversality(seed: u64) -> CheckOutcome {
    timed(3, "causal-transversality", 5, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let ksq = rng.gen_range(0.05..100.0);
            let k = Momentum2::timelike(ksq, rng.gen_range(-4.0..4.0));
            let k = if rng.gen_bool(0.5) { k } else { Momentum2::new(-k.k0, -k.k1) };
            let m = (rng.gen_range(0.0..0.2499) * ksq).sqrt();
            let t = polarization(&k, &ModelParams::new(m, rng.gen_range(0.1..3.0)).map_err(err)?).map_err(err)?;
            let c = oracles::contract_upper(k.upper(), &t.components);
            let norm = t.components.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let rel = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt() / (k.euclidean_norm() * norm);
            worst = worst.max(rel);
        }
        ensure(worst <= 1e-10, format!("max |k·Π|/(|k|‖Π‖) = {worst:.2e} over 100 momenta"))
    })
}

/// 4. Smeared-δ tensor against `k² d̂(k)`.
pub fn oracle_equivalence() -> CheckOutcome {
    timed(4, "phat-oracle-equivalence", 120, || {
        let points = [(2.0, 0.0, 0.4), (2.0, 0.35, 0.4), (5.0, -0.8, 0.5), (1.0, 1.2, 0.1), (10.0, 0.5, 1.2)];
        let mut worst: f64 = 0.0;
        for (ksq, eta, m) in points {
            let k = Momentum2::timelike(ksq, eta);
            let width = 0.02 * (ksq / 4.0 - m * m);
            let est = phat_extrapolated(&k, m, width).map_err(err)?;
            let target = ksq * dhat(&k, m).map_err(err)?;
            worst = worst.max((est.coefficient - target).abs() / target.abs());
        }
        ensure(worst <= 1e-3, format!("max relative deviation {worst:.2e} at 5 points"))
    })
}

/// 5. Naive cutoff stays longitudinal; causal tensor is transverse.
pub fn gauge_violation_contrast() -> CheckOutcome {
    timed(5, "gauge-violation-contrast", 60, || {
        let k = [0.6, 0.8];
        let mut defects = Vec::new();
        for ratio in [10.0, 100.0, 1000.0] {
            let t = naive_cutoff_polarization(k, 0.05, ratio).map_err(err)?;
            let g = euclidean_gauge_diagnostics(k, &t);
            defects.push(g.longitudinal_defect);
        }
        let p = ModelParams::new(0.05, 1.0).map_err(err)?;
        let causal = polarization(&Momentum2::timelike(1.0, 0.3), &p).map_err(err)?.transversality_defect();
        let min = defects.iter().cloned().fold(f64::INFINITY, f64::min);
        ensure(
            min >= 0.1 && causal <= 1e-10,
            format!("naive defects {defects:.3?}, causal {causal:.1e}"),
        )
    })
}

fn regulators() -> Result<Vec<(String, RegulatorProfile)>, String> {
    let mut v = Vec::new();
    for shape in [Shape::Bump, Shape::FlatTop] {
        for scale in [0.5, 1.0, 10.0] {
            let p = MomentumProfile::new(shape, scale).map_err(err)?;
            v.push((format!("{shape:?}/{scale}"), RegulatorProfile::squared(p)));
        }
    }
    Ok(v)
}

/// 6. D = 4 radial integral and trace proportionality.
pub fn anomaly_coefficient(seed: u64) -> CheckOutcome {
    timed(6, "anomaly-coefficient-4d", 10, || {
        let mut worst_radial: f64 = 0.0;
        for (_, r) in regulators()? {
            let v = radial_integral_4d(&r).map_err(err)?;
            worst_radial = worst_radial.max((v - oracles::radial_4d(r.value(0.0))).abs());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ratios = Vec::new();
        while ratios.len() < 20 {
            let mut f = FieldStrength::zero(4).map_err(err)?;
            for a in 0..4 {
                for b in (a + 1)..4 {
                    f.set(a, b, rng.gen_range(-2.0..2.0)).map_err(err)?;
                }
            }
            let dual = oracles::dual_contraction(|a, b| f.get(a, b));
            if dual.abs() < 0.1 {
                continue;
            }
            ratios.push(trace_factor_4d(&f).map_err(err)? / dual);
        }
        let spread = ratios.iter().map(|r| (r - ratios[0]).abs()).fold(0.0, f64::max);
        let r = &regulators()?[0].1;
        let unit = FieldStrength::from_components(4, &[(0, 1, 1.0), (2, 3, 1.0)]).map_err(err)?;
        let c = anomaly_density(&unit, 1.0, r).map_err(err)?.coefficient;
        let dc = (c * 16.0 * PI * PI - 1.0).abs();
        ensure(
            worst_radial <= 1e-8 && spread <= 1e-12 && dc <= 1e-8,
            format!(
                "radial err {worst_radial:.1e} (6 profiles), tr/(*F·F) = {:.6} spread {spread:.1e}, coeff·16π² - 1 = {dc:.1e}",
                ratios[0]
            ),
        )
    })
}

/// 7. D = 2 radial integral.
pub fn anomaly_2d_independence() -> CheckOutcome {
    timed(7, "anomaly-regulator-2d", 5, || {
        let vals: Vec<f64> = regulators()?
            .iter()
            .map(|(_, r)| radial_integral_2d(r).map_err(err))
            .collect::<Result<_, _>>()?;
        let spread = vals.iter().map(|v| (v - vals[0]).abs()).fold(0.0, f64::max);
        let off = vals.iter().map(|v| (v - oracles::radial_2d(1.0)).abs()).fold(0.0, f64::max);
        ensure(
            spread <= 1e-10 && off <= 1e-8,
            format!("spread {spread:.1e}, max |I - (-1/4π)| = {off:.1e}"),
        )
    })
}

fn random_spinor(g: Grid2, rng: &mut ChaCha8Rng) -> LatticeSpinor {
    let data: Vec<[Complex64; 2]> = (0..g.len())
        .map(|_| [0, 1].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    LatticeSpinor::from_fn(g, |s| data[g.index(s)])
}

fn smooth_field(g: Grid2, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let modes: Vec<[f64; 4]> = (0..4)
        .map(|_| {
            [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0..4) as f64,
                rng.gen_range(0..4) as f64,
                rng.gen_range(0.0..2.0 * PI),
            ]
        })
        .collect();
    (0..g.len())
        .map(|i| {
            let (p, q) = g.site(i);
            let (u, v) = (p as f64 / g.n() as f64, q as f64 / g.n() as f64);
            modes.iter().map(|[c, k0, k1, ph]| c * (2.0 * PI * (k0 * u + k1 * v) + ph).cos()).sum()
        })
        .collect()
}

/// 8. Exact lattice gauge covariance, with a mismatched-difference control.
pub fn smearing_covariance(seed: u64) -> CheckOutcome {
    timed(8, "smearing-gauge-covariance", 60, || {
        let g = Grid2::new(64).map_err(err)?;
        let sm = Smearer::new(g);
        let rho = BumpProfile::new(Shape::Bump, 0.2, vec![0.0, 0.0]).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        let mut control = f64::INFINITY;
        for trial in 0..50 {
            let psi = random_spinor(g, &mut rng);
            let comps = [0, 1].map(|_| (0..g.len()).map(|_| rng.gen_range(-2.0..2.0)).collect());
            let a = LatticeGauge::new(g, comps).map_err(err)?;
            let lambda: Vec<f64> = smooth_field(g, &mut rng).iter().map(|l| 2.0 * l).collect();
            let x = (rng.gen_range(0..64), rng.gen_range(0..64));
            let d = sm.covariance_check(&psi, &a, &lambda, &rho, x, 1.0, Pairing::Forward).map_err(err)?;
            worst = worst.max(d);
            if trial < 3 {
                let c = sm.covariance_check(&psi, &a, &lambda, &rho, x, 1.0, Pairing::Backward).map_err(err)?;
                control = control.min(c);
            }
        }
        ensure(
            worst <= 1e-10 && control > 1e-4,
            format!("max defect {worst:.1e} over 50 triples, mismatched control min {control:.1e}"),
        )
    })
}

/// 9. Bosonization ansatz against the dual-kernel form.
pub fn bosonization(seed: u64) -> CheckOutcome {
    timed(9, "bosonization-reduction", 30, || {
        let g = Grid2::new(64).map_err(err)?;
        let sm = Smearer::new(g);
        let rho = BumpProfile::new(Shape::Bump, 0.15, vec![0.0, 0.0]).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi: Vec<f64> = (0..g.len())
            .map(|i| {
                let (p, q) = g.site(i);
                (2.0 * PI * (3.0 * p as f64 + q as f64) / 64.0).cos()
            })
            .collect();
        let a = LatticeGauge::from_phi(g, phi).map_err(err)?;
        let s = duality_sign().map_err(err)?;
        let psi = random_spinor(g, &mut rng);
        let mut worst: f64 = 0.0;
        let mut flipped = f64::INFINITY;
        for _ in 0..4 {
            let x = (rng.gen_range(0..64), rng.gen_range(0..64));
            worst = worst.max(sm.bosonization_check(&a, &psi, &rho, x, 1.0, s).map_err(err)?.defect);
            flipped = flipped.min(sm.bosonization_check(&a, &psi, &rho, x, 1.0, -s).map_err(err)?.relative());
        }
        ensure(
            worst <= 1e-10 && flipped > 0.1,
            format!("s = {s}, max defect {worst:.1e}, flipped-sign relative defect >= {flipped:.2}"),
        )
    })
}

fn exact_eq(a: &DiracMatrix, b: &DiracMatrix) -> bool {
    a.entries() == b.entries()
}

/// 10. Clifford algebra identities in every basis.
pub fn clifford_identities(seed: u64) -> CheckOutcome {
    timed(10, "clifford-identities", 1, || {
        let mut failures = Vec::new();
        let mut checked = 0;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for d in [2, 4] {
            for rep in [Representation::Dirac, Representation::Chiral] {
                let sig = MetricSignature::minkowski(d).map_err(err)?;
                let b = GammaBasis::new(sig.clone(), rep);
                let id = b.identity();
                let tag = format!("D={d} {rep:?}");
                for mu in 0..d {
                    for nu in 0..d {
                        let ac = b.gamma(mu).map_err(err)?.anticommutator(b.gamma(nu).map_err(err)?);
                        let want = id.scale(Complex64::new(2.0 * sig.g(mu, nu), 0.0));
                        checked += 1;
                        if !exact_eq(&ac, &want) {
                            failures.push(format!("{tag} clifford({mu},{nu})"));
                        }
                    }
                    checked += 1;
                    if !b.gamma5().anticommutator(b.gamma(mu).map_err(err)?).is_zero() {
                        failures.push(format!("{tag} γ5γ{mu}"));
                    }
                }
                let g5 = b.gamma5();
                let (pp, pm) = (b.projector(1), b.projector(-1));
                let checks = [
                    ("γ5²", exact_eq(&(g5 * g5), &id)),
                    ("γ5 hermitian", exact_eq(&g5.adjoint(), g5)),
                    ("P+²", exact_eq(&(&pp * &pp), &pp)),
                    ("P-²", exact_eq(&(&pm * &pm), &pm)),
                    ("P+P-", (&pp * &pm).is_zero()),
                    ("P+ + P-", exact_eq(&(pp.clone() + pm.clone()), &id)),
                ];
                for (name, ok) in checks {
                    checked += 1;
                    if !ok {
                        failures.push(format!("{tag} {name}"));
                    }
                }
                let chi = chirality_commutator_check_in(&b);
                checked += 1;
                if chi.plus_plus != 0.0 || chi.minus_minus != 0.0 {
                    failures.push(format!("{tag} [γ(1±γ5), γ(1±γ5)]"));
                }
                for _ in 0..10 {
                    let m = |rng: &mut ChaCha8Rng| {
                        let rows: Vec<Vec<Complex64>> = (0..b.spinor_dim())
                            .map(|_| {
                                (0..b.spinor_dim())
                                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                                    .collect()
                            })
                            .collect();
                        let refs: Vec<&[Complex64]> = rows.iter().map(|r| r.as_slice()).collect();
                        DiracMatrix::from_rows(&refs)
                    };
                    let (x, y) = (m(&mut rng), m(&mut rng));
                    let ab = trace_product(&[&x, &y]).map_err(err)?;
                    let ba = trace_product(&[&y, &x]).map_err(err)?;
                    checked += 1;
                    if (ab - ba).norm() >= 1e-13 {
                        failures.push(format!("{tag} cyclic trace"));
                    }
                }
                if d == 4 {
                    let p = sigma_epsilon_proportionality(&b, LeviCivita::standard(4).map_err(err)?).map_err(err)?;
                    checked += 1;
                    if p.permutations != 24 || p.max_deviation >= 1e-13 {
                        failures.push(format!("{tag} tr[γ5σσ] ∝ ε"));
                    }
                } else {
                    let r = duality_identity_2d_in(&b, LeviCivita::standard(2).map_err(err)?).map_err(err)?;
                    checked += 1;
                    if r.defect() != 0.0 {
                        failures.push(format!("{tag} duality"));
                    }
                }
            }
        }
        ensure(
            failures.is_empty(),
            if failures.is_empty() {
                format!("{checked} identities exact or below 1e-13 in 4 bases")
            } else {
                format!("failed: {}", failures.join(", "))
            },
        )
    })
}

/// 11. Finite-part pairing against the folded oracle, and BPHZ.
pub fn finite_part_engine(seed: u64) -> CheckOutcome {
    timed(11, "finite-part-engine", 10, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let wr = 2.5;
        let wp = BumpProfile::on_line(Shape::FlatTop, wr, 0.0).map_err(err)?;
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let shape = if rng.gen_bool(0.5) { Shape::Bump } else { Shape::FlatTop };
            let f = BumpProfile::on_line(shape, rng.gen_range(0.3..1.5), rng.gen_range(-0.8..0.8)).map_err(err)?;
            let reach = wr.max(f.center()[0].abs() + f.radius());
            for k in [1u32, 2] {
                let w = TaylorWeight::new(wp.clone(), (k - 1) as usize).map_err(err)?;
                let got = pair_finite_part(PowerSingularity::new(k).map_err(err)?, &f, &w).map_err(err)?;
                let want = oracles::folded_finite_part(k, |x| f.value(x), |x| wp.value(x), reach);
                worst = worst.max((got.value - want).abs());
            }
        }
        let rows = bphz_demo(1.0, 2.0, &[1e2, 1e4, 1e6]).map_err(err)?;
        let last = rows.last().map(|r| r.subtracted).unwrap_or(f64::NAN);
        let dl = (last - oracles::bphz_limit(1.0, 2.0)).abs();
        ensure(
            worst <= 1e-7 && dl <= 1e-6,
            format!("max |pairing - oracle| = {worst:.1e} (20 pairings), BPHZ |Δ| = {dl:.1e}"),
        )
    })
}
