use std::f64::consts::PI;
use std::io::{self, Write};

use causalreg::anomaly::{anomaly_density, FieldStrength, RegulatorProfile};
use causalreg::causal2d::{
    boson_mass_squared, dhat, euclidean_gauge_diagnostics, naive_cutoff_polarization, phat_extrapolated, rhat_closed,
    rhat_quadrature, rhat_spacelike, Momentum2,
};
use causalreg::clifford::{
    chirality_commutator_check_in, duality_identity_2d_in, sigma_epsilon_proportionality, trace_gamma5_sigma01,
    trace_product, GammaBasis, LeviCivita, MetricSignature, Representation,
};
use causalreg::distext::{bphz_demo, pair_finite_part, PowerSingularity};
use causalreg::smear2d::{duality_sign, Grid2, LatticeGauge, LatticeSpinor, Pairing, Smearer};
use causalreg::testfn::{BumpProfile, MomentumProfile, Shape, Smooth1d, TaylorWeight};
use causalreg::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::{AnomalyArgs, CliError, CliffordCheck, DistextOp, Format, PairingArg, SchwingerOp, SmearOp};

type Result<T> = std::result::Result<T, CliError>;

fn usage(flag: &'static str, reason: impl ToString) -> CliError {
    CliError::Usage {
        flag,
        reason: reason.to_string(),
    }
}

/// Writes records as CSV or JSON. `format: None` uses each command's natural
/// format: JSON for single records, CSV for tables.
pub struct Emitter {
    pub format: Option<Format>,
}

impl Emitter {
    pub fn record<T: Serialize>(&self, v: &T) -> Result<()> {
        match self.format.unwrap_or(Format::Json) {
            Format::Json => write_json(&serde_json::to_value(v)?),
            Format::Csv => write_csv(&[serde_json::to_value(v)?]),
        }
    }

    pub fn table<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        let rows = rows.iter().map(serde_json::to_value).collect::<serde_json::Result<Vec<_>>>()?;
        match self.format.unwrap_or(Format::Csv) {
            Format::Json => write_json(&Value::Array(rows)),
            Format::Csv => write_csv(&rows),
        }
    }
}

fn write_json(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Nested arrays and objects become dotted columns: `tensor.0.1`.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn write_csv(rows: &[Value]) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for (i, row) in rows.iter().enumerate() {
        let mut cells = Vec::new();
        flatten("", row, &mut cells);
        if i == 0 {
            w.write_record(cells.iter().map(|(k, _)| k))?;
        }
        w.write_record(cells.iter().map(|(_, v)| v))?;
    }
    w.flush()?;
    Ok(())
}

fn complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

#[derive(Serialize)]
struct IdentityRow {
    basis: String,
    identity: &'static str,
    defect: f64,
    note: String,
}

pub fn clifford(out: &Emitter, check: CliffordCheck) -> Result<()> {
    let want = |c: CliffordCheck| check == CliffordCheck::All || check == c;
    let mut rows = Vec::new();
    for d in [2, 4] {
        for rep in [Representation::Dirac, Representation::Chiral] {
            let sig = MetricSignature::minkowski(d)?;
            let b = GammaBasis::new(sig.clone(), rep);
            let basis = format!("D{d}-{rep:?}");
            let id = b.identity();
            let g5 = b.gamma5();
            let mut push = |identity, defect, note: String| {
                rows.push(IdentityRow {
                    basis: basis.clone(),
                    identity,
                    defect,
                    note,
                })
            };
            if want(CliffordCheck::Clifford) {
                let mut worst: f64 = 0.0;
                for mu in 0..d {
                    for nu in 0..d {
                        let ac = b.gamma(mu)?.anticommutator(b.gamma(nu)?);
                        worst = worst.max((ac - id.scale(Complex64::new(2.0 * sig.g(mu, nu), 0.0))).max_norm());
                    }
                }
                push("{γ^μ,γ^ν} = 2g^μν", worst, String::new());
            }
            if want(CliffordCheck::Gamma5) {
                let mut anti: f64 = 0.0;
                for mu in 0..d {
                    anti = anti.max(g5.anticommutator(b.gamma(mu)?).max_norm());
                }
                push("γ5² = 1", ((g5 * g5) - id.clone()).max_norm(), String::new());
                push("{γ5,γ^μ} = 0", anti, String::new());
                push("γ5 hermitian", (g5.adjoint() - g5.clone()).max_norm(), String::new());
            }
            if want(CliffordCheck::Projectors) {
                let (p, m) = (b.projector(1), b.projector(-1));
                push("P+² = P+", ((&p * &p) - p.clone()).max_norm(), String::new());
                push("P-² = P-", ((&m * &m) - m.clone()).max_norm(), String::new());
                push("P+P- = 0", (&p * &m).max_norm(), String::new());
                push("P+ + P- = 1", (p + m - id.clone()).max_norm(), String::new());
            }
            if want(CliffordCheck::Chirality) {
                let r = chirality_commutator_check_in(&b);
                push("[γ^μ(1+γ5),γ^ν(1+γ5)] = 0", r.plus_plus, String::new());
                push("[γ^μ(1-γ5),γ^ν(1-γ5)] = 0", r.minus_minus, String::new());
            }
            if want(CliffordCheck::Traces) {
                let mut worst: f64 = 0.0;
                for mu in 0..d {
                    for nu in 0..d {
                        let t = trace_product(&[b.gamma(mu)?, b.gamma(nu)?])?;
                        worst = worst.max((t - Complex64::new(b.spinor_dim() as f64 * sig.g(mu, nu), 0.0)).norm());
                    }
                }
                push("tr[γ^μγ^ν] = tr[1] g^μν", worst, String::new());
                push("tr[γ5] = 0", g5.trace().norm(), String::new());
                if d == 2 {
                    push("tr[γ5 σ^01]", 0.0, complex(trace_gamma5_sigma01(&b)?));
                }
            }
            if want(CliffordCheck::Duality) && d == 2 {
                let r = duality_identity_2d_in(&b, LeviCivita::standard(2)?)?;
                push("γ^μ ε_μν = s γ5 γ_ν", r.defect(), format!("s={}", r.sign));
            }
            if want(CliffordCheck::Epsilon) && d == 4 {
                let r = sigma_epsilon_proportionality(&b, LeviCivita::standard(4)?)?;
                push(
                    "tr[γ5 σ^μν σ^ρσ] = c ε^μνρσ",
                    r.max_deviation,
                    format!("c={}", complex(r.constant)),
                );
            }
        }
    }
    out.table(&rows)
}

pub fn testfn(out: &Emitter, shape: Shape, radius: f64, center: f64, sample: usize) -> Result<()> {
    if sample < 2 {
        return Err(usage("--sample", "need at least 2 points"));
    }
    let b = BumpProfile::on_line(shape, radius, center)?;
    #[derive(Serialize)]
    struct Row {
        x: f64,
        f: f64,
        df: f64,
        d2f: f64,
    }
    let rows: Vec<Row> = (0..sample)
        .map(|i| {
            let x = center - radius + 2.0 * radius * i as f64 / (sample - 1) as f64;
            let j = b.jet(x);
            Row {
                x,
                f: j.value(),
                df: j.derivative(1),
                d2f: j.derivative(2),
            }
        })
        .collect();
    out.table(&rows)
}

pub fn distext(out: &Emitter, op: DistextOp) -> Result<()> {
    match op {
        DistextOp::Pair {
            k,
            order,
            shape,
            radius,
            center,
            weight_shape,
            weight_radius,
        } => {
            let s = PowerSingularity::new(k).map_err(|e| usage("--k", e))?;
            let order = order.unwrap_or(s.singular_order());
            let f = BumpProfile::on_line(shape, radius, center)?;
            let wr = weight_radius.unwrap_or(2.0 * radius);
            let w = BumpProfile::on_line(weight_shape, wr, 0.0)?;
            let w = TaylorWeight::new(w, order).map_err(|e| match e {
                Error::UnsupportedOrder(_) => usage("--order", e),
                _ => usage("--weight-shape", e),
            })?;
            let r = pair_finite_part(s, &f, &w)?;
            #[derive(Serialize)]
            struct Out {
                value: f64,
                error: f64,
                order: usize,
                singular_order: usize,
            }
            out.record(&Out {
                value: r.value,
                error: r.quadrature_error,
                order: r.subtraction_order_used,
                singular_order: s.singular_order(),
            })
        }
        DistextOp::Bphz { m, mu, cutoffs } => {
            out.table(&bphz_demo(m, mu, &cutoffs)?)
        }
    }
}

pub fn schwinger(out: &Emitter, op: SchwingerOp) -> Result<()> {
    match op {
        SchwingerOp::Rhat {
            ksq,
            min,
            max,
            points,
            quadrature,
        } => {
            if max >= 0.25 {
                return Err(usage("--max", "m²/k² must stay below the threshold 1/4"));
            }
            if min > max {
                return Err(usage("--min", "must not exceed --max"));
            }
            if points == 0 {
                return Err(usage("--points", "must be at least 1"));
            }
            #[derive(Serialize)]
            struct Row {
                msq: f64,
                re: f64,
                im: f64,
                dist_massless: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                quad_re: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                quad_im: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                quad_error: Option<f64>,
            }
            let (lo, hi) = (min.ln(), max.ln());
            let mut rows = Vec::with_capacity(points);
            for i in 0..points {
                let t = if points == 1 { 0.0 } else { i as f64 / (points - 1) as f64 };
                let msq = (lo + (hi - lo) * t).exp() * ksq;
                let r = rhat_closed(ksq, msq)?;
                let q = if quadrature { Some(rhat_quadrature(ksq, msq)?) } else { None };
                rows.push(Row {
                    msq,
                    re: r.re,
                    im: r.im,
                    dist_massless: (r - Complex64::new(0.0, 1.0 / PI)).norm(),
                    quad_re: q.as_ref().map(|q| q.value.re),
                    quad_im: q.as_ref().map(|q| q.value.im),
                    quad_error: q.as_ref().map(|q| q.quadrature_error),
                });
            }
            out.table(&rows)
        }
        SchwingerOp::Mass { e } => out.record(&boson_mass_squared(e)?),
        SchwingerOp::GaugeCheck { k0, k1, m, cutoffs } => {
            let k = [k0, k1];
            let ksq = k0 * k0 + k1 * k1;
            if ksq == 0.0 {
                return Err(usage("--k0", "momentum must be nonzero"));
            }
            let coef = rhat_spacelike(-ksq, m * m)?.im;
            let causal = [0, 1].map(|a| [0, 1].map(|b| coef * ((a == b) as u8 as f64 - k[a] * k[b] / ksq)));
            let causal_diag = euclidean_gauge_diagnostics(k, &causal);
            #[derive(Serialize)]
            struct Row {
                cutoff: f64,
                longitudinal_defect: f64,
                transverse: f64,
                longitudinal: f64,
                transverse_minus_surface: f64,
                causal_transverse: f64,
                causal_defect: f64,
            }
            let rows = cutoffs
                .into_iter()
                .map(|c| {
                    let g = euclidean_gauge_diagnostics(k, &naive_cutoff_polarization(k, m, c)?);
                    Ok(Row {
                        cutoff: c,
                        longitudinal_defect: g.longitudinal_defect,
                        transverse: g.transverse,
                        longitudinal: g.longitudinal,
                        transverse_minus_surface: g.transverse_without_surface_term(),
                        causal_transverse: coef,
                        causal_defect: causal_diag.longitudinal_defect,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.table(&rows)
        }
        SchwingerOp::Oracle { ksq, eta, m, width } => {
            if ksq <= 4.0 * m * m {
                return Err(usage("--ksq", "must exceed the threshold 4m²"));
            }
            let k = Momentum2::timelike(ksq, eta);
            let width = width.unwrap_or(0.02 * (ksq / 4.0 - m * m));
            let est = phat_extrapolated(&k, m, width)?;
            let target = ksq * dhat(&k, m)?;
            #[derive(Serialize)]
            struct Out {
                k0: f64,
                k1: f64,
                m: f64,
                coefficient: f64,
                target: f64,
                relative_deviation: f64,
                extrapolation_change: f64,
                tensor: [[f64; 2]; 2],
                widths: Vec<f64>,
                raw_coefficients: Vec<f64>,
            }
            out.record(&Out {
                k0: k.k0,
                k1: k.k1,
                m,
                coefficient: est.coefficient,
                target,
                relative_deviation: (est.coefficient - target).abs() / target.abs(),
                extrapolation_change: est.extrapolation_change,
                tensor: est.tensor,
                widths: est.samples.iter().map(|s| s.width).collect(),
                raw_coefficients: est.samples.iter().map(|s| s.tensor[0][0] - s.tensor[1][1]).collect(),
            })
        }
    }
}

pub fn anomaly(out: &Emitter, a: AnomalyArgs) -> Result<()> {
    let dim: usize = a.dim.parse().map_err(|_| usage("--dim", "must be 2 or 4"))?;
    if let Some(&(i, j, _)) = a.f.iter().find(|(i, j, _)| *i >= dim || *j >= dim) {
        return Err(usage("--F", format!("index pair {i}{j} out of range for dimension {dim}")));
    }
    let f = FieldStrength::from_components(dim, &a.f).map_err(|e| usage("--F", e))?;
    let profile = RegulatorProfile::squared(MomentumProfile::new(a.profile, a.scale)?);
    let r = anomaly_density(&f, a.e, &profile)?;
    #[derive(Serialize)]
    struct Out {
        dim: usize,
        profile: String,
        scale: f64,
        e: f64,
        radial_integral: f64,
        trace_factor: f64,
        density: f64,
        coefficient: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        dual_contraction: Option<f64>,
    }
    out.record(&Out {
        dim,
        profile: format!("{:?}", a.profile).to_lowercase(),
        scale: a.scale,
        e: a.e,
        radial_integral: r.radial_integral,
        trace_factor: r.trace_factor,
        density: r.density,
        coefficient: r.coefficient,
        dual_contraction: (dim == 4).then(|| f.dual_contraction()),
    })
}

fn random_spinor(g: Grid2, rng: &mut ChaCha8Rng) -> LatticeSpinor {
    let data: Vec<[Complex64; 2]> = (0..g.len())
        .map(|_| [0, 1].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    LatticeSpinor::from_fn(g, |s| data[g.index(s)])
}

fn rho(g: &Grid2, radius: f64) -> Result<BumpProfile> {
    let min = 2.0 * g.a();
    let max = g.n() as f64 * g.a() / 4.0;
    if !(min..=max).contains(&radius) {
        return Err(usage("--radius", format!("must lie in [{min}, {max}] for this grid")));
    }
    Ok(BumpProfile::new(Shape::Bump, radius, vec![0.0, 0.0])?)
}

pub fn smear(out: &Emitter, op: SmearOp) -> Result<()> {
    match op {
        SmearOp::Covariance {
            n,
            seed,
            radius,
            e,
            pairing,
        } => {
            let g = Grid2::new(n)?;
            let r = rho(&g, radius)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = random_spinor(g, &mut rng);
            let comps = [0, 1].map(|_| (0..g.len()).map(|_| rng.gen_range(-2.0..2.0)).collect());
            let a = LatticeGauge::new(g, comps)?;
            let modes: Vec<[f64; 4]> = (0..4)
                .map(|_| {
                    [
                        rng.gen_range(-2.0..2.0),
                        rng.gen_range(0..4) as f64,
                        rng.gen_range(0..4) as f64,
                        rng.gen_range(0.0..2.0 * PI),
                    ]
                })
                .collect();
            let lambda: Vec<f64> = (0..g.len())
                .map(|i| {
                    let (p, q) = g.site(i);
                    let (u, v) = (p as f64 / n as f64, q as f64 / n as f64);
                    modes.iter().map(|[c, k0, k1, ph]| c * (2.0 * PI * (k0 * u + k1 * v) + ph).cos()).sum()
                })
                .collect();
            let x = (rng.gen_range(0..n), rng.gen_range(0..n));
            let pairing = match pairing {
                PairingArg::Forward => Pairing::Forward,
                PairingArg::Backward => Pairing::Backward,
            };
            let defect = Smearer::new(g).covariance_check(&psi, &a, &lambda, &r, x, e, pairing)?;
            #[derive(Serialize)]
            struct Out {
                defect: f64,
                n: usize,
                radius: f64,
                seed: u64,
                site: [usize; 2],
                pairing: Pairing,
            }
            out.record(&Out {
                defect,
                n,
                radius,
                seed,
                site: [x.0, x.1],
                pairing,
            })
        }
        SmearOp::Bosonization {
            n,
            mode,
            amplitude,
            radius,
            e,
            seed,
            flip_sign,
        } => {
            let g = Grid2::new(n)?;
            let r = rho(&g, radius)?;
            let phi: Vec<f64> = (0..g.len())
                .map(|i| {
                    let (p, q) = g.site(i);
                    let arg = 2.0 * PI * (mode.0 as f64 * p as f64 + mode.1 as f64 * q as f64) / n as f64;
                    amplitude * arg.cos()
                })
                .collect();
            let a = LatticeGauge::from_phi(g, phi)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = random_spinor(g, &mut rng);
            let x = (rng.gen_range(0..n), rng.gen_range(0..n));
            let s = duality_sign()?;
            let s = if flip_sign { -s } else { s };
            let rep = Smearer::new(g).bosonization_check(&a, &psi, &r, x, e, s)?;
            #[derive(Serialize)]
            struct Out {
                defect: f64,
                relative_defect: f64,
                sign_s: i32,
                n: usize,
                mode: [i64; 2],
                site: [usize; 2],
            }
            out.record(&Out {
                defect: rep.defect,
                relative_defect: rep.relative(),
                sign_s: rep.sign_s,
                n,
                mode: [mode.0, mode.1],
                site: [x.0, x.1],
            })
        }
    }
}

pub fn verify(out: &Emitter, suite: &str, seed: u64, timings: bool) -> Result<()> {
    let ids: Vec<u8> = if suite == "all" {
        (1..=causalreg_verify::CRITERIA).collect()
    } else {
        suite
            .split(',')
            .map(|s| match s.trim().parse::<u8>() {
                Ok(i) if (1..=causalreg_verify::CRITERIA).contains(&i) => Ok(i),
                _ => Err(usage("--suite", format!("expected `all` or criterion numbers 1-11, got {s}"))),
            })
            .collect::<Result<_>>()?
    };
    let outcomes: Vec<_> = ids
        .iter()
        .map(|id| causalreg_verify::run_one(*id, seed).expect("validated id"))
        .collect();
    let failed = outcomes.iter().filter(|o| !o.ok()).count();
    if let Some(format) = out.format {
        #[derive(Serialize)]
        struct Row<'a> {
            id: u8,
            name: &'a str,
            passed: bool,
            detail: &'a str,
        }
        let rows: Vec<Row> = outcomes
            .iter()
            .map(|o| Row {
                id: o.id,
                name: o.name,
                passed: o.ok(),
                detail: &o.detail,
            })
            .collect();
        Emitter { format: Some(format) }.table(&rows)?;
    } else {
        let mut w = io::stdout().lock();
        for o in &outcomes {
            if timings {
                writeln!(w, "{o}")?;
            } else {
                writeln!(w, "{}", o.line())?;
            }
        }
        writeln!(w, "{} of {} passed", ids.len() - failed, ids.len())?;
    }
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}

