use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_causalreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn csv_rows(args: &[&str]) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().clone();
    let rows = r.records().collect::<Result<Vec<_>, _>>().unwrap();
    (header, rows)
}

#[test]
fn boson_mass_is_e_squared_over_pi() {
    let v = json(&["schwinger", "mass", "--e", "1"]);
    let m2 = v["boson_mass_squared"].as_f64().unwrap();
    assert!((m2 - 1.0 / std::f64::consts::PI).abs() < 1e-6, "{m2}");
    let v = json(&["schwinger", "mass", "--e", "2"]);
    let m2 = v["boson_mass_squared"].as_f64().unwrap();
    assert!((m2 - 4.0 / std::f64::consts::PI).abs() < 4e-6, "{m2}");
}

#[test]
fn anomaly_density_ignores_regulator_shape() {
    for dim in ["2", "4"] {
        let f = if dim == "2" { "01=0.7" } else { "01=1,23=0.5,02=0.3" };
        let a = json(&["anomaly", "--dim", dim, "--profile", "bump", "--F", f]);
        let b = json(&["anomaly", "--dim", dim, "--profile", "flattop", "--F", f, "--scale", "3"]);
        let (da, db) = (a["density"].as_f64().unwrap(), b["density"].as_f64().unwrap());
        assert!((da - db).abs() < 1e-8, "{dim}: {da} vs {db}");
    }
}

#[test]
fn rhat_curve_quadrature_column_matches() {
    let (header, rows) = csv_rows(&["schwinger", "rhat", "--points", "6", "--quadrature"]);
    assert_eq!(&header[0], "msq");
    assert_eq!(rows.len(), 6);
    for r in rows {
        let f = |i: usize| r[i].parse::<f64>().unwrap();
        let scale = f(1).hypot(f(2));
        assert!((f(1) - f(4)).abs() < 1e-8 * scale && (f(2) - f(5)).abs() < 1e-8 * scale);
    }
}

#[test]
fn clifford_identities_all_exact() {
    let (_, rows) = csv_rows(&["clifford"]);
    assert!(rows.len() > 40);
    for r in rows {
        assert!(r[2].parse::<f64>().unwrap() < 1e-12, "{r:?}");
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = run(&["verify", "--suite", "1,2,3,10", "--seed", "7"]);
    let b = run(&["verify", "--suite", "1,2,3,10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 4);
}

#[test]
fn smear_output_is_deterministic() {
    let args = ["smear", "covariance", "--n", "16", "--radius", "0.2", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let v = json(&args);
    assert!(v["defect"].as_f64().unwrap() < 1e-12);
    let v = json(&["smear", "covariance", "--n", "16", "--radius", "0.2", "--seed", "3", "--pairing", "backward"]);
    assert!(v["defect"].as_f64().unwrap() > 1e-6);
}

#[test]
fn usage_errors_exit_two_and_name_flag() {
    for (args, flag) in [
        (&["schwinger", "rhat", "--max", "0.3"][..], "--max"),
        (&["anomaly", "--dim", "2", "--F", "23=1"][..], "--F"),
        (&["smear", "covariance", "--n", "16", "--radius", "5"][..], "--radius"),
        (&["verify", "--suite", "0"][..], "--suite"),
        (&["smear", "covariance", "--n", "12"][..], "--n"),
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn format_flag_switches_between_csv_and_json() {
    let v = json(&["schwinger", "rhat", "--points", "3", "--format", "json"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[0]["im"].as_f64().is_some());

    let (header, rows) = csv_rows(&["schwinger", "mass", "--format", "csv"]);
    assert_eq!(rows.len(), 1);
    let col = header.iter().position(|h| h == "boson_mass_squared").unwrap();
    assert!((rows[0][col].parse::<f64>().unwrap() - 1.0 / std::f64::consts::PI).abs() < 1e-6);

    let (header, _) = csv_rows(&["schwinger", "oracle", "--format", "csv"]);
    assert!(header.iter().any(|h| h == "tensor.1.1"));
}

#[test]
fn full_precision_numbers_round_trip() {
    let v = json(&["anomaly", "--dim", "4"]);
    let c = v["coefficient"].as_f64().unwrap();
    assert!((c * 16.0 * std::f64::consts::PI.powi(2) - 1.0).abs() < 1e-12);
}
