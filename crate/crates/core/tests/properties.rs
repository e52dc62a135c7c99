use std::f64::consts::PI;

use causalreg::anomaly::{anomaly_density, FieldStrength, RegulatorProfile};
use causalreg::causal2d::{polarization, rhat_closed, rhat_quadrature, ModelParams, Momentum2};
use causalreg::clifford::{trace_product, DiracMatrix};
use causalreg::distext::{pair_finite_part, PowerSingularity};
use causalreg::smear2d::{solve_kernel, Grid2};
use causalreg::testfn::{
    BumpProfile, Combination, MomentumProfile, PartitionOfUnity, Shape, Smooth1d, TaylorWeight,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn matrix(dim: usize) -> impl Strategy<Value = DiracMatrix> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), dim * dim).prop_map(move |v| {
        let rows: Vec<Vec<Complex64>> = v.chunks(dim).map(|r| r.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).collect();
        let refs: Vec<&[Complex64]> = rows.iter().map(|r| r.as_slice()).collect();
        DiracMatrix::from_rows(&refs)
    })
}

fn field4() -> impl Strategy<Value = FieldStrength> {
    prop::array::uniform6(-2.0..2.0f64).prop_map(|c| {
        let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let comps: Vec<_> = idx.iter().zip(c).map(|(&(a, b), v)| (a, b, v)).collect();
        FieldStrength::from_components(4, &comps).unwrap()
    })
}

fn add(f: &FieldStrength, g: &FieldStrength, s: f64) -> FieldStrength {
    let mut out = FieldStrength::zero(4).unwrap();
    for a in 0..4 {
        for b in (a + 1)..4 {
            out.set(a, b, f.get(a, b) + s * g.get(a, b)).unwrap();
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_cyclic(a in matrix(4), b in matrix(4), c in matrix(4)) {
        let abc = trace_product(&[&a, &b, &c]).unwrap();
        let bca = trace_product(&[&b, &c, &a]).unwrap();
        prop_assert!((abc - bca).norm() < 1e-13 * abc.norm().max(1.0));
        let ab = trace_product(&[&a, &b]).unwrap();
        let ba = trace_product(&[&b, &a]).unwrap();
        prop_assert!((ab - ba).norm() < 1e-13 * ab.norm().max(1.0));
    }

    #[test]
    fn partition_sums_to_one(spacing in 0.05..1.0f64, overlap in 0.1..0.9f64, t in 0.0..1.0f64, flat in any::<bool>()) {
        let shape = if flat { Shape::FlatTop } else { Shape::Bump };
        let pou = PartitionOfUnity::build((-1.0, 2.0), spacing, overlap, shape).unwrap();
        let x = -1.0 + 3.0 * t;
        prop_assert!((pou.sum(x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bump_vanishes_outside_support(r in 0.1..5.0f64, c in -3.0..3.0f64, d in 0.0..10.0f64) {
        let b = BumpProfile::on_line(Shape::Bump, r, c).unwrap();
        prop_assert_eq!(b.value(c + r + d), 0.0);
        prop_assert_eq!(b.value(c - r - d), 0.0);
        prop_assert_eq!(b.value(c), 1.0);
    }

    #[test]
    fn finite_part_is_linear(a in -2.0..2.0f64, b in -2.0..2.0f64, c1 in -0.5..0.5f64, c2 in -0.5..0.5f64, k in 1u32..=2) {
        let f = BumpProfile::on_line(Shape::Bump, 1.0, c1).unwrap();
        let g = BumpProfile::on_line(Shape::FlatTop, 1.3, c2).unwrap();
        let w = TaylorWeight::new(BumpProfile::on_line(Shape::FlatTop, 2.0, 0.0).unwrap(), (k - 1) as usize).unwrap();
        let s = PowerSingularity::new(k).unwrap();
        let comb = Combination { a, f: f.clone(), b, g: g.clone() };
        let lhs = pair_finite_part(s, &comb, &w).unwrap().value;
        let rhs = a * pair_finite_part(s, &f, &w).unwrap().value + b * pair_finite_part(s, &g, &w).unwrap().value;
        prop_assert!((lhs - rhs).abs() < 1e-8, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn causal_polarization_is_transverse(ksq in 0.1..50.0f64, eta in -3.0..3.0f64, x in 0.0..0.249f64, e in 0.1..3.0f64, past in any::<bool>()) {
        let k = Momentum2::timelike(ksq, eta);
        let k = if past { Momentum2::new(-k.k0, -k.k1) } else { k };
        let p = ModelParams::new((x * ksq).sqrt(), e).unwrap();
        let t = polarization(&k, &p).unwrap();
        prop_assert!(t.transversality_defect() <= 1e-10);
        prop_assert!(t.is_symmetric());
    }

    #[test]
    fn anomaly_is_bilinear(f in field4(), g in field4(), h in field4(), s in -2.0..2.0f64) {
        let p = RegulatorProfile::squared(MomentumProfile::new(Shape::FlatTop, 1.0).unwrap());
        let d = |x: &FieldStrength, y: &FieldStrength| {
            // polarization identity: B(x, y) = (B(x + y) - B(x - y)) / 4
            let plus = anomaly_density(&add(x, y, 1.0), 1.0, &p).unwrap().density;
            let minus = anomaly_density(&add(x, y, -1.0), 1.0, &p).unwrap().density;
            (plus - minus) / 4.0
        };
        let lhs = d(&add(&f, &g, s), &h);
        let rhs = d(&f, &h) + s * d(&g, &h);
        prop_assert!((lhs - rhs).abs() < 1e-10);
        let coeff = anomaly_density(&f, 1.0, &p).unwrap().density / f.dual_contraction();
        if f.dual_contraction().abs() > 1e-3 {
            prop_assert!((coeff * 16.0 * PI * PI - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn kernel_is_antisymmetric(x0 in 0usize..16, x1 in 0usize..16, y0 in 0usize..16, y1 in 0usize..16) {
        let g = Grid2::new(16).unwrap();
        let k = solve_kernel(&g, (x0, x1), (y0, y1));
        let r = solve_kernel(&g, (y0, y1), (x0, x1));
        for (u, v) in k.values().iter().zip(r.values()) {
            prop_assert!((u + v).abs() < 1e-13);
        }
        prop_assert!(k.residual() < 1e-12);
        prop_assert!(k.sum().abs() < 1e-11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dispersion_matches_closed_form(lx in -6.0..(0.24f64).log10(), ksq in 0.5..20.0f64) {
        let msq = 10f64.powf(lx) * ksq;
        let q = rhat_quadrature(ksq, msq).unwrap();
        let c = rhat_closed(ksq, msq).unwrap();
        prop_assert!((q.value - c).norm() <= 1e-6 * c.norm());
    }
}
