//! Cross-module property tests.

use proptest::prelude::*;

use zeta_edge_core::audit::{
    emit_report, parse_report_json, AuditReport, BoundAuditRecord, ReportFormat,
};
use zeta_edge_core::engine::expsum::exp_sum;
use zeta_edge_core::engine::poly::{eval_poly, DirichletPolynomial};
use zeta_edge_core::engine::ComplexPoint;
use zeta_edge_core::regions::{omega_numeric_logx, ZeroFreeRegion};
use zeta_edge_core::weights::{build_weights, WeightConfig};
use zeta_edge_core::zerolab::{count_n, synthesize_zeros};

fn small_poly() -> impl Strategy<Value = DirichletPolynomial> {
    proptest::collection::vec((1u64..64, -4.0f64..4.0), 1..12)
        .prop_map(DirichletPolynomial::from_pairs)
}

proptest! {
    #[test]
    fn eval_poly_is_linear(p in small_poly(), q in small_poly(),
                           sigma in 0.25f64..3.0, t in -50.0f64..50.0) {
        let s = ComplexPoint::new(sigma, t);
        let mut sum = p.clone();
        sum.add_assign(&q);
        let lhs = eval_poly(&sum, s);
        let rhs = eval_poly(&p, s) + eval_poly(&q, s);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn exp_sum_triangle_and_conjugation(n in 1u64..400, t in 0.01f64..1e5) {
        let plus = exp_sum(n, t);
        prop_assert!(plus.value <= n as f64 + 1.0 + 1e-9);
        let minus = exp_sum(n, -t);
        prop_assert_eq!(plus.value.to_bits(), minus.value.to_bits());
    }

    #[test]
    fn weight_magnitudes(u in 1usize..20, gap in 1usize..40, w in 2usize..60) {
        let v = u + gap;
        let table = build_weights(WeightConfig::new(u, v, w, v.max(w)).unwrap()).unwrap();
        for d in 1..=v {
            prop_assert!(table.psi_d[d].abs() <= 1.0 + 1e-12);
        }
        for d in 1..=w {
            prop_assert!(table.theta_d[d].abs() <= 1.0 + 1e-12);
        }
        prop_assert!((table.big_psi[1] - 1.0).abs() < 1e-15);
        prop_assert!((table.big_theta[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn report_json_round_trips(names in proptest::collection::vec("[a-z-]{1,12}", 0..6),
                               values in proptest::collection::vec((0.0f64..1e6, 1e-6f64..1e6), 0..6)) {
        let records: Vec<BoundAuditRecord> = names
            .iter()
            .zip(values.iter())
            .map(|(name, &(computed, bound))| {
                BoundAuditRecord::checked(name.clone(), computed, bound).with_input("k", 1)
            })
            .collect();
        let report = AuditReport {
            toolkit_version: "prop".into(),
            constants_block: Default::default(),
            records,
            timestamp: "unix:0".into(),
        };
        let bytes = emit_report(&report, ReportFormat::Json).unwrap();
        let back = parse_report_json(&bytes).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn omega_minimum_dominates_probes(log_x in 50.0f64..1e5, a0 in 0.005f64..0.5) {
        let region = ZeroFreeRegion::new(a0, 3.0).unwrap();
        let res = omega_numeric_logx(&region, log_x, 1e-10).unwrap();
        let lo = 3f64.ln();
        for k in 0..24 {
            let u = lo + (log_x - lo) * (k as f64 + 0.5) / 24.0;
            let g = region.nu_log(u) * log_x + u;
            prop_assert!(res.omega_numeric <= g + 1e-8 * g.abs());
        }
    }

    #[test]
    fn count_monotone_in_sigma_and_t(entries in proptest::collection::vec((0.501f64..0.999, 0.1f64..1000.0), 1..40)) {
        let mut gammas: Vec<(f64, f64)> = entries;
        gammas.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        gammas.dedup_by(|a, b| (a.1 - b.1).abs() < 1e-9);
        let ds = synthesize_zeros(&gammas).unwrap();
        let t_hi = 1000.0;
        let mut prev = usize::MAX;
        for sigma in [0.5, 0.6, 0.7, 0.8, 0.9] {
            let c = count_n(&ds, sigma, t_hi).unwrap();
            prop_assert!(c <= prev);
            prev = c;
        }
        let mut prev_t = 0;
        for t in [10.0, 100.0, 500.0, 1000.0] {
            let c = count_n(&ds, 0.5, t).unwrap();
            prop_assert!(c >= prev_t);
            prev_t = c;
        }
    }
}
