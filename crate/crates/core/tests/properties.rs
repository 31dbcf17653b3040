use proptest::prelude::*;
use suc_core::beltrami::residual;
use suc_core::map::u_jet_in;
use suc_core::step::DEFAULT_QUADRATURE_TOL;
use suc_core::verify::run;
use suc_core::{q_matrix, LogComplex, Scheme, SchemeKind, SmoothStep, SuiteConfig, SuiteName};

fn step() -> &'static SmoothStep {
    use std::sync::OnceLock;
    static STEP: OnceLock<SmoothStep> = OnceLock::new();
    STEP.get_or_init(|| SmoothStep::build(DEFAULT_QUADRATURE_TOL).unwrap())
}

fn kind() -> impl Strategy<Value = SchemeKind> {
    prop_oneof![Just(SchemeKind::Rosay), Just(SchemeKind::Loglog)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn beltrami_residual_and_frobenius(kind in kind(), n in 1u64..150, f in 0.0f64..=1.0, angle in -3.2f64..3.2) {
        let scheme = Scheme::new(kind);
        let annulus = scheme.annulus(n).unwrap();
        let z = LogComplex::from_polar(annulus.radius_at(f).ln(), angle);
        let jet = u_jet_in(step(), &scheme, n, z).unwrap();
        let q = q_matrix(&jet);
        for r in residual(&jet, &q) {
            prop_assert!(r < 1e-10, "residual {r}");
        }
        // The monomial component is holomorphic, so its row of Q vanishes.
        let zero_row = if n % 2 == 0 { 0 } else { 1 };
        prop_assert!(q.q[zero_row].iter().all(|e| e.is_zero()));
        let expect = jet.log_norm_sq_zbar() - jet.log_norm_sq_z();
        if expect == f64::NEG_INFINITY {
            prop_assert_eq!(q.log_frobenius_sq, f64::NEG_INFINITY);
        } else {
            prop_assert!((q.log_frobenius_sq - expect).abs() < 1e-10 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn step_is_monotone_and_bounded(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let s = step();
        prop_assert!(s.value(lo) <= s.value(hi));
        prop_assert!((0.0..=1.0).contains(&s.value(lo)));
    }

    #[test]
    fn radii_interleave(kind in kind(), n in 1u64..10_000) {
        let scheme = Scheme::new(kind);
        // Dyadic radii leave binary64 range long before 10^4.
        let n = if kind == SchemeKind::Rosay { n % 999 + 1 } else { n };
        prop_assert!(scheme.radius(n + 1).unwrap() < scheme.radius(n).unwrap());
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    if a == b || (a.is_nan() && b.is_nan()) {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

#[test]
fn fitted_constants_stable_under_angle_doubling() {
    let cases = [
        (SchemeKind::Rosay, vec![SuiteName::Ratio, SuiteName::Flatness]),
        (SchemeKind::Loglog, vec![SuiteName::Ratio, SuiteName::Flatness, SuiteName::Q22growth]),
    ];
    for (kind, suites) in cases {
        let base = SuiteConfig::defaults(kind).with_suites(&suites);
        let mut doubled = base.clone();
        doubled.angle_samples *= 2;
        let (a, b) = (run(&base).unwrap(), run(&doubled).unwrap());
        for (sa, sb) in a.suites.iter().zip(&b.suites) {
            assert_eq!(sa.constants.keys().collect::<Vec<_>>(), sb.constants.keys().collect::<Vec<_>>());
            for (name, &va) in &sa.constants {
                let vb = sb.constants[name];
                let gap = relative_gap(va, vb);
                assert!(gap <= 0.05, "{kind} {}: {name} {va} vs {vb}", sa.name);
            }
        }
    }
}

#[test]
fn reports_are_deterministic_and_complete() {
    let cfg = SuiteConfig::defaults(SchemeKind::Rosay)
        .with_suites(&[SuiteName::Ratio, SuiteName::Smoothness, SuiteName::Calclemma]);
    let a = run(&cfg).unwrap();
    assert_eq!(a.to_json(), run(&cfg).unwrap().to_json());
    let names: Vec<_> = a.suites.iter().map(|s| s.name).collect();
    assert_eq!(names, cfg.suites);
}
