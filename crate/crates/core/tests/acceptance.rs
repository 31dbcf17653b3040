//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use suc_core::beltrami::residual;
use suc_core::grid::{evaluate_all, scan_points};
use suc_core::map::boundary_consistency;
use suc_core::oracle::{chi_jet_errors, RescaledMap};
use suc_core::step::DEFAULT_QUADRATURE_TOL;
use suc_core::verify::{run, SuiteConfig, SuiteName, SuiteRecord};
use suc_core::{chi_jet, Annulus, LogComplex, Scheme, SchemeKind, SmoothStep};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn step() -> SmoothStep {
    SmoothStep::build(DEFAULT_QUADRATURE_TOL).expect("default step builds")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn suite(kind: SchemeKind, name: SuiteName, edit: impl FnOnce(&mut SuiteConfig)) -> SuiteRecord {
    let mut cfg = SuiteConfig::defaults(kind).with_suites(&[name]);
    edit(&mut cfg);
    let report = run(&cfg).expect("suite runs");
    report.suites.into_iter().next().expect("one record")
}

fn failed_checks(rec: &SuiteRecord) -> String {
    let names: Vec<&str> = rec.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if names.is_empty() {
        "all checks pass".into()
    } else {
        format!("failing: {}", names.join(", "))
    }
}

fn step_constraints() -> Outcome {
    let s = step();
    let v = s.value(0.5);
    let d1 = s.density(0.5);
    let d2 = s.density_derivative(0.5);
    let centre = (v - 0.5).abs() < 1e-10 && (d1 - 2.0).abs() < 1e-10 && d2.abs() < 1e-10;
    let mut flat = true;
    for i in 0..=2500 {
        let x = i as f64 / 10_000.0;
        flat &= s.value(x) == 0.0 && s.value(1.0 - x) == 1.0;
        flat &= s.value(-x - 1.0) == 0.0 && s.value(2.0 + x) == 1.0;
    }
    outcome(
        centre && flat,
        format!("s(1/2) - 1/2 = {:.1e}, s'(1/2) - 2 = {:.1e}, s''(1/2) = {:.1e}, plateaus exact: {flat}", v - 0.5, d1 - 2.0, d2),
    )
}

/// Max relative error of the closed-form cutoff jet against the midpoint
/// values `1/dr`, `1/(2 x dr)`, `-1/(2 x dr)`.
fn midpoint_spot_error(s: &SmoothStep, a: &Annulus) -> f64 {
    let x = a.radius_at(0.5);
    let dr = a.delta_r();
    let j = chi_jet(s, a, LogComplex::from_polar(x.ln(), 0.0)).unwrap();
    let re = |w: LogComplex| w.to_cartesian().0;
    [
        (re(j.d_z), 1.0 / dr),
        (re(j.d_zbar), 1.0 / dr),
        (re(j.d_zzbar), 1.0 / (2.0 * x * dr)),
        (re(j.d_zbarzbar), -1.0 / (2.0 * x * dr)),
        (re(j.d_zz), -1.0 / (2.0 * x * dr)),
    ]
    .into_iter()
    .map(|(got, want)| rel(got, want))
    .fold(0.0, f64::max)
}

fn cutoff_closed_forms() -> Outcome {
    let s = step();
    // The midpoint is not a float. Rounding |z| by eps moves the second
    // derivatives by about |s'''(1/2)| (x/dr)^2 eps relative, so the 1e-10
    // level is checked where x/dr stays moderate.
    let mut spot = 0.0f64;
    let mut annuli = vec![Annulus::new(0.3, 0.5).unwrap(), Annulus::new(1.0, 2.0).unwrap()];
    for (kind, top) in [(SchemeKind::Rosay, 20u64), (SchemeKind::Loglog, 8)] {
        let sch = Scheme::new(kind);
        annuli.extend((2..=top).map(|n| sch.annulus(n).unwrap()));
    }
    for a in &annuli {
        spot = spot.max(midpoint_spot_error(&s, a));
    }
    let loglog = Scheme::new(SchemeKind::Loglog);
    let mut excess = 0.0f64;
    for n in 9..=60 {
        let a = loglog.annulus(n).unwrap();
        let bound = 1111.2 * (a.radius_at(0.5) / a.delta_r()).powi(2) * 4.0 * f64::EPSILON;
        excess = excess.max(midpoint_spot_error(&s, &a) / bound);
    }

    let mut fd = 0.0f64;
    for (kind, top) in [(SchemeKind::Rosay, 20u64), (SchemeKind::Loglog, 60)] {
        let sch = Scheme::new(kind);
        for n in 2..=top {
            for (f, th) in [(0.5, 0.0), (0.4, 1.3), (0.6, -2.2)] {
                let o = RescaledMap::new(&s, &sch, n, f, th).unwrap();
                let e = chi_jet_errors(&s, &o).unwrap();
                fd = fd.max(e.first).max(e.second);
            }
        }
    }
    outcome(
        spot <= 1e-10 && fd <= 1e-6,
        format!(
            "spot values max rel error {spot:.2e} (<= 1e-10; loglog 9..60 within {excess:.2} of the rounding bound), \
             finite differences {fd:.2e} (<= 1e-6)"
        ),
    )
}

fn shared_circles() -> Outcome {
    let s = step();
    let mut worst = [0.0f64; 2];
    for (i, (kind, top)) in [(SchemeKind::Rosay, 40u64), (SchemeKind::Loglog, 120)].into_iter().enumerate() {
        let sch = Scheme::new(kind);
        for n in 2..=top {
            worst[i] = worst[i].max(boundary_consistency(&s, &sch, n, 16).unwrap());
        }
    }
    outcome(
        worst.iter().all(|&w| w <= 1e-10),
        format!("max discrepancy rosay {:.2e}, loglog {:.2e} (<= 1e-10)", worst[0], worst[1]),
    )
}

fn beltrami_identity() -> Outcome {
    let s = step();
    let mut res = 0.0f64;
    let mut frob = 0.0f64;
    let mut count = 0usize;
    for kind in [SchemeKind::Rosay, SchemeKind::Loglog] {
        let cfg = SuiteConfig::defaults(kind);
        let sch = Scheme::new(kind);
        let pts = scan_points(&sch, cfg.n_min, cfg.n_max, cfg.angle_samples).unwrap();
        for smp in evaluate_all(&s, &sch, &pts).unwrap() {
            count += 1;
            for r in residual(&smp.jet, &smp.q) {
                res = res.max(r);
            }
            let want = smp.jet.log_norm_sq_zbar() - smp.jet.log_norm_sq_z();
            let got = smp.q.log_frobenius_sq;
            if !(want == f64::NEG_INFINITY && got == f64::NEG_INFINITY) {
                frob = frob.max((got - want).exp_m1().abs());
            }
        }
    }
    outcome(
        res <= 1e-10 && frob <= 1e-10,
        format!("{count} points: residual {res:.2e}, Frobenius identity {frob:.2e} (<= 1e-10)"),
    )
}

fn smoothness() -> Outcome {
    let r = suite(SchemeKind::Rosay, SuiteName::Smoothness, |c| {
        c.n_min = 1;
        c.n_max = 60;
        c.smooth_k_max = 5;
    });
    let l = suite(SchemeKind::Loglog, SuiteName::Smoothness, |c| {
        c.n_min = 4;
        c.n_max = 120;
        c.smooth_k_max = 5;
    });
    let n0 = |rec: &SuiteRecord| rec.constants[&"n0_k5".to_string()];
    outcome(
        r.passed() && l.passed(),
        format!(
            "rosay [1,60]: {} (n0 at k=5: {}), loglog [4,120]: {} (n0 at k=5: {}, hypothesis sup {:.4})",
            failed_checks(&r),
            n0(&r),
            failed_checks(&l),
            n0(&l),
            l.constants["hypothesis_ratio_sup"]
        ),
    )
}

fn ratio_bounds() -> Outcome {
    let r = suite(SchemeKind::Rosay, SuiteName::Ratio, |_| {});
    let l = suite(SchemeKind::Loglog, SuiteName::Ratio, |_| {});
    outcome(
        r.passed() && l.passed(),
        format!(
            "rosay C1 = {:.4} (last/first half {:.3}), loglog C5 = {:.4} (last/first half {:.3}), C4 = {:.4}",
            r.constants["C1"],
            r.find_check("C1_last_half_within_margin").unwrap().measured,
            l.constants["C5"],
            l.find_check("C5_last_half_within_margin").unwrap().measured,
            l.constants["C4"],
        ),
    )
}

fn flatness() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for kind in [SchemeKind::Rosay, SchemeKind::Loglog] {
        let rec = suite(kind, SuiteName::Flatness, |c| c.k_max = 10);
        let group = |prefix: &str| {
            rec.checks
                .iter()
                .filter(|c| c.name.starts_with(prefix))
                .all(|c| c.passed)
        };
        let u = group("u_");
        let q = group("q");
        let worst_q = rec
            .checks
            .iter()
            .filter(|c| c.name.starts_with('q'))
            .map(|c| c.measured)
            .fold(f64::NEG_INFINITY, f64::max);
        ok &= rec.passed();
        parts.push(format!(
            "{kind}: u {}, q {} (largest final log|z|^-k|q_ij| {worst_q:.2}, limit ln 1e-30 = {:.2})",
            if u { "pass" } else { "fail" },
            if q { "pass" } else { "fail" },
            1e-30f64.ln()
        ));
    }
    outcome(ok, parts.join("; "))
}

fn lipschitz_failure() -> Outcome {
    let rec = suite(SchemeKind::Loglog, SuiteName::Q22growth, |c| {
        c.n_min = 12;
        c.n_max = 200;
    });
    let growth = rec.find_check("y_final_over_midpoint").unwrap();
    outcome(
        rec.passed(),
        format!(
            "{}; y increasing on last half: {}, y_final/y_mid = {:.3} (>= 2), c = {:.4}, t3 dominates from n = {}",
            failed_checks(&rec),
            rec.find_check("y_increasing_last_half").unwrap().passed,
            growth.measured,
            rec.constants["c"],
            rec.constants["dominance_threshold_n"],
        ),
    )
}

fn oracle_agreement() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in [SchemeKind::Rosay, SchemeKind::Loglog] {
        let rec = suite(kind, SuiteName::Fdoracle, |_| {});
        ok &= rec.passed();
        let c = |k: &str| rec.constants[&format!("max_error_{k}")];
        parts.push(format!(
            "{kind} n <= {}: first {:.1e}, second {:.1e}, dq22 {:.1e}",
            rec.constants["n_max_checked"],
            c("u_first").max(c("chi_first")),
            c("u_second").max(c("chi_second")),
            c("dq22")
        ));
    }
    outcome(ok, parts.join("; "))
}

fn determinism() -> Outcome {
    let mut same = true;
    let mut bytes = 0;
    for kind in [SchemeKind::Rosay, SchemeKind::Loglog] {
        let cfg = SuiteConfig::defaults(kind);
        let a = run(&cfg).unwrap().to_json();
        let b = run(&cfg).unwrap().to_json();
        same &= a == b;
        bytes += a.len();
    }
    outcome(same, format!("two runs per scheme byte-identical: {same} ({bytes} bytes)"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("step constraints", Duration::from_secs(1), step_constraints),
        ("cutoff closed forms", Duration::from_secs(10), cutoff_closed_forms),
        ("boundary consistency", Duration::from_secs(10), shared_circles),
        ("Beltrami identity", Duration::from_secs(10), beltrami_identity),
        ("smoothness criterion", Duration::from_secs(1), smoothness),
        ("ratio bounds", Duration::from_secs(30), ratio_bounds),
        ("flatness", Duration::from_secs(30), flatness),
        ("Lipschitz failure", Duration::from_secs(30), lipschitz_failure),
        ("oracle agreement", Duration::from_secs(30), oracle_agreement),
        ("determinism", Duration::from_secs(60), determinism),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        let took = t.elapsed();
        let in_time = took <= *budget;
        let passed = o.passed && in_time;
        if !passed {
            failures += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {} [{:.2}s of {}s]",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
