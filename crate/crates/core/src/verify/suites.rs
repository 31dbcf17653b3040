use std::f64::consts::LN_2;

use rayon::prelude::*;

use super::trend::{decreasing_from, half_split, strictly_increasing, sup};
use super::{Check, SuiteConfig, SuiteName, SuiteRecord};
use crate::beltrami::{midpoint, term_dominance};
use crate::error::Result;
use crate::grid::{annulus_points, evaluate_all, scan_points, Sample, INTERIOR_FRACTIONS};
use crate::oracle::{chi_jet_errors, dq22_error, merged, u_jet_errors, OracleErrors, RescaledMap};
use crate::scheme::{Scheme, SchemeKind};
use crate::step::SmoothStep;

/// Indices beyond the configured range at which the calculus-lemma sequence
/// is also tabulated.
pub const CALCLEMMA_TAIL: [u64; 8] = [
    1_000,
    10_000,
    100_000,
    1_000_000,
    10_000_000,
    100_000_000,
    1_000_000_000,
    10_000_000_000,
];

/// The calculus-lemma sequence must end below this value.
pub const CALCLEMMA_TAIL_LIMIT: f64 = 0.1;

fn samples(step: &SmoothStep, scheme: &Scheme, cfg: &SuiteConfig) -> Result<Vec<Sample>> {
    let points = scan_points(scheme, cfg.n_min, cfg.n_max, cfg.angle_samples)?;
    evaluate_all(step, scheme, &points)
}

/// Groups consecutive samples of the same annulus.
fn by_annulus(samples: &[Sample]) -> Vec<(u64, &[Sample])> {
    samples
        .chunk_by(|a, b| a.point.n == b.point.n)
        .map(|c| (c[0].point.n, c))
        .collect()
}

/// Sup over the first and last halves of a per-`n` sequence, with the check
/// that the last does not exceed the first by more than `margin`.
fn halves_check(rec: &mut SuiteRecord, label: &str, logs: &[f64], margin: f64) {
    let mid = half_split(logs.len());
    let first = sup(&logs[..mid]).exp();
    let last = sup(&logs[mid..]).exp();
    rec.constant(format!("{label}_first_half"), first);
    rec.constant(format!("{label}_last_half"), last);
    let ratio = last / first;
    rec.check(Check::new(
        format!("{label}_last_half_within_margin"),
        first.is_finite() && first > 0.0 && ratio <= 1.0 + margin,
        ratio,
        1.0 + margin,
    ));
}

pub(super) fn ratio(step: &SmoothStep, scheme: &Scheme, cfg: &SuiteConfig) -> Result<SuiteRecord> {
    let samples = samples(step, scheme, cfg)?;
    let groups = by_annulus(&samples);
    let (columns, label, aux_label) = match scheme.kind() {
        SchemeKind::Rosay => (["n", "log_sup_c1", "log_sup_ratio_n"], "C1", "sup_ratio_times_n"),
        SchemeKind::Loglog => (["n", "log_sup_c5", "log_sup_c4"], "C5", "C4"),
    };
    let mut rec = SuiteRecord::new(SuiteName::Ratio, &columns);
    let mut main = Vec::with_capacity(groups.len());
    let mut aux = Vec::with_capacity(groups.len());
    for (n, group) in &groups {
        let nf = *n as f64;
        let (mut m, mut a) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for s in *group {
            let lr = s.jet.log_ratio();
            let lz = s.point.z.log_mag();
            let (v, w) = match scheme.kind() {
                // ratio (-log2 |z|) and ratio n
                SchemeKind::Rosay => (lr + (-lz / LN_2).ln(), lr + nf.ln()),
                // ratio |z|^2 exp(1/|z|) and ratio n / ln(n+2)^2
                SchemeKind::Loglog => (
                    lr + 2.0 * lz + (-lz).exp(),
                    lr + nf.ln() - 2.0 * (nf + 2.0).ln().ln(),
                ),
            };
            m = m.max(v);
            a = a.max(w);
        }
        main.push(m);
        aux.push(a);
        rec.rows.push(vec![nf, m, a]);
    }
    let fitted = sup(&main).exp();
    let fitted_aux = sup(&aux).exp();
    rec.constant(label, fitted);
    rec.constant(aux_label, fitted_aux);
    rec.check(Check::new(
        format!("{label}_finite"),
        fitted.is_finite() && fitted > 0.0,
        fitted,
        f64::INFINITY,
    ));
    rec.check(Check::new(
        format!("{aux_label}_finite"),
        fitted_aux.is_finite() && fitted_aux > 0.0,
        fitted_aux,
        f64::INFINITY,
    ));
    halves_check(&mut rec, label, &main, cfg.tolerances.ratio_margin);
    Ok(rec)
}

const Q_ENTRIES: [(usize, usize, &str); 4] = [(0, 0, "q11"), (0, 1, "q12"), (1, 0, "q21"), (1, 1, "q22")];

pub(super) fn flatness(step: &SmoothStep, scheme: &Scheme, cfg: &SuiteConfig) -> Result<SuiteRecord> {
    let samples = samples(step, scheme, cfg)?;
    let groups = by_annulus(&samples);
    let mut rec = SuiteRecord::new(
        SuiteName::Flatness,
        &["n", "k", "log_u", "log_q11", "log_q12", "log_q21", "log_q22"],
    );
    let log_tol = cfg.tolerances.flat.ln();
    for k in 0..=cfg.k_max {
        let kf = k as f64;
        // seqs[0] is u, seqs[1..] the entries of Q.
        let mut seqs: [Vec<(u64, f64)>; 5] = Default::default();
        for (n, group) in &groups {
            let mut best = [f64::NEG_INFINITY; 5];
            for s in *group {
                let weight = -kf * s.point.z.log_mag();
                best[0] = best[0].max(weight + s.jet.log_norm());
                for (e, (i, j, _)) in Q_ENTRIES.iter().enumerate() {
                    best[e + 1] = best[e + 1].max(weight + s.q.q[*i][*j].log_mag());
                }
            }
            let mut row = vec![*n as f64, kf];
            row.extend(best);
            rec.rows.push(row);
            for (seq, b) in seqs.iter_mut().zip(best) {
                seq.push((*n, b));
            }
        }
        let names = ["u", "q11", "q12", "q21", "q22"];
        for (seq, name) in seqs.iter().zip(names) {
            let label = format!("{name}_k{k}");
            let n0 = decreasing_from(seq);
            let last = seq.iter().rev().map(|p| p.1).find(|v| v.is_finite());
            let last = last.unwrap_or(f64::NEG_INFINITY);
            rec.constant(format!("n0_{label}"), n0.map_or(f64::NAN, |n| n as f64));
            rec.check(Check::new(
                format!("{label}_decreasing_below_tol"),
                n0.is_some() && last < log_tol,
                last,
                log_tol,
            ));
        }
    }
    Ok(rec)
}

pub(super) fn smoothness(scheme: &Scheme, cfg: &SuiteConfig) -> Result<SuiteRecord> {
    let mut columns = vec!["n".to_string(), "hypothesis_ratio".to_string()];
    columns.extend((0..=cfg.smooth_k_max).map(|k| format!("log_criterion_k{k}")));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut rec = SuiteRecord::new(SuiteName::Smoothness, &column_refs);

    let ns: Vec<u64> = (cfg.n_min..=cfg.n_max).collect();
    let mut per_k: Vec<Vec<(u64, f64)>> = vec![Vec::new(); cfg.smooth_k_max as usize + 1];
    let mut hyp = Vec::with_capacity(ns.len());
    for &n in &ns {
        let h = scheme.hypothesis_ratio(n)?;
        hyp.push(h);
        let mut row = vec![n as f64, h];
        for k in 0..=cfg.smooth_k_max {
            // Undefined while p(n+1) <= 4k.
            let v = scheme.smoothness_criterion(n, k).unwrap_or(f64::NAN);
            per_k[k as usize].push((n, v));
            row.push(v);
        }
        rec.rows.push(row);
    }

    let floor = -cfg.tolerances.smooth_floor;
    for (k, seq) in per_k.iter().enumerate() {
        let n0 = decreasing_from(seq);
        let last = seq.last().map_or(f64::NAN, |p| p.1);
        rec.constant(format!("n0_k{k}"), n0.map_or(f64::NAN, |n| n as f64));
        rec.check(Check::new(
            format!("criterion_k{k}_decreasing_below_floor"),
            n0.is_some() && last < floor,
            last,
            floor,
        ));
    }
    let hyp_sup = sup(&hyp);
    rec.constant("hypothesis_ratio_sup", hyp_sup);
    rec.check(Check::new(
        "hypothesis_ratio_bounded",
        hyp_sup <= cfg.tolerances.hypothesis_bound,
        hyp_sup,
        cfg.tolerances.hypothesis_bound,
    ));
    if scheme.kind() == SchemeKind::Rosay {
        let exact = hyp.iter().all(|&h| h == 1.0);
        rec.check(Check::new("hypothesis_ratio_identically_one", exact, hyp_sup, 1.0));
    }
    Ok(rec)
}

pub(super) fn q22_growth(step: &SmoothStep, scheme: &Scheme, cfg: &SuiteConfig) -> Result<SuiteRecord> {
    let mut rec = SuiteRecord::new(
        SuiteName::Q22growth,
        &["n", "x_n", "log_total", "log_y", "log_w", "log_t1", "log_t2", "log_t3"],
    );
    let first_even = cfg.n_min + cfg.n_min % 2;
    let ns: Vec<u64> = (first_even..=cfg.n_max).step_by(2).collect();
    let terms = ns
        .par_iter()
        .map(|&n| term_dominance(step, scheme, n))
        .collect::<Result<Vec<_>>>()?;

    let mut ys = Vec::with_capacity(ns.len());
    let mut ws = Vec::with_capacity(ns.len());
    for t in &terms {
        let x = midpoint(scheme, t.n)?;
        let y = t.log_total + 3.0 * x.ln();
        let w = t.log_total - 3.0 * (t.n as f64 + 2.0).ln().ln();
        ys.push(y);
        ws.push(w);
        rec.rows.push(vec![t.n as f64, x, t.log_total, y, w, t.t1, t.t2, t.t3]);
    }
    if ns.len() < 2 {
        rec.check(Check::new("enough_even_indices", false, ns.len() as f64, 2.0));
        return Ok(rec);
    }
    let mid = half_split(ys.len());
    let last = ys.len() - 1;
    rec.constant("y_midpoint", ys[mid].exp());
    rec.constant("y_final", ys[last].exp());
    rec.check(Check::new(
        "y_increasing_last_half",
        strictly_increasing(&ys[mid..]),
        f64::NAN,
        f64::NAN,
    ));
    let growth = (ys[last] - ys[mid]).exp();
    rec.check(Check::new(
        "y_final_over_midpoint",
        growth >= cfg.tolerances.growth_factor,
        growth,
        cfg.tolerances.growth_factor,
    ));
    let c = ws[mid..].iter().copied().fold(f64::INFINITY, f64::min).exp();
    rec.constant("c", c);
    rec.check(Check::new("w_lower_bound_positive", c > 0.0 && c.is_finite(), c, 0.0));

    let margins: Vec<f64> = terms.iter().map(|t| t.t3 - t.t1.max(t.t2)).collect();
    let threshold = margins.iter().rposition(|&m| !(m > 0.0)).map_or(0, |i| i + 1);
    let dominated = threshold < margins.len();
    rec.constant(
        "dominance_threshold_n",
        if dominated { ns[threshold] as f64 } else { f64::NAN },
    );
    let min_margin = if dominated {
        margins[threshold..].iter().copied().fold(f64::INFINITY, f64::min)
    } else {
        f64::NAN
    };
    rec.constant("log_dominance_margin_min", min_margin);
    rec.constant("log_dominance_margin_final", margins[last]);
    rec.check(Check::new("t3_dominates_beyond_threshold", dominated, min_margin, 0.0));
    Ok(rec)
}

pub(super) fn fd_oracle(step: &SmoothStep, scheme: &Scheme, cfg: &SuiteConfig) -> Result<SuiteRecord> {
    let mut rec = SuiteRecord::new(
        SuiteName::Fdoracle,
        &["n", "chi_first", "chi_second", "u_value", "u_first", "u_second", "dq22"],
    );
    let n_top = cfg.n_max.min(cfg.fd_n_max);
    let mut points = Vec::new();
    for n in cfg.n_min..=n_top {
        points.extend(annulus_points(scheme, n, &INTERIOR_FRACTIONS, cfg.angle_samples)?);
    }
    let per_point = points
        .par_iter()
        .map(|p| {
            let o = RescaledMap::new(step, scheme, p.n, p.radius_fraction, p.angle)?;
            Ok((p.n, chi_jet_errors(step, &o)?, u_jet_errors(step, scheme, &o)?, dq22_error(step, scheme, &o)?))
        })
        .collect::<Result<Vec<(u64, OracleErrors, OracleErrors, f64)>>>()?;

    let (mut chi_all, mut u_all, mut dq_all) = (OracleErrors::default(), OracleErrors::default(), 0.0f64);
    for group in per_point.chunk_by(|a, b| a.0 == b.0) {
        let chi = merged(group.iter().map(|g| g.1));
        let u = merged(group.iter().map(|g| g.2));
        let dq = group.iter().map(|g| g.3).fold(0.0, f64::max);
        rec.rows.push(vec![group[0].0 as f64, chi.first, chi.second, u.value, u.first, u.second, dq]);
        chi_all = merged([chi_all, chi]);
        u_all = merged([u_all, u]);
        dq_all = dq_all.max(dq);
    }
    rec.constant("n_max_checked", n_top as f64);
    let t = &cfg.tolerances;
    for (name, v, lim) in [
        ("chi_first", chi_all.first, t.fd_first),
        ("chi_second", chi_all.second, t.fd_second),
        ("u_value", u_all.value, t.fd_first),
        ("u_first", u_all.first, t.fd_first),
        ("u_second", u_all.second, t.fd_second),
        ("dq22", dq_all, t.fd_second),
    ] {
        rec.constant(format!("max_error_{name}"), v);
        rec.check(Check::new(format!("{name}_within_tolerance"), v <= lim, v, lim));
    }
    if per_point.is_empty() {
        rec.check(Check::new("points_checked", false, 0.0, 1.0));
    }
    Ok(rec)
}

/// `n (ln ln(n+2) - ln ln n)`, through `ln_1p` so that large `n` keep
/// their digits.
pub fn calclemma_term(n: u64) -> f64 {
    let m = n as f64;
    m * ((2.0 / m).ln_1p() / m.ln()).ln_1p()
}

pub(super) fn calculus_lemma(cfg: &SuiteConfig) -> Result<SuiteRecord> {
    let mut rec = SuiteRecord::new(SuiteName::Calclemma, &["n", "a_n"]);
    let start = cfg.n_min.max(2);
    let mut ns: Vec<u64> = (start..=cfg.n_max.max(start)).collect();
    ns.extend(CALCLEMMA_TAIL.iter().copied().filter(|&n| n > cfg.n_max));
    let seq: Vec<(u64, f64)> = ns.iter().map(|&n| (n, calclemma_term(n))).collect();
    for (n, a) in &seq {
        rec.rows.push(vec![*n as f64, *a]);
    }
    let a2 = calclemma_term(2);
    let values: Vec<f64> = seq.iter().map(|p| p.1).collect();
    let s = sup(&values).max(a2);
    rec.constant("a_2", a2);
    rec.constant("sup", s);
    rec.check(Check::new("sup_finite", s.is_finite(), s, f64::INFINITY));
    let beyond = sup(&seq.iter().filter(|p| p.0 >= 10).map(|p| p.1).collect::<Vec<_>>());
    rec.check(Check::new("below_a2_from_n10", beyond < a2, beyond, a2));
    let n0 = decreasing_from(&seq);
    rec.constant("n0", n0.map_or(f64::NAN, |n| n as f64));
    rec.check(Check::new("eventually_decreasing", n0.is_some(), n0.map_or(f64::NAN, |n| n as f64), f64::NAN));
    let last = values.last().copied().unwrap_or(f64::NAN);
    rec.check(Check::new("tail_below_limit", last < CALCLEMMA_TAIL_LIMIT, last, CALCLEMMA_TAIL_LIMIT));
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calclemma_term_matches_direct_formula() {
        for n in [2u64, 3, 10, 57, 200] {
            let m = n as f64;
            let direct = m * ((m + 2.0).ln().ln() - m.ln().ln());
            assert!((calclemma_term(n) - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
        // a_n ~ 2 / ln n
        let n = 10_000_000_000u64;
        assert!((calclemma_term(n) * (n as f64).ln() / 2.0 - 1.0).abs() < 0.05);
        assert!((calclemma_term(2) - 2.0 * (4f64.ln().ln() - 2f64.ln().ln())).abs() < 1e-15);
    }
}
