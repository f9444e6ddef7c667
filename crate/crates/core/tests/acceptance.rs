//! Acceptance criteria. Runs every criterion, prints one line each and exits
//! nonzero if any failed.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use unruh_cv::analysis::{
    a_star, classical_deficit, contangle_ar, frequency_separability, ln_symplectic_eigenvalue,
    m_ln_equal, mutual_info_ar, one_vs_rest_single, residual_multipartite, residual_tripartite,
    tau_max_ar, tripartite_upper_bound, DoubleObserverReport, SingleObserverReport,
};
use unruh_cv::info_measures::{
    contangle_from_m, entropy_term_f, ppt_separable, two_mode_contangle,
};
use unruh_cv::phase_space::{apply_congruence, two_mode_squeezer, CovMatrix, ModeIndexSet};
use unruh_cv::rindler::{
    build_double_observer_cm, build_single_observer_cm, double_observer_cm_closed_form,
    single_observer_cm_closed_form,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grid() -> Vec<f64> {
    (1..=12).map(|k| 0.25 * k as f64).collect()
}

fn pairs() -> Vec<(f64, f64)> {
    let g = grid();
    g.iter()
        .flat_map(|&x| g.iter().map(move |&y| (x, y)))
        .collect()
}

fn triples() -> Vec<(f64, f64, f64)> {
    let g = grid();
    let mut out = Vec::new();
    for &x in &g {
        for &y in &g {
            for &z in &g {
                out.push((x, y, z));
            }
        }
    }
    out
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac1() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in [0.5f64, 1.0, 2.0] {
        let closed = contangle_from_m((2.0 * s).cosh()).map_err(|e| e.to_string())?;
        let sigma = apply_congruence(
            &two_mode_squeezer(s, 0, 1, 2).unwrap(),
            &CovMatrix::vacuum(2).unwrap(),
        )
        .unwrap();
        let numeric = two_mode_contangle(&sigma)
            .map_err(|e| e.to_string())?
            .contangle;
        worst = worst
            .max((closed - 4.0 * s * s).abs())
            .max((numeric - 4.0 * s * s).abs());
    }
    check(worst <= 1e-9, format!("max |tau - 4 s^2| = {worst:.2e}"))
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (s, r) in pairs() {
        let a = build_single_observer_cm(s, r).unwrap();
        let b = single_observer_cm_closed_form(s, r).unwrap();
        worst = worst.max((a.as_matrix() - b.as_matrix()).amax());
    }
    for (s, l, n) in triples() {
        let a = build_double_observer_cm(s, l, n).unwrap();
        let b = double_observer_cm_closed_form(s, l, n).unwrap();
        worst = worst.max((a.as_matrix() - b.as_matrix()).amax());
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-10 && secs < 10.0,
        format!(
            "max entry deviation {worst:.2e} over {} points in {secs:.2} s",
            144 + 1728
        ),
    )
}

fn ac3() -> Outcome {
    let mut worst: f64 = 0.0;
    for (s, r) in pairs() {
        let m = one_vs_rest_single(s, r).unwrap();
        worst = worst.max((m.rbar - (m.r - m.a + 1.0)).abs());
    }
    check(worst <= 1e-10, format!("max triangle defect {worst:.2e}"))
}

fn ac4() -> Outcome {
    let keep = ModeIndexSet::new(vec![0, 2]).unwrap();
    let mut failures = 0;
    for (s, r) in pairs() {
        let sigma = build_single_observer_cm(s, r)
            .unwrap()
            .reduce(&keep)
            .unwrap();
        if !ppt_separable(&sigma, &ModeIndexSet::single(0), 1e-9).unwrap() {
            failures += 1;
        }
    }
    check(
        failures == 0,
        format!("{failures} of 144 A|Rbar states not PPT"),
    )
}

fn ac5() -> Outcome {
    let t = tau_max_ar(0.5).unwrap().to_f64();
    let at25 = contangle_ar(25.0, 0.5).unwrap().contangle;
    check(
        (7.85..=8.0).contains(&t) && (at25 - t).abs() <= 1e-3,
        format!(
            "tau_max(0.5) = {t:.6}, tau_AR(25, 0.5) - tau_max = {:.2e}",
            at25 - t
        ),
    )
}

fn ac6() -> Outcome {
    let v = residual_tripartite(1.0, 20.0).unwrap();
    check(
        (v - 4.0).abs() <= 1e-3,
        format!("residual tripartite (1, 20) = {v:.8}"),
    )
}

fn ac7() -> Outcome {
    let mut bad = Vec::new();
    for s in [0.5f64, 1.0, 2.0, 5.0] {
        let star = a_star(s).unwrap();
        for a in [star, 1.01 * star, 2.0 * star] {
            if m_ln_equal(s, a).unwrap() != 1.0 {
                bad.push(format!("m(s={s}, a={a}) != 1"));
            }
        }
        if m_ln_equal(s, 0.99 * star).unwrap() <= 1.0 {
            bad.push(format!("m(s={s}, 0.99 a*) not > 1"));
        }
    }
    let lim = a_star(1e6).unwrap();
    if (lim - 1f64.asinh()).abs() > 1e-6 {
        bad.push(format!("a*(1e6) = {lim}"));
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            format!("a*(inf) = {lim:.10}")
        } else {
            bad.join("; ")
        },
    )
}

fn ac8() -> Outcome {
    let v = residual_multipartite(2.0, 7.0).unwrap();
    let rep = DoubleObserverReport::compute(2.0, 7.0, 7.0).unwrap();
    check(
        (v - 81.2).abs() <= 0.05 && rep.tau_inertial == 16.0 && rep.tau_L_Lbar == 196.0,
        format!(
            "residual = {v:.6}, 4s^2 = {}, 4a^2 = {}",
            rep.tau_inertial, rep.tau_L_Lbar
        ),
    )
}

fn ac9() -> Outcome {
    let d = classical_deficit(1.0, 20.0).unwrap();
    let mut max_d = f64::NEG_INFINITY;
    let mut at = (0.0, 0.0);
    for i in 1..=200 {
        let s = 0.1 * i as f64;
        for j in 1..=50 {
            let a = 0.1 * j as f64;
            let v = classical_deficit(a, s).unwrap();
            if v > max_d {
                max_d = v;
                at = (a, s);
            }
        }
    }
    check(
        (d - 1.0).abs() <= 1e-3 && max_d <= 1.0 + 1e-9,
        format!("D(1, 20) = {d:.8}, max D = {max_d:.12} at (a, s) = {at:?}"),
    )
}

fn ac10() -> Outcome {
    let i = mutual_info_ar(1.0, 15.0).unwrap();
    let f = entropy_term_f(2f64.cosh()).unwrap();
    check(
        (i - f).abs() <= 1e-4,
        format!("I(1, 15) - f(cosh 2) = {:.2e}", i - f),
    )
}

fn ac11() -> Outcome {
    let mut worst = f64::INFINITY;
    for (s, r) in pairs() {
        let rep = SingleObserverReport::compute(s, r).unwrap();
        worst = rep.monogamy.iter().copied().fold(worst, f64::min);
    }
    for (s, l, n) in triples() {
        let rep = DoubleObserverReport::compute(s, l, n).unwrap();
        worst = rep.monogamy.iter().copied().fold(worst, f64::min);
    }
    check(
        worst >= -1e-9,
        format!("smallest monogamy residual {worst:.3e}"),
    )
}

fn ac12() -> Outcome {
    let mut bad = Vec::new();
    for s in [1.0, 2.0] {
        let vals: Vec<f64> = (1..=10)
            .map(|k| tripartite_upper_bound(s, 0.5 * k as f64).unwrap())
            .collect();
        if let Some(v) = vals.iter().find(|&&v| v < -1e-12) {
            bad.push(format!("s={s}: negative bound {v}"));
        }
        for (k, w) in vals.windows(2).enumerate() {
            if w[1] > w[0] {
                bad.push(format!(
                    "s={s}: increases from {:.4} at a={} to {:.4} at a={}",
                    w[0],
                    0.5 * (k + 1) as f64,
                    w[1],
                    0.5 * (k + 2) as f64
                ));
            }
        }
        if vals[9] >= 1e-2 {
            bad.push(format!("s={s}: bound at a=5 is {}", vals[9]));
        }
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            "bound monotone and vanishing".into()
        } else {
            bad.join("; ")
        },
    )
}

fn ac13() -> Outcome {
    let aleph = 2.0 * PI;
    let step = 1e-4;
    let mut flip = None;
    let mut prev = frequency_separability(0.5, 0.5, aleph).unwrap();
    for k in 1..=5000 {
        let lam = 0.5 + step * k as f64;
        let sep = frequency_separability(lam, lam, aleph).unwrap();
        if sep != prev {
            flip = Some(lam);
            break;
        }
        prev = sep;
    }
    match flip {
        Some(lam) => check(
            (lam - 2f64.ln()).abs() <= step,
            format!("flip at lambda = {lam:.5}, ln 2 = {:.5}", 2f64.ln()),
        ),
        None => Err("no flip found in [0.5, 1.0]".into()),
    }
}

fn ac14() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at = String::new();
    let ar = ModeIndexSet::new(vec![0, 1]).unwrap();
    for (s, r) in pairs() {
        let sigma = build_single_observer_cm(s, r).unwrap();
        let eta = sigma.reduce(&ar).unwrap().symplectic_eigenvalues().unwrap();
        let top = sigma.local_det(2).sqrt();
        let dev = (eta[0] - 1.0).abs().max((eta[1] - top).abs());
        if dev > worst {
            worst = dev;
            at = format!("single s={s} r={r}");
        }
    }
    let ln = ModeIndexSet::new(vec![1, 2]).unwrap();
    for (s, a) in pairs() {
        let sigma = build_double_observer_cm(s, a, a).unwrap();
        let eta = sigma.reduce(&ln).unwrap().symplectic_eigenvalues().unwrap();
        let nu = ln_symplectic_eigenvalue(s, a).unwrap();
        let dev = (eta[0] - nu).abs().max((eta[1] - nu).abs());
        if dev > worst {
            worst = dev;
            at = format!("double s={s} a={a}");
        }
    }
    check(
        worst <= 1e-8,
        format!("max spectrum deviation {worst:.2e} ({at})"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("AC-1 pure inertial contangle", ac1),
        ("AC-2 block fidelity", ac2),
        ("AC-3 triangle saturation", ac3),
        ("AC-4 A|Rbar separability", ac4),
        ("AC-5 tau_max bound", ac5),
        ("AC-6 tripartite asymptote", ac6),
        ("AC-7 finite-acceleration death", ac7),
        ("AC-8 four-partite benchmark", ac8),
        ("AC-9 classical deficit", ac9),
        ("AC-10 classical correlations survive", ac10),
        ("AC-11 monogamy", ac11),
        ("AC-12 tripartite upper bound", ac12),
        ("AC-13 frequency threshold", ac13),
        ("AC-14 spectrum oracle", ac14),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_owned()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
