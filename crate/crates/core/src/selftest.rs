//! Cross-checks closed forms against the numeric covariance-matrix route and
//! verifies monogamy over a parameter grid.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{contangle_ar, DoubleObserverReport, SingleObserverReport};
use crate::analysis::{one_vs_rest_double, one_vs_rest_single, pairwise_m_double};
use crate::error::Result;
use crate::info_measures::two_mode_contangle;
use crate::phase_space::{CovMatrix, ModeIndexSet};
use crate::rindler::{
    build_double_observer_cm, build_single_observer_cm, double_observer_cm_closed_form,
    pure_one_vs_rest_m, single_observer_cm_closed_form, Role, ScenarioLayout,
};

pub const BLOCK_TOL: f64 = 1e-10;
pub const DUALITY_TOL: f64 = 1e-8;
pub const MONOGAMY_TOL: f64 = 1e-9;

/// Outcome of one family of checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Parameters at which the largest deviation was seen.
    pub worst: String,
    pub points: usize,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {:<18} max dev {:.3e} (tol {:.1e}, {} points, worst at {})",
            if self.passed() { "ok" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance,
            self.points,
            self.worst
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn worst_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed()).max_by(|a, b| {
            (a.max_deviation / a.tolerance).total_cmp(&(b.max_deviation / b.tolerance))
        })
    }
}

/// Parameter values used on every axis.
pub fn grid(quick: bool) -> Vec<f64> {
    if quick {
        vec![0.25, 1.0, 2.0, 3.0]
    } else {
        (1..=12).map(|k| 0.25 * k as f64).collect()
    }
}

struct Dev {
    value: f64,
    at: String,
}

fn worst(devs: impl IntoIterator<Item = Dev>) -> (f64, String, usize) {
    let mut best = (0.0, String::from("-"), 0);
    for d in devs {
        best.2 += 1;
        if d.value > best.0 || d.value.is_nan() {
            best.0 = d.value;
            best.1 = d.at;
        }
    }
    best
}

fn max_abs_diff(a: &CovMatrix, b: &CovMatrix) -> f64 {
    (a.as_matrix() - b.as_matrix()).amax()
}

fn rel(numeric: f64, closed: f64) -> f64 {
    (numeric - closed).abs() / closed.abs().max(1.0)
}

fn pair_m(sigma: &CovMatrix, i: usize, j: usize) -> Result<f64> {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let reduced = sigma.reduce(&ModeIndexSet::new(vec![i, j])?)?;
    Ok(two_mode_contangle(&reduced)?.m_parameter)
}

fn single_points(g: &[f64]) -> Vec<(f64, f64)> {
    g.iter()
        .flat_map(|&s| g.iter().map(move |&r| (s, r)))
        .collect()
}

fn double_points(g: &[f64]) -> Vec<(f64, f64, f64)> {
    g.iter()
        .flat_map(|&s| {
            g.iter()
                .flat_map(move |&l| g.iter().map(move |&n| (s, l, n)))
        })
        .collect()
}

fn single_duality(s: f64, r: f64) -> Result<f64> {
    let lay = ScenarioLayout::single();
    let (a, ro, rb) = (
        lay.index(Role::A)?,
        lay.index(Role::R)?,
        lay.index(Role::RBar)?,
    );
    let sigma = build_single_observer_cm(s, r)?;
    let ovr = one_vs_rest_single(s, r)?;
    let checks = [
        (pure_one_vs_rest_m(&sigma, a)?, ovr.a),
        (pure_one_vs_rest_m(&sigma, ro)?, ovr.r),
        (pure_one_vs_rest_m(&sigma, rb)?, ovr.rbar),
        (pair_m(&sigma, a, ro)?, contangle_ar(s, r)?.m_parameter),
        (pair_m(&sigma, ro, rb)?, (2.0 * r).cosh()),
        (pair_m(&sigma, a, rb)?, 1.0),
    ];
    Ok(checks.iter().map(|&(x, y)| rel(x, y)).fold(0.0, f64::max))
}

fn double_duality(s: f64, l: f64, n: f64) -> Result<f64> {
    let lay = ScenarioLayout::double();
    let idx = |role| lay.index(role);
    let (lb, lo, no, nb) = (
        idx(Role::LBar)?,
        idx(Role::L)?,
        idx(Role::N)?,
        idx(Role::NBar)?,
    );
    let sigma = build_double_observer_cm(s, l, n)?;
    let ovr = one_vs_rest_double(s, l, n)?;
    let pw = pairwise_m_double(s, l, n)?;
    let checks = [
        (pure_one_vs_rest_m(&sigma, lb)?, ovr.lbar),
        (pure_one_vs_rest_m(&sigma, lo)?, ovr.l),
        (pure_one_vs_rest_m(&sigma, no)?, ovr.n),
        (pure_one_vs_rest_m(&sigma, nb)?, ovr.nbar),
        (pair_m(&sigma, lo, no)?, pw.m_L_N),
        (pair_m(&sigma, lb, lo)?, pw.m_L_Lbar),
        (pair_m(&sigma, no, nb)?, pw.m_N_Nbar),
        (pair_m(&sigma, lo, nb)?, pw.m_L_Nbar),
        (pair_m(&sigma, no, lb)?, pw.m_N_Lbar),
        (pair_m(&sigma, lb, nb)?, pw.m_Lbar_Nbar),
    ];
    Ok(checks.iter().map(|&(x, y)| rel(x, y)).fold(0.0, f64::max))
}

fn neg_part(slack: &[f64]) -> f64 {
    slack.iter().map(|&x| (-x).max(0.0)).fold(0.0, f64::max)
}

fn result(name: &'static str, tol: f64, devs: Vec<Dev>) -> CheckResult {
    let (max_deviation, worst, points) = worst(devs);
    CheckResult {
        name,
        max_deviation,
        tolerance: tol,
        worst,
        points,
    }
}

/// Runs every check. `tol` overrides all default tolerances.
pub fn run_selftest(quick: bool, tol: Option<f64>) -> Result<SelftestReport> {
    let g = grid(quick);
    let sp = single_points(&g);
    let dp = double_points(&g);
    let at1 = |s: f64, r: f64| format!("s={s}, r={r}");
    let at2 = |s: f64, l: f64, n: f64| format!("s={s}, l={l}, n={n}");

    let single_block = sp
        .par_iter()
        .map(|&(s, r)| {
            let d = max_abs_diff(
                &build_single_observer_cm(s, r)?,
                &single_observer_cm_closed_form(s, r)?,
            );
            Ok(Dev {
                value: d,
                at: at1(s, r),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let double_block = dp
        .par_iter()
        .map(|&(s, l, n)| {
            let d = max_abs_diff(
                &build_double_observer_cm(s, l, n)?,
                &double_observer_cm_closed_form(s, l, n)?,
            );
            Ok(Dev {
                value: d,
                at: at2(s, l, n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let single_dual = sp
        .par_iter()
        .map(|&(s, r)| {
            Ok(Dev {
                value: single_duality(s, r)?,
                at: at1(s, r),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let double_dual = dp
        .par_iter()
        .map(|&(s, l, n)| {
            Ok(Dev {
                value: double_duality(s, l, n)?,
                at: at2(s, l, n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let single_mono = sp
        .par_iter()
        .map(|&(s, r)| {
            let rep = SingleObserverReport::compute(s, r)?;
            Ok(Dev {
                value: neg_part(&rep.monogamy),
                at: at1(s, r),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let double_mono = dp
        .par_iter()
        .map(|&(s, l, n)| {
            let rep = DoubleObserverReport::compute(s, l, n)?;
            Ok(Dev {
                value: neg_part(&rep.monogamy),
                at: at2(s, l, n),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let t = |default: f64| tol.unwrap_or(default);
    Ok(SelftestReport {
        checks: vec![
            result("block single", t(BLOCK_TOL), single_block),
            result("block double", t(BLOCK_TOL), double_block),
            result("duality single", t(DUALITY_TOL), single_dual),
            result("duality double", t(DUALITY_TOL), double_dual),
            result("monogamy single", t(MONOGAMY_TOL), single_mono),
            result("monogamy double", t(MONOGAMY_TOL), double_mono),
        ],
    })
}
