//! One inertial observer (Alice) and one accelerated observer (Rob), with
//! Rob's causally disconnected partner mode (anti-Rob).

use serde::{Deserialize, Serialize};

use super::{snap_nonneg, Extended};
use crate::error::{nonneg, Result};
use crate::info_measures::{
    check_monogamy, contangle_from_m, entropy_term_f, MeasureReport, Source,
};

/// One-vs-two m-values of the pure three-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleOneVsRest {
    pub a: f64,
    pub r: f64,
    pub rbar: f64,
}

pub fn one_vs_rest_single(s: f64, r: f64) -> Result<SingleOneVsRest> {
    let s = nonneg("s", s)?;
    let r = nonneg("r", r)?;
    let c2s = (2.0 * s).cosh();
    let (ch2, sh2) = (r.cosh().powi(2), r.sinh().powi(2));
    Ok(SingleOneVsRest {
        a: c2s,
        r: c2s * ch2 + sh2,
        rbar: ch2 + c2s * sh2,
    })
}

/// Alice-Rob m-value of the reduced (mixed) state.
fn m_ar(s: f64, r: f64) -> f64 {
    let c = (2.0 * s).cosh();
    let q = r.sinh().powi(2);
    // cosh 2r + 3 = 2 sinh^2 r + 4
    (q + (q + 2.0) * c) / (c * q + q + 2.0)
}

pub fn contangle_ar(s: f64, r: f64) -> Result<MeasureReport> {
    let s = nonneg("s", s)?;
    let r = nonneg("r", r)?;
    MeasureReport::from_m(m_ar(s, r), Source::ClosedForm)
}

/// Rob / anti-Rob entanglement; independent of `s`.
pub fn contangle_rrbar(r: f64) -> Result<MeasureReport> {
    let r = nonneg("r", r)?;
    Ok(MeasureReport {
        m_parameter: (2.0 * r).cosh(),
        contangle: 4.0 * r * r,
        separable: r == 0.0,
        source: Source::ClosedForm,
    })
}

/// Large-`s` limit of the Alice-Rob contangle at fixed `r`.
pub fn tau_max_ar(r: f64) -> Result<Extended> {
    let r = nonneg("r", r)?;
    if r == 0.0 {
        return Ok(Extended::Infinite);
    }
    let v = (2.0 * r.cosh() / r.sinh().powi(2)).asinh();
    Ok(Extended::Finite(v * v))
}

/// Acceleration at which anti-Rob's mode stops being the least mixed.
pub fn r_star(s: f64) -> Result<f64> {
    let s = nonneg("s", s)?;
    Ok((s.tanh().powi(2) + 1.0).sqrt().acosh())
}

/// The two candidate residual tripartite contangles, probing anti-Rob and
/// Alice respectively.
pub fn residual_tripartite_branches(s: f64, r: f64) -> Result<(f64, f64)> {
    let m = one_vs_rest_single(s, r)?;
    let tau_rr = contangle_rrbar(r)?.contangle;
    let tau_ar = contangle_ar(s, r)?.contangle;
    let via_rbar = contangle_from_m(m.rbar)? - tau_rr;
    let via_a = contangle_from_m(m.a)? - tau_ar;
    Ok((snap_nonneg(via_rbar), snap_nonneg(via_a)))
}

/// Genuine tripartite entanglement among Alice, Rob and anti-Rob.
pub fn residual_tripartite(s: f64, r: f64) -> Result<f64> {
    let (via_rbar, via_a) = residual_tripartite_branches(s, r)?;
    Ok(if r < r_star(s)? { via_rbar } else { via_a })
}

/// Alice-Rob mutual information.
pub fn mutual_info_ar(s: f64, r: f64) -> Result<f64> {
    let m = one_vs_rest_single(s, r)?;
    Ok(entropy_term_f(m.a)? + entropy_term_f(m.r)? - entropy_term_f(m.rbar)?)
}

/// Everything known in closed form about one point `(s, r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct SingleObserverReport {
    pub s: f64,
    pub r: f64,
    pub m_A_RRbar: f64,
    pub m_R_ARbar: f64,
    pub m_Rbar_AR: f64,
    pub m_AR: f64,
    pub m_RRbar: f64,
    pub m_ARbar: f64,
    pub tau_inertial: f64,
    pub tau_AR: f64,
    pub tau_RRbar: f64,
    pub tau_ARbar: f64,
    pub tau_max: Extended,
    pub r_star: f64,
    pub residual_tripartite: f64,
    pub mutual_info_AR: f64,
    pub entropy_of_entanglement: f64,
    /// Monogamy slack with probe A, R and anti-Rob.
    pub monogamy: [f64; 3],
}

#[allow(non_snake_case)]
impl SingleObserverReport {
    pub fn compute(s: f64, r: f64) -> Result<Self> {
        let m = one_vs_rest_single(s, r)?;
        let ar = contangle_ar(s, r)?;
        let rr = contangle_rrbar(r)?;
        let tau_A = contangle_from_m(m.a)?;
        let tau_R = contangle_from_m(m.r)?;
        let tau_Rbar = contangle_from_m(m.rbar)?;
        let monogamy = [
            check_monogamy(tau_A, &[ar.contangle, 0.0])?,
            check_monogamy(tau_R, &[ar.contangle, rr.contangle])?,
            check_monogamy(tau_Rbar, &[rr.contangle, 0.0])?,
        ];
        Ok(Self {
            s,
            r,
            m_A_RRbar: m.a,
            m_R_ARbar: m.r,
            m_Rbar_AR: m.rbar,
            m_AR: ar.m_parameter,
            m_RRbar: rr.m_parameter,
            m_ARbar: 1.0,
            tau_inertial: 4.0 * s * s,
            tau_AR: ar.contangle,
            tau_RRbar: rr.contangle,
            tau_ARbar: 0.0,
            tau_max: tau_max_ar(r)?,
            r_star: r_star(s)?,
            residual_tripartite: residual_tripartite(s, r)?,
            mutual_info_AR: mutual_info_ar(s, r)?,
            entropy_of_entanglement: entropy_term_f(m.a)?,
            monogamy,
        })
    }
}
