//! Two accelerated observers (Leo and Nadia) and their region-II partners
//! (anti-Leo and anti-Nadia). Mode order is `LBar, L, N, NBar`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::single::{contangle_ar, mutual_info_ar};
use super::{snap_nonneg, Extended};
use crate::error::{nonneg, positive, Error, Result};
use crate::info_measures::{
    check_monogamy, contangle_from_m, entropy_term_f, snap_separable, MeasureReport, Source,
};
use crate::phase_space::{apply_congruence, two_mode_squeezer, CovMatrix};

/// The pairwise m-values of the four-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct PairwiseM {
    pub m_L_Nbar: f64,
    pub m_N_Lbar: f64,
    pub m_Lbar_Nbar: f64,
    pub m_L_Lbar: f64,
    pub m_N_Nbar: f64,
    pub m_L_N: f64,
}

/// Leo-Nadia m-value. Exactly 1 once `tanh s <= sinh l sinh n`.
pub fn m_ln(s: f64, l: f64, n: f64) -> Result<f64> {
    let s = nonneg("s", s)?;
    let l = nonneg("l", l)?;
    let n = nonneg("n", n)?;
    let p = l.sinh() * n.sinh();
    if s.tanh() <= p {
        return Ok(1.0);
    }
    snap_separable(m_ln_entangled_branch(s, l, n))
}

/// The non-trivial branch of the Leo-Nadia m-value, with no branch test.
pub fn m_ln_entangled_branch(s: f64, l: f64, n: f64) -> f64 {
    let p = l.sinh() * n.sinh();
    let cs2 = s.cosh().powi(2);
    let num = 2.0 * (2.0 * l).cosh() * (2.0 * n).cosh() * cs2 + 3.0 * (2.0 * s).cosh()
        - 4.0 * p * (2.0 * s).sinh()
        - 1.0;
    let den = 2.0
        * (((2.0 * l).cosh() + (2.0 * n).cosh()) * cs2 - 2.0 * s.sinh().powi(2)
            + 2.0 * p * (2.0 * s).sinh());
    num / den
}

pub fn pairwise_m_double(s: f64, l: f64, n: f64) -> Result<PairwiseM> {
    let m_l_n = m_ln(s, l, n)?;
    Ok(PairwiseM {
        m_L_Nbar: 1.0,
        m_N_Lbar: 1.0,
        m_Lbar_Nbar: 1.0,
        m_L_Lbar: (2.0 * l).cosh(),
        m_N_Nbar: (2.0 * n).cosh(),
        m_L_N: m_l_n,
    })
}

pub fn contangle_ln(s: f64, l: f64, n: f64) -> Result<MeasureReport> {
    MeasureReport::from_m(m_ln(s, l, n)?, Source::ClosedForm)
}

/// One-vs-three m-values of the pure four-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleOneVsRest {
    pub lbar: f64,
    pub l: f64,
    pub n: f64,
    pub nbar: f64,
}

pub fn one_vs_rest_double(s: f64, l: f64, n: f64) -> Result<DoubleOneVsRest> {
    let s = nonneg("s", s)?;
    let l = nonneg("l", l)?;
    let n = nonneg("n", n)?;
    let c2s = (2.0 * s).cosh();
    let bar = |x: f64| x.cosh().powi(2) + c2s * x.sinh().powi(2);
    let real = |x: f64| x.sinh().powi(2) + c2s * x.cosh().powi(2);
    Ok(DoubleOneVsRest {
        lbar: bar(l),
        l: real(l),
        n: real(n),
        nbar: bar(n),
    })
}

/// Acceleration a lone accelerated Rob would need to see the same Alice-Rob
/// entanglement as Leo and Nadia do.
pub fn r_effective(s: f64, l: f64, n: f64) -> Result<Extended> {
    let s = positive("s", s)?;
    let l = nonneg("l", l)?;
    let n = nonneg("n", n)?;
    let p = l.sinh() * n.sinh();
    let t = s.tanh();
    if t <= p {
        return Ok(Extended::Infinite);
    }
    // cosh l cosh n sinh s / (sinh s - cosh s p), divided through by cosh s
    let arg = l.cosh() * n.cosh() * t / (t - p);
    Ok(Extended::Finite(arg.max(1.0).acosh()))
}

/// Sign of the equal-acceleration, infinite-squeezing separability condition
/// `exp(x) + exp(y) - exp(x + y)`, with `x = 2 pi lambda / aleph` and
/// `y = 2 pi nu / aleph`. Returned scaled by `exp(-(x + y))`, i.e.
/// `exp(-x) + exp(-y) - 1`, which never overflows. Nonnegative means
/// separable.
pub fn frequency_condition(lambda: f64, nu: f64, aleph: f64) -> Result<f64> {
    let lambda = positive("lambda", lambda)?;
    let nu = positive("nu", nu)?;
    let aleph = positive("aleph", aleph)?;
    let x = 2.0 * PI * lambda / aleph;
    let y = 2.0 * PI * nu / aleph;
    Ok((-x).exp() + (-y).exp() - 1.0)
}

pub fn frequency_separability(lambda: f64, nu: f64, aleph: f64) -> Result<bool> {
    Ok(frequency_condition(lambda, nu, aleph)? >= 0.0)
}

/// Leo-Nadia m-value for an infinitely squeezed inertial state.
pub fn m_ln_infinite_s(l: f64, n: f64) -> Result<f64> {
    let l = nonneg("l", l)?;
    let n = nonneg("n", n)?;
    if l == 0.0 && n == 0.0 {
        return Err(Error::Domain {
            name: "l, n",
            value: 0.0,
            domain: "not both zero (ideal EPR state diverges)",
        });
    }
    let (sl, sn) = (l.sinh(), n.sinh());
    if sl * sn >= 1.0 {
        return Ok(1.0);
    }
    let num = (2.0 * l).cosh() * (2.0 * n).cosh() - 4.0 * sl * sn + 3.0;
    snap_separable(num / (2.0 * (sl + sn).powi(2)))
}

/// Equal acceleration parameter beyond which Leo and Nadia are separable.
pub fn a_star(s: f64) -> Result<f64> {
    let s = nonneg("s", s)?;
    Ok(s.tanh().sqrt().asinh())
}

/// Leo-Nadia m-value at equal accelerations `l = n = a`.
pub fn m_ln_equal(s: f64, a: f64) -> Result<f64> {
    let s = nonneg("s", s)?;
    let a = nonneg("a", a)?;
    if a >= a_star(s)? {
        return Ok(1.0);
    }
    snap_separable(m_ln_equal_branch(s, a))
}

/// The non-trivial branch of [`m_ln_equal`], with no branch test.
pub fn m_ln_equal_branch(s: f64, a: f64) -> f64 {
    let num = 2.0 * (2.0 * a).cosh().powi(2) * s.cosh().powi(2) + 3.0 * (2.0 * s).cosh()
        - 4.0 * a.sinh().powi(2) * (2.0 * s).sinh()
        - 1.0;
    let den = 4.0 * (a.cosh().powi(2) + (2.0 * s).exp() * a.sinh().powi(2));
    num / den
}

/// Both candidates for the residual multipartite contangle, probing anti-Leo
/// and Leo respectively.
pub fn residual_multipartite_candidates(s: f64, a: f64) -> Result<(f64, f64)> {
    let m = one_vs_rest_double(s, a, a)?;
    let tau_lbar_l = 4.0 * a * a;
    let tau_l_n = contangle_from_m(m_ln_equal(s, a)?)?;
    let via_lbar = contangle_from_m(m.lbar)? - tau_lbar_l;
    let via_l = contangle_from_m(m.l)? - tau_lbar_l - tau_l_n;
    Ok((snap_nonneg(via_lbar), snap_nonneg(via_l)))
}

/// Entanglement of the four-mode state that is not stored in pairs.
///
/// The anti-Leo probe is expected to give the minimum. If the Leo probe ever
/// comes out lower, that value is returned and a warning is logged.
pub fn residual_multipartite(s: f64, a: f64) -> Result<f64> {
    let (via_lbar, via_l) = residual_multipartite_candidates(s, a)?;
    if via_l < via_lbar - 1e-12 * via_lbar.abs().max(1.0) {
        log::warn!(
            "residual multipartite contangle: Leo probe {via_l} below anti-Leo probe {via_lbar} at s={s}, a={a}"
        );
        return Ok(via_l);
    }
    Ok(via_lbar)
}

/// m-values of the pure comparison state used for the tripartite bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaM {
    pub n: f64,
    pub lbar: f64,
    pub l: f64,
    pub t: f64,
}

pub fn gamma_m(s: f64, a: f64) -> Result<GammaM> {
    let s = nonneg("s", s)?;
    let a = nonneg("a", a)?;
    let (ca2, sa2) = (a.cosh().powi(2), a.sinh().powi(2));
    let (cs2, ss2) = (s.cosh().powi(2), s.sinh().powi(2));
    // (1 + x) / (1 - x) with x = sech^2 a tanh^2 s, cleared of denominators
    let mn = (ca2 * cs2 + ss2) / (1.0 + sa2 * cs2);
    Ok(GammaM {
        n: mn,
        lbar: ca2 + mn * sa2,
        l: sa2 + mn * ca2,
        t: 0.5 * mn.acosh(),
    })
}

/// Pure three-mode state on `(LBar, L, N)` whose contangles bound those of
/// the reduced four-mode state from above.
pub fn gamma_p(s: f64, a: f64) -> Result<CovMatrix> {
    let gm = gamma_m(s, a)?;
    let sa = two_mode_squeezer(a, 0, 1, 3)?;
    let st = two_mode_squeezer(gm.t, 1, 2, 3)?;
    apply_congruence(&sa.compose(&st)?, &CovMatrix::vacuum(3)?)
}

/// The two bound candidates that enter the minimum, and the third one that is
/// left out.
pub fn tripartite_bound_candidates(s: f64, a: f64) -> Result<[f64; 3]> {
    let gm = gamma_m(s, a)?;
    let tau_lbar_l = 4.0 * a * a;
    let tau_l_n = contangle_from_m(m_ln_equal(s, a)?)?;
    Ok([
        contangle_from_m(gm.lbar)? - tau_lbar_l,
        contangle_from_m(gm.n)? - tau_l_n,
        contangle_from_m(gm.l)? - tau_lbar_l - tau_l_n,
    ])
}

/// Upper bound on the residual tripartite contangle among anti-Leo, Leo and
/// Nadia.
pub fn tripartite_upper_bound(s: f64, a: f64) -> Result<f64> {
    let [x, y, _] = tripartite_bound_candidates(s, a)?;
    Ok(snap_nonneg(x.min(y)))
}

/// `(det sigma_LN)^{1/4}`, the doubly degenerate symplectic eigenvalue of the
/// Leo-Nadia state at equal accelerations.
pub fn ln_symplectic_eigenvalue(s: f64, a: f64) -> Result<f64> {
    let s = nonneg("s", s)?;
    let a = nonneg("a", a)?;
    let (ca2, sa2) = (a.cosh().powi(2), a.sinh().powi(2));
    Ok(((sa2 + (-2.0 * s).exp() * ca2) * (sa2 + (2.0 * s).exp() * ca2)).sqrt())
}

/// Leo-Nadia mutual information at equal accelerations.
pub fn mutual_info_ln(s: f64, a: f64) -> Result<f64> {
    let m = one_vs_rest_double(s, a, a)?;
    let nu = ln_symplectic_eigenvalue(s, a)?;
    Ok(snap_nonneg(
        2.0 * entropy_term_f(m.l)? - 2.0 * entropy_term_f(nu)?,
    ))
}

/// Mutual information lost by having both observers accelerate rather than
/// one: `I_AR(s, r = a) - I_LN(s, a)`.
pub fn classical_deficit(a: f64, s: f64) -> Result<f64> {
    Ok(mutual_info_ar(s, a)? - mutual_info_ln(s, a)?)
}

/// Closed-form summary of one point `(s, l, n)`. Fields defined only for equal
/// accelerations are `None` when `l != n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct DoubleObserverReport {
    pub s: f64,
    pub l: f64,
    pub n: f64,
    pub pairwise: PairwiseM,
    pub one_vs_rest: DoubleOneVsRest,
    pub tau_inertial: f64,
    pub tau_L_N: f64,
    pub tau_L_Lbar: f64,
    pub tau_N_Nbar: f64,
    pub r_eff: Option<Extended>,
    pub a_star: f64,
    /// Monogamy slack with probe anti-Leo, Leo, Nadia and anti-Nadia.
    pub monogamy: [f64; 4],
    pub residual_multipartite: Option<f64>,
    pub tripartite_upper_bound: Option<f64>,
    pub mutual_info_LN: Option<f64>,
    pub deficit: Option<f64>,
}

impl DoubleObserverReport {
    pub fn compute(s: f64, l: f64, n: f64) -> Result<Self> {
        let pw = pairwise_m_double(s, l, n)?;
        let ovr = one_vs_rest_double(s, l, n)?;
        let tau_ln = contangle_from_m(pw.m_L_N)?;
        let tau_ll = 4.0 * l * l;
        let tau_nn = 4.0 * n * n;
        let monogamy = [
            check_monogamy(contangle_from_m(ovr.lbar)?, &[tau_ll, 0.0, 0.0])?,
            check_monogamy(contangle_from_m(ovr.l)?, &[tau_ll, tau_ln, 0.0])?,
            check_monogamy(contangle_from_m(ovr.n)?, &[tau_nn, tau_ln, 0.0])?,
            check_monogamy(contangle_from_m(ovr.nbar)?, &[tau_nn, 0.0, 0.0])?,
        ];
        let equal = l == n;
        let when_equal = |f: fn(f64, f64) -> Result<f64>| -> Result<Option<f64>> {
            if equal {
                f(s, l).map(Some)
            } else {
                Ok(None)
            }
        };
        Ok(Self {
            s,
            l,
            n,
            pairwise: pw,
            one_vs_rest: ovr,
            tau_inertial: 4.0 * s * s,
            tau_L_N: tau_ln,
            tau_L_Lbar: tau_ll,
            tau_N_Nbar: tau_nn,
            r_eff: if s > 0.0 {
                Some(r_effective(s, l, n)?)
            } else {
                None
            },
            a_star: a_star(s)?,
            monogamy,
            residual_multipartite: when_equal(residual_multipartite)?,
            tripartite_upper_bound: when_equal(tripartite_upper_bound)?,
            mutual_info_LN: when_equal(mutual_info_ln)?,
            deficit: if equal {
                Some(classical_deficit(l, s)?)
            } else {
                None
            },
        })
    }
}

/// Alice-Rob contangle at the effective acceleration, for checking
/// [`r_effective`].
pub fn contangle_at_r_eff(s: f64, l: f64, n: f64) -> Result<Option<f64>> {
    match r_effective(s, l, n)? {
        Extended::Finite(r) => Ok(Some(contangle_ar(s, r)?.contangle)),
        Extended::Infinite => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::is_bona_fide;

    #[test]
    fn pairwise_values() {
        let pw = pairwise_m_double(0.7, 0.4, 1.1).unwrap();
        assert_eq!((pw.m_L_Nbar, pw.m_N_Lbar, pw.m_Lbar_Nbar), (1.0, 1.0, 1.0));
        assert!((pw.m_L_Lbar - 0.8f64.cosh()).abs() < 1e-15);
        assert_eq!(m_ln(2.0, 1.0, 1.0).unwrap(), 1.0);
        let s = 1.4;
        assert!((m_ln(s, 0.0, 0.0).unwrap() - (2.0 * s).cosh()).abs() < 1e-12);
    }

    #[test]
    fn m_ln_boundary_is_exact() {
        // choose n so that tanh s = sinh l sinh n
        let (s, l) = (0.8f64, 0.6f64);
        let n = (s.tanh() / f64::sinh(l)).asinh();
        assert!((m_ln_entangled_branch(s, l, n) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn r_eff_values() {
        assert_eq!(r_effective(1.0, 0.0, 0.0).unwrap(), Extended::Finite(0.0));
        let (s, l) = (1.0f64, 0.5f64);
        let n = (s.tanh() / f64::sinh(l)).asinh();
        assert_eq!(r_effective(s, l, n).unwrap(), Extended::Infinite);
        let via = contangle_at_r_eff(1.0, 0.3, 0.3).unwrap().unwrap();
        let direct = contangle_ln(1.0, 0.3, 0.3).unwrap().contangle;
        assert!((via - direct).abs() < 1e-9);
        assert!(r_effective(0.0, 0.1, 0.1).is_err());
    }

    #[test]
    fn frequency_threshold() {
        let aleph = 2.0 * PI;
        let ln2 = 2f64.ln();
        assert!(frequency_separability(ln2 - 1e-6, ln2 - 1e-6, aleph).unwrap());
        assert!(!frequency_separability(ln2 + 1e-6, ln2 + 1e-6, aleph).unwrap());
        assert!(!frequency_separability(100.0, 100.0, 1.0).unwrap());
        assert!(frequency_separability(1e-9, 3.0, 1.0).unwrap());
        assert!(frequency_separability(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn infinite_s_limit() {
        let l: f64 = 0.7;
        let n = (1.0 / l.sinh()).asinh();
        assert_eq!(m_ln_infinite_s(l, n).unwrap(), 1.0);
        assert!(m_ln_infinite_s(0.5, 0.5).unwrap() > 1.0);
        assert!(m_ln_infinite_s(0.0, 0.0).is_err());
        for &(l, n) in &[(0.5, 0.5), (0.2, 0.9), (0.1, 0.05)] {
            let a = m_ln_infinite_s(l, n).unwrap();
            let b = m_ln(30.0, l, n).unwrap();
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn a_star_values() {
        assert_eq!(a_star(0.0).unwrap(), 0.0);
        assert!((a_star(1.0).unwrap() - 0.788432006034854).abs() < 1e-12);
        assert!((a_star(1e6).unwrap() - 1f64.asinh()).abs() < 1e-6);
    }

    #[test]
    fn m_ln_equal_values() {
        let s = 1.0;
        assert!((m_ln_equal(s, 0.0).unwrap() - 2f64.cosh()).abs() < 1e-12);
        let a = a_star(s).unwrap();
        assert!((m_ln_equal_branch(s, a) - 1.0).abs() < 1e-9);
        assert_eq!(m_ln_equal(s, a).unwrap(), 1.0);
        assert_eq!(m_ln_equal(2.0, 1.0).unwrap(), 1.0);
        for &(s, a) in &[(0.5, 0.1), (1.0, 0.5), (3.0, 0.7), (2.0, 1.2)] {
            assert!((m_ln_equal(s, a).unwrap() - m_ln(s, a, a).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn residual_multipartite_values() {
        assert_eq!(residual_multipartite(1.0, 0.0).unwrap(), 0.0);
        let v = residual_multipartite(2.0, 7.0).unwrap();
        assert!((v - 81.22263150684926).abs() < 1e-8);
        assert!(residual_multipartite(0.5, 0.5).unwrap() > 0.0);
    }

    #[test]
    fn bound_at_zero_acceleration() {
        for &s in &[0.5, 1.0, 2.0] {
            assert!(tripartite_upper_bound(s, 0.0).unwrap().abs() < 1e-12);
        }
        assert!(tripartite_upper_bound(1.0, 5.0).unwrap() < 1e-2);
    }

    #[test]
    fn gamma_p_is_pure_and_below_sigma() {
        use crate::phase_space::ModeIndexSet;
        use crate::rindler::build_double_observer_cm;
        for &(s, a) in &[(0.5, 0.5), (1.0, 1.0), (2.0, 0.3), (1.5, 2.0)] {
            let gp = gamma_p(s, a).unwrap();
            assert!(is_bona_fide(&gp, 1e-9));
            let eta = gp.symplectic_eigenvalues().unwrap();
            assert!(eta.iter().all(|e| (e - 1.0).abs() < 1e-8));
            let sig = build_double_observer_cm(s, a, a).unwrap();
            let sig3 = sig
                .reduce(&ModeIndexSet::new(vec![0, 1, 2]).unwrap())
                .unwrap();
            let diff = sig3.as_matrix() - gp.as_matrix();
            let min = diff.symmetric_eigenvalues().min();
            assert!(min >= -1e-9, "s={s} a={a} min={min}");
            let gm = gamma_m(s, a).unwrap();
            assert!((gp.local_det(2).sqrt() - gm.n).abs() < 1e-9 * gm.n);
            assert!((gp.local_det(0).sqrt() - gm.lbar).abs() < 1e-9 * gm.lbar);
            assert!((gp.local_det(1).sqrt() - gm.l).abs() < 1e-9 * gm.l);
        }
    }

    #[test]
    fn mutual_info_ln_values() {
        let f2 = entropy_term_f(2f64.cosh()).unwrap();
        assert!((mutual_info_ln(1.0, 0.0).unwrap() - 2.0 * f2).abs() < 1e-12);
        assert!(mutual_info_ln(0.0, 1.3).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mutual_info_ln_matches_expanded_form() {
        for &(s, a) in &[(0.5f64, 0.5f64), (1.0, 1.0), (2.0, 0.3)] {
            let (ca2, cs2, sa2) = (a.cosh().powi(2), s.cosh().powi(2), a.sinh().powi(2));
            let c2s = (2.0 * s).cosh();
            let q = c2s * ca2 + sa2 - 1.0;
            let w = (2.0 * c2s * (2.0 * a).sinh().powi(2) + (4.0 * a).cosh() + 3.0).sqrt();
            let expanded = 2.0 * ca2 * cs2 * (ca2 * cs2).ln() - q * (0.5 * q).ln()
                + 0.5 * (w - 2.0) * (w - 2.0).ln()
                - 0.5 * (w + 2.0) * (w + 2.0).ln()
                + 16f64.ln();
            assert!((mutual_info_ln(s, a).unwrap() - expanded).abs() < 1e-10);
        }
    }

    #[test]
    fn deficit_values() {
        assert!(classical_deficit(0.0, 1.0).unwrap().abs() < 1e-12);
        assert!((classical_deficit(1.0, 20.0).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn report_fields() {
        let rep = DoubleObserverReport::compute(2.0, 7.0, 7.0).unwrap();
        assert!((rep.residual_multipartite.unwrap() - 81.2).abs() < 0.05);
        assert_eq!(rep.tau_inertial, 16.0);
        let rep = DoubleObserverReport::compute(1.0, 0.2, 0.4).unwrap();
        assert!(rep.residual_multipartite.is_none());
        assert!(rep.monogamy.iter().all(|&x| x >= -1e-9));
    }
}
