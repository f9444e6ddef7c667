//! Unruh acceleration-to-squeezing map and the covariance matrices seen by one
//! or two uniformly accelerated observers.
//!
//! Natural units throughout (`c = k_B = 1`). A field mode of frequency `omega`
//! seen by an observer of proper acceleration `aleph` is two-mode squeezed
//! across the two Rindler wedges with `cosh r = (1 - exp(-2 pi omega / aleph))^{-1/2}`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{nonneg, positive, Error, Result};
use crate::info_measures::pure_state_m;
use crate::phase_space::{
    apply_congruence, symplectic_eigenvalues, two_mode_squeezer, CovMatrix, SympTransform,
};

/// Acceleration, mode frequency and the squeezing they induce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccelSpec {
    acceleration: Option<f64>,
    frequency: Option<f64>,
    squeezing: f64,
}

impl AccelSpec {
    pub fn from_kinematics(acceleration: f64, frequency: f64) -> Result<Self> {
        let squeezing = accel_to_squeezing(acceleration, frequency)?;
        Ok(Self {
            acceleration: Some(acceleration),
            frequency: Some(frequency),
            squeezing,
        })
    }

    /// Dimensionless spec carrying only the squeezing parameter.
    pub fn from_squeezing(r: f64) -> Result<Self> {
        Ok(Self {
            acceleration: None,
            frequency: None,
            squeezing: nonneg("r", r)?,
        })
    }

    pub fn squeezing(&self) -> f64 {
        self.squeezing
    }

    pub fn acceleration(&self) -> Option<f64> {
        self.acceleration
    }

    pub fn frequency(&self) -> Option<f64> {
        self.frequency
    }

    /// `aleph / 2 pi`.
    pub fn unruh_temperature(&self) -> Option<f64> {
        self.acceleration.map(|a| a / (2.0 * PI))
    }
}

/// Squeezing `r` for acceleration `aleph` and frequency `omega`.
///
/// Uses `tanh r = exp(-pi omega / aleph)`, which is the same relation in a
/// form that stays accurate both for tiny and for large `r`.
pub fn accel_to_squeezing(acceleration: f64, frequency: f64) -> Result<f64> {
    let aleph = positive("acceleration", acceleration)?;
    let omega = positive("frequency", frequency)?;
    let half = PI * omega / aleph;
    let t = (-half).exp();
    // atanh t = 0.5 ln((1 + t) / (1 - t)), with 1 - t = -expm1(-half)
    let r = 0.5 * ((1.0 + t) / -(-half).exp_m1()).ln();
    if !r.is_finite() {
        return Err(Error::Domain {
            name: "frequency / acceleration",
            value: omega / aleph,
            domain: "large enough for a finite squeezing",
        });
    }
    Ok(r)
}

/// Inverse of [`accel_to_squeezing`]: the ratio `omega / aleph` giving `r`.
pub fn squeezing_to_ratio(r: f64) -> Result<f64> {
    let r = positive("r", r)?;
    Ok(-r.tanh().ln() / PI)
}

/// Named party of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    /// Inertial Alice.
    A,
    /// Accelerated Rob, region I.
    R,
    /// Anti-Rob, region II.
    RBar,
    /// Anti-Leo, region II.
    LBar,
    /// Leo, region I.
    L,
    /// Nadia, region I.
    N,
    /// Anti-Nadia, region II.
    NBar,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::A => "A",
            Role::R => "R",
            Role::RBar => "Rbar",
            Role::LBar => "Lbar",
            Role::L => "L",
            Role::N => "N",
            Role::NBar => "Nbar",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Single,
    Double,
}

/// Role-to-mode-index assignment. The orders are fixed: `A, R, RBar` and
/// `LBar, L, N, NBar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioLayout {
    scenario: Scenario,
    roles: &'static [Role],
}

const SINGLE_ROLES: [Role; 3] = [Role::A, Role::R, Role::RBar];
const DOUBLE_ROLES: [Role; 4] = [Role::LBar, Role::L, Role::N, Role::NBar];

impl ScenarioLayout {
    pub fn single() -> Self {
        Self {
            scenario: Scenario::Single,
            roles: &SINGLE_ROLES,
        }
    }

    pub fn double() -> Self {
        Self {
            scenario: Scenario::Double,
            roles: &DOUBLE_ROLES,
        }
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn n_modes(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[Role] {
        self.roles
    }

    pub fn index(&self, role: Role) -> Result<usize> {
        self.roles
            .iter()
            .position(|&r| r == role)
            .ok_or(Error::InvalidPartition(format!(
                "role {role} is not part of this scenario"
            )))
    }

    pub fn role(&self, index: usize) -> Option<Role> {
        self.roles.get(index).copied()
    }
}

/// Three-mode state `(A, R, RBar)`: a two-mode squeezed pair `(A, R)` with
/// squeezing `s`, then Rob's Rindler squeezer `r` between `R` and `RBar`.
pub fn build_single_observer_cm(s: f64, r: f64) -> Result<CovMatrix> {
    let s = nonneg("s", s)?;
    let r = nonneg("r", r)?;
    let inertial = two_mode_squeezer(s, 0, 1, 3)?;
    let rindler = two_mode_squeezer(r, 1, 2, 3)?;
    let total = rindler.compose(&inertial)?;
    apply_congruence(&total, &CovMatrix::vacuum(3)?)
}

/// Four-mode state `(LBar, L, N, NBar)`: squeezing `s` between `L` and `N`,
/// then the Rindler squeezers `l` on `(LBar, L)` and `n` on `(N, NBar)`.
pub fn build_double_observer_cm(s: f64, l: f64, n: f64) -> Result<CovMatrix> {
    let s = nonneg("s", s)?;
    let l = nonneg("l", l)?;
    let n = nonneg("n", n)?;
    let inertial = two_mode_squeezer(s, 1, 2, 4)?;
    let leo = two_mode_squeezer(l, 0, 1, 4)?;
    let nadia = two_mode_squeezer(n, 2, 3, 4)?;
    let total: SympTransform = leo.compose(&nadia)?.compose(&inertial)?;
    apply_congruence(&total, &CovMatrix::vacuum(4)?)
}

/// The single-observer state assembled block by block from its closed form.
pub fn single_observer_cm_closed_form(s: f64, r: f64) -> Result<CovMatrix> {
    let s = nonneg("s", s)?;
    let r = nonneg("r", r)?;
    let (c2s, s2s) = ((2.0 * s).cosh(), (2.0 * s).sinh());
    let (ch, sh) = (r.cosh(), r.sinh());
    let mut b = Blocks::new(3);
    b.diag(0, c2s);
    b.diag(1, c2s * ch * ch + sh * sh);
    b.diag(2, ch * ch + c2s * sh * sh);
    b.z(0, 1, ch * s2s);
    b.id(0, 2, sh * s2s);
    b.z(1, 2, s.cosh().powi(2) * (2.0 * r).sinh());
    Ok(b.finish())
}

/// The double-observer state assembled block by block from its closed form.
pub fn double_observer_cm_closed_form(s: f64, l: f64, n: f64) -> Result<CovMatrix> {
    let s = nonneg("s", s)?;
    let l = nonneg("l", l)?;
    let n = nonneg("n", n)?;
    let (c2s, s2s, cs2) = ((2.0 * s).cosh(), (2.0 * s).sinh(), s.cosh().powi(2));
    let (cl, sl, cn, sn) = (l.cosh(), l.sinh(), n.cosh(), n.sinh());
    let (lbar, lm, nm, nbar) = (0, 1, 2, 3);
    let mut b = Blocks::new(4);
    b.diag(lbar, cl * cl + c2s * sl * sl);
    b.diag(nbar, cn * cn + c2s * sn * sn);
    b.diag(lm, cl * cl * c2s + sl * sl);
    b.diag(nm, cn * cn * c2s + sn * sn);
    b.z(lbar, lm, cs2 * (2.0 * l).sinh());
    b.z(nm, nbar, cs2 * (2.0 * n).sinh());
    b.id(lbar, nm, cn * s2s * sl);
    b.id(lm, nbar, cl * s2s * sn);
    b.z(lbar, nbar, s2s * sl * sn);
    b.z(lm, nm, cl * cn * s2s);
    Ok(b.finish())
}

/// `sqrt(det)` of the probe's reduction, for a globally pure state.
pub fn pure_one_vs_rest_m(sigma: &CovMatrix, probe: usize) -> Result<f64> {
    let eta = symplectic_eigenvalues(sigma)?;
    let dev = eta.iter().map(|e| (e - 1.0).abs()).fold(0.0, f64::max);
    if dev > 1e-6 {
        return Err(Error::NotPure(dev));
    }
    pure_state_m(sigma, probe)
}

struct Blocks {
    n: usize,
    m: DMatrix<f64>,
}

impl Blocks {
    fn new(n: usize) -> Self {
        Self {
            n,
            m: DMatrix::zeros(2 * n, 2 * n),
        }
    }

    fn put(&mut self, i: usize, j: usize, blk: Matrix2<f64>) {
        self.m.fixed_view_mut::<2, 2>(2 * i, 2 * j).copy_from(&blk);
        self.m
            .fixed_view_mut::<2, 2>(2 * j, 2 * i)
            .copy_from(&blk.transpose());
    }

    fn diag(&mut self, i: usize, v: f64) {
        self.put(i, i, Matrix2::identity() * v);
    }

    fn id(&mut self, i: usize, j: usize, v: f64) {
        self.put(i, j, Matrix2::identity() * v);
    }

    fn z(&mut self, i: usize, j: usize, v: f64) {
        self.put(i, j, Matrix2::new(v, 0.0, 0.0, -v));
    }

    fn finish(self) -> CovMatrix {
        CovMatrix::symmetrized(self.n, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::ModeIndexSet;

    #[test]
    fn inertial_limit() {
        let r = accel_to_squeezing(1.0, 10.0).unwrap();
        assert!((0.0..1e-13).contains(&r));
    }

    #[test]
    fn half_boltzmann_factor() {
        // exp(-2 pi omega / aleph) = 1/2  =>  cosh r = sqrt 2
        let ratio = 2f64.ln() / (2.0 * PI);
        let r = accel_to_squeezing(1.0, ratio).unwrap();
        assert!((r - 2f64.sqrt().acosh()).abs() < 1e-14);
        assert!((r - 0.881373587019543).abs() < 1e-12);
    }

    #[test]
    fn round_trip_and_cosh_relation() {
        for &(aleph, omega) in &[(1.0, 0.3), (2.0 * PI, 1.0), (10.0 * PI, 5.0), (0.5, 0.01)] {
            let spec = AccelSpec::from_kinematics(aleph, omega).unwrap();
            let r = spec.squeezing();
            assert!((squeezing_to_ratio(r).unwrap() / (omega / aleph) - 1.0).abs() < 1e-10);
            let want = (1.0 - (-2.0 * PI * omega / aleph).exp()).powf(-0.5);
            assert!((r.cosh() / want - 1.0).abs() < 1e-10);
            assert!((spec.unruh_temperature().unwrap() - aleph / (2.0 * PI)).abs() < 1e-15);
        }
    }

    #[test]
    fn squeezing_grows_with_acceleration() {
        let mut prev = 0.0;
        for k in 1..50 {
            let r = accel_to_squeezing(0.2 * k as f64, 1.0).unwrap();
            assert!(r > prev);
            prev = r;
        }
    }

    #[test]
    fn accel_errors() {
        assert!(accel_to_squeezing(0.0, 1.0).is_err());
        assert!(accel_to_squeezing(1.0, -1.0).is_err());
        assert!(squeezing_to_ratio(0.0).is_err());
        assert!(AccelSpec::from_squeezing(-0.1).is_err());
        assert_eq!(
            AccelSpec::from_squeezing(0.4).unwrap().unruh_temperature(),
            None
        );
    }

    #[test]
    fn layouts() {
        let s = ScenarioLayout::single();
        assert_eq!(s.index(Role::RBar).unwrap(), 2);
        assert!(s.index(Role::L).is_err());
        let d = ScenarioLayout::double();
        assert_eq!(d.roles(), &[Role::LBar, Role::L, Role::N, Role::NBar]);
        assert_eq!(d.role(2), Some(Role::N));
    }

    #[test]
    fn single_limits() {
        let tms = |s: f64| {
            let sq = two_mode_squeezer(s, 0, 1, 2).unwrap();
            apply_congruence(&sq, &CovMatrix::vacuum(2).unwrap()).unwrap()
        };
        let sig = build_single_observer_cm(0.7, 0.0).unwrap();
        let ar = sig.reduce(&ModeIndexSet::new(vec![0, 1]).unwrap()).unwrap();
        assert!((ar.as_matrix() - tms(0.7).as_matrix()).amax() < 1e-14);
        assert!((sig.block(2, 2) - Matrix2::identity()).amax() < 1e-15);

        let sig = build_single_observer_cm(0.0, 0.4).unwrap();
        let rr = sig.reduce(&ModeIndexSet::new(vec![1, 2]).unwrap()).unwrap();
        assert!((rr.as_matrix() - tms(0.4).as_matrix()).amax() < 1e-14);
    }

    #[test]
    fn rbar_determinant_at_one_one() {
        let sig = build_single_observer_cm(1.0, 1.0).unwrap();
        let want = 1f64.cosh().powi(2) + 2f64.cosh() * 1f64.sinh().powi(2);
        assert!((want - 7.577_058_209_004_122).abs() < 1e-12);
        assert!((sig.local_det(2) - want * want).abs() < 1e-10 * want * want);
    }

    #[test]
    fn closed_forms_match_construction() {
        for &(s, r) in &[(0.25, 0.5), (1.0, 1.0), (3.0, 3.0), (2.0, 0.0)] {
            let a = build_single_observer_cm(s, r).unwrap();
            let b = single_observer_cm_closed_form(s, r).unwrap();
            assert!(
                (a.as_matrix() - b.as_matrix()).amax() < 1e-10,
                "s={s} r={r}"
            );
        }
        for &(s, l, n) in &[(0.25, 0.5, 0.75), (1.0, 1.0, 1.0), (3.0, 3.0, 0.25)] {
            let a = build_double_observer_cm(s, l, n).unwrap();
            let b = double_observer_cm_closed_form(s, l, n).unwrap();
            assert!((a.as_matrix() - b.as_matrix()).amax() < 1e-10);
        }
    }

    #[test]
    fn double_limits() {
        let sig = build_double_observer_cm(0.0, 0.3, 0.6).unwrap();
        // no coupling between the (LBar, L) and (N, NBar) pairs
        for i in 0..2 {
            for j in 2..4 {
                assert!(sig.block(i, j).amax() < 1e-15);
            }
        }
        let sig = build_double_observer_cm(0.9, 0.0, 0.0).unwrap();
        assert!((sig.block(0, 0) - Matrix2::identity()).amax() < 1e-15);
        assert!((sig.local_det(1).sqrt() - 1.8f64.cosh()).abs() < 1e-12);
    }

    #[test]
    fn one_vs_rest_values() {
        let s = 1.3;
        let sig = build_single_observer_cm(s, 0.8).unwrap();
        assert!((pure_one_vs_rest_m(&sig, 0).unwrap() - (2.0 * s).cosh()).abs() < 1e-12);
        let a = 0.6;
        let sig = build_double_observer_cm(s, a, a).unwrap();
        let want = a.cosh().powi(2) + (2.0 * s).cosh() * a.sinh().powi(2);
        assert!((pure_one_vs_rest_m(&sig, 0).unwrap() - want).abs() < 1e-12);
        let sig = build_double_observer_cm(s, 0.0, 0.0).unwrap();
        assert!((pure_one_vs_rest_m(&sig, 0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_vs_rest_rejects_mixed() {
        let sig = build_single_observer_cm(1.0, 1.0).unwrap();
        let ar = sig.reduce(&ModeIndexSet::new(vec![0, 1]).unwrap()).unwrap();
        assert!(matches!(pure_one_vs_rest_m(&ar, 0), Err(Error::NotPure(_))));
    }
}
