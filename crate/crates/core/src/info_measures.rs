//! Scalar information quantities on covariance matrices.
//!
//! Entropies use the natural logarithm. Contangles are in squared-arcsinh
//! units: `g[x] = asinh^2(sqrt(x - 1))`, so a pure two-mode squeezed state of
//! squeezing `s` carries `4 s^2`.

use nalgebra::{Matrix2, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{nonneg, Error, Result};
use crate::phase_space::{partial_transpose, symplectic_eigenvalues, CovMatrix, ModeIndexSet};

/// m-values in `[1 - CLAMP_TOL, 1)` are treated as exactly separable.
pub const CLAMP_TOL: f64 = 1e-9;

/// Where an m-parameter came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    NumericCm,
}

/// Entanglement of one bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub m_parameter: f64,
    pub contangle: f64,
    pub separable: bool,
    pub source: Source,
}

impl MeasureReport {
    pub fn from_m(m: f64, source: Source) -> Result<Self> {
        let m = clamp_m(m)?;
        Ok(Self {
            m_parameter: m,
            contangle: contangle_from_m(m)?,
            separable: m == 1.0,
            source,
        })
    }
}

/// Snaps m-values just below 1 onto 1; rejects anything lower or non-finite.
pub fn clamp_m(m: f64) -> Result<f64> {
    if m.is_nan() || m < 1.0 - CLAMP_TOL {
        return Err(Error::BelowSeparable(m));
    }
    Ok(m.max(1.0))
}

/// Like [`clamp_m`], but also snaps values within `CLAMP_TOL` above 1.
pub(crate) fn snap_separable(m: f64) -> Result<f64> {
    let m = clamp_m(m)?;
    Ok(if m - 1.0 <= CLAMP_TOL { 1.0 } else { m })
}

/// `g[x] = asinh^2(sqrt(x - 1))` for `x >= 1`.
pub fn g(x: f64) -> Result<f64> {
    if x.is_nan() || x < 1.0 - CLAMP_TOL {
        return Err(Error::BelowSeparable(x));
    }
    Ok((x - 1.0).max(0.0).sqrt().asinh().powi(2))
}

/// `g[m^2]`, written as `acosh(m)^2` in a form that stays accurate near 1.
pub fn contangle_from_m(m: f64) -> Result<f64> {
    let m = clamp_m(m)?;
    if m.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let c = if m < 1e8 {
        ((m - 1.0) * (m + 1.0)).sqrt().asinh()
    } else {
        m.acosh()
    };
    Ok(c * c)
}

/// Entropy of a single mode with symplectic eigenvalue `x`:
/// `f(x) = (x+1)/2 ln((x+1)/2) - (x-1)/2 ln((x-1)/2)`.
pub fn entropy_term_f(x: f64) -> Result<f64> {
    if x.is_nan() || x < 1.0 - CLAMP_TOL {
        return Err(Error::EntropyDomain(x));
    }
    let x = x.max(1.0);
    let u = 0.5 * (x - 1.0);
    let v = 0.5 * (x + 1.0);
    if u == 0.0 {
        return Ok(0.0);
    }
    Ok(v.ln() + u * (1.0 / u).ln_1p())
}

/// Von Neumann entropy of a Gaussian state, summed over its symplectic spectrum.
pub fn von_neumann_entropy(sigma: &CovMatrix) -> Result<f64> {
    symplectic_eigenvalues(sigma)?
        .into_iter()
        .map(entropy_term_f)
        .sum()
}

/// Mutual information between the two modes of a two-mode state.
///
/// `split` names the first party; the other mode is the second. The value
/// does not depend on which mode is named.
pub fn mutual_information(sigma: &CovMatrix, split: &ModeIndexSet) -> Result<f64> {
    require_two_modes(sigma)?;
    validate_one_vs_rest(sigma, split)?;
    let a = sigma.local_det(0).max(0.0).sqrt();
    let b = sigma.local_det(1).max(0.0).sqrt();
    let eta = symplectic_eigenvalues(sigma)?;
    Ok(entropy_term_f(a)? + entropy_term_f(b)? - entropy_term_f(eta[0])? - entropy_term_f(eta[1])?)
}

/// PPT test for a `1 x (N-1)` bipartition.
pub fn ppt_separable(sigma: &CovMatrix, transposed: &ModeIndexSet, tol: f64) -> Result<bool> {
    validate_one_vs_rest(sigma, transposed)?;
    let pt = partial_transpose(sigma, transposed)?;
    let eta = symplectic_eigenvalues(&pt)?;
    Ok(eta[0] >= 1.0 - tol)
}

/// `sum_i max(0, -ln eta_i)` over the partially transposed spectrum.
pub fn log_negativity(sigma: &CovMatrix, transposed: &ModeIndexSet) -> Result<f64> {
    validate_one_vs_rest(sigma, transposed)?;
    let pt = partial_transpose(sigma, transposed)?;
    Ok(symplectic_eigenvalues(&pt)?
        .into_iter()
        .map(|e| (-e.ln()).max(0.0))
        .sum())
}

/// Entropy of entanglement of a pure two-mode squeezed state, `f(cosh 2s)`.
pub fn entropy_of_entanglement(s: f64) -> Result<f64> {
    let s = nonneg("s", s)?;
    entropy_term_f((2.0 * s).cosh())
}

/// Left minus right side of the monogamy inequality.
pub fn check_monogamy(tau_one_vs_rest: f64, taus_pairwise: &[f64]) -> Result<f64> {
    let lhs = nonneg("tau_one_vs_rest", tau_one_vs_rest)?;
    let mut rhs = 0.0;
    for &t in taus_pairwise {
        rhs += nonneg("tau_pairwise", t)?;
    }
    Ok(lhs - rhs)
}

/// m of a pure bipartition: square root of the probe's local determinant.
pub fn pure_state_m(sigma: &CovMatrix, probe: usize) -> Result<f64> {
    if probe >= sigma.n_modes() {
        return Err(Error::ModeOutOfRange {
            mode: probe,
            n_modes: sigma.n_modes(),
        });
    }
    clamp_m(sigma.local_det(probe).max(0.0).sqrt())
}

/// Closed-form m of a two-mode Gaussian maximally entangled mixed state,
/// written in terms of the local invariants `a = sqrt(det sigma_1)` and
/// `b = sqrt(det sigma_2)`: `m = (a + b) / (|a - b| + 2)`.
///
/// Only meaningful for states whose smaller symplectic eigenvalue is 1.
pub fn gmemms_m(sigma: &CovMatrix) -> Result<f64> {
    require_two_modes(sigma)?;
    let a = sigma.local_det(0).max(0.0).sqrt();
    let b = sigma.local_det(1).max(0.0).sqrt();
    snap_separable((a + b) / ((a - b).abs() + 2.0))
}

/// m of a two-mode state with no position-momentum correlations, computed
/// from the matrix alone.
///
/// The optimal pure state `gamma <= sigma` is searched among states with the
/// same block structure. Writing `gamma = X (+) X^-1` on the position and
/// momentum sectors, the constraint becomes `P0 <= X <= Sx` with
/// `P0 = Sp^-1`, and the optimum lies on the family
/// `X = P0 + D^{1/2} w w^T D^{1/2}`, `D = Sx - P0`, `w` a unit vector. The
/// one-dimensional search over the angle of `w` is a dense scan followed by
/// golden-section refinement.
pub fn two_mode_m_numeric(sigma: &CovMatrix) -> Result<f64> {
    require_two_modes(sigma)?;
    let m = sigma.as_matrix();
    let scale = m.amax().max(1.0);
    let (xs, ps) = ([0usize, 2], [1usize, 3]);
    for &i in &xs {
        for &j in &ps {
            if m[(i, j)].abs() > 1e-12 * scale {
                return Err(Error::Unsupported(
                    "numeric contangle needs a state without x-p correlations",
                ));
            }
        }
    }
    if ppt_separable(sigma, &ModeIndexSet::single(1), CLAMP_TOL)? {
        return Ok(1.0);
    }

    let sx = Matrix2::new(m[(0, 0)], m[(0, 2)], m[(2, 0)], m[(2, 2)]);
    let sp = Matrix2::new(m[(1, 1)], m[(1, 3)], m[(3, 1)], m[(3, 3)]);
    let p0 = sp
        .try_inverse()
        .ok_or(Error::NotPositiveDefinite(sp.determinant()))?;
    let p0 = (p0 + p0.transpose()) * 0.5;
    let d = sx - p0;
    let eig = SymmetricEigen::new((d + d.transpose()) * 0.5);
    let top = eig.eigenvalues.amax();
    let mut lam = eig.eigenvalues;
    for l in lam.iter_mut() {
        if *l < -1e-8 * top.max(1.0) {
            return Err(Error::NotPositiveDefinite(*l));
        }
        if *l < 1e-10 * top {
            *l = 0.0;
        }
    }
    let root = eig.eigenvectors
        * Matrix2::from_diagonal(&lam.map(f64::sqrt))
        * eig.eigenvectors.transpose();

    let objective = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let u = root * nalgebra::Vector2::new(c, s);
        pure_m_squared(&(p0 + u * u.transpose()))
    };

    const SCAN: usize = 720;
    let step = std::f64::consts::PI / SCAN as f64;
    let (k_best, mut best) = (0..SCAN)
        .map(|k| (k, objective(k as f64 * step)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("scan is nonempty");
    let centre = k_best as f64 * step;
    best = best.min(golden_min(&objective, centre - step, centre + step));
    best = best.min(pure_m_squared(&p0)).min(pure_m_squared(&sx));
    snap_separable(best.max(1.0).sqrt())
}

/// Entanglement of a two-mode state read off its covariance matrix.
///
/// PPT-separable states get `m = 1`; pure states use the local determinant;
/// everything else goes through [`two_mode_m_numeric`].
pub fn two_mode_contangle(sigma: &CovMatrix) -> Result<MeasureReport> {
    require_two_modes(sigma)?;
    if ppt_separable(sigma, &ModeIndexSet::single(1), CLAMP_TOL)? {
        return MeasureReport::from_m(1.0, Source::NumericCm);
    }
    let eta = symplectic_eigenvalues(sigma)?;
    let m = if eta.iter().all(|e| (e - 1.0).abs() < 1e-9) {
        pure_state_m(sigma, 0)?
    } else {
        two_mode_m_numeric(sigma)?
    };
    MeasureReport::from_m(m, Source::NumericCm)
}

/// `det(local 1) det(local 2) / det(global)` for a pure two-mode state with
/// position block `X` and momentum block `X^-1`.
fn pure_m_squared(x: &Matrix2<f64>) -> f64 {
    let prod = x[(0, 0)] * x[(1, 1)];
    let det = prod - x[(0, 1)] * x[(1, 0)];
    if det <= 0.0 {
        f64::INFINITY
    } else {
        prod / det
    }
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..120 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    fc.min(fd)
}

fn require_two_modes(sigma: &CovMatrix) -> Result<()> {
    if sigma.n_modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: sigma.n_modes(),
        });
    }
    Ok(())
}

fn validate_one_vs_rest(sigma: &CovMatrix, part: &ModeIndexSet) -> Result<()> {
    let n = sigma.n_modes();
    part.check_range(n)?;
    if n < 2 {
        return Err(Error::InvalidPartition(
            "a single mode has no bipartition".to_owned(),
        ));
    }
    if part.len() != 1 && part.len() != n - 1 {
        return Err(Error::InvalidPartition(format!(
            "expected a 1 x {} split, got {} modes on one side",
            n - 1,
            part.len()
        )));
    }
    Ok(())
}
