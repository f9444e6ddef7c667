//! Real phase-space linear algebra for zero-mean Gaussian states.
//!
//! Quadratures are ordered `(x1, p1, x2, p2, ...)` and normalised so that the
//! commutator reads `[X_i, X_j] = 2i Omega_ij`. The vacuum covariance matrix is
//! therefore the identity and a state is physical iff every symplectic
//! eigenvalue is at least one.

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};

/// Largest asymmetry tolerated on input before a matrix is rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Largest entry of `S^T Omega S - Omega` tolerated for a symplectic transform.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Relative gap allowed between the two copies of each symplectic eigenvalue.
pub const PAIRING_TOL: f64 = 1e-8;

/// Ordered, duplicate-free list of mode indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeIndexSet(Vec<usize>);

impl ModeIndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyModeSet);
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnorderedModes);
        }
        Ok(Self(indices))
    }

    pub fn single(mode: usize) -> Self {
        Self(vec![mode])
    }

    /// All modes of an `n_modes` system.
    pub fn all(n_modes: usize) -> Result<Self> {
        Self::new((0..n_modes).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, mode: usize) -> bool {
        self.0.binary_search(&mode).is_ok()
    }

    /// Modes of an `n_modes` system not in this set.
    pub fn complement(&self, n_modes: usize) -> Result<Self> {
        self.check_range(n_modes)?;
        Self::new((0..n_modes).filter(|m| !self.contains(*m)).collect())
    }

    pub(crate) fn check_range(&self, n_modes: usize) -> Result<()> {
        match self.0.last() {
            Some(&m) if m >= n_modes => Err(Error::ModeOutOfRange { mode: m, n_modes }),
            _ => Ok(()),
        }
    }
}

/// Covariance matrix of an N-mode Gaussian state.
///
/// Construction only enforces shape and symmetry. Physicality is a separate
/// question answered by [`is_bona_fide`], since partially transposed matrices
/// share this type.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
}

impl CovMatrix {
    /// Wraps a `2N x 2N` matrix. Asymmetry up to [`SYMMETRY_TOL`] is averaged
    /// away; anything larger is rejected.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n_modes = phase_space_modes(&entries)?;
        let asym = max_asymmetry(&entries);
        if asym > SYMMETRY_TOL || asym.is_nan() {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self::symmetrized(n_modes, entries))
    }

    /// Row-major constructor, convenient for foreign callers.
    pub fn from_row_slice(n_modes: usize, data: &[f64]) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::NoModes);
        }
        let dim = 2 * n_modes;
        if data.len() != dim * dim {
            return Err(Error::BadShape {
                rows: data.len() / dim.max(1),
                cols: dim,
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, data))
    }

    /// Result of an operation that is symmetric in exact arithmetic.
    pub(crate) fn symmetrized(n_modes: usize, entries: DMatrix<f64>) -> Self {
        let sym = (&entries + entries.transpose()) * 0.5;
        Self {
            n_modes,
            entries: sym,
        }
    }

    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self {
            n_modes,
            entries: DMatrix::identity(2 * n_modes, 2 * n_modes),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    /// The 2x2 block coupling modes `i` and `j`.
    pub fn block(&self, i: usize, j: usize) -> Matrix2<f64> {
        self.entries.fixed_view::<2, 2>(2 * i, 2 * j).into_owned()
    }

    /// Determinant of the single-mode reduction of `mode`.
    pub fn local_det(&self, mode: usize) -> f64 {
        self.block(mode, mode).determinant()
    }

    pub fn det(&self) -> f64 {
        self.entries.determinant()
    }

    pub fn reduce(&self, keep: &ModeIndexSet) -> Result<Self> {
        reduce(self, keep)
    }

    pub fn partial_transpose(&self, transposed: &ModeIndexSet) -> Result<Self> {
        partial_transpose(self, transposed)
    }

    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        symplectic_eigenvalues(self)
    }

    pub fn is_bona_fide(&self, tol: f64) -> bool {
        is_bona_fide(self, tol)
    }
}

/// Linear map on phase space preserving the symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SympTransform {
    n_modes: usize,
    entries: DMatrix<f64>,
}

impl SympTransform {
    /// Checks `S^T Omega S = Omega` to [`SYMPLECTIC_TOL`].
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n_modes = phase_space_modes(&entries)?;
        let omega = omega(n_modes);
        let dev = (entries.transpose() * &omega * &entries - &omega).amax();
        if dev > SYMPLECTIC_TOL || dev.is_nan() {
            return Err(Error::NotSymplectic(dev));
        }
        Ok(Self { n_modes, entries })
    }

    pub fn identity(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self {
            n_modes,
            entries: DMatrix::identity(2 * n_modes, 2 * n_modes),
        })
    }

    /// Embeds a 2x2 real matrix of unit determinant acting on one mode.
    pub fn local(mode: usize, block: Matrix2<f64>, n_modes: usize) -> Result<Self> {
        check_mode(mode, n_modes)?;
        let dev = (block.determinant() - 1.0).abs();
        if dev > SYMPLECTIC_TOL {
            return Err(Error::NotSymplectic(dev));
        }
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        m.fixed_view_mut::<2, 2>(2 * mode, 2 * mode)
            .copy_from(&block);
        Ok(Self {
            n_modes,
            entries: m,
        })
    }

    /// Single-mode squeezer `diag(e^-r, e^r)` on `mode`.
    pub fn single_mode_squeezer(r: f64, mode: usize, n_modes: usize) -> Result<Self> {
        Self::local(mode, Matrix2::new((-r).exp(), 0.0, 0.0, r.exp()), n_modes)
    }

    /// Phase rotation by `theta` on `mode`.
    pub fn phase_rotation(theta: f64, mode: usize, n_modes: usize) -> Result<Self> {
        let (s, c) = theta.sin_cos();
        Self::local(mode, Matrix2::new(c, s, -s, c), n_modes)
    }

    /// Beam splitter with transmissivity `cos^2 theta` between modes `i` and `j`.
    pub fn beam_splitter(theta: f64, i: usize, j: usize, n_modes: usize) -> Result<Self> {
        check_pair(i, j, n_modes)?;
        let (s, c) = theta.sin_cos();
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        for q in 0..2 {
            let (a, b) = (2 * i + q, 2 * j + q);
            m[(a, a)] = c;
            m[(b, b)] = c;
            m[(a, b)] = s;
            m[(b, a)] = -s;
        }
        Ok(Self {
            n_modes,
            entries: m,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n_modes != other.n_modes {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes,
                found: other.n_modes,
            });
        }
        Ok(Self {
            n_modes: self.n_modes,
            entries: &self.entries * &other.entries,
        })
    }

    /// Max entry of `S^T Omega S - Omega`.
    pub fn symplectic_defect(&self) -> f64 {
        let omega = omega(self.n_modes);
        (self.entries.transpose() * &omega * &self.entries - &omega).amax()
    }
}

/// `Omega = (+) omega` with `omega = [[0, 1], [-1, 0]]`.
pub fn symplectic_form(n_modes: usize) -> Result<DMatrix<f64>> {
    if n_modes == 0 {
        return Err(Error::NoModes);
    }
    Ok(omega(n_modes))
}

fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// Two-mode squeezer `S_ij(r)` embedded in an `n_modes` system.
///
/// On `(x_i, p_i, x_j, p_j)` it acts as
/// `[[c, 0, s, 0], [0, c, 0, -s], [s, 0, c, 0], [0, -s, 0, c]]`
/// with `c = cosh r`, `s = sinh r`, and as the identity elsewhere.
pub fn two_mode_squeezer(r: f64, i: usize, j: usize, n_modes: usize) -> Result<SympTransform> {
    check_pair(i, j, n_modes)?;
    if !r.is_finite() {
        return Err(Error::Domain {
            name: "r",
            value: r,
            domain: "finite",
        });
    }
    let (c, s) = (r.cosh(), r.sinh());
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    let (xi, pi, xj, pj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
    m[(xi, xi)] = c;
    m[(pi, pi)] = c;
    m[(xj, xj)] = c;
    m[(pj, pj)] = c;
    m[(xi, xj)] = s;
    m[(xj, xi)] = s;
    m[(pi, pj)] = -s;
    m[(pj, pi)] = -s;
    Ok(SympTransform {
        n_modes,
        entries: m,
    })
}

/// `S sigma S^T`.
pub fn apply_congruence(s: &SympTransform, sigma: &CovMatrix) -> Result<CovMatrix> {
    if s.n_modes != sigma.n_modes {
        return Err(Error::DimensionMismatch {
            expected: sigma.n_modes,
            found: s.n_modes,
        });
    }
    let out = &s.entries * &sigma.entries * s.entries.transpose();
    Ok(CovMatrix::symmetrized(sigma.n_modes, out))
}

pub fn vacuum_cm(n_modes: usize) -> Result<CovMatrix> {
    CovMatrix::vacuum(n_modes)
}

/// Covariance matrix of the kept modes (the others are traced out).
pub fn reduce(sigma: &CovMatrix, keep: &ModeIndexSet) -> Result<CovMatrix> {
    keep.check_range(sigma.n_modes)?;
    let rows: Vec<usize> = keep
        .indices()
        .iter()
        .flat_map(|&m| [2 * m, 2 * m + 1])
        .collect();
    let dim = rows.len();
    let sub = DMatrix::from_fn(dim, dim, |a, b| sigma.entries[(rows[a], rows[b])]);
    Ok(CovMatrix {
        n_modes: keep.len(),
        entries: sub,
    })
}

/// Time reversal `p -> -p` on the listed modes.
pub fn partial_transpose(sigma: &CovMatrix, transposed: &ModeIndexSet) -> Result<CovMatrix> {
    transposed.check_range(sigma.n_modes)?;
    if transposed.len() == sigma.n_modes {
        return Err(Error::InvalidPartition(
            "cannot transpose every mode".to_owned(),
        ));
    }
    let mut out = sigma.entries.clone();
    for &m in transposed.indices() {
        let p = 2 * m + 1;
        out.row_mut(p).neg_mut();
        out.column_mut(p).neg_mut();
    }
    Ok(CovMatrix {
        n_modes: sigma.n_modes,
        entries: out,
    })
}

/// Symplectic spectrum in ascending order.
///
/// With the Cholesky factor `sigma = L L^T`, the congruence `L^T Omega L` is
/// real antisymmetric with eigenvalues `+-i eta_k`; its singular values are
/// the `eta_k`, each twice. Requires `sigma` positive definite, which holds
/// for every physical state and for its partial transposes.
pub fn symplectic_eigenvalues(sigma: &CovMatrix) -> Result<Vec<f64>> {
    let Some(chol) = sigma.entries.clone().cholesky() else {
        let min = sigma.entries.clone().symmetric_eigenvalues().min();
        return Err(Error::NotPositiveDefinite(min));
    };
    let l = chol.l();
    let m = l.transpose() * omega(sigma.n_modes) * &l;
    let m = (&m - m.transpose()) * 0.5;
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    pair_up(&mut sv)
}

/// Symplectic spectrum from the eigenvalues `+-i eta` of `Omega sigma`,
/// through a general (non-symmetric) eigensolver.
///
/// Numerically weaker than [`symplectic_eigenvalues`] on strongly squeezed
/// states, but independent of it; the test suite uses it as a cross-check.
pub fn symplectic_eigenvalues_general(sigma: &CovMatrix) -> Result<Vec<f64>> {
    let prod = omega(sigma.n_modes) * &sigma.entries;
    let mut mods: Vec<f64> = prod
        .complex_eigenvalues()
        .iter()
        .map(|z| z.im.abs())
        .collect();
    pair_up(&mut mods)
}

fn pair_up(values: &mut [f64]) -> Result<Vec<f64>> {
    values.sort_by(f64::total_cmp);
    values
        .chunks_exact(2)
        .map(|p| {
            let gap = (p[1] - p[0]).abs();
            if gap > PAIRING_TOL * p[1].max(1.0) {
                Err(Error::Pairing(gap))
            } else {
                Ok(0.5 * (p[0] + p[1]))
            }
        })
        .collect()
}

/// True iff the smallest symplectic eigenvalue is at least `1 - tol`.
pub fn is_bona_fide(sigma: &CovMatrix, tol: f64) -> bool {
    match symplectic_eigenvalues(sigma) {
        Ok(eta) => eta.first().is_some_and(|&e| e >= 1.0 - tol),
        Err(_) => false,
    }
}

fn phase_space_modes(m: &DMatrix<f64>) -> Result<usize> {
    let (rows, cols) = m.shape();
    if rows != cols || rows == 0 || rows % 2 != 0 {
        return Err(Error::BadShape { rows, cols });
    }
    Ok(rows / 2)
}

fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}

fn check_mode(mode: usize, n_modes: usize) -> Result<()> {
    if n_modes == 0 {
        return Err(Error::NoModes);
    }
    if mode >= n_modes {
        return Err(Error::ModeOutOfRange { mode, n_modes });
    }
    Ok(())
}

fn check_pair(i: usize, j: usize, n_modes: usize) -> Result<()> {
    check_mode(i, n_modes)?;
    check_mode(j, n_modes)?;
    if i == j {
        return Err(Error::SameMode(i));
    }
    Ok(())
}
