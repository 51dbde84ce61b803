//! Single-point polarization objects: Jones vectors, coherency matrices,
//! Stokes vectors, and the conversions among them.
//!
//! Physical polarization states are 2x2 Hermitian positive semidefinite
//! coherency matrices, or equivalently real Stokes 4-vectors inside the
//! forward light cone S0 > 0, S0^2 - S1^2 - S2^2 - S3^2 >= 0.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, hermiticity_residual};

/// Relative tolerance for accepting an input matrix as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-9;

/// Default tolerance for classifications, relative to the natural scale of
/// the quantity being classified (trace, S0^2, largest eigenvalue).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Transverse field amplitudes of a fully polarized wave. The common carrier
/// factor is suppressed; only envelope amplitudes are stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector {
    /// Complex amplitude along x.
    pub e1: Complex64,
    /// Complex amplitude along y.
    pub e2: Complex64,
}

impl JonesVector {
    pub fn new(e1: impl Into<Complex64>, e2: impl Into<Complex64>) -> Self {
        Self {
            e1: e1.into(),
            e2: e2.into(),
        }
    }

    /// |e1|^2 + |e2|^2.
    pub fn intensity(&self) -> f64 {
        self.e1.norm_sqr() + self.e2.norm_sqr()
    }

    /// Polarization ratio e1/e2. `None` when e2 = 0, where the ratio is
    /// undefined.
    pub fn polarization_ratio(&self) -> Option<Complex64> {
        if self.e2.norm() == 0.0 {
            None
        } else {
            Some(self.e1 / self.e2)
        }
    }

    pub fn as_vector(&self) -> Vector2<Complex64> {
        Vector2::new(self.e1, self.e2)
    }

    /// Rank-1 projector E E^H of the pure state.
    pub fn projector(&self) -> Matrix2<Complex64> {
        let v = self.as_vector();
        v * v.adjoint()
    }
}

/// A deterministic, spatially homogeneous optical system acting linearly on
/// the field amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesMatrix {
    pub m: Matrix2<Complex64>,
}

impl JonesMatrix {
    pub fn new(m: Matrix2<Complex64>) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix2::identity(),
        }
    }

    /// Row-major construction.
    pub fn from_rows(rows: [[Complex64; 2]; 2]) -> Self {
        Self {
            m: Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }
}

/// Second-moment matrix <E E^H> of the transverse field; the general
/// (possibly partially polarized) state.
///
/// Hermiticity is enforced at construction: the stored value is the Hermitian
/// part of the input. Positivity is a checkable property, not an invariant,
/// so that unphysical Stokes vectors can be mapped through and diagnosed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherencyMatrix {
    phi: Matrix2<Complex64>,
}

impl CoherencyMatrix {
    /// Accepts `phi` if max |phi - phi^H| <= HERMITICITY_TOL * (1 + |tr phi|)
    /// and stores the Hermitian part (phi + phi^H)/2.
    pub fn new(phi: Matrix2<Complex64>) -> Result<Self> {
        let residual = hermiticity_residual(&phi);
        if residual > HERMITICITY_TOL * (1.0 + phi.trace().norm()) {
            return Err(Error::NonHermitian { residual });
        }
        Ok(Self {
            phi: hermitian_part(&phi),
        })
    }

    pub(crate) fn from_hermitian_unchecked(phi: Matrix2<Complex64>) -> Self {
        Self { phi }
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.phi
    }

    /// Total intensity tr(phi).
    pub fn trace(&self) -> f64 {
        self.phi.trace().re
    }

    /// det(phi), real for Hermitian input.
    pub fn determinant(&self) -> f64 {
        (self.phi[(0, 0)] * self.phi[(1, 1)] - self.phi[(0, 1)] * self.phi[(1, 0)]).re
    }

    /// Both eigenvalues in ascending order, by the 2x2 closed form.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.phi[(0, 0)].re;
        let d = self.phi[(1, 1)].re;
        let half_gap = 0.5 * (a - d);
        let radius = (half_gap * half_gap + self.phi[(0, 1)].norm_sqr()).sqrt();
        let mid = 0.5 * (a + d);
        (mid - radius, mid + radius)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().0
    }

    /// Positive semidefinite within tolerance: min eigenvalue >= -tol * trace.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol * self.trace()
    }

    /// Fully polarized state: det(phi) = 0 within tolerance.
    pub fn is_pure(&self, tol: f64) -> bool {
        let scale = self.trace() * self.trace();
        self.determinant().abs() <= tol * scale.max(f64::MIN_POSITIVE)
    }
}

/// Real 4-vector parametrization of a coherency matrix in the tau basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub s: Vector4<f64>,
}

impl StokesVector {
    pub fn new(s0: f64, s1: f64, s2: f64, s3: f64) -> Self {
        Self {
            s: Vector4::new(s0, s1, s2, s3),
        }
    }

    pub fn from_vector(s: Vector4<f64>) -> Self {
        Self { s }
    }

    /// S0, the total intensity.
    pub fn intensity(&self) -> f64 {
        self.s[0]
    }

    /// S^T G S = S0^2 - S1^2 - S2^2 - S3^2 with G = diag(1,-1,-1,-1).
    pub fn lorentz_form(&self) -> f64 {
        self.s[0] * self.s[0] - self.s[1] * self.s[1] - self.s[2] * self.s[2]
            - self.s[3] * self.s[3]
    }

    /// sqrt(S1^2+S2^2+S3^2)/S0, in [0,1] for physical vectors. `None` when
    /// the intensity is not positive.
    pub fn degree_of_polarization(&self) -> Option<f64> {
        if self.s[0] <= 0.0 {
            return None;
        }
        let p = (self.s[1] * self.s[1] + self.s[2] * self.s[2] + self.s[3] * self.s[3]).sqrt();
        Some(p / self.s[0])
    }
}

/// Position of a Stokes vector relative to the light cone of physical states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StokesClass {
    /// Not a physical state: S0 <= 0 or S^T G S < 0 beyond tolerance.
    OutsideCone,
    /// Fully polarized state on the cone surface.
    PureBoundary,
    /// Partially polarized state in the cone interior.
    MixedInterior,
}

/// The Minkowski form G = diag(1,-1,-1,-1) on Stokes space.
pub fn minkowski_metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// The Hermitian basis tau_0 = I, tau_1 = sigma_3, tau_2 = sigma_1,
/// tau_3 = sigma_2; mutually orthogonal with tr(tau_a tau_b) = 2 delta_ab.
pub fn tau_basis() -> [Matrix2<Complex64>; 4] {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    [
        Matrix2::new(l, o, o, l),
        Matrix2::new(l, o, o, -l),
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
    ]
}

/// The fixed 4x4 matrix relating Stokes components to the flattened
/// coherency matrix, S = A phi~. Essentially unitary: A^-1 = A^H / 2.
pub fn a_matrix() -> Matrix4<Complex64> {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    Matrix4::new(
        l, o, o, l, //
        l, o, o, -l, //
        o, l, l, o, //
        o, i, -i, o,
    )
}

/// A^-1 = A^H / 2, exact in floating point.
pub fn a_matrix_inverse() -> Matrix4<Complex64> {
    a_matrix().adjoint().scale(0.5)
}

/// Stokes components S_a = tr(tau_a phi).
pub fn stokes_from_coherency(phi: &CoherencyMatrix) -> StokesVector {
    let m = phi.matrix();
    StokesVector::new(
        (m[(0, 0)] + m[(1, 1)]).re,
        (m[(0, 0)] - m[(1, 1)]).re,
        (m[(0, 1)] + m[(1, 0)]).re,
        ((m[(0, 1)] - m[(1, 0)]) * Complex64::i()).re,
    )
}

/// phi = (1/2) sum_a S_a tau_a; the exact inverse of
/// [`stokes_from_coherency`]. Accepts unphysical Stokes vectors; positivity
/// is a separate check.
pub fn coherency_from_stokes(s: &StokesVector) -> CoherencyMatrix {
    let v = &s.s;
    let phi = Matrix2::new(
        Complex64::new(0.5 * (v[0] + v[1]), 0.0),
        Complex64::new(0.5 * v[2], -0.5 * v[3]),
        Complex64::new(0.5 * v[2], 0.5 * v[3]),
        Complex64::new(0.5 * (v[0] - v[1]), 0.0),
    );
    CoherencyMatrix::from_hermitian_unchecked(phi)
}

/// Classify a Stokes vector against the light cone. Tolerance is relative to
/// S0^2.
pub fn validate_stokes(s: &StokesVector, tol: f64) -> StokesClass {
    if s.intensity() <= 0.0 {
        return StokesClass::OutsideCone;
    }
    let q = s.lorentz_form();
    let scale = s.intensity() * s.intensity();
    if q.abs() <= tol * scale {
        StokesClass::PureBoundary
    } else if q > tol * scale {
        StokesClass::MixedInterior
    } else {
        StokesClass::OutsideCone
    }
}

/// Weighted ensemble average phi = sum w_k E_k E_k^H / sum w_k, Hermitian
/// positive semidefinite by construction.
pub fn coherency_from_ensemble(members: &[(f64, JonesVector)]) -> Result<CoherencyMatrix> {
    if members.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let mut total = 0.0;
    let mut acc = Matrix2::zeros();
    for &(weight, e) in members {
        if weight < 0.0 {
            return Err(Error::NegativeWeight { weight });
        }
        total += weight;
        acc += e.projector().scale(weight);
    }
    if total <= 0.0 {
        return Err(Error::EmptyEnsemble);
    }
    Ok(CoherencyMatrix::from_hermitian_unchecked(hermitian_part(
        &acc.scale(1.0 / total),
    )))
}

/// E' = J E.
pub fn jones_apply(j: &JonesMatrix, e: &JonesVector) -> JonesVector {
    let v = j.m * e.as_vector();
    JonesVector::new(v[0], v[1])
}

/// phi' = J phi J^H. Preserves purity: det phi = 0 implies det phi' = 0.
pub fn jones_apply_coherency(j: &JonesMatrix, phi: &CoherencyMatrix) -> CoherencyMatrix {
    let out = j.m * phi.matrix() * j.m.adjoint();
    CoherencyMatrix::from_hermitian_unchecked(hermitian_part(&out))
}
