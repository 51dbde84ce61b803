//! The correspondence between real 4x4 maps on Stokes vectors and their
//! associated Hermitian matrices, with the rank-1 (Jones-system) test and
//! the convex decomposition into Jones systems.
//!
//! A map M acts on coherency matrices through a superoperator whose matrix
//! H is Hermitian exactly when M is real. M is realizable as a positive sum
//! of Jones systems if and only if H is positive semidefinite, and is a
//! single Jones system if and only if H is a one-dimensional projection.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigen_hermitian_descending, hermitian_part, hermiticity_residual};
use crate::polarization::{a_matrix, a_matrix_inverse, JonesMatrix, StokesVector};

/// Relative tolerance for the internal hermiticity assertion on constructed
/// H matrices and for the reality check of reconstructed Mueller matrices.
const RECONSTRUCTION_TOL: f64 = 1e-12;

/// A real 4x4 linear map on Stokes vectors. Any real matrix is admissible;
/// whether it is physical is decided by the operations below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuellerMatrix {
    pub m: Matrix4<f64>,
}

impl MuellerMatrix {
    pub fn new(m: Matrix4<f64>) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix4::identity(),
        }
    }

    /// Row-major construction.
    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self {
            m: Matrix4::from_fn(|r, c| rows[r][c]),
        }
    }

    /// diag(m00, d1, d2, d3).
    pub fn from_diagonal(m00: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Self {
            m: Matrix4::from_diagonal(&Vector4::new(m00, d1, d2, d3)),
        }
    }

    /// S' = M S.
    pub fn apply(&self, s: &StokesVector) -> StokesVector {
        StokesVector::from_vector(self.m * s.s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }
}

/// The 4x4 complex Hermitian matrix associated with a Mueller matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HMatrix {
    h: Matrix4<Complex64>,
}

impl HMatrix {
    /// Accepts `h` if Hermitian within 1e-9 * (1 + |tr h|) and stores the
    /// Hermitian part.
    pub fn new(h: Matrix4<Complex64>) -> Result<Self> {
        let residual = hermiticity_residual(&h);
        if residual > crate::polarization::HERMITICITY_TOL * (1.0 + h.trace().norm()) {
            return Err(Error::NonHermitian { residual });
        }
        Ok(Self {
            h: hermitian_part(&h),
        })
    }

    pub(crate) fn from_hermitian_unchecked(h: Matrix4<Complex64>) -> Self {
        Self { h }
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.h
    }

    pub fn trace(&self) -> f64 {
        self.h.trace().re
    }

    /// Eigenvalues sorted descending (real, since the matrix is Hermitian).
    pub fn eigenvalues_descending(&self) -> Vector4<f64> {
        self.eigen_descending().0
    }

    /// Eigenvalues (descending) and matching orthonormal eigenvector columns.
    pub fn eigen_descending(&self) -> (Vector4<f64>, Matrix4<Complex64>) {
        eigen_hermitian_descending(&self.h)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues_descending()[3]
    }

    /// min eigenvalue >= -tol * tr H. A Hermitian matrix with nonpositive
    /// trace can only pass when it is (numerically) zero.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol * self.trace().max(0.0)
    }
}

/// A convex realization M = sum_k weight_k * M(J_k) with unit-Frobenius
/// Jones factors and positive weights sorted descending.
#[derive(Debug, Clone)]
pub struct JonesDecomposition {
    pub terms: Vec<(f64, JonesMatrix)>,
}

impl JonesDecomposition {
    /// sum_k weight_k * M(J_k).
    pub fn reconstruct(&self) -> MuellerMatrix {
        let mut acc = Matrix4::zeros();
        for (weight, jones) in &self.terms {
            acc += mueller_jones_from_jones(jones).m * *weight;
        }
        MuellerMatrix::new(acc)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Swap the two middle indices of a 4x4 matrix viewed with composite
/// indices: out[2i+k][2j+l] = in[2i+j][2k+l]. Self-inverse; this is the
/// reindexing that relates H to B = A^-1 M A.
fn middle_index_swap(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| m[(2 * (r / 2) + c / 2, 2 * (r % 2) + c % 2)])
}

/// Column-vector form of a 2x2 matrix, row-major: (J00, J01, J10, J11).
pub fn flatten_jones(j: &JonesMatrix) -> Vector4<Complex64> {
    Vector4::new(j.m[(0, 0)], j.m[(0, 1)], j.m[(1, 0)], j.m[(1, 1)])
}

/// Inverse of [`flatten_jones`].
pub fn unflatten_jones(v: &Vector4<Complex64>) -> JonesMatrix {
    JonesMatrix::new(Matrix2::new(v[0], v[1], v[2], v[3]))
}

/// Rotate a vector by a global phase so that its largest-magnitude component
/// becomes real positive. Makes eigenvector-derived Jones matrices unique.
fn fix_global_phase(v: &Vector4<Complex64>) -> Vector4<Complex64> {
    let mut idx = 0;
    let mut best = 0.0;
    for (k, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best {
            best = n;
            idx = k;
        }
    }
    if best == 0.0 {
        return *v;
    }
    let phase = v[idx] / Complex64::new(best, 0.0);
    v.map(|z| z * phase.conj())
}

/// The Hermitian matrix associated with a real map on Stokes vectors:
/// reindex B = A^-1 M A by [`middle_index_swap`].
pub fn h_from_mueller(m: &MuellerMatrix) -> HMatrix {
    let mc = m.m.map(|x| Complex64::new(x, 0.0));
    let b = a_matrix_inverse() * mc * a_matrix();
    let h = middle_index_swap(&b);
    let residual = hermiticity_residual(&h);
    assert!(
        residual <= RECONSTRUCTION_TOL * (1.0 + h.norm()),
        "H built from a real matrix must be Hermitian (residual {residual:e})"
    );
    HMatrix::from_hermitian_unchecked(hermitian_part(&h))
}

/// Exact inverse of [`h_from_mueller`]: M = A B A^-1 with B the reindexed H.
/// Hermitian input yields a real matrix; a non-negligible imaginary residue
/// is an internal-consistency error.
pub fn mueller_from_h(h: &HMatrix) -> Result<MuellerMatrix> {
    let b = middle_index_swap(h.matrix());
    let mc = a_matrix() * b * a_matrix_inverse();
    let residual = mc.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residual > RECONSTRUCTION_TOL * (1.0 + mc.norm()) {
        return Err(Error::ImaginaryResidue { residual });
    }
    Ok(MuellerMatrix::new(mc.map(|z| z.re)))
}

/// The Mueller matrix of a deterministic Jones system:
/// M(J) = A (J kron J*) A^-1.
pub fn mueller_jones_from_jones(j: &JonesMatrix) -> MuellerMatrix {
    let b = j.m.kronecker(&j.m.conjugate());
    let mc = a_matrix() * b * a_matrix_inverse();
    debug_assert!(
        mc.iter().map(|z| z.im.abs()).fold(0.0, f64::max) <= RECONSTRUCTION_TOL * (1.0 + mc.norm())
    );
    MuellerMatrix::new(mc.map(|z| z.re))
}

/// Test whether M is the Mueller matrix of a single Jones system: H must be
/// a one-dimensional projection up to scale. On success returns
/// J = sqrt(lambda_1) * reshape(v_1) with the global phase fixed so the
/// largest-magnitude entry is real positive. `tol` is relative to the
/// leading eigenvalue.
pub fn is_mueller_jones(m: &MuellerMatrix, tol: f64) -> Option<JonesMatrix> {
    let h = h_from_mueller(m);
    let (values, vectors) = h.eigen_descending();
    let lead = values[0];
    if lead <= 0.0 {
        return None;
    }
    if values.iter().skip(1).any(|l| l.abs() > tol * lead) {
        return None;
    }
    let flat = fix_global_phase(&Vector4::from(vectors.column(0))) * Complex64::new(lead.sqrt(), 0.0);
    Some(unflatten_jones(&flat))
}

/// Decompose a physical map into a positive sum of Jones systems via the
/// spectral decomposition H = sum_k lambda_k v_k v_k^H. Weights are the
/// eigenvalues above tol * tr H, sorted descending; Jones factors have unit
/// Frobenius norm. Fails with the minimum eigenvalue as diagnostic when H
/// is not positive semidefinite within tolerance.
pub fn decompose_convex(m: &MuellerMatrix, tol: f64) -> Result<JonesDecomposition> {
    let h = h_from_mueller(m);
    let (values, vectors) = h.eigen_descending();
    let trace = h.trace();
    if values[3] < -tol * trace.max(0.0) {
        return Err(Error::NotPositive {
            min_eigenvalue: values[3],
        });
    }
    let mut terms = Vec::new();
    for k in 0..4 {
        if values[k] > tol * trace {
            let mut flat = fix_global_phase(&Vector4::from(vectors.column(k)));
            let norm = flat.norm();
            if norm > 0.0 {
                flat /= Complex64::new(norm, 0.0);
            }
            terms.push((values[k], unflatten_jones(&flat)));
        }
    }
    Ok(JonesDecomposition { terms })
}

/// S' = M S.
pub fn apply_mueller(m: &MuellerMatrix, s: &StokesVector) -> StokesVector {
    m.apply(s)
}
