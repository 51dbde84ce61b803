//! Small shared helpers for Hermitian matrix handling.

use nalgebra::{Matrix4, SMatrix, Vector4};
use num_complex::Complex64;

/// Largest elementwise deviation from hermiticity, max |m - m^H|.
pub(crate) fn hermiticity_residual<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
    let diff = m - m.adjoint();
    diff.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Hermitian part (m + m^H)/2.
pub(crate) fn hermitian_part<const N: usize>(
    m: &SMatrix<Complex64, N, N>,
) -> SMatrix<Complex64, N, N> {
    (m + m.adjoint()).scale(0.5)
}

/// Eigendecomposition of a 4x4 Hermitian matrix with eigenvalues sorted in
/// descending order. Returns the real eigenvalues and the matrix whose
/// columns are the matching orthonormal eigenvectors.
pub(crate) fn eigen_hermitian_descending(
    m: &Matrix4<Complex64>,
) -> (Vector4<f64>, Matrix4<Complex64>) {
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = Vector4::from_fn(|r, _| eig.eigenvalues[order[r]]);
    let vectors = Matrix4::from_fn(|r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hermitian_eigen_recovers_matrix() {
        let i = Complex64::i();
        let m = Matrix4::new(
            (2.0).into(),
            i,
            0.0.into(),
            (0.5).into(),
            -i,
            (1.0).into(),
            0.25 * i,
            0.0.into(),
            0.0.into(),
            -0.25 * i,
            (3.0).into(),
            i,
            (0.5).into(),
            0.0.into(),
            -i,
            (-1.0).into(),
        );
        assert!(hermiticity_residual(&m) < 1e-15);
        let (vals, vecs) = eigen_hermitian_descending(&m);
        assert!(vals[0] >= vals[1] && vals[1] >= vals[2] && vals[2] >= vals[3]);
        let diag = Matrix4::from_fn(|r, c| {
            if r == c {
                Complex64::new(vals[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let rebuilt = vecs * diag * vecs.adjoint();
        for (a, b) in rebuilt.iter().zip(m.iter()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
        }
        // trace is preserved by the spectrum
        assert_abs_diff_eq!(vals.iter().sum::<f64>(), 5.0, epsilon = 1e-12);
    }
}
