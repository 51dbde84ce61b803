//! Two-mode beam states on C^2 (x) C^2 and the entanglement witness.
//!
//! Restricting the spatial dependence of a beam to two orthonormal modes
//! turns the beam-coherence-polarization matrix into a 4x4 Hermitian
//! positive matrix on the tensor product of polarization and spatial
//! spaces. A spatially homogeneous map M acts on it through its associated
//! Hermitian matrix while leaving the spatial indices untouched. Feeding in
//! the maximally entangled two-mode beam returns that Hermitian matrix
//! itself as the output state, so any M whose associated matrix has a
//! negative eigenvalue maps a physical beam to an unphysical one.
//!
//! Index convention, fixed project-wide: composite indices are flattened as
//! 2*(polarization) + (spatial), i.e. polarization slow, spatial fast, with
//! amplitudes ordered (C11, C12, C21, C22).

use nalgebra::{Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, hermiticity_residual};
use crate::mueller::{h_from_mueller, MuellerMatrix};
use crate::polarization::HERMITICITY_TOL;

/// Pure two-mode beam: four complex amplitudes C_{j alpha} over the product
/// basis of polarization axes and spatial modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeJonesVector {
    /// Amplitudes ordered (C11, C12, C21, C22).
    pub c: Vector4<Complex64>,
}

impl TwoModeJonesVector {
    pub fn new(
        c11: impl Into<Complex64>,
        c12: impl Into<Complex64>,
        c21: impl Into<Complex64>,
        c22: impl Into<Complex64>,
    ) -> Self {
        Self {
            c: Vector4::new(c11.into(), c12.into(), c21.into(), c22.into()),
        }
    }

    pub fn from_vector(c: Vector4<Complex64>) -> Self {
        Self { c }
    }

    /// Elementary (separable) beam p (x) q: a fixed polarization times a
    /// fixed spatial profile.
    pub fn from_product(polarization: Vector2<Complex64>, spatial: Vector2<Complex64>) -> Self {
        Self {
            c: Vector4::new(
                polarization[0] * spatial[0],
                polarization[0] * spatial[1],
                polarization[1] * spatial[0],
                polarization[1] * spatial[1],
            ),
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }

    /// C11*C22 - C12*C21; zero exactly for elementary beams.
    pub fn pair_determinant(&self) -> Complex64 {
        self.c[0] * self.c[3] - self.c[1] * self.c[2]
    }
}

/// Two-mode beam-coherence-polarization matrix: 4x4 Hermitian, physical
/// when positive semidefinite. Row/column indices flatten (j, alpha) with
/// the polarization index slow.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeBcp {
    phi_hat: Matrix4<Complex64>,
}

impl TwoModeBcp {
    /// Accepts a matrix Hermitian within 1e-9 * (1 + |tr|) and stores its
    /// Hermitian part.
    pub fn new(phi_hat: Matrix4<Complex64>) -> Result<Self> {
        let residual = hermiticity_residual(&phi_hat);
        if residual > HERMITICITY_TOL * (1.0 + phi_hat.trace().norm()) {
            return Err(Error::NonHermitian { residual });
        }
        Ok(Self {
            phi_hat: hermitian_part(&phi_hat),
        })
    }

    pub(crate) fn from_hermitian_unchecked(phi_hat: Matrix4<Complex64>) -> Self {
        Self { phi_hat }
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.phi_hat
    }

    pub fn trace(&self) -> f64 {
        self.phi_hat.trace().re
    }

    pub fn eigenvalues_descending(&self) -> Vector4<f64> {
        crate::linalg::eigen_hermitian_descending(&self.phi_hat).0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues_descending()[3]
    }

    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol * self.trace().max(0.0)
    }
}

/// The maximally entangled two-mode beam chi_11 + chi_22, i.e.
/// C = (1, 0, 0, 1). Deliberately unnormalized (|C|^2 = 2) so that the
/// output state under a map equals the associated Hermitian matrix without
/// an extra factor.
pub fn bell_state() -> TwoModeJonesVector {
    TwoModeJonesVector::new(1.0, 0.0, 0.0, 1.0)
}

/// Entanglement of a pure two-mode beam: 2 |C11 C22 - C12 C21| / |C|^2,
/// in [0, 1]. Zero exactly for elementary beams, one for the bell state.
pub fn concurrence(c: &TwoModeJonesVector) -> Result<f64> {
    let norm2 = c.norm_squared();
    if norm2 == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(2.0 * c.pair_determinant().norm() / norm2)
}

/// Elementary-beam test: polarization and spatial structure factorize, i.e.
/// the concurrence vanishes within `tol`.
pub fn is_separable(c: &TwoModeJonesVector, tol: f64) -> Result<bool> {
    Ok(concurrence(c)? <= tol)
}

/// Pure-state BCP matrix C C^H.
pub fn bcp_from_pure(c: &TwoModeJonesVector) -> TwoModeBcp {
    TwoModeBcp::from_hermitian_unchecked(c.c * c.c.adjoint())
}

/// Weighted ensemble average of pure-state BCP matrices.
pub fn bcp_from_ensemble(members: &[(f64, TwoModeJonesVector)]) -> Result<TwoModeBcp> {
    if members.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let mut total = 0.0;
    let mut acc = Matrix4::zeros();
    for &(weight, c) in members {
        if weight < 0.0 {
            return Err(Error::NegativeWeight { weight });
        }
        total += weight;
        acc += (c.c * c.c.adjoint()).scale(weight);
    }
    if total <= 0.0 {
        return Err(Error::EmptyEnsemble);
    }
    Ok(TwoModeBcp::from_hermitian_unchecked(hermitian_part(
        &acc.scale(1.0 / total),
    )))
}

/// Action of a spatially homogeneous map on a two-mode state: the
/// associated Hermitian matrix contracts the polarization indices while
/// the spatial indices ride along,
/// out[(i,a), (j,b)] = sum_{k,l} H[(i,k), (j,l)] in[(k,a), (l,b)].
pub fn apply_mueller_to_bcp(m: &MuellerMatrix, phi_hat: &TwoModeBcp) -> TwoModeBcp {
    let h = h_from_mueller(m);
    let h = h.matrix();
    let input = phi_hat.matrix();
    let out = Matrix4::from_fn(|row, col| {
        let (i, a) = (row / 2, row % 2);
        let (j, b) = (col / 2, col % 2);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..2 {
            for l in 0..2 {
                sum += h[(2 * i + k, 2 * j + l)] * input[(2 * k + a, 2 * l + b)];
            }
        }
        sum
    });
    TwoModeBcp::from_hermitian_unchecked(hermitian_part(&out))
}

/// Feed the bell state through the map and report the smallest eigenvalue
/// of the output state. The output equals the associated Hermitian matrix
/// elementwise, so a negative value certifies that the map sends a physical
/// entangled beam to an unphysical state.
pub fn witness_negativity(m: &MuellerMatrix) -> (f64, TwoModeBcp) {
    let output = apply_mueller_to_bcp(m, &bcp_from_pure(&bell_state()));
    let min_eigenvalue = output.min_eigenvalue();
    // the output must coincide with the associated Hermitian matrix
    debug_assert!({
        let h = h_from_mueller(m);
        let h_min = h.min_eigenvalue();
        (min_eigenvalue - h_min).abs() <= 1e-12 * (1.0 + h_min.abs())
    });
    (min_eigenvalue, output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarization::DEFAULT_TOL;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_state_amplitudes_and_concurrence() {
        let bell = bell_state();
        assert_eq!(bell.c[0], c(1.0, 0.0));
        assert_eq!(bell.c[1], c(0.0, 0.0));
        assert_eq!(bell.c[2], c(0.0, 0.0));
        assert_eq!(bell.c[3], c(1.0, 0.0));
        assert_abs_diff_eq!(bell.pair_determinant().norm(), 1.0);
        assert!(!is_separable(&bell, DEFAULT_TOL).unwrap());
        assert_abs_diff_eq!(concurrence(&bell).unwrap(), 1.0);
    }

    #[test]
    fn bell_bcp_has_four_unit_corners() {
        let phi = bcp_from_pure(&bell_state());
        let m = phi.matrix();
        for r in 0..4 {
            for col in 0..4 {
                let expected = if (r == 0 || r == 3) && (col == 0 || col == 3) {
                    1.0
                } else {
                    0.0
                };
                assert_abs_diff_eq!(m[(r, col)].re, expected, epsilon = 0.0);
                assert_abs_diff_eq!(m[(r, col)].im, 0.0, epsilon = 0.0);
            }
        }
    }

    #[test]
    fn product_states_are_separable() {
        let p = Vector2::new(c(0.8, 0.1), c(-0.3, 0.5));
        let q = Vector2::new(c(0.2, -0.7), c(1.1, 0.4));
        let state = TwoModeJonesVector::from_product(p, q);
        assert_abs_diff_eq!(concurrence(&state).unwrap(), 0.0, epsilon = 1e-15);
        assert!(is_separable(&state, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn partially_entangled_state_concurrence() {
        // (1, 0, 0, 1/2): 2 * (1/2) / (1 + 1/4) = 0.8
        let state = TwoModeJonesVector::new(1.0, 0.0, 0.0, 0.5);
        assert_abs_diff_eq!(concurrence(&state).unwrap(), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn zero_state_has_no_concurrence() {
        let zero = TwoModeJonesVector::new(0.0, 0.0, 0.0, 0.0);
        assert_eq!(concurrence(&zero), Err(Error::ZeroState));
    }

    #[test]
    fn pure_and_ensemble_bcp_examples() {
        let phi = bcp_from_pure(&TwoModeJonesVector::new(1.0, 0.0, 0.0, 0.0));
        for (k, z) in phi.matrix().iter().enumerate() {
            let expected = if k == 0 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(z.re, expected, epsilon = 0.0);
        }

        let mix = bcp_from_ensemble(&[
            (0.5, TwoModeJonesVector::new(1.0, 0.0, 0.0, 0.0)),
            (0.5, TwoModeJonesVector::new(0.0, 0.0, 0.0, 1.0)),
        ])
        .unwrap();
        let m = mix.matrix();
        assert_abs_diff_eq!(m[(0, 0)].re, 0.5, epsilon = 0.0);
        assert_abs_diff_eq!(m[(3, 3)].re, 0.5, epsilon = 0.0);
        assert_abs_diff_eq!(m.trace().re, 1.0, epsilon = 0.0);

        assert_eq!(bcp_from_ensemble(&[]), Err(Error::EmptyEnsemble));
    }

    #[test]
    fn identity_map_fixes_two_mode_states() {
        let state = bcp_from_ensemble(&[
            (0.3, TwoModeJonesVector::new(c(1.0, 0.2), c(0.0, -0.4), c(0.5, 0.0), c(0.1, 0.1))),
            (0.7, bell_state()),
        ])
        .unwrap();
        let out = apply_mueller_to_bcp(&MuellerMatrix::identity(), &state);
        for (a, b) in out.matrix().iter().zip(state.matrix().iter()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-14);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn bell_input_reproduces_the_associated_hermitian_matrix() {
        let m = MuellerMatrix::from_rows([
            [1.0, 0.2, -0.3, 0.4],
            [0.1, 0.9, 0.0, -0.2],
            [-0.5, 0.3, 0.7, 0.1],
            [0.2, -0.1, 0.6, 0.8],
        ]);
        let out = apply_mueller_to_bcp(&m, &bcp_from_pure(&bell_state()));
        let h = h_from_mueller(&m);
        for (a, b) in out.matrix().iter().zip(h.matrix().iter()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn separable_input_cannot_witness_the_grey_region() {
        // the cube vertex diag(1,1,1,-1) is cone-preserving, and elementary
        // inputs factor through the single-point action, so the output stays
        // positive
        let m = MuellerMatrix::from_diagonal(1.0, 1.0, 1.0, -1.0);
        let separable = TwoModeJonesVector::new(1.0, 0.0, 0.0, 0.0);
        let out = apply_mueller_to_bcp(&m, &bcp_from_pure(&separable));
        for (k, z) in out.matrix().iter().enumerate() {
            let expected = if k == 0 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(z.re, expected, epsilon = 1e-14);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-14);
        }
        assert!(out.is_positive_semidefinite(DEFAULT_TOL));
    }

    #[test]
    fn witness_examples() {
        let (min_eig, _) = witness_negativity(&MuellerMatrix::identity());
        assert_abs_diff_eq!(min_eig, 0.0, epsilon = 1e-12);

        let (min_eig, out) = witness_negativity(&MuellerMatrix::from_diagonal(1.0, 1.0, 1.0, -1.0));
        assert_abs_diff_eq!(min_eig, -1.0, epsilon = 1e-12);
        assert!(!out.is_positive_semidefinite(DEFAULT_TOL));

        let (min_eig, _) = witness_negativity(&MuellerMatrix::from_diagonal(1.0, 0.0, 0.0, 0.0));
        assert_abs_diff_eq!(min_eig, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn identity_witness_spectrum_is_a_projector() {
        let (_, out) = witness_negativity(&MuellerMatrix::identity());
        let eig = out.eigenvalues_descending();
        assert_abs_diff_eq!(eig[0], 2.0, epsilon = 1e-12);
        for k in 1..4 {
            assert_abs_diff_eq!(eig[k], 0.0, epsilon = 1e-12);
        }
    }
}
