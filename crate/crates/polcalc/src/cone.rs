//! Membership tests for the two nested sets of candidate Mueller matrices:
//! maps that send the Stokes light cone into itself (pre-Mueller), and maps
//! whose associated Hermitian matrix is positive semidefinite (physical,
//! i.e. realizable as a convex sum of Jones systems). The gap between them
//! is the grey region that the two-mode witness exposes as unphysical.
//!
//! Cone membership is decided numerically: the pure states form a 2-sphere,
//! and by linearity it suffices to check that every pure input is mapped
//! into the cone. A dense angular grid bounds the global minimum of the
//! output quadratic form and intensity, and compass descent sharpens the
//! minimal cells. The diagonal family has a closed form that serves as the
//! oracle for this scan.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::mueller::{h_from_mueller, is_mueller_jones, HMatrix, MuellerMatrix};
use crate::polarization::StokesVector;

/// Absolute slack on the diagonal-family region boundaries; ties classify
/// toward the more physical region.
pub const REGION_BOUNDARY_TOL: f64 = 1e-9;

/// Number of grid cells kept as seeds for local refinement.
const REFINE_SEEDS: usize = 8;

/// Resolution and tolerances of the pure-state cone scan.
#[derive(Debug, Clone, Copy)]
pub struct ConeScanConfig {
    /// Grid points in the polar angle over [0, pi].
    pub theta_steps: usize,
    /// Grid points in the azimuth over [0, 2 pi].
    pub phi_steps: usize,
    /// Relative classification tolerance.
    pub tol: f64,
    /// Local descent terminates when the angular step falls below this.
    pub refine_step: f64,
}

impl Default for ConeScanConfig {
    fn default() -> Self {
        Self {
            theta_steps: 181,
            phi_steps: 361,
            tol: 1e-9,
            refine_step: 1e-8,
        }
    }
}

impl ConeScanConfig {
    /// Same tolerances on a coarser grid, for bulk scans of smooth families.
    pub fn with_grid(theta_steps: usize, phi_steps: usize) -> Self {
        Self {
            theta_steps,
            phi_steps,
            ..Self::default()
        }
    }
}

/// Outcome of scanning the image of the pure-state sphere under a map.
#[derive(Debug, Clone, Copy)]
pub struct ConeScan {
    /// True when every pure input lands in the cone (zero images allowed).
    pub is_pre_mueller: bool,
    /// Minimum over pure inputs s of (Ms)^T G (Ms).
    pub cone_min_value: f64,
    /// Unit pure state achieving the minimum.
    pub cone_argmin: StokesVector,
    /// Minimum over pure inputs of the output intensity (Ms)_0.
    pub min_intensity: f64,
}

/// Physicality classes of a real 4x4 map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuellerClass {
    /// Sends some physical state out of the light cone.
    NonPreMueller,
    /// Preserves the cone but has no convex Jones realization: the grey
    /// region exposed as unphysical by the entanglement witness.
    PreMuellerOnly,
    /// Associated Hermitian matrix positive semidefinite; a convex sum of
    /// Jones systems.
    PhysicalMueller,
}

impl MuellerClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MuellerClass::NonPreMueller => "NonPreMueller",
            MuellerClass::PreMuellerOnly => "PreMuellerOnly",
            MuellerClass::PhysicalMueller => "PhysicalMueller",
        }
    }
}

/// Full diagnosis of one matrix.
#[derive(Debug, Clone, Copy)]
pub struct ClassificationResult {
    pub kind: MuellerClass,
    /// Whether the map is a single Jones system (rank-1 associated matrix).
    pub is_mueller_jones: bool,
    /// Minimum eigenvalue of the associated Hermitian matrix.
    pub min_h_eigenvalue: f64,
    /// Minimum of the output quadratic form over pure inputs.
    pub cone_min_value: f64,
    /// Pure state achieving the cone minimum.
    pub cone_argmin: StokesVector,
}

/// Parameters of the diagonal family diag(1, d1, d2, d3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalParams {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl DiagonalParams {
    pub fn new(d1: f64, d2: f64, d3: f64) -> Self {
        Self { d1, d2, d3 }
    }

    pub fn to_mueller(&self) -> MuellerMatrix {
        MuellerMatrix::from_diagonal(1.0, self.d1, self.d2, self.d3)
    }
}

/// Region of parameter space for the diagonal family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalRegion {
    /// Not even cone-preserving: some |d_k| > 1.
    OutsideCube,
    /// Cone-preserving but unphysical; inside the cube, outside the
    /// inscribed tetrahedron.
    CubeOnly,
    /// Physical: inside the tetrahedron with vertices (1,1,1), (1,-1,-1),
    /// (-1,1,-1), (-1,-1,1).
    Tetrahedron,
}

impl DiagonalRegion {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagonalRegion::OutsideCube => "outside",
            DiagonalRegion::CubeOnly => "cube_only",
            DiagonalRegion::Tetrahedron => "tetrahedron",
        }
    }
}

/// One record of a parameter-space scan.
#[derive(Debug, Clone, Copy)]
pub struct DiagScanRecord {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub region: DiagonalRegion,
}

fn pure_state_vector(theta: f64, phi: f64) -> Vector4<f64> {
    let st = theta.sin();
    Vector4::new(1.0, st * phi.cos(), st * phi.sin(), theta.cos())
}

fn lorentz_quadratic(v: &Vector4<f64>) -> f64 {
    v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3]
}

/// Compass descent from (theta, phi), halving the step whenever no
/// neighboring move improves, until the step drops below `min_step`.
fn compass_refine<F: Fn(f64, f64) -> f64>(
    f: &F,
    mut theta: f64,
    mut phi: f64,
    initial_step: f64,
    min_step: f64,
) -> (f64, f64, f64) {
    let mut best = f(theta, phi);
    let mut step = initial_step;
    let mut evals = 0usize;
    while step > min_step && evals < 200_000 {
        let moves = [
            (theta + step, phi),
            (theta - step, phi),
            (theta, phi + step),
            (theta, phi - step),
        ];
        let mut improved = false;
        for (t, p) in moves {
            let v = f(t, p);
            evals += 1;
            if v < best {
                best = v;
                theta = t;
                phi = p;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, theta, phi)
}

/// Grid scan plus refinement of the best cells. Returns the minimum value
/// and its angular location.
fn scan_minimize<F: Fn(f64, f64) -> f64>(f: &F, cfg: &ConeScanConfig) -> (f64, f64, f64) {
    let nt = cfg.theta_steps.max(2);
    let np = cfg.phi_steps.max(3);
    let dt = PI / (nt - 1) as f64;
    let dp = TAU / (np - 1) as f64;

    // (value, theta, phi), kept sorted ascending, at most REFINE_SEEDS long
    let mut seeds: Vec<(f64, f64, f64)> = Vec::with_capacity(REFINE_SEEDS + 1);
    for it in 0..nt {
        let theta = it as f64 * dt;
        for ip in 0..np {
            let phi = ip as f64 * dp;
            let v = f(theta, phi);
            if seeds.len() < REFINE_SEEDS || v < seeds.last().unwrap().0 {
                let pos = seeds.partition_point(|s| s.0 < v);
                seeds.insert(pos, (v, theta, phi));
                seeds.truncate(REFINE_SEEDS);
            }
        }
    }

    let mut best = seeds[0];
    for &(_, t0, p0) in &seeds {
        let refined = compass_refine(f, t0, p0, dt.max(dp), cfg.refine_step);
        if refined.0 < best.0 {
            best = refined;
        }
    }
    best
}

/// Scan the pure-state sphere for violations of cone preservation.
///
/// The map is accepted when the minimal output quadratic form stays above
/// -tol * ||M||_F^2 and the minimal output intensity above -tol * ||M||_F.
/// An output intensity of zero is acceptable only for a (near-)zero output
/// vector, which the quadratic-form criterion enforces at such points: total
/// absorption of a ray is a degenerate but harmless image.
pub fn is_pre_mueller(m: &MuellerMatrix, cfg: &ConeScanConfig) -> ConeScan {
    let norm = m.frobenius_norm();
    let mat = m.m;
    let q = |theta: f64, phi: f64| lorentz_quadratic(&(mat * pure_state_vector(theta, phi)));
    let intensity = |theta: f64, phi: f64| (mat * pure_state_vector(theta, phi))[0];

    let (q_min, q_theta, q_phi) = scan_minimize(&q, cfg);
    let (i_min, _, _) = scan_minimize(&intensity, cfg);

    let is_pre_mueller = q_min >= -cfg.tol * norm * norm && i_min >= -cfg.tol * norm;
    ConeScan {
        is_pre_mueller,
        cone_min_value: q_min,
        cone_argmin: StokesVector::from_vector(pure_state_vector(q_theta, q_phi)),
        min_intensity: i_min,
    }
}

/// Combine the cone scan with the positivity of the associated Hermitian
/// matrix. Physical maps are decided by H alone; the cone scan separates
/// the grey region from outright cone violators.
pub fn classify(m: &MuellerMatrix, cfg: &ConeScanConfig) -> ClassificationResult {
    let scan = is_pre_mueller(m, cfg);
    let h = h_from_mueller(m);
    let min_h_eigenvalue = h.min_eigenvalue();
    let physical = h.is_positive_semidefinite(cfg.tol);
    // the physical set is contained in the pre-Mueller set
    debug_assert!(!physical || scan.is_pre_mueller);
    let kind = if physical {
        MuellerClass::PhysicalMueller
    } else if scan.is_pre_mueller {
        MuellerClass::PreMuellerOnly
    } else {
        MuellerClass::NonPreMueller
    };
    ClassificationResult {
        kind,
        is_mueller_jones: is_mueller_jones(m, cfg.tol).is_some(),
        min_h_eigenvalue,
        cone_min_value: scan.cone_min_value,
        cone_argmin: scan.cone_argmin,
    }
}

/// Locate (d1, d2, d3) relative to the cube of cone-preserving diagonal maps
/// and the inscribed tetrahedron of physical ones. Boundary points within
/// [`REGION_BOUNDARY_TOL`] classify toward the more physical region.
pub fn diagonal_region(p: &DiagonalParams) -> DiagonalRegion {
    let slack = 1.0 + REGION_BOUNDARY_TOL;
    let (d1, d2, d3) = (p.d1, p.d2, p.d3);
    if d1.abs() > slack || d2.abs() > slack || d3.abs() > slack {
        return DiagonalRegion::OutsideCube;
    }
    let sums = [-d1 - d2 - d3, -d1 + d2 + d3, d1 + d2 - d3, d1 - d2 + d3];
    if sums.iter().all(|&s| s <= slack) {
        DiagonalRegion::Tetrahedron
    } else {
        DiagonalRegion::CubeOnly
    }
}

/// Closed form of the associated Hermitian matrix for diag(1, d1, d2, d3):
/// two 2x2 blocks mixing (1 +- d1) with (d2 +- d3). Must agree with
/// `h_from_mueller` on the diagonal family.
pub fn h_diagonal(p: &DiagonalParams) -> HMatrix {
    let e = |x: f64| Complex64::new(0.5 * x, 0.0);
    let h = Matrix4::new(
        e(1.0 + p.d1),
        e(0.0),
        e(0.0),
        e(p.d2 + p.d3),
        e(0.0),
        e(1.0 - p.d1),
        e(p.d2 - p.d3),
        e(0.0),
        e(0.0),
        e(p.d2 - p.d3),
        e(1.0 - p.d1),
        e(0.0),
        e(p.d2 + p.d3),
        e(0.0),
        e(0.0),
        e(1.0 + p.d1),
    );
    HMatrix::from_hermitian_unchecked(h)
}

/// Uniform grid over [-1.1, 1.1]^3 (slightly past the cube so plots show all
/// three regions), with `diagonal_region` evaluated at every point. Records
/// are emitted in row-major order: d1 slowest, d3 fastest.
pub fn diag_region_scan(resolution: usize) -> Vec<DiagScanRecord> {
    assert!(resolution >= 2, "scan needs at least two points per axis");
    let lo = -1.1;
    let hi = 1.1;
    let step = (hi - lo) / (resolution - 1) as f64;
    let coord = |k: usize| lo + step * k as f64;
    let mut records = Vec::with_capacity(resolution * resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            for k in 0..resolution {
                let p = DiagonalParams::new(coord(i), coord(j), coord(k));
                records.push(DiagScanRecord {
                    d1: p.d1,
                    d2: p.d2,
                    d3: p.d3,
                    region: diagonal_region(&p),
                });
            }
        }
    }
    records
}
