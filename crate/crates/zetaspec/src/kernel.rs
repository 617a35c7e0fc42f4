//! Finite boundary sets `F = {e(alpha_j)}` and the associated deficiency-space
//! machinery: the Hurwitz-zeta Gram kernel `Z(alpha - beta)` on `F x F`, the
//! compact matrix group `G(F)` of its isometries (conjugate to the unitary
//! group by `Z^{1/2}`), and the multi-point spectral function `F_M` whose
//! roots are the eigenvalues of the extension `H_M`.
//!
//! Eigenvalue enumeration for `m > 1` clears denominators of the coordinate
//! eigen-relation into an `m x m` system `B(lambda) psi = 0`,
//!
//! ```text
//!   B(lambda)_{beta,alpha} = P(alpha+beta; lambda, i)
//!                          + sum_g P(alpha+g; lambda, -i) M_{g,alpha},
//!   P(x; mu, nu) = sum_k e(kx) [1/(k-mu) - 1/(k-nu)],
//! ```
//!
//! and scans `det B` per spectral cell with Newton polishing
//! (`d/dlambda P(x; lambda, nu) = sum_k e(kx)/(k-lambda)^2` is in closed form).

use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::specfun::{constant_k, hurwitz_z, lerch_unit_pair, unit_inv_square};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default acceptance tolerance for `G(F)` membership (absolute, per entry).
pub const GROUP_TOL: f64 = 1e-8;

/// Minimum pairwise angle separation (mod 1).
const MIN_SEPARATION: f64 = 1e-12;

/// A finite set of distinct unit-circle points, stored as angles in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySet {
    angles: Vec<f64>,
}

impl BoundarySet {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::Domain("boundary set must be nonempty".into()));
        }
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(Error::Domain(format!(
                "boundary angle must be finite, got {bad}"
            )));
        }
        let normalized: Vec<f64> = angles.iter().map(|a| a - a.floor()).collect();
        for i in 0..normalized.len() {
            for j in 0..i {
                let mut d = (normalized[i] - normalized[j]).abs();
                d = d.min(1.0 - d);
                if d <= MIN_SEPARATION {
                    return Err(Error::Domain(format!(
                        "boundary points {} and {} coincide (separation {d:.3e})",
                        normalized[j], normalized[i]
                    )));
                }
            }
        }
        Ok(Self { angles: normalized })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// The points `zeta_j = e(alpha_j)`.
    pub fn points(&self) -> Vec<Complex64> {
        self.angles.iter().map(|&a| crate::e(a)).collect()
    }
}

impl Serialize for BoundarySet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Dto {
            angles: Vec<String>,
        }
        Dto {
            angles: self.angles.iter().map(|a| format!("{a}")).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundarySet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Dto {
            angles: Vec<String>,
        }
        let dto = Dto::deserialize(d)?;
        let mut angles = Vec::with_capacity(dto.angles.len());
        for a in &dto.angles {
            angles.push(a.parse::<f64>().map_err(serde::de::Error::custom)?);
        }
        BoundarySet::new(angles).map_err(serde::de::Error::custom)
    }
}

/// Hermitian positive-definite Gram matrix `Z(alpha_a - alpha_b)` on `F x F`,
/// with its eigendecomposition (eigenvalues descending).
#[derive(Debug, Clone)]
pub struct GramKernel {
    pub boundary: BoundarySet,
    pub matrix: DMatrix<Complex64>,
    pub eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl GramKernel {
    pub fn dim(&self) -> usize {
        self.boundary.len()
    }

    /// Columns are the orthonormal eigenvectors, ordered like `eigenvalues`.
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    fn power(&self, exponent: f64) -> DMatrix<Complex64> {
        let m = self.dim();
        let mut d = DMatrix::<Complex64>::zeros(m, m);
        for (i, &ev) in self.eigenvalues.iter().enumerate() {
            d[(i, i)] = Complex64::new(ev.powf(exponent), 0.0);
        }
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    pub fn sqrt(&self) -> DMatrix<Complex64> {
        self.power(0.5)
    }

    pub fn inv_sqrt(&self) -> DMatrix<Complex64> {
        self.power(-0.5)
    }
}

/// Build the Gram kernel of a boundary set and certify strict positivity.
pub fn gram(boundary: &BoundarySet, ctl: &SeriesControl) -> Result<GramKernel> {
    let m = boundary.len();
    let mut matrix = DMatrix::<Complex64>::zeros(m, m);
    for a in 0..m {
        matrix[(a, a)] = Complex64::new(constant_k(), 0.0);
        for b in 0..a {
            let z = hurwitz_z(boundary.angles[a] - boundary.angles[b], ctl);
            matrix[(a, b)] = z;
            matrix[(b, a)] = z.conj();
        }
    }
    let eigen = nalgebra::SymmetricEigen::new(matrix.clone());
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        eigen.eigenvalues[j]
            .partial_cmp(&eigen.eigenvalues[i])
            .unwrap()
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let eigenvectors = DMatrix::from_columns(
        &order
            .iter()
            .map(|&i| eigen.eigenvectors.column(i))
            .collect::<Vec<_>>(),
    );
    let min = eigenvalues.last().copied().unwrap_or(0.0);
    if min <= 1e-10 * constant_k() {
        return Err(Error::DegenerateSet {
            min_eigenvalue: min,
        });
    }
    Ok(GramKernel {
        boundary: boundary.clone(),
        matrix,
        eigenvalues,
        eigenvectors,
    })
}

/// Even/odd split of `K`: `K_ev = sum 1/(1+(2n)^2)`, `K_odd = sum 1/(1+(2n+1)^2)`,
/// `K_ev + K_odd = K` exactly.
pub fn k_even_odd() -> (f64, f64) {
    // sum_{n>=1} 1/(n^2 + 1/4) = pi coth(pi/2) - 2.
    let k_ev = 0.5 + 0.25 * PI * (0.5 * PI).cosh() / (0.5 * PI).sinh();
    (k_ev, constant_k() - k_ev)
}

/// Magnitude of the Vandermonde determinant of `(zeta_j^n)`, computed as an
/// actual determinant and as the product `prod_{j<k} |zeta_k - zeta_j|`.
pub fn vandermonde_det(boundary: &BoundarySet) -> (f64, f64) {
    let m = boundary.len();
    let pts = boundary.points();
    let mut v = DMatrix::<Complex64>::zeros(m, m);
    for j in 0..m {
        let mut p = Complex64::new(1.0, 0.0);
        for n in 0..m {
            v[(n, j)] = p;
            p *= pts[j];
        }
    }
    let det = v.determinant().norm();
    let mut product = 1.0;
    for k in 0..m {
        for j in 0..k {
            product *= (pts[k] - pts[j]).norm();
        }
    }
    (det, product)
}

/// A matrix certified (up to `defect`) to satisfy `M* Z M = Z`.
#[derive(Debug, Clone)]
pub struct IsometryMatrix {
    pub matrix: DMatrix<Complex64>,
    /// Max-norm of `M* Z M - Z`.
    pub defect: f64,
}

impl Serialize for IsometryMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Dto {
            matrix: Vec<Vec<[f64; 2]>>,
        }
        Dto {
            matrix: matrix_rows(&self.matrix),
        }
        .serialize(s)
    }
}

/// Row-major `[re, im]` pairs, the wire format for matrices.
pub fn matrix_rows(m: &DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                .collect()
        })
        .collect()
}

/// Parse the row-major `[re, im]` wire format (square matrices).
pub fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<DMatrix<Complex64>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension {
            expected: n,
            actual: rows.iter().map(|r| r.len()).max().unwrap_or(0),
        });
    }
    Ok(DMatrix::from_fn(n, n, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

/// Membership test for `G(F)`: computes the defect `||M* Z M - Z||_max` and
/// accepts iff it is within `tol`.
pub fn is_in_gf(m: &DMatrix<Complex64>, gram: &GramKernel, tol: f64) -> Result<IsometryMatrix> {
    let dim = gram.dim();
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::Dimension {
            expected: dim,
            actual: m.nrows().max(m.ncols()),
        });
    }
    let residual = m.adjoint() * &gram.matrix * m - &gram.matrix;
    let defect = residual.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if defect <= tol {
        Ok(IsometryMatrix {
            matrix: m.clone(),
            defect,
        })
    } else {
        Err(Error::GroupMembership { defect, tol })
    }
}

/// Draw a Haar-distributed member of `G(F)` as `M = Z^{-1/2} U Z^{1/2}` with
/// `U` Haar-unitary; deterministic in `seed`.
pub fn sample_gf(gram: &GramKernel, seed: u64) -> IsometryMatrix {
    let m = gram.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut randn = move || {
        let u1: f64 = rng.gen_range(1e-16..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    };
    let g = DMatrix::from_fn(m, m, |_, _| Complex64::new(randn(), randn()));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    // Fix the QR phase ambiguity so the distribution is Haar.
    let mut u = q;
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..m {
            u[(i, j)] *= phase;
        }
    }
    let matrix = gram.inv_sqrt() * u * gram.sqrt();
    let residual = matrix.adjoint() * &gram.matrix * &matrix - &gram.matrix;
    let defect = residual.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    IsometryMatrix { matrix, defect }
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Multi-point spectral generating function
/// `F_M(lambda) = sum_k sum_a e(ka) [psi(a)(lambda-i)(k+i) + (M psi)(a)(lambda+i)(k-i)] / ((k-lambda)(k^2+1))`,
/// evaluated through the partial-fraction pairs `P(a; lambda, +/-i)`.
pub fn f_m(
    lambda: f64,
    boundary: &BoundarySet,
    m: &IsometryMatrix,
    psi: &[Complex64],
) -> Result<Complex64> {
    check_psi(boundary, m, psi)?;
    check_lambda(lambda)?;
    let lam = Complex64::new(lambda, 0.0);
    let mpsi = apply(&m.matrix, psi);
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, &alpha) in boundary.angles.iter().enumerate() {
        sum += psi[j] * lerch_unit_pair(alpha, lam, I)?;
        sum += mpsi[j] * lerch_unit_pair(alpha, lam, -I)?;
    }
    Ok(sum)
}

/// Closed-form derivative
/// `dF_M/dlambda = sum_k sum_a e(ka) (psi(a) + (M psi)(a)) / (k - lambda)^2`.
pub fn f_m_prime(
    lambda: f64,
    boundary: &BoundarySet,
    m: &IsometryMatrix,
    psi: &[Complex64],
) -> Result<Complex64> {
    check_psi(boundary, m, psi)?;
    check_lambda(lambda)?;
    let lam = Complex64::new(lambda, 0.0);
    let mpsi = apply(&m.matrix, psi);
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, &alpha) in boundary.angles.iter().enumerate() {
        sum += (psi[j] + mpsi[j]) * unit_inv_square(alpha, lam)?;
    }
    Ok(sum)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda >= -0.5 && (lambda - lambda.round()).abs() < crate::specfun::POLE_TOL {
        return Err(Error::Pole {
            function: "F_M",
            arg: lambda,
            tol: crate::specfun::POLE_TOL,
        });
    }
    Ok(())
}

fn check_psi(boundary: &BoundarySet, m: &IsometryMatrix, psi: &[Complex64]) -> Result<()> {
    if psi.len() != boundary.len() || m.matrix.nrows() != boundary.len() {
        return Err(Error::Dimension {
            expected: boundary.len(),
            actual: psi.len(),
        });
    }
    if psi.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::Domain("psi must be nonzero".into()));
    }
    Ok(())
}

fn apply(m: &DMatrix<Complex64>, psi: &[Complex64]) -> Vec<Complex64> {
    let v = DVector::from_column_slice(psi);
    let out = m * v;
    out.iter().copied().collect()
}

/// Inner product of two deficiency-space generators:
/// `<f_+^(theta), f_+^(rho)> = Z(theta - rho)`.
pub fn deficiency_gram_entry(theta: f64, rho: f64) -> Complex64 {
    hurwitz_z(theta - rho, &SeriesControl::default())
}

/// One spectral cell `(lo, hi)` and the roots located inside it.
#[derive(Debug, Clone)]
pub struct SpectralCell {
    /// `None` for the negative half-axis cell.
    pub index: Option<u32>,
    pub interval: (f64, f64),
    pub roots: Vec<ExtRoot>,
}

#[derive(Debug, Clone, Copy)]
pub struct ExtRoot {
    pub lambda: f64,
    /// Magnitude of the final Newton step (distance-to-root proxy).
    pub residual: f64,
}

/// Spectrum of the extension `H_M` over the cells `(-inf, 0)` (scanned down to
/// a fixed floor) and `(n-1, n)`, `n = 1..=n_max`.
#[derive(Debug, Clone)]
pub struct ExtensionSpectrum {
    pub cells: Vec<SpectralCell>,
}

impl ExtensionSpectrum {
    pub fn all_roots(&self) -> Vec<f64> {
        self.cells
            .iter()
            .flat_map(|c| c.roots.iter().map(|r| r.lambda))
            .collect()
    }
}

/// Assemble `B(lambda)` (see module docs).  The generators carry `e(-n alpha)`
/// and the boundary conditions weight by `e(k beta)`, so the kernel argument
/// is the angle difference `beta - alpha` (rotating `F` then conjugates `B`
/// and leaves the spectrum invariant).
fn secular_matrix(
    lambda: Complex64,
    boundary: &BoundarySet,
    m: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    let dim = boundary.len();
    let mut p_plus = DMatrix::<Complex64>::zeros(dim, dim);
    let mut p_minus = DMatrix::<Complex64>::zeros(dim, dim);
    for b in 0..dim {
        for a in 0..dim {
            let x = boundary.angles[b] - boundary.angles[a];
            p_plus[(b, a)] = lerch_unit_pair(x, lambda, I)?;
            p_minus[(b, a)] = lerch_unit_pair(x, lambda, -I)?;
        }
    }
    Ok(p_plus + p_minus * m)
}

/// `dB/dlambda` in closed form.
fn secular_matrix_prime(
    lambda: Complex64,
    boundary: &BoundarySet,
    m: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    let dim = boundary.len();
    let mut t = DMatrix::<Complex64>::zeros(dim, dim);
    for b in 0..dim {
        for a in 0..dim {
            let x = boundary.angles[b] - boundary.angles[a];
            t[(b, a)] = unit_inv_square(x, lambda)?;
        }
    }
    let mt = &t * m;
    Ok(t + mt)
}

/// Newton iteration on `det B(lambda) = 0` via the trace formula
/// `det'/det = tr(B^{-1} B')`; the iterate is kept real.
fn polish_root(
    mut lambda: f64,
    cell: (f64, f64),
    boundary: &BoundarySet,
    m: &DMatrix<Complex64>,
) -> Result<Option<ExtRoot>> {
    let mut last_step = f64::INFINITY;
    for _ in 0..60 {
        let b = secular_matrix(Complex64::new(lambda, 0.0), boundary, m)?;
        let bp = secular_matrix_prime(Complex64::new(lambda, 0.0), boundary, m)?;
        let binv = match b.clone().try_inverse() {
            Some(inv) => inv,
            None => {
                return Ok(Some(ExtRoot {
                    lambda,
                    residual: 0.0,
                }))
            }
        };
        let tr: Complex64 = (binv * bp).diagonal().iter().sum();
        let step = (Complex64::new(1.0, 0.0) / tr).re;
        let next = lambda - step;
        if !next.is_finite() || next <= cell.0 || next >= cell.1 {
            return Ok(None);
        }
        last_step = step.abs();
        lambda = next;
        if last_step < 1e-12 * lambda.abs().max(1.0) {
            return Ok(Some(ExtRoot {
                lambda,
                residual: last_step,
            }));
        }
    }
    if last_step < 1e-9 {
        return Ok(Some(ExtRoot {
            lambda,
            residual: last_step,
        }));
    }
    Ok(None)
}

fn scan_cell(
    cell: (f64, f64),
    index: Option<u32>,
    boundary: &BoundarySet,
    m: &DMatrix<Complex64>,
    samples: usize,
) -> Result<SpectralCell> {
    let dim = boundary.len();
    let margin = 1e-6;
    let (lo, hi) = (cell.0 + margin, cell.1 - margin);
    let mut mags = Vec::with_capacity(samples);
    for i in 0..samples {
        let lam = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let b = secular_matrix(Complex64::new(lam, 0.0), boundary, m)?;
        mags.push((lam, b.determinant().norm()));
    }
    let mut roots: Vec<ExtRoot> = Vec::new();
    for i in 1..samples - 1 {
        if mags[i].1 < mags[i - 1].1 && mags[i].1 < mags[i + 1].1 {
            if let Some(root) = polish_root(mags[i].0, cell, boundary, m)? {
                let duplicate = roots.iter().any(|r| (r.lambda - root.lambda).abs() < 1e-8);
                // Real eigenvalues annihilate B on the axis; a det zero just
                // off the axis stalls the real-projected Newton but leaves a
                // smallest singular value of order ||B'|| x (axis distance).
                let at = Complex64::new(root.lambda, 0.0);
                let b = secular_matrix(at, boundary, m)?;
                let bp = secular_matrix_prime(at, boundary, m)?;
                let svd = b.singular_values();
                let sigma_min = svd[svd.len() - 1];
                let scale = bp.norm() * root.lambda.abs().max(1.0);
                let singular_ok = sigma_min <= 1e-8 * scale;
                if !duplicate && singular_ok && roots.len() < dim {
                    roots.push(root);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap());
    Ok(SpectralCell {
        index,
        interval: cell,
        roots,
    })
}

/// Locate the spectrum of `H_M`.  `m` must be a certified member of `G(F)`.
/// The negative cell is scanned down to `-32`; eigenvalues below that (which
/// occur only for `M` exponentially close to the diagonal branch) are not
/// reported.
pub fn extension_spectrum(
    boundary: &BoundarySet,
    m: &IsometryMatrix,
    n_max: u32,
) -> Result<ExtensionSpectrum> {
    if m.matrix.nrows() != boundary.len() {
        return Err(Error::Dimension {
            expected: boundary.len(),
            actual: m.matrix.nrows(),
        });
    }
    let dim = boundary.len();
    let samples_per_unit = 48 * dim;
    let mut cells = Vec::with_capacity(n_max as usize + 1);
    cells.push(scan_cell(
        (-32.0, 0.0),
        None,
        boundary,
        &m.matrix,
        32 * samples_per_unit,
    )?);
    for n in 1..=n_max {
        cells.push(scan_cell(
            ((n - 1) as f64, n as f64),
            Some(n),
            boundary,
            &m.matrix,
            samples_per_unit,
        )?);
    }
    Ok(ExtensionSpectrum { cells })
}
