//! Python bindings for the zetaspec toolkit.
//!
//! Complex values cross the boundary as Python `complex`; matrices as nested
//! lists (row major).  Numeric failures raise `ValueError` with the library's
//! error message.

// The pyo3 0.22 macros expand to PyErr conversions clippy flags as useless.
#![allow(clippy::useless_conversion)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use zetaspec::kernel::BoundarySet;
use zetaspec::spectral::ExtensionParameter;
use zetaspec::SeriesControl;

fn err(e: zetaspec::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn boundary(angles: Vec<f64>) -> PyResult<BoundarySet> {
    BoundarySet::new(angles).map_err(err)
}

fn parameter(theta: f64) -> PyResult<ExtensionParameter> {
    ExtensionParameter::new(theta).map_err(err)
}

fn to_dmatrix(rows: Vec<Vec<Complex64>>) -> PyResult<DMatrix<Complex64>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square and nonempty"));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| rows[r][c]))
}

fn from_dmatrix(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

#[pyfunction]
fn constants(py: Python<'_>) -> PyResult<PyObject> {
    let c = zetaspec::specfun::NamedConstants::standard();
    let d = pyo3::types::PyDict::new_bound(py);
    d.set_item("k", c.k)?;
    d.set_item("gamma_euler", c.gamma_euler)?;
    d.set_item("gamma0", c.gamma0)?;
    d.set_item("re_psi_i", c.re_psi_i)?;
    Ok(d.into())
}

#[pyfunction]
fn digamma(z: Complex64) -> PyResult<Complex64> {
    zetaspec::specfun::digamma(z).map_err(err)
}

#[pyfunction]
fn trigamma(x: f64) -> PyResult<f64> {
    zetaspec::specfun::trigamma(x).map_err(err)
}

#[pyfunction]
fn tetragamma(x: f64) -> PyResult<f64> {
    zetaspec::specfun::tetragamma(x).map_err(err)
}

#[pyfunction]
fn hurwitz_z(x: f64) -> Complex64 {
    zetaspec::specfun::hurwitz_z(x, &SeriesControl::default())
}

#[pyfunction]
fn re_z_closed(x: f64) -> f64 {
    zetaspec::specfun::re_z_closed(x)
}

#[pyfunction]
fn log_integral(x: f64) -> PyResult<f64> {
    zetaspec::specfun::log_integral(x).map_err(err)
}

#[pyfunction]
fn zeta1(phi: f64) -> PyResult<f64> {
    zetaspec::specfun::zeta1(phi).map_err(err)
}

#[pyfunction]
fn lerch_phi(z: Complex64, s: f64, v: Complex64) -> PyResult<Complex64> {
    zetaspec::specfun::lerch_phi(z, s, v, &SeriesControl::default()).map_err(err)
}

#[pyfunction]
fn g(lambda: f64) -> PyResult<f64> {
    zetaspec::spectral::g(lambda).map_err(err)
}

#[pyfunction]
fn g_prime(lambda: f64) -> PyResult<f64> {
    zetaspec::spectral::g_prime(lambda).map_err(err)
}

#[pyfunction]
fn eigenvalue(theta: f64, n: u32) -> PyResult<f64> {
    zetaspec::spectral::eigenvalue(parameter(theta)?, n).map_err(err)
}

/// Rows `(n, lambda, lo, hi, residual)`; `lo` is `None` for the negative cell.
#[pyfunction]
fn spectrum(theta: f64, n_max: u32) -> PyResult<Vec<(u32, f64, Option<f64>, f64, f64)>> {
    let table = zetaspec::spectral::spectrum(parameter(theta)?, n_max).map_err(err)?;
    Ok(table
        .entries
        .iter()
        .map(|e| {
            let lo = if e.bracket.0.is_finite() {
                Some(e.bracket.0)
            } else {
                None
            };
            (e.n, e.lambda, lo, e.bracket.1, e.residual)
        })
        .collect())
}

/// `(lambda, coefficients, tail_norm_sq)` of the truncated eigenvector.
#[pyfunction]
fn eigenvector(theta: f64, n: u32, n_trunc: usize) -> PyResult<(f64, Vec<f64>, f64)> {
    let v = zetaspec::spectral::eigenvector(parameter(theta)?, n, n_trunc).map_err(err)?;
    Ok((v.lambda, v.coefficients, v.tail_norm_sq))
}

#[pyfunction]
fn asymptotic_lambda(theta: f64, n: u32) -> PyResult<f64> {
    zetaspec::spectral::asymptotic_lambda(parameter(theta)?, n).map_err(err)
}

#[pyfunction]
fn contour_eigenvalue(theta: f64, n: u32, quad_points: usize) -> PyResult<f64> {
    zetaspec::spectral::contour_eigenvalue(parameter(theta)?, n, quad_points).map_err(err)
}

#[pyfunction]
fn boundary_form(c_plus: Complex64, c_minus: Complex64) -> f64 {
    zetaspec::spectral::boundary_form(c_plus, c_minus)
}

/// `(gram_matrix, eigenvalues)` of the Hurwitz-zeta kernel on the set.
#[pyfunction]
fn gram(angles: Vec<f64>) -> PyResult<(Vec<Vec<Complex64>>, Vec<f64>)> {
    let k = zetaspec::kernel::gram(&boundary(angles)?, &SeriesControl::default()).map_err(err)?;
    Ok((from_dmatrix(&k.matrix), k.eigenvalues))
}

#[pyfunction]
fn k_even_odd() -> (f64, f64) {
    zetaspec::kernel::k_even_odd()
}

#[pyfunction]
fn vandermonde_det(angles: Vec<f64>) -> PyResult<(f64, f64)> {
    Ok(zetaspec::kernel::vandermonde_det(&boundary(angles)?))
}

/// Haar-sampled member of `G(F)`: `(matrix, defect)`.
#[pyfunction]
fn sample_gf(angles: Vec<f64>, seed: u64) -> PyResult<(Vec<Vec<Complex64>>, f64)> {
    let k = zetaspec::kernel::gram(&boundary(angles)?, &SeriesControl::default()).map_err(err)?;
    let m = zetaspec::kernel::sample_gf(&k, seed);
    Ok((from_dmatrix(&m.matrix), m.defect))
}

/// Defect of the candidate matrix; raises if it exceeds `tol`.
#[pyfunction]
fn gf_defect(angles: Vec<f64>, matrix: Vec<Vec<Complex64>>, tol: f64) -> PyResult<f64> {
    let k = zetaspec::kernel::gram(&boundary(angles)?, &SeriesControl::default()).map_err(err)?;
    let m = to_dmatrix(matrix)?;
    zetaspec::kernel::is_in_gf(&m, &k, tol)
        .map(|m| m.defect)
        .map_err(err)
}

#[pyfunction]
fn f_m(
    lambda: f64,
    angles: Vec<f64>,
    matrix: Vec<Vec<Complex64>>,
    psi: Vec<Complex64>,
) -> PyResult<Complex64> {
    let f = boundary(angles)?;
    let k = zetaspec::kernel::gram(&f, &SeriesControl::default()).map_err(err)?;
    let m = to_dmatrix(matrix)?;
    let member = zetaspec::kernel::is_in_gf(&m, &k, zetaspec::kernel::GROUP_TOL).map_err(err)?;
    zetaspec::kernel::f_m(lambda, &f, &member, &psi).map_err(err)
}

/// Cells as `(index, lo, hi, [(lambda, residual), ...])`; `index` is `None`
/// for the negative half-axis cell.
#[pyfunction]
fn extension_spectrum(
    angles: Vec<f64>,
    matrix: Vec<Vec<Complex64>>,
    n_max: u32,
) -> PyResult<Vec<(Option<u32>, f64, f64, Vec<(f64, f64)>)>> {
    let f = boundary(angles)?;
    let k = zetaspec::kernel::gram(&f, &SeriesControl::default()).map_err(err)?;
    let m = to_dmatrix(matrix)?;
    let member = zetaspec::kernel::is_in_gf(&m, &k, zetaspec::kernel::GROUP_TOL).map_err(err)?;
    let spec = zetaspec::kernel::extension_spectrum(&f, &member, n_max).map_err(err)?;
    Ok(spec
        .cells
        .iter()
        .map(|c| {
            (
                c.index,
                c.interval.0,
                c.interval.1,
                c.roots.iter().map(|r| (r.lambda, r.residual)).collect(),
            )
        })
        .collect())
}

/// Residue boundary form of `f = sum_j a_j R2(zeta_j,.) + b_j R3(zeta_j,.)`.
#[pyfunction]
fn residue_boundary_form(angles: Vec<f64>, a: Vec<Complex64>, b: Vec<Complex64>) -> PyResult<f64> {
    let f = boundary(angles)?;
    if a.len() != f.len() || b.len() != f.len() {
        return Err(PyValueError::new_err(
            "coefficient lengths must match the boundary set",
        ));
    }
    let coeffs = a.into_iter().zip(b).collect();
    let elem = zetaspec::boundary::AdjointDomainElement::new(
        zetaspec::boundary::HardyFunction::zero(),
        coeffs,
        &f,
    )
    .map_err(err)?;
    zetaspec::boundary::residue_boundary_form(&elem, &f).map_err(err)
}

#[pyfunction]
fn projection_norm(phi: f64) -> f64 {
    zetaspec::forms::projection_norm(phi)
}

#[pyfunction]
fn fock_norm(alpha: Vec<u32>) -> PyResult<f64> {
    zetaspec::forms::fock_norm(&alpha).map_err(err)
}

#[pyfunction]
fn multinomial(alpha: Vec<u32>) -> f64 {
    zetaspec::forms::multinomial(&alpha)
}

#[pyfunction]
fn glb_demo(ns: Vec<u32>) -> Vec<f64> {
    zetaspec::forms::glb_demo(&ns)
}

#[pyfunction]
fn essential_sa_witness(d: usize, n_max: u32) -> PyResult<Vec<f64>> {
    zetaspec::forms::essential_sa_witness(d, n_max).map_err(err)
}

#[pymodule]
fn zetaspec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(digamma, m)?)?;
    m.add_function(wrap_pyfunction!(trigamma, m)?)?;
    m.add_function(wrap_pyfunction!(tetragamma, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_z, m)?)?;
    m.add_function(wrap_pyfunction!(re_z_closed, m)?)?;
    m.add_function(wrap_pyfunction!(log_integral, m)?)?;
    m.add_function(wrap_pyfunction!(zeta1, m)?)?;
    m.add_function(wrap_pyfunction!(lerch_phi, m)?)?;
    m.add_function(wrap_pyfunction!(g, m)?)?;
    m.add_function(wrap_pyfunction!(g_prime, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvector, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(contour_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_form, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(k_even_odd, m)?)?;
    m.add_function(wrap_pyfunction!(vandermonde_det, m)?)?;
    m.add_function(wrap_pyfunction!(sample_gf, m)?)?;
    m.add_function(wrap_pyfunction!(gf_defect, m)?)?;
    m.add_function(wrap_pyfunction!(f_m, m)?)?;
    m.add_function(wrap_pyfunction!(extension_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(residue_boundary_form, m)?)?;
    m.add_function(wrap_pyfunction!(projection_norm, m)?)?;
    m.add_function(wrap_pyfunction!(fock_norm, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial, m)?)?;
    m.add_function(wrap_pyfunction!(glb_demo, m)?)?;
    m.add_function(wrap_pyfunction!(essential_sa_witness, m)?)?;
    Ok(())
}
