//! Numerical toolkit for the spectral theory of selfadjoint extensions of the
//! diagonal operator `H : (x_k) -> (k x_k)` on `l2(N0)`, equivalently `z d/dz`
//! acting in the Hardy space of the disk.
//!
//! The semibounded restriction `L` of `H` (domain cut out by `sum x_k = 0`) has
//! deficiency indices (1,1); its selfadjoint extensions `H_zeta`, `zeta = e^{i theta}`,
//! have pure point spectrum interlacing the integers.  Restricting instead by a
//! finite set `F` of boundary points gives indices (m,m), with deficiency spaces
//! that are reproducing-kernel Hilbert spaces for the Hurwitz-zeta kernel
//! `Z(x) = sum e(nx)/(1+n^2)` on `F x F`.
//!
//! Modules:
//! - [`specfun`]: digamma/polygamma, the Hurwitz-zeta kernel `Z`, the logarithmic
//!   integral, one-sided Hurwitz zeta, and the Lerch transcendent.
//! - [`spectral`]: the index-(1,1) spectral solver: the secular function
//!   `G(lambda) = Re psi(i) - psi(-lambda)`, bracketed eigenvalue search,
//!   eigenvectors, near-boundary asymptotics, and the argument-principle
//!   contour cross-check.
//! - [`kernel`]: finite boundary sets, Gram kernels `Z(a-b)`, the matrix group
//!   `G(F)` of kernel isometries, and the multi-point spectral function `F_M`.
//! - [`boundary`]: Hardy-space boundary calculus: Szegö reproduction, the
//!   adjoint formula `L* = (1 - CP_F) z d/dz`, residues, and the residue
//!   boundary form.
//! - [`forms`]: quadratic-form results: GLB witnesses, the Dirichlet/Neumann
//!   (2,2) example, the projection-norm formula, Friedrichs/Krein coordinate
//!   identities, and symmetric-Fock norm checks.

pub mod boundary;
pub mod error;
pub mod forms;
pub mod kernel;
pub mod series;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use series::SeriesControl;

/// `e(x) = exp(2 pi i x)`, the character convention used throughout.
pub fn e(x: f64) -> num_complex::Complex64 {
    let t = 2.0 * std::f64::consts::PI * x;
    num_complex::Complex64::new(t.cos(), t.sin())
}
