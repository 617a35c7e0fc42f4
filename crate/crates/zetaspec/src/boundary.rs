//! Hardy-space boundary calculus for the operator `z d/dz` restricted by a
//! finite boundary set `F`.
//!
//! Functions in the adjoint domain decompose as `f = g + sum_j a_j R2(zeta_j, .)
//! + sum_j b_j R3(zeta_j, .)` with `g` vanishing on `F`, where `R2(zeta, z) =
//! rho2(conj(zeta) z)` and `R3(zeta, z) = rho3(conj(zeta) z)` are the shifted
//! defect functions.  Differentiation produces simple boundary poles through
//! `z d/dz R3(zeta, .) = -R2(zeta, .) + K_Sz(zeta, .)`, and the adjoint acts
//! as `(1 - CP_F) z d/dz`, the pole-stripping composition.
//!
//! The boundary form reduces to residues: with `C_j(f)` the residue of
//! `z f'(z)` at `zeta_j`,
//!
//! ```text
//!     B(f, f) = Im sum_j conj(zeta_j) C_j(f) conj(f~(zeta_j))
//!             = Im sum_j conj(b_j) f~(zeta_j),
//! ```
//!
//! where `f~(zeta_j)` is the regularized boundary value (the divergent
//! logarithmic part of the `R3` self-term carries zero finite part; it never
//! contributes to the imaginary part).  The `conj(zeta_j)` weight comes from
//! `1/(z - zeta_j) = -conj(zeta_j) K_Sz(zeta_j, z)` and is invisible at
//! `zeta_j = 1`.

use crate::error::{Error, Result};
use crate::kernel::BoundarySet;
use crate::series::accelerated_unit_sum;
use crate::specfun::hurwitz_z;
use crate::SeriesControl;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Angle matching tolerance when pairing poles with boundary points.
const POLE_MATCH_TOL: f64 = 1e-9;

/// A truncated Hardy-space function: Taylor part plus simple boundary poles
/// `residue/(z - e(angle))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyFunction {
    pub taylor: Vec<Complex64>,
    pub poles: Vec<PoleTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleTerm {
    pub angle: f64,
    pub residue: Complex64,
}

impl HardyFunction {
    pub fn from_taylor(taylor: Vec<Complex64>) -> Self {
        Self {
            taylor,
            poles: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::from_taylor(vec![])
    }

    pub fn is_pole_free(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = self.taylor_eval(z);
        for p in &self.poles {
            acc += p.residue / (z - crate::e(p.angle));
        }
        acc
    }

    /// Boundary value of the Taylor part at `e(angle)` by Abel summation:
    /// radial evaluations at `r = 1 - h/2^i` with Richardson extrapolation
    /// in `h` (Neville table over four halving levels).
    pub fn abel_boundary_value(&self, angle: f64) -> Complex64 {
        let dir = crate::e(angle);
        let h = 1.0 / 256.0;
        let mut t: Vec<Complex64> = (0..4)
            .map(|i| self.taylor_eval(dir * (1.0 - h / (1 << i) as f64)))
            .collect();
        for j in 1..4 {
            let factor = (1u64 << j) as f64;
            for i in 0..(4 - j) {
                t[i] = (factor * t[i + 1] - t[i]) / (factor - 1.0);
            }
        }
        t[0]
    }

    fn taylor_eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.taylor.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Szegö reproducing kernel section `K(w, z) = 1/(1 - conj(w) z)`.
#[derive(Debug, Clone, Copy)]
pub struct SzegoKernel {
    pub w: Complex64,
}

impl SzegoKernel {
    pub fn new(w: Complex64) -> Result<Self> {
        if w.norm() > 1.0 + 1e-12 {
            return Err(Error::Domain(format!(
                "Szegö parameter must satisfy |w| <= 1, got {}",
                w.norm()
            )));
        }
        Ok(Self { w })
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - self.w.conj() * z)
    }

    /// Truncated Taylor section, coefficients `conj(w)^k`.
    pub fn section(&self, n_trunc: usize) -> HardyFunction {
        let mut c = Vec::with_capacity(n_trunc);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..n_trunc {
            c.push(p);
            p *= self.w.conj();
        }
        HardyFunction::from_taylor(c)
    }
}

/// Szegö boundary-integral reconstruction `int_0^1 f~(x)/(1 - conj(e(x)) z) dx`
/// by the trapezoid rule (spectrally accurate for the periodic integrand).
/// Matches direct Taylor evaluation at interior `z`.
pub fn szego_reproduce(f: &HardyFunction, z: Complex64, quad_points: usize) -> Result<Complex64> {
    if !f.is_pole_free() {
        return Err(Error::Representation(
            "Szegö reproduction applies to pole-free (H2) functions".into(),
        ));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("requires |z| < 1, got {}", z.norm())));
    }
    let q = quad_points.max(4 * f.taylor.len().max(1));
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..q {
        let x = j as f64 / q as f64;
        let w = crate::e(x);
        let boundary = f.taylor_eval(w);
        acc += boundary / (Complex64::new(1.0, 0.0) - w.conj() * z);
    }
    Ok(acc / q as f64)
}

/// `z d/dz` on Taylor parts: `c_k -> k c_k`.  Meromorphic inputs are rejected;
/// poles only ever arise downstream through the defect-function calculus.
pub fn apply_zddz(f: &HardyFunction) -> Result<HardyFunction> {
    if !f.is_pole_free() {
        return Err(Error::Representation(
            "z d/dz is only applied to Taylor parts; poles arise via the R3 calculus".into(),
        ));
    }
    Ok(HardyFunction::from_taylor(
        f.taylor
            .iter()
            .enumerate()
            .map(|(k, &c)| c * k as f64)
            .collect(),
    ))
}

/// Truncated `rho2(z) = sum z^n/(1+n^2)` and `rho3(z) = sum n z^n/(1+n^2)`.
pub fn rho_functions(n_trunc: usize) -> (HardyFunction, HardyFunction) {
    let mut rho2 = Vec::with_capacity(n_trunc);
    let mut rho3 = Vec::with_capacity(n_trunc);
    for n in 0..n_trunc {
        let nf = n as f64;
        let d = 1.0 + nf * nf;
        rho2.push(Complex64::new(1.0 / d, 0.0));
        rho3.push(Complex64::new(nf / d, 0.0));
    }
    (
        HardyFunction::from_taylor(rho2),
        HardyFunction::from_taylor(rho3),
    )
}

/// Shifted defect functions `R2(zeta, z) = rho2(conj(zeta) z)` and
/// `R3(zeta, z)`: coefficients `e(-n angle)/(1+n^2)`, `n e(-n angle)/(1+n^2)`.
pub fn shifted_rho(angle: f64, n_trunc: usize) -> (HardyFunction, HardyFunction) {
    let mut r2 = Vec::with_capacity(n_trunc);
    let mut r3 = Vec::with_capacity(n_trunc);
    for n in 0..n_trunc {
        let nf = n as f64;
        let d = 1.0 + nf * nf;
        let p = crate::e(-nf * angle);
        r2.push(p / d);
        r3.push(p * nf / d);
    }
    (
        HardyFunction::from_taylor(r2),
        HardyFunction::from_taylor(r3),
    )
}

/// Extract the principal parts of `f` at the boundary set: `CP_F f` is the
/// sum of the listed pole terms.  A pole off `F` is an error; idempotent.
pub fn cp_extract(f: &HardyFunction, boundary: &BoundarySet) -> Result<HardyFunction> {
    for p in &f.poles {
        let matched = boundary.angles().iter().any(|&b| {
            let d = (p.angle - b).rem_euclid(1.0);
            d < POLE_MATCH_TOL || 1.0 - d < POLE_MATCH_TOL
        });
        if !matched {
            return Err(Error::UnlistedPole { angle: p.angle });
        }
    }
    Ok(HardyFunction {
        taylor: Vec::new(),
        poles: f.poles.clone(),
    })
}

/// Element of the adjoint domain: `f = g + sum a_j R2(zeta_j,.) + sum b_j R3(zeta_j,.)`
/// with `g` a Taylor function vanishing on `F`.
#[derive(Debug, Clone)]
pub struct AdjointDomainElement {
    pub g: HardyFunction,
    /// `(a_j, b_j)` per boundary point, in the order of `BoundarySet::angles`.
    pub coeffs: Vec<(Complex64, Complex64)>,
}

impl AdjointDomainElement {
    pub fn new(
        g: HardyFunction,
        coeffs: Vec<(Complex64, Complex64)>,
        boundary: &BoundarySet,
    ) -> Result<Self> {
        if coeffs.len() != boundary.len() {
            return Err(Error::Dimension {
                expected: boundary.len(),
                actual: coeffs.len(),
            });
        }
        if !g.is_pole_free() {
            return Err(Error::Representation("g must be a Taylor function".into()));
        }
        Ok(Self { g, coeffs })
    }

    /// Truncated coefficient sequence of `f` itself.
    pub fn coefficient(&self, k: usize, boundary: &BoundarySet) -> Complex64 {
        let kf = k as f64;
        let d = 1.0 + kf * kf;
        let mut c = self
            .g
            .taylor
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0));
        for (j, &(a, b)) in self.coeffs.iter().enumerate() {
            let p = crate::e(-kf * boundary.angles()[j]);
            c += (a + b * kf) * p / d;
        }
        c
    }
}

/// Result of applying the adjoint along both evaluation paths.
#[derive(Debug, Clone)]
pub struct AdjointImage {
    /// Direct von Neumann formula `z d/dz g + sum a_j R3 - sum b_j R2`.
    pub direct: HardyFunction,
    /// `(1 - CP_F)` applied to the symbolically assembled meromorphic
    /// derivative.
    pub via_cp: HardyFunction,
}

/// Apply `L* = (1 - CP_F) z d/dz` to a domain element, returning both
/// evaluation paths.  `g` must vanish on `F` within `boundary_tol` (checked by
/// Abel summation).
pub fn adjoint_apply(
    elem: &AdjointDomainElement,
    boundary: &BoundarySet,
    n_trunc: usize,
    boundary_tol: f64,
) -> Result<AdjointImage> {
    for &angle in boundary.angles() {
        let bv = elem.g.abel_boundary_value(angle);
        if bv.norm() > boundary_tol {
            return Err(Error::Domain(format!(
                "g does not vanish at boundary angle {angle}: |g| = {:.3e}",
                bv.norm()
            )));
        }
    }
    let n = n_trunc.max(elem.g.taylor.len());
    let dg = apply_zddz(&elem.g)?;

    let mut direct = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in dg.taylor.iter().enumerate() {
        direct[k] = *c;
    }
    for (j, &(a, b)) in elem.coeffs.iter().enumerate() {
        let (r2, r3) = shifted_rho(boundary.angles()[j], n);
        for k in 0..n {
            direct[k] += a * r3.taylor[k] - b * r2.taylor[k];
        }
    }

    // Meromorphic derivative: z d/dz f = z d/dz g + sum_j a_j R3
    //   + sum_j b_j (-R2 + K_Sz(zeta_j, .)), with K_Sz = -zeta_j/(z - zeta_j).
    let mut mero_taylor = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in dg.taylor.iter().enumerate() {
        mero_taylor[k] = *c;
    }
    let mut mero_poles = Vec::with_capacity(boundary.len());
    for (j, &(a, b)) in elem.coeffs.iter().enumerate() {
        let angle = boundary.angles()[j];
        let (r2, r3) = shifted_rho(angle, n);
        for k in 0..n {
            mero_taylor[k] += a * r3.taylor[k] - b * r2.taylor[k];
        }
        mero_poles.push(PoleTerm {
            angle,
            residue: -b * crate::e(angle),
        });
    }
    let mero = HardyFunction {
        taylor: mero_taylor,
        poles: mero_poles,
    };
    let principal = cp_extract(&mero, boundary)?;
    let mut via_cp = mero;
    for p in principal.poles {
        let idx = via_cp
            .poles
            .iter()
            .position(|q| q.angle == p.angle)
            .expect("extracted pole came from this function");
        via_cp.poles[idx].residue -= p.residue;
    }
    via_cp.poles.retain(|p| p.residue.norm() > 0.0);
    Ok(AdjointImage {
        direct: HardyFunction::from_taylor(direct),
        via_cp,
    })
}

/// Residues `C_j(f) = lim_{w -> zeta_j} (w - zeta_j) (w d/dw f)(w) = -b_j zeta_j`.
pub fn residues(elem: &AdjointDomainElement, boundary: &BoundarySet) -> Result<Vec<Complex64>> {
    if elem.coeffs.len() != boundary.len() {
        return Err(Error::Dimension {
            expected: boundary.len(),
            actual: elem.coeffs.len(),
        });
    }
    Ok(boundary
        .angles()
        .iter()
        .zip(&elem.coeffs)
        .map(|(&angle, &(_, b))| -b * crate::e(angle))
        .collect())
}

/// `Z3(x) = sum_{n>=0} n e(nx)/(1+n^2)`, the boundary trace of `rho3`
/// (conditionally convergent off the integers).
fn z3(x: f64) -> Result<Complex64> {
    let y = x - x.floor();
    if y.abs() < 1e-12 || (1.0 - y).abs() < 1e-12 {
        return Err(Error::Domain(
            "Z3 diverges logarithmically at integer arguments".into(),
        ));
    }
    let a = |n: u64| {
        let nf = n as f64;
        Complex64::new(nf / (1.0 + nf * nf), 0.0)
    };
    Ok(accelerated_unit_sum(a, y, 1e-12, 1 << 22).0)
}

/// Regularized boundary values `f~(zeta_j)`: Abel summation of the Taylor
/// part, exact kernel values `Z` for the `R2` parts, accelerated `Z3` for the
/// off-diagonal `R3` parts, and zero finite part for the divergent `R3`
/// self-term.
pub fn boundary_values(
    elem: &AdjointDomainElement,
    boundary: &BoundarySet,
) -> Result<Vec<Complex64>> {
    let ctl = SeriesControl::default();
    let angles = boundary.angles();
    let mut values = Vec::with_capacity(angles.len());
    for (j, &beta) in angles.iter().enumerate() {
        let mut v = elem.g.abel_boundary_value(beta);
        for (l, &(a, b)) in elem.coeffs.iter().enumerate() {
            let x = beta - angles[l];
            v += a * hurwitz_z(x, &ctl);
            if l != j {
                v += b * z3(x)?;
            }
        }
        values.push(v);
    }
    Ok(values)
}

/// Residue boundary form `B(f, f) = Im sum_j conj(zeta_j) C_j(f) conj(f~(zeta_j))`.
///
/// Vanishes on the operator domain (`b = 0` with `g` vanishing on `F`) and on
/// graphs of `G(F)` isometries; equals `||f_+||^2 - ||f_-||^2` in von Neumann
/// coordinates.
pub fn residue_boundary_form(elem: &AdjointDomainElement, boundary: &BoundarySet) -> Result<f64> {
    let c = residues(elem, boundary)?;
    let values = boundary_values(elem, boundary)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &angle) in boundary.angles().iter().enumerate() {
        acc += crate::e(angle).conj() * c[j] * values[j].conj();
    }
    Ok(acc.im)
}

/// Build the domain element `sum_a psi(a) f_+^(a)` (coefficients
/// `a_j = i psi_j`, `b_j = psi_j`), optionally combined with
/// `sum_a chi(a) f_-^(a)` (`a_j -= i chi_j`, `b_j += chi_j`).
pub fn defect_combination(
    psi: &[Complex64],
    chi: Option<&[Complex64]>,
    boundary: &BoundarySet,
) -> Result<AdjointDomainElement> {
    if psi.len() != boundary.len() {
        return Err(Error::Dimension {
            expected: boundary.len(),
            actual: psi.len(),
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let mut coeffs: Vec<(Complex64, Complex64)> = psi.iter().map(|&p| (i * p, p)).collect();
    if let Some(chi) = chi {
        if chi.len() != boundary.len() {
            return Err(Error::Dimension {
                expected: boundary.len(),
                actual: chi.len(),
            });
        }
        for (c, &x) in coeffs.iter_mut().zip(chi) {
            c.0 -= i * x;
            c.1 += x;
        }
    }
    AdjointDomainElement::new(HardyFunction::zero(), coeffs, boundary)
}

/// Boundary integrals of the defect functions:
///
/// ```text
///   f_+(z) = int_0^1 e^{-2 pi x}/(1 - conj(e(x)) z) dx
///          = (1 - e^{-2 pi})/(2 pi i) sum z^n/(n - i),
/// ```
///
/// and the mirror `f_-`.  Coefficients are recovered by quadrature against
/// `e(-nx)` and returned as truncated Taylor expansions.
pub fn defect_boundary_integrals(
    n_coeffs: usize,
    quad_points: usize,
) -> (HardyFunction, HardyFunction) {
    let coeff = |n: usize, sign: f64| -> Complex64 {
        let nf = n as f64;
        // Composite rule with the interval count scaled to the oscillation
        // (the e^{2 pi x} amplitude on the f_- side needs the extra density).
        let q = quad_points.max(64).max(1024 * (n + 1));
        let re = crate::series::composite_simpson(
            &|x: f64| (sign * 2.0 * PI * x).exp() * (2.0 * PI * nf * x).cos(),
            0.0,
            1.0,
            q,
        );
        let im = crate::series::composite_simpson(
            &|x: f64| -(sign * 2.0 * PI * x).exp() * (2.0 * PI * nf * x).sin(),
            0.0,
            1.0,
            q,
        );
        Complex64::new(re, im)
    };
    let plus = (0..n_coeffs).map(|n| coeff(n, -1.0)).collect();
    let minus = (0..n_coeffs).map(|n| coeff(n, 1.0)).collect();
    (
        HardyFunction::from_taylor(plus),
        HardyFunction::from_taylor(minus),
    )
}

/// Closed-form coefficients of the defect boundary integrals, for
/// cross-checking: `(1 - e^{-2 pi})/(2 pi i (n - i))` and
/// `-(e^{2 pi} - 1)/(2 pi i (n + i))`.
pub fn defect_integral_closed_form(n: usize) -> (Complex64, Complex64) {
    let nf = n as f64;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let plus = (1.0 - (-2.0 * PI).exp()) / (two_pi_i * Complex64::new(nf, -1.0));
    let minus = -((2.0 * PI).exp() - 1.0) / (two_pi_i * Complex64::new(nf, 1.0));
    (plus, minus)
}

/// Fourier coefficient `int_{-1/2}^{1/2} w(x) e(-nx) dx` of the two-sided
/// exponential profile; `periodized = true` uses the full periodization
/// `cosh(2 pi (|x| - 1/2))/sinh(pi)` whose coefficients are exactly
/// `(1/pi)/(1+n^2)`, recovering the defect vector `y_2` up to scale.
pub fn y2_integral_coefficient(n: u32, periodized: bool) -> f64 {
    let nf = n as f64;
    let w = move |x: f64| {
        if periodized {
            (2.0 * PI * (x.abs() - 0.5)).cosh() / PI.sinh()
        } else {
            (-2.0 * PI * x.abs()).exp()
        }
    };
    // The integrand is even, so take 2 int_0^{1/2} (this also avoids the
    // |x| kink at 0).
    2.0 * crate::series::integrate(&|x: f64| w(x) * (2.0 * PI * nf * x).cos(), 0.0, 0.5, 1e-13)
}
