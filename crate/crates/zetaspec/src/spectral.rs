//! Spectral data of the selfadjoint extensions `H_zeta` of the index-(1,1)
//! restriction `L`.
//!
//! The extension with parameter `zeta = e^{i theta}` has pure point spectrum
//! given by the solutions of the secular equation
//!
//! ```text
//!     G(lambda) = K tan(theta/2),    G(lambda) = Re psi(i) - psi(-lambda),
//! ```
//!
//! one root in each interval `(n-1, n)` plus one negative root.  `G` is
//! strictly increasing between consecutive integer poles, so the roots are
//! found by a safeguarded Newton-bisection on each interval.  `theta = pi` is
//! the distinguished parameter `zeta = -1` with `H_{-1} = H` and spectrum `N0`.

use crate::error::{Error, Result};
use crate::specfun::{
    self, constant_k, digamma_with_guard, tetragamma, trigamma, trigamma_with_guard,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Tight internal pole guard for solver-side evaluations of `G`.
const SOLVER_GUARD: f64 = 1e-13;

/// Bracket inset for the interval roots.
const BRACKET_EPS: f64 = 1e-12;

/// Angle parameterizing a selfadjoint extension, `zeta = e^{i theta}`,
/// `theta in (-pi, pi]`.  `theta = pi` is `H` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionParameter {
    theta: f64,
}

impl ExtensionParameter {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= -PI || theta > PI {
            return Err(Error::Domain(format!(
                "extension angle must lie in (-pi, pi], got {theta}"
            )));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn zeta(&self) -> Complex64 {
        Complex64::new(self.theta.cos(), self.theta.sin())
    }

    /// `zeta = -1`, i.e. the extension is `H` itself with spectrum `N0`.
    /// Angles within 1e-12 of `pi` snap to this branch: a 15-digit decimal
    /// approximation of pi must select it, and the true roots there sit
    /// within ~1e-13 of the integers anyway.
    pub fn is_diagonal(&self) -> bool {
        (PI - self.theta).abs() < 1e-12
    }

    /// Coupling constant `v = K tan(theta/2)`; `None` on the `theta = pi`
    /// branch where the secular equation degenerates.
    pub fn coupling(&self) -> Option<f64> {
        if self.is_diagonal() {
            None
        } else {
            Some(constant_k() * (0.5 * self.theta).tan())
        }
    }
}

/// One localized eigenvalue: `n - 1 < lambda < n` (or `lambda < 0` for `n = 0`).
#[derive(Debug, Clone, Copy)]
pub struct SpectrumEntry {
    pub n: u32,
    pub lambda: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
}

/// Indexed eigenvalue list for one extension.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    pub theta: ExtensionParameter,
    pub entries: Vec<SpectrumEntry>,
    pub residual_bound: f64,
}

/// Truncated eigenvector `y_{n,k} = lambda_n/(k - lambda_n)`.
#[derive(Debug, Clone)]
pub struct EigenvectorFamily {
    pub theta: ExtensionParameter,
    pub n: u32,
    pub lambda: f64,
    pub coefficients: Vec<f64>,
    pub n_trunc: usize,
    /// Bound on the dropped l2 mass `sum_{k >= n_trunc} y_{n,k}^2`.
    pub tail_norm_sq: f64,
}

impl EigenvectorFamily {
    /// Squared l2 norm, truncated sum plus analytic tail.
    pub fn norm_sq(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum::<f64>() + self.tail_norm_sq
    }
}

/// Truncations of the defect vectors `x_pm`, `y_2`, `y_3`.
#[derive(Debug, Clone)]
pub struct DefectVectors {
    pub x_plus: Vec<Complex64>,
    pub x_minus: Vec<Complex64>,
    pub y2: Vec<f64>,
    pub y3: Vec<f64>,
}

impl DefectVectors {
    pub fn new(n_trunc: usize) -> Self {
        let mut x_plus = Vec::with_capacity(n_trunc);
        let mut x_minus = Vec::with_capacity(n_trunc);
        let mut y2 = Vec::with_capacity(n_trunc);
        let mut y3 = Vec::with_capacity(n_trunc);
        for k in 0..n_trunc {
            let kf = k as f64;
            let d = 1.0 + kf * kf;
            x_plus.push(Complex64::new(kf, 1.0) / d); // 1/(k - i)
            x_minus.push(Complex64::new(kf, -1.0) / d); // 1/(k + i)
            y2.push(1.0 / d);
            y3.push(kf / d);
        }
        Self {
            x_plus,
            x_minus,
            y2,
            y3,
        }
    }
}

/// `Re psi(i)`.
fn re_psi_i() -> f64 {
    specfun::digamma(Complex64::new(0.0, 1.0))
        .expect("i is not a pole")
        .re
}

/// Secular function `G(lambda) = Re psi(i) - psi(-lambda)`, poles at `N0`.
pub fn g(lambda: f64) -> Result<f64> {
    Ok(re_psi_i() - specfun::digamma_real(-lambda)?)
}

fn g_guarded(lambda: f64) -> Result<f64> {
    Ok(re_psi_i() - digamma_with_guard(Complex64::new(-lambda, 0.0), SOLVER_GUARD)?.re)
}

/// `G'(lambda) = sum 1/(k - lambda)^2 = psi'(-lambda) > 0` off `N0`.
pub fn g_prime(lambda: f64) -> Result<f64> {
    trigamma(-lambda)
}

/// `G''(lambda) = 2 sum 1/(k - lambda)^3 = -psi''(-lambda)`.
pub fn g_second(lambda: f64) -> Result<f64> {
    Ok(-tetragamma(-lambda)?)
}

/// Raw-series evaluation of `G` (the sum `sum (1 + lambda k)/((k - lambda)(1 + k^2))`)
/// with integral tail corrections.  Oracle route; production `G` goes through
/// digamma.
pub fn g_series(lambda: f64, n_terms: usize) -> f64 {
    let n = n_terms.max(1000);
    let mut sum = 0.0f64;
    for k in 0..=n {
        let kf = k as f64;
        sum += (1.0 + lambda * kf) / ((kf - lambda) * (1.0 + kf * kf));
    }
    // term_k = lambda/(k(k-lambda)) + 1/(k(1+k^2)) exactly, for k >= 1.
    let nf = n as f64;
    let f1 = lambda / (nf * (nf - lambda));
    let f2 = 1.0 / (nf * (1.0 + nf * nf));
    let int1 = -(1.0 - lambda / nf).ln();
    let int2 = 0.5 * (1.0 + 1.0 / (nf * nf)).ln();
    sum + int1 + int2 - 0.5 * (f1 + f2)
}

/// Safeguarded Newton-bisection for `G(lambda) = v` on `(lo, hi)`, where `G`
/// increases from `-inf` to `+inf`.  The endpoints are never evaluated.
fn solve_secular(v: f64, lo: f64, hi: f64) -> Result<f64> {
    let tol = 1e-10 * v.abs().max(1.0);
    let mut xl = lo;
    let mut xh = hi;
    let mut x = 0.5 * (lo + hi);
    let mut best = (x, f64::INFINITY);
    for _ in 0..200 {
        let gv = g_guarded(x)? - v;
        if gv.abs() <= tol {
            return Ok(x);
        }
        if gv.abs() < best.1 {
            best = (x, gv.abs());
        }
        if gv < 0.0 {
            xl = x;
        } else {
            xh = x;
        }
        let gp = trigamma_with_guard(Complex64::new(-x, 0.0), SOLVER_GUARD)?.re;
        let mut next = x - gv / gp;
        if !(next > xl && next < xh) {
            next = 0.5 * (xl + xh);
        }
        if (next - x).abs() <= f64::EPSILON * x.abs().max(1.0) {
            // Interval exhausted at machine precision.
            let res = (g_guarded(next)? - v).abs();
            if res <= 1e-6 * v.abs().max(1.0) {
                return Ok(next);
            }
            return Err(Error::Bracket {
                lo,
                hi,
                message: format!("stalled at lambda = {next} with residual {res:.3e}"),
            });
        }
        x = next;
    }
    Err(Error::Bracket {
        lo,
        hi,
        message: format!("no convergence; best residual {:.3e}", best.1),
    })
}

/// `n`-th eigenvalue of `H_zeta`: the unique root of `G(lambda) = K tan(theta/2)`
/// in `(n-1, n)` for `n >= 1`, the negative root for `n = 0`.  On the
/// `theta = pi` branch the spectrum is exactly `N0`.
pub fn eigenvalue(theta: ExtensionParameter, n: u32) -> Result<f64> {
    let v = match theta.coupling() {
        None => return Ok(n as f64),
        Some(v) => v,
    };
    if n >= 1 {
        let lo = (n - 1) as f64 + BRACKET_EPS;
        let hi = n as f64 - BRACKET_EPS;
        return solve_secular(v, lo, hi);
    }
    // Negative root: G(0^-) = +inf and G decreases to -inf logarithmically,
    // so expand the left endpoint until the sign changes.
    let hi = -0.5 / (v.abs() + 10.0);
    let mut lo = -1.0;
    loop {
        if g_guarded(lo)? < v {
            break;
        }
        lo *= 2.0;
        if lo < -1e300 {
            return Err(Error::Bracket {
                lo,
                hi,
                message: "negative root below representable range (theta too close to -pi)".into(),
            });
        }
    }
    solve_secular(v, lo, hi)
}

/// Eigenvalues `n = 0..=n_max` with interval certificates.
pub fn spectrum(theta: ExtensionParameter, n_max: u32) -> Result<SpectrumTable> {
    let mut entries = Vec::with_capacity(n_max as usize + 1);
    let mut residual_bound = 0.0f64;
    for n in 0..=n_max {
        let lambda = eigenvalue(theta, n)?;
        let bracket = if n == 0 {
            (f64::NEG_INFINITY, 0.0)
        } else {
            ((n - 1) as f64, n as f64)
        };
        let residual = match theta.coupling() {
            None => 0.0,
            Some(v) => (g_guarded(lambda)? - v).abs(),
        };
        residual_bound = residual_bound.max(residual);
        entries.push(SpectrumEntry {
            n,
            lambda,
            bracket,
            residual,
        });
    }
    Ok(SpectrumTable {
        theta,
        entries,
        residual_bound,
    })
}

/// Truncated eigenvector with coefficients `lambda/(k - lambda)` and an
/// analytic bound for the dropped tail mass.  Degenerates to `e_n` on the
/// `theta = pi` branch.
pub fn eigenvector(theta: ExtensionParameter, n: u32, n_trunc: usize) -> Result<EigenvectorFamily> {
    if n_trunc < 10 {
        return Err(Error::Domain("n_trunc must be >= 10".into()));
    }
    if theta.is_diagonal() {
        if n as usize >= n_trunc {
            return Err(Error::Domain(format!(
                "truncation {n_trunc} cannot hold the basis vector e_{n}"
            )));
        }
        let mut coefficients = vec![0.0; n_trunc];
        coefficients[n as usize] = 1.0;
        return Ok(EigenvectorFamily {
            theta,
            n,
            lambda: n as f64,
            coefficients,
            n_trunc,
            tail_norm_sq: 0.0,
        });
    }
    let lambda = eigenvalue(theta, n)?;
    let coefficients: Vec<f64> = (0..n_trunc).map(|k| lambda / (k as f64 - lambda)).collect();
    // sum_{k >= N} 1/(k-lambda)^2 = psi'(N - lambda)
    let tail_norm_sq = lambda * lambda * trigamma(n_trunc as f64 - lambda)?;
    Ok(EigenvectorFamily {
        theta,
        n,
        lambda,
        coefficients,
        n_trunc,
        tail_norm_sq,
    })
}

/// Complex-valued eigenvalue function `F(lambda)` of the extension `zeta`,
/// in closed form `(1 + zeta) G(lambda) - i (1 - zeta) K`.  Vanishes exactly
/// at the eigenvalues.  Rejects `zeta = -1`, where `F` degenerates to the
/// zero function.
pub fn eigenvalue_raw_f(theta: ExtensionParameter, lambda: f64) -> Result<Complex64> {
    if theta.is_diagonal() {
        return Err(Error::Domain(
            "F is identically zero at zeta = -1; the spectrum there is N0".into(),
        ));
    }
    let zeta = theta.zeta();
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    Ok((one + zeta) * g(lambda)? - i * (one - zeta) * constant_k())
}

/// Direct partial summation of the defining series for `F(lambda)` with a
/// two-term tail estimate; cross-check for [`eigenvalue_raw_f`].
pub fn eigenvalue_raw_f_series(
    theta: ExtensionParameter,
    lambda: f64,
    n_terms: usize,
) -> Complex64 {
    let zeta = theta.zeta();
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let a = lambda * (one + zeta) - i * (one - zeta);
    let b = i * lambda * (one - zeta) + (one + zeta);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n_terms {
        let kf = k as f64;
        sum += (a * kf + b) / ((kf - lambda) * (1.0 + kf * kf));
    }
    let nf = n_terms as f64;
    sum + a / nf + (a * (lambda - 1.0) + b) / (2.0 * nf * nf)
}

fn harmonic(n: u32) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// Second-order expansion of `lambda_n(theta)` near the `theta = +/- pi`
/// boundary, in the small parameter `x = cot(theta/2)/K`:
///
/// ```text
///   lambda_0 = -x - (gamma0/2) x^2                          (theta near +pi)
///   lambda_n = n - x + (-gamma0 + 2 H_n)/2 x^2              (theta near +pi)
///   lambda_m = (m-1) - x + (-gamma0 + 2 H_{m-1})/2 x^2      (theta near -pi, m >= 1)
/// ```
///
/// with `gamma0 = 2 gamma + psi(i) + psi(-i)` and `H_n` the harmonic numbers.
pub fn asymptotic_lambda(theta: ExtensionParameter, n: u32) -> Result<f64> {
    const TRUST: f64 = 0.2;
    let consts = specfun::NamedConstants::standard();
    let gamma0 = consts.gamma0;
    let t = theta.theta();
    let x = 1.0 / ((0.5 * t).tan() * consts.k);
    if (PI - t).abs() <= TRUST {
        if n == 0 {
            Ok(-x - 0.5 * gamma0 * x * x)
        } else {
            Ok(n as f64 - x + 0.5 * (-gamma0 + 2.0 * harmonic(n)) * x * x)
        }
    } else if (t + PI).abs() <= TRUST {
        if n == 0 {
            return Err(Error::Domain(
                "lambda_0 diverges logarithmically as theta -> -pi; no polynomial expansion".into(),
            ));
        }
        let m = n - 1;
        Ok(m as f64 - x + 0.5 * (-gamma0 + 2.0 * harmonic(m)) * x * x)
    } else {
        Err(Error::Domain(format!(
            "theta = {t} is outside the +/- pi trust regions (width {TRUST})"
        )))
    }
}

/// Default contour radius for [`contour_eigenvalue`].
pub const DEFAULT_CONTOUR_RADIUS: f64 = 0.75;

fn g_complex(z: Complex64) -> Result<Complex64> {
    Ok(Complex64::new(re_psi_i(), 0.0) - digamma_with_guard(-z, SOLVER_GUARD)?)
}

fn g_prime_complex(z: Complex64) -> Result<Complex64> {
    trigamma_with_guard(-z, SOLVER_GUARD)
}

/// Argument-principle evaluation of `lambda_n` for `n >= 1`:
///
/// ```text
///   lambda_n = (2n - 1) + (1/2 pi i) oint z G'(z)/(G(z) - v) dz
/// ```
///
/// over the circle centered at `n - 1/2`.  The disk contains the two poles
/// `n-1, n` of `G` and must contain exactly the one root `lambda_n`, which is
/// pre-checked via the winding number of `G - v` (zeros minus poles = -1).
pub fn contour_eigenvalue(theta: ExtensionParameter, n: u32, quad_points: usize) -> Result<f64> {
    contour_eigenvalue_with_radius(theta, n, quad_points, DEFAULT_CONTOUR_RADIUS)
}

pub fn contour_eigenvalue_with_radius(
    theta: ExtensionParameter,
    n: u32,
    quad_points: usize,
    radius: f64,
) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("contour formula applies to n >= 1".into()));
    }
    if !(0.5..1.0).contains(&radius) {
        return Err(Error::Domain(format!(
            "radius must lie in (1/2, 1), got {radius}"
        )));
    }
    let v = theta.coupling().ok_or_else(|| {
        Error::Domain("theta = pi has infinite coupling; contour formula undefined".into())
    })?;
    let q = quad_points.max(64);
    let center = Complex64::new(n as f64 - 0.5, 0.0);
    let mut winding = Complex64::new(0.0, 0.0);
    let mut moment = Complex64::new(0.0, 0.0);
    for j in 0..q {
        let phi = 2.0 * PI * j as f64 / q as f64;
        let dir = Complex64::new(phi.cos(), phi.sin());
        let z = center + radius * dir;
        let num = g_prime_complex(z)?;
        let den = g_complex(z)? - v;
        // (1/2 pi i) f(z) dz with dz = i r e^{i phi} d phi collapses to
        // (r/q) sum f(z_j) e^{i phi_j}.
        let weight = radius / q as f64 * dir;
        winding += weight * num / den;
        moment += weight * z * num / den;
    }
    let found = winding.re.round() as i64;
    if found != -1 {
        return Err(Error::Radius {
            radius,
            found,
            expected: -1,
        });
    }
    Ok((2 * n - 1) as f64 + moment.re)
}

/// Boundary form of `f = c_plus x_+ + c_minus x_-` in von Neumann
/// coordinates: `B(f, f) = |c_+|^2 ||x_+||^2 - |c_-|^2 ||x_-||^2` with
/// `||x_pm||^2 = K`.
pub fn boundary_form(c_plus: Complex64, c_minus: Complex64) -> f64 {
    (c_plus.norm_sqr() - c_minus.norm_sqr()) * constant_k()
}
