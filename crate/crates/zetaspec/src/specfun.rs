//! Special functions backing the spectral formulas: the digamma function and
//! its first two derivatives, the Hurwitz-zeta kernel `Z(x) = sum e(nx)/(1+n^2)`,
//! the one-sided Hurwitz zeta `zeta_1`, the logarithmic integral, and the Lerch
//! transcendent.
//!
//! Digamma is evaluated by upward recurrence `psi(z+1) = psi(z) + 1/z` into the
//! region `Re z >= 14` followed by the Bernoulli asymptotic expansion, good to
//! ~1e-13 relative over `|z| <= 1e3`.  The structural identities
//! (`Im psi(i) = K`, reflection symmetry, residue -1 at the poles) are covered
//! by the unit tests below.

use crate::error::{Error, Result};
use crate::series::{accelerated_unit_sum, SeriesControl};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Arguments closer than this to a pole raise [`Error::Pole`].
pub const POLE_TOL: f64 = 1e-8;

/// Real-axis shift threshold for the asymptotic expansions.
const SHIFT: f64 = 14.0;

/// `B_{2n}/(2n)` for the digamma asymptotic `psi(x) ~ ln x - 1/(2x) - sum c_n x^{-2n}`.
const DIGAMMA_ASYMP: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// `B_{2n}` for the trigamma asymptotic `psi'(x) ~ 1/x + 1/(2x^2) + sum B_{2n} x^{-2n-1}`.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn near_nonpositive_integer(z: Complex64, tol: f64) -> Option<f64> {
    if z.im.abs() >= tol {
        return None;
    }
    let r = z.re.round();
    if r <= 0.5 && (z.re - r).abs() < tol {
        Some(r)
    } else {
        None
    }
}

/// Digamma `psi(z)` for complex `z` off the poles `-N0`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    digamma_with_guard(z, POLE_TOL)
}

/// Digamma with a caller-chosen pole guard.  Root finders need evaluations
/// much closer to the poles than the public [`POLE_TOL`] allows; the values
/// there are large but perfectly representable.
pub(crate) fn digamma_with_guard(z: Complex64, guard: f64) -> Result<Complex64> {
    if near_nonpositive_integer(z, guard).is_some() {
        return Err(Error::Pole {
            function: "digamma",
            arg: z.re,
            tol: guard,
        });
    }
    let mut result = Complex64::new(0.0, 0.0);
    let mut zz = z;
    while zz.re < SHIFT {
        result -= 1.0 / zz;
        zz += 1.0;
    }
    result += zz.ln() - 0.5 / zz;
    let inv2 = 1.0 / (zz * zz);
    let mut term = inv2;
    for c in DIGAMMA_ASYMP {
        result -= c * term;
        term *= inv2;
    }
    Ok(result)
}

/// Digamma restricted to the real line.
pub fn digamma_real(x: f64) -> Result<f64> {
    Ok(digamma(Complex64::new(x, 0.0))?.re)
}

/// Trigamma `psi'(z)` for complex `z` off the poles.
pub fn trigamma_complex(z: Complex64) -> Result<Complex64> {
    trigamma_with_guard(z, POLE_TOL)
}

pub(crate) fn trigamma_with_guard(z: Complex64, guard: f64) -> Result<Complex64> {
    if near_nonpositive_integer(z, guard).is_some() {
        return Err(Error::Pole {
            function: "trigamma",
            arg: z.re,
            tol: guard,
        });
    }
    let mut result = Complex64::new(0.0, 0.0);
    let mut zz = z;
    while zz.re < SHIFT {
        result += 1.0 / (zz * zz);
        zz += 1.0;
    }
    let inv = 1.0 / zz;
    let inv2 = inv * inv;
    result += inv + 0.5 * inv2;
    let mut term = inv2 * inv;
    for b in BERNOULLI {
        result += b * term;
        term *= inv2;
    }
    Ok(result)
}

/// Trigamma `psi'(x)` on the real line.
pub fn trigamma(x: f64) -> Result<f64> {
    Ok(trigamma_complex(Complex64::new(x, 0.0))?.re)
}

/// Tetragamma `psi''(x)` on the real line.
pub fn tetragamma(x: f64) -> Result<f64> {
    if near_nonpositive_integer(Complex64::new(x, 0.0), POLE_TOL).is_some() {
        return Err(Error::Pole {
            function: "tetragamma",
            arg: x,
            tol: POLE_TOL,
        });
    }
    let mut result = 0.0;
    let mut xx = x;
    while xx < SHIFT {
        result -= 2.0 / (xx * xx * xx);
        xx += 1.0;
    }
    let inv = 1.0 / xx;
    let inv2 = inv * inv;
    let mut asym = inv2 + inv2 * inv;
    let mut term = inv2 * inv2;
    for (n, b) in BERNOULLI.iter().enumerate() {
        asym += (2.0 * n as f64 + 3.0) * b * term;
        term *= inv2;
    }
    Ok(result - asym)
}

/// Constants pinned by the spectral formulas.
#[derive(Debug, Clone, Copy)]
pub struct NamedConstants {
    /// `K = sum 1/(1+n^2) = (1 + pi coth pi)/2 = Im psi(i)`.
    pub k: f64,
    pub gamma_euler: f64,
    /// `gamma0 = 2 gamma + psi(i) + psi(-i)`, the second-order coefficient of
    /// the near-boundary eigenvalue expansions (real, ~1.34373 in magnitude).
    pub gamma0: f64,
    /// `Re psi(i) ~ 0.0946503`.
    pub re_psi_i: f64,
}

impl NamedConstants {
    pub fn standard() -> Self {
        let psi_i = digamma(Complex64::new(0.0, 1.0)).expect("i is not a pole");
        NamedConstants {
            k: 0.5 * (1.0 + PI * cothf(PI)),
            gamma_euler: EULER_GAMMA,
            gamma0: 2.0 * EULER_GAMMA + 2.0 * psi_i.re,
            re_psi_i: psi_i.re,
        }
    }
}

fn cothf(x: f64) -> f64 {
    x.cosh() / x.sinh()
}

/// `K = sum 1/(1+n^2)`.
pub fn constant_k() -> f64 {
    0.5 * (1.0 + PI * cothf(PI))
}

/// Closed form for `Re Z(x)`: the 1-periodic extension of
/// `pi/2 cosh(2 pi (x - 1/2)) / sinh(pi) + 1/2` on `[0, 1]`.
pub fn re_z_closed(x: f64) -> f64 {
    let y = x - x.floor();
    0.5 * PI * (2.0 * PI * (y - 0.5)).cosh() / PI.sinh() + 0.5
}

/// Hurwitz-zeta kernel `Z(x) = sum_{n>=0} e(nx)/(1+n^2)` evaluated by Abel
/// acceleration of the raw series (both real and imaginary parts).  This is
/// the series route; [`hurwitz_z`] is the production route with the closed
/// real part.
///
/// Arguments within 1e-8 of an integer snap to the diagonal value `Z(0) = K`:
/// closer to the lattice the acceleration cannot resolve the kernel's cusp,
/// and coincident boundary points must surface as Gram degeneracy anyway.
pub fn hurwitz_z_series(x: f64, ctl: &SeriesControl) -> Complex64 {
    let y = x - x.floor();
    if y.abs() < 1e-8 || (1.0 - y).abs() < 1e-8 {
        return Complex64::new(constant_k(), 0.0);
    }
    let a = |k: u64| {
        let kf = k as f64;
        Complex64::new(1.0 / (1.0 + kf * kf), 0.0)
    };
    let (s, _) = accelerated_unit_sum(a, y, ctl.abs_tol.max(1e-13), ctl.max_terms.max(1 << 21));
    s
}

/// Hurwitz-zeta kernel `Z(x)`: closed-form real part, accelerated-series
/// imaginary part.  1-periodic in `x`, with the same near-integer snap to
/// `K` as [`hurwitz_z_series`].
pub fn hurwitz_z(x: f64, ctl: &SeriesControl) -> Complex64 {
    let y = x - x.floor();
    if y.abs() < 1e-8 || (1.0 - y).abs() < 1e-8 {
        return Complex64::new(constant_k(), 0.0);
    }
    Complex64::new(re_z_closed(x), hurwitz_z_series(x, ctl).im)
}

/// Single periodization term `phi(u) = (e^{-2 pi u} li(e^{2 pi u}) - e^{2 pi u} li(e^{-2 pi u}))/2`.
pub fn periodization_phi(u: f64) -> Result<f64> {
    if u == 0.0 {
        return Ok(0.0); // odd function
    }
    let t = u.abs();
    let a = 2.0 * PI * t;
    let value = 0.5 * ((-a).exp() * log_integral(a.exp())? - a.exp() * log_integral((-a).exp())?);
    Ok(if u > 0.0 { value } else { -value })
}

/// Partial periodization of `phi` recovering `Im Z(x)`:
/// `sum_{n=-n_wrap}^{n_wrap} phi(x+n)` plus a digamma tail estimate for the
/// dropped `|n| > n_wrap` pairs (the raw partial sums only converge like
/// `1/n_wrap`).
pub fn im_z_via_periodization(x: f64, n_wrap: u32) -> Result<f64> {
    if n_wrap < 1 {
        return Err(Error::Domain("n_wrap must be >= 1".into()));
    }
    let y = x - x.floor();
    let mut sum = 0.0;
    for n in -(n_wrap as i64)..=(n_wrap as i64) {
        sum += periodization_phi(y + n as f64)?;
    }
    // phi(t) = 1/(2 pi t) + 2/(2 pi t)^3 + O(t^-5) for large t, so the dropped
    // symmetric pairs telescope into digamma / tetragamma differences.
    let np = n_wrap as f64 + 1.0;
    let first = (digamma_real(np - y)? - digamma_real(np + y)?) / (2.0 * PI);
    let third = (tetragamma(np - y)? - tetragamma(np + y)?) / (2.0 * PI).powi(3);
    Ok(sum + first + third)
}

/// Exponential integral `Ei(y)` (principal value through the pole of the
/// defining integral).
fn expint_ei(y: f64) -> Result<f64> {
    debug_assert!(y.is_finite());
    if y == 0.0 {
        return Err(Error::Domain("Ei(0) is undefined".into()));
    }
    if y >= 35.0 {
        // Asymptotic e^y/y sum k!/y^k, truncated at the smallest term.
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        let mut k = 1.0f64;
        loop {
            let next = term * k / y;
            if next >= term || next < 1e-18 {
                break;
            }
            sum += next;
            term = next;
            k += 1.0;
        }
        Ok(y.exp() / y * sum)
    } else if y >= -4.0 {
        // Power series Ei(y) = gamma + ln|y| + sum y^k/(k k!).
        let mut sum = 0.0f64;
        let mut term = 1.0f64;
        for k in 1..200 {
            term *= y / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * (1.0 + sum.abs()) {
                break;
            }
        }
        Ok(EULER_GAMMA + y.abs().ln() + sum)
    } else {
        // Ei(y) = -E1(-y) via the continued fraction (modified Lentz).
        let t = -y;
        let tiny = 1e-300;
        let mut b = t + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for k in 1..400 {
            let a = -(k as f64) * (k as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            let delta = c * d;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                return Ok(-(-t).exp() * h);
            }
        }
        Err(Error::Quadrature("E1 continued fraction stalled".into()))
    }
}

/// Principal-value logarithmic integral `li(x) = pv int_0^x dt/ln t`, `x > 0`,
/// `x != 1`.
pub fn log_integral(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("li domain is x > 0, got {x}")));
    }
    if (x - 1.0).abs() < 1e-14 {
        return Err(Error::Domain(
            "li has a logarithmic singularity at x = 1".into(),
        ));
    }
    expint_ei(x.ln())
}

/// One-sided Hurwitz zeta `zeta_1(phi) = sum_{n>=1} 1/(phi+n)^2 = psi'(phi+1)`.
pub fn zeta1(phi: f64) -> Result<f64> {
    if phi < -0.5 {
        let r = phi.round();
        if (phi - r).abs() < POLE_TOL {
            return Err(Error::Pole {
                function: "zeta1",
                arg: phi,
                tol: POLE_TOL,
            });
        }
    }
    trigamma(phi + 1.0)
}

/// Lerch transcendent `Phi(z, s, v) = sum_k z^k/(k+v)^s` for `|z| < 1`, or
/// `|z| = 1` with `s > 1`.
pub fn lerch_phi(z: Complex64, s: f64, v: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if near_nonpositive_integer(v, POLE_TOL).is_some() {
        return Err(Error::Pole {
            function: "lerch_phi",
            arg: v.re,
            tol: POLE_TOL,
        });
    }
    let r = z.norm();
    if r > 1.0 + 1e-14 {
        return Err(Error::Domain(format!(
            "lerch_phi requires |z| <= 1, got {r}"
        )));
    }
    let on_circle = r > 1.0 - 1e-14;
    if on_circle && s <= 1.0 {
        return Err(Error::Convergence(format!(
            "lerch_phi on |z| = 1 requires s > 1, got s = {s}"
        )));
    }
    if on_circle {
        let angle = z.im.atan2(z.re) / (2.0 * PI);
        let y = angle - angle.floor();
        let a = |k: u64| (v + k as f64).powf(-s);
        if y.abs() < 1e-13 || (1.0 - y).abs() < 1e-13 {
            // Hurwitz zeta: direct sum with an Euler-Maclaurin tail.
            let n = ctl.max_terms.clamp(64, 100_000);
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..n as u64 {
                sum += a(k);
            }
            let edge = v + n as f64;
            sum += edge.powf(1.0 - s) / (s - 1.0) + 0.5 * edge.powf(-s)
                - s / 12.0 * edge.powf(-s - 1.0);
            return Ok(sum);
        }
        let (sum, _) = accelerated_unit_sum(a, y, ctl.abs_tol.max(1e-13), ctl.max_terms);
        return Ok(sum);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..ctl.max_terms {
        let kv = v + k as f64;
        sum += zk / kv.powf(s);
        zk *= z;
        let kf = k as f64 + 1.0 + v.re.min(0.0);
        let tail = zk.norm() / (kf.max(1.0).powf(s) * (1.0 - r));
        if tail < ctl.abs_tol + ctl.rel_tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "lerch_phi did not reach tolerance within {} terms",
        ctl.max_terms
    )))
}

/// `sum_{k>=0} e(kx) [1/(k-mu) - 1/(k-nu)]`.
///
/// For `x = 0 (mod 1)` this is `psi(-nu) - psi(-mu)`; off the integers the
/// conditionally convergent pieces are summed together under Abel
/// acceleration.
pub fn lerch_unit_pair(x: f64, mu: Complex64, nu: Complex64) -> Result<Complex64> {
    let y = x - x.floor();
    if y.abs() < 1e-13 || (1.0 - y).abs() < 1e-13 {
        return Ok(digamma(-nu)? - digamma(-mu)?);
    }
    let a = |k: u64| {
        let kf = k as f64;
        1.0 / (kf - mu) - 1.0 / (kf - nu)
    };
    let (s, _) = accelerated_unit_sum(a, y, 1e-13, 1 << 22);
    Ok(s)
}

/// `sum_{k>=0} e(kx) / (k-mu)^2`; `trigamma(-mu)` at `x = 0 (mod 1)`.
pub fn unit_inv_square(x: f64, mu: Complex64) -> Result<Complex64> {
    let y = x - x.floor();
    if y.abs() < 1e-13 || (1.0 - y).abs() < 1e-13 {
        return trigamma_complex(-mu);
    }
    let a = |k: u64| {
        let d = k as f64 - mu;
        1.0 / (d * d)
    };
    let (s, _) = accelerated_unit_sum(a, y, 1e-13, 1 << 22);
    Ok(s)
}
