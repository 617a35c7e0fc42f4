//! Series truncation policy and summation kernels.
//!
//! The slowly convergent sums in this crate all have the shape
//! `sum_{k>=0} a_k w^k` with `|w| = 1` and `a_k` a smooth rational tail
//! (`1/(k - mu)`, `1/(1+k^2)`, ...).  Repeated Abel summation by parts turns
//! the tail into backward differences of `a_k` divided by powers of `(1 - w)`,
//! which converges fast enough for 1e-12 targets at moderate truncation as
//! long as `w` stays away from 1.  Callers special-case `w = 1` analytically.

use num_complex::Complex64;

/// Truncation policy for all `sum_{k in N0}` series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, abs_tol: f64) -> crate::Result<Self> {
        if max_terms < 16 {
            return Err(crate::Error::Domain(format!(
                "max_terms must be >= 16, got {max_terms}"
            )));
        }
        if rel_tol <= 0.0 || abs_tol <= 0.0 {
            return Err(crate::Error::Domain(
                "rel_tol and abs_tol must be positive".into(),
            ));
        }
        Ok(Self {
            max_terms,
            rel_tol,
            abs_tol,
        })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 1_000_000,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
        }
    }
}

/// Maximum number of Abel transforms applied to the series tail.  The
/// effective order is chosen adaptively: correction terms are added while
/// they decrease in magnitude (the transform behaves like an asymptotic
/// series once roundoff in the high differences dominates).
const ABEL_ORDER: usize = 12;

/// Iterator over `w^k` for `w = e(x)` that periodically resynchronizes the
/// phase from `k*x mod 1` (split multiplication keeps the reduction exact to
/// a few ulp for k up to ~2^26, so roundoff does not random-walk).
pub struct UnitPowers {
    x_hi: f64,
    x_lo: f64,
    k: u64,
    current: Complex64,
    step: Complex64,
}

impl UnitPowers {
    pub fn new(x: f64) -> Self {
        let split = 134_217_729.0; // 2^27 + 1
        let t = split * x;
        let x_hi = t - (t - x);
        let x_lo = x - x_hi;
        Self {
            x_hi,
            x_lo,
            k: 0,
            current: Complex64::new(1.0, 0.0),
            step: crate::e(x),
        }
    }

    fn exact_phase(&self, k: u64) -> Complex64 {
        let kf = k as f64;
        let hi = (kf * self.x_hi).fract();
        let lo = kf * self.x_lo;
        crate::e((hi + lo).fract())
    }
}

impl Iterator for UnitPowers {
    type Item = Complex64;

    fn next(&mut self) -> Option<Complex64> {
        let out = self.current;
        self.k += 1;
        if self.k % 1024 == 0 {
            self.current = self.exact_phase(self.k);
        } else {
            self.current *= self.step;
        }
        Some(out)
    }
}

/// Accelerated evaluation of `sum_{k>=0} a(k) w^k`, `w = e(x)` on the unit
/// circle with `w != 1`.  `a` must decay like a rational function of `k`.
///
/// Returns the sum together with an internal error estimate; the truncation
/// length escalates (up to `max_terms`) until the estimate drops below `tol`.
pub fn accelerated_unit_sum<F>(a: F, x: f64, tol: f64, max_terms: usize) -> (Complex64, f64)
where
    F: Fn(u64) -> Complex64,
{
    let w = crate::e(x);
    let one_minus_w = Complex64::new(1.0, 0.0) - w;
    let s = one_minus_w.norm();
    debug_assert!(s > 0.0, "accelerated_unit_sum requires w != 1");

    let mut m = 2048usize;
    loop {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut powers = UnitPowers::new(x);
        for k in 0..m as u64 {
            let wk = powers.next().unwrap();
            sum += a(k) * wk;
        }

        // Forward-difference table over a(M) .. a(M+J).
        let mut diffs: Vec<Complex64> = (0..=ABEL_ORDER).map(|j| a(m as u64 + j as u64)).collect();
        for j in 1..=ABEL_ORDER {
            for i in (j..=ABEL_ORDER).rev() {
                diffs[i] = diffs[i] - diffs[i - 1];
            }
        }

        // Add correction terms while they shrink; the first non-decreasing
        // term bounds the remainder (times the tail length for the dropped
        // un-transformed part).
        let mut tail = Complex64::new(0.0, 0.0);
        let mut w_mj = UnitPowers::new(x).exact_phase(m as u64);
        let mut denom = one_minus_w;
        let mut prev_mag = f64::INFINITY;
        let mut err_est = f64::INFINITY;
        for (j, d) in diffs.iter().enumerate() {
            let term = w_mj * d / denom;
            let mag = term.norm();
            if mag >= prev_mag || j == ABEL_ORDER {
                err_est = mag * (1.0 + s * m as f64 / (j as f64 + 1.0));
                break;
            }
            tail += term;
            prev_mag = mag;
            w_mj *= w;
            denom *= one_minus_w;
        }

        if err_est < tol || m >= max_terms {
            return (sum + tail, err_est);
        }
        m = (m * 4).min(max_terms.max(2048));
    }
}

/// Composite Simpson rule with a fixed even number of intervals; immune to
/// the zero-sampling degeneracies adaptive refinement can hit on oscillatory
/// integrands.
pub fn composite_simpson<F>(f: &F, a: f64, b: f64, intervals: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let n = intervals.max(2) & !1;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for j in 1..n {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + j as f64 * h);
    }
    sum * h / 3.0
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn integrate<F>(f: &F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }

    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}
