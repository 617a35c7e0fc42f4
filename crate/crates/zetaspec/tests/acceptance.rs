//! Acceptance suite: one test per numbered criterion, each printing a
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see the measured values).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use zetaspec::kernel::{
    extension_spectrum, f_m, f_m_prime, gram, is_in_gf, k_even_odd, sample_gf, vandermonde_det,
    BoundarySet, GROUP_TOL,
};
use zetaspec::specfun::{
    constant_k, digamma, hurwitz_z_series, im_z_via_periodization, re_z_closed, NamedConstants,
};
use zetaspec::spectral::{self, ExtensionParameter};
use zetaspec::{boundary, forms, SeriesControl};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn param(theta: f64) -> ExtensionParameter {
    ExtensionParameter::new(theta).unwrap()
}

#[test]
fn acceptance_01_constants() {
    let consts = NamedConstants::standard();
    let psi_i = digamma(c(0.0, 1.0)).unwrap();
    let k_closed = 0.5 * (1.0 + PI * PI.cosh() / PI.sinh());
    assert!((psi_i.im - k_closed).abs() < 1e-6);
    assert!((consts.k - 2.0766740474).abs() < 1e-6);
    assert!((psi_i.re - 0.0946503).abs() < 1e-6);
    // The defining expression 2 gamma + psi(i) + psi(-i) is positive; the
    // reference value 1.34373 is matched in magnitude.
    assert!((consts.gamma0.abs() - 1.34373).abs() < 1e-4);
    println!(
        "acceptance 01 constants: PASS (K = {:.10}, Re psi(i) = {:.7}, gamma0 = {:.5})",
        consts.k, consts.re_psi_i, consts.gamma0
    );
}

#[test]
fn acceptance_02_root_bracketing() {
    let g_m1 = spectral::g(-1.0).unwrap();
    let g_m2 = spectral::g(-2.0).unwrap();
    assert!(g_m1 > 0.4233, "G(-1) = {g_m1}");
    assert!(g_m2 < -0.0347, "G(-2) = {g_m2}");
    let root = spectral::eigenvalue(param(0.0), 0).unwrap();
    assert!(root > -2.0 && root < -1.0);
    let residual = spectral::g(root).unwrap().abs();
    assert!(residual < 1e-10, "residual {residual:.3e}");
    println!(
        "acceptance 02 root bracketing: PASS (G(-1) = {g_m1:.6}, G(-2) = {g_m2:.6}, root {root:.12}, residual {residual:.2e})"
    );
}

#[test]
fn acceptance_03_functional_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut lambda: f64 = rng.gen_range(-30.0..30.0);
        if (lambda - lambda.round()).abs() < 1e-3 {
            lambda += 0.01;
        }
        let r = (spectral::g(lambda).unwrap() - spectral::g(lambda - 1.0).unwrap() + 1.0 / lambda)
            .abs();
        worst = worst.max(r);
    }
    assert!(worst < 1e-10, "max residual {worst:.3e}");
    println!("acceptance 03 functional identity: PASS (max |G(l)-G(l-1)+1/l| = {worst:.2e})");
}

#[test]
fn acceptance_04_spectrum_structure() {
    // Interval constraints on 50 random theta.
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    for _ in 0..50 {
        let theta = param(rng.gen_range(-3.1..3.1));
        let table = spectral::spectrum(theta, 30).unwrap();
        assert!(table.entries[0].lambda < 0.0);
        for e in &table.entries[1..] {
            assert!(e.lambda > (e.n - 1) as f64 && e.lambda < e.n as f64);
        }
    }
    // Gap decay at theta = 0: positive and strictly decreasing.
    let table = spectral::spectrum(param(0.0), 100).unwrap();
    let gaps: Vec<f64> = table.entries[1..]
        .iter()
        .map(|e| e.n as f64 - e.lambda)
        .collect();
    for w in gaps.windows(2) {
        assert!(w[1] > 0.0 && w[1] < w[0]);
    }
    println!(
        "acceptance 04 spectrum structure: PASS (intervals, positivity, monotone gap decay; gap at n = 100 is {:.6})",
        gaps.last().unwrap()
    );
}

#[test]
fn acceptance_04b_gap_magnitude_at_n100() {
    // Stated target: the theta = 0 gap drops below 1e-2 by n = 100.  This is
    // not attainable: near the n-th pole the secular equation gives
    // n - lambda_n(0) = 1/(psi(n+1) - Re psi(i)) + O(gap^2), a 1/ln(n) decay
    // that would need n ~ e^100 to cross 1e-2.  The test states the target
    // faithfully and records the measured value on failure.
    let table = spectral::spectrum(param(0.0), 100).unwrap();
    let gap_100 = 100.0 - table.entries[100].lambda;
    let predicted = 1.0
        / (zetaspec::specfun::digamma_real(101.0).unwrap() - NamedConstants::standard().re_psi_i);
    println!(
        "acceptance 04b gap magnitude: measured gap(100) = {gap_100:.6}, first-order model {predicted:.6}"
    );
    assert!(
        gap_100 < 1e-2,
        "gap(100) = {gap_100:.6} >= 1e-2 (logarithmic decay; first-order model {predicted:.6})"
    );
}

#[test]
fn acceptance_05_asymptotic_expansions() {
    for n in [0u32, 1, 5] {
        let mut cs = Vec::new();
        for delta in [1e-2, 1e-3] {
            let theta = param(PI - delta);
            let solver = spectral::eigenvalue(theta, n).unwrap();
            let expansion = spectral::asymptotic_lambda(theta, n).unwrap();
            cs.push((solver - expansion).abs() / delta.powi(3));
        }
        let ratio = cs[0] / cs[1];
        assert!(
            ratio > 0.5 && ratio < 2.0,
            "n = {n}: cubic constants {cs:?} unstable (ratio {ratio:.3})"
        );
        println!(
            "acceptance 05 asymptotics n = {n}: PASS (fitted C = {:.4e}, {:.4e}; ratio {ratio:.3})",
            cs[0], cs[1]
        );
    }
}

#[test]
fn acceptance_06_contour_identity() {
    let mut worst = 0.0f64;
    for &theta_v in &[0.0, 1.0, -2.0] {
        let theta = param(theta_v);
        for n in 1..=5u32 {
            let direct = spectral::eigenvalue(theta, n).unwrap();
            let contour = spectral::contour_eigenvalue(theta, n, 512).unwrap();
            worst = worst.max((direct - contour).abs());
        }
    }
    assert!(worst < 1e-6, "max deviation {worst:.3e}");
    println!("acceptance 06 contour identity: PASS (max |contour - solver| = {worst:.2e})");
}

#[test]
fn acceptance_07_eigenvector_orthogonality() {
    let theta = param(0.0);
    let n_trunc = 100_000;
    let vecs: Vec<_> = (0..=10)
        .map(|n| spectral::eigenvector(theta, n, n_trunc).unwrap())
        .collect();
    let mut max_off = 0.0f64;
    let mut min_diag = f64::INFINITY;
    for i in 0..vecs.len() {
        for j in 0..=i {
            let ip: f64 = vecs[i]
                .coefficients
                .iter()
                .zip(&vecs[j].coefficients)
                .map(|(a, b)| a * b)
                .sum();
            if i == j {
                min_diag = min_diag.min(ip);
            } else {
                max_off = max_off.max(ip.abs());
            }
        }
    }
    let ratio = max_off / min_diag;
    assert!(ratio < 1e-3, "off/diag ratio {ratio:.3e}");
    let mut worst_norm = 0.0f64;
    for v in &vecs {
        let exact = v.lambda * v.lambda * zetaspec::specfun::trigamma(-v.lambda).unwrap();
        worst_norm = worst_norm.max(((v.norm_sq() - exact) / exact).abs());
    }
    assert!(worst_norm < 1e-6, "norm identity residual {worst_norm:.3e}");
    println!(
        "acceptance 07 eigenvectors: PASS (off/diag {ratio:.2e}, norm residual {worst_norm:.2e})"
    );
}

#[test]
fn acceptance_08_kernel_suite() {
    let ctl = SeriesControl::default();
    // Positive definiteness on 50 random boundary sets, m <= 8.
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    for _ in 0..50 {
        let m = rng.gen_range(1..=8usize);
        let mut angles: Vec<f64> = Vec::new();
        while angles.len() < m {
            let a: f64 = rng.gen();
            if angles.iter().all(|&b| {
                let d = (a - b).abs();
                d.min(1.0 - d) > 1e-3
            }) {
                angles.push(a);
            }
        }
        let g = gram(&BoundarySet::new(angles).unwrap(), &ctl).unwrap();
        assert!(g.eigenvalues.iter().all(|&e| e > 0.0));
    }
    // F = {1, -1}: the form diagonalizes over (1, 1), (1, -1) with
    // coefficients (K_ev, K_odd); normalized eigenpairs are (2K_ev, 2K_odd).
    let f = BoundarySet::new(vec![0.0, 0.5]).unwrap();
    let g = gram(&f, &ctl).unwrap();
    let (k_ev, k_odd) = k_even_odd();
    assert!((g.eigenvalues[0] - 2.0 * k_ev).abs() < 1e-10);
    assert!((g.eigenvalues[1] - 2.0 * k_odd).abs() < 1e-10);
    let quad = |phi: [Complex64; 2]| -> f64 {
        let mut q = c(0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                q += phi[a].conj() * g.matrix[(a, b)] * phi[b];
            }
        }
        q.re
    };
    assert!((quad([c(1.0, 0.0), c(1.0, 0.0)]) - 4.0 * k_ev).abs() < 1e-10);
    assert!((quad([c(1.0, 0.0), c(-1.0, 0.0)]) - 4.0 * k_odd).abs() < 1e-10);
    let v = g.eigenvectors();
    let t = 1.0 / 2f64.sqrt();
    for (col, target) in [(0, [t, t]), (1, [t, -t])] {
        let ip: Complex64 = (0..2).map(|i| v[(i, col)].conj() * target[i]).sum();
        assert!((ip.norm() - 1.0).abs() < 1e-10);
    }
    // Vandermonde identity.
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = rng.gen_range(2..=6usize);
        let angles: Vec<f64> = (0..m)
            .map(|i| (i as f64 + rng.gen::<f64>() * 0.8) / m as f64)
            .collect();
        let fset = BoundarySet::new(angles).unwrap();
        let (det, product) = vandermonde_det(&fset);
        worst = worst.max(((det - product) / product).abs());
    }
    assert!(worst < 1e-8);
    println!("acceptance 08 kernel suite: PASS (vandermonde rel dev {worst:.2e})");
}

#[test]
fn acceptance_09_group_suite() {
    let ctl = SeriesControl::default();
    let f = BoundarySet::new(vec![0.0, 0.3, 0.65]).unwrap();
    let g = gram(&f, &ctl).unwrap();
    let mut worst_defect = 0.0f64;
    for seed in 0..10 {
        let m = sample_gf(&g, seed);
        worst_defect = worst_defect.max(m.defect);
        assert!(m.defect < 1e-10, "seed {seed}: defect {:.3e}", m.defect);
    }
    let m1 = sample_gf(&g, 101);
    let m2 = sample_gf(&g, 202);
    assert!(is_in_gf(&(&m1.matrix * &m2.matrix), &g, 4.0 * GROUP_TOL).is_ok());
    assert!(is_in_gf(
        &m1.matrix.clone().try_inverse().unwrap(),
        &g,
        4.0 * GROUP_TOL
    )
    .is_ok());
    // m = 1 reduction onto the index-(1,1) solver.
    let f1 = BoundarySet::new(vec![0.0]).unwrap();
    let g1 = gram(&f1, &ctl).unwrap();
    let theta = param(0.7);
    let m = is_in_gf(&DMatrix::from_element(1, 1, theta.zeta()), &g1, GROUP_TOL).unwrap();
    let ext = extension_spectrum(&f1, &m, 6).unwrap();
    let direct = spectral::spectrum(theta, 6).unwrap();
    let mut worst_lambda = 0.0f64;
    for (cell, entry) in ext.cells.iter().zip(direct.entries.iter()) {
        assert_eq!(cell.roots.len(), 1);
        worst_lambda = worst_lambda.max((cell.roots[0].lambda - entry.lambda).abs());
    }
    assert!(
        worst_lambda < 1e-8,
        "m=1 reduction deviation {worst_lambda:.3e}"
    );
    println!(
        "acceptance 09 G(F) suite: PASS (max defect {worst_defect:.2e}, m=1 reduction {worst_lambda:.2e})"
    );
}

#[test]
fn acceptance_10_f_m_derivative() {
    let ctl = SeriesControl::default();
    let f = BoundarySet::new(vec![0.0, 0.4]).unwrap();
    let g = gram(&f, &ctl).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let m = sample_gf(&g, 5000 + trial);
        let psi = [
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ];
        let lambda: f64 = rng.gen_range(0..3) as f64 + rng.gen_range(0.1..0.9);
        let h = 1e-5;
        let fd = (f_m(lambda + h, &f, &m, &psi).unwrap() - f_m(lambda - h, &f, &m, &psi).unwrap())
            / (2.0 * h);
        let closed = f_m_prime(lambda, &f, &m, &psi).unwrap();
        worst = worst.max((fd - closed).norm() / closed.norm());
    }
    assert!(worst < 1e-6, "max relative deviation {worst:.3e}");
    println!("acceptance 10 F_M derivative: PASS (max rel dev {worst:.2e})");
}

#[test]
fn acceptance_11_boundary_calculus() {
    let f_set = BoundarySet::new(vec![0.0, 0.35, 0.7]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1011);
    // Adjoint path agreement on 50 random domain elements at 20 points.
    let mut worst_path = 0.0f64;
    for _ in 0..50 {
        let mut coeffs = vec![c(0.0, 0.0); 8];
        for v in coeffs.iter_mut() {
            *v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let mut poly = coeffs;
        for &zeta in &f_set.points() {
            let mut next = vec![c(0.0, 0.0); poly.len() + 1];
            for (k, &a) in poly.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * zeta;
            }
            poly = next;
        }
        let g = boundary::HardyFunction::from_taylor(poly);
        let ab: Vec<(Complex64, Complex64)> = (0..3)
            .map(|_| {
                (
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let elem = boundary::AdjointDomainElement::new(g, ab, &f_set).unwrap();
        let img = boundary::adjoint_apply(&elem, &f_set, 2000, 1e-6).unwrap();
        for _ in 0..20 {
            let z = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
            worst_path = worst_path.max((img.direct.evaluate(z) - img.via_cp.evaluate(z)).norm());
        }
    }
    assert!(
        worst_path < 1e-6,
        "adjoint paths deviate by {worst_path:.3e}"
    );
    // Residue boundary form: zero on the operator domain and on graphs.
    let gk = gram(&f_set, &SeriesControl::default()).unwrap();
    let mut worst_b = 0.0f64;
    for seed in 0..10 {
        let m = sample_gf(&gk, seed);
        let psi: Vec<Complex64> = (0..3)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mpsi: Vec<Complex64> = {
            let v = nalgebra::DVector::from_column_slice(&psi);
            (&m.matrix * v).iter().copied().collect()
        };
        let elem = boundary::defect_combination(&psi, Some(&mpsi), &f_set).unwrap();
        worst_b = worst_b.max(
            boundary::residue_boundary_form(&elem, &f_set)
                .unwrap()
                .abs(),
        );
    }
    let domain_elem = boundary::AdjointDomainElement::new(
        boundary::HardyFunction::zero(),
        vec![(c(0.0, 0.0), c(0.0, 0.0)); 3],
        &f_set,
    )
    .unwrap();
    let b0 = boundary::residue_boundary_form(&domain_elem, &f_set).unwrap();
    assert_eq!(b0, 0.0);
    assert!(worst_b < 1e-4, "graph boundary form {worst_b:.3e}");
    println!(
        "acceptance 11 boundary calculus: PASS (paths {worst_path:.2e}, graph form {worst_b:.2e})"
    );
}

#[test]
fn acceptance_12_hurwitz_zeta() {
    let ctl = SeriesControl::default();
    let mut worst_re = 0.0f64;
    for i in 0..1000 {
        let x = (i as f64 + 0.5) / 1000.0;
        worst_re = worst_re.max((hurwitz_z_series(x, &ctl).re - re_z_closed(x)).abs());
    }
    assert!(worst_re < 1e-10, "closed-form deviation {worst_re:.3e}");
    let mut worst_half = 0.0f64;
    for k in 0..10 {
        worst_half = worst_half.max(hurwitz_z_series(k as f64 + 0.5, &ctl).im.abs());
    }
    assert!(worst_half < 1e-8, "Im Z at half-integers {worst_half:.3e}");
    let mut worst_per = 0.0f64;
    for &x in &[0.1, 0.25, 0.4] {
        let series = hurwitz_z_series(x, &ctl).im;
        let per = im_z_via_periodization(x, 20).unwrap();
        worst_per = worst_per.max((series - per).abs());
    }
    assert!(worst_per < 1e-4, "periodization deviation {worst_per:.3e}");
    println!(
        "acceptance 12 Hurwitz zeta: PASS (re {worst_re:.2e}, half-integers {worst_half:.2e}, periodization {worst_per:.2e})"
    );
}

#[test]
fn acceptance_13_forms() {
    // ratio * s_n in (0.9, 1.1) for n >= 1e3.
    for &n in &[1000u32, 3000, 10_000] {
        let r = forms::glb_demo(&[n])[0];
        let s: f64 = (1..=n).map(|i| 1.0 / i as f64).sum();
        let prod = r * s;
        assert!(prod > 0.9 && prod < 1.1, "n = {n}: {prod}");
    }
    // 1000 random admissible sine vectors: Rayleigh >= 1, Poincare holds.
    let mut rng = ChaCha8Rng::seed_from_u64(1013);
    for _ in 0..1000 {
        let mut b: Vec<Complex64> = (0..40)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        forms::project_to_constraints(&mut b);
        let r = forms::dirichlet_neumann_rayleigh(&b).unwrap();
        assert!(r >= 1.0 - 1e-12);
        let (lhs, rhs) = forms::poincare_check(&b).unwrap();
        assert!(lhs >= rhs - 1e-12);
    }
    let min = forms::finite_section_minimum(200);
    assert!(min >= 1.0 && min < 1.05, "finite-section minimum {min}");
    println!("acceptance 13 forms: PASS (section-200 minimum {min:.6})");
}

#[test]
fn acceptance_14_projection_norm() {
    let mut worst = 0.0f64;
    for i in 0..500 {
        let phi = -3.0 + 6.0 * (i as f64 + 0.5) / 500.0;
        let closed = forms::projection_norm(phi);
        let direct = forms::projection_norm_direct(phi, 10_000);
        worst = worst.max((closed - direct).abs());
        assert!((-1e-12..=1.0 + 1e-12).contains(&closed));
    }
    assert!(worst < 1e-8, "closed vs direct {worst:.3e}");
    for n in 0..4 {
        assert!((forms::projection_norm(n as f64 + 1e-5) - 1.0).abs() < 1e-6);
        assert!(forms::projection_norm(-(n as f64) - 1.0 - 1e-5) < 1e-6);
    }
    println!("acceptance 14 projection norm: PASS (max deviation {worst:.2e})");
}

#[test]
fn acceptance_15_friedrichs_krein() {
    let report = forms::friedrichs_krein_check(10, 1_000_000);
    assert_eq!(report.coordinate_residual, 0.0);
    assert_eq!(report.graph_pairing_residual, 0.0);
    assert!(report.adjoint_e0_residual < 1e-12);
    assert!(
        report.divergence_r_squared > 0.99,
        "R^2 = {}",
        report.divergence_r_squared
    );
    println!(
        "acceptance 15 Friedrichs/Krein: PASS (slope {:.4}, R^2 = {:.6})",
        report.divergence_slope, report.divergence_r_squared
    );
}

#[test]
fn acceptance_16_fock() {
    // Exact monomial norms and layer sums for |alpha| <= 20 (all values stay
    // below 2^53, so f64 equality is exact integer arithmetic).
    for d in 2..=3usize {
        for n in 0..=20u32 {
            assert_eq!(forms::fock_layer_sum(d, n), (d as f64).powi(n as i32));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1016);
    for _ in 0..200 {
        let d = rng.gen_range(1..=4usize);
        let mut alpha = vec![0u32; d];
        let mut rem = rng.gen_range(0..=20u32);
        for a in alpha.iter_mut().take(d - 1) {
            *a = rng.gen_range(0..=rem);
            rem -= *a;
        }
        alpha[d - 1] = rem;
        let m = forms::multinomial(&alpha);
        assert_eq!(forms::fock_norm(&alpha).unwrap(), 1.0 / m);
        assert_eq!(m.fract(), 0.0);
    }
    // Divergence witness: d = 2 exceeds 1e3 by n_max = 30; d = 1 converges.
    let partial2 = forms::essential_sa_witness(2, 30).unwrap();
    assert!(partial2[30] > 1e3, "d = 2 partial sum {}", partial2[30]);
    let partial1 = forms::essential_sa_witness(1, 4000).unwrap();
    let limit = 0.5 + 0.25 * PI * PI.cosh() / PI.sinh() + 0.25 * PI * PI / (PI.sinh() * PI.sinh());
    assert!(*partial1.last().unwrap() < 1.1 * limit);
    println!(
        "acceptance 16 Fock: PASS (d=2 witness {:.1}, d=1 limit {:.6})",
        partial2[30],
        partial1.last().unwrap()
    );
}
