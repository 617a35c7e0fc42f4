#!/usr/bin/env python3
"""Cross-validate the Rust implementation against mpmath at 40 digits.

Requires mpmath and a built extension module:
    cargo build -p zetaspec-py --release
    python3 python/cross_check_mpmath.py

Everything here recomputes the target values through an unrelated code path
(mpmath's own digamma/polygamma/lerchphi/li and its root finder), so this is
an end-to-end oracle for the constants, the special functions, the secular
eigenvalue solver, and the projection-norm formula.
"""

import pathlib
import shutil
import sys
import tempfile

import mpmath as mp


def locate_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        for name in ("libzetaspec_py.so", "libzetaspec_py.dylib"):
            cand = root / "target" / profile / name
            if cand.exists():
                return cand
    sys.exit("build the extension first: cargo build -p zetaspec-py --release")


def main():
    staging = pathlib.Path(tempfile.mkdtemp(prefix="zetaspec-xcheck-"))
    shutil.copy2(locate_module(), staging / "zetaspec_py.so")
    sys.path.insert(0, str(staging))
    import zetaspec_py as zs

    mp.mp.dps = 40
    failures = []

    def check(name, rust, ref, tol):
        err = abs(rust - float(ref))
        status = "ok " if err < tol else "FAIL"
        print(f"{status} {name}: err {err:.2e}")
        if err >= tol:
            failures.append(name)

    def check_complex(name, rust, ref, tol):
        err = abs(complex(rust.real, rust.imag) - complex(float(mp.re(ref)), float(mp.im(ref))))
        status = "ok " if err < tol else "FAIL"
        print(f"{status} {name}: err {err:.2e}")
        if err >= tol:
            failures.append(name)

    psi_i = mp.digamma(mp.mpc(0, 1))
    c = zs.constants()
    check("K = Im psi(i)", c["k"], mp.im(psi_i), 1e-14)
    check("Re psi(i)", c["re_psi_i"], mp.re(psi_i), 1e-14)
    check("gamma0", c["gamma0"], 2 * mp.euler + 2 * mp.re(psi_i), 1e-13)

    for z in [complex(3.7, -2.1), complex(-15.3, 0.4), complex(0.1, 9.0), complex(250.0, 1.0)]:
        check_complex(f"digamma({z})", zs.digamma(z), mp.digamma(mp.mpc(z.real, z.imag)), 1e-11)

    check("trigamma(0.5)", zs.trigamma(0.5), mp.polygamma(1, 0.5), 1e-12)
    check("trigamma(-4.3)", zs.trigamma(-4.3), mp.polygamma(1, -4.3), 1e-9)
    check("tetragamma(2.25)", zs.tetragamma(2.25), mp.polygamma(2, 2.25), 1e-12)

    for x in [0.17, 0.25, 0.5, 0.83]:
        ref = mp.nsum(lambda n: mp.e ** (2j * mp.pi * n * x) / (1 + n**2), [0, mp.inf])
        check_complex(f"Z({x})", zs.hurwitz_z(x), ref, 1e-10)

    check("li(2)", zs.log_integral(2.0), mp.li(2), 1e-12)
    check("li(0.5)", zs.log_integral(0.5), mp.li(0.5), 1e-12)
    big = mp.e ** (2 * mp.pi * 3)
    check("li(e^(6 pi)) relative", zs.log_integral(float(big)) / float(mp.li(big)), 1.0, 1e-12)

    check_complex(
        "lerch(0.3, 1, -i)",
        zs.lerch_phi(0.3 + 0j, 1.0, -1j),
        mp.lerchphi(0.3, 1, mp.mpc(0, -1)),
        1e-12,
    )

    # Independent eigenvalue solves of Re psi(i) - psi(-x) = K tan(theta/2).
    re_psi = mp.re(psi_i)
    k_const = mp.im(psi_i)
    for theta, n in [(0.0, 0), (0.0, 5), (1.0, 2), (-2.0, 1), (2.9, 3)]:
        v = k_const * mp.tan(mp.mpf(theta) / 2)
        secular = lambda lam: re_psi - mp.digamma(-lam) - v
        if n == 0:
            root = mp.findroot(secular, mp.mpf(-1.5), solver="secant")
        else:
            eps = mp.mpf("1e-9")
            root = mp.findroot(secular, [mp.mpf(n - 1) + eps, mp.mpf(n) - eps], solver="anderson")
        check(f"lambda_{n}(theta={theta})", zs.eigenvalue(theta, n), root, 1e-10)

    for phi in [0.5, -1.3, 2.7]:
        ref = 1 - mp.sin(mp.pi * phi) ** 2 / mp.pi**2 * mp.nsum(
            lambda n: 1 / (phi + n) ** 2, [1, mp.inf]
        )
        check(f"projection_norm({phi})", zs.projection_norm(phi), ref, 1e-12)

    if failures:
        sys.exit(f"{len(failures)} cross-checks failed: {failures}")
    print("all mpmath cross-checks passed")


if __name__ == "__main__":
    main()
