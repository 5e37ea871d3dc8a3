"""Smoke test for the ccrit extension module.

Build and install first, e.g. `pip install --no-build-isolation ./crates/python`.
"""

import math

import ccrit


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def main():
    euler_gamma = 0.5772156649015329
    close(ccrit.c1_constant(), 6 * euler_gamma / math.pi, 1e-15)
    c2 = ccrit.c2_constant()
    close(c2.value, 1.6571, 1e-4)
    assert c2.error_bound < 1e-12 and c2.terms_used > 0
    close(float(ccrit.c3_constant()), 2.6757, 1e-3)

    close(ccrit.bessel_k(0.5, 1.0), math.sqrt(math.pi / 2) * math.exp(-1.0), 1e-15)
    close(ccrit.riemann_zeta(2.0), math.pi**2 / 6, 1e-15)

    direct = ccrit.a_d_direct(2.0, [1.0], 1.0).value
    bessel = ccrit.a_d_bessel(2.0, [1.0], 1.0).value
    close(direct, bessel, 1e-12)

    e2 = ccrit.epstein_recurrence(2.0, [1.0, 1.0]).value
    close(e2, ccrit.e2_continued(6.0, 1.0, 1.0).value, 1e-12)

    loose = ccrit.TruncationPolicy(rel_tol=1e-10)
    close(ccrit.epstein_direct(2.0, [1.0, 1.0], loose).value, e2, 1e-8)

    g = ccrit.GLParams(1.0, 0.5, 2.0)
    film = ccrit.tc_film(g, 1.0)
    close(film.tc, 2.0 - ccrit.c1_constant() * 0.5, 1e-14)
    assert film.transition_exists
    wire = ccrit.tc_wire_square(g, 4.0)
    close(wire.tc, ccrit.tc_wire_general(g, 2.0, 2.0).tc, 1e-14)
    assert ccrit.tc_grain_cubic(g, 0.001).transition_exists is False

    sol = ccrit.solve_gap(3.0, [1.0], 1.0, 0.1)
    close(sol.m_sq, 1.0832104914, 1e-9)

    limit, coarse, fine = ccrit.pole_cancellation(1.0, 1.0)
    close(limit, 3.0757801409, 1e-9)
    assert fine < coarse

    try:
        ccrit.GLParams(-1.0, 0.5, 2.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative alpha accepted")
    try:
        ccrit.e3_continued(5.0, [1.0, 1.0, 1.0])
    except ArithmeticError:
        pass
    else:
        raise AssertionError("pole not reported")

    checks = ccrit.run_checks()
    failed = [name for name, passed, _ in checks if not passed]
    assert not failed, failed
    print(f"ccrit smoke test passed ({len(checks)} checks)")


if __name__ == "__main__":
    main()
