"""Smoke test for the harmonic_schwarz_py extension.

Build and install first, e.g. `maturin develop --release` in crates/python.
"""

import json
import math

import harmonic_schwarz_py as hs


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    assert close(hs.schwarz_pick_constant(3), 1.5)
    assert close(hs.khavinson_sharp_constant_3d(), 8 / (3 * math.sqrt(3)))
    assert close(hs.ball_volume(3), 4 * math.pi / 3)
    assert close(hs.hyp2f1(1.0, 1.0, 2.0, 0.5), 2 * math.log(2))
    assert close(hs.gegenbauer(1.0, 2, 0.3), 4 * 0.09 - 1)

    for rho in (0.0, 0.4, 0.9):
        assert close(hs.phi(3, rho), hs.phi(3, rho, method="closed3"))
    assert close(hs.phi(5, 0.4, method="series"), hs.phi(5, 0.4), 1e-9)
    assert close(hs.phi_second(4, 0.0), -1 / 30, 1e-9)
    assert close(hs.phi_second(6, 0.5, "closed"), hs.phi_second(6, 0.5, "fd"), 1e-6)

    assert close(hs.capital_c(4, 0.0), hs.gradient_bound(4, 0.0))
    assert hs.capital_c(5, 0.7) < hs.gradient_bound(5, 0.7)
    assert close(hs.capital_c(3, 0.5), hs.khavinson_radial_3d(0.5))

    u = hs.ZonalBoundaryData.hemisphere()
    rho = 0.5
    expect = 1 / rho - (1 - rho * rho) / (rho * math.sqrt(1 + rho * rho))
    assert close(u.value(3, rho), expect)
    assert close(abs(hs.extremal_gradient_at_origin(6)), hs.schwarz_pick_constant(6), 1e-9)
    d = hs.extremal_sign_data(4, 0.3)
    assert close(abs(d.radial_derivative(4, 0.3)), hs.capital_c(4, 0.3), 1e-8)

    for bad in (lambda: hs.capital_c(4, 1.0), lambda: hs.ZonalBoundaryData([0.5, 0.1], [1, 0, -1])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    report = json.loads(hs.verify(4, "concavity", 101))
    assert report["passed"], report
    report = json.loads(hs.verify(3, "concavity", 101))
    assert report["passed"]
    table = json.loads(hs.bound_table(3, [0.0, 0.5]))
    assert len(table["rows"]) == 2
    probe = json.loads(hs.probe(4, 10, 1))
    assert probe["report"]["passed"]

    print("smoke test ok")


if __name__ == "__main__":
    main()
