"""Volume constants from the Lobachevsky series."""

import math

import mpmath
import pytest

from shadowsum import V3, V8, additivity_target, lobachevsky


def test_v8_against_catalan():
    # 8 * Lambda(pi/4) = 4G with G Catalan's constant; independent oracle
    want = float(4 * mpmath.catalan)
    assert V8 == pytest.approx(want, abs=1e-12)


def test_v8_digits():
    assert f"{V8:.12f}" == "3.663862376709"


def test_v3_value():
    # 2 * Lambda(pi/6) is the regular ideal tetrahedron volume
    assert V3 == pytest.approx(1.0149416064096536, abs=1e-12)


def test_lobachevsky_odd_symmetry_identity():
    # Lambda(pi/2 - t) relates to Lambda(2t) via the duplication identity
    # Lambda(2t) = 2 Lambda(t) - 2 Lambda(pi/2 - t)
    t = math.pi / 5
    lhs = lobachevsky(2 * t)
    rhs = 2 * lobachevsky(t) - 2 * lobachevsky(math.pi / 2 - t)
    assert lhs == pytest.approx(rhs, abs=1e-13)


def test_lobachevsky_against_quadrature():
    # quadrature oracle: split off the log singularity analytically and
    # integrate the smooth remainder -log(sin t / t) by midpoint rule
    theta = 0.7
    n = 20_000
    h = theta / n
    vals = [-math.log(math.sin(t := (i + 0.5) * h) / t) for i in range(n)]
    smooth = h * math.fsum(vals)
    singular = theta * (1.0 - math.log(2.0 * theta))
    assert lobachevsky(theta) == pytest.approx(smooth + singular, abs=1e-10)


def test_domain():
    with pytest.raises(ValueError):
        lobachevsky(0.0)
    with pytest.raises(ValueError):
        lobachevsky(math.pi)


@pytest.mark.parametrize("k,l,want", [(2, 0, 4 * V8), (0, 1, 4 * V8), (2, 1, 8 * V8)])
def test_targets(k, l, want):
    assert additivity_target(k, l) == pytest.approx(want, rel=1e-15)
