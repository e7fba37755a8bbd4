"""Hyperbolic volume constants from the Lobachevsky function.

The growth-rate targets are multiples of v8, the volume of the regular
ideal hyperbolic octahedron, computed at import as 8 * Lambda(pi/4)
rather than hardcoded.  The series below converges geometrically (ratio
(theta/pi)^2), so ~12 terms give full double precision at pi/4.
"""

from __future__ import annotations

import math


def _zeta_even(s: int, cutoff: int = 1000) -> float:
    """Riemann zeta at an even integer s >= 2 by direct summation with
    Euler-Maclaurin tail correction; good to ~1e-15 for cutoff=1000."""
    total = math.fsum(k ** (-s) for k in range(1, cutoff + 1))
    n = float(cutoff)
    total += n ** (1 - s) / (s - 1) - n ** (-s) / 2
    total += s * n ** (-s - 1) / 12
    total -= s * (s + 1) * (s + 2) * n ** (-s - 3) / 720
    return total


def lobachevsky(theta: float) -> float:
    """Lobachevsky function Lambda(theta) = -Int_0^theta log|2 sin t| dt
    for 0 < theta < pi, via the expansion

        Lambda(theta) = theta - theta*log(2*theta)
                        + sum_{m>=1} zeta(2m) theta^(2m+1) / (m (2m+1) pi^(2m)).
    """
    if not 0.0 < theta < math.pi:
        raise ValueError(f"series valid for 0 < theta < pi, got {theta}")
    total = theta - theta * math.log(2.0 * theta)
    ratio = (theta / math.pi) ** 2
    power = theta
    m = 1
    while True:
        power *= ratio
        term = _zeta_even(2 * m) * power / (m * (2 * m + 1))
        total += term
        if term < 1e-17 * abs(total) or m > 60:
            return total
        m += 1


#: Volume of the regular ideal hyperbolic octahedron, 8*Lambda(pi/4) ~ 3.663862376708876.
V8: float = 8.0 * lobachevsky(math.pi / 4.0)

#: Volume of the regular ideal tetrahedron, 2*Lambda(pi/6) ~ 1.0149416064096536.
V3: float = 2.0 * lobachevsky(math.pi / 6.0)


def additivity_target(k: int, l: int) -> float:
    """Simplicial-volume growth target 2(k+2l)*v8 for a gluing of k
    one-crossing pieces and l two-crossing pieces."""
    return 2.0 * (k + 2 * l) * V8
