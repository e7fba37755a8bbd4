"""Deliberately naive reference implementations in complex doubles.

These re-evaluate the same formulas as the main path with none of its
machinery: no log domain, no memoization, no pruning, no component
factorization.  They exist to cross-check the main path and share only
the admissibility predicates with it.  Each has a hard input ceiling
beyond which double-precision factorial products would degrade.
"""

from __future__ import annotations

import cmath
import itertools
import math

from .errors import RangeError
from .shadow import ShadowGraph
from .sixj import triple_admissible, tuple_admissible

_SIXJ_RMAX = 31
_STATESUM_RMAX = 9
_STATESUM_COLORINGS_MAX = 2_000_000
_TV_RMAX = 7
_TV_LOOPS_MAX = 6


def _tables(r: int):
    # complex quantum integers and factorials, rebuilt on every call
    q = cmath.exp(2j * math.pi / r)
    d = q - 1 / q
    n_max = 2 * r + 2
    qn = [(q ** n - q ** (-n)) / d for n in range(n_max)]
    fact = [1 + 0j] * n_max
    for n in range(1, n_max):
        fact[n] = fact[n - 1] * qn[n]
    return qn, fact


def _sqrt_real(x: complex) -> complex:
    # radicands are real numbers up to roundoff; negative ones go to the
    # positive imaginary axis
    v = x.real
    if v < 0:
        return complex(0.0, math.sqrt(-v))
    return complex(math.sqrt(v), 0.0)


_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


def sixj_naive(r: int, t) -> complex:
    """Literal evaluation of the 6j-symbol formula in complex arithmetic."""
    if r > _SIXJ_RMAX:
        raise RangeError(f"sixj_naive limited to r <= {_SIXJ_RMAX} (overflow guard), got {r}")
    entries = tuple(t.entries if hasattr(t, "entries") else t)
    if not tuple_admissible(r, entries):
        raise RangeError(f"{entries} is not admissible at r={r}")
    a1, a2, a3, a4, a5, a6 = entries
    qn, fact = _tables(r)

    def delta(x, y, z):
        rad = fact[(x + y - z) // 2] * fact[(x + z - y) // 2] * fact[(y + z - x) // 2] / fact[(x + y + z) // 2 + 1]
        return _sqrt_real(rad)

    pref = _I_POWERS[(-(a1 + a2 + a3 + a4 + a5 + a6)) % 4]
    pref *= delta(a1, a2, a3) * delta(a1, a5, a6) * delta(a2, a4, a6) * delta(a3, a4, a5)
    tvals = ((a1 + a2 + a3) // 2, (a1 + a5 + a6) // 2, (a2 + a4 + a6) // 2, (a3 + a4 + a5) // 2)
    qvals = ((a1 + a2 + a4 + a5) // 2, (a1 + a3 + a4 + a6) // 2, (a2 + a3 + a5 + a6) // 2)
    total = 0j
    for k in range(max(tvals), min(qvals) + 1):
        num = (-1) ** k * fact[k + 1]
        den = 1 + 0j
        for ti in tvals:
            den *= fact[k - ti]
        for qj in qvals:
            den *= fact[qj - k]
        total += num / den
    return pref * total


def state_sum_naive(g: ShadowGraph, r: int, gamma) -> complex:
    """Full nested-loop state sum over every region coloring, with the
    admissibility filter applied per coloring and no pruning."""
    if r > _STATESUM_RMAX:
        raise RangeError(f"state_sum_naive limited to r <= {_STATESUM_RMAX}, got {r}")
    q = len(g.regions)
    if (r - 1) ** q > _STATESUM_COLORINGS_MAX:
        raise RangeError(f"{(r - 1) ** q} region colorings exceed the naive ceiling")
    total = 0j
    for eta in itertools.product(range(r - 1), repeat=q):
        ok = all(
            triple_admissible(r, gamma[e.loop], eta[e.regions[0]], eta[e.regions[1]])
            for e in g.edges
        )
        if not ok:
            continue
        val = 1 + 0j
        for c in g.crossings:
            i, l = gamma[c.loops[0]], gamma[c.loops[1]]
            j, k, m, n = (eta[x] for x in c.regions)
            val *= sixj_naive(r, (i, j, k, l, m, n))
        for rid, reg in enumerate(g.regions):
            col = eta[rid]
            v = (-1) ** col * _tables(r)[0][col + 1]
            u = 1j * math.pi * (col / 2) * (1 - (col + 2) / r)
            val *= v ** reg.euler * cmath.exp(2 * u * float(reg.modified_gleam))
        total += val
    return total


def tv_naive(g: ShadowGraph, r: int) -> float:
    """Sum of |state_sum_naive|^2 over every link coloring."""
    if r > _TV_RMAX:
        raise RangeError(f"tv_naive limited to r <= {_TV_RMAX}, got {r}")
    if g.loops > _TV_LOOPS_MAX:
        raise RangeError(f"tv_naive limited to {_TV_LOOPS_MAX} loops, got {g.loops}")
    total = 0.0
    for gamma in itertools.product(range(r - 1), repeat=g.loops):
        total += abs(state_sum_naive(g, r, gamma)) ** 2
    return total
