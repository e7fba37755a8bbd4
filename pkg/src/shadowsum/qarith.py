"""Signed log-domain arithmetic at the root of unity q = exp(2*pi*i/r).

Every number that appears while evaluating quantum 6j-symbols and shadow
state sums is either real or purely imaginary, of the form

    sign * exp(log_mag) * sqrt(-1)**phase_quarter.

``QValue`` stores exactly that: an exact quarter-turn phase, an exact
sign, and the natural log of the absolute value.  Quantum factorials grow
like exp(r * v8 / (2*pi)), which overflows doubles near r ~ 180, so all
magnitudes stay in the log domain end to end.

Sign conventions follow sqrt(y) = sqrt(|y|) * sqrt(-1) for negative real
y, so square roots of negative reals land on phase_quarter = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, PhaseMixError

_NEG_INF = float("-inf")

# qsum treats a compensated sum below this (in units of the largest
# summand) as an exact cancellation.  math.fsum is exactly rounded, so in
# practice only true zeros land here.
CANCEL_EPS = 1e-300

# pi to long-double precision; np.pi is only a double.
_PI_LONG = np.longdouble("3.14159265358979323846264338327950288420")


@dataclass(frozen=True)
class QValue:
    """A real or purely imaginary number in sign/log-magnitude form.

    Canonical form has phase_quarter in {0, 1}; the factor
    sqrt(-1)**2 = -1 is absorbed into the sign.  sign == 0 encodes an
    exact zero (log_mag is then -inf and ignored).  Construct through
    :func:`qvalue` or the ``from_*`` helpers, which canonicalize.
    """

    phase_quarter: int
    sign: int
    log_mag: float

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def is_real(self) -> bool:
        return self.phase_quarter == 0

    @property
    def is_imaginary(self) -> bool:
        return self.phase_quarter == 1

    def to_complex(self) -> complex:
        """Value as a complex double.  Overflows above exp(709)."""
        if self.sign == 0:
            return 0j
        if self.log_mag > 709.0:
            raise OverflowError(f"magnitude exp({float(self.log_mag):.3f}) exceeds a double")
        mag = self.sign * math.exp(float(self.log_mag))
        return complex(0.0, mag) if self.phase_quarter == 1 else complex(mag, 0.0)

    def to_float(self) -> float:
        """Real value as a float; raises on imaginary input."""
        if self.sign != 0 and self.phase_quarter != 0:
            raise PhaseMixError("value is imaginary, not representable as a real float")
        return self.to_complex().real

    def __mul__(self, other: "QValue") -> "QValue":
        return qmul(self, other)

    def __neg__(self) -> "QValue":
        if self.sign == 0:
            return self
        return QValue(self.phase_quarter, -self.sign, self.log_mag)

    def __abs__(self) -> "QValue":
        if self.sign == 0:
            return self
        return QValue(0, 1, self.log_mag)

    def sqrt(self) -> "QValue":
        """Square root of a real value, sending negatives to the
        positive imaginary axis (sqrt(y) = sqrt(|y|) * sqrt(-1))."""
        if self.sign == 0:
            return ZERO
        if self.phase_quarter != 0:
            raise PhaseMixError("sqrt is defined here for real values only")
        return QValue(0 if self.sign > 0 else 1, 1, self.log_mag / 2)

    def power(self, n: int) -> "QValue":
        """Integer power; negative exponents invert the magnitude."""
        if n == 0:
            return ONE
        if self.sign == 0:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return ZERO
        return qvalue(self.phase_quarter * n, self.sign ** (n & 1), self.log_mag * n)

    @staticmethod
    def from_float(x: float) -> "QValue":
        if x == 0.0:
            return ZERO
        return QValue(0, 1 if x > 0 else -1, math.log(abs(x)))

    @staticmethod
    def from_complex(z: complex, tol: float = 1e-9) -> "QValue":
        """Classify a complex double as real or imaginary.  The minor
        component must be below tol relative to the major one."""
        a, b = abs(z.real), abs(z.imag)
        if a == 0.0 and b == 0.0:
            return ZERO
        if b <= tol * a:
            return QValue.from_float(z.real)
        if a <= tol * b:
            v = QValue.from_float(z.imag)
            return QValue(1, v.sign, v.log_mag)
        raise PhaseMixError(f"{z!r} is neither real nor imaginary within tol={tol:g}")


ZERO = QValue(0, 0, _NEG_INF)
ONE = QValue(0, 1, 0.0)
SQRT_MINUS_ONE = QValue(1, 1, 0.0)


def qvalue(phase_quarter: int, sign: int, log_mag: float) -> QValue:
    """Canonicalizing constructor: folds phase mod 4 into {0, 1}."""
    if sign == 0:
        return ZERO
    phase_quarter &= 3
    if phase_quarter >= 2:
        phase_quarter -= 2
        sign = -sign
    return QValue(phase_quarter, sign, log_mag)


def qmul(a: QValue, b: QValue) -> QValue:
    """Product: signs multiply, phases add mod 4, log magnitudes add."""
    if a.sign == 0 or b.sign == 0:
        return ZERO
    return qvalue(a.phase_quarter + b.phase_quarter, a.sign * b.sign, a.log_mag + b.log_mag)


def qprod(values: Iterable[QValue]) -> QValue:
    out = ONE
    for v in values:
        if v.sign == 0:
            return ZERO
        out = qmul(out, v)
    return out


def _is_longdouble(x) -> bool:
    return isinstance(x, np.longdouble)


def qsum(values: Iterable[QValue]) -> QValue:
    """Sum of QValues sharing one canonical phase (all real or all
    imaginary; exact zeros are skipped).

    Two-pass scheme: find the max log magnitude, then run a compensated
    sum of sign * exp(log_mag - max).  A scaled total below CANCEL_EPS
    is returned as the exact zero.  math.fsum makes the double path
    exactly rounded, hence permutation invariant.
    """
    phase = None
    nonzero: list[QValue] = []
    for v in values:
        if v.sign == 0:
            continue
        if phase is None:
            phase = v.phase_quarter
        elif v.phase_quarter != phase:
            raise PhaseMixError("qsum over mixed real/imaginary values")
        nonzero.append(v)
    if not nonzero:
        return ZERO
    mx = max(v.log_mag for v in nonzero)
    if any(_is_longdouble(v.log_mag) for v in nonzero) or _is_longdouble(mx):
        total = _kahan_longdouble(nonzero, mx)
        mag = np.abs(total)
        if mag < CANCEL_EPS:
            return ZERO
        return QValue(phase, 1 if total > 0 else -1, np.log(mag) + mx)
    total = math.fsum(v.sign * math.exp(v.log_mag - mx) for v in nonzero)
    if abs(total) < CANCEL_EPS:
        return ZERO
    return QValue(phase, 1 if total > 0 else -1, math.log(abs(total)) + mx)


def _kahan_longdouble(values: Sequence[QValue], mx) -> np.longdouble:
    total = np.longdouble(0.0)
    carry = np.longdouble(0.0)
    for v in values:
        term = v.sign * np.exp(np.longdouble(v.log_mag) - mx)
        y = term - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


class RootContext:
    """Fixed odd root q = exp(2*pi*i/r) with precomputed quantum-integer
    and quantum-factorial tables.

    Immutable after construction apart from an internal 6j memo dict,
    which other modules fill; cached values are pure functions of the
    key, so concurrent duplicate computation under the GIL is benign.

    extended=True builds the tables in 80-bit long doubles (slower;
    meant for r beyond ~1001 where double prefix sums start to matter).
    """

    __slots__ = ("r", "extended", "log_qint", "sign_qint", "log_qfact", "sign_qfact", "sixj_cache")

    def __init__(self, r: int, extended: bool = False):
        if r < 3 or r % 2 == 0:
            raise DomainError(f"r must be an odd integer >= 3, got {r}")
        self.r = r
        self.extended = extended
        n_vals = self._quantum_integers(r, extended)
        log_qint = [_NEG_INF] * r
        sign_qint = [0] * r
        log_qfact = [0.0] * r
        sign_qfact = [1] * r
        carry = 0.0
        if extended:
            log_qint[0] = np.longdouble(_NEG_INF)
            log_qfact[0] = np.longdouble(0.0)
            carry = np.longdouble(0.0)
        for n in range(1, r):
            sgn, lg = n_vals[n]
            sign_qint[n] = sgn
            log_qint[n] = lg
            # compensated prefix sum keeps log|[n]!| exactly rounded
            y = lg - carry
            t = log_qfact[n - 1] + y
            carry = (t - log_qfact[n - 1]) - y
            log_qfact[n] = t
            sign_qfact[n] = sign_qfact[n - 1] * sgn
        self.log_qint = log_qint
        self.sign_qint = sign_qint
        self.log_qfact = log_qfact
        self.sign_qfact = sign_qfact
        self.sixj_cache: dict = {}

    @staticmethod
    def _quantum_integers(r: int, extended: bool):
        """(sign, log|[n]|) for 0 <= n < r, with [n] = sin(2*pi*n/r)/sin(2*pi/r).

        The sign and the quadrant fold are decided by exact integer
        comparisons, and the sine argument is reduced to [0, pi/2]
        before evaluation; sign correctness near n = r/2 is load-bearing
        for every sign property downstream.
        """
        if extended:
            pi_v = _PI_LONG
            sin, log = np.sin, np.log
            denom = sin(pi_v * np.longdouble(2) / np.longdouble(r))
        else:
            pi_v = math.pi
            sin, log = math.sin, math.log
            denom = sin(2 * pi_v / r)
        log_denom = log(denom)
        out = [(0, _NEG_INF)]
        for n in range(1, r):
            sgn, m = (1, n) if 2 * n < r else (-1, r - n)  # sin(2*pi*n/r) sign flip past pi
            t = 2 * m if 4 * m <= r else r - 2 * m  # fold into [0, pi/2]
            if extended:
                val = sin(pi_v * np.longdouble(t) / np.longdouble(r))
            else:
                val = sin(pi_v * t / r)
            out.append((sgn, log(val) - log_denom))
        return out

    def colors(self) -> range:
        """The color set I_r = {0, ..., r-2}."""
        return range(self.r - 1)

    def __repr__(self) -> str:
        return f"RootContext(r={self.r}{', extended' if self.extended else ''})"


def qint(ctx: RootContext, n: int) -> QValue:
    """Quantum integer [n] = (q^n - q^-n)/(q - q^-1) = sin(2*pi*n/r)/sin(2*pi/r)."""
    if not 0 <= n <= ctx.r - 1:
        raise DomainError(f"qint defined for 0 <= n <= r-1, got n={n} at r={ctx.r}")
    return QValue(0, ctx.sign_qint[n], ctx.log_qint[n])


def qfact(ctx: RootContext, n: int) -> QValue:
    """Quantum factorial [n]! = prod_{k=1..n} [k], with [0]! = 1."""
    if not 0 <= n <= ctx.r - 1:
        raise DomainError(f"qfact defined for 0 <= n <= r-1, got n={n} at r={ctx.r}")
    return QValue(0, ctx.sign_qfact[n], ctx.log_qfact[n])


def delta(ctx: RootContext, a1: int, a2: int, a3: int) -> QValue:
    """Triangle coefficient of an admissible triple:

        Delta(a1,a2,a3) = sqrt( [x1]! [x2]! [x3]! / [T+1]! )

    with x_i the half triangle defects and T the half perimeter.  The
    radicand is real; a negative one yields a positive imaginary result
    via the sqrt(-1) convention.
    """
    from .sixj import require_triple_admissible  # deferred: avoids an import cycle

    require_triple_admissible(ctx.r, a1, a2, a3)
    x1 = (a1 + a2 - a3) // 2
    x2 = (a1 + a3 - a2) // 2
    x3 = (a2 + a3 - a1) // 2
    t1 = (a1 + a2 + a3) // 2 + 1
    lf, sf = ctx.log_qfact, ctx.sign_qfact
    rad_sign = sf[x1] * sf[x2] * sf[x3] * sf[t1]
    rad_log = lf[x1] + lf[x2] + lf[x3] - lf[t1]
    return QValue(0, rad_sign, rad_log).sqrt()
