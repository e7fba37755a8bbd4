"""Admissibility predicates and the quantum 6j-symbol at q = exp(2*pi*i/r).

The symbol of an admissible 6-tuple (a1..a6) is

    sqrt(-1)^(-sum a_i) * Delta(a1,a2,a3) Delta(a1,a5,a6) Delta(a2,a4,a6) Delta(a3,a4,a5)
        * sum_k (-1)^k [k+1]! / (prod_i [k - T_i]! * prod_j [Q_j - k]!),

k running from max T_i to min Q_j, where the T_i are the half sums of
the four face triples and the Q_j the half sums of the three opposite
pairs-of-pairs.  Terms with k+1 > r-1 vanish identically ([r] = 0).

Values are memoized per RootContext under a key canonical across the
six classical symmetries, so symmetric images share one evaluation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from .errors import AdmissibilityError, CancellationWarning, DomainError, UndefinedGrowthError
from .qarith import QValue, RootContext, qsum, qvalue

# relative (to the largest summand) threshold below which the k-sum is
# flagged as cancellation-dominated; in-scope diagonal colorings are
# same-sign, so a warning indicates misuse rather than expected data
CANCEL_WARN = 1e-9

@dataclass(frozen=True)
class Tuple6:
    """An ordered 6-tuple of colors with its face-triple structure.

    Face triples: (a1,a2,a3), (a1,a5,a6), (a2,a4,a6), (a3,a4,a5).
    T/Q data are derived on demand; they are integers exactly when the
    tuple is admissible for some r.
    """

    entries: tuple

    def __post_init__(self):
        e = tuple(int(a) for a in self.entries)
        if len(e) != 6:
            raise DomainError(f"need exactly 6 colors, got {len(e)}")
        if any(a < 0 for a in e):
            raise DomainError(f"colors must be nonnegative, got {e}")
        object.__setattr__(self, "entries", e)

    @property
    def faces(self) -> tuple:
        a1, a2, a3, a4, a5, a6 = self.entries
        return ((a1, a2, a3), (a1, a5, a6), (a2, a4, a6), (a3, a4, a5))

    def t_values(self) -> tuple:
        """Half sums T_1..T_4 of the face triples (integers when admissible)."""
        return tuple(sum(f) // 2 for f in self.faces)

    def q_values(self) -> tuple:
        """Half sums Q_1..Q_3 of the three quadrilaterals."""
        a1, a2, a3, a4, a5, a6 = self.entries
        return ((a1 + a2 + a4 + a5) // 2, (a1 + a3 + a4 + a6) // 2, (a2 + a3 + a5 + a6) // 2)

    def total(self) -> int:
        return sum(self.entries)


def _as_entries(t) -> tuple:
    if isinstance(t, Tuple6):
        return t.entries
    return Tuple6(tuple(t)).entries


def triple_violation(r: int, a1: int, a2: int, a3: int) -> str | None:
    """Why (a1,a2,a3) fails admissibility at r, or None if it holds."""
    for a in (a1, a2, a3):
        if not 0 <= a <= r - 2:
            raise DomainError(f"color {a} outside I_r = 0..{r - 2}")
    s = a1 + a2 + a3
    if s % 2:
        return "odd sum"
    if s > 2 * (r - 2):
        return f"sum {s} > 2(r-2) = {2 * (r - 2)}"
    if a1 + a2 < a3 or a1 + a3 < a2 or a2 + a3 < a1:
        return "triangle inequality violated"
    return None


def triple_admissible(r: int, a1: int, a2: int, a3: int) -> bool:
    """Even sum, sum <= 2(r-2), and all triangle inequalities."""
    return triple_violation(r, a1, a2, a3) is None


def require_triple_admissible(r: int, a1: int, a2: int, a3: int) -> None:
    why = triple_violation(r, a1, a2, a3)
    if why is not None:
        raise AdmissibilityError(f"triple ({a1},{a2},{a3}) not admissible at r={r}: {why}")


def tuple_admissible(r: int, t) -> bool:
    """All four face triples admissible."""
    entries = _as_entries(t)
    if any(a > r - 2 for a in entries):
        raise DomainError(f"colors {entries} outside I_r = 0..{r - 2}")
    return all(triple_admissible(r, *f) for f in Tuple6(entries).faces)


def violating_face(r: int, t) -> tuple | None:
    """First face triple that fails, with its reason: ((a,b,c), why)."""
    for f in Tuple6(_as_entries(t)).faces:
        why = triple_violation(r, *f)
        if why is not None:
            return f, why
    return None


def require_admissible(r: int, t) -> tuple:
    entries = _as_entries(t)
    bad = violating_face(r, entries)
    if bad is not None:
        face, why = bad
        raise AdmissibilityError(f"6-tuple {entries} not admissible at r={r}: face {face} {why}")
    return entries


def symmetry_images(t) -> tuple:
    """The six stated entry orderings with equal 6j value."""
    i, j, k, l, m, n = _as_entries(t)
    return (
        (i, j, k, l, m, n),
        (j, i, k, m, l, n),
        (i, k, j, l, n, m),
        (i, m, n, l, j, k),
        (l, m, k, i, j, n),
        (l, j, n, i, m, k),
    )


def _symmetry_group() -> tuple:
    """Position permutations generated by the six stated symmetries.

    The six forms alone are not closed under composition (two column
    swaps make a 3-cycle), so a well-defined orbit key needs their
    closure: all column permutations of the pairs (1,4), (2,5), (3,6)
    combined with row swaps in an even number of columns; 24 in total,
    each an equality of values by chaining the stated six.
    """
    import itertools

    pairs = ((0, 3), (1, 4), (2, 5))
    perms = set()
    for sigma in itertools.permutations(range(3)):
        for flips in ((), (0, 1), (0, 2), (1, 2)):
            idx = [0] * 6
            for col in range(3):
                top, bot = pairs[sigma[col]]
                if col in flips:
                    top, bot = bot, top
                idx[col] = top
                idx[col + 3] = bot
            perms.add(tuple(idx))
    return tuple(sorted(perms))


_SYMMETRY_GROUP = _symmetry_group()


def canonical_key(t) -> tuple:
    """Lexicographically least image under the symmetry group; the memo key."""
    entries = _as_entries(t)
    return min(tuple(entries[i] for i in perm) for perm in _SYMMETRY_GROUP)


def _eval_sixj(ctx: RootContext, entries: tuple) -> QValue:
    """Direct evaluation, no cache, no canonicalization (the order of
    operations follows the entry order, so symmetric images agree to
    rounding only)."""
    a1, a2, a3, a4, a5, a6 = entries
    r = ctx.r
    lf, sf = ctx.log_qfact, ctx.sign_qfact

    phase = (-(a1 + a2 + a3 + a4 + a5 + a6)) % 4
    pref_sign = 1
    pref_log = lf[0] * 0.0  # stays long double in extended mode
    for (x, y, z) in ((a1, a2, a3), (a1, a5, a6), (a2, a4, a6), (a3, a4, a5)):
        rad_sign = sf[(x + y - z) // 2] * sf[(x + z - y) // 2] * sf[(y + z - x) // 2] * sf[(x + y + z) // 2 + 1]
        pref_log += (lf[(x + y - z) // 2] + lf[(x + z - y) // 2] + lf[(y + z - x) // 2] - lf[(x + y + z) // 2 + 1]) / 2
        if rad_sign < 0:
            phase += 1  # sqrt of a negative real contributes sqrt(-1)

    tvals = ((a1 + a2 + a3) // 2, (a1 + a5 + a6) // 2, (a2 + a4 + a6) // 2, (a3 + a4 + a5) // 2)
    qvals = ((a1 + a2 + a4 + a5) // 2, (a1 + a3 + a4 + a6) // 2, (a2 + a3 + a5 + a6) // 2)
    k_lo, k_hi = max(tvals), min(qvals)
    if k_lo > k_hi:
        raise AdmissibilityError(f"empty summation range for {entries}; tuple not admissible")

    terms = []
    for k in range(k_lo, min(k_hi, r - 2) + 1):  # [k+1]! = 0 beyond k = r-2
        sgn = (1 if k % 2 == 0 else -1) * sf[k + 1]
        lg = lf[k + 1]
        for ti in tvals:
            sgn *= sf[k - ti]
            lg -= lf[k - ti]
        for qj in qvals:
            sgn *= sf[qj - k]
            lg -= lf[qj - k]
        terms.append(QValue(0, sgn, lg))
    total = qsum(terms)

    if total.sign != 0 and len(terms) > 1:
        peak = max(v.log_mag for v in terms)
        if total.log_mag - peak < math.log(CANCEL_WARN):
            warnings.warn(
                f"6j sum for {entries} at r={r} cancelled to "
                f"{math.exp(float(total.log_mag - peak)):.2e} of its largest term",
                CancellationWarning,
                stacklevel=3,
            )
    if total.sign == 0:
        return total
    return qvalue(phase, total.sign * pref_sign, total.log_mag + pref_log)


def sixj(ctx: RootContext, t) -> QValue:
    """Quantum 6j-symbol of an admissible 6-tuple, memoized under the
    canonical symmetry key."""
    entries = require_admissible(ctx.r, t)
    return _sixj_known_admissible(ctx, entries)


def _sixj_known_admissible(ctx: RootContext, entries: tuple) -> QValue:
    key = canonical_key(entries)
    cache = ctx.sixj_cache
    val = cache.get(key)
    if val is None:
        val = _eval_sixj(ctx, key)
        cache[key] = val
    return val


def clear_cache(ctx: RootContext) -> None:
    """Drop memoized 6j values (cached and fresh evaluation agree exactly)."""
    ctx.sixj_cache.clear()


def summand_signs(ctx: RootContext, t) -> tuple:
    """Sign of each summand S_k over the full range k = max T .. min Q.

    Structural zeros ([k+1]! = 0 once k exceeds r-2) are reported as 0;
    under the T/Q window hypotheses the nonzero signs agree.
    """
    entries = require_admissible(ctx.r, t)
    t6 = Tuple6(entries)
    tvals, qvals = t6.t_values(), t6.q_values()
    sf = ctx.sign_qfact
    r = ctx.r
    out = []
    for k in range(max(tvals), min(qvals) + 1):
        if k + 1 > r - 1:
            out.append(0)
            continue
        sgn = (1 if k % 2 == 0 else -1) * sf[k + 1]
        for ti in tvals:
            sgn *= sf[k - ti]
        for qj in qvals:
            sgn *= sf[qj - k]
        out.append(sgn)
    return tuple(out)


def hypotheses_ab(r: int, t) -> bool:
    """T/Q window hypotheses under which summand signs are constant:
    (a) 0 <= Q_j - T_i <= (r-2)/2 for all i, j and
    (b) (r-2)/2 <= T_i <= r-2 for all i.
    """
    entries = require_admissible(r, t)
    t6 = Tuple6(entries)
    tvals, qvals = t6.t_values(), t6.q_values()
    half = (r - 2) / 2
    for ti in tvals:
        if not half <= ti <= r - 2:
            return False
        for qj in qvals:
            if not 0 <= qj - ti <= half:
                return False
    return True


def dihedral_angles(r: int, t) -> tuple:
    """Angles alpha_i = |pi - 2*pi*a_i/r| for each color, and whether
    they form the dihedral angles of an ideal or hyperideal hyperbolic
    tetrahedron (at every vertex triple, alpha_i + alpha_j + alpha_k <= pi).
    """
    entries = require_admissible(r, t)
    alphas = tuple(abs(math.pi - 2 * math.pi * a / r) for a in entries)
    vertex_triples = ((0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4))
    hyperideal = all(
        alphas[i] + alphas[j] + alphas[k] <= math.pi + 1e-12 for (i, j, k) in vertex_triples
    )
    return alphas, hyperideal


def growth_rate(ctx: RootContext, t) -> float:
    """(2*pi/r) * log|6j|, straight from the log magnitude."""
    val = sixj(ctx, t)
    if val.sign == 0:
        raise UndefinedGrowthError(f"6j of {_as_entries(t)} is exactly zero at r={ctx.r}")
    return 2.0 * math.pi / ctx.r * float(val.log_mag)
