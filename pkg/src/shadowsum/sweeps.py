"""Batch diagnostics over whole admissibility classes of 6-tuples.

Three sweeps back the `lemmas` command and the acceptance suite:

  realness      every admissible tuple with the diagonal color n_r in
                positions 1 and 4 has a real 6j-symbol.
  diagonal sign the fully diagonal-in-m tuples (n_r, m, m, n_r, m, m)
                share one sign per r: negative iff r = 1 mod 4.
  summand signs for tuples inside the T/Q window hypotheses, the
                nonzero summands of the 6j k-sum share one sign.

Exhaustive per-tuple evaluation is far too slow in the millions-of-tuples
regime, so the realness and summand-sign sweeps run vectorized over
numpy arrays of (T, Q, sign-table) data that mirror exactly the phase
and sign logic of the scalar evaluator; the test suite pins the two
paths together on exhaustive small-r samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .invariants import diagonal_color
from .qarith import RootContext
from .sixj import sixj


@dataclass
class SweepReport:
    name: str
    r: int
    checked: int
    violations: list = field(default_factory=list)
    notes: str = ""

    @property
    def ok(self) -> bool:
        return not self.violations


def _sign_tables(ctx: RootContext):
    """Extended factorial sign table: sfe[n] = sign([n]!) for n <= r-1
    and 0 beyond (where the factorial vanishes identically)."""
    r = ctx.r
    sfe = np.zeros(3 * r, dtype=np.int8)
    sfe[: r] = np.asarray(ctx.sign_qfact, dtype=np.int8)
    return sfe


def _pair_admissible(r: int, c: int):
    cols = np.arange(r - 1)
    x, y = np.meshgrid(cols, cols, indexing="ij")
    s = c + x + y
    return (s % 2 == 0) & (s <= 2 * (r - 2)) & (x + y >= c) & (np.abs(x - y) <= c)


def realness_sweep(r: int, ctx: RootContext | None = None) -> SweepReport:
    """Exhaustively verify that every admissible (n_r, m1, m2, n_r, m3, m4)
    has an even quarter-turn phase, i.e. a real 6j value.

    The phase of the symbol is the parity of (sum of entries) plus the
    number of negative triangle-coefficient radicands; the alternating
    k-sum is real by construction.  Both ingredients vectorize: ADM/NEG
    are (m, m') tables for admissibility and radicand sign of the
    triple (n_r, m, m'), and the four constraints form the 4-cycle
    m1-m2-m3-m4, so for fixed (m1, m3) the parity contributions of m2
    and m4 separate.
    """
    if ctx is None:
        ctx = RootContext(r)
    n = diagonal_color(r)
    sf = np.asarray(ctx.sign_qfact, dtype=np.int8)
    cols = np.arange(r - 1)
    x, y = np.meshgrid(cols, cols, indexing="ij")
    adm = _pair_admissible(r, n)
    s = n + x + y
    rad = (
        sf[np.where(adm, (n + x - y) // 2, 0)]
        * sf[np.where(adm, (n + y - x) // 2, 0)]
        * sf[np.where(adm, (x + y - n) // 2, 0)]
        * sf[np.where(adm, s // 2 + 1, 0)]
    )
    neg = (rad < 0) & adm

    report = SweepReport("realness", r, 0)
    for m1 in range(r - 1):
        row1 = adm[m1]
        if not row1.any():
            continue
        for m3 in range(r - 1):
            v = row1 & adm[:, m3]  # candidate m2
            if not v.any():
                continue
            w = adm[m3] & adm[m1]  # candidate m4
            if not w.any():
                continue
            m2s = np.nonzero(v)[0]
            m4s = np.nonzero(w)[0]
            p2 = (m2s + neg[m1, m2s] + neg[m2s, m3]) % 2
            p4 = (m4s + neg[m3, m4s] + neg[m1, m4s]) % 2
            report.checked += m2s.size * m4s.size
            if p2.max() != p2.min() or p4.max() != p4.min() or (m1 + m3 + int(p2[0]) + int(p4[0])) % 2:
                bad2 = m2s[p2 != p2[0]]
                bad4 = m4s[p4 != p4[0]]
                m2 = int(bad2[0]) if bad2.size else int(m2s[0])
                m4 = int(bad4[0]) if bad4.size else int(m4s[0])
                report.violations.append((n, m1, m2, n, m3, m4))
    report.notes = f"n_r={n}"
    return report


def diagonal_sign_sweep(r: int, ctx: RootContext | None = None) -> SweepReport:
    """Evaluate the symbol of (n_r, m, m, n_r, m, m) for every admissible
    m and verify one shared sign: negative iff r = 1 mod 4."""
    if ctx is None:
        ctx = RootContext(r)
    n = diagonal_color(r)
    expected = -1 if r % 4 == 1 else 1
    report = SweepReport("diagonal-sign", r, 0, notes=f"n_r={n}, expected sign {expected:+d}")
    for m in range(n // 2, r - 1 - n // 2):
        val = sixj(ctx, (n, m, m, n, m, m))
        report.checked += 1
        if val.phase_quarter != 0 or val.sign != expected:
            report.violations.append(((n, m, m, n, m, m), val.phase_quarter, val.sign))
    return report


def window_tuples(r: int):
    """Admissible 6-tuples satisfying the T/Q window hypotheses,
    enumerated vectorized; yields (entries_array, T_array, Q_array)
    blocks with entries of shape (n, 6)."""
    c = r - 1
    hi = 2 * (r - 2)
    half = (r - 2) / 2
    cols = np.arange(c)
    x, y, z = np.meshgrid(cols, cols, cols, indexing="ij")
    s3 = x + y + z
    adm3 = (s3 % 2 == 0) & (s3 <= hi) & (x + y >= z) & (x + z >= y) & (y + z >= x)
    a1v, a2v, a3v = np.nonzero(adm3)
    t1v = (a1v + a2v + a3v) // 2
    keep = (t1v * 2 >= r - 2) & (t1v <= r - 2)
    a1v, a2v, a3v, t1v = a1v[keep], a2v[keep], a3v[keep], t1v[keep]

    for a1, a2, a3, t1 in zip(a1v, a2v, a3v, t1v):
        b1 = adm3[a1]  # (a5, a6) admissible with a1
        b2 = adm3[a2]  # (a4, a6)
        b3 = adm3[a3]  # (a4, a5)
        # cube axes (a4, a5, a6); b1 indexed [a5,a6], b2 [a4,a6], b3 [a4,a5]
        cube = b1[None, :, :] & b2[:, None, :] & b3[:, :, None]
        a4v, a5v, a6v = np.nonzero(cube)
        if a4v.size == 0:
            continue
        t2 = (a1 + a5v + a6v) // 2
        t3 = (a2 + a4v + a6v) // 2
        t4 = (a3 + a4v + a5v) // 2
        q1 = (a1 + a2 + a4v + a5v) // 2
        q2 = (a1 + a3 + a4v + a6v) // 2
        q3 = (a2 + a3 + a5v + a6v) // 2
        ok = np.ones(a4v.shape, dtype=bool)
        for tv in (t2, t3, t4):
            ok &= (tv * 2 >= r - 2) & (tv <= r - 2)
        for qv in (q1, q2, q3):
            for tv in (int(t1), t2, t3, t4):
                d = qv - tv
                ok &= (d >= 0) & (d <= half)
        if not ok.any():
            continue
        a4v, a5v, a6v = a4v[ok], a5v[ok], a6v[ok]
        entries = np.stack(
            [np.full(a4v.shape, a1), np.full(a4v.shape, a2), np.full(a4v.shape, a3), a4v, a5v, a6v],
            axis=1,
        )
        tq = np.stack([np.full(a4v.shape, t1), t2[ok], t3[ok], t4[ok]], axis=1)
        qq = np.stack([q1[ok], q2[ok], q3[ok]], axis=1)
        yield entries, tq, qq


def admissible_tuples(r: int):
    """All admissible 6-tuples at r, yielded as (n, 6) integer blocks
    sharing a leading face triple (a1, a2, a3)."""
    c = r - 1
    hi = 2 * (r - 2)
    cols = np.arange(c)
    x, y, z = np.meshgrid(cols, cols, cols, indexing="ij")
    s3 = x + y + z
    adm3 = (s3 % 2 == 0) & (s3 <= hi) & (x + y >= z) & (x + z >= y) & (y + z >= x)
    a1v, a2v, a3v = np.nonzero(adm3)
    for a1, a2, a3 in zip(a1v, a2v, a3v):
        cube = adm3[a1][None, :, :] & adm3[a2][:, None, :] & adm3[a3][:, :, None]
        a4v, a5v, a6v = np.nonzero(cube)
        if a4v.size == 0:
            continue
        yield np.stack(
            [np.full(a4v.shape, a1), np.full(a4v.shape, a2), np.full(a4v.shape, a3), a4v, a5v, a6v],
            axis=1,
        )


def count_admissible(r: int) -> int:
    return sum(block.shape[0] for block in admissible_tuples(r))


def max_growth_scan(ctx: RootContext) -> tuple:
    """Exhaustive maximum of the 6j growth rate over all admissible
    tuples: (max_growth, argmax_entries, tuples_scanned)."""
    r = ctx.r
    best = -math.inf
    best_t = None
    count = 0
    scale = 2.0 * math.pi / r
    for block in admissible_tuples(r):
        for row in block:
            entries = tuple(int(a) for a in row)
            count += 1
            val = sixj(ctx, entries)
            if val.sign == 0:
                continue
            growth = scale * float(val.log_mag)
            if growth > best:
                best, best_t = growth, entries
    return best, best_t, count


def summand_sign_sweep(r: int, ctx: RootContext | None = None) -> SweepReport:
    """For every admissible tuple inside the T/Q window, verify the
    nonzero summand signs of the 6j k-sum agree.

    The sign of summand k is (-1)^k sign([k+1]!) prod sign([k-T_i]!)
    prod sign([Q_j-k]!), with [n]! vanishing identically for n > r-1
    (such summands carry no sign).  The first summand k = max T is never
    zero, so it anchors the comparison; remaining offsets d vectorize
    across all tuples at once.
    """
    if ctx is None:
        ctx = RootContext(r)
    sfe = _sign_tables(ctx)
    report = SweepReport("summand-sign", r, 0)
    zero_terms = 0

    blocks = [b for b in window_tuples(r)]
    if not blocks:
        report.notes = "no window tuples"
        return report
    entries = np.concatenate([b[0] for b in blocks])
    tq = np.concatenate([b[1] for b in blocks])
    qq = np.concatenate([b[2] for b in blocks])
    kmax_t = tq.max(axis=1)
    kmin_q = qq.min(axis=1)
    length = kmin_q - kmax_t  # window hypotheses bound this by (r-2)/2

    def signs_at(k):
        s = np.where(k % 2 == 0, 1, -1).astype(np.int8) * sfe[k + 1]
        for i in range(4):
            s = s * sfe[k - tq[:, i]]
        for j in range(3):
            s = s * sfe[qq[:, j] - k]
        return s

    ref = signs_at(kmax_t)  # k = max T: structurally nonzero
    bad = np.zeros(entries.shape[0], dtype=bool)
    for d in range(1, int(length.max()) + 1):
        active = length >= d
        if not active.any():
            break
        s = signs_at(kmax_t + d)
        zero_terms += int(np.count_nonzero((s == 0) & active))
        bad |= active & (s != 0) & (s != ref)
    report.checked = int(entries.shape[0])
    for idx in np.nonzero(bad)[0][:20]:
        report.violations.append(tuple(int(a) for a in entries[idx]))
    report.notes = f"{zero_terms} vanishing summands skipped"
    return report
