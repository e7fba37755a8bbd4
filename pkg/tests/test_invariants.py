"""RT/TV values, diagonal state sums, and growth series."""

import itertools
import math

import pytest

from shadowsum import (
    ConsistencyError,
    DomainError,
    GluingSpec,
    GrowthSeries,
    RootContext,
    V8,
    build_shadow,
    diagonal_color,
    diagonal_growth_series,
    diagonal_statesum,
    rt,
    sixj,
    state_sum,
    tv,
    tv_growth_series,
)
from shadowsum.invariants import GrowthRecord
from shadowsum.oracle import state_sum_naive, tv_naive


class TestDiagonalColor:
    @pytest.mark.parametrize("r,n", [(5, 2), (7, 2), (9, 4), (11, 4), (13, 6), (101, 50), (2001, 1000)])
    def test_values(self, r, n):
        assert diagonal_color(r) == n
        assert diagonal_color(r) % 2 == 0

    def test_domain(self):
        for bad in (3, 4, 6):
            with pytest.raises(DomainError):
                diagonal_color(bad)


class TestRT:
    def test_is_state_sum(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        ctx = RootContext(5)
        for gamma in itertools.product(range(4), repeat=4):
            assert rt(g, 5, gamma, ctx=ctx) == state_sum(g, ctx, gamma)

    def test_empty_admissible_zero(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        assert rt(g, 5, (1, 0, 0, 0)).is_zero

    def test_diagonal_positive_real_even_k(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        v = rt(g, 13, (diagonal_color(13),) * 4)
        assert v.phase_quarter == 0 and v.sign == 1


class TestDiagonalStatesum:
    def test_r7_frozen_value(self):
        # sum over m in 1..4 of sixj(2,m,m,2,m,m)^2, all positive
        g = build_shadow(GluingSpec.auto(2, 0))
        v = diagonal_statesum(g, 7)
        assert v.sign == 1 and v.phase_quarter == 0
        assert v.to_float() == pytest.approx(72.64130222500367, rel=1e-12)

    def test_r7_termwise(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        ctx = RootContext(7)
        want = math.fsum(sixj(ctx, (2, m, m, 2, m, m)).to_float() ** 2 for m in range(1, 5))
        assert diagonal_statesum(g, 7, ctx).to_float() == pytest.approx(want, rel=1e-12)

    def test_r5_positive(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        v = diagonal_statesum(g, 5)
        assert v.sign == 1

    def test_a_piece_nonnegative(self):
        g = build_shadow(GluingSpec.auto(0, 1))
        v = diagonal_statesum(g, 7)
        assert v.sign == 1 and v.phase_quarter == 0

    def test_matches_naive(self):
        for kl in ((2, 0), (0, 1)):
            g = build_shadow(GluingSpec.auto(*kl))
            for r in (5, 7, 9):
                got = diagonal_statesum(g, r)
                want = state_sum_naive(g, r, (diagonal_color(r),) * g.loops)
                assert got.to_complex() == pytest.approx(want, rel=1e-10)


class TestTV:
    def test_r5_matches_naive(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        got = tv(g, 5)
        want = tv_naive(g, 5)
        assert got.to_float() == pytest.approx(want, rel=1e-10)

    def test_positive(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        for r in (5, 7, 9):
            assert tv(g, r).sign == 1

    def test_lower_bound_by_diagonal_term(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        for r in (5, 7, 9, 11):
            lhs = tv(g, r)
            rhs = diagonal_statesum(g, r)
            assert float(lhs.log_mag) >= 2 * float(rhs.log_mag) - 1e-12

    def test_parallel_equals_serial_bitwise(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        serial = tv(g, 7, threads=1)
        for threads in (2, 4):
            par = tv(g, 7, threads=threads)
            assert par == serial  # identical dataclasses, bitwise log_mag

    def test_extended_mode_agrees(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        a = tv(g, 9)
        b = tv(g, 9, extended=True)
        assert float(b.log_mag) == pytest.approx(float(a.log_mag), abs=1e-11)

    def test_domain(self):
        g = build_shadow(GluingSpec.auto(2, 0))
        with pytest.raises(DomainError):
            tv(g, 4)


class TestGrowthSeries:
    def test_tv_series_records(self):
        series = tv_growth_series(GluingSpec.auto(2, 0), [5, 7, 9])
        assert [rec.r for rec in series.records] == [5, 7, 9]
        assert series.target == pytest.approx(4 * V8, rel=1e-15)
        growths = [rec.growth for rec in series.records]
        assert growths == sorted(growths)  # increasing at small r already

    def test_tv_series_frozen_r5(self):
        series = tv_growth_series(GluingSpec.auto(2, 0), [5])
        rec = series.records[0]
        assert rec.log_value == pytest.approx(6.791524027724014, rel=1e-12)
        assert rec.growth == pytest.approx(2 * math.pi / 5 * rec.log_value, rel=1e-15)

    def test_diagonal_series_targets(self):
        for kl, mult in (((2, 0), 4), ((0, 1), 4), ((2, 1), 8)):
            series = diagonal_growth_series(GluingSpec.auto(*kl), [7])
            assert series.target == pytest.approx(mult * V8, rel=1e-15)

    def test_diagonal_series_error_decreases(self):
        series = diagonal_growth_series(GluingSpec.auto(2, 0), [101, 201])
        errs = [rec.abs_error for rec in series.records]
        assert errs[1] < errs[0]

    def test_fit_constant(self):
        series = GrowthSeries("diagonal", 2, 0, 4 * V8)
        series.append(GrowthRecord(101, 10.0, 4 * V8 - 1.0, 4 * V8))
        series.append(GrowthRecord(201, 20.0, 4 * V8 - 0.5, 4 * V8))
        want = max(1.0 * 101 / math.log(101), 0.5 * 201 / math.log(201))
        assert series.fit_constant() == pytest.approx(want, rel=1e-12)
        assert series.fit_constant(min_r=150) == pytest.approx(0.5 * 201 / math.log(201), rel=1e-12)

    def test_rejects_even_r(self):
        with pytest.raises(DomainError):
            diagonal_growth_series(GluingSpec.auto(2, 0), [6])

    def test_records_must_increase(self):
        series = GrowthSeries("tv", 2, 0, 4 * V8)
        series.append(GrowthRecord(5, 1.0, 1.0, 4 * V8))
        with pytest.raises(DomainError):
            series.append(GrowthRecord(5, 1.0, 1.0, 4 * V8))
