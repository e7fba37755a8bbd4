"""Kernel arithmetic: quantum integers/factorials, the triangle
coefficient, and signed log-domain products/sums."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowsum import (
    DomainError,
    PhaseMixError,
    QValue,
    RootContext,
    delta,
    qfact,
    qint,
    qmul,
    qsum,
    qvalue,
)
from shadowsum.errors import AdmissibilityError


def qint_complex(r, n):
    # independent oracle: literal (q^n - q^-n)/(q - q^-1)
    q = cmath.exp(2j * math.pi / r)
    return (q ** n - q ** (-n)) / (q - q ** (-1))


class TestQint:
    def test_zero(self):
        assert qint(RootContext(7), 0).is_zero

    def test_one(self):
        v = qint(RootContext(7), 1)
        assert (v.phase_quarter, v.sign, v.log_mag) == (0, 1, 0.0)

    def test_reflection_gives_minus_one(self):
        # sin(12*pi/7) = -sin(2*pi/7), so [6] = -1 exactly
        v = qint(RootContext(7), 6)
        assert v.sign == -1
        assert v.to_float() == pytest.approx(-1.0, abs=1e-15)

    @pytest.mark.parametrize("r", [5, 7, 11, 31, 101])
    def test_matches_complex_oracle(self, r):
        ctx = RootContext(r)
        for n in range(r):
            want = qint_complex(r, n).real
            got = qint(ctx, n)
            if n == 0:
                assert got.is_zero
            else:
                assert got.sign == (1 if want > 0 else -1)
                assert got.to_float() == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("r", [5, 101, 1001])
    def test_sign_structure(self, r):
        # [n] > 0 below r/2 and < 0 above; n = r/2 cannot occur (r odd)
        ctx = RootContext(r)
        for n in range(1, r):
            assert qint(ctx, n).sign == (1 if 2 * n < r else -1)

    def test_out_of_range(self):
        ctx = RootContext(7)
        with pytest.raises(DomainError):
            qint(ctx, 7)
        with pytest.raises(DomainError):
            qint(ctx, -1)


class TestQfact:
    def test_empty_product(self):
        v = qfact(RootContext(7), 0)
        assert (v.sign, v.log_mag) == (1, 0.0)

    def test_golden_ratio_value(self):
        # [2]! = [2] = 2 cos(2*pi/5) at r=5
        assert qfact(RootContext(5), 2).to_float() == pytest.approx(0.6180339887498949, rel=1e-14)

    def test_sign_from_complex_product_oracle(self):
        # [5]! at r=7 has two negative factors [4], [5]; the brute-force
        # complex product settles the sign as +1
        prod = 1.0
        for k in range(1, 6):
            prod *= qint_complex(7, k).real
        assert prod > 0
        v = qfact(RootContext(7), 5)
        assert v.sign == 1
        assert v.to_float() == pytest.approx(prod, rel=1e-12)

    @pytest.mark.parametrize("r", [5, 9, 31, 101])
    def test_matches_complex_oracle_all_n(self, r):
        ctx = RootContext(r)
        prod = 1.0
        for n in range(1, r):
            prod *= qint_complex(r, n).real
            got = qfact(ctx, n)
            assert got.sign == (1 if prod > 0 else -1)
            assert abs(got.to_float()) == pytest.approx(abs(prod), rel=1e-10)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            qfact(RootContext(7), 7)


class TestDelta:
    def test_all_zero_triple(self):
        assert delta(RootContext(7), 0, 0, 0).to_float() == 1.0

    def test_degenerate_triple_closed_form(self):
        # Delta(0,a,a) = sqrt([a]!/[a+1]!) = 1/sqrt([a+1])
        ctx = RootContext(7)
        want = 1.0 / math.sqrt(qint(ctx, 3).to_float())
        assert delta(ctx, 0, 2, 2).to_float() == pytest.approx(want, rel=1e-14)

    def test_imaginary_when_factorial_negative(self):
        # radicand [1]!^3 / [4]! < 0 at r=7 since [4]! < 0
        ctx = RootContext(7)
        assert qfact(ctx, 4).sign == -1
        v = delta(ctx, 2, 2, 2)
        assert v.phase_quarter == 1 and v.sign == 1

    def test_matches_complex_oracle(self):
        ctx = RootContext(9)
        for (a, b, c) in [(2, 2, 2), (0, 4, 4), (2, 4, 6), (6, 6, 2)]:
            num = 1.0
            for x in ((a + b - c) // 2, (a + c - b) // 2, (b + c - a) // 2):
                f = 1.0
                for k in range(1, x + 1):
                    f *= qint_complex(9, k).real
                num *= f
            den = 1.0
            for k in range(1, (a + b + c) // 2 + 2):
                den *= qint_complex(9, k).real
            rad = num / den
            want = cmath.sqrt(abs(rad)) * (1j if rad < 0 else 1)
            got = delta(ctx, a, b, c).to_complex()
            assert got == pytest.approx(want, rel=1e-12)

    def test_rejects_inadmissible(self):
        with pytest.raises(AdmissibilityError):
            delta(RootContext(7), 1, 1, 1)  # odd sum
        with pytest.raises(AdmissibilityError):
            delta(RootContext(7), 5, 5, 5)  # sum 15 > 2(r-2)


class TestQValueOps:
    def test_qmul_signs(self):
        one = qvalue(0, 1, 0.0)
        assert qmul(one, -one).sign == -1

    def test_qmul_phase_wraps_into_sign(self):
        i = qvalue(1, 1, 0.0)
        sq = qmul(i, i)
        assert (sq.phase_quarter, sq.sign) == (0, -1)

    def test_qsum_exact_cancellation(self):
        x = qvalue(0, 1, 3.5)
        assert qsum([x, -x]).is_zero

    def test_qsum_log_domain_identity(self):
        x = qvalue(0, 1, 1000.0)
        assert qsum([x, x]).log_mag == pytest.approx(1000.0 + math.log(2), abs=1e-13)

    def test_qsum_mixed_phase_raises(self):
        with pytest.raises(PhaseMixError):
            qsum([qvalue(0, 1, 0.0), qvalue(1, 1, 0.0)])

    def test_qsum_skips_zeros(self):
        vals = [qvalue(0, 0, 0.0), qvalue(1, 1, 2.0)]
        out = qsum(vals)
        assert (out.phase_quarter, out.sign) == (1, 1)

    def test_canonical_zero(self):
        z = qvalue(3, 0, 123.0)
        assert z.is_zero and z.phase_quarter == 0 and z.log_mag == -math.inf

    def test_roundtrip_complex(self):
        for v in [qvalue(0, -1, 2.25), qvalue(1, 1, -3.5), qvalue(2, 1, 0.125), qvalue(0, 0, 0.0)]:
            back = QValue.from_complex(v.to_complex())
            assert back.phase_quarter == v.phase_quarter
            assert back.sign == v.sign
            if v.sign:
                assert back.log_mag == pytest.approx(v.log_mag, rel=1e-12)

    def test_to_complex_overflow_guarded(self):
        with pytest.raises(OverflowError):
            qvalue(0, 1, 800.0).to_complex()

    @given(st.lists(st.tuples(st.sampled_from([-1, 1]), st.floats(-50, 50)), min_size=1, max_size=30))
    @settings(max_examples=200, deadline=None)
    def test_qsum_permutation_invariant(self, parts):
        vals = [qvalue(0, s, lm) for s, lm in parts]
        a = qsum(vals)
        b = qsum(list(reversed(vals)))
        # fsum is exactly rounded, so the two orders agree bitwise
        assert (a.sign, a.phase_quarter) == (b.sign, b.phase_quarter)
        if a.sign:
            assert a.log_mag == b.log_mag

    @given(
        st.tuples(st.integers(0, 3), st.sampled_from([-1, 1]), st.floats(-20, 20)),
        st.tuples(st.integers(0, 3), st.sampled_from([-1, 1]), st.floats(-20, 20)),
    )
    @settings(max_examples=200, deadline=None)
    def test_qmul_matches_complex(self, a, b):
        va, vb = qvalue(*a), qvalue(*b)
        want = va.to_complex() * vb.to_complex()
        assert qmul(va, vb).to_complex() == pytest.approx(want, rel=1e-12)


class TestRootContext:
    def test_rejects_even_or_small(self):
        for bad in (4, 2, 1, -3):
            with pytest.raises(DomainError):
                RootContext(bad)

    def test_extended_tables_agree_with_double(self):
        a, b = RootContext(101), RootContext(101, extended=True)
        for n in (1, 37, 50, 51, 100):
            assert b.sign_qfact[n] == a.sign_qfact[n]
            assert float(b.log_qfact[n]) == pytest.approx(a.log_qfact[n], abs=1e-11)

    def test_colors(self):
        assert list(RootContext(5).colors()) == [0, 1, 2, 3]
