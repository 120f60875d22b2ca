"""Truncated Laurent series: windows, valuations, precision soundness."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from cf2.gf2poly import Gf2Poly
from cf2.laurent import LaurentSeries


def as_dict(s: LaurentSeries) -> dict[int, int]:
    """Known coefficients as {exponent n of z^-n: 1}."""
    out = {}
    m = s.mask
    i = 0
    while m:
        if m & 1:
            out[s.val + i] = 1
        m >>= 1
        i += 1
    return out


def naive_mul(a: LaurentSeries, b: LaurentSeries) -> dict[int, int]:
    out: dict[int, int] = {}
    for n in as_dict(a):
        for k in as_dict(b):
            out[n + k] = out.get(n + k, 0) ^ 1
    return {n: 1 for n, v in out.items() if v}


series_strategy = st.builds(
    LaurentSeries,
    st.integers(-20, 20),
    st.integers(0, (1 << 48) - 1),
    st.integers(30, 80),
)


def test_geometric_expansion():
    s = LaurentSeries.from_rational(Gf2Poly.parse("z"), Gf2Poly.parse("z^2+1"), 8)
    assert str(s) == "z^-1 + z^-3 + z^-5 + z^-7 + O(z^-8)"
    assert s.val == 1


def test_identity_expansion():
    s = LaurentSeries.from_rational(Gf2Poly.one(), Gf2Poly.one(), 4)
    assert s.val == 0 and s.mask == 1 and s.prec == 4
    assert str(s) == "1 + O(z^-4)"


def test_polynomial_part():
    s = LaurentSeries.from_rational(Gf2Poly.parse("z^2+z"), Gf2Poly.parse("z"), 4)
    assert s.val == -1
    assert str(s) == "z + 1 + O(z^-4)"


def test_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        LaurentSeries.from_rational(Gf2Poly.one(), Gf2Poly.zero(), 8)


def test_square_thins():
    s = LaurentSeries.from_terms([1, 2], 10)
    sq = s.square()
    assert as_dict(sq) == {2: 1, 4: 1}
    assert sq.prec == 20


def test_cancellation_raises_valuation():
    s = LaurentSeries.from_terms([3, 5], 10) + LaurentSeries.from_terms([3], 10)
    assert s.val == 5


def test_zero_sentinel():
    z = LaurentSeries.zero(10)
    assert z.is_zero and z.valuation == math.inf and z.known_zero_below() == 10
    assert str(z) == "O(z^-10)"


def test_inverse_geometric():
    s = LaurentSeries.from_terms([0, 1], 5)
    assert str(s.inv()) == "1 + z^-1 + z^-2 + z^-3 + z^-4 + O(z^-5)"


def test_inverse_of_zero_errors():
    with pytest.raises(ZeroDivisionError):
        LaurentSeries.zero(10).inv()


def test_coeff_unknown_region():
    s = LaurentSeries.from_terms([2], 6)
    assert s.coeff(2) == 1 and s.coeff(5) == 0
    with pytest.raises(ValueError):
        s.coeff(6)


@given(series_strategy, series_strategy)
def test_ultrametric(a, b):
    s = a + b
    assert s.valuation >= min(a.valuation, b.valuation)
    if a.valuation != b.valuation:
        if min(a.valuation, b.valuation) < s.prec:
            assert s.valuation == min(a.valuation, b.valuation)


@given(series_strategy, series_strategy)
def test_mul_matches_naive_below_precision(a, b):
    got = a * b
    want = naive_mul(a, b)
    for n, bit in as_dict(got).items():
        assert want.get(n, 0) == bit
    for n in want:
        if n < got.prec:
            assert got.coeff(n) == 1


@given(series_strategy)
def test_square_agrees_with_mul(a):
    sq = a.square()
    prod = a * a
    assert (sq + prod).is_zero


@given(series_strategy)
def test_inv_roundtrip(a):
    if a.is_zero:
        return
    back = a.inv().inv()
    assert (back + a).is_zero
    one = a * a.inv()
    assert one.val == 0 and one.mask == 1


def test_rational_times_denominator_is_numerator():
    rng = random.Random(1)
    for _ in range(30):
        num = Gf2Poly(rng.getrandbits(10))
        den = Gf2Poly(rng.getrandbits(10) | (1 << 10))
        if num.is_zero():
            continue
        s = LaurentSeries.from_rational(num, den, 64)
        residual = s.mul_poly(den) + LaurentSeries.from_poly(num, 64)
        assert residual.is_zero


def test_precision_soundness_pipeline():
    """Recomputing at double precision never changes a reported coefficient."""
    rng = random.Random(9)
    for _ in range(20):
        n1, d1 = Gf2Poly(rng.getrandbits(8) | 1), Gf2Poly(rng.getrandbits(8) | (1 << 8))
        n2, d2 = Gf2Poly(rng.getrandbits(6) | 1), Gf2Poly(rng.getrandbits(6) | (1 << 6))

        def pipeline(prec):
            a = LaurentSeries.from_rational(n1, d1, prec)
            b = LaurentSeries.from_rational(n2, d2, prec)
            return (a * b + a.square()).inv() * b

        lo = pipeline(128)
        hi = pipeline(256)
        assert (lo + hi).known_zero_below() >= lo.prec


def test_pow_negative():
    s = LaurentSeries.from_rational(Gf2Poly.one(), Gf2Poly.parse("z+1"), 64)
    assert (s.pow(-2) * s.pow(2)).agrees(LaurentSeries.one(32))


def test_render_tail_only_and_order():
    s = LaurentSeries.from_terms([-1, 0, 3], 200)
    assert str(s) == "z + 1 + z^-3 + O(z^-200)"


@given(series_strategy, st.integers(0, (1 << 12) - 1))
def test_mul_poly_matches_naive(a, pbits):
    p = Gf2Poly(pbits)
    if p.is_zero():
        return
    got = a.mul_poly(p)
    want: dict[int, int] = {}
    for n in as_dict(a):
        for j in range(pbits.bit_length()):
            if (pbits >> j) & 1:
                want[n - j] = want.get(n - j, 0) ^ 1
    for n, bit in as_dict(got).items():
        assert want.get(n, 0) == bit
    for n, bit in want.items():
        if n < got.prec and bit:
            assert got.coeff(n) == 1
