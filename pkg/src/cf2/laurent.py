"""Truncated Laurent series in 1/z over GF(2) with exact valuation tracking.

A series is a window of exactly known coefficients: bit i of ``mask`` is
the coefficient of z^-(val+i).  ``prec`` is the absolute precision: the
coefficient of z^-n is exact for every n < prec and unknown from
n = prec on.  Polynomial parts are allowed (negative valuation).

The zero-to-precision series is the sentinel ``mask == 0``; its ``val``
is meaningless and its ``valuation`` reports infinity together with the
precision up to which zeroness is known.  Nonzero series always keep
bit 0 of ``mask`` set, so ``val`` is the exact valuation and the norm
2^-val is ultrametric under addition.

Precision bookkeeping (p = abs. precision, v = valuation):
  add      min(p_a, p_b)
  mul      min(p_a + v_b, p_b + v_a)
  square   2 * p_a              (cross terms vanish in characteristic 2)
  inv      p_a - 2 * v_a
The square rule is exact: the unknown tail t of a has valuation >= p,
and (k + t)^2 = k^2 + t^2 carries its first unknown coefficient at 2p.
"""

from __future__ import annotations

import math

from .gf2poly import Gf2Poly, clmul, clsq


def _inv_mask(m: int, nbits: int) -> int:
    """Inverse of the power series with bit mask m (bit 0 set) mod t^nbits."""
    if m & 1 == 0:
        raise ValueError("constant term must be 1")
    x = 1
    k = 1
    while k < nbits:
        k = min(2 * k, nbits)
        window = (1 << k) - 1
        e = clmul(m & window, x) & window  # 1 + error, error val >= k/2
        x = (x ^ clmul(x, e ^ 1)) & window
    return x


class LaurentSeries:
    """Immutable truncated series over GF(2) in powers of 1/z."""

    __slots__ = ("val", "mask", "prec")

    def __init__(self, val: int, mask: int, prec: int):
        if mask < 0:
            raise ValueError("mask must be nonnegative")
        if mask:
            window = prec - val
            if window <= 0:
                mask = 0
            else:
                mask &= (1 << window) - 1
        if mask:
            strip = (mask & -mask).bit_length() - 1
            val += strip
            mask >>= strip
        else:
            val = 0
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, *a):
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, prec: int) -> LaurentSeries:
        return cls(0, 0, prec)

    @classmethod
    def one(cls, prec: int) -> LaurentSeries:
        return cls(0, 1, prec)

    @classmethod
    def from_poly(cls, poly: Gf2Poly, prec: int) -> LaurentSeries:
        if poly.is_zero():
            return cls.zero(prec)
        return cls(-poly.degree, poly.reverse().bits, prec)

    @classmethod
    def from_terms(cls, exponents, prec: int) -> LaurentSeries:
        """Series with coefficient 1 exactly at z^-n for each listed n."""
        exponents = sorted(set(exponents))
        if not exponents:
            return cls.zero(prec)
        v = exponents[0]
        mask = 0
        for n in exponents:
            mask |= 1 << (n - v)
        return cls(v, mask, prec)

    @classmethod
    def from_rational(cls, num: Gf2Poly, den: Gf2Poly, prec: int) -> LaurentSeries:
        """Expansion of num/den in powers of 1/z to absolute precision prec."""
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls.zero(prec)
        v = den.degree - num.degree
        if prec <= v:
            raise ValueError(f"precision {prec} too small for valuation {v}")
        nbits = prec - v
        d_inv = _inv_mask(den.reverse().bits, nbits)
        mask = clmul(num.reverse().bits, d_inv) & ((1 << nbits) - 1)
        return cls(v, mask, prec)

    # -- accessors ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when the series is zero to its stated precision."""
        return self.mask == 0

    @property
    def valuation(self):
        """Exact valuation; math.inf for the zero-to-precision series."""
        return math.inf if self.mask == 0 else self.val

    def known_zero_below(self) -> int:
        """Largest exponent bound below which the series is provably zero.

        Equals the exact valuation for nonzero series and the absolute
        precision for the zero-to-precision sentinel.
        """
        return self.prec if self.mask == 0 else self.val

    def coeff(self, n: int) -> int:
        """Coefficient of z^-n; n must be below the precision."""
        if n >= self.prec:
            raise ValueError(f"coefficient of z^-{n} unknown at precision {self.prec}")
        if self.mask == 0 or n < self.val:
            return 0
        return (self.mask >> (n - self.val)) & 1

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        prec = min(self.prec, other.prec)
        if self.mask == 0:
            return LaurentSeries(other.val, other.mask, prec)
        if other.mask == 0:
            return LaurentSeries(self.val, self.mask, prec)
        v = min(self.val, other.val)
        mask = (self.mask << (self.val - v)) ^ (other.mask << (other.val - v))
        return LaurentSeries(v, mask, prec)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        if self.mask == 0 or other.mask == 0:
            pa = self.prec + (other.val if other.mask else other.prec)
            pb = other.prec + (self.val if self.mask else self.prec)
            return LaurentSeries.zero(pa if self.mask == 0 else pb)
        v = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        window = prec - v
        a = self.mask & ((1 << window) - 1)
        b = other.mask & ((1 << window) - 1)
        return LaurentSeries(v, clmul(a, b), prec)

    def square(self) -> LaurentSeries:
        if self.mask == 0:
            return LaurentSeries.zero(2 * self.prec)
        return LaurentSeries(2 * self.val, clsq(self.mask), 2 * self.prec)

    def inv(self) -> LaurentSeries:
        if self.mask == 0:
            raise ZeroDivisionError("not invertible at this precision")
        nbits = self.prec - self.val
        return LaurentSeries(-self.val, _inv_mask(self.mask, nbits), self.prec - 2 * self.val)

    def pow(self, n: int) -> LaurentSeries:
        if n < 0:
            return self.inv().pow(-n)
        result = LaurentSeries.one(self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def mul_poly(self, poly: Gf2Poly) -> LaurentSeries:
        """Multiply by an exact polynomial in z."""
        if poly.is_zero():
            return LaurentSeries.zero(self.prec)
        d = poly.degree
        if self.mask == 0:
            return LaurentSeries.zero(self.prec - d)
        return LaurentSeries(self.val - d, clmul(self.mask, poly.reverse().bits), self.prec - d)

    def truncate(self, prec: int) -> LaurentSeries:
        if prec > self.prec:
            raise ValueError("cannot raise precision by truncation")
        return LaurentSeries(self.val, self.mask, prec)

    # -- comparison ---------------------------------------------------------

    def agrees(self, other: LaurentSeries) -> bool:
        """Coefficientwise equality below the common precision."""
        return (self + other).mask == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.mask == other.mask
            and self.prec == other.prec
            and (self.mask == 0 or self.val == other.val)
        )

    def __hash__(self) -> int:
        return hash(("LaurentSeries", self.val, self.mask, self.prec))

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        def mono(e: int) -> str:
            if e == 0:
                return "1"
            if e == 1:
                return "z"
            return f"z^{e}"

        tail = f"O({mono(-self.prec)})"
        if self.mask == 0:
            return tail
        terms = []
        m = self.mask
        i = 0
        while m:
            if m & 1:
                terms.append(mono(-(self.val + i)))
            m >>= 1
            i += 1
        return " + ".join(terms + [tail])

    def __repr__(self) -> str:
        return f"<LaurentSeries {self}>"
