"""2x2 matrices over pluggable characteristic-2 coefficient fields.

A coefficient field is any object with attributes ``zero``/``one`` and
methods ``add``, ``mul``, ``square``, ``inv``, ``pow``, ``is_zero``,
``eq`` acting on its element type.  ``Gf2m`` (int elements) fits
directly; ``SeriesField`` adapts ``LaurentSeries`` values at a working
precision.  Scalar matrices are identified with scalars throughout: a
scalar enters a matrix as s*I via ``Mat2.scalar``.
"""

from __future__ import annotations

from .laurent import LaurentSeries


class SeriesField:
    """Field adapter for LaurentSeries coefficients at a fixed precision.

    Equality is coefficientwise agreement below the common precision,
    which is the only meaningful comparison for truncated series.
    """

    def __init__(self, prec: int):
        self.prec = prec
        self.zero = LaurentSeries.zero(prec)
        self.one = LaurentSeries.one(prec)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def square(a):
        return a.square()

    @staticmethod
    def inv(a):
        return a.inv()

    @staticmethod
    def pow(a, n):
        return a.pow(n)

    @staticmethod
    def is_zero(a) -> bool:
        return a.is_zero

    @staticmethod
    def eq(a, b) -> bool:
        return a.agrees(b)

    @property
    def name(self) -> str:
        return f"series(prec={self.prec})"


class Mat2:
    """Immutable 2x2 matrix; entries live in the attached field."""

    __slots__ = ("F", "a", "b", "c", "d")

    def __init__(self, F, a, b, c, d):
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("Mat2 is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, F) -> Mat2:
        return cls(F, F.one, F.zero, F.zero, F.one)

    @classmethod
    def scalar(cls, F, s) -> Mat2:
        return cls(F, s, F.zero, F.zero, s)

    @classmethod
    def letter(cls, F, x) -> Mat2:
        """The continued-fraction letter matrix ((1, 1/x), (1/x, 0))."""
        if F.is_zero(x):
            raise ZeroDivisionError("zero partial quotient")
        ix = F.inv(x)
        return cls(F, F.one, ix, ix, F.zero)

    @classmethod
    def letter_from_inv(cls, F, ix) -> Mat2:
        """Letter matrix given the precomputed inverse entry."""
        return cls(F, F.one, ix, ix, F.zero)

    @classmethod
    def insertion_from_inv(cls, F, ix) -> Mat2:
        """The companion matrix ((0, 1/x), (1/x, 1)) of a tower step."""
        return cls(F, F.zero, ix, ix, F.one)

    # -- arithmetic ----------------------------------------------------------

    def mul(self, o: Mat2) -> Mat2:
        F = self.F
        return Mat2(
            F,
            F.add(F.mul(self.a, o.a), F.mul(self.b, o.c)),
            F.add(F.mul(self.a, o.b), F.mul(self.b, o.d)),
            F.add(F.mul(self.c, o.a), F.mul(self.d, o.c)),
            F.add(F.mul(self.c, o.b), F.mul(self.d, o.d)),
        )

    __matmul__ = mul

    def add(self, o: Mat2) -> Mat2:
        F = self.F
        return Mat2(F, F.add(self.a, o.a), F.add(self.b, o.b), F.add(self.c, o.c), F.add(self.d, o.d))

    __add__ = add

    def square(self) -> Mat2:
        return self.mul(self)

    def scale(self, s) -> Mat2:
        F = self.F
        return Mat2(F, F.mul(self.a, s), F.mul(self.b, s), F.mul(self.c, s), F.mul(self.d, s))

    def add_scalar(self, s) -> Mat2:
        F = self.F
        return Mat2(F, F.add(self.a, s), self.b, self.c, F.add(self.d, s))

    def det(self):
        F = self.F
        return F.add(F.mul(self.a, self.d), F.mul(self.b, self.c))

    def trace(self):
        return self.F.add(self.a, self.d)

    # -- predicates --------------------------------------------------------

    def eq(self, o: Mat2) -> bool:
        F = self.F
        return F.eq(self.a, o.a) and F.eq(self.b, o.b) and F.eq(self.c, o.c) and F.eq(self.d, o.d)

    def is_scalar(self) -> bool:
        F = self.F
        return F.is_zero(self.b) and F.is_zero(self.c) and F.eq(self.a, self.d)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"Mat2[{self.a!r}, {self.b!r}; {self.c!r}, {self.d!r}]"
