"""Bit-packed polynomials over GF(2).

A polynomial is a nonnegative Python integer: bit i is the coefficient
of z^i.  Addition is XOR, multiplication is carry-less, and the zero
polynomial is the integer 0 (reported degree -1).  The ``Gf2Poly``
wrapper keeps values canonical (there is nothing to normalize beyond
the int itself) and carries the text syntax used by the CLI.
"""

from __future__ import annotations

from functools import lru_cache

# 8-bit -> 16-bit zero-interleat table, used to square polynomials.
_SPREAD = tuple(
    sum(((byte >> k) & 1) << (2 * k) for k in range(8)) for byte in range(256)
)


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed GF(2) polynomials."""
    if a == 0 or b == 0:
        return 0
    if a.bit_count() < b.bit_count():
        a, b = b, a
    acc = 0
    while b:
        low = b & -b
        acc ^= a << (low.bit_length() - 1)
        b ^= low
    return acc


def clsq(a: int) -> int:
    """Square of a bit-packed GF(2) polynomial (Frobenius: spread bits)."""
    out = 0
    shift = 0
    while a:
        out |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return out


def cldivmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of bit-packed GF(2) polynomials, b != 0."""
    if b == 0:
        raise ZeroDivisionError("zero divisor")
    m = a.bit_length() - 1
    n = b.bit_length() - 1
    if m < n:
        return 0, a
    q = 0
    b <<= m - n
    for i in range(m - n + 1):
        q <<= 1
        if (a >> (m - i)) & 1:
            a ^= b
            q |= 1
        b >>= 1
    return q, a


def clmod(a: int, b: int) -> int:
    return cldivmod(a, b)[1]


def clgcd(a: int, b: int) -> int:
    while b:
        a, b = b, clmod(a, b)
    return a


def _sqmod(a: int, mod: int) -> int:
    return clmod(clsq(a), mod)


def _x_pow_2k(k: int, mod: int) -> int:
    """x^(2^k) reduced modulo ``mod``."""
    a = clmod(2, mod)
    for _ in range(k):
        a = _sqmod(a, mod)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(bits: int) -> bool:
    """Rabin irreducibility test for a bit-packed polynomial over GF(2)."""
    d = bits.bit_length() - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    if bits & 1 == 0:  # divisible by z
        return False
    if _x_pow_2k(d, bits) != 2:
        return False
    for q in _prime_factors(d):
        if clgcd(_x_pow_2k(d // q, bits) ^ 2, bits) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def min_irreducible(m: int) -> int:
    """Smallest (as an integer) irreducible GF(2) polynomial of degree m."""
    if m < 1:
        raise ValueError("degree must be positive")
    if m == 1:
        return 2  # z
    for k in range(1, 1 << m, 2):
        cand = (1 << m) | k
        if is_irreducible(cand):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


class Gf2Poly:
    """Immutable polynomial over GF(2) in the variable z."""

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("polynomial bits must be nonnegative")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, *a):  # noqa: D105 - immutability guard
        raise AttributeError("Gf2Poly is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> Gf2Poly:
        return cls(0)

    @classmethod
    def one(cls) -> Gf2Poly:
        return cls(1)

    @classmethod
    def z(cls) -> Gf2Poly:
        return cls(2)

    @classmethod
    def from_exponents(cls, exps) -> Gf2Poly:
        bits = 0
        for e in exps:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> Gf2Poly:
        """Parse the '+'-separated monomial syntax: "z^2+z+1".

        Duplicate monomials are rejected; "0" denotes the zero polynomial.
        """
        s = text.strip()
        if s == "0":
            return cls(0)
        if not s:
            raise ValueError("empty polynomial text")
        bits = 0
        for raw in s.split("+"):
            mono = raw.strip()
            if mono == "1":
                e = 0
            elif mono == "z":
                e = 1
            elif mono.startswith("z^"):
                try:
                    e = int(mono[2:])
                except ValueError:
                    raise ValueError(f"bad monomial {mono!r}") from None
                if e < 0:
                    raise ValueError(f"negative exponent in {mono!r}")
            else:
                raise ValueError(f"bad monomial {mono!r}")
            if (bits >> e) & 1:
                raise ValueError(f"duplicate monomial {mono!r}")
            bits |= 1 << e
        return cls(bits)

    # -- predicates / accessors --------------------------------------

    @property
    def degree(self) -> int:
        return self.bits.bit_length() - 1

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1 if i >= 0 else 0

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Gf2Poly) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(("Gf2Poly", self.bits))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(clmul(self.bits, other.bits))

    def __lshift__(self, k: int) -> Gf2Poly:
        """Multiply by z^k."""
        return Gf2Poly(self.bits << k)

    def square(self) -> Gf2Poly:
        return Gf2Poly(clsq(self.bits))

    def __pow__(self, n: int) -> Gf2Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Gf2Poly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def __divmod__(self, other: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
        q, r = cldivmod(self.bits, other.bits)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[1]

    def gcd(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(clgcd(self.bits, other.bits))

    def reverse(self) -> Gf2Poly:
        """Coefficient reversal within the degree: z^d * p(1/z)."""
        d = self.degree
        bits = self.bits
        out = 0
        for i in range(d + 1):
            if (bits >> i) & 1:
                out |= 1 << (d - i)
        return Gf2Poly(out)

    # -- text ----------------------------------------------------------

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        monos = []
        for e in range(self.degree, -1, -1):
            if (self.bits >> e) & 1:
                monos.append("1" if e == 0 else "z" if e == 1 else f"z^{e}")
        return "+".join(monos)

    def __repr__(self) -> str:
        return f"Gf2Poly({str(self)!r})"


Z = Gf2Poly(2)
ONE = Gf2Poly(1)
