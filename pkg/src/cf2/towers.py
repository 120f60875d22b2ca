"""Letter matrices, convergents, and the two matrix product towers.

Under a specialization (letters to nonconstant GF(2)[z] polynomials), a
word w gives the descending product M(w) = F(w_last) ... F(w_first) of
letter matrices F(x) = ((1, 1/x), (1/x, 0)), and the continued fraction
[w_0, w_1, ...] is the limit of entry(0,0)/entry(0,1) of M over growing
prefixes.  Convergents themselves are computed exactly through the
classical numerator/denominator recurrence (the descending product
differs from it only by an invertible scalar, so the ratios agree).

The family-P tower doubles M through m -> m F(e) m and tracks the
determinant d, the step scalar l, and the running product L.  The
family-G tower walks the pair recurrence (square / cross-multiply)
driven by swap bits and expresses everything through the scalar
bookkeeping of d, r = trace, the cross matrix, and correction terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gf2poly import Gf2Poly
from .laurent import LaurentSeries
from .mat2 import Mat2, SeriesField
from .words import GSpec, NormalizedG, PSpec, g_normalize, g_prefix, p_prefix, word_stats


class DegenerateDraw(ValueError):
    """A quantity that must be invertible vanished (resample or respecialize)."""


class HypothesisViolation(ValueError):
    """Input outside the hypotheses of the tower construction."""


class PrecisionBudget(RuntimeError):
    """Convergence threshold not reached within the step budget."""

    def __init__(self, message: str, achieved: int):
        super().__init__(message)
        self.achieved = achieved


# ---------------------------------------------------------------------------
# specialization maps
# ---------------------------------------------------------------------------


class SpecMap:
    """Assignment of a nonconstant GF(2)[z] polynomial to each letter."""

    def __init__(self, assignments: dict[str, Gf2Poly]):
        for letter, poly in assignments.items():
            if len(letter) != 1:
                raise ValueError(f"letters are single characters, got {letter!r}")
            if poly.degree < 1:
                raise ValueError(f"constant specialization for letter {letter!r}")
        self._map = dict(assignments)

    @classmethod
    def parse(cls, text: str) -> SpecMap:
        """Parse the comma-separated `letter=polyexpr` form, e.g. "a=z,b=z+1"."""
        out: dict[str, Gf2Poly] = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" not in item:
                raise ValueError(f"bad assignment {item!r}")
            letter, expr = item.split("=", 1)
            letter = letter.strip()
            if letter in out:
                raise ValueError(f"duplicate letter {letter!r}")
            out[letter] = Gf2Poly.parse(expr)
        if not out:
            raise ValueError("empty specialization map")
        return cls(out)

    @classmethod
    def binary_default(cls) -> SpecMap:
        """The default 0 -> z, 1 -> z+1 map for binary alphabets."""
        return cls({"0": Gf2Poly.parse("z"), "1": Gf2Poly.parse("z+1")})

    def poly(self, letter: str) -> Gf2Poly:
        try:
            return self._map[letter]
        except KeyError:
            raise ValueError(f"unmapped letter {letter!r}") from None

    def covers(self, alphabet) -> bool:
        return set(alphabet) <= set(self._map)

    @property
    def letters(self) -> set[str]:
        return set(self._map)

    @property
    def max_degree(self) -> int:
        return max(p.degree for p in self._map.values())

    @property
    def min_degree(self) -> int:
        return min(p.degree for p in self._map.values())

    def __str__(self) -> str:
        return ",".join(f"{k}={v}" for k, v in sorted(self._map.items()))


# ---------------------------------------------------------------------------
# exact convergents
# ---------------------------------------------------------------------------


def convergent_pair(word: str, sp: SpecMap) -> tuple[Gf2Poly, Gf2Poly]:
    """Exact (numerator, denominator) of the convergent [word]."""
    if not word:
        raise ValueError("empty word has no convergent")
    p_prev, q_prev = Gf2Poly.one(), Gf2Poly.zero()
    p, q = sp.poly(word[0]), Gf2Poly.one()
    for letter in word[1:]:
        u = sp.poly(letter)
        p, p_prev = u * p + p_prev, p
        q, q_prev = u * q + q_prev, q
    return p, q


def convergent_series(word: str, sp: SpecMap, prec: int) -> LaurentSeries:
    """Expansion of the exact convergent value to absolute precision prec."""
    p, q = convergent_pair(word, sp)
    return LaurentSeries.from_rational(p, q, prec)


def cf_series(word: str, sp: SpecMap, prec: int, margin: int = 8) -> LaurentSeries:
    """Series of the continued fraction of the infinite word starting as given.

    Consumes letters until consecutive convergent denominators guarantee
    the expansion below ``prec`` (plus margin); raises ValueError naming
    the shortfall when the supplied prefix is too short.
    """
    if not word:
        raise ValueError("empty word")
    p_prev, q_prev = Gf2Poly.one(), Gf2Poly.zero()
    p, q = sp.poly(word[0]), Gf2Poly.one()
    for letter in word[1:]:
        u = sp.poly(letter)
        p_new, q_new = u * p + p_prev, u * q + q_prev
        if q.degree + q_new.degree >= prec + margin:
            return LaurentSeries.from_rational(p, q, prec)
        p_prev, q_prev, p, q = p, q, p_new, q_new
    raise ValueError(
        f"prefix of length {len(word)} too short for precision {prec}"
        f" (denominator degree reached {q.degree})"
    )


def cf_series_of(prefix_fn, sp: SpecMap, prec: int, margin: int = 8) -> LaurentSeries:
    """cf_series over prefixes from ``prefix_fn(length)``, growing as needed."""
    length = max(32, prec // max(1, sp.min_degree) + 16)
    while True:
        try:
            return cf_series(prefix_fn(length), sp, prec, margin)
        except ValueError:
            if length > (prec + margin + 4) * 4 + 1024:
                raise
            length *= 2


def word_matrix(word: str, F: SeriesField, inv_letters: dict[str, LaurentSeries]) -> Mat2:
    """Descending product of letter matrices over a word (identity if empty)."""
    m = Mat2.identity(F)
    for letter in word:
        m = Mat2.letter_from_inv(F, inv_letters[letter]).mul(m)
    return m


def cf_ratio(m: Mat2) -> LaurentSeries:
    """The convergent value carried by a product matrix: entry00/entry01."""
    return m.a * m.b.inv()


# ---------------------------------------------------------------------------
# family-P tower
# ---------------------------------------------------------------------------


class PTower:
    """Series-mode doubling tower m -> m F(e) m over a family-P spec."""

    def __init__(self, spec: PSpec, sp: SpecMap, prec: int):
        if not sp.covers(spec.alphabet):
            missing = sorted(spec.alphabet - sp.letters)
            raise ValueError(f"unmapped letters {missing}")
        self.spec = spec
        self.sp = sp
        self.prec = prec
        self.F = F = SeriesField(prec)
        self.eps_polys = [sp.poly(c) for c in spec.eps]
        self.inv_eps = [
            LaurentSeries.from_rational(Gf2Poly.one(), p, prec) for p in self.eps_polys
        ]
        inv_letters = {
            c: LaurentSeries.from_rational(Gf2Poly.one(), sp.poly(c), prec)
            for c in spec.alphabet
        }
        self.m0 = word_matrix(spec.w0, F, inv_letters)
        self.m = self.m0
        self.ds = [self.m0.det()]  # d_j, exact determinants
        self.ls: list[LaurentSeries] = []  # step scalars l_j
        self.Ls = [F.one]  # running products, L_0 = 1
        self.step = 0

    @property
    def period(self) -> int:
        return len(self.eps_polys)

    def insertion_matrix(self, j: int) -> Mat2:
        """The companion matrix ((0, 1/e_j), (1/e_j, 1)) of residue j."""
        return Mat2.insertion_from_inv(self.F, self.inv_eps[j % self.period])

    def advance(self) -> None:
        ie = self.inv_eps[self.step % self.period]
        m = self.m
        self.ls.append((m.b + m.c) * ie + m.a)
        self.Ls.append(self.Ls[-1] * self.ls[-1])
        fac = Mat2.letter_from_inv(self.F, ie)
        self.m = m.mul(fac).mul(m)
        # det is multiplicative; squaring avoids the cancellation a direct
        # determinant of truncated entries would hit at depth
        self.ds.append(self.ds[-1].square() * ie.square())
        self.step += 1

    def predicted_det_val(self, j: int) -> int:
        """Exact valuation of d_j from the degree bookkeeping."""
        v = 2 * sum(self.sp.poly(c).degree for c in self.spec.w0)
        for i in range(j):
            v = 2 * v + 2 * self.eps_polys[i % self.period].degree
        return v


@dataclass
class PLimits:
    """Limits of a family-P tower at a working precision."""

    tower: PTower
    f: LaurentSeries
    H: list[LaurentSeries]
    limit_m: Mat2
    cf: LaurentSeries
    lam: LaurentSeries  # determinant drift 1/(e_0^(2^n) ... e_{n-1}^2)
    diff_vals: list[tuple[int, int]] = dc_field(default_factory=list)

    def residual_f(self) -> LaurentSeries:
        """f^(2^n) * L_n + f, zero when the limit product closes up."""
        n = self.tower.period
        return self.f.pow(1 << n) * self.tower.Ls[n] + self.f

    def residual_h0(self) -> LaurentSeries:
        """H_0^(2^n) * lam * L_1^(2^n - 1) / L_n^2 + H_0 + d_0 / L_1.

        The tail terms T_k = d_{kn}/L_{kn+1} satisfy T_{k+1} = rho T_k^(2^n)
        with rho = lam L_1^(2^n-1)/L_n^2 (k-independent by the power-shift
        identity applied at period multiples), so the tail sum telescopes.
        When the running products collapse to 1 this is the plain
        H_0^(2^n) lam / L_1 form.
        """
        t = self.tower
        n = t.period
        rho = self.lam * t.Ls[1].pow((1 << n) - 1) * t.Ls[n].inv().pow(2)
        return self.H[0].pow(1 << n) * rho + self.H[0] + t.ds[0] * t.Ls[1].inv()

    def residual_hj(self, j: int) -> LaurentSeries:
        """H_j + H_0^(2^j) * (d_j / d_0^(2^j)) * (L_1^(2^j) / L_{j+1})."""
        t = self.tower
        lhs = self.H[j]
        rhs = (
            self.H[0].pow(1 << j)
            * t.ds[j]
            * t.ds[0].inv().pow(1 << j)
            * t.Ls[1].pow(1 << j)
            * t.Ls[j + 1].inv()
        )
        return lhs + rhs


def p_limits(spec: PSpec, sp: SpecMap, prec: int) -> PLimits:
    """Run the family-P tower to convergence at ``prec`` and take limits."""
    t = PTower(spec, sp, prec)
    n = t.period
    cap = n * 2 + max(8, prec.bit_length() + 4) + 8
    diff_vals: list[tuple[int, int]] = []
    f_ready = False
    f_val = None
    while True:
        t.advance()
        j = t.step
        if j % n == 0 and j >= n:
            diff = t.Ls[j] + t.Ls[j - n]
            dv = diff.known_zero_below()
            diff_vals.append((j, dv))
            if not diff.is_zero and dv < (1 << (j - n)):
                raise AssertionError(
                    f"running-product gap val {dv} below bound 2^{j - n}"
                )
            if dv >= prec:
                f_ready = True
                f_val = t.Ls[j]
        d_dead = t.ds[-1].known_zero_below() >= prec
        if f_ready and d_dead and j >= n + 1:
            break
        if j > cap:
            achieved = min(t.ds[-1].known_zero_below(), diff_vals[-1][1] if diff_vals else 0)
            raise PrecisionBudget(
                f"no convergence within {cap} steps (achieved {achieved})", achieved
            )
    F = t.F
    H = [F.zero for _ in range(n)]
    for i in range(t.step):
        H[i % n] = H[i % n] + t.ds[i] * t.Ls[i + 1].inv()
    lam_poly = Gf2Poly.one()
    for j in range(n):
        lam_poly = lam_poly * t.eps_polys[j] ** (1 << (n - j))
    lam = LaurentSeries.from_rational(Gf2Poly.one(), lam_poly, prec)
    acc = t.m0
    for j in range(n):
        acc = acc.add(t.insertion_matrix(j).scale(H[j]))
    limit_m = acc.scale(f_val)
    cf = cf_ratio(limit_m)
    return PLimits(tower=t, f=f_val, H=H, limit_m=limit_m, cf=cf, lam=lam, diff_vals=diff_vals)


# ---------------------------------------------------------------------------
# family-G tower
# ---------------------------------------------------------------------------


def pair_tower(m0: Mat2, w0: Mat2, bits: str) -> tuple[Mat2, Mat2]:
    """Walk the pair recurrence from (w0*m0, m0*w0) along swap bits.

    Bit 0 squares both matrices; bit 1 cross-multiplies them.  Works over
    any coefficient field (generic matrices included).
    """
    m, w = w0.mul(m0), m0.mul(w0)
    for b in bits:
        if b == "0":
            m, w = m.mul(m), w.mul(w)
        else:
            m, w = w.mul(m), m.mul(w)
    return m, w


class CoScaled:
    """A value u * cross^b with b in {0, 1}; cross^2 is the scalar gamma."""

    __slots__ = ("u", "odd")

    def __init__(self, u, odd: int):
        self.u = u
        self.odd = odd


class GQuantities:
    """Scalar bookkeeping of a family-G tower generation.

    Built from the first cross products m1 = w0*m0, w1 = m0*w0 and the
    driver word s: determinant d, trace r, the cross matrix, its scalar
    square gamma, the correction terms c_1..c_k, and the period scalar l.
    Correction terms are carried as CoScaled values (u * cross^b), which
    keeps every power of the cross matrix in scalar arithmetic.
    """

    def __init__(self, F, m1: Mat2, w1: Mat2, s: str):
        if not s:
            raise ValueError("driver word must be nonempty")
        self.F = F
        self.s = s
        self.k = len(s)
        self.m1 = m1
        self.w1 = w1
        self.stats = word_stats(s)
        self.d = m1.det()
        self.r = m1.trace()
        self.cross = m1.add(w1).add_scalar(self.r)
        sq = self.cross.mul(self.cross)
        if not (F.is_zero(sq.b) and F.is_zero(sq.c) and F.eq(sq.a, sq.d)):
            raise DegenerateDraw("cross square is not scalar (inputs not a cross pair)")
        self.gamma = sq.a
        for name, val in (("r", self.r), ("d", self.d), ("gamma", self.gamma)):
            if F.is_zero(val):
                raise DegenerateDraw(f"degenerate specialization: {name} not invertible")
        self.inv_r = F.inv(self.r)
        self.inv_gamma = F.inv(self.gamma)
        # prefix statistics e_j = e(s(j)) drive the correction exponents
        self.e_prefix = []
        e = 0
        t = 0
        for ch in s:
            t ^= int(ch)
            e = 2 * e + t
            self.e_prefix.append(e)
        self.c = [self._correction(j) for j in range(1, self.k + 1)]
        # l = d^(2^(k-1)) / c_k; scalar exactly when t(s) = 0 and e(s) even
        self.l_cs = self.cs_mul(self.cs(F.pow(self.d, 1 << (self.k - 1))), self.cs_inv(self.c[-1]))
        # c_1' = d^(2^k - 1) / l * c_1 (next-generation first correction)
        self.c1_prime = self.cs_mul(
            self.cs_mul(self.cs(F.pow(self.d, (1 << self.k) - 1)), self.cs_inv(self.l_cs)),
            self.c[0],
        )

    def _correction(self, j: int) -> CoScaled:
        """c_j = d^(2^(j-1)) / r^(2^j - 1 - e_j) / cross^(e_j)."""
        F = self.F
        e_j = self.e_prefix[j - 1]
        u = F.mul(
            F.pow(self.d, 1 << (j - 1)),
            F.mul(F.pow(self.inv_r, (1 << j) - 1 - e_j), F.pow(self.inv_gamma, (e_j + 1) // 2)),
        )
        return CoScaled(u, e_j & 1)

    # -- CoScaled arithmetic (needs gamma, so it lives here) ---------------

    def cs(self, u, odd: int = 0) -> CoScaled:
        return CoScaled(u, odd)

    def cs_mul(self, x: CoScaled, y: CoScaled) -> CoScaled:
        F = self.F
        u = F.mul(x.u, y.u)
        if x.odd and y.odd:
            return CoScaled(F.mul(u, self.gamma), 0)
        return CoScaled(u, x.odd | y.odd)

    def cs_inv(self, x: CoScaled) -> CoScaled:
        F = self.F
        u = F.inv(x.u)
        if x.odd:
            u = F.mul(u, self.inv_gamma)
        return CoScaled(u, x.odd)

    def cs_pow(self, x: CoScaled, n: int) -> CoScaled:
        if n < 0:
            return self.cs_pow(self.cs_inv(x), -n)
        F = self.F
        total = x.odd * n
        u = F.mul(F.pow(x.u, n), F.pow(self.gamma, total // 2))
        return CoScaled(u, total & 1)

    def cs_add(self, x: CoScaled, y: CoScaled) -> CoScaled:
        if x.odd != y.odd:
            raise ValueError("cross parity mismatch in addition")
        return CoScaled(self.F.add(x.u, y.u), x.odd)

    def cs_to_mat(self, x: CoScaled) -> Mat2:
        if x.odd:
            return self.cross.scale(x.u)
        return Mat2.scalar(self.F, x.u)

    # -- derived scalars ------------------------------------------------------

    @property
    def l_scalar(self):
        if self.l_cs.odd:
            raise HypothesisViolation("period scalar carries an odd cross power")
        return self.l_cs.u

    def rho(self) -> CoScaled:
        """c_1'/l divided by c_1^(2^k): the generation shift of c_1/L."""
        one_gen = self.cs_mul(self.c1_prime, self.cs_inv(self.l_cs))
        return self.cs_mul(one_gen, self.cs_pow(self.cs_inv(self.c[0]), 1 << self.k))

    def closed_products(self) -> tuple[Mat2, Mat2]:
        """Closed forms of the pair after one driver word, per digit parity."""
        F = self.F
        scale = self.cs_to_mat(self.l_cs)
        acc = Mat2.scalar(F, F.zero)
        for cj in self.c:
            acc = acc.add(self.cs_to_mat(cj))
        first = self.w1 if self.stats.t else self.m1
        second = self.m1 if self.stats.t else self.w1
        return first.add(acc).mul(scale), second.add(acc).mul(scale)

    def primed_check_values(self) -> dict:
        """Closed-form next-generation quantities (hypothesis: t(s)=0, s ends 1)."""
        F = self.F
        l = self.l_scalar
        inv_l = F.inv(l)
        cj_primed = []
        for j, cj in enumerate(self.c, start=1):
            factor = F.mul(
                F.pow(self.d, ((1 << self.k) - 1) * (1 << (j - 1))),
                F.pow(inv_l, (1 << j) - 1),
            )
            cj_primed.append(self.cs_mul(self.cs(factor), cj))
        return {
            "d": F.pow(self.d, 1 << self.k),
            "r": F.mul(l, self.r),
            "cross": self.cross.scale(l),
            "l": F.pow(l, 1 << self.k),
            "c": cj_primed,
        }


@dataclass
class GLimits:
    """Limits of a family-G tower at a working precision."""

    norm: NormalizedG
    quants: GQuantities
    Ls: list[LaurentSeries]
    f: LaurentSeries
    H1: CoScaled
    Hs: list[CoScaled]
    limit_m: Mat2
    cf: LaurentSeries
    diff_vals: list[tuple[int, int]] = dc_field(default_factory=list)

    def residual_f(self) -> LaurentSeries:
        """f^(2^k) * l + f."""
        return self.f.pow(1 << self.quants.k) * self.quants.l_scalar + self.f

    def residual_h(self) -> LaurentSeries:
        """H_1^(2^k) * (c_1'/l) / c_1^(2^k) + c_1 + H_1 (scalar part)."""
        q = self.quants
        lhs = q.cs_mul(q.cs_pow(self.H1, 1 << q.k), q.rho())
        rhs = q.cs_add(q.c[0], self.H1)
        return q.cs_add(lhs, rhs).u


def g_start_matrices(spec: GSpec, sp: SpecMap, prec: int) -> tuple[SeriesField, Mat2, Mat2]:
    if len(spec.u0) != len(spec.v0):
        raise HypothesisViolation(
            "start words must have equal length for the product tower"
        )
    if not sp.covers(spec.alphabet):
        missing = sorted(spec.alphabet - sp.letters)
        raise ValueError(f"unmapped letters {missing}")
    F = SeriesField(prec)
    inv_letters = {
        c: LaurentSeries.from_rational(Gf2Poly.one(), sp.poly(c), prec)
        for c in spec.alphabet
    }
    return F, word_matrix(spec.u0, F, inv_letters), word_matrix(spec.v0, F, inv_letters)


def g_limits(spec: GSpec, sp: SpecMap, prec: int) -> GLimits:
    """Normalize, run the family-G tower to convergence, and take limits."""
    norm = g_normalize(spec)
    s = norm.s
    stats = word_stats(s)
    if stats.t != 0:
        raise HypothesisViolation(
            "swap period must contain an even number of 1s (driver word parity)"
        )
    F, m0, w0 = g_start_matrices(norm.spec, sp, prec)
    q = GQuantities(F, w0.mul(m0), m0.mul(w0), s)
    k = q.k
    l = q.l_scalar
    rho = q.rho()
    Ls = [F.one]
    cur_l = l  # l^(i), advanced by 2^k powers
    # term = c_1^(i)/L_i; the generation shift multiplies its 2^k power by rho
    term = q.c[0]
    H1 = term
    diff_vals: list[tuple[int, int]] = []
    cap = max(8, (prec.bit_length() // max(1, k)) + 6)
    i = 0
    while True:
        L_next = Ls[-1] * cur_l
        diff = L_next + Ls[-1]
        dv = diff.known_zero_below()
        diff_vals.append((i, dv))
        if not diff.is_zero and dv < (1 << (i * k)):
            raise AssertionError(f"running-product gap val {dv} below bound 2^{i * k}")
        Ls.append(L_next)
        cur_l = cur_l.pow(1 << k)
        term = q.cs_mul(rho, q.cs_pow(term, 1 << k))
        H1 = q.cs_add(H1, term)
        i += 1
        if dv >= prec and term.u.known_zero_below() >= prec:
            break
        if i > cap:
            raise PrecisionBudget(
                f"no convergence within {cap} generations (achieved {dv})", dv
            )
    f = Ls[-1]
    Hs = [H1]
    for j in range(2, k + 1):
        ratio = q.cs_mul(q.c[j - 1], q.cs_pow(q.cs_inv(q.c[0]), 1 << (j - 1)))
        Hs.append(q.cs_mul(q.cs_pow(H1, 1 << (j - 1)), ratio))
    acc = q.m1
    for h in Hs:
        acc = acc.add(q.cs_to_mat(h))
    limit_m = acc.scale(f)
    cf = cf_ratio(limit_m)
    return GLimits(
        norm=norm, quants=q, Ls=Ls, f=f, H1=H1, Hs=Hs,
        limit_m=limit_m, cf=cf, diff_vals=diff_vals,
    )


# ---------------------------------------------------------------------------
# convenience oracles
# ---------------------------------------------------------------------------


def p_cf_series(spec: PSpec, sp: SpecMap, prec: int) -> LaurentSeries:
    """Direct-convergent series of the family-P continued fraction."""
    return cf_series_of(lambda L: p_prefix(spec, L), sp, prec)


def g_cf_series(spec: GSpec, sp: SpecMap, prec: int) -> LaurentSeries:
    """Direct-convergent series of the family-G continued fraction."""
    return cf_series_of(lambda L: g_prefix(spec, L), sp, prec)
