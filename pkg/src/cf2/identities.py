"""Randomized and series-mode verification of the tower identities.

Generic matrix identities are tested on uniform draws over GF(2^m):
every identity here is polynomial in the matrix entries (and inverses
of quantities that vanish only on a proper closed subset), so a single
failing draw is a definitive counterexample, and the false-pass chance
of T clean trials is bounded by (D/2^m)^T for identities of total
degree D.  Draws that hit the degenerate locus are resampled with a
capped budget and counted.  Every checker owns a mutated variant (one
perturbed exponent or term) that must fail, as a negative control.

Valuation facts are measured in series mode on concrete fixtures, with
exact expected determinant valuations from degree bookkeeping.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .gf2m import Gf2m, field as ext_field
from .mat2 import Mat2
from .towers import (
    DegenerateDraw,
    GQuantities,
    PTower,
    SpecMap,
    g_limits,
    pair_tower,
)
from .words import GSpec, PSpec, word_stats

RESAMPLE_CAP = 100


@dataclass
class IdentityReport:
    """Outcome of one identity checker: reproducible given (seed, field)."""

    ident: str
    trials: int
    field_desc: str
    seed: int
    failures: list = dc_field(default_factory=list)
    resamples: int = 0
    notes: str = ""
    measurements: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "pass" if self.passed else "fail"
        return (
            f"{self.ident} {status} trials={self.trials}"
            f" field={self.field_desc} seed={self.seed:#x}"
        )


class _Degenerate(Exception):
    pass


def _rand_mat(F: Gf2m, rng: random.Random) -> Mat2:
    return Mat2(F, F.sample(rng), F.sample(rng), F.sample(rng), F.sample(rng))


def _with_resampling(trials: int, rng: random.Random, body) -> tuple[list, int]:
    """Run body(trial, rng) per trial, resampling degenerate draws."""
    failures = []
    resamples = 0
    for trial in range(trials):
        for attempt in range(RESAMPLE_CAP):
            try:
                detail = body(trial, rng)
            except (_Degenerate, DegenerateDraw, ZeroDivisionError):
                resamples += 1
                continue
            if detail is not None:
                failures.append((trial, detail))
            break
        else:
            failures.append((trial, "resample budget exhausted"))
    return failures, resamples


# ---------------------------------------------------------------------------
# family-P tower identities over GF(2^m)
# ---------------------------------------------------------------------------


def _p_chain(F: Gf2m, m0: Mat2, eps: list[int]):
    """Generic tower walk: returns (ms, ds, ls, Ls, bs) along the steps."""
    ms = [m0]
    ds = [m0.det()]
    ls: list[int] = []
    Ls: list[int] = [F.one]
    bs: list[Mat2] = []
    for e in eps:
        ie = F.inv(e)
        m = ms[-1]
        ls.append(F.add(F.mul(F.add(m.b, m.c), ie), m.a))
        if F.is_zero(ls[-1]):
            raise _Degenerate
        Ls.append(F.mul(Ls[-1], ls[-1]))
        fac = Mat2.letter_from_inv(F, ie)
        bs.append(Mat2.insertion_from_inv(F, ie))
        ms.append(m.mul(fac).mul(m))
        ds.append(ms[-1].det())
    return ms, ds, ls, Ls, bs


def check_tower_expansion(
    n_steps: int = 5, trials: int = 100, m: int = 16, seed: int = 1, mutate: bool = False
) -> IdentityReport:
    """m_n equals L_n times the accumulated insertion expansion.

    Uses fully random m0 and insertion scalars: the identity needs
    neither the word structure nor periodicity.
    """
    F = ext_field(m)
    rng = random.Random(seed)

    def body(trial, rng):
        m0 = _rand_mat(F, rng)
        eps = [F.sample_invertible(rng) for _ in range(n_steps)]
        ms, ds, ls, Ls, bs = _p_chain(F, m0, eps)
        for n in range(1, n_steps + 1):
            acc = m0
            for j in range(n):
                denom = Ls[j] if mutate else Ls[j + 1]
                if F.is_zero(denom):
                    raise _Degenerate
                acc = acc.add(bs[j].scale(F.mul(ds[j], F.inv(denom))))
            if not ms[n].eq(acc.scale(Ls[n])):
                return f"step {n}"
        return None

    failures, resamples = _with_resampling(trials, rng, body)
    return IdentityReport(
        "tower-expansion", trials, F.name, seed, failures, resamples,
        notes=f"degree<=2^{n_steps + 1} per entry; false-pass <= (2^{n_steps + 1}/2^{m})^trials",
    )


def check_period_power_shift(
    n: int = 2,
    j_max: int = 3,
    trials: int = 100,
    m: int = 16,
    seed: int = 1,
    mutate: bool = False,
) -> IdentityReport:
    """Step scalars over a periodic insertion word shift by 2^j powers.

    With period n: l_{n+j} = L_n^(2^j) l_j and L_{n+j} = L_n^(2^j) L_j.
    The mutated control breaks periodicity, which the identity needs.
    """
    F = ext_field(m)
    rng = random.Random(seed)

    def body(trial, rng):
        m0 = _rand_mat(F, rng)
        period = [F.sample_invertible(rng) for _ in range(n)]
        steps = n + j_max
        if mutate:
            eps = [F.sample_invertible(rng) for _ in range(steps)]
            if all(eps[i] == eps[i % n] for i in range(steps)):
                raise _Degenerate  # accidentally periodic; redraw
        else:
            eps = [period[i % n] for i in range(steps)]
        ms, ds, ls, Ls, bs = _p_chain(F, m0, eps)
        for j in range(j_max + 1):
            p = F.pow(Ls[n], 1 << j)
            if n + j < len(ls) and not F.eq(ls[n + j], F.mul(p, ls[j])):
                return f"l shift j={j}"
            if not F.eq(Ls[n + j], F.mul(p, Ls[j])):
                return f"L shift j={j}"
        return None

    failures, resamples = _with_resampling(trials, rng, body)
    return IdentityReport(
        "period-power-shift", trials, F.name, seed, failures, resamples,
        notes="mutated control draws an aperiodic insertion word",
    )


def check_tail_equations(
    n: int = 2,
    k_max: int = 3,
    trials: int = 100,
    m: int = 16,
    seed: int = 1,
    mutate: bool = False,
) -> IdentityReport:
    """Tail terms T_k = d_{kn}/L_{kn+1} shift by a k-independent factor.

    T_{k+1} = rho T_k^(2^n) with rho = lam L_1^(2^n-1)/L_n^2, where lam is
    the determinant drift over one period; likewise the residue-j terms
    are T_k^(2^j) d_j/d_0^(2^j) L_1^(2^j)/L_{j+1}.  The mutated control
    swaps in the collapsed-product form lam/L_1, which only holds when
    the running products are trivial.
    """
    F = ext_field(m)
    rng = random.Random(seed)

    def body(trial, rng):
        m0 = _rand_mat(F, rng)
        period = [F.sample_invertible(rng) for _ in range(n)]
        eps = [period[i % n] for i in range(k_max * n + n)]
        ms, ds, ls, Ls, bs = _p_chain(F, m0, eps)
        lam = F.one
        for j in range(n):
            lam = F.mul(lam, F.pow(F.inv(period[j]), 1 << (n - j)))
        if any(F.is_zero(x) for x in (ds[0], Ls[1], Ls[n])):
            raise _Degenerate
        if mutate:
            rho = F.mul(lam, F.inv(Ls[1]))
        else:
            rho = F.mul(lam, F.mul(F.pow(Ls[1], (1 << n) - 1), F.inv(F.pow(Ls[n], 2))))
        for k in range(k_max):
            t_k = F.mul(ds[k * n], F.inv(Ls[k * n + 1]))
            t_next = F.mul(ds[(k + 1) * n], F.inv(Ls[(k + 1) * n + 1]))
            if not F.eq(t_next, F.mul(rho, F.pow(t_k, 1 << n))):
                return f"tail shift k={k}"
            for j in range(1, n):
                term = F.mul(ds[k * n + j], F.inv(Ls[k * n + j + 1]))
                fac = F.mul(
                    F.mul(ds[j], F.pow(F.inv(ds[0]), 1 << j)),
                    F.mul(F.pow(Ls[1], 1 << j), F.inv(Ls[j + 1])),
                )
                if not F.eq(term, F.mul(F.pow(t_k, 1 << j), fac)):
                    return f"residue term j={j} k={k}"
        return None

    failures, resamples = _with_resampling(trials, rng, body)
    return IdentityReport(
        "tail-equations", trials, F.name, seed, failures, resamples,
        notes="mutated control uses the collapsed-product factor lam/L_1",
    )


# ---------------------------------------------------------------------------
# family-G pair identities over GF(2^m)
# ---------------------------------------------------------------------------

PAIR_IDENTITY_NAMES = (
    "det-eq", "trace-eq", "cross-sq-scalar", "anti-commute-m", "anti-commute-w",
    "twist-m", "twist-w", "quadratic-m", "quadratic-w", "product-wm", "product-mw",
    "trace-cross-zero",
)


def check_pair_products(
    trials: int = 100, m: int = 16, seed: int = 1, mutate_id: str | None = None
) -> IdentityReport:
    """The eleven product identities of a cross pair, plus tr(cross) = 0.

    m1 = w0 m0 and w1 = m0 w0 share determinant d and trace r; the cross
    matrix m1 + w1 + r squares to a scalar and twists m1 into w1.
    """
    F = ext_field(m)
    rng = random.Random(seed)

    def body(trial, rng):
        m0 = _rand_mat(F, rng)
        w0 = _rand_mat(F, rng)
        m1, w1 = w0.mul(m0), m0.mul(w0)
        d = m1.det()
        r = m1.trace()
        cross = m1.add(w1).add_scalar(r)
        cross_sq = cross.mul(cross)
        m11 = w1.mul(m1)
        anti_rhs = cross_sq.add(cross.scale(r))  # cross*(cross + r)
        checks = {
            "det-eq": F.eq(d, w1.det()),
            "trace-eq": F.eq(r, w1.trace()),
            "cross-sq-scalar": cross_sq.is_scalar() and F.eq(cross_sq.a, m11.trace()),
            "anti-commute-m": cross.mul(m1).add(m1.mul(cross)).eq(anti_rhs),
            "anti-commute-w": cross.mul(w1).add(w1.mul(cross)).eq(anti_rhs),
            "twist-m": cross.mul(m1).eq(w1.mul(cross)),
            "twist-w": cross.mul(w1).eq(m1.mul(cross)),
            "quadratic-m": m1.mul(m1).eq(m1.scale(r).add_scalar(d)),
            "quadratic-w": w1.mul(w1).eq(w1.scale(r).add_scalar(d)),
            "product-wm": w1.mul(m1).eq(w1.mul(cross).add_scalar(d)),
            "product-mw": m1.mul(w1).eq(m1.mul(cross).add_scalar(d)),
            "trace-cross-zero": F.is_zero(cross.trace()),
        }
        for name, ok in checks.items():
            if mutate_id == name:
                # perturb by the (generically nonzero) determinant
                ok = ok and F.is_zero(d)
            if not ok:
                return name
        return None

    failures, resamples = _with_resampling(trials, rng, body)
    return IdentityReport(
        "pair-products", trials, F.name, seed, failures, resamples,
        notes="entries degree <= 4; false-pass <= (4/2^m)^trials per identity",
    )


def check_closed_form(
    s: str, trials: int = 100, m: int = 16, seed: int = 1, mutate: bool = False
) -> IdentityReport:
    """Recurrence pair equals the closed-form product for a driver word.

    Both branches (digit parity 0 and 1) of the closed form are covered
    by the choice of s; the final factor multiplies on the right, which
    matters whenever the cross exponent is odd.
    """
    F = ext_field(m)
    rng = random.Random(seed)

    def body(trial, rng):
        m0 = _rand_mat(F, rng)
        w0 = _rand_mat(F, rng)
        m1s, w1s = pair_tower(m0, w0, s)
        q = GQuantities(F, w0.mul(m0), m0.mul(w0), s)
        cm, cw = q.closed_products()
        if mutate:
            cm = cm.scale(q.d)
            cw = cw.scale(q.d)
        if not m1s.eq(cm):
            return "m branch"
        if not w1s.eq(cw):
            return "w branch"
        return None

    failures, resamples = _with_resampling(trials, rng, body)
    return IdentityReport(
        f"closed-form[{s}]", trials, F.name, seed, failures, resamples,
        notes=f"t(s)={word_stats(s).t}; degree <= 2^{len(s) + 2}",
    )


def check_generation_relations(
    s: str,
    generations: int = 3,
    trials: int = 100,
    m: int = 16,
    seed: int = 1,
    mutate: bool = False,
) -> IdentityReport:
    """Next-generation quantities and the tail identities across generations.

    Requires the driver word to end in 1 with an even digit sum; checks
    the primed closed forms (d, r, cross, l, c_j), the correction-ratio
    stability, the one-generation shift of c_1/L, and the full product
    expansion of the repeated driver word.
    """
    stats = word_stats(s)
    if stats.t != 0 or not s.endswith("1"):
        raise ValueError("driver word must end with 1 and have even digit sum")
    F = ext_field(m)
    rng = random.Random(seed)
    k = len(s)

    def body(trial, rng):
        m0 = _rand_mat(F, rng)
        w0 = _rand_mat(F, rng)
        chain: list[GQuantities] = []
        pair = (m0, w0)
        for g in range(generations + 2):
            q = GQuantities(F, pair[1].mul(pair[0]), pair[0].mul(pair[1]), s)
            if F.is_zero(q.l_scalar):
                raise _Degenerate
            chain.append(q)
            pair = pair_tower(*pair, s[:-1])
        base = chain[0]
        # running products L_q, with the power form as a side check
        Ls = [F.one]
        for g in range(generations + 1):
            Ls.append(F.mul(Ls[-1], chain[g].l_scalar))
            if not F.eq(Ls[-1], F.mul(F.pow(Ls[-2], 1 << k), base.l_scalar)):
                return f"L chain at {g}"
        inv_L = [F.inv(x) for x in Ls]

        def rebase(x, g):
            # generation-g cross is L_g times the base cross, so an odd
            # CoScaled value carries an extra L_g in base coordinates
            return base.cs(F.mul(x.u, Ls[g]) if x.odd else x.u, x.odd)

        def cs_neq(x, y):
            return x.odd != y.odd or not F.eq(x.u, y.u)

        for g in range(generations + 1):
            q, qn = chain[g], chain[g + 1]
            want = q.primed_check_values()
            cross_expect = want["cross"].add_scalar(q.d) if mutate else want["cross"]
            if not F.eq(qn.d, want["d"]):
                return f"gen {g}: d'"
            if not F.eq(qn.r, want["r"]):
                return f"gen {g}: r'"
            if not qn.cross.eq(cross_expect):
                return f"gen {g}: cross'"
            if not F.eq(qn.l_scalar, want["l"]):
                return f"gen {g}: l'"
            for j in range(k):
                if cs_neq(rebase(qn.c[j], g + 1), rebase(want["c"][j], g)):
                    return f"gen {g}: c_{j + 1}'"
        # correction ratios c_j^(q)/L_q over (c_1^(q)/L_q)^(2^(j-1)) are stable
        base_c = [rebase(c, 0) for c in base.c]
        for g in range(generations + 1):
            cg = [rebase(c, g) for c in chain[g].c]
            t1 = base.cs_mul(cg[0], base.cs(inv_L[g]))
            for j in range(2, k + 1):
                lhs = base.cs_mul(
                    base.cs_mul(cg[j - 1], base.cs(inv_L[g])),
                    base.cs_pow(base.cs_inv(t1), 1 << (j - 1)),
                )
                rhs = base.cs_mul(
                    base_c[j - 1], base.cs_pow(base.cs_inv(base_c[0]), 1 << (j - 1))
                )
                if cs_neq(lhs, rhs):
                    return f"tail ratio j={j} gen {g}"
        # one-generation shift of c_1/L matches rho from the base generation
        rho = base.rho()
        for g in range(generations):
            t_g = base.cs_mul(rebase(chain[g].c[0], g), base.cs(inv_L[g]))
            t_n = base.cs_mul(rebase(chain[g + 1].c[0], g + 1), base.cs(inv_L[g + 1]))
            shifted = base.cs_mul(rho, base.cs_pow(t_g, 1 << k))
            if cs_neq(t_n, shifted):
                return f"c1/L shift gen {g}"
        # expansion of the repeated driver word
        for i in range(1, generations + 1):
            direct_m, _ = pair_tower(m0, w0, s * i)
            acc = base.m1
            for g in range(i):
                cg = [rebase(c, g) for c in chain[g].c]
                for j in range(k):
                    acc = acc.add(base.cs_to_mat(base.cs_mul(cg[j], base.cs(inv_L[g]))))
            if not direct_m.eq(acc.scale(Ls[i])):
                return f"expansion i={i}"
        return None

    failures, resamples = _with_resampling(trials, rng, body)
    return IdentityReport(
        f"generation-relations[{s}]", trials, F.name, seed, failures, resamples,
        notes=f"generations<={generations}; degree grows like 2^(gk), g*k<={generations * k}",
    )


# ---------------------------------------------------------------------------
# series-mode valuation facts
# ---------------------------------------------------------------------------


def check_valuation_bounds(
    pspec: PSpec | None = None,
    gspec: GSpec | None = None,
    sp: SpecMap | None = None,
    depth: int = 6,
    prec: int = 512,
    mutate: bool = False,
    label: str = "",
) -> IdentityReport:
    """Measured valuations along both towers against provable bounds.

    Determinant valuations are checked against the exact degree
    bookkeeping (val d_{j+1} = 2 val d_j + 2 deg e_j); running-product
    gaps against 2^(kn) and 2^(ik).  The mutated control claims one more
    than the exact determinant valuation and must fail.
    """
    sp = sp or SpecMap.binary_default()
    failures = []
    measurements = []
    if pspec is not None:
        t = PTower(pspec, sp, prec)
        n = t.period
        for j in range(1, depth + 1):
            t.advance()
            mm = t.m
            if not (mm.a.valuation == 0 and mm.b.valuation > 0 and mm.c.valuation > 0 and mm.d.valuation > 0):
                failures.append(("P", f"entry valuations at step {j}"))
            if t.ls[-1].valuation != 0 or t.Ls[-1].valuation != 0:
                failures.append(("P", f"step scalar valuation at {j}"))
            dv = t.ds[j].known_zero_below()
            expect = t.predicted_det_val(j)
            claim = expect + 1 if mutate else expect
            measured = dv if t.ds[j].is_zero else t.ds[j].valuation
            measurements.append(
                f"P step {j}: val(d)={measured} expected={expect} quadratic-exponent 2^(2j)={1 << (2 * j)}"
            )
            if not t.ds[j].is_zero and measured < claim:
                failures.append(("P", f"det valuation at step {j}: {measured} < {claim}"))
            if j % n == 0 and j >= 2 * n:
                gap = (t.Ls[j] + t.Ls[j - n]).known_zero_below()
                measurements.append(f"P gap {j - n}->{j}: val={gap} bound={1 << (j - n)}")
                if gap < (1 << (j - n)):
                    failures.append(("P", f"running-product gap at {j}"))
    if gspec is not None:
        lim = g_limits(gspec, sp, prec)
        q = lim.quants
        facts = [
            ("val(m1[0,0])=0", q.m1.a.valuation == 0),
            ("val(m1[0,1])>0", q.m1.b.valuation > 0),
            ("val(m1[1,0])>0", q.m1.c.valuation > 0),
            ("val(m1[1,1])>0", q.m1.d.valuation > 0),
            ("val(cross diag)=0", q.cross.a.valuation == 0 and q.cross.d.valuation == 0),
            ("val(cross off)>0", q.cross.b.valuation > 0 and q.cross.c.valuation > 0),
            ("val(r)=0", q.r.valuation == 0),
            ("val(cross^2)=0", q.gamma.valuation == 0),
            ("val(d)>0", q.d.valuation > 0),
            ("val(l)=0", q.l_scalar.valuation == 0),
        ]
        inv_cross = q.cross.scale(q.inv_gamma)
        facts.append(
            ("val(1/cross diag)=0, off>0",
             inv_cross.a.valuation == 0 and inv_cross.d.valuation == 0
             and inv_cross.b.valuation > 0 and inv_cross.c.valuation > 0)
        )
        for name, ok in facts:
            if not ok:
                failures.append(("G", name))
        k = q.k
        for i, gap in lim.diff_vals:
            measurements.append(f"G gap {i}->{i + 1}: val={gap} bound={1 << (i * k)}")
            if gap < (1 << (i * k)):
                failures.append(("G", f"running-product gap at generation {i}"))
    ident = f"valuation-bounds[{label}]" if label else "valuation-bounds"
    return IdentityReport(
        ident, 1, f"series(prec={prec})", 0, failures,
        notes="deterministic series measurement, no sampling",
        measurements=measurements,
    )


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

TOWER_WORDS = ("11", "101", "1001", "0011")


def all_driver_words(max_len: int = 8):
    """Every nonempty binary word up to the given length."""
    for length in range(1, max_len + 1):
        for bits in range(1 << length):
            yield format(bits, f"0{length}b")


def run_identity_suite(
    trials: int = 100, m: int = 16, seed: int = 1, max_word_len: int = 8,
    generations: int = 3, prec: int = 512,
) -> list[IdentityReport]:
    """The full identity battery with acceptance-grade fixtures."""
    reports = [
        check_tower_expansion(5, trials, m, seed),
        check_period_power_shift(2, 3, trials, m, seed),
        check_period_power_shift(3, 3, trials, m, seed + 1),
        check_tail_equations(2, 3, trials, m, seed),
        check_tail_equations(3, 2, trials, m, seed + 1),
        check_pair_products(trials, m, seed),
    ]
    closed_failures: list = []
    closed_resamples = 0
    for s in all_driver_words(max_word_len):
        rep = check_closed_form(s, trials, m, seed)
        closed_failures.extend((s, f) for f in rep.failures)
        closed_resamples += rep.resamples
    reports.append(
        IdentityReport(
            "closed-form", trials, ext_field(m).name, seed,
            closed_failures, closed_resamples,
            notes=f"all driver words up to length {max_word_len}",
        )
    )
    for s in TOWER_WORDS:
        reports.append(check_generation_relations(s, generations, trials, m, seed))
    # one weightless seed (collapsed running products) and one with weight
    reports.append(
        check_valuation_bounds(
            pspec=PSpec("", "10"), gspec=GSpec("0", "1", "11"), depth=6, prec=prec,
            label="weightless",
        )
    )
    reports.append(
        check_valuation_bounds(
            pspec=PSpec("10", "10"), gspec=GSpec("01", "10", "11"), depth=6, prec=prec,
            label="weighted",
        )
    )
    return reports
